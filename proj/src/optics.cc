// Copyright 2026 The swapsim Authors
//
// Licensed under the Apache License, Version 2.0 (the "License");
// you may not use this file except in compliance with the License.
// You may obtain a copy of the License at
//
//      http://www.apache.org/licenses/LICENSE-2.0
//
// Unless required by applicable law or agreed to in writing, software
// distributed under the License is distributed on an "AS IS" BASIS,
// WITHOUT WARRANTIES OR CONDITIONS OF ANY KIND, either express or implied.
// See the License for the specific language governing permissions and
// limitations under the License.

#include "swapsim/optics.h"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>
#include <tuple>

#include "swapsim/errors.h"

namespace swapsim {

namespace {

constexpr std::array<Polarization, 2> kPols = {Polarization::H, Polarization::V};
constexpr std::array<std::uint8_t, 2> kBins = {0, 1};

double radians(double degrees) {
    return degrees * std::numbers::pi / 180.0;
}

void require_finite(double x, const char *what) {
    if (!std::isfinite(x)) {
        throw InvalidParameterError(std::string(what) + " must be finite");
    }
}

/// Accumulates one block per (pol, bin) or per bin into a single ModeMap.
struct Builder {
    std::vector<ModeLabel> inputs;
    std::vector<ModeLabel> outputs;
    std::vector<std::tuple<ModeLabel, ModeLabel, Complex>> entries;  // (out, in, coeff)

    void set(ModeLabel out, ModeLabel in, Complex c) {
        if (std::find(inputs.begin(), inputs.end(), in) == inputs.end()) {
            inputs.push_back(in);
        }
        if (std::find(outputs.begin(), outputs.end(), out) == outputs.end()) {
            outputs.push_back(out);
        }
        entries.emplace_back(out, in, c);
    }

    ModeMap build(double tolerance = 1e-12) const {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(
            static_cast<Eigen::Index>(outputs.size()), static_cast<Eigen::Index>(inputs.size()));
        for (const auto &[out, in, c] : entries) {
            auto r = std::find(outputs.begin(), outputs.end(), out) - outputs.begin();
            auto k = std::find(inputs.begin(), inputs.end(), in) - inputs.begin();
            m(r, k) += c;
        }
        return ModeMap(inputs, outputs, std::move(m), tolerance);
    }
};

/// Applies a 2x2 polarization Jones matrix (columns = images of H, V) on every bin.
ModeMap jones(Path path, Complex hh, Complex vh, Complex hv, Complex vv) {
    Builder b;
    for (auto bin : kBins) {
        ModeLabel h{path, Polarization::H, bin};
        ModeLabel v{path, Polarization::V, bin};
        b.set(h, h, hh);
        b.set(v, h, vh);
        b.set(h, v, hv);
        b.set(v, v, vv);
    }
    return b.build();
}

/// 2x2 unitary `u` from (p, q) into (r, s) on every (pol, bin); when the
/// target paths differ from the source paths the block is completed with u^dagger.
ModeMap two_port(Path p, Path q, Path r, Path s, const Eigen::Matrix2cd &u) {
    bool in_place = (p == r && q == s);
    Builder b;
    for (auto pol : kPols) {
        for (auto bin : kBins) {
            ModeLabel in1{p, pol, bin}, in2{q, pol, bin}, out1{r, pol, bin}, out2{s, pol, bin};
            b.set(out1, in1, u(0, 0));
            b.set(out2, in1, u(1, 0));
            b.set(out1, in2, u(0, 1));
            b.set(out2, in2, u(1, 1));
            if (!in_place) {
                Eigen::Matrix2cd back = u.adjoint();
                b.set(in1, out1, back(0, 0));
                b.set(in2, out1, back(1, 0));
                b.set(in1, out2, back(0, 1));
                b.set(in2, out2, back(1, 1));
            }
        }
    }
    return b.build();
}

}  // namespace

ModeMap beam_splitter(Path in1, Path in2, Path out1, Path out2) {
    bool in_place = (in1 == out1 && in2 == out2);
    bool disjoint = in1 != out1 && in1 != out2 && in2 != out1 && in2 != out2;
    if (in1 == in2 || out1 == out2 || !(in_place || disjoint)) {
        throw InvalidElementError("beam splitter needs distinct input and output paths");
    }
    const double h = 1 / std::numbers::sqrt2;
    Eigen::Matrix2cd u;
    u << Complex{h, 0}, Complex{0, h}, Complex{0, h}, Complex{h, 0};
    return two_port(in1, in2, out1, out2, u);
}

ModeMap polarization_rotator(Path path, double theta_deg) {
    require_finite(theta_deg, "rotation angle");
    double c = std::cos(radians(theta_deg));
    double s = std::sin(radians(theta_deg));
    return jones(path, c, s, -s, c);
}

ModeMap half_waveplate(Path path, double theta_deg) {
    require_finite(theta_deg, "waveplate angle");
    double c = std::cos(2 * radians(theta_deg));
    double s = std::sin(2 * radians(theta_deg));
    return jones(path, c, s, s, -c);
}

ModeMap quarter_waveplate(Path path, double theta_deg) {
    require_finite(theta_deg, "waveplate angle");
    double c = std::cos(radians(theta_deg));
    double s = std::sin(radians(theta_deg));
    const Complex i{0, 1};
    Complex hh = c * c + i * s * s;
    Complex off = (1.0 - i) * s * c;
    Complex vv = s * s + i * c * c;
    return jones(path, hh, off, off, vv);
}

ModeMap pbs(Path path, Path out_h, Path out_v) {
    if (out_h == out_v) {
        throw InvalidElementError("pbs output paths must differ");
    }
    Builder b;
    for (auto bin : kBins) {
        for (auto [pol, out] : {std::pair{Polarization::H, out_h}, std::pair{Polarization::V, out_v}}) {
            ModeLabel from{path, pol, bin};
            ModeLabel to{out, pol, bin};
            b.set(to, from, 1);
            if (to != from) {
                b.set(from, to, 1);
            }
        }
    }
    return b.build();
}

double delay_overlap(double delta_fs, double sigma_fs) {
    if (!(sigma_fs > 0) || !std::isfinite(sigma_fs)) {
        throw InvalidParameterError("delay width sigma must be positive");
    }
    require_finite(delta_fs, "delay");
    return std::exp(-delta_fs * delta_fs / (2 * sigma_fs * sigma_fs));
}

ModeMap delay_decompose(Path path, double overlap) {
    if (!(overlap >= 0 && overlap <= 1)) {
        throw InvalidParameterError("overlap must lie in [0, 1]");
    }
    double w = std::sqrt(std::max(0.0, 1 - overlap * overlap));
    Builder b;
    for (auto pol : kPols) {
        ModeLabel early{path, pol, 0};
        ModeLabel late{path, pol, 1};
        b.set(early, early, overlap);
        b.set(late, early, w);
        b.set(early, late, -w);
        b.set(late, late, overlap);
    }
    return b.build();
}

ModeMap loss(Path path, Path loss_path, double eta) {
    if (!(eta >= 0 && eta <= 1)) {
        throw InvalidParameterError("transmission must lie in [0, 1]");
    }
    if (path == loss_path) {
        throw InvalidElementError("loss element needs a separate loss path");
    }
    double t = std::sqrt(eta);
    double r = std::sqrt(1 - eta);
    Eigen::Matrix2cd u;
    u << t, -r, r, t;
    return two_port(path, loss_path, path, loss_path, u);
}

Path loss_path_for(Path detector_path) {
    auto k = static_cast<int>(detector_path);
    if (k < static_cast<int>(Path::APlus) || k > static_cast<int>(Path::D2V)) {
        throw InvalidParameterError(path_name(detector_path) + " is not a detector path");
    }
    return static_cast<Path>(k - static_cast<int>(Path::APlus) + static_cast<int>(Path::LossAPlus));
}

ModeMap make_element(const ElementSpec &spec) {
    auto need = [&](std::size_t n) {
        if (spec.paths.size() != n) {
            throw InvalidElementError("element expects " + std::to_string(n) + " paths");
        }
    };
    switch (spec.kind) {
        case ElementKind::BeamSplitter:
            need(4);
            return beam_splitter(spec.paths[0], spec.paths[1], spec.paths[2], spec.paths[3]);
        case ElementKind::Pbs:
            need(3);
            return pbs(spec.paths[0], spec.paths[1], spec.paths[2]);
        case ElementKind::Rotator:
            need(1);
            return polarization_rotator(spec.paths[0], spec.parameter);
        case ElementKind::HalfWaveplate:
            need(1);
            return half_waveplate(spec.paths[0], spec.parameter);
        case ElementKind::QuarterWaveplate:
            need(1);
            return quarter_waveplate(spec.paths[0], spec.parameter);
        case ElementKind::Delay:
            need(1);
            return delay_decompose(spec.paths[0], spec.parameter);
        case ElementKind::Loss:
            need(2);
            return loss(spec.paths[0], spec.paths[1], spec.parameter);
    }
    throw InvalidElementError("unknown element kind");
}

}  // namespace swapsim
