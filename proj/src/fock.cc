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

#include "swapsim/fock.h"

#include <algorithm>
#include <cmath>
#include <map>
#include <sstream>

#include "swapsim/errors.h"

namespace swapsim {

namespace {

constexpr std::array<const char *, kNumPaths> kPathNames = {
    "a",       "b",        "c",        "d",         "bsa1",     "bsa2",     "A+",       "A-",
    "D+",      "D-",       "D1H",      "D1V",       "D2H",      "D2V",      "loss_A+",  "loss_A-",
    "loss_D+", "loss_D-",  "loss_D1H", "loss_D1V",  "loss_D2H", "loss_D2V",
};

// Coefficients smaller than this are treated as structural zeros when a
// dense matrix is turned back into sparse images (e.g. cos(90 deg)).
constexpr double kStructuralZero = 1e-15;

double sqrt_factorial_product(const Occupation &occupation) {
    return std::sqrt(occupation.factorial_product());
}

}  // namespace

std::string path_name(Path path) {
    return kPathNames.at(static_cast<std::size_t>(path));
}

ModeLabel ModeLabel::from_index(std::size_t index) {
    if (index >= kNumModes) {
        throw InvalidParameterError("mode index out of range: " + std::to_string(index));
    }
    ModeLabel m;
    m.temporal = static_cast<std::uint8_t>(index % 2);
    m.pol = static_cast<Polarization>((index / 2) % 2);
    m.path = static_cast<Path>(index / 4);
    return m;
}

std::string ModeLabel::str() const {
    return path_name(path) + (pol == Polarization::H ? "_H" : "_V") + "_t" + std::to_string(temporal);
}

Occupation Occupation::from_counts(const std::vector<std::pair<ModeLabel, int>> &counts) {
    Occupation result;
    for (const auto &[mode, n] : counts) {
        if (n < 0) {
            throw InvalidParameterError("negative photon count for mode " + mode.str());
        }
        if (mode.temporal > 1) {
            throw InvalidParameterError("temporal bin must be 0 or 1");
        }
        result.quanta_.insert(result.quanta_.end(), static_cast<std::size_t>(n), mode);
    }
    std::sort(result.quanta_.begin(), result.quanta_.end());
    return result;
}

int Occupation::count(ModeLabel mode) const {
    auto [lo, hi] = std::equal_range(quanta_.begin(), quanta_.end(), mode);
    return static_cast<int>(hi - lo);
}

std::vector<std::pair<ModeLabel, int>> Occupation::entries() const {
    std::vector<std::pair<ModeLabel, int>> out;
    for (const auto &m : quanta_) {
        if (!out.empty() && out.back().first == m) {
            out.back().second++;
        } else {
            out.emplace_back(m, 1);
        }
    }
    return out;
}

Occupation Occupation::with_added(ModeLabel mode) const {
    if (mode.temporal > 1) {
        throw InvalidParameterError("temporal bin must be 0 or 1");
    }
    Occupation result;
    result.quanta_.reserve(quanta_.size() + 1);
    auto pos = std::upper_bound(quanta_.begin(), quanta_.end(), mode);
    result.quanta_.insert(result.quanta_.end(), quanta_.begin(), pos);
    result.quanta_.push_back(mode);
    result.quanta_.insert(result.quanta_.end(), pos, quanta_.end());
    return result;
}

double Occupation::factorial_product() const {
    double product = 1;
    for (const auto &[mode, n] : entries()) {
        for (int k = 2; k <= n; k++) {
            product *= k;
        }
    }
    return product;
}

std::string Occupation::str() const {
    if (quanta_.empty()) {
        return "|vac>";
    }
    std::ostringstream out;
    out << "|";
    bool first = true;
    for (const auto &[mode, n] : entries()) {
        if (!first) {
            out << ",";
        }
        first = false;
        out << mode.str() << ":" << n;
    }
    out << ">";
    return out.str();
}

FockVector::FockVector(FockLimits limits) : limits_(limits) {
    if (limits_.max_photons < 0) {
        throw InvalidParameterError("max_photons must be non-negative");
    }
    if (!(limits_.prune_threshold >= 0)) {
        throw InvalidParameterError("prune_threshold must be non-negative");
    }
}

FockVector FockVector::from_terms(std::vector<Term> terms, FockLimits limits) {
    FockVector result(limits);
    std::sort(terms.begin(), terms.end(), [](const Term &x, const Term &y) {
        return x.first < y.first;
    });
    for (auto &term : terms) {
        if (term.first.total() > limits.max_photons) {
            throw CapacityError(
                "photon number " + std::to_string(term.first.total()) + " exceeds cap " +
                std::to_string(limits.max_photons));
        }
        if (!result.terms_.empty() && result.terms_.back().first == term.first) {
            result.terms_.back().second += term.second;
        } else {
            result.terms_.push_back(std::move(term));
        }
    }
    std::erase_if(result.terms_, [&](const Term &t) {
        return std::abs(t.second) < limits.prune_threshold;
    });
    return result;
}

Complex FockVector::amplitude(const Occupation &occupation) const {
    auto it = std::lower_bound(terms_.begin(), terms_.end(), occupation, [](const Term &t, const Occupation &o) {
        return t.first < o;
    });
    if (it != terms_.end() && it->first == occupation) {
        return it->second;
    }
    return 0;
}

double FockVector::norm() const {
    double total = 0;
    for (const auto &[occ, amp] : terms_) {
        total += std::norm(amp);
    }
    return total;
}

int FockVector::max_photon_number() const {
    int n = 0;
    for (const auto &[occ, amp] : terms_) {
        n = std::max(n, occ.total());
    }
    return n;
}

FockVector vacuum(FockLimits limits) {
    return FockVector::from_terms({{Occupation{}, Complex{1, 0}}}, limits);
}

FockVector apply_creation(const FockVector &state, ModeLabel mode) {
    std::vector<FockVector::Term> terms;
    terms.reserve(state.size());
    for (const auto &[occ, amp] : state.terms()) {
        if (occ.total() + 1 > state.limits().max_photons) {
            throw CapacityError(
                "creation on " + mode.str() + " exceeds photon cap " + std::to_string(state.limits().max_photons));
        }
        double n = occ.count(mode);
        terms.emplace_back(occ.with_added(mode), amp * std::sqrt(n + 1));
    }
    return FockVector::from_terms(std::move(terms), state.limits());
}

Complex inner_product(const FockVector &s1, const FockVector &s2) {
    // Both term lists are sorted; merge-walk them.
    Complex total = 0;
    auto i = s1.terms().begin();
    auto j = s2.terms().begin();
    while (i != s1.terms().end() && j != s2.terms().end()) {
        if (i->first < j->first) {
            ++i;
        } else if (j->first < i->first) {
            ++j;
        } else {
            total += std::conj(i->second) * j->second;
            ++i;
            ++j;
        }
    }
    return total;
}

FockVector normalize(const FockVector &state) {
    double n = state.norm();
    if (!(n > 0)) {
        throw DegenerateStateError("cannot normalize the zero state");
    }
    return Complex{1 / std::sqrt(n), 0} * state;
}

FockVector operator+(const FockVector &lhs, const FockVector &rhs) {
    std::vector<FockVector::Term> terms = lhs.terms();
    terms.insert(terms.end(), rhs.terms().begin(), rhs.terms().end());
    return FockVector::from_terms(std::move(terms), lhs.limits());
}

FockVector operator-(const FockVector &lhs, const FockVector &rhs) {
    return lhs + Complex{-1, 0} * rhs;
}

FockVector operator*(Complex scale, const FockVector &state) {
    std::vector<FockVector::Term> terms = state.terms();
    for (auto &term : terms) {
        term.second *= scale;
    }
    return FockVector::from_terms(std::move(terms), state.limits());
}

ModeMap::ModeMap(
    std::vector<ModeLabel> inputs, std::vector<ModeLabel> outputs, Eigen::MatrixXcd matrix, double tolerance)
    : inputs_(std::move(inputs)), outputs_(std::move(outputs)), matrix_(std::move(matrix)) {
    if (matrix_.rows() != static_cast<Eigen::Index>(outputs_.size()) ||
        matrix_.cols() != static_cast<Eigen::Index>(inputs_.size())) {
        throw InvalidElementError("mode map matrix shape does not match its mode lists");
    }
    auto has_duplicates = [](std::vector<ModeLabel> modes) {
        std::sort(modes.begin(), modes.end());
        return std::adjacent_find(modes.begin(), modes.end()) != modes.end();
    };
    if (has_duplicates(inputs_) || has_duplicates(outputs_)) {
        throw InvalidElementError("mode map lists a mode twice");
    }
    if (!matrix_.allFinite()) {
        throw InvalidElementError("mode map has non-finite coefficients");
    }
    double err = isometry_error();
    if (err > tolerance) {
        throw InvalidElementError("mode map is not an isometry (error " + std::to_string(err) + ")");
    }
}

double ModeMap::isometry_error() const {
    if (matrix_.cols() == 0) {
        return 0;
    }
    Eigen::MatrixXcd gram = matrix_.adjoint() * matrix_;
    gram -= Eigen::MatrixXcd::Identity(gram.rows(), gram.cols());
    return gram.cwiseAbs().maxCoeff();
}

Complex ModeMap::coefficient(ModeLabel out, ModeLabel in) const {
    auto col = std::find(inputs_.begin(), inputs_.end(), in);
    if (col == inputs_.end()) {
        return out == in ? Complex{1, 0} : Complex{0, 0};
    }
    auto row = std::find(outputs_.begin(), outputs_.end(), out);
    if (row == outputs_.end()) {
        return 0;
    }
    return matrix_(row - outputs_.begin(), col - inputs_.begin());
}

std::vector<std::pair<ModeLabel, Complex>> ModeMap::image(ModeLabel in) const {
    auto col = std::find(inputs_.begin(), inputs_.end(), in);
    if (col == inputs_.end()) {
        return {{in, Complex{1, 0}}};
    }
    std::vector<std::pair<ModeLabel, Complex>> out;
    Eigen::Index k = col - inputs_.begin();
    for (Eigen::Index r = 0; r < matrix_.rows(); r++) {
        if (std::abs(matrix_(r, k)) > kStructuralZero) {
            out.emplace_back(outputs_[r], matrix_(r, k));
        }
    }
    return out;
}

ModeMap compose(const ModeMap &outer, const ModeMap &inner) {
    std::vector<ModeLabel> modes;
    for (const auto *list : {&inner.inputs(), &inner.outputs(), &outer.inputs(), &outer.outputs()}) {
        modes.insert(modes.end(), list->begin(), list->end());
    }
    std::sort(modes.begin(), modes.end());
    modes.erase(std::unique(modes.begin(), modes.end()), modes.end());

    auto position = [&](ModeLabel m) {
        return std::lower_bound(modes.begin(), modes.end(), m) - modes.begin();
    };
    auto embed = [&](const ModeMap &map) {
        auto n = static_cast<Eigen::Index>(modes.size());
        Eigen::MatrixXcd full = Eigen::MatrixXcd::Identity(n, n);
        for (std::size_t k = 0; k < map.inputs().size(); k++) {
            Eigen::Index col = position(map.inputs()[k]);
            full.col(col).setZero();
            for (std::size_t r = 0; r < map.outputs().size(); r++) {
                full(position(map.outputs()[r]), col) = map.matrix()(r, k);
            }
        }
        return full;
    };
    Eigen::MatrixXcd product = embed(outer) * embed(inner);

    std::vector<ModeLabel> inputs = inner.inputs();
    inputs.insert(inputs.end(), outer.inputs().begin(), outer.inputs().end());
    std::sort(inputs.begin(), inputs.end());
    inputs.erase(std::unique(inputs.begin(), inputs.end()), inputs.end());

    Eigen::MatrixXcd matrix(product.rows(), static_cast<Eigen::Index>(inputs.size()));
    for (std::size_t k = 0; k < inputs.size(); k++) {
        matrix.col(static_cast<Eigen::Index>(k)) = product.col(position(inputs[k]));
    }
    return ModeMap(std::move(inputs), std::move(modes), std::move(matrix));
}

ModeMap adjoint(const ModeMap &map) {
    auto sorted_in = map.inputs();
    auto sorted_out = map.outputs();
    std::sort(sorted_in.begin(), sorted_in.end());
    std::sort(sorted_out.begin(), sorted_out.end());
    if (sorted_in != sorted_out) {
        throw InvalidElementError("adjoint requires a map whose inputs and outputs coincide");
    }
    return ModeMap(map.outputs(), map.inputs(), map.matrix().adjoint());
}

ModeMap compose_all(const std::vector<ModeMap> &stages) {
    ModeMap result;
    for (const auto &stage : stages) {
        result = compose(stage, result);
    }
    return result;
}

FockVector apply_mode_map(const FockVector &state, const ModeMap &map) {
    std::array<std::vector<std::pair<ModeLabel, Complex>>, kNumModes> images;
    for (std::size_t i = 0; i < kNumModes; i++) {
        images[i] = map.image(ModeLabel::from_index(i));
    }

    // Work with the operator polynomial: |n> = prod (m^dagger)^{n_m} / sqrt(prod n_m!) |0>.
    std::map<Occupation, Complex> result;
    for (const auto &[occ, amp] : state.terms()) {
        std::map<Occupation, Complex> partial{{Occupation{}, amp / sqrt_factorial_product(occ)}};
        for (const auto &quantum : occ.quanta()) {
            std::map<Occupation, Complex> next;
            for (const auto &[monomial, coeff] : partial) {
                for (const auto &[target, u] : images[quantum.index()]) {
                    next[monomial.with_added(target)] += coeff * u;
                }
            }
            partial = std::move(next);
        }
        for (const auto &[monomial, coeff] : partial) {
            result[monomial] += coeff * sqrt_factorial_product(monomial);
        }
    }

    std::vector<FockVector::Term> terms(result.begin(), result.end());
    return FockVector::from_terms(std::move(terms), state.limits());
}

}  // namespace swapsim
