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

#ifndef SWAPSIM_OPTICS_H
#define SWAPSIM_OPTICS_H

#include <vector>

#include "swapsim/fock.h"

namespace swapsim {

// Every element acts identically on both temporal bins, and all but the
// delay act identically on both polarizations where polarization is not
// the point of the element. Angles are in degrees.
//
// Beam-splitter phase convention (used for every expected sign in the
// project):
//     in1^dagger -> (out1^dagger + i out2^dagger) / sqrt(2)
//     in2^dagger -> (i out1^dagger + out2^dagger) / sqrt(2)
//
// Elements whose output paths differ from their input paths are completed
// into a unitary on the union of modes (the output modes map back onto the
// input modes), so compositions of elements stay unitary.

enum class ElementKind {
    BeamSplitter,
    Pbs,
    Rotator,
    HalfWaveplate,
    QuarterWaveplate,
    Delay,
    Loss,
};

struct ElementSpec {
    ElementKind kind = ElementKind::Rotator;
    /// BeamSplitter: in1, in2, out1, out2. Pbs: path, out_H, out_V.
    /// Loss: detector path, loss path. Others: the single target path.
    std::vector<Path> paths;
    /// Angle in degrees, overlap v, or power transmission eta depending on kind.
    double parameter = 0;
};

ModeMap make_element(const ElementSpec &spec);

ModeMap beam_splitter(Path in1, Path in2, Path out1, Path out2);

/// H -> cos(t) H + sin(t) V, V -> -sin(t) H + cos(t) V.
ModeMap polarization_rotator(Path path, double theta_deg);

/// Jones matrix [[cos 2t, sin 2t], [sin 2t, -cos 2t]].
ModeMap half_waveplate(Path path, double theta_deg);

/// Quarter-wave retarder with fast axis at t; at t = 0, V picks up a phase i.
ModeMap quarter_waveplate(Path path, double theta_deg);

/// Routes H of `path` to `out_h` and V to `out_v`.
ModeMap pbs(Path path, Path out_h, Path out_v);

/// Gaussian overlap exp(-delta^2 / (2 sigma^2)) of two wavepackets offset by delta.
double delay_overlap(double delta_fs, double sigma_fs);

/// Bin 0 -> v bin0 + sqrt(1-v^2) bin1, bin 1 -> -sqrt(1-v^2) bin0 + v bin1.
ModeMap delay_decompose(Path path, double overlap);

/// Beam splitter of power transmission eta between `path` and `loss_path`.
ModeMap loss(Path path, Path loss_path, double eta);

/// Loss path paired with one of the eight detector paths.
Path loss_path_for(Path detector_path);

}  // namespace swapsim

#endif  // SWAPSIM_OPTICS_H
