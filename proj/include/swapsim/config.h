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

#ifndef SWAPSIM_CONFIG_H
#define SWAPSIM_CONFIG_H

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "swapsim/errors.h"
#include "swapsim/experiment.h"

namespace swapsim {

/// Problem with a run configuration; the message names the line and key.
struct ConfigError : Error {
    using Error::Error;
};

/// Fully resolved run configuration.
///
/// Text format: one `key = value` per line, `#` starts a comment, unknown
/// keys are errors and later lines override earlier ones. Convenience keys
/// are resolved on parse: `delay` (with `sigma`) sets `overlap`, and
/// `duration` with `rate` sets `events`.
struct RunConfig {
    ExperimentConfig experiment;
    /// "chsh": the four settings built from chsh_angles; "single": (phi_a, phi_d).
    std::string settings = "chsh";
    /// a', d', a'', d''.
    std::array<double, 4> chsh_angles = {0, 22.5, 45, 67.5};
    /// "max" or a placement index 0..3.
    std::string placement = "max";
    /// Source of the `chsh` command's correlations: "exact" or "sample".
    std::string mode = "exact";
    /// Wavepacket width for delay-to-overlap conversion, fs.
    double sigma = 100;
    std::vector<double> delays;

    RunConfig();

    std::vector<Setting> setting_list() const;
    /// `key = value` lines that parse back into this exact configuration.
    std::string echo() const;
};

RunConfig parse_config(std::string_view text);

/// Known configuration keys, in echo order.
const std::vector<std::string> &config_keys();

}  // namespace swapsim

#endif  // SWAPSIM_CONFIG_H
