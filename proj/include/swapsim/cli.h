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

#ifndef SWAPSIM_CLI_H
#define SWAPSIM_CLI_H

#include <ostream>
#include <string>
#include <vector>

#include "swapsim/config.h"

namespace swapsim {

inline constexpr int kExitOk = 0;
inline constexpr int kExitConfigError = 1;
inline constexpr int kExitInvariantError = 2;

const std::vector<std::string> &command_names();

struct RunSpec {
    std::string command;
    std::string config_path;
    std::string output_path;
    /// `key=value` strings applied after the config file.
    std::vector<std::string> overrides;
};

/// Runs one command and writes its CSV atomically to `spec.output_path`.
/// Diagnostics go to `err`. Returns kExitOk, kExitConfigError or kExitInvariantError.
int run(const RunSpec &spec, std::ostream &err);

/// CSV text (header block plus tables) for `command`. Throws on failure.
/// Warnings that do not stop the run, such as a flagged double-pair audit,
/// are written to `err`.
std::string render(const std::string &command, const RunConfig &config, std::ostream &err);

/// Config lines echoed in a CSV header, ready to be parsed again.
std::string extract_config_echo(const std::string &csv);

std::string version();

}  // namespace swapsim

#endif  // SWAPSIM_CLI_H
