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

#include <CLI11.hpp>
#include <iostream>

#include "swapsim/cli.h"

int main(int argc, char **argv) {
    CLI::App app{"swapsim: entanglement-swapping simulator with a two-outcome Bell-state analyzer"};
    app.set_version_flag("--version", swapsim::version());

    swapsim::RunSpec spec;
    app.add_option("command", spec.command, "exact | sample | chsh | delay-scan | bsa-audit | doublepair-audit")
        ->required()
        ->check(CLI::IsMember(swapsim::command_names()));
    app.add_option("--config", spec.config_path, "key = value configuration file")->required();
    app.add_option("--out", spec.output_path, "CSV output path")->required();
    app.add_option("--set", spec.overrides, "override a configuration key (key=value)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError &e) {
        int code = app.exit(e);
        return code == 0 ? 0 : swapsim::kExitConfigError;
    }
    return swapsim::run(spec, std::cerr);
}
