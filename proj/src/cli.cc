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

#include "swapsim/cli.h"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "swapsim/analysis.h"

#ifndef SWAPSIM_VERSION
#define SWAPSIM_VERSION "0.0.0"
#endif

namespace swapsim {

namespace {

std::string num(double x, int significant) {
    char buf[48];
    std::snprintf(buf, sizeof(buf), "%.*g", significant, x + 0.0);
    return buf;
}

std::string real6(double x) {
    return num(x, 6);
}

std::string prob9(double x) {
    return num(x, 9);
}

std::optional<Placement> placement_of(const RunConfig &config) {
    if (config.placement == "max") {
        return std::nullopt;
    }
    return std::stoi(config.placement);
}

constexpr std::array<BellOutcome, 2> kClasses = {BellOutcome::PsiMinus, BellOutcome::PsiPlus};

void write_counts(std::ostream &out, const CountsTable &table) {
    out << "phi_a,phi_d,bell,a_out,d_out,count\n";
    for (std::size_t s = 0; s < table.settings.size(); s++) {
        for (std::size_t k = 0; k < kNumClasses; k++) {
            auto cls = FourfoldClass::from_index(k);
            double value = table.counts[s][k];
            out << real6(table.settings[s].phi_a) << "," << real6(table.settings[s].phi_d) << ","
                << bell_name(cls.bell) << "," << sign_name(cls.a_out) << "," << sign_name(cls.d_out) << ","
                << (table.exact() ? prob9(value) : num(value, 17)) << "\n";
        }
    }
}

void write_correlations(std::ostream &out, const CountsTable &table) {
    out << "phi_a,phi_d,bell,E,sigma_E\n";
    for (std::size_t s = 0; s < table.settings.size(); s++) {
        for (auto bell : kClasses) {
            out << real6(table.settings[s].phi_a) << "," << real6(table.settings[s].phi_d) << "," << bell_name(bell)
                << ",";
            if (table.coincidences(s, bell).total() > 0) {
                auto r = correlate(table, s, bell);
                out << real6(r.E) << "," << real6(r.sigma_E) << "\n";
            } else {
                out << "nan,nan\n";
            }
        }
    }
}

void write_chsh(std::ostream &out, const CountsTable &table, const RunConfig &config) {
    out << "bell,S,sigma_S,placement\n";
    for (auto bell : kClasses) {
        auto r = chsh_from_table(table, bell, config.chsh_angles, placement_of(config));
        out << bell_name(bell) << "," << real6(r.S) << "," << real6(r.sigma_S) << "," << r.placement << "\n";
    }
}

CountsTable counts_for(const RunConfig &config, bool sampled) {
    auto settings = config.setting_list();
    return sampled ? sample_counts(config.experiment, settings) : exact_counts(config.experiment, settings);
}

}  // namespace

std::string version() {
    return SWAPSIM_VERSION;
}

const std::vector<std::string> &command_names() {
    static const std::vector<std::string> names = {
        "exact", "sample", "chsh", "delay-scan", "bsa-audit", "doublepair-audit",
    };
    return names;
}

std::string render(const std::string &command, const RunConfig &config, std::ostream &err) {
    config.experiment.validate();
    std::ostringstream out;
    out << "# swapsim version " << version() << "\n";
    out << "# command: " << command << "\n";
    std::istringstream echo(config.echo());
    for (std::string line; std::getline(echo, line);) {
        out << "# " << line << "\n";
    }

    if (command == "exact" || command == "sample") {
        auto table = counts_for(config, command == "sample");
        write_counts(out, table);
        out << "\n";
        write_correlations(out, table);
        if (config.settings == "chsh") {
            out << "\n";
            write_chsh(out, table, config);
        }
    } else if (command == "chsh") {
        RunConfig grid = config;
        grid.settings = "chsh";
        auto table = counts_for(grid, config.mode == "sample");
        write_correlations(out, table);
        out << "\n";
        write_chsh(out, table, grid);
    } else if (command == "delay-scan") {
        out << "delta,overlap,E_psi_minus,E_psi_plus\n";
        for (const auto &p : delay_scan(config.experiment, config.delays, config.sigma)) {
            out << real6(p.delta) << "," << real6(p.overlap) << "," << real6(p.e_psi_minus) << ","
                << real6(p.e_psi_plus) << "\n";
        }
    } else if (command == "bsa-audit") {
        out << "input,P_psi_minus,P_psi_plus\n";
        for (auto input : {BellState::PsiMinus, BellState::PsiPlus, BellState::PhiPlus, BellState::PhiMinus}) {
            auto r = identify_bell_input(config.experiment, input);
            out << bell_state_name(input) << "," << prob9(r.psi_minus) << "," << prob9(r.psi_plus) << "\n";
        }
    } else if (command == "doublepair-audit") {
        auto a = double_pair_audit(config.experiment);
        out << "quantity,value\n";
        out << "pbs_acceptance," << prob9(a.pbs_acceptance) << "\n";
        out << "bare_acceptance," << prob9(a.bare_acceptance) << "\n";
        out << "ratio," << prob9(a.ratio) << "\n";
        out << "pbs_signal," << prob9(a.pbs_signal) << "\n";
        out << "bare_signal," << prob9(a.bare_signal) << "\n";
        out << "false_to_signal_ratio," << prob9(a.false_to_signal_ratio) << "\n";
        out << "flagged," << (a.flagged ? 1 : 0) << "\n";
        if (a.flagged) {
            err << "warning: double-pair acceptance ratio " << prob9(a.ratio)
                << " exceeds 0.5 (PBS analyzer vs bare beam splitter); per-signal ratio is "
                << prob9(a.false_to_signal_ratio) << "\n";
        }
    } else {
        throw ConfigError("unknown command '" + command + "'");
    }
    return out.str();
}

std::string extract_config_echo(const std::string &csv) {
    std::istringstream in(csv);
    std::string out;
    for (std::string line; std::getline(in, line);) {
        if (line.rfind("# ", 0) == 0 && line.find(" = ") != std::string::npos) {
            out += line.substr(2) + "\n";
        }
    }
    return out;
}

int run(const RunSpec &spec, std::ostream &err) {
    std::string csv;
    try {
        std::ifstream in(spec.config_path);
        if (!in) {
            err << "error: cannot read config file '" << spec.config_path << "'\n";
            return kExitConfigError;
        }
        std::stringstream text;
        text << in.rdbuf();
        std::string all = text.str();
        if (!all.empty() && all.back() != '\n') {
            all += "\n";
        }
        // Overrides are parsed as trailing config lines so they share validation.
        for (const auto &o : spec.overrides) {
            if (o.find('=') == std::string::npos || o.find('\n') != std::string::npos) {
                err << "error: override '" << o << "' is not key=value\n";
                return kExitConfigError;
            }
            all += o + "\n";
        }
        auto config = parse_config(all);
        csv = render(spec.command, config, err);
    } catch (const InvariantError &e) {
        err << "error: numerical invariant violated: " << e.what() << "\n";
        return kExitInvariantError;
    } catch (const Error &e) {
        err << "error: " << e.what() << "\n";
        return kExitConfigError;
    }

    namespace fs = std::filesystem;
    fs::path target(spec.output_path);
    fs::path tmp = target;
    tmp += ".tmp";
    {
        std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
        out << csv;
        if (!out) {
            err << "error: cannot write '" << tmp.string() << "'\n";
            return kExitConfigError;
        }
    }
    std::error_code ec;
    fs::rename(tmp, target, ec);
    if (ec) {
        fs::remove(tmp, ec);
        err << "error: cannot move output into place at '" << target.string() << "'\n";
        return kExitConfigError;
    }
    return kExitOk;
}

}  // namespace swapsim
