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

#include "swapsim/config.h"

#include <algorithm>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <map>
#include <optional>
#include <sstream>

#include "swapsim/optics.h"

namespace swapsim {

namespace {

std::string_view trim(std::string_view s) {
    while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) {
        s.remove_prefix(1);
    }
    while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) {
        s.remove_suffix(1);
    }
    return s;
}

std::string exact_repr(double x) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", x + 0.0);
    return buf;
}

std::string join(const std::vector<double> &xs) {
    std::string out;
    for (std::size_t k = 0; k < xs.size(); k++) {
        out += (k ? ", " : "") + exact_repr(xs[k]);
    }
    return out;
}

std::vector<std::string_view> split(std::string_view s, char sep) {
    std::vector<std::string_view> parts;
    std::size_t start = 0;
    while (true) {
        auto pos = s.find(sep, start);
        parts.push_back(trim(s.substr(start, pos == std::string_view::npos ? std::string_view::npos : pos - start)));
        if (pos == std::string_view::npos) {
            return parts;
        }
        start = pos + 1;
    }
}

std::vector<double> linspace(double lo, double hi, std::int64_t n) {
    std::vector<double> xs;
    if (n == 1) {
        return {lo};
    }
    for (std::int64_t k = 0; k < n; k++) {
        xs.push_back(lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(n - 1));
    }
    return xs;
}

struct LineParser {
    int line;
    std::string key;

    [[noreturn]] void fail(const std::string &what) const {
        throw ConfigError("line " + std::to_string(line) + ", key '" + key + "': " + what);
    }

    double real(std::string_view v) const {
        double x = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || ptr != v.data() + v.size() || !std::isfinite(x)) {
            fail("expected a finite number, got '" + std::string(v) + "'");
        }
        return x;
    }

    template <typename Int>
    Int integer(std::string_view v) const {
        Int x = 0;
        auto [ptr, ec] = std::from_chars(v.data(), v.data() + v.size(), x);
        if (ec != std::errc() || ptr != v.data() + v.size()) {
            fail("expected an integer, got '" + std::string(v) + "'");
        }
        return x;
    }

    std::vector<double> reals(std::string_view v) const {
        std::vector<double> xs;
        for (auto part : split(v, ',')) {
            xs.push_back(real(part));
        }
        return xs;
    }

    void range(double x, double lo, double hi) const {
        if (x < lo || x > hi) {
            fail("value " + exact_repr(x) + " out of range [" + exact_repr(lo) + ", " + exact_repr(hi) + "]");
        }
    }
};

}  // namespace

const std::vector<std::string> &config_keys() {
    static const std::vector<std::string> keys = {
        "phi_a", "phi_d",       "overlap",   "delay",     "sigma", "pair_amplitude", "efficiency",
        "misalignment", "seed", "events",    "duration",  "rate",  "max_photons",    "settings",
        "chsh_angles", "placement", "mode",  "delays",
    };
    return keys;
}

RunConfig::RunConfig() : delays(linspace(-300, 300, 25)) {
}

std::vector<Setting> RunConfig::setting_list() const {
    if (settings == "single") {
        return {{experiment.phi_a, experiment.phi_d}};
    }
    return chsh_settings(chsh_angles[0], chsh_angles[1], chsh_angles[2], chsh_angles[3]);
}

std::string RunConfig::echo() const {
    const auto &e = experiment;
    std::ostringstream out;
    out << "phi_a = " << exact_repr(e.phi_a) << "\n";
    out << "phi_d = " << exact_repr(e.phi_d) << "\n";
    out << "overlap = " << exact_repr(e.overlap) << "\n";
    out << "sigma = " << exact_repr(sigma) << "\n";
    out << "pair_amplitude = " << exact_repr(e.pair_amplitude) << "\n";
    out << "efficiency = " << exact_repr(e.efficiency) << "\n";
    out << "misalignment = " << exact_repr(e.misalignment_deg) << "\n";
    out << "seed = " << e.seed << "\n";
    out << "events = " << e.events << "\n";
    out << "max_photons = " << e.max_photons << "\n";
    out << "settings = " << settings << "\n";
    out << "chsh_angles = " << join({chsh_angles.begin(), chsh_angles.end()}) << "\n";
    out << "placement = " << placement << "\n";
    out << "mode = " << mode << "\n";
    out << "delays = " << join(delays) << "\n";
    return out.str();
}

RunConfig parse_config(std::string_view text) {
    RunConfig cfg;
    auto &e = cfg.experiment;
    std::map<std::string, int> seen;
    std::optional<double> delay;
    std::optional<double> duration;
    std::optional<double> rate;

    int line_no = 0;
    for (auto raw : split(text, '\n')) {
        line_no++;
        auto line = raw;
        if (auto hash = line.find('#'); hash != std::string_view::npos) {
            line = line.substr(0, hash);
        }
        line = trim(line);
        if (line.empty()) {
            continue;
        }
        auto eq = line.find('=');
        if (eq == std::string_view::npos) {
            throw ConfigError("line " + std::to_string(line_no) + ": expected 'key = value'");
        }
        LineParser p{line_no, std::string(trim(line.substr(0, eq)))};
        auto value = trim(line.substr(eq + 1));
        if (std::find(config_keys().begin(), config_keys().end(), p.key) == config_keys().end()) {
            p.fail("unknown key");
        }
        if (value.empty()) {
            p.fail("missing value");
        }
        seen[p.key] = line_no;
        const auto &key = p.key;

        if (key == "phi_a") {
            e.phi_a = p.real(value);
        } else if (key == "phi_d") {
            e.phi_d = p.real(value);
        } else if (key == "overlap") {
            e.overlap = p.real(value);
            p.range(e.overlap, 0, 1);
        } else if (key == "delay") {
            delay = p.real(value);
        } else if (key == "sigma") {
            cfg.sigma = p.real(value);
            if (!(cfg.sigma > 0)) {
                p.fail("must be positive");
            }
        } else if (key == "pair_amplitude") {
            e.pair_amplitude = p.real(value);
            if (!(e.pair_amplitude > 0)) {
                p.fail("must be positive");
            }
        } else if (key == "efficiency") {
            e.efficiency = p.real(value);
            if (!(e.efficiency > 0 && e.efficiency <= 1)) {
                p.fail("value " + exact_repr(e.efficiency) + " out of range (0, 1]");
            }
        } else if (key == "misalignment") {
            e.misalignment_deg = p.real(value);
        } else if (key == "seed") {
            e.seed = p.integer<std::uint64_t>(value);
        } else if (key == "events") {
            e.events = p.integer<std::int64_t>(value);
            if (e.events < 1) {
                p.fail("must be at least 1");
            }
        } else if (key == "duration") {
            duration = p.real(value);
            if (!(*duration > 0)) {
                p.fail("must be positive");
            }
        } else if (key == "rate") {
            rate = p.real(value);
            if (!(*rate > 0)) {
                p.fail("must be positive");
            }
        } else if (key == "max_photons") {
            e.max_photons = p.integer<int>(value);
            if (e.max_photons < 4) {
                p.fail("must be at least 4");
            }
        } else if (key == "settings") {
            if (value != "chsh" && value != "single") {
                p.fail("expected 'chsh' or 'single'");
            }
            cfg.settings = std::string(value);
        } else if (key == "chsh_angles") {
            auto xs = p.reals(value);
            if (xs.size() != 4) {
                p.fail("expected four angles a', d', a'', d''");
            }
            if (xs[0] == xs[2] || xs[1] == xs[3]) {
                p.fail("primed and double-primed angles must differ");
            }
            std::copy(xs.begin(), xs.end(), cfg.chsh_angles.begin());
        } else if (key == "placement") {
            if (value != "max" && value != "0" && value != "1" && value != "2" && value != "3") {
                p.fail("expected 'max' or 0..3");
            }
            cfg.placement = std::string(value);
        } else if (key == "mode") {
            if (value != "exact" && value != "sample") {
                p.fail("expected 'exact' or 'sample'");
            }
            cfg.mode = std::string(value);
        } else if (key == "delays") {
            if (value.find(':') != std::string_view::npos) {
                auto parts = split(value, ':');
                if (parts.size() != 3) {
                    p.fail("expected 'start:stop:count'");
                }
                auto n = p.integer<std::int64_t>(parts[2]);
                if (n < 1 || n > 100000) {
                    p.fail("count must lie in [1, 100000]");
                }
                cfg.delays = linspace(p.real(parts[0]), p.real(parts[1]), n);
            } else {
                cfg.delays = p.reals(value);
            }
        }
    }

    if (delay) {
        if (seen.contains("overlap")) {
            throw ConfigError(
                "line " + std::to_string(seen["delay"]) + ", key 'delay': conflicts with 'overlap' on line " +
                std::to_string(seen["overlap"]));
        }
        e.overlap = delay_overlap(*delay, cfg.sigma);
    }
    if (duration || rate) {
        const char *which = duration ? "duration" : "rate";
        if (!(duration && rate)) {
            throw ConfigError(
                "line " + std::to_string(seen[which]) + ", key '" + which + "': duration and rate must be given together");
        }
        if (seen.contains("events")) {
            throw ConfigError(
                "line " + std::to_string(seen[which]) + ", key '" + which + "': conflicts with 'events' on line " +
                std::to_string(seen["events"]));
        }
        e.events = std::max<std::int64_t>(1, std::llround(*duration * *rate));
    }
    return cfg;
}

}  // namespace swapsim
