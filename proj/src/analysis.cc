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

#include "swapsim/analysis.h"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "swapsim/errors.h"
#include "swapsim/optics.h"

namespace swapsim {

namespace {

constexpr double kFortyFive = 45.0;

double radians(double degrees) {
    return degrees * std::numbers::pi / 180.0;
}

void check_nonempty(const CoincidenceCounts &counts) {
    if (!(counts.total() > 0)) {
        throw EmptyDataError("no coincidences to correlate");
    }
}

double abs_e45(ExperimentConfig config, BellOutcome bell) {
    config.phi_a = kFortyFive;
    config.phi_d = kFortyFive;
    return std::abs(exact_correlation(config, bell));
}

/// Bisection for f(x) = target on [lo, hi], f continuous and monotone.
template <typename F>
double bisect(F f, double lo, double hi, double target) {
    double f_lo = f(lo);
    double f_hi = f(hi);
    double reach_lo = std::min(f_lo, f_hi);
    double reach_hi = std::max(f_lo, f_hi);
    if (target < reach_lo - kCalibrationTolerance || target > reach_hi + kCalibrationTolerance) {
        throw NoSolutionError(
            "target " + std::to_string(target) + " outside reachable range [" + std::to_string(reach_lo) + ", " +
            std::to_string(reach_hi) + "]");
    }
    if (std::abs(f_lo - target) <= kCalibrationTolerance * 1e-3) {
        return lo;
    }
    if (std::abs(f_hi - target) <= kCalibrationTolerance * 1e-3) {
        return hi;
    }
    bool increasing = f_hi > f_lo;
    for (int iter = 0; iter < 60 && hi - lo > 1e-13; iter++) {
        double mid = 0.5 * (lo + hi);
        double f_mid = f(mid);
        if ((f_mid < target) == increasing) {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    return 0.5 * (lo + hi);
}

}  // namespace

double correlation(const CoincidenceCounts &counts) {
    check_nonempty(counts);
    return (counts.pp - counts.pm - counts.mp + counts.mm) / counts.total();
}

double correlation_error(const CoincidenceCounts &counts) {
    check_nonempty(counts);
    double n = counts.total();
    double same = counts.pp + counts.mm;
    double different = counts.pm + counts.mp;
    return std::max(2 * std::sqrt(same * different / (n * n * n)), 1 / n);
}

CorrelationResult correlate(const CountsTable &table, std::size_t setting, BellOutcome bell) {
    auto counts = table.coincidences(setting, bell);
    CorrelationResult result;
    result.E = correlation(counts);
    result.sigma_E = table.exact() ? 0.0 : correlation_error(counts);
    result.setting = table.settings.at(setting);
    result.bell = bell;
    return result;
}

ChshResult chsh(const std::array<CorrelationResult, 4> &correlations, std::optional<Placement> placement) {
    const auto &c = correlations;
    double a1 = c[0].setting.phi_a;
    double a2 = c[2].setting.phi_a;
    double d1 = c[0].setting.phi_d;
    double d2 = c[1].setting.phi_d;
    bool grid = c[1].setting.phi_a == a1 && c[3].setting.phi_a == a2 && c[2].setting.phi_d == d1 &&
                c[3].setting.phi_d == d2 && a1 != a2 && d1 != d2;
    if (!grid) {
        throw InvalidSettingsError("CHSH needs settings (a',d'), (a',d''), (a'',d'), (a'',d'') with a' != a'', d' != d''");
    }
    for (const auto &r : c) {
        if (r.bell != c[0].bell) {
            throw InvalidSettingsError("CHSH correlations must belong to one Bell class");
        }
    }
    if (placement && (*placement < 0 || *placement > 3)) {
        throw InvalidSettingsError("CHSH placement must be 0..3");
    }

    auto evaluate = [&](Placement p) {
        std::array<double, 4> s{1, 1, 1, 1};
        s[static_cast<std::size_t>(p)] = -1;
        return std::abs(s[0] * c[0].E + s[1] * c[1].E) + std::abs(s[2] * c[2].E + s[3] * c[3].E);
    };

    ChshResult result;
    result.angles = {a1, d1, a2, d2};
    result.bell = c[0].bell;
    if (placement) {
        result.placement = *placement;
        result.S = evaluate(*placement);
    } else {
        result.placement = 0;
        result.S = evaluate(0);
        for (Placement p = 1; p < 4; p++) {
            double s = evaluate(p);
            if (s > result.S) {
                result.S = s;
                result.placement = p;
            }
        }
    }
    double var = 0;
    for (const auto &r : c) {
        var += r.sigma_E * r.sigma_E;
    }
    result.sigma_S = std::sqrt(var);
    return result;
}

ChshResult chsh_from_table(
    const CountsTable &table, BellOutcome bell, const std::array<double, 4> &angles, std::optional<Placement> placement) {
    auto settings = chsh_settings(angles[0], angles[1], angles[2], angles[3]);
    std::array<CorrelationResult, 4> correlations;
    for (std::size_t k = 0; k < 4; k++) {
        correlations[k] = correlate(table, table.find(settings[k]), bell);
    }
    return chsh(correlations, placement);
}

double qm_prediction(double phi_a, double phi_d, BellOutcome bell) {
    switch (bell) {
        case BellOutcome::PsiMinus:
            return -std::cos(2 * radians(phi_a - phi_d));
        case BellOutcome::PsiPlus:
            return -std::cos(2 * radians(phi_a + phi_d));
        case BellOutcome::Reject:
            break;
    }
    throw InvalidParameterError("no prediction for rejected events");
}

double exact_correlation(const ExperimentConfig &config, BellOutcome bell) {
    auto table = exact_counts(config, {{config.phi_a, config.phi_d}});
    return correlate(table, 0, bell).E;
}

std::vector<DelayPoint> delay_scan(const ExperimentConfig &config, const std::vector<double> &delays, double sigma) {
    if (delays.empty()) {
        throw InvalidParameterError("delay list is empty");
    }
    std::vector<DelayPoint> curve;
    curve.reserve(delays.size());
    for (double delta : delays) {
        ExperimentConfig c = config;
        c.overlap = delay_overlap(delta, sigma);
        auto table = exact_counts(c, {{kFortyFive, kFortyFive}});
        curve.push_back(DelayPoint{
            delta,
            c.overlap,
            correlate(table, 0, BellOutcome::PsiMinus).E,
            correlate(table, 0, BellOutcome::PsiPlus).E,
        });
    }
    return curve;
}

double calibrate_overlap(double target, BellOutcome bell, const ExperimentConfig &base) {
    if (!(target > 0 && target <= 1)) {
        throw NoSolutionError("calibration target must lie in (0, 1]");
    }
    if (bell == BellOutcome::Reject) {
        throw InvalidParameterError("cannot calibrate the reject class");
    }
    auto f = [&](double v) {
        ExperimentConfig c = base;
        c.overlap = v;
        return abs_e45(c, bell);
    };
    return bisect(f, 0.0, 1.0, target);
}

Calibration calibrate_visibilities(double target_minus, double target_plus, const ExperimentConfig &base) {
    if (!(target_plus > 0 && target_plus <= 1)) {
        throw NoSolutionError("calibration target must lie in (0, 1]");
    }
    // Misalignment also moves the PsiMinus correlation slightly once v < 1,
    // so alternate the two one-dimensional solves until both targets hold.
    Calibration cal;
    ExperimentConfig c = base;
    c.misalignment_deg = 0;
    for (int round = 0; round < 30; round++) {
        c.overlap = calibrate_overlap(target_minus, BellOutcome::PsiMinus, c);
        auto f = [&](double m) {
            ExperimentConfig trial = c;
            trial.misalignment_deg = m;
            return abs_e45(trial, BellOutcome::PsiPlus);
        };
        c.misalignment_deg = bisect(f, 0.0, 22.5, target_plus);
        cal.overlap = c.overlap;
        cal.misalignment_deg = c.misalignment_deg;
        cal.e_psi_minus = abs_e45(c, BellOutcome::PsiMinus);
        cal.e_psi_plus = abs_e45(c, BellOutcome::PsiPlus);
        if (std::abs(cal.e_psi_minus - target_minus) <= kCalibrationTolerance &&
            std::abs(cal.e_psi_plus - target_plus) <= kCalibrationTolerance) {
            return cal;
        }
    }
    throw NoSolutionError("overlap/misalignment calibration did not converge");
}

SignAudit sign_audit(const std::array<CorrelationResult, 4> &published, const std::array<double, 4> &model) {
    std::vector<std::size_t> differ;
    std::vector<std::size_t> agree;
    std::array<CorrelationResult, 4> consistent = published;
    for (std::size_t k = 0; k < 4; k++) {
        bool same = (published[k].E >= 0) == (model[k] >= 0);
        (same ? agree : differ).push_back(k);
        consistent[k].E = std::copysign(std::abs(published[k].E), model[k]);
    }
    SignAudit audit;
    audit.global_flip = differ.size() > agree.size();
    audit.mismatched = audit.global_flip ? agree : differ;
    audit.as_given = chsh(published);
    audit.consistent = chsh(consistent);
    return audit;
}

}  // namespace swapsim
