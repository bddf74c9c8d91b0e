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

#ifndef SWAPSIM_ANALYSIS_H
#define SWAPSIM_ANALYSIS_H

#include <array>
#include <optional>
#include <vector>

#include "swapsim/experiment.h"

namespace swapsim {

struct CorrelationResult {
    double E = 0;
    double sigma_E = 0;
    Setting setting;
    BellOutcome bell = BellOutcome::PsiMinus;
};

/// Index of the CHSH term carrying the minus sign, in the order
/// (a', d'), (a', d''), (a'', d'), (a'', d''). Index 1 is the textbook form
/// S = |E(a',d') - E(a',d'')| + |E(a'',d') + E(a'',d'')|.
using Placement = int;
inline constexpr Placement kStandardPlacement = 1;

struct ChshResult {
    double S = 0;
    double sigma_S = 0;
    /// a', d', a'', d''.
    std::array<double, 4> angles{};
    Placement placement = kStandardPlacement;
    BellOutcome bell = BellOutcome::PsiMinus;
};

/// E = (N++ - N+- - N-+ + N--) / N.
double correlation(const CoincidenceCounts &counts);

/// sigma_E = max(2 sqrt(P M / N^3), 1/N) with P = N++ + N--, M = N+- + N-+.
///
/// Binomial propagation of counting noise; the 1/N floor covers P M = 0.
double correlation_error(const CoincidenceCounts &counts);

/// Correlation of one class at one setting. Exact tables report sigma_E = 0.
CorrelationResult correlate(const CountsTable &table, std::size_t setting, BellOutcome bell);

/// CHSH parameter from four correlations ordered (a',d'), (a',d''), (a'',d'), (a'',d'').
/// `placement` empty means "max": try all four placements and keep the largest S.
ChshResult chsh(const std::array<CorrelationResult, 4> &correlations, std::optional<Placement> placement = {});

/// Looks up the four CHSH settings in `table` and evaluates chsh.
ChshResult chsh_from_table(
    const CountsTable &table,
    BellOutcome bell,
    const std::array<double, 4> &angles,
    std::optional<Placement> placement = {});

/// PsiMinus: -cos(2(phi_a - phi_d)); PsiPlus: -cos(2(phi_a + phi_d)). Degrees.
double qm_prediction(double phi_a, double phi_d, BellOutcome bell);

/// Exact conditional correlation of one class at the configured angles.
double exact_correlation(const ExperimentConfig &config, BellOutcome bell);

struct DelayPoint {
    double delta = 0;
    double overlap = 0;
    double e_psi_minus = 0;
    double e_psi_plus = 0;
};

/// Correlations at phi_a = phi_d = 45 deg against the b-c delay; both classes
/// come from the same probability evaluation.
std::vector<DelayPoint> delay_scan(const ExperimentConfig &config, const std::vector<double> &delays, double sigma);

/// Tolerance on |E| accepted by the calibrations.
inline constexpr double kCalibrationTolerance = 1e-4;

/// Overlap v for which |E(45, 45)| of `bell` equals `target`, found by bisection.
/// Throws NoSolutionError when the target lies outside the reachable range.
double calibrate_overlap(double target, BellOutcome bell, const ExperimentConfig &base);

struct Calibration {
    double overlap = 1;
    double misalignment_deg = 0;
    double e_psi_minus = 0;
    double e_psi_plus = 0;
};

/// Joint fit of overlap (PsiMinus target) and misalignment in [0, 22.5] deg
/// (PsiPlus target), solved by alternating bisections.
Calibration calibrate_visibilities(double target_minus, double target_plus, const ExperimentConfig &base);

/// Comparison of a published set of four correlations with a model sign pattern.
struct SignAudit {
    /// Entries whose sign disagrees with the model, after allowing a global flip.
    std::vector<std::size_t> mismatched;
    bool global_flip = false;
    /// S of the values as given ("max" placement).
    ChshResult as_given;
    /// S of the magnitudes with the model's signs ("max" placement).
    ChshResult consistent;
};
SignAudit sign_audit(const std::array<CorrelationResult, 4> &published, const std::array<double, 4> &model);

}  // namespace swapsim

#endif  // SWAPSIM_ANALYSIS_H
