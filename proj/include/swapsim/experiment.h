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

#ifndef SWAPSIM_EXPERIMENT_H
#define SWAPSIM_EXPERIMENT_H

#include <array>
#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "swapsim/fock.h"

namespace swapsim {

enum class Detector : std::uint8_t { APlus, AMinus, DPlus, DMinus, D1H, D1V, D2H, D2V };
inline constexpr std::size_t kNumDetectors = 8;

Path detector_path(Detector detector);
std::string detector_name(Detector detector);

/// Set of detectors that fired in one event window (bit k = Detector k).
class ClickPattern {
   public:
    constexpr ClickPattern() = default;
    constexpr explicit ClickPattern(std::uint8_t bits) : bits_(bits) {
    }
    ClickPattern(std::initializer_list<Detector> detectors);

    constexpr bool contains(Detector d) const {
        return (bits_ >> static_cast<int>(d)) & 1;
    }
    constexpr ClickPattern with(Detector d) const {
        return ClickPattern(static_cast<std::uint8_t>(bits_ | (1u << static_cast<int>(d))));
    }
    int size() const;
    constexpr std::uint8_t bits() const {
        return bits_;
    }
    std::string str() const;

    auto operator<=>(const ClickPattern &) const = default;

   private:
    std::uint8_t bits_ = 0;
};

enum class BellOutcome { PsiMinus, PsiPlus, Reject };
enum class Sign { Plus, Minus };

std::string bell_name(BellOutcome bell);
std::string sign_name(Sign sign);

/// One of the eight accepted four-fold event types.
struct FourfoldClass {
    BellOutcome bell = BellOutcome::PsiMinus;
    Sign a_out = Sign::Plus;
    Sign d_out = Sign::Plus;

    /// bell * 4 + a_out * 2 + d_out.
    std::size_t index() const;
    static FourfoldClass from_index(std::size_t index);
    auto operator<=>(const FourfoldClass &) const = default;
};
inline constexpr std::size_t kNumClasses = 8;

/// Four-fold coincidence logic; std::nullopt is Reject.
std::optional<FourfoldClass> classify(ClickPattern pattern);

/// Bell-state analyzer part of the logic alone: exactly two BSA clicks forming
/// an H/V pair in opposite arms (PsiMinus) or in the same arm (PsiPlus).
BellOutcome classify_bsa(ClickPattern pattern);

/// Detectors that see at least one photon of `occupation` (any polarization, any bin).
ClickPattern clicks_of(const Occupation &occupation);

struct ExperimentConfig {
    double phi_a = 0;
    double phi_d = 0;
    double overlap = 1;
    /// Only the 1:2:1 second-order weighting is modeled, so g is validated but
    /// does not change the normalized source state.
    double pair_amplitude = 1;
    double efficiency = 1;
    double misalignment_deg = 0;
    std::uint64_t seed = 0;
    std::int64_t events = 10000;
    int max_photons = 4;

    /// Throws InvalidParameterError naming the offending field.
    void validate() const;
};

struct Setting {
    double phi_a = 0;
    double phi_d = 0;
    auto operator<=>(const Setting &) const = default;
};

/// (a', d'), (a', d''), (a'', d'), (a'', d'') for CHSH angles (a', d', a'', d'').
std::vector<Setting> chsh_settings(double a1, double d1, double a2, double d2);

enum class BellState { PsiMinus, PsiPlus, PhiPlus, PhiMinus };
std::string bell_state_name(BellState state);

/// Two-photon Bell state on paths p (first qubit) and q, temporal bin 0:
/// Psi± = (H_p V_q ± V_p H_q)/sqrt2, Phi± = (H_p H_q ± V_p V_q)/sqrt2.
FockVector bell_pair(Path p, Path q, BellState state, FockLimits limits = {});

enum SourceTerms : unsigned {
    kDoublePairAB = 1,
    kCrossPairs = 2,
    kDoublePairCD = 4,
    kAllTerms = 7,
};

/// Second-order emission (A + C)^2 |0>, A and C creating Psi- pairs on (a, b) and (c, d).
///
/// `terms` selects which of A^2, 2AC, C^2 are kept before normalization.
FockVector build_source_state(double pair_amplitude, unsigned terms = kAllTerms, FockLimits limits = {});

/// Unnormalized operator expansion of the selected source terms.
FockVector source_polynomial(unsigned terms, FockLimits limits = {});

/// Full optical circuit: misalignment on b, c; delay on c; BS; PBSs; analyzers
/// on a and d; detector losses.
ModeMap assemble_circuit(const ExperimentConfig &config);

/// Probability of every click pattern, indexed by pattern bits.
class PatternDistribution {
   public:
    double operator[](ClickPattern p) const {
        return probs_[p.bits()];
    }
    void add(ClickPattern p, double prob) {
        probs_[p.bits()] += prob;
    }
    double total() const;
    const std::array<double, 256> &values() const {
        return probs_;
    }

   private:
    std::array<double, 256> probs_{};
};

/// Click statistics of the full source through the configured circuit.
PatternDistribution detection_probabilities(const ExperimentConfig &config);
/// Click statistics of an arbitrary input state. Sums to the input norm.
PatternDistribution detection_probabilities(const ExperimentConfig &config, const FockVector &input);

/// Per-arm coincidence counts N_{++}, N_{+-}, N_{-+}, N_{--}.
struct CoincidenceCounts {
    double pp = 0;
    double pm = 0;
    double mp = 0;
    double mm = 0;
    double total() const {
        return pp + pm + mp + mm;
    }
};

/// Four-fold counts (or probabilities) per setting and class.
struct CountsTable {
    std::vector<Setting> settings;
    std::vector<std::array<double, kNumClasses>> counts;
    std::vector<double> rejected;
    /// Trials per setting; 0 for exact probability tables.
    std::int64_t trials = 0;

    bool exact() const {
        return trials == 0;
    }
    double count(std::size_t setting, FourfoldClass cls) const {
        return counts.at(setting)[cls.index()];
    }
    CoincidenceCounts coincidences(std::size_t setting, BellOutcome bell) const;
    /// Index of `setting` in `settings`; throws InvalidSettingsError if absent.
    std::size_t find(Setting setting) const;
};

/// Completeness tolerance for click-pattern probabilities.
inline constexpr double kCompletenessTolerance = 1e-9;

/// Exact class probabilities for every setting. Throws InvariantError if the
/// pattern probabilities of a setting do not sum to one.
CountsTable exact_counts(const ExperimentConfig &config, const std::vector<Setting> &settings);

/// One multinomial draw of `config.events` trials per setting.
CountsTable sample_counts(const ExperimentConfig &config, const std::vector<Setting> &settings);

/// Multinomial draws from an existing exact table.
CountsTable sample_from_probabilities(const CountsTable &exact, std::uint64_t seed, std::int64_t events);

/// Seed of the random stream used for setting `index`; a pure function of its
/// arguments, so results do not depend on evaluation order.
std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index);

/// Conditional probabilities that the analyzer reports each Psi outcome when a
/// Bell state is injected on b, c with a and d empty.
struct BsaIdentification {
    double psi_minus = 0;
    double psi_plus = 0;
};
BsaIdentification identify_bell_input(const ExperimentConfig &config, BellState input);

/// False BSA acceptances from a double pair on (a, b): two photons reach the
/// analyzer from the same source.
struct DoublePairAudit {
    /// Probability of any accepted BSA pair, PBS-augmented analyzer.
    double pbs_acceptance = 0;
    /// Probability of one click in each beam-splitter arm, bare analyzer.
    double bare_acceptance = 0;
    /// pbs_acceptance / bare_acceptance.
    double ratio = 0;
    /// Same acceptances for the genuine one-pair-each term.
    double pbs_signal = 0;
    double bare_signal = 0;
    /// (pbs false/signal) / (bare false/signal).
    double false_to_signal_ratio = 0;
    /// Raised when `ratio` exceeds 1/2.
    bool flagged = false;
};
DoublePairAudit double_pair_audit(const ExperimentConfig &config);

}  // namespace swapsim

#endif  // SWAPSIM_EXPERIMENT_H
