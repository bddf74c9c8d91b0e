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

#include "swapsim/experiment.h"

#include <algorithm>
#include <bit>
#include <cmath>
#include <numbers>
#include <random>
#include <sstream>

#include "swapsim/errors.h"
#include "swapsim/optics.h"

namespace swapsim {

namespace {

constexpr std::array<Detector, kNumDetectors> kDetectors = {
    Detector::APlus, Detector::AMinus, Detector::DPlus, Detector::DMinus,
    Detector::D1H,   Detector::D1V,    Detector::D2H,   Detector::D2V,
};

constexpr std::array<const char *, kNumDetectors> kDetectorNames = {
    "A+", "A-", "D+", "D-", "D1H", "D1V", "D2H", "D2V",
};

ModeLabel mode(Path path, Polarization pol) {
    return ModeLabel{path, pol, 0};
}

/// (H_p V_q - V_p H_q)/sqrt2 applied to `state`.
FockVector create_singlet(const FockVector &state, Path p, Path q) {
    auto hv = apply_creation(apply_creation(state, mode(p, Polarization::H)), mode(q, Polarization::V));
    auto vh = apply_creation(apply_creation(state, mode(p, Polarization::V)), mode(q, Polarization::H));
    return Complex{1 / std::numbers::sqrt2, 0} * (hv - vh);
}

std::uint64_t splitmix64(std::uint64_t x) {
    x += 0x9E3779B97F4A7C15ull;
    x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
    x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
    return x ^ (x >> 31);
}

void check_completeness(double total, double expected, const std::string &where) {
    if (std::abs(total - expected) > kCompletenessTolerance) {
        std::ostringstream msg;
        msg.precision(12);
        msg << "click-pattern probabilities sum to " << total << " instead of " << expected << " (" << where << ")";
        throw InvariantError(msg.str());
    }
}

}  // namespace

Path detector_path(Detector detector) {
    return static_cast<Path>(static_cast<int>(Path::APlus) + static_cast<int>(detector));
}

std::string detector_name(Detector detector) {
    return kDetectorNames.at(static_cast<std::size_t>(detector));
}

ClickPattern::ClickPattern(std::initializer_list<Detector> detectors) {
    for (auto d : detectors) {
        bits_ |= static_cast<std::uint8_t>(1u << static_cast<int>(d));
    }
}

int ClickPattern::size() const {
    return std::popcount(bits_);
}

std::string ClickPattern::str() const {
    std::string out = "{";
    for (auto d : kDetectors) {
        if (contains(d)) {
            if (out.size() > 1) {
                out += ",";
            }
            out += detector_name(d);
        }
    }
    return out + "}";
}

std::string bell_name(BellOutcome bell) {
    switch (bell) {
        case BellOutcome::PsiMinus:
            return "psi_minus";
        case BellOutcome::PsiPlus:
            return "psi_plus";
        case BellOutcome::Reject:
            return "reject";
    }
    return "?";
}

std::string sign_name(Sign sign) {
    return sign == Sign::Plus ? "+" : "-";
}

std::size_t FourfoldClass::index() const {
    if (bell == BellOutcome::Reject) {
        throw InvalidParameterError("Reject is not a four-fold class");
    }
    return static_cast<std::size_t>(bell) * 4 + static_cast<std::size_t>(a_out) * 2 + static_cast<std::size_t>(d_out);
}

FourfoldClass FourfoldClass::from_index(std::size_t index) {
    if (index >= kNumClasses) {
        throw InvalidParameterError("four-fold class index out of range");
    }
    return FourfoldClass{
        static_cast<BellOutcome>(index / 4),
        static_cast<Sign>((index / 2) % 2),
        static_cast<Sign>(index % 2),
    };
}

BellOutcome classify_bsa(ClickPattern pattern) {
    constexpr std::uint8_t kBsaMask = 0xF0;
    auto bsa = ClickPattern(pattern.bits() & kBsaMask);
    if (bsa == ClickPattern{Detector::D1H, Detector::D2V} || bsa == ClickPattern{Detector::D1V, Detector::D2H}) {
        return BellOutcome::PsiMinus;
    }
    if (bsa == ClickPattern{Detector::D1H, Detector::D1V} || bsa == ClickPattern{Detector::D2H, Detector::D2V}) {
        return BellOutcome::PsiPlus;
    }
    return BellOutcome::Reject;
}

std::optional<FourfoldClass> classify(ClickPattern pattern) {
    if (pattern.size() != 4) {
        return std::nullopt;
    }
    bool a_plus = pattern.contains(Detector::APlus);
    bool a_minus = pattern.contains(Detector::AMinus);
    bool d_plus = pattern.contains(Detector::DPlus);
    bool d_minus = pattern.contains(Detector::DMinus);
    if (a_plus == a_minus || d_plus == d_minus) {
        return std::nullopt;
    }
    BellOutcome bell = classify_bsa(pattern);
    if (bell == BellOutcome::Reject) {
        return std::nullopt;
    }
    return FourfoldClass{bell, a_plus ? Sign::Plus : Sign::Minus, d_plus ? Sign::Plus : Sign::Minus};
}

ClickPattern clicks_of(const Occupation &occupation) {
    ClickPattern pattern;
    for (const auto &m : occupation.quanta()) {
        auto k = static_cast<int>(m.path);
        if (k >= static_cast<int>(Path::APlus) && k <= static_cast<int>(Path::D2V)) {
            pattern = pattern.with(static_cast<Detector>(k - static_cast<int>(Path::APlus)));
        }
    }
    return pattern;
}

void ExperimentConfig::validate() const {
    auto finite = [](double x, const char *name) {
        if (!std::isfinite(x)) {
            throw InvalidParameterError(std::string(name) + " must be finite");
        }
    };
    finite(phi_a, "phi_a");
    finite(phi_d, "phi_d");
    finite(misalignment_deg, "misalignment");
    if (!(overlap >= 0 && overlap <= 1)) {
        throw InvalidParameterError("overlap must lie in [0, 1]");
    }
    if (!(pair_amplitude > 0) || !std::isfinite(pair_amplitude)) {
        throw InvalidParameterError("pair_amplitude must be positive");
    }
    if (!(efficiency > 0 && efficiency <= 1)) {
        throw InvalidParameterError("efficiency must lie in (0, 1]");
    }
    if (events < 1) {
        throw InvalidParameterError("events must be at least 1");
    }
    if (max_photons < 4) {
        throw InvalidParameterError("max_photons must be at least 4");
    }
}

std::vector<Setting> chsh_settings(double a1, double d1, double a2, double d2) {
    return {{a1, d1}, {a1, d2}, {a2, d1}, {a2, d2}};
}

std::string bell_state_name(BellState state) {
    switch (state) {
        case BellState::PsiMinus:
            return "psi_minus";
        case BellState::PsiPlus:
            return "psi_plus";
        case BellState::PhiPlus:
            return "phi_plus";
        case BellState::PhiMinus:
            return "phi_minus";
    }
    return "?";
}

FockVector bell_pair(Path p, Path q, BellState state, FockLimits limits) {
    auto vac = vacuum(limits);
    auto pair = [&](Polarization x, Polarization y) {
        return apply_creation(apply_creation(vac, mode(p, x)), mode(q, y));
    };
    using enum Polarization;
    const Complex h{1 / std::numbers::sqrt2, 0};
    switch (state) {
        case BellState::PsiMinus:
            return h * (pair(H, V) - pair(V, H));
        case BellState::PsiPlus:
            return h * (pair(H, V) + pair(V, H));
        case BellState::PhiPlus:
            return h * (pair(H, H) + pair(V, V));
        case BellState::PhiMinus:
            return h * (pair(H, H) - pair(V, V));
    }
    throw InvalidParameterError("unknown Bell state");
}

FockVector source_polynomial(unsigned terms, FockLimits limits) {
    auto vac = vacuum(limits);
    FockVector total(limits);
    if (terms & kDoublePairAB) {
        total = total + create_singlet(create_singlet(vac, Path::A, Path::B), Path::A, Path::B);
    }
    if (terms & kCrossPairs) {
        total = total + Complex{2, 0} * create_singlet(create_singlet(vac, Path::C, Path::D), Path::A, Path::B);
    }
    if (terms & kDoublePairCD) {
        total = total + create_singlet(create_singlet(vac, Path::C, Path::D), Path::C, Path::D);
    }
    return total;
}

FockVector build_source_state(double pair_amplitude, unsigned terms, FockLimits limits) {
    if (!(pair_amplitude > 0)) {
        throw InvalidParameterError("pair_amplitude must be positive");
    }
    return normalize(source_polynomial(terms, limits));
}

ModeMap assemble_circuit(const ExperimentConfig &config) {
    config.validate();
    std::vector<ModeMap> stages = {
        polarization_rotator(Path::B, config.misalignment_deg),
        polarization_rotator(Path::C, config.misalignment_deg),
        delay_decompose(Path::C, config.overlap),
        beam_splitter(Path::B, Path::C, Path::Bsa1, Path::Bsa2),
        pbs(Path::Bsa1, Path::D1H, Path::D1V),
        pbs(Path::Bsa2, Path::D2H, Path::D2V),
        polarization_rotator(Path::A, config.phi_a),
        pbs(Path::A, Path::APlus, Path::AMinus),
        polarization_rotator(Path::D, config.phi_d),
        pbs(Path::D, Path::DPlus, Path::DMinus),
    };
    for (auto d : kDetectors) {
        stages.push_back(loss(detector_path(d), loss_path_for(detector_path(d)), config.efficiency));
    }
    return compose_all(stages);
}

double PatternDistribution::total() const {
    double t = 0;
    for (double p : probs_) {
        t += p;
    }
    return t;
}

PatternDistribution detection_probabilities(const ExperimentConfig &config, const FockVector &input) {
    auto output = apply_mode_map(input, assemble_circuit(config));
    PatternDistribution dist;
    for (const auto &[occ, amp] : output.terms()) {
        dist.add(clicks_of(occ), std::norm(amp));
    }
    return dist;
}

PatternDistribution detection_probabilities(const ExperimentConfig &config) {
    FockLimits limits{config.max_photons};
    auto dist = detection_probabilities(config, build_source_state(config.pair_amplitude, kAllTerms, limits));
    check_completeness(dist.total(), 1.0, "full source");
    return dist;
}

CoincidenceCounts CountsTable::coincidences(std::size_t setting, BellOutcome bell) const {
    auto at = [&](Sign a, Sign d) {
        return count(setting, FourfoldClass{bell, a, d});
    };
    return CoincidenceCounts{
        at(Sign::Plus, Sign::Plus),
        at(Sign::Plus, Sign::Minus),
        at(Sign::Minus, Sign::Plus),
        at(Sign::Minus, Sign::Minus),
    };
}

std::size_t CountsTable::find(Setting setting) const {
    auto it = std::find(settings.begin(), settings.end(), setting);
    if (it == settings.end()) {
        throw InvalidSettingsError(
            "setting (" + std::to_string(setting.phi_a) + ", " + std::to_string(setting.phi_d) + ") not in table");
    }
    return static_cast<std::size_t>(it - settings.begin());
}

CountsTable exact_counts(const ExperimentConfig &config, const std::vector<Setting> &settings) {
    if (settings.empty()) {
        throw InvalidSettingsError("settings list is empty");
    }
    CountsTable table;
    table.settings = settings;
    for (const auto &setting : settings) {
        ExperimentConfig c = config;
        c.phi_a = setting.phi_a;
        c.phi_d = setting.phi_d;
        auto dist = detection_probabilities(c);
        std::array<double, kNumClasses> row{};
        double rejected = 0;
        for (std::size_t bits = 0; bits < 256; bits++) {
            double p = dist.values()[bits];
            auto cls = classify(ClickPattern(static_cast<std::uint8_t>(bits)));
            if (cls) {
                row[cls->index()] += p;
            } else {
                rejected += p;
            }
        }
        table.counts.push_back(row);
        table.rejected.push_back(rejected);
    }
    return table;
}

std::uint64_t substream_seed(std::uint64_t seed, std::uint64_t index) {
    return splitmix64(splitmix64(seed) ^ splitmix64(index + 0x632BE59BD9B4E019ull));
}

CountsTable sample_from_probabilities(const CountsTable &exact, std::uint64_t seed, std::int64_t events) {
    if (events < 1) {
        throw InvalidParameterError("events must be at least 1");
    }
    if (!exact.exact()) {
        throw InvalidParameterError("sampling needs an exact probability table");
    }
    CountsTable table;
    table.settings = exact.settings;
    table.trials = events;
    for (std::size_t s = 0; s < exact.settings.size(); s++) {
        std::mt19937_64 rng(substream_seed(seed, s));
        std::int64_t remaining = events;
        double mass = 1.0;
        std::array<double, kNumClasses> row{};
        // Multinomial as a chain of conditional binomials; Reject takes the rest.
        for (std::size_t k = 0; k < kNumClasses; k++) {
            double p = exact.counts[s][k];
            std::int64_t n = 0;
            if (remaining > 0 && mass > 0 && p > 0) {
                double q = std::clamp(p / mass, 0.0, 1.0);
                n = std::binomial_distribution<std::int64_t>(remaining, q)(rng);
            }
            row[k] = static_cast<double>(n);
            remaining -= n;
            mass -= p;
        }
        table.counts.push_back(row);
        table.rejected.push_back(static_cast<double>(remaining));
    }
    return table;
}

CountsTable sample_counts(const ExperimentConfig &config, const std::vector<Setting> &settings) {
    config.validate();
    return sample_from_probabilities(exact_counts(config, settings), config.seed, config.events);
}

BsaIdentification identify_bell_input(const ExperimentConfig &config, BellState input) {
    FockLimits limits{config.max_photons};
    auto dist = detection_probabilities(config, bell_pair(Path::B, Path::C, input, limits));
    check_completeness(dist.total(), 1.0, "Bell-state input");
    BsaIdentification result;
    for (std::size_t bits = 0; bits < 256; bits++) {
        switch (classify_bsa(ClickPattern(static_cast<std::uint8_t>(bits)))) {
            case BellOutcome::PsiMinus:
                result.psi_minus += dist.values()[bits];
                break;
            case BellOutcome::PsiPlus:
                result.psi_plus += dist.values()[bits];
                break;
            case BellOutcome::Reject:
                break;
        }
    }
    return result;
}

namespace {

/// Analyzer without polarizing beam splitters: one threshold detector per BS arm.
double bare_analyzer_acceptance(const ExperimentConfig &config, const FockVector &input) {
    auto circuit = compose_all({
        polarization_rotator(Path::B, config.misalignment_deg),
        polarization_rotator(Path::C, config.misalignment_deg),
        delay_decompose(Path::C, config.overlap),
        beam_splitter(Path::B, Path::C, Path::Bsa1, Path::Bsa2),
        loss(Path::Bsa1, Path::LossD1H, config.efficiency),
        loss(Path::Bsa2, Path::LossD2H, config.efficiency),
    });
    auto output = apply_mode_map(normalize(input), circuit);
    double accepted = 0;
    for (const auto &[occ, amp] : output.terms()) {
        bool arm1 = false;
        bool arm2 = false;
        for (const auto &m : occ.quanta()) {
            arm1 |= m.path == Path::Bsa1;
            arm2 |= m.path == Path::Bsa2;
        }
        if (arm1 && arm2) {
            accepted += std::norm(amp);
        }
    }
    return accepted;
}

double pbs_analyzer_acceptance(const ExperimentConfig &config, const FockVector &input) {
    auto dist = detection_probabilities(config, normalize(input));
    double accepted = 0;
    for (std::size_t bits = 0; bits < 256; bits++) {
        if (classify_bsa(ClickPattern(static_cast<std::uint8_t>(bits))) != BellOutcome::Reject) {
            accepted += dist.values()[bits];
        }
    }
    return accepted;
}

}  // namespace

DoublePairAudit double_pair_audit(const ExperimentConfig &config) {
    config.validate();
    FockLimits limits{config.max_photons};
    auto double_pair = source_polynomial(kDoublePairAB, limits);
    auto genuine = source_polynomial(kCrossPairs, limits);

    DoublePairAudit audit;
    audit.pbs_acceptance = pbs_analyzer_acceptance(config, double_pair);
    audit.bare_acceptance = bare_analyzer_acceptance(config, double_pair);
    audit.pbs_signal = pbs_analyzer_acceptance(config, genuine);
    audit.bare_signal = bare_analyzer_acceptance(config, genuine);
    if (!(audit.bare_acceptance > 0) || !(audit.pbs_signal > 0)) {
        throw InvariantError("double-pair audit has a vanishing reference acceptance");
    }
    audit.ratio = audit.pbs_acceptance / audit.bare_acceptance;
    audit.false_to_signal_ratio =
        (audit.pbs_acceptance / audit.pbs_signal) / (audit.bare_acceptance / audit.bare_signal);
    audit.flagged = audit.ratio > 0.5;
    return audit;
}

}  // namespace swapsim
