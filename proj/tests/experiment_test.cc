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

#include <gtest/gtest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "oracle.h"
#include "swapsim/analysis.h"
#include "swapsim/errors.h"

using namespace swapsim;

namespace {

using enum Detector;
using enum Polarization;

oracle::Params to_oracle(const ExperimentConfig &c) {
    return oracle::Params{c.phi_a, c.phi_d, c.overlap, c.efficiency, c.misalignment_deg};
}

struct BellTerm {
    double coeff;
    Polarization first;
    Polarization second;
};

std::vector<BellTerm> bell_terms(BellState s) {
    const double h = 1 / std::numbers::sqrt2;
    switch (s) {
        case BellState::PsiMinus:
            return {{h, H, V}, {-h, V, H}};
        case BellState::PsiPlus:
            return {{h, H, V}, {h, V, H}};
        case BellState::PhiPlus:
            return {{h, H, H}, {h, V, V}};
        case BellState::PhiMinus:
            return {{h, H, H}, {-h, V, V}};
    }
    return {};
}

/// |x>_ad |y>_bc built from creation operators.
FockVector bell_product(BellState ad, BellState bc) {
    FockVector total;
    for (const auto &s : bell_terms(ad)) {
        for (const auto &t : bell_terms(bc)) {
            auto v = vacuum();
            v = apply_creation(v, {Path::A, s.first, 0});
            v = apply_creation(v, {Path::D, s.second, 0});
            v = apply_creation(v, {Path::B, t.first, 0});
            v = apply_creation(v, {Path::C, t.second, 0});
            total = total + Complex{s.coeff * t.coeff, 0} * v;
        }
    }
    return total;
}

constexpr std::array<BellState, 4> kBellStates = {
    BellState::PsiMinus, BellState::PsiPlus, BellState::PhiPlus, BellState::PhiMinus};

}  // namespace

TEST(experiment, cross_term_has_one_photon_per_source_path) {
    auto s = build_source_state(1.0, kCrossPairs);
    ASSERT_FALSE(s.empty());
    for (const auto &[occ, amp] : s.terms()) {
        for (auto p : {Path::A, Path::B, Path::C, Path::D}) {
            int n = 0;
            for (auto q : occ.quanta()) {
                n += q.path == p;
            }
            EXPECT_EQ(n, 1) << occ.str();
        }
    }
}

TEST(experiment, source_operator_weights) {
    // Operator-level coefficients: (A + C)^2 = A^2 + 2AC + C^2. Dividing state
    // amplitudes by sqrt(prod n!) recovers the monomial coefficients.
    auto poly = source_polynomial(kAllTerms);
    auto mono = [&](std::vector<std::pair<ModeLabel, int>> counts) {
        auto o = Occupation::from_counts(counts);
        return poly.amplitude(o) / std::sqrt(o.factorial_product());
    };
    Complex double_ab = mono({{{Path::A, H, 0}, 2}, {{Path::B, V, 0}, 2}});
    Complex cross = mono({{{Path::A, H, 0}, 1}, {{Path::B, V, 0}, 1}, {{Path::C, H, 0}, 1}, {{Path::D, V, 0}, 1}});
    Complex double_cd = mono({{{Path::C, H, 0}, 2}, {{Path::D, V, 0}, 2}});
    EXPECT_NEAR(std::abs(double_ab / cross), 0.5, 1e-15);
    EXPECT_NEAR(std::abs(double_cd / cross), 0.5, 1e-15);

    auto s = build_source_state(0.3);
    EXPECT_NEAR(s.norm(), 1.0, 1e-12);
    // |A^2|0>|^2 = 3, |AC|0>|^2 = 1 => cross weight 4 / (3 + 4 + 3).
    EXPECT_NEAR(std::norm(inner_product(normalize(source_polynomial(kCrossPairs)), s)), 0.4, 1e-12);
    EXPECT_THROW(build_source_state(0.0), InvalidParameterError);
}

TEST(experiment, swapping_identity) {
    auto cross = build_source_state(1.0, kCrossPairs);
    double matched = 0;
    for (auto ad : kBellStates) {
        for (auto bc : kBellStates) {
            double w = std::norm(inner_product(bell_product(ad, bc), cross));
            if (ad == bc) {
                EXPECT_NEAR(w, 0.25, 1e-12) << bell_state_name(ad);
                matched += w;
            } else {
                EXPECT_NEAR(w, 0.0, 1e-12);
            }
        }
    }
    EXPECT_NEAR(matched, 1.0, 1e-12);
}

TEST(experiment, classify_examples) {
    auto minus = classify({APlus, DMinus, D1H, D2V});
    ASSERT_TRUE(minus);
    EXPECT_EQ(minus->bell, BellOutcome::PsiMinus);
    EXPECT_EQ(minus->a_out, Sign::Plus);
    EXPECT_EQ(minus->d_out, Sign::Minus);

    auto plus = classify({APlus, DPlus, D1H, D1V});
    ASSERT_TRUE(plus);
    EXPECT_EQ(plus->bell, BellOutcome::PsiPlus);
    EXPECT_EQ(plus->d_out, Sign::Plus);

    EXPECT_FALSE(classify({APlus, DPlus, D1H, D2H}));
    EXPECT_FALSE(classify({APlus, AMinus, DPlus, D1H, D2V}));
    EXPECT_FALSE(classify({APlus, D1H, D2V}));
    EXPECT_FALSE(classify({APlus, AMinus, D1H, D2V}));
    EXPECT_TRUE(classify({AMinus, DMinus, D1V, D2H}));
    EXPECT_TRUE(classify({AMinus, DPlus, D2H, D2V}));
    EXPECT_EQ(classify_bsa({D1H, D1V, D2H}), BellOutcome::Reject);
}

TEST(experiment, eight_fourfold_classes) {
    for (std::size_t k = 0; k < kNumClasses; k++) {
        EXPECT_EQ(FourfoldClass::from_index(k).index(), k);
    }
    int accepted = 0;
    for (int bits = 0; bits < 256; bits++) {
        accepted += classify(ClickPattern(static_cast<std::uint8_t>(bits))).has_value();
    }
    // 2 a-outputs x 2 d-outputs x 4 BSA pairs.
    EXPECT_EQ(accepted, 16);
}

TEST(experiment, ideal_circuit_is_unitary) {
    EXPECT_LE(assemble_circuit(ExperimentConfig{}).isometry_error(), 1e-10);
    ExperimentConfig c;
    c.phi_a = 12;
    c.phi_d = -40;
    c.overlap = 0.3;
    c.efficiency = 0.4;
    c.misalignment_deg = 3;
    EXPECT_LE(assemble_circuit(c).isometry_error(), 1e-10);
}

TEST(experiment, antisymmetric_input_antibunches) {
    auto circuit = assemble_circuit(ExperimentConfig{});
    auto out = apply_mode_map(bell_pair(Path::B, Path::C, BellState::PsiMinus), circuit);
    for (const auto &[occ, amp] : out.terms()) {
        int arm1 = 0;
        int arm2 = 0;
        for (auto q : occ.quanta()) {
            arm1 += q.path == Path::D1H || q.path == Path::D1V;
            arm2 += q.path == Path::D2H || q.path == Path::D2V;
        }
        EXPECT_EQ(arm1, 1);
        EXPECT_EQ(arm2, 1);
    }
    for (auto phi : {BellState::PhiPlus, BellState::PhiMinus}) {
        auto bunched = apply_mode_map(bell_pair(Path::B, Path::C, phi), circuit);
        for (const auto &[occ, amp] : bunched.terms()) {
            ASSERT_EQ(occ.entries().size(), 1u) << occ.str();
            EXPECT_EQ(occ.entries()[0].second, 2);
        }
    }
}

TEST(experiment, first_order_pair_never_reaches_d) {
    auto pair = normalize(bell_pair(Path::A, Path::B, BellState::PsiMinus));
    auto dist = detection_probabilities(ExperimentConfig{}, pair);
    for (int bits = 0; bits < 256; bits++) {
        ClickPattern p(static_cast<std::uint8_t>(bits));
        if (p.contains(DPlus) || p.contains(DMinus)) {
            EXPECT_EQ(dist[p], 0.0);
        }
    }
    EXPECT_NEAR(dist.total(), 1.0, 1e-12);
}

TEST(experiment, pattern_probability_matches_oracle) {
    ExperimentConfig c;
    c.phi_a = 45;
    c.phi_d = 45;
    auto dist = detection_probabilities(c);
    auto brute = oracle::pattern_probabilities(to_oracle(c), oracle::source_monomials());
    ClickPattern p{APlus, DPlus, D1H, D2V};
    EXPECT_NEAR(dist[p], brute[p.bits()], 1e-12);
    EXPECT_NEAR(dist.total(), 1.0, 1e-9);
}

TEST(experiment, ideal_equal_angles_perfectly_anticorrelated) {
    auto table = exact_counts(ExperimentConfig{}, {{45, 45}});
    EXPECT_NEAR(table.count(0, {BellOutcome::PsiMinus, Sign::Plus, Sign::Plus}), 0, 1e-9);
    EXPECT_NEAR(table.count(0, {BellOutcome::PsiMinus, Sign::Minus, Sign::Minus}), 0, 1e-9);
    EXPECT_NEAR(correlate(table, 0, BellOutcome::PsiMinus).E, -1, 1e-9);
}

TEST(experiment, both_bell_classes_equally_likely) {
    auto table = exact_counts(ExperimentConfig{}, {{0, 0}, {10, 80}, {45, 22.5}, {-30, 15}});
    for (std::size_t s = 0; s < table.settings.size(); s++) {
        double minus = table.coincidences(s, BellOutcome::PsiMinus).total();
        double plus = table.coincidences(s, BellOutcome::PsiPlus).total();
        EXPECT_NEAR(minus, plus, 1e-9);
        EXPECT_NEAR(minus, 0.1, 1e-9);
    }
}

TEST(experiment, distinguishable_photons_lose_correlation) {
    ExperimentConfig c;
    c.overlap = 0;
    auto table = exact_counts(c, {{45, 45}});
    EXPECT_NEAR(correlate(table, 0, BellOutcome::PsiMinus).E, 0, 1e-9);
    EXPECT_NEAR(correlate(table, 0, BellOutcome::PsiPlus).E, 0, 1e-9);
}

TEST(experiment, double_pairs_rejected_by_fourfold_logic) {
    for (auto terms : {kDoublePairAB, kDoublePairCD}) {
        auto dist = detection_probabilities(ExperimentConfig{}, build_source_state(1.0, terms));
        double accepted = 0;
        for (int bits = 0; bits < 256; bits++) {
            if (classify(ClickPattern(static_cast<std::uint8_t>(bits)))) {
                accepted += dist.values()[bits];
            }
        }
        EXPECT_NEAR(accepted, 0, 1e-9);
    }
}

TEST(experiment, bsa_identification_matrix) {
    ExperimentConfig c;
    auto psi_m = identify_bell_input(c, BellState::PsiMinus);
    auto psi_p = identify_bell_input(c, BellState::PsiPlus);
    EXPECT_NEAR(psi_m.psi_minus, 1, 1e-9);
    EXPECT_NEAR(psi_m.psi_plus, 0, 1e-9);
    EXPECT_NEAR(psi_p.psi_minus, 0, 1e-9);
    EXPECT_NEAR(psi_p.psi_plus, 1, 1e-9);
    for (auto phi : {BellState::PhiPlus, BellState::PhiMinus}) {
        auto r = identify_bell_input(c, phi);
        EXPECT_NEAR(r.psi_minus, 0, 1e-9);
        EXPECT_NEAR(r.psi_plus, 0, 1e-9);
    }
}

TEST(experiment, bsa_identification_matches_oracle) {
    ExperimentConfig c;
    c.overlap = 0.7;
    c.misalignment_deg = 6;
    for (int k = 0; k < 4; k++) {
        auto brute = oracle::pattern_probabilities(to_oracle(c), oracle::bell_monomials(k));
        double minus = 0;
        double plus = 0;
        for (int bits = 0; bits < 256; bits++) {
            auto b = classify_bsa(ClickPattern(static_cast<std::uint8_t>(bits)));
            if (b == BellOutcome::PsiMinus) {
                minus += brute[bits];
            } else if (b == BellOutcome::PsiPlus) {
                plus += brute[bits];
            }
        }
        auto r = identify_bell_input(c, kBellStates[k]);
        EXPECT_NEAR(r.psi_minus, minus, 1e-12);
        EXPECT_NEAR(r.psi_plus, plus, 1e-12);
    }
}

TEST(experiment, double_pair_audit) {
    // Hand derivation: A^2|0> leaves b with HH, HV or VV, each with weight 1/3.
    // Bare BS: two photons in one port split with probability 1/2 for every
    // polarization pair. PBS analyzer: only HV yields an H/V detector pair,
    // and then always, so acceptance 1/3. Genuine AC term: bare analyzer sees
    // only Psi- (1/4), PBS analyzer sees Psi- and Psi+ (1/2).
    auto audit = double_pair_audit(ExperimentConfig{});
    EXPECT_NEAR(audit.bare_acceptance, 0.5, 1e-12);
    EXPECT_NEAR(audit.pbs_acceptance, 1.0 / 3, 1e-12);
    EXPECT_NEAR(audit.ratio, 2.0 / 3, 1e-12);
    EXPECT_NEAR(audit.bare_signal, 0.25, 1e-12);
    EXPECT_NEAR(audit.pbs_signal, 0.5, 1e-12);
    EXPECT_NEAR(audit.false_to_signal_ratio, 1.0 / 3, 1e-12);
    EXPECT_TRUE(audit.flagged);
}

TEST(experiment, config_validation) {
    ExperimentConfig c;
    c.overlap = 1.5;
    EXPECT_THROW(c.validate(), InvalidParameterError);
    c = {};
    c.efficiency = 0;
    EXPECT_THROW(c.validate(), InvalidParameterError);
    c = {};
    c.events = 0;
    EXPECT_THROW(c.validate(), InvalidParameterError);
    c = {};
    c.max_photons = 3;
    EXPECT_THROW(c.validate(), InvalidParameterError);
    EXPECT_THROW(exact_counts(ExperimentConfig{}, {}), InvalidSettingsError);
}

TEST(experiment_property, matches_oracle_on_random_configs) {
    std::mt19937_64 rng(31);
    std::uniform_real_distribution<double> angle(-90, 90);
    std::uniform_real_distribution<double> unit(0, 1);
    for (int trial = 0; trial < 25; trial++) {
        ExperimentConfig c;
        c.phi_a = angle(rng);
        c.phi_d = angle(rng);
        c.overlap = unit(rng);
        c.efficiency = 0.2 + 0.8 * unit(rng);
        c.misalignment_deg = 10 * unit(rng);
        auto table = exact_counts(c, {{c.phi_a, c.phi_d}});
        auto brute = oracle::class_probabilities(to_oracle(c));
        for (std::size_t k = 0; k < kNumClasses; k++) {
            ASSERT_NEAR(table.counts[0][k], brute[k], 1e-12) << "trial " << trial << " class " << k;
        }
        double total = table.rejected[0];
        for (double p : table.counts[0]) {
            total += p;
        }
        ASSERT_NEAR(total, 1.0, 1e-9);
    }
}

TEST(experiment_property, conditional_correlation_is_efficiency_independent) {
    for (double eta : {1.0, 0.8, 0.35, 0.05}) {
        ExperimentConfig c;
        c.phi_a = 10;
        c.phi_d = 55;
        c.overlap = 0.8;
        c.efficiency = eta;
        auto table = exact_counts(c, {{c.phi_a, c.phi_d}});
        c.efficiency = 1;
        double reference = oracle::correlation(to_oracle(c), 0);
        EXPECT_NEAR(correlate(table, 0, BellOutcome::PsiMinus).E, reference, 1e-9) << "eta " << eta;
        // Accepted four-folds scale as eta^4.
        EXPECT_NEAR(table.coincidences(0, BellOutcome::PsiMinus).total(), 0.1 * std::pow(eta, 4), 1e-9);
    }
}

TEST(experiment_property, correlation_magnitude_monotone_in_overlap) {
    for (auto bell : {BellOutcome::PsiMinus, BellOutcome::PsiPlus}) {
        double last = -1;
        for (int k = 0; k <= 10; k++) {
            ExperimentConfig c;
            c.phi_a = c.phi_d = 45;
            c.overlap = k / 10.0;
            double e = std::abs(exact_correlation(c, bell));
            EXPECT_GE(e, last - 1e-12);
            last = e;
            if (k == 0) {
                EXPECT_NEAR(e, 0, 1e-9);
            }
            if (k == 10) {
                EXPECT_NEAR(e, 1, 1e-9);
            }
        }
    }
}

TEST(sampling, deterministic_given_seed) {
    ExperimentConfig c;
    c.seed = 7;
    c.events = 5000;
    auto settings = chsh_settings(0, 22.5, 45, 67.5);
    auto x = sample_counts(c, settings);
    auto y = sample_counts(c, settings);
    EXPECT_EQ(x.counts, y.counts);
    EXPECT_EQ(x.rejected, y.rejected);
    c.seed = 8;
    EXPECT_NE(sample_counts(c, settings).counts, x.counts);

    // Each setting draws from its own keyed stream.
    EXPECT_NE(substream_seed(7, 0), substream_seed(7, 1));
    EXPECT_EQ(substream_seed(7, 3), substream_seed(7, 3));
    auto exact = exact_counts(c, settings);
    auto sampled = sample_from_probabilities(exact, 9, 5000);
    for (std::size_t s = 0; s < settings.size(); s++) {
        double total = sampled.rejected[s];
        for (double n : sampled.counts[s]) {
            total += n;
        }
        EXPECT_EQ(total, 5000);
    }
}

TEST(sampling, frequencies_match_probabilities) {
    auto exact = exact_counts(ExperimentConfig{}, chsh_settings(0, 22.5, 45, 67.5));
    const std::int64_t n = 1'000'000;
    auto sampled = sample_from_probabilities(exact, 2024, n);
    for (std::size_t s = 0; s < exact.settings.size(); s++) {
        for (std::size_t k = 0; k < kNumClasses; k++) {
            double p = exact.counts[s][k];
            double se = std::sqrt(p * (1 - p) / n);
            EXPECT_LE(std::abs(sampled.counts[s][k] / n - p), 5 * se) << "setting " << s << " class " << k;
        }
    }
}

TEST(sampling, error_bars_at_sixty_five_events) {
    // ~65 accepted four-folds per setting: 0.0065/s over 10^4 s. With a 0.2
    // acceptance that is 325 trials, ~32 events per Bell class.
    auto exact = exact_counts(ExperimentConfig{}, chsh_settings(0, 22.5, 45, 67.5));
    const std::int64_t trials = 325;
    double sum = 0;
    int n = 0;
    for (std::uint64_t seed = 0; seed < 400; seed++) {
        auto table = sample_from_probabilities(exact, seed, trials);
        for (std::size_t s = 0; s < table.settings.size(); s++) {
            for (auto bell : {BellOutcome::PsiMinus, BellOutcome::PsiPlus}) {
                sum += correlate(table, s, bell).sigma_E;
                n++;
            }
        }
    }
    double mean = sum / n;
    EXPECT_GE(mean, 0.10);
    EXPECT_LE(mean, 0.13);
}

TEST(sampling, rejects_bad_input) {
    auto exact = exact_counts(ExperimentConfig{}, {{0, 0}});
    EXPECT_THROW(sample_from_probabilities(exact, 1, 0), InvalidParameterError);
    auto sampled = sample_from_probabilities(exact, 1, 10);
    EXPECT_THROW(sample_from_probabilities(sampled, 1, 10), InvalidParameterError);
}
