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

#ifndef SWAPSIM_FOCK_H
#define SWAPSIM_FOCK_H

#include <Eigen/Dense>
#include <array>
#include <compare>
#include <complex>
#include <cstddef>
#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace swapsim {

using Complex = std::complex<double>;

/// Spatial paths of the entanglement-swapping setup.
///
/// Source paths a, b, c, d; the two beam-splitter outputs of the Bell-state
/// analyzer; the eight detector paths; and one loss path per detector path.
enum class Path : std::uint8_t {
    A,
    B,
    C,
    D,
    Bsa1,
    Bsa2,
    APlus,
    AMinus,
    DPlus,
    DMinus,
    D1H,
    D1V,
    D2H,
    D2V,
    LossAPlus,
    LossAMinus,
    LossDPlus,
    LossDMinus,
    LossD1H,
    LossD1V,
    LossD2H,
    LossD2V,
};

inline constexpr std::size_t kNumPaths = 22;

enum class Polarization : std::uint8_t { H, V };

/// One bosonic mode: (path, polarization, temporal bin).
///
/// The defaulted ordering compares path, then polarization, then temporal bin,
/// which is also the order of `index()`.
struct ModeLabel {
    Path path = Path::A;
    Polarization pol = Polarization::H;
    std::uint8_t temporal = 0;

    auto operator<=>(const ModeLabel &) const = default;

    constexpr std::size_t index() const {
        return (static_cast<std::size_t>(path) * 2 + static_cast<std::size_t>(pol)) * 2 + temporal;
    }
    static ModeLabel from_index(std::size_t index);
    std::string str() const;
};

inline constexpr std::size_t kNumModes = kNumPaths * 4;

std::string path_name(Path path);

/// Photon-number record in canonical form.
///
/// Stored as the sorted multiset of occupied modes, so two occupations with
/// the same counts are identical element by element.
class Occupation {
   public:
    Occupation() = default;
    static Occupation from_counts(const std::vector<std::pair<ModeLabel, int>> &counts);

    int count(ModeLabel mode) const;
    int total() const {
        return static_cast<int>(quanta_.size());
    }
    bool empty() const {
        return quanta_.empty();
    }
    /// (mode, count) pairs in mode order, zero counts omitted.
    std::vector<std::pair<ModeLabel, int>> entries() const;
    /// One entry per photon, sorted.
    const std::vector<ModeLabel> &quanta() const {
        return quanta_;
    }
    Occupation with_added(ModeLabel mode) const;
    /// Product of n! over occupied modes.
    double factorial_product() const;

    auto operator<=>(const Occupation &) const = default;
    std::string str() const;

   private:
    std::vector<ModeLabel> quanta_;
};

struct FockLimits {
    int max_photons = 4;
    double prune_threshold = 1e-12;
};

/// Sparse pure state over Fock occupations.
///
/// Terms are kept sorted by occupation with duplicates merged and
/// amplitudes below `limits().prune_threshold` dropped. Values are immutable;
/// every operation returns a new vector.
class FockVector {
   public:
    using Term = std::pair<Occupation, Complex>;

    explicit FockVector(FockLimits limits = {});
    static FockVector from_terms(std::vector<Term> terms, FockLimits limits = {});

    const std::vector<Term> &terms() const {
        return terms_;
    }
    const FockLimits &limits() const {
        return limits_;
    }
    std::size_t size() const {
        return terms_.size();
    }
    bool empty() const {
        return terms_.empty();
    }
    Complex amplitude(const Occupation &occupation) const;
    /// Sum of squared magnitudes.
    double norm() const;
    int max_photon_number() const;

    bool operator==(const FockVector &other) const {
        return terms_ == other.terms_;
    }

   private:
    std::vector<Term> terms_;
    FockLimits limits_;
};

FockVector vacuum(FockLimits limits = {});
FockVector apply_creation(const FockVector &state, ModeLabel mode);
/// <s1|s2>, antilinear in the first argument.
Complex inner_product(const FockVector &s1, const FockVector &s2);
FockVector normalize(const FockVector &state);

FockVector operator+(const FockVector &lhs, const FockVector &rhs);
FockVector operator-(const FockVector &lhs, const FockVector &rhs);
FockVector operator*(Complex scale, const FockVector &state);

/// Linear substitution on creation operators.
///
/// `matrix()(r, k)` is the coefficient of `outputs()[r]` in the image of
/// `inputs()[k]`. Modes that are not inputs map to themselves. Construction
/// fails with InvalidElementError unless the columns are orthonormal.
class ModeMap {
   public:
    static constexpr double kIsometryTolerance = 1e-10;

    ModeMap() = default;
    ModeMap(
        std::vector<ModeLabel> inputs,
        std::vector<ModeLabel> outputs,
        Eigen::MatrixXcd matrix,
        double tolerance = kIsometryTolerance);

    const std::vector<ModeLabel> &inputs() const {
        return inputs_;
    }
    const std::vector<ModeLabel> &outputs() const {
        return outputs_;
    }
    const Eigen::MatrixXcd &matrix() const {
        return matrix_;
    }

    /// max |(U^dagger U - I)_{jk}|.
    double isometry_error() const;
    Complex coefficient(ModeLabel out, ModeLabel in) const;
    /// Image of `in` as (output mode, coefficient) pairs with non-negligible coefficients.
    std::vector<std::pair<ModeLabel, Complex>> image(ModeLabel in) const;

   private:
    std::vector<ModeLabel> inputs_;
    std::vector<ModeLabel> outputs_;
    Eigen::MatrixXcd matrix_;
};

/// outer ∘ inner: apply `inner` first. The result lists every mode touched by
/// either map and is validated like any other ModeMap.
ModeMap compose(const ModeMap &outer, const ModeMap &inner);

/// Inverse of a square map whose input and output mode sets coincide.
ModeMap adjoint(const ModeMap &map);

/// Composes a sequence of maps applied in order (front first).
ModeMap compose_all(const std::vector<ModeMap> &stages);

FockVector apply_mode_map(const FockVector &state, const ModeMap &map);

}  // namespace swapsim

#endif  // SWAPSIM_FOCK_H
