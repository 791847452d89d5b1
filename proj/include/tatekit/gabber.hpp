// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_GABBER_HPP
#define TATEKIT_GABBER_HPP

#include <cstdint>
#include <optional>
#include <set>
#include <vector>

#include <tatekit/field.hpp>
#include <tatekit/gamma.hpp>

namespace tatekit
{

using HahnNorm = NormValue<ExponentVector>;

/// Bounded coset representatives s_1..s_count of e_i mod p*Gamma.
struct GabberContext {
    std::uint32_t p = 2;
    std::vector<ExponentVector> reps;

    int generator_count() const noexcept { return static_cast<int>(reps.size()); }
};

GabberContext make_gabber_context(std::uint32_t p, int count = 8);

/// Finite Hahn sum together with the cosets of Gamma / p Gamma its exponents meet.
struct MElem {
    HahnSumElem value;
    std::set<CosetSignature> signatures;
};

std::set<CosetSignature> signature_set(const HahnSumElem &x);
MElem make_melem(HahnSumElem x);

/// f_N = sum_{i <= N} t^{-s_i}. Throws rep-shortage if N exceeds the context.
HahnSumElem witness_truncation(const GabberContext &ctx, int n);

/// Least i <= N whose coset (that of -s_i) does not occur among the exponents
/// of g; nullopt when all N occur.
std::optional<int> missing_coset_index(const GabberContext &ctx, const HahnSumElem &g, int n);

struct DistanceReport {
    int i_g = 0;
    /// Norm exponent of the bound e^{s_{i_g}}, i.e. -s_{i_g}.
    ExponentVector bound_exp;
    /// Norm exponent v of f_N - g (|f_N - g| = e^{-v}).
    ExponentVector actual_exp;
    bool meets_bound = false;
    bool exceeds_one = false;
    bool pass = false;
};

/// Certifies |f_N - g| >= e^{s_{i_g}} and |f_N - g| > 1 with exact Gamma
/// comparisons. Throws precondition when g meets every one of the N cosets.
DistanceReport distance_lower_bound_check(const GabberContext &ctx, const HahnSumElem &g, int n);

/// t^gamma, norm e^{-gamma}.
MElem value_group_witness(const GabberContext &ctx, const ExponentVector &gamma);

/// The constant c, whose residue is c mod p.
MElem residue_witness(const GabberContext &ctx, std::int64_t c);

} // namespace tatekit

#endif
