// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/gabber.hpp>

namespace tatekit
{

GabberContext make_gabber_context(std::uint32_t p, int count)
{
    return GabberContext{p, bounded_coset_reps(p, count)};
}

std::set<CosetSignature> signature_set(const HahnSumElem &x)
{
    std::set<CosetSignature> out;
    for (const auto &t : x.terms()) {
        out.insert(gamma_mod_p(t.exponent, x.characteristic()));
    }
    return out;
}

MElem make_melem(HahnSumElem x)
{
    auto sigs = signature_set(x);
    return MElem{std::move(x), std::move(sigs)};
}

HahnSumElem witness_truncation(const GabberContext &ctx, int n)
{
    if (n < 0 || n > ctx.generator_count()) {
        fail(ErrorKind::math_domain, "rep-shortage",
             "need " + std::to_string(n) + " representatives, context has " + std::to_string(ctx.generator_count()));
    }
    std::vector<HahnSumElem::Term> terms;
    for (int i = 0; i < n; ++i) {
        terms.push_back({-ctx.reps[static_cast<std::size_t>(i)], 1});
    }
    return HahnSumElem(ctx.p, std::move(terms));
}

std::optional<int> missing_coset_index(const GabberContext &ctx, const HahnSumElem &g, int n)
{
    if (n > ctx.generator_count()) {
        fail(ErrorKind::math_domain, "rep-shortage", "N exceeds the context");
    }
    const auto present = signature_set(g);
    for (int i = 1; i <= n; ++i) {
        if (!present.contains(gamma_mod_p(-ctx.reps[static_cast<std::size_t>(i - 1)], ctx.p))) {
            return i;
        }
    }
    return std::nullopt;
}

DistanceReport distance_lower_bound_check(const GabberContext &ctx, const HahnSumElem &g, int n)
{
    if (g.characteristic() != ctx.p) {
        fail(ErrorKind::math_domain, "backend-mismatch", "characteristics differ");
    }
    const auto missing = missing_coset_index(ctx, g, n);
    if (!missing) {
        fail(ErrorKind::math_domain, "precondition", "g meets all " + std::to_string(n) + " cosets");
    }
    DistanceReport r;
    r.i_g = *missing;
    r.bound_exp = -ctx.reps[static_cast<std::size_t>(r.i_g - 1)];
    const HahnSumElem diff = sub(witness_truncation(ctx, n), g);
    const auto v = valuation(diff);
    if (v.kind != Valuation<ExponentVector>::Kind::exact) {
        return r;
    }
    r.actual_exp = v.value;
    r.meets_bound = gamma_compare(r.actual_exp, r.bound_exp) != std::strong_ordering::greater;
    r.exceeds_one = gamma_sign(r.actual_exp) == std::strong_ordering::less;
    r.pass = r.meets_bound && r.exceeds_one;
    return r;
}

MElem value_group_witness(const GabberContext &ctx, const ExponentVector &gamma)
{
    return make_melem(HahnSumElem::monomial(ctx.p, 1, gamma));
}

MElem residue_witness(const GabberContext &ctx, std::int64_t c)
{
    return make_melem(HahnSumElem::constant(ctx.p, c));
}

} // namespace tatekit
