// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/weierstrass.hpp>

#include <algorithm>
#include <vector>

namespace tatekit
{

namespace
{

constexpr int exact_round_cap = 64;

void require_t1(const TateElem &f, const char *what)
{
    if (f.arity() != 1) {
        fail(ErrorKind::math_domain, "arity-mismatch", std::string(what) + " must have arity 1");
    }
}

TateElem exact_part(const TateElem &f)
{
    return TateElem(f.characteristic(), f.arity(), f.terms());
}

/// Splits off every coefficient term of norm <= level; returns the kept part
/// and the largest dropped norm.
std::pair<TateElem, Norm> split_small(const TateElem &f, const Norm &level)
{
    Norm dropped = Norm::zero();
    TateElem::Terms kept;
    for (const auto &[nu, c] : f.terms()) {
        std::vector<LaurentElem::Term> big;
        for (const auto &t : c.terms()) {
            auto n = Norm::from_exponent(t.exponent);
            if (n > level) {
                big.push_back(t);
            } else {
                dropped = max(dropped, n);
            }
        }
        if (!big.empty()) {
            kept.emplace(nu, LaurentElem(f.characteristic(), std::move(big)));
        }
    }
    return {TateElem(f.characteristic(), f.arity(), std::move(kept)), dropped};
}

LaurentElem leading_monomial_inverse(const LaurentElem &c)
{
    const auto &lead = c.terms().front();
    return LaurentElem::monomial(c.characteristic(), fp_inv(lead.coeff, c.characteristic()), -lead.exponent);
}

} // namespace

std::pair<TateElem, TateElem> divide_by_monic(const TateElem &f, const TateElem &monic, std::uint32_t s)
{
    const auto p = f.characteristic();
    std::uint32_t deg = 0;
    for (const auto &[nu, c] : f.terms()) {
        deg = std::max(deg, nu[1]);
    }
    std::vector<LaurentElem> rem(deg + 1, LaurentElem(p));
    for (const auto &[nu, c] : f.terms()) {
        rem[nu[1]] = c;
    }
    std::vector<LaurentElem> divisor(s + 1, LaurentElem(p));
    for (const auto &[nu, c] : monic.terms()) {
        divisor[nu[1]] = c;
    }
    TateElem::Terms quotient;
    for (std::uint32_t d = deg + 1; d-- > s;) {
        const LaurentElem coef = rem[d];
        if (coef.is_exact_zero()) {
            continue;
        }
        quotient.emplace(MultiIndex({d - s}), coef);
        for (std::uint32_t i = 0; i <= s; ++i) {
            if (!divisor[i].is_exact_zero()) {
                rem[d - s + i] = sub(rem[d - s + i], mul(coef, divisor[i]));
            }
        }
    }
    TateElem::Terms remainder;
    for (std::uint32_t d = 0; d < std::min<std::uint32_t>(s, deg + 1); ++d) {
        if (!rem[d].is_exact_zero()) {
            remainder.emplace(MultiIndex({d}), rem[d]);
        }
    }
    return {TateElem(p, 1, std::move(quotient)), TateElem(p, 1, std::move(remainder))};
}

DivisionResult w_divide(const TateElem &f, const TateElem &g, const Norm &target_slack)
{
    require_t1(f, "dividend");
    require_t1(g, "divisor");
    if (f.characteristic() != g.characteristic()) {
        fail(ErrorKind::math_domain, "backend-mismatch", "characteristics differ");
    }
    if (g.terms().empty()) {
        fail(ErrorKind::math_domain, "zero-divisor", "division by zero");
    }
    if (!g.is_exact()) {
        fail(ErrorKind::precision, "inexact-divisor", "divisor must be exact");
    }
    const auto p = f.characteristic();
    const std::uint32_t s = euclid_degree(g);
    const LaurentElem scale_by = leading_monomial_inverse(g.coefficient(MultiIndex({s})));
    const TateElem g_scaled = scale(g, scale_by);

    TateElem::Terms monic_terms{{MultiIndex({s}), LaurentElem::constant(p, 1)}};
    for (const auto &[nu, c] : g_scaled.terms()) {
        if (nu[1] < s) {
            monic_terms.emplace(nu, c);
        }
    }
    const TateElem monic(p, 1, std::move(monic_terms));
    const TateElem tail = sub(g_scaled, monic);
    const Norm tail_norm = explicit_norm(tail);

    Norm residual = f.slack();
    TateElem current = exact_part(f);
    TateElem quotient(p, 1);
    TateElem remainder(p, 1);

    int cap = exact_round_cap;
    if (tail_norm.is_zero()) {
        cap = 1;
    } else if (!target_slack.is_zero() && !current.terms().empty()) {
        const Rational gap = target_slack.exponent() - explicit_norm(current).exponent();
        const Rational drop = tail_norm.exponent();
        cap = static_cast<int>(std::max<std::int64_t>(0, ceil_of(gap / drop))) + 8;
    }

    int rounds = 0;
    while (!current.terms().empty()) {
        if (!target_slack.is_zero() && !(explicit_norm(current) > target_slack)) {
            residual = max(residual, explicit_norm(current));
            break;
        }
        if (rounds == cap) {
            fail(ErrorKind::search_exhausted, "nonconvergence-at-bound",
                 "division did not reach the target slack within " + std::to_string(cap) + " rounds");
        }
        ++rounds;
        auto [q, r] = divide_by_monic(current, monic, s);
        quotient = add(quotient, q);
        remainder = add(remainder, r);
        current = negate(mul(q, tail));
        if (!target_slack.is_zero()) {
            auto [kept, dropped] = split_small(current, target_slack);
            residual = max(residual, dropped);
            current = std::move(kept);
        }
    }
    return DivisionResult{scale(quotient, scale_by), remainder, residual};
}

TateElem w_gcd(const TateElem &f, const TateElem &g, const Norm &target_slack)
{
    require_t1(f, "first argument");
    require_t1(g, "second argument");
    auto significant = [&](const TateElem &x) {
        return target_slack.is_zero() ? exact_part(x) : split_small(exact_part(x), target_slack).first;
    };
    TateElem a = significant(f);
    TateElem b = significant(g);
    if (a.terms().empty() && b.terms().empty()) {
        fail(ErrorKind::math_domain, "zero-input", "gcd of two zeros");
    }
    while (!b.terms().empty()) {
        auto res = w_divide(a, b, target_slack);
        a = std::move(b);
        b = significant(res.remainder);
    }
    const std::uint32_t d = euclid_degree(a);
    if (d == 0) {
        return TateElem::one(a.characteristic(), 1);
    }
    return scale(a, leading_monomial_inverse(a.coefficient(MultiIndex({d}))));
}

} // namespace tatekit
