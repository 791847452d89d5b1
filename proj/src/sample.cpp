// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/sample.hpp>

namespace tatekit::sample
{

namespace
{

std::int64_t uniform(Rng &rng, std::int64_t lo, std::int64_t hi)
{
    return std::uniform_int_distribution<std::int64_t>(lo, hi)(rng);
}

} // namespace

LaurentElem laurent(Rng &rng, std::uint32_t p, int max_terms, std::int64_t lo, std::int64_t hi, int level)
{
    std::int64_t den = 1;
    for (int i = 0; i < level; ++i) {
        den *= p;
    }
    std::vector<LaurentElem::Term> terms;
    const auto count = uniform(rng, 0, max_terms);
    for (std::int64_t i = 0; i < count; ++i) {
        terms.push_back({Rational(uniform(rng, lo * den, hi * den), den),
                         static_cast<std::uint32_t>(uniform(rng, 1, p - 1))});
    }
    return LaurentElem(p, std::move(terms));
}

LaurentElem nonzero_laurent(Rng &rng, std::uint32_t p, int max_terms, std::int64_t lo, std::int64_t hi, int level)
{
    for (;;) {
        auto x = laurent(rng, p, max_terms, lo, hi, level);
        if (!x.is_exact_zero()) {
            return x;
        }
    }
}

TateElem tate(Rng &rng, std::uint32_t p, int arity, int max_terms, std::uint32_t max_degree, int coeff_terms,
              std::int64_t lo, std::int64_t hi, int level)
{
    TateElem f(p, arity);
    const auto count = uniform(rng, 0, max_terms);
    for (std::int64_t i = 0; i < count; ++i) {
        std::vector<std::uint32_t> e(static_cast<std::size_t>(arity));
        for (auto &x : e) {
            x = static_cast<std::uint32_t>(uniform(rng, 0, max_degree));
        }
        f = add(f, TateElem::monomial(nonzero_laurent(rng, p, coeff_terms, lo, hi, level), MultiIndex(e)));
    }
    return f;
}

HahnSumElem hahn(Rng &rng, std::uint32_t p, int gen_count, int max_terms, std::int64_t bound)
{
    std::vector<HahnSumElem::Term> terms;
    const auto count = uniform(rng, 0, max_terms);
    for (std::int64_t i = 0; i < count; ++i) {
        ExponentVector e;
        for (int g = 1; g <= gen_count; ++g) {
            e = e + ExponentVector::generator(g, uniform(rng, -bound, bound));
        }
        terms.push_back({e, static_cast<std::uint32_t>(uniform(rng, 1, p - 1))});
    }
    return HahnSumElem(p, std::move(terms));
}

} // namespace tatekit::sample
