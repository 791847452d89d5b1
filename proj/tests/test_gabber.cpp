// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include <tatekit/gabber.hpp>
#include <tatekit/parse.hpp>

#include "oracle.hpp"

using namespace tatekit;

namespace
{

const GabberContext &ctx2()
{
    static const GabberContext ctx = make_gabber_context(2, 8);
    return ctx;
}

HahnSumElem mono(const ExponentVector &e, std::uint32_t p = 2, std::int64_t c = 1)
{
    return HahnSumElem::monomial(p, c, e);
}

const ExponentVector &s(int i)
{
    return ctx2().reps[static_cast<std::size_t>(i - 1)];
}

} // namespace

TEST_CASE("context")
{
    CHECK(ctx2().reps.size() == 8);
    for (int i = 1; i <= 8; ++i) {
        CHECK(s(i) == ExponentVector::generator(i));
    }
}

TEST_CASE("witness truncation")
{
    CHECK(witness_truncation(ctx2(), 1) == mono(-s(1)));
    CHECK(witness_truncation(ctx2(), 3) == add(add(mono(-s(1)), mono(-s(2))), mono(-s(3))));
    CHECK(witness_truncation(ctx2(), 0).is_exact_zero());
    CHECK_THROWS_WITH_AS(witness_truncation(ctx2(), 9), doctest::Contains("rep-shortage"), Error);
    // Support is strictly increasing in the real order.
    const auto f = witness_truncation(ctx2(), 8);
    for (std::size_t i = 1; i < f.terms().size(); ++i) {
        CHECK(gamma_compare(f.terms()[i - 1].exponent, f.terms()[i].exponent) == std::strong_ordering::less);
    }
}

TEST_CASE("missing coset index")
{
    CHECK(missing_coset_index(ctx2(), HahnSumElem(2), 3) == 1);
    CHECK(missing_coset_index(ctx2(), mono(-s(1)), 3) == 2);
    const auto all = witness_truncation(ctx2(), 3);
    CHECK_FALSE(missing_coset_index(ctx2(), all, 3));
}

TEST_CASE("distance examples")
{
    auto r = distance_lower_bound_check(ctx2(), HahnSumElem(2), 3);
    CHECK(r.i_g == 1);
    CHECK(r.actual_exp == -s(1));
    CHECK(r.bound_exp == -s(1));
    CHECK(r.pass);

    r = distance_lower_bound_check(ctx2(), mono(-s(1)), 3);
    CHECK(r.i_g == 2);
    CHECK(r.actual_exp == -s(2));
    CHECK(r.pass);

    // gamma in the coset of -s_2 but different from it: -s_2 + 2 e_1.
    const auto gamma = -s(2) + ExponentVector::generator(1, 2);
    r = distance_lower_bound_check(ctx2(), add(mono(-s(1)), mono(gamma)), 3);
    CHECK(r.i_g == 3);
    CHECK(r.pass);
    // Strong triangle equality: the norm is the max over the surviving terms.
    CHECK(r.actual_exp == -s(2));

    CHECK_THROWS_WITH_AS(distance_lower_bound_check(ctx2(), witness_truncation(ctx2(), 3), 3),
                         doctest::Contains("precondition"), Error);
}

TEST_CASE("random distance checks")
{
    std::mt19937_64 rng(61);
    for (int k = 0; k < 300; ++k) {
        const int missing = static_cast<int>(rng() % 8) + 1;
        std::vector<HahnSumElem::Term> terms;
        const int count = 1 + static_cast<int>(rng() % 12);
        for (int j = 0; j < count; ++j) {
            int i = 1 + static_cast<int>(rng() % 8);
            if (i == missing) {
                continue;
            }
            ExponentVector e = -s(i);
            for (int g = 1; g <= 8; ++g) {
                e = e + ExponentVector::generator(g, 2 * (static_cast<std::int64_t>(rng() % 5) - 2) * (rng() % 3 == 0));
            }
            terms.push_back({e, 1});
        }
        const HahnSumElem g(2, std::move(terms));
        const auto r = distance_lower_bound_check(ctx2(), g, 8);
        CHECK(r.pass);
        CHECK(r.i_g <= missing);
        // Floating cross-check of the reported norm exponent.
        CHECK(oracle::gamma_value(r.actual_exp) <= oracle::gamma_value(r.bound_exp) + 1e-12L);
        CHECK(oracle::gamma_value(r.actual_exp) < 0);
    }
}

TEST_CASE("signature sets are closed under ring operations")
{
    std::mt19937_64 rng(62);
    for (int k = 0; k < 200; ++k) {
        const auto g = parse_hahn(to_string(mono(ExponentVector::generator(1 + k % 3, k % 5 - 2))), 3);
        std::vector<HahnSumElem::Term> a, b;
        for (int j = 0; j < 3; ++j) {
            a.push_back({ExponentVector::generator(1 + static_cast<int>(rng() % 3), static_cast<std::int64_t>(rng() % 7) - 3), 1});
            b.push_back({ExponentVector::generator(1 + static_cast<int>(rng() % 3), static_cast<std::int64_t>(rng() % 7) - 3), 2});
        }
        const HahnSumElem x(3, a);
        const HahnSumElem y(3, b);
        const auto sx = signature_set(x);
        const auto sy = signature_set(y);
        for (const auto &sig : signature_set(add(x, y))) {
            CHECK((sx.contains(sig) || sy.contains(sig)));
        }
        std::set<CosetSignature> sums;
        for (const auto &tx : x.terms()) {
            for (const auto &ty : y.terms()) {
                sums.insert(gamma_mod_p(tx.exponent + ty.exponent, 3));
            }
        }
        for (const auto &sig : signature_set(mul(x, y))) {
            CHECK(sums.contains(sig));
        }
        for (const auto &sig : signature_set(frobenius(x))) {
            CHECK(sig.is_zero());
        }
        CHECK(signature_set(g).size() == 1);
    }
}

TEST_CASE("immediate extension witnesses")
{
    const auto w = value_group_witness(ctx2(), ExponentVector::generator(1));
    CHECK(norm(w.value).value == NormValue<ExponentVector>::from_exponent(ExponentVector::generator(1)));
    CHECK(value_group_witness(ctx2(), ExponentVector()).value == HahnSumElem::constant(2, 1));
    const auto pe = value_group_witness(ctx2(), ExponentVector::generator(1, 2));
    CHECK(pe.signatures.size() == 1);
    CHECK(pe.signatures.begin()->is_zero());
    CHECK(residue(residue_witness(ctx2(), 1).value) == 1);
    CHECK(residue_witness(ctx2(), 0).value.is_exact_zero());
    const auto ctx3 = make_gabber_context(3, 2);
    CHECK(residue(residue_witness(ctx3, 2).value) == 2);
}
