// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include "commands.hpp"

#include <functional>

#include <tatekit/frobenius.hpp>
#include <tatekit/gabber.hpp>
#include <tatekit/sample.hpp>
#include <tatekit/weierstrass.hpp>

namespace tatekit::cli
{

namespace
{

using sample::Rng;

struct Tally {
    int passed = 0;
    int total = 0;
};

Tally run_suite(int samples, const std::function<bool(int)> &check)
{
    Tally t;
    for (int i = 0; i < samples; ++i) {
        ++t.total;
        try {
            t.passed += check(i) ? 1 : 0;
        } catch (const Error &) {
        }
    }
    return t;
}

std::uint32_t pick_prime(Rng &rng)
{
    static constexpr std::uint32_t primes[] = {2, 3, 5};
    return primes[rng() % 3];
}

TateElem nonzero_tate(Rng &rng, std::uint32_t p, int arity)
{
    for (;;) {
        auto f = sample::tate(rng, p, arity);
        if (!f.terms().empty()) {
            return f;
        }
    }
}

} // namespace

Report run_selftest(std::uint64_t seed, int samples, int &failures)
{
    Rng rng(seed);
    Report r;
    failures = 0;
    auto record = [&](const std::string &name, const Tally &t) {
        failures += t.total - t.passed;
        r.add(name, std::to_string(t.passed) + "/" + std::to_string(t.total));
    };
    r.add("seed", std::to_string(seed));

    record("gauss_multiplicative", run_suite(samples, [&](int i) {
               const auto p = pick_prime(rng);
               const int n = 1 + i % 2;
               const auto f = nonzero_tate(rng, p, n);
               const auto g = nonzero_tate(rng, p, n);
               return gauss_norm(mul(f, g)) == gauss_norm(f) * gauss_norm(g);
           }));

    record("strong_triangle", run_suite(samples, [&](int) {
               const auto p = pick_prime(rng);
               const auto x = sample::nonzero_laurent(rng, p);
               const auto y = sample::nonzero_laurent(rng, p);
               const auto nx = norm(x).value;
               const auto ny = norm(y).value;
               return nx == ny || norm(add(x, y)).value == max(nx, ny);
           }));

    record("frobenius_root", run_suite(samples, [&](int) {
               const auto p = pick_prime(rng);
               const auto x = sample::laurent(rng, p, 3, -2, 3, 1);
               return pth_root(frobenius(x)) == x;
           }));

    record("division_identity", run_suite(samples, [&](int) {
               const auto p = pick_prime(rng);
               const auto f = sample::tate(rng, p, 1, 5, 6);
               const auto g = nonzero_tate(rng, p, 1);
               const Norm target = Norm::from_exponent(Rational(8));
               const auto res = w_divide(f, g, target);
               const auto diff = sub(f, add(mul(res.quotient, g), res.remainder));
               return !(explicit_norm(diff) > target) && !(res.residual > target) &&
                      (res.remainder.terms().empty() || res.remainder.terms().rbegin()->first[1] < euclid_degree(g));
           }));

    record("automorphism_morphism", run_suite(samples, [&](int i) {
               const auto p = pick_prime(rng);
               const int n = 2 + i % 2;
               AutomorphismSpec sigma{std::vector<std::uint32_t>(static_cast<std::size_t>(n - 1))};
               for (auto &a : sigma.alphas) {
                   a = static_cast<std::uint32_t>(rng() % 4);
               }
               const auto f = sample::tate(rng, p, n, 3, 2);
               const auto g = sample::tate(rng, p, n, 3, 2);
               return apply_automorphism(sigma, mul(f, g)) ==
                          mul(apply_automorphism(sigma, f), apply_automorphism(sigma, g)) &&
                      apply_automorphism(sigma, apply_automorphism(sigma, f), Direction::inverse) == f;
           }));

    record("splitting", run_suite(samples, [&](int i) {
               const auto p = pick_prime(rng);
               const int n = 1 + i % 2;
               const auto phi = phi_standard(p);
               const auto f = sample::tate(rng, p, n);
               const auto h = sample::tate(rng, p, n, 2, 2);
               return lift_splitting_tate(phi, TateElem::one(p, n)) == TateElem::one(p, n) &&
                      lift_splitting_tate(phi, frobenius(f)) == f &&
                      lift_splitting_tate(phi, mul(frobenius(h), f)) == mul(h, lift_splitting_tate(phi, f));
           }));

    record("continuity", run_suite(samples, [&](int i) {
               const auto p = pick_prime(rng);
               const auto f = nonzero_tate(rng, p, 1 + i % 2);
               const auto image = lift_splitting_tate(phi_standard(p), f);
               return image.terms().empty() ||
                      gauss_norm(image).exponent() >= gauss_norm(f).exponent() / Rational(p);
           }));

    record("certificate", run_suite(samples, [&](int) {
               const auto p = pick_prime(rng);
               const auto f = sample::tate(rng, p, 1);
               ConvergenceCertificate cert{{Rational(static_cast<std::int64_t>(rng() % 3))}, Rational(0)};
               for (const auto &[nu, c] : f.terms()) {
                   cert.log_bound = std::max(cert.log_bound, -norm(c).value.exponent() + cert.log_radii[0] *
                                                                 static_cast<std::int64_t>(nu[1]));
               }
               const auto out = lift_splitting_convergent(phi_standard(p), f, cert);
               return verify_certificate(out.series, out.cert);
           }));

    const auto ctx = make_gabber_context(2, 8);
    record("gabber_distance", run_suite(samples, [&](int) {
               const int skip = static_cast<int>(rng() % 8);
               std::vector<HahnSumElem::Term> terms;
               for (int k = 0; k < 1 + static_cast<int>(rng() % 6); ++k) {
                   const int i = static_cast<int>(rng() % 8);
                   if (i == skip) {
                       continue;
                   }
                   auto shift = ExponentVector::generator(1 + static_cast<int>(rng() % 8),
                                                          2 * (static_cast<std::int64_t>(rng() % 5) - 2));
                   terms.push_back({-ctx.reps[static_cast<std::size_t>(i)] + shift, 1});
               }
               return distance_lower_bound_check(ctx, HahnSumElem(2, std::move(terms)), 8).pass;
           }));

    r.add("failures", failures);
    return r;
}

} // namespace tatekit::cli
