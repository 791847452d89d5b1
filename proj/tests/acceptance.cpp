// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

// Acceptance runner: one line per criterion, nonzero exit if any fails.
//
//   acceptance <path-to-tatekit-cli> <golden-dir>

#include <array>
#include <chrono>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <string>

#include <tatekit/frobenius.hpp>
#include <tatekit/gabber.hpp>
#include <tatekit/sample.hpp>
#include <tatekit/weierstrass.hpp>

#include "oracle.hpp"
#include "reconstruct.hpp"

using namespace tatekit;
namespace fs = std::filesystem;

namespace
{

using Rng = std::mt19937_64;

std::uint64_t seed_from_env()
{
    if (const char *s = std::getenv("TATEKIT_SEED")) {
        return std::strtoull(s, nullptr, 10);
    }
    return 20240601;
}

/// Counts checks; remembers the first failure for the report line.
struct Tally {
    long checks = 0;
    long failures = 0;
    std::string first;

    void check(bool ok, const std::string &what)
    {
        ++checks;
        if (!ok) {
            if (failures++ == 0) {
                first = what;
            }
        }
    }
};

TateElem nonzero_tate(Rng &rng, std::uint32_t p, int n, int terms = 4, std::uint32_t deg = 3, int coeff_terms = 2)
{
    for (;;) {
        auto f = sample::tate(rng, p, n, terms, deg, coeff_terms);
        if (!f.terms().empty()) {
            return f;
        }
    }
}

// 1. Gauss norm is multiplicative.
void gauss_multiplicativity(Tally &t, Rng &rng)
{
    for (std::uint32_t p : {2u, 3u}) {
        // Monomial coefficients c t^v, v in {-1, 0, 1}, at X-degrees 0..3.
        struct Choice {
            std::uint32_t deg;
            std::int64_t val;
            std::uint32_t coeff;
        };
        std::vector<Choice> single;
        for (std::uint32_t d = 0; d <= 3; ++d) {
            for (std::int64_t v = -1; v <= 1; ++v) {
                for (std::uint32_t c = 1; c < p; ++c) {
                    single.push_back({d, v, c});
                }
            }
        }
        auto term = [p](const Choice &c) {
            return TateElem::monomial(LaurentElem::monomial(p, c.coeff, Rational(c.val)), MultiIndex({c.deg}));
        };
        std::vector<TateElem> elems;
        for (std::size_t a = 0; a < single.size(); ++a) {
            elems.push_back(term(single[a]));
            for (std::size_t b = a + 1; b < single.size(); ++b) {
                if (single[b].deg > single[a].deg) {
                    elems.push_back(add(term(single[a]), term(single[b])));
                }
            }
        }
        for (const auto &f : elems) {
            const auto ef = *oracle::gauss_exponent(oracle::from(f));
            for (const auto &g : elems) {
                const auto eg = *oracle::gauss_exponent(oracle::from(g));
                const auto fg = mul(f, g);
                t.check(gauss_norm(fg).exponent() == ef + eg, to_string(f) + " * " + to_string(g));
            }
        }
    }
    for (int k = 0; k < 10000; ++k) {
        const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[k % 3];
        const auto f = nonzero_tate(rng, p, 2);
        const auto g = nonzero_tate(rng, p, 2);
        const auto fg = mul(f, g);
        const auto prod = oracle::mul(oracle::from(f), oracle::from(g));
        const auto e = *oracle::gauss_exponent(oracle::from(f)) + *oracle::gauss_exponent(oracle::from(g));
        t.check(oracle::same(fg, prod) && *oracle::gauss_exponent(prod) == e && gauss_norm(fg).exponent() == e,
                to_string(f) + " * " + to_string(g));
    }
}

// 2. |x + y| = max(|x|, |y|) when the norms differ.
void strong_triangle(Tally &t, Rng &rng)
{
    int done = 0;
    while (done < 10000) {
        const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[done % 3];
        const auto x = sample::nonzero_laurent(rng, p, 4, -3, 4);
        const auto y = sample::nonzero_laurent(rng, p, 4, -3, 4);
        const auto nx = norm(x).value;
        const auto ny = norm(y).value;
        if (nx == ny) {
            continue;
        }
        ++done;
        const auto nz = norm(add(x, y)).value;
        t.check(!nz.is_zero() && nz.exponent() == std::min(nx.exponent(), ny.exponent()),
                to_string(x) + " + " + to_string(y));
    }
    done = 0;
    while (done < 10000) {
        const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[done % 3];
        const auto x = sample::hahn(rng, p, 4, 4, 3);
        const auto y = sample::hahn(rng, p, 4, 4, 3);
        if (x.is_exact_zero() || y.is_exact_zero()) {
            continue;
        }
        const auto nx = norm(x).value;
        const auto ny = norm(y).value;
        if (nx == ny) {
            continue;
        }
        ++done;
        const auto nz = norm(add(x, y)).value;
        t.check(!nz.is_zero() && nz == max(nx, ny), to_string(x) + " + " + to_string(y));
    }
}

std::uint32_t x_degree(const TateElem &r)
{
    return r.terms().empty() ? 0 : r.terms().rbegin()->first[1];
}

// 3. Euclidean division in T_1.
void euclidean_division(Tally &t, Rng &rng)
{
    const Norm target = Norm::from_exponent(Rational(8));
    for (int k = 0; k < 1000; ++k) {
        const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[k % 3];
        const auto f = sample::tate(rng, p, 1, 7, 6, 2, -2, 4);
        const auto g = nonzero_tate(rng, p, 1, 5, 6);
        const std::string what = "f = " + to_string(f) + ", g = " + to_string(g);
        try {
            const auto res = w_divide(f, g, target);
            const auto d = sub(f, add(mul(res.quotient, g), res.remainder));
            t.check(!(explicit_norm(d) > target) && !(d.slack() > target) && !(res.residual > target), what);
            t.check(res.remainder.terms().empty() || x_degree(res.remainder) < euclid_degree(g), what);
            if (euclid_degree(g) == x_degree(g)) {
                if (const auto expected = oracle::poly_divide(oracle::from(f), oracle::from(g))) {
                    const auto exact = w_divide(f, g, Norm::zero());
                    t.check(oracle::same(exact.quotient, expected->first) &&
                                oracle::same(exact.remainder, expected->second),
                            what + " (oracle)");
                }
            }
        } catch (const Error &e) {
            t.check(false, what + ": " + e.what());
        }
    }
}

// 4. Distinguishing automorphisms.
void distinguishing(Tally &t, Rng &rng)
{
    for (int k = 0; k < 500; ++k) {
        const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[k % 3];
        const int n = 2 + k % 2;
        const auto g = nonzero_tate(rng, p, n, 4, 3);
        const auto sigma = find_distinguishing_automorphism({g});
        t.check(distinguished_order(apply_automorphism(sigma, g), n).is_distinguished, to_string(g));
        if (k < 100) {
            const auto a = sample::tate(rng, p, n, 3, 2);
            const auto b = sample::tate(rng, p, n, 3, 2);
            const auto sa = oracle::substitute(oracle::from(a), sigma.alphas, false);
            const auto sb = oracle::substitute(oracle::from(b), sigma.alphas, false);
            t.check(oracle::same(apply_automorphism(sigma, add(a, b)), oracle::add(sa, sb)) &&
                        oracle::same(apply_automorphism(sigma, mul(a, b)), oracle::mul(sa, sb)),
                    "morphism on " + to_string(a) + ", " + to_string(b));
        }
    }
}

// 5 and 6. Splitting identities, then the continuity bound on the same samples.
std::vector<TateElem> splitting_samples;

void splitting(Tally &t, Rng &rng)
{
    splitting_samples.clear();
    for (std::uint32_t p : {2u, 3u, 5u}) {
        const auto phi = phi_standard(p);
        for (int n = 1; n <= 2; ++n) {
            t.check(lift_splitting_tate(phi, TateElem::one(p, n)) == TateElem::one(p, n), "Phi(1)");
            for (int k = 0; k < 1000; ++k) {
                const auto f = sample::tate(rng, p, n, 5, 2 * p, 3, -4, 6);
                const auto h = sample::tate(rng, p, n, 3, 2);
                splitting_samples.push_back(f);
                t.check(lift_splitting_tate(phi, mul(frobenius(h), f)) == mul(h, lift_splitting_tate(phi, f)),
                        "h = " + to_string(h) + ", f = " + to_string(f));
            }
            for (int k = 0; k < 1000; ++k) {
                const auto f = sample::tate(rng, p, n, 5, 3, 3, -4, 6);
                splitting_samples.push_back(f);
                t.check(lift_splitting_tate(phi, frobenius(f)) == f, "Phi(f^p), f = " + to_string(f));
            }
            for (int k = 0; k < 200; ++k) {
                const auto f = sample::tate(rng, p, n, 5, 2 * p, 3, -4, 6);
                t.check(support::reconstruct(phi, f) == f, "reconstruct " + to_string(f));
            }
        }
    }
}

void continuity(Tally &t, Rng &)
{
    for (const auto &f : splitting_samples) {
        if (f.terms().empty()) {
            continue;
        }
        const auto image = lift_splitting_tate(phi_standard(f.characteristic()), f);
        if (image.terms().empty()) {
            t.check(true, "");
            continue;
        }
        const auto bound = *oracle::gauss_exponent(oracle::from(f)) / Rational(f.characteristic());
        t.check(*oracle::gauss_exponent(oracle::from(image)) >= bound, "continuity on " + to_string(f));
    }
}

// 7. Certificate transform.
void certificates(Tally &t, Rng &rng)
{
    auto log_size = [](const TateElem &f, const ConvergenceCertificate &c, const MultiIndex &nu, const LaurentElem &a) {
        Rational s = -*oracle::valuation(oracle::from(a));
        for (int j = 1; j <= f.arity(); ++j) {
            s += c.log_radii[static_cast<std::size_t>(j - 1)] * static_cast<std::int64_t>(nu[j]);
        }
        return s;
    };
    for (int k = 0; k < 500; ++k) {
        const std::uint32_t p = std::array<std::uint32_t, 3>{2, 3, 5}[k % 3];
        const int n = 1 + k % 2;
        const auto f = sample::tate(rng, p, n, 5, 2 * p, 3, -4, 6);
        ConvergenceCertificate cert;
        for (int j = 0; j < n; ++j) {
            cert.log_radii.push_back(Rational(static_cast<std::int64_t>(rng() % 9) - 3, 2));
        }
        cert.log_bound = Rational(static_cast<std::int64_t>(rng() % 5));
        for (const auto &[nu, c] : f.terms()) {
            cert.log_bound = std::max(cert.log_bound, log_size(f, cert, nu, c));
        }
        std::optional<LaurentElem> twist;
        if (k % 4 == 3) {
            twist = LaurentElem::monomial(p, 1, Rational(static_cast<std::int64_t>(rng() % 7) - 3, p));
        }
        const auto out = lift_splitting_convergent(phi_standard(p, twist), f, cert);
        bool ok = out.cert.log_radii == cert.log_radii;
        for (const auto &[nu, c] : out.series.terms()) {
            ok = ok && log_size(out.series, out.cert, nu, c) <= out.cert.log_bound;
        }
        t.check(ok, "certificate for " + to_string(f));
    }
}

// 8. Diagonal selection, recomputed from the table.
void diagonal_selection(Tally &t, Rng &rng)
{
    constexpr std::uint32_t rows = 7;
    constexpr std::uint32_t cols = 7;
    for (int k = 0; k < 100; ++k) {
        std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries;
        std::vector<Rational> floors;
        std::int64_t fact = 1;
        for (std::uint32_t i = 0; i < rows; ++i) {
            fact *= (i == 0 ? 1 : i);
            floors.push_back(Rational(-fact));
            entries[{i, 0}] = Rational(-fact) - Rational(static_cast<std::int64_t>(rng() % 3), 2);
            for (std::uint32_t j = 1; j < cols; ++j) {
                if (rng() % 4 == 0) {
                    continue;
                }
                const auto spread = static_cast<std::uint64_t>(fact) + 8;
                entries[{i, j}] = Rational(static_cast<std::int64_t>(rng() % spread) - fact - 3);
            }
        }
        const NormTable table(entries, floors);
        auto v = [&](std::uint32_t i, std::uint32_t j) -> std::optional<Rational> {
            auto it = entries.find({i, j});
            return it == entries.end() ? std::nullopt : std::optional<Rational>(it->second);
        };
        // Exponent of max_{r<i} |b_{m_r, i-r}|; nullopt when all vanish.
        auto dominated = [&](const std::vector<std::uint32_t> &ms, std::uint32_t i) {
            std::optional<Rational> best;
            for (std::uint32_t r = 0; r < i; ++r) {
                if (const auto e = v(ms[r], i - r)) {
                    best = best ? std::min(*best, *e) : *e;
                }
            }
            return best;
        };
        auto admissible = [&](std::uint32_t m, const std::optional<Rational> &dom) {
            const auto d = v(m, 0);
            return d && (!dom || *d < *dom);
        };

        const auto steps = select_diagonal_indices(table);
        bool ok = !steps.empty() && steps[0].m == 0;
        std::vector<std::uint32_t> ms;
        for (std::uint32_t i = 0; ok && i < steps.size(); ++i) {
            const auto &s = steps[i];
            ok = s.i == i;
            if (i > 0) {
                const auto dom = dominated(ms, i);
                ok = ok && s.m > ms.back() && admissible(s.m, dom) && s.dominated_exponent == dom;
                for (std::uint32_t m = ms.back() + 1; ok && m < s.m; ++m) {
                    ok = !admissible(m, dom);
                }
                // The X^i coefficient sum_{r<=i} b_{m_r, i-r} has norm |b_{m_i,0}|.
                Rational strongest = *v(s.m, 0);
                for (std::uint32_t r = 0; r < i; ++r) {
                    if (const auto e = v(ms[r], i - r)) {
                        ok = ok && strongest < *e;
                    }
                }
            }
            ok = ok && s.coefficient_exponent == *v(s.m, 0) && s.floor_exponent == floors[s.m] &&
                 s.coefficient_exponent <= s.floor_exponent;
            ms.push_back(s.m);
        }
        // Maximality: no further index is admissible.
        if (ok) {
            const auto next = static_cast<std::uint32_t>(steps.size());
            const auto dom = dominated(ms, next);
            for (std::uint32_t m = ms.back() + 1; ok && m < rows; ++m) {
                ok = !admissible(m, dom);
            }
        }
        t.check(ok, "table " + std::to_string(k));
    }
}

// 9. Gabber distance bound.
void gabber_distance(Tally &t, Rng &rng)
{
    const auto ctx = make_gabber_context(2, 8);
    for (int i = 0; i < 8; ++i) {
        t.check(certified_inside(ctx.reps[static_cast<std::size_t>(i)], BigRational(-1), BigRational(1)),
                "rep in (-1, 1)");
        for (int j = 0; j < i; ++j) {
            t.check(gamma_mod_p(ctx.reps[static_cast<std::size_t>(i)], 2) !=
                        gamma_mod_p(ctx.reps[static_cast<std::size_t>(j)], 2),
                    "reps distinct mod 2");
        }
    }
    const auto f = witness_truncation(ctx, 8);
    for (int k = 0; k < 1000; ++k) {
        std::vector<int> cosets{1, 2, 3, 4, 5, 6, 7, 8};
        std::shuffle(cosets.begin(), cosets.end(), rng);
        cosets.resize(static_cast<std::size_t>(rng() % 8));
        std::vector<HahnSumElem::Term> terms;
        if (!cosets.empty()) {
            const auto support = 1 + rng() % 12;
            for (std::uint64_t j = 0; j < support; ++j) {
                const int c = cosets[rng() % cosets.size()];
                ExponentVector e = ctx.reps[static_cast<std::size_t>(c - 1)].scaled(rng() % 2 ? 1 : -1);
                for (int g = 1; g <= 8; ++g) {
                    if (rng() % 3 == 0) {
                        e = e + ExponentVector::generator(g, 2 * (static_cast<std::int64_t>(rng() % 5) - 2));
                    }
                }
                terms.push_back({e, 1});
            }
        }
        const HahnSumElem g(2, terms);
        const std::string what = "g = " + to_string(g);
        try {
            const auto r = distance_lower_bound_check(ctx, g, 8);
            // Independent norm of f_8 - g: smallest exponent in the real order.
            std::map<ExponentVector, int> diff;
            for (const auto &term : f.terms()) {
                diff[term.exponent] ^= 1;
            }
            for (const auto &term : g.terms()) {
                diff[term.exponent] ^= 1;
            }
            std::optional<ExponentVector> lowest;
            for (const auto &[e, c] : diff) {
                if (c && (!lowest || gamma_compare(e, *lowest) == std::strong_ordering::less)) {
                    lowest = e;
                }
            }
            t.check(r.pass && lowest && *lowest == r.actual_exp &&
                        gamma_compare(r.actual_exp, r.bound_exp) != std::strong_ordering::greater &&
                        gamma_sign(r.actual_exp) == std::strong_ordering::less,
                    what);
        } catch (const Error &e) {
            t.check(false, what + ": " + e.what());
        }
    }
}

// 10. CLI golden transcripts.
std::string cli_path;
fs::path golden_dir;

std::string run_capture(const std::string &command)
{
    std::string out;
    FILE *pipe = popen(command.c_str(), "r");
    if (!pipe) {
        return "popen failed";
    }
    std::array<char, 4096> buf{};
    std::size_t n = 0;
    while ((n = std::fread(buf.data(), 1, buf.size(), pipe)) > 0) {
        out.append(buf.data(), n);
    }
    const int status = pclose(pipe);
    out += "exit=" + std::to_string(WIFEXITED(status) ? WEXITSTATUS(status) : -1) + "\n";
    return out;
}

std::string trim(std::string s)
{
    const auto b = s.find_first_not_of(" \t");
    const auto e = s.find_last_not_of(" \t\r");
    return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
}

void golden(Tally &t, Rng &)
{
    std::ifstream cases(golden_dir / "cases.txt");
    if (!cases) {
        t.check(false, "missing cases.txt");
        return;
    }
    std::string line;
    while (std::getline(cases, line)) {
        if (line.empty() || line[0] == '#') {
            continue;
        }
        const auto bar = line.find('|');
        const auto name = trim(line.substr(0, bar));
        auto args = trim(line.substr(bar + 1));
        for (std::size_t pos; (pos = args.find("{golden}")) != std::string::npos;) {
            args.replace(pos, 8, golden_dir.string());
        }
        std::ifstream expected_file(golden_dir / (name + ".out"), std::ios::binary);
        std::stringstream expected;
        expected << expected_file.rdbuf();
        const auto actual = run_capture("cd '" + golden_dir.string() + "' && '" + cli_path +
                                        "' --format records " + args + " 2>&1");
        t.check(expected_file && actual == expected.str(), name);
    }
}

struct Criterion {
    int id;
    const char *name;
    double limit_seconds;
    std::function<void(Tally &, Rng &)> run;
};

} // namespace

int main(int argc, char **argv)
{
    if (argc != 3) {
        std::cerr << "usage: acceptance <tatekit-cli> <golden-dir>\n";
        return 1;
    }
    cli_path = fs::absolute(argv[1]).string();
    golden_dir = fs::absolute(argv[2]);

    const std::vector<Criterion> criteria{
        {1, "gauss norm multiplicativity", 30, gauss_multiplicativity},
        {2, "strong triangle equality", 10, strong_triangle},
        {3, "euclidean division", 60, euclidean_division},
        {4, "distinguishing automorphisms", 60, distinguishing},
        {5, "splitting correctness", 60, splitting},
        {6, "continuity bound", 60, continuity},
        {7, "certificate transform", 10, certificates},
        {8, "diagonal selection", 10, diagonal_selection},
        {9, "gabber distance witness", 120, gabber_distance},
        {10, "cli golden transcripts", 10, golden},
    };

    const auto seed = seed_from_env();
    int failed = 0;
    for (const auto &c : criteria) {
        Rng rng(seed + static_cast<std::uint64_t>(c.id));
        Tally tally;
        const auto start = std::chrono::steady_clock::now();
        try {
            c.run(tally, rng);
        } catch (const std::exception &e) {
            tally.check(false, std::string("uncaught: ") + e.what());
        }
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        const bool ok = tally.failures == 0 && tally.checks > 0 && secs < c.limit_seconds;
        failed += ok ? 0 : 1;
        std::printf("criterion %2d %-30s %s  checks=%ld failures=%ld time=%.2fs limit=%.0fs\n", c.id, c.name,
                    ok ? "PASS" : "FAIL", tally.checks, tally.failures, secs, c.limit_seconds);
        if (tally.failures > 0) {
            std::printf("    first failure: %s\n", tally.first.c_str());
        }
    }
    std::printf("%d of %zu criteria passed\n", static_cast<int>(criteria.size()) - failed, criteria.size());
    return failed == 0 ? 0 : 1;
}
