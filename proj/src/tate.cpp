// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/tate.hpp>

#include <algorithm>
#include <limits>

namespace tatekit
{

namespace
{

Norm coefficient_norm(const LaurentElem &c)
{
    return norm(c).value;
}

void require_compatible(const TateElem &f, const TateElem &g)
{
    if (f.characteristic() != g.characteristic()) {
        fail(ErrorKind::math_domain, "backend-mismatch", "characteristics differ");
    }
    if (f.arity() != g.arity()) {
        fail(ErrorKind::math_domain, "arity-mismatch",
             "arities " + std::to_string(f.arity()) + " and " + std::to_string(g.arity()) + " differ");
    }
}

void accumulate(TateElem::Terms &terms, const MultiIndex &nu, const LaurentElem &c)
{
    auto it = terms.find(nu);
    if (it == terms.end()) {
        terms.emplace(nu, c);
    } else {
        it->second = add(it->second, c);
    }
}

/// Row m of Pascal's triangle mod p.
std::vector<std::uint32_t> binomial_row(std::uint32_t m, std::uint32_t p)
{
    std::vector<std::uint32_t> row{1};
    for (std::uint32_t k = 1; k <= m; ++k) {
        std::vector<std::uint32_t> next(row.size() + 1, 0);
        for (std::size_t j = 0; j < next.size(); ++j) {
            std::uint64_t v = (j < row.size() ? row[j] : 0) + (j > 0 ? row[j - 1] : 0);
            next[j] = static_cast<std::uint32_t>(v % p);
        }
        row = std::move(next);
    }
    return row;
}

std::uint64_t checked_pow(std::uint64_t base, int exp)
{
    std::uint64_t r = 1;
    for (int i = 0; i < exp; ++i) {
        if (base != 0 && r > std::numeric_limits<std::uint32_t>::max() / base) {
            return std::numeric_limits<std::uint32_t>::max();
        }
        r *= base;
    }
    return r;
}

} // namespace

MultiIndex MultiIndex::axis_power(int arity, int axis, std::uint32_t power)
{
    auto m = zero(arity);
    m.exps[static_cast<std::size_t>(axis - 1)] = power;
    return m;
}

std::uint64_t MultiIndex::total_degree() const
{
    std::uint64_t s = 0;
    for (auto e : exps) {
        s += e;
    }
    return s;
}

bool MultiIndex::is_zero() const
{
    return std::all_of(exps.begin(), exps.end(), [](std::uint32_t e) { return e == 0; });
}

MultiIndex operator+(const MultiIndex &a, const MultiIndex &b)
{
    MultiIndex out = a;
    for (std::size_t i = 0; i < out.exps.size(); ++i) {
        out.exps[i] += b.exps[i];
    }
    return out;
}

TateElem::TateElem(std::uint32_t p, int arity) : p_(p), arity_(arity)
{
    if (arity < 0) {
        fail(ErrorKind::math_domain, "arity", "arity must be nonnegative");
    }
}

TateElem::TateElem(std::uint32_t p, int arity, Terms terms, Norm slack)
    : p_(p), arity_(arity), terms_(std::move(terms)), slack_(std::move(slack))
{
    if (arity < 0) {
        fail(ErrorKind::math_domain, "arity", "arity must be nonnegative");
    }
    normalize();
}

TateElem TateElem::constant(const LaurentElem &c, int arity)
{
    return TateElem(c.characteristic(), arity, Terms{{MultiIndex::zero(arity), c}});
}

TateElem TateElem::monomial(const LaurentElem &c, MultiIndex nu)
{
    const int arity = nu.arity();
    return TateElem(c.characteristic(), arity, Terms{{std::move(nu), c}});
}

TateElem TateElem::one(std::uint32_t p, int arity)
{
    return constant(LaurentElem::constant(p, 1), arity);
}

TateElem TateElem::ball(std::uint32_t p, int arity, Norm slack)
{
    return TateElem(p, arity, {}, std::move(slack));
}

LaurentElem TateElem::coefficient(const MultiIndex &nu) const
{
    auto it = terms_.find(nu);
    return it == terms_.end() ? LaurentElem(p_) : it->second;
}

void TateElem::normalize()
{
    for (const auto &[nu, c] : terms_) {
        if (nu.arity() != arity_) {
            fail(ErrorKind::math_domain, "arity-mismatch", "multi-index arity differs from element arity");
        }
        if (c.characteristic() != p_) {
            fail(ErrorKind::math_domain, "backend-mismatch", "coefficient characteristic differs");
        }
        if (c.cutoff()) {
            slack_ = max(slack_, Norm::from_exponent(*c.cutoff()));
        }
    }
    Terms out;
    for (auto &[nu, c] : terms_) {
        std::vector<LaurentElem::Term> kept;
        for (const auto &t : c.terms()) {
            if (Norm::from_exponent(t.exponent) > slack_) {
                kept.push_back(t);
            }
        }
        if (!kept.empty()) {
            out.emplace(nu, LaurentElem(p_, std::move(kept)));
        }
    }
    terms_ = std::move(out);
}

TateElem add(const TateElem &f, const TateElem &g)
{
    require_compatible(f, g);
    auto terms = f.terms();
    for (const auto &[nu, c] : g.terms()) {
        accumulate(terms, nu, c);
    }
    return TateElem(f.characteristic(), f.arity(), std::move(terms), max(f.slack(), g.slack()));
}

TateElem negate(const TateElem &f)
{
    TateElem::Terms terms;
    for (const auto &[nu, c] : f.terms()) {
        terms.emplace(nu, negate(c));
    }
    return TateElem(f.characteristic(), f.arity(), std::move(terms), f.slack());
}

TateElem sub(const TateElem &f, const TateElem &g)
{
    return add(f, negate(g));
}

Norm explicit_norm(const TateElem &f)
{
    Norm best = Norm::zero();
    for (const auto &[nu, c] : f.terms()) {
        best = max(best, coefficient_norm(c));
    }
    return best;
}

TateElem mul(const TateElem &f, const TateElem &g)
{
    require_compatible(f, g);
    TateElem::Terms terms;
    for (const auto &[nf, cf] : f.terms()) {
        for (const auto &[ng, cg] : g.terms()) {
            accumulate(terms, nf + ng, mul(cf, cg));
        }
    }
    const Norm nf = explicit_norm(f);
    const Norm ng = explicit_norm(g);
    Norm slack = max(max(f.slack() * ng, g.slack() * nf), f.slack() * g.slack());
    return TateElem(f.characteristic(), f.arity(), std::move(terms), slack);
}

TateElem scale(const TateElem &f, const LaurentElem &c)
{
    return mul(f, TateElem::constant(c, f.arity()));
}

TateElem power(const TateElem &f, std::uint32_t k)
{
    TateElem result = TateElem::one(f.characteristic(), f.arity());
    TateElem base = f;
    while (k > 0) {
        if (k & 1U) {
            result = mul(result, base);
        }
        k >>= 1U;
        if (k > 0) {
            base = mul(base, base);
        }
    }
    return result;
}

TateElem with_slack(const TateElem &f, const Norm &slack)
{
    return TateElem(f.characteristic(), f.arity(), f.terms(), max(f.slack(), slack));
}

Norm gauss_norm(const TateElem &f)
{
    if (f.terms().empty() && !f.is_exact()) {
        fail(ErrorKind::precision, "undecidable-at-precision", "Gauss norm of a slack-only element is unknown");
    }
    return explicit_norm(f);
}

bool is_unit(const TateElem &f)
{
    const auto zero_index = MultiIndex::zero(f.arity());
    auto it = f.terms().find(zero_index);
    if (it == f.terms().end()) {
        if (f.terms().empty()) {
            if (f.is_exact()) {
                return false;
            }
            fail(ErrorKind::precision, "undecidable-at-precision", "constant term is hidden by the slack");
        }
        // Some explicit coefficient exceeds the slack, which bounds the constant term.
        return false;
    }
    const Norm a0 = coefficient_norm(it->second);
    for (const auto &[nu, c] : f.terms()) {
        if (nu != zero_index && !(coefficient_norm(c) < a0)) {
            return false;
        }
    }
    return true;
}

TateElem axis_coefficient(const TateElem &g, int axis, std::uint32_t nu)
{
    if (axis < 1 || axis > g.arity()) {
        fail(ErrorKind::math_domain, "axis", "axis out of range");
    }
    TateElem::Terms terms;
    for (const auto &[idx, c] : g.terms()) {
        if (idx[axis] != nu) {
            continue;
        }
        std::vector<std::uint32_t> rest;
        for (int i = 1; i <= g.arity(); ++i) {
            if (i != axis) {
                rest.push_back(idx[i]);
            }
        }
        terms.emplace(MultiIndex(std::move(rest)), c);
    }
    return TateElem(g.characteristic(), g.arity() - 1, std::move(terms), g.slack());
}

DistinguishedReport distinguished_order(const TateElem &g, int axis)
{
    if (axis < 1 || axis > g.arity()) {
        fail(ErrorKind::math_domain, "axis", "axis out of range");
    }
    if (g.terms().empty()) {
        if (g.is_exact()) {
            fail(ErrorKind::math_domain, "zero-input", "distinguished order of 0 is undefined");
        }
        fail(ErrorKind::precision, "undecidable-at-precision", "no explicit coefficient above the slack");
    }
    const Norm top = explicit_norm(g);
    std::uint32_t order = 0;
    for (const auto &[idx, c] : g.terms()) {
        if (coefficient_norm(c) == top) {
            order = std::max(order, idx[axis]);
        }
    }
    DistinguishedReport report;
    report.order = order;
    report.dominant_norm = top;
    report.is_distinguished = is_unit(axis_coefficient(g, axis, order));
    return report;
}

std::uint32_t euclid_degree(const TateElem &f)
{
    if (f.arity() != 1) {
        fail(ErrorKind::math_domain, "arity-mismatch", "euclid_degree needs arity 1");
    }
    return distinguished_order(f, 1).order;
}

TateElem apply_automorphism(const AutomorphismSpec &sigma, const TateElem &f, Direction direction)
{
    const int n = f.arity();
    if (sigma.arity() != n) {
        fail(ErrorKind::math_domain, "arity-mismatch", "automorphism arity differs from element arity");
    }
    const auto p = f.characteristic();
    const std::uint32_t sign = direction == Direction::forward ? 1 : p - 1;

    // Expansion of a monomial X^nu under sigma, with F_p coefficients.
    auto expand = [&](const MultiIndex &nu) {
        std::map<MultiIndex, std::uint32_t> acc{{MultiIndex::axis_power(n, n, nu[n]), 1}};
        for (int i = 1; i < n; ++i) {
            const std::uint32_t m = nu[i];
            if (m == 0) {
                continue;
            }
            const std::uint32_t alpha = sigma.alphas[static_cast<std::size_t>(i - 1)];
            const auto row = binomial_row(m, p);
            std::map<MultiIndex, std::uint32_t> next;
            for (const auto &[idx, c] : acc) {
                // (X_i + sign X_n^alpha)^m = sum_k C(m,k) X_i^k (sign X_n^alpha)^(m-k)
                std::uint64_t sign_pow = 1;
                for (std::uint32_t k = m + 1; k-- > 0;) {
                    std::uint64_t coef = std::uint64_t{row[k]} * sign_pow % p;
                    sign_pow = sign_pow * sign % p;
                    if (coef == 0) {
                        continue;
                    }
                    MultiIndex term = idx;
                    term.exps[static_cast<std::size_t>(i - 1)] += k;
                    term.exps[static_cast<std::size_t>(n - 1)] += alpha * (m - k);
                    auto &slot = next[term];
                    slot = static_cast<std::uint32_t>((slot + coef * c) % p);
                }
            }
            acc = std::move(next);
        }
        return acc;
    };

    TateElem::Terms terms;
    for (const auto &[nu, c] : f.terms()) {
        for (const auto &[idx, coef] : expand(nu)) {
            if (coef != 0) {
                accumulate(terms, idx, scale(c, coef));
            }
        }
    }
    return TateElem(p, n, std::move(terms), f.slack());
}

AutomorphismSpec find_distinguishing_automorphism(const std::vector<TateElem> &gs)
{
    if (gs.empty()) {
        fail(ErrorKind::math_domain, "empty-input", "need at least one element");
    }
    const int n = gs.front().arity();
    std::uint64_t max_degree = 0;
    for (const auto &g : gs) {
        if (g.arity() != n) {
            fail(ErrorKind::math_domain, "arity-mismatch", "inputs have different arities");
        }
        if (g.terms().empty()) {
            fail(ErrorKind::math_domain, "zero-input", "inputs must be nonzero");
        }
        for (const auto &[nu, c] : g.terms()) {
            max_degree = std::max(max_degree, nu.total_degree());
        }
    }
    if (n < 1) {
        fail(ErrorKind::math_domain, "arity", "arity must be at least 1");
    }
    auto works = [&](const AutomorphismSpec &sigma) {
        return std::all_of(gs.begin(), gs.end(), [&](const TateElem &g) {
            return distinguished_order(apply_automorphism(sigma, g), n).is_distinguished;
        });
    };
    AutomorphismSpec sigma{std::vector<std::uint32_t>(static_cast<std::size_t>(n - 1), 0)};
    if (works(sigma)) {
        return sigma;
    }
    const std::uint64_t bound = 1 + checked_pow(max_degree, n);
    for (std::uint64_t c = 1; c <= bound; ++c) {
        for (int i = 1; i < n; ++i) {
            auto a = checked_pow(c, n - i);
            if (a >= std::numeric_limits<std::uint32_t>::max()) {
                fail(ErrorKind::search_exhausted, "search-exhausted", "automorphism exponents overflow");
            }
            sigma.alphas[static_cast<std::size_t>(i - 1)] = static_cast<std::uint32_t>(a);
        }
        if (works(sigma)) {
            return sigma;
        }
    }
    fail(ErrorKind::search_exhausted, "search-exhausted", "no distinguishing automorphism within the search bound");
}

TateElem project_kill_vars(const TateElem &f, int keep_axis)
{
    if (keep_axis < 1 || keep_axis > f.arity()) {
        fail(ErrorKind::math_domain, "axis", "axis out of range");
    }
    TateElem::Terms terms;
    for (const auto &[nu, c] : f.terms()) {
        bool keep = true;
        for (int i = 1; i <= f.arity(); ++i) {
            if (i != keep_axis && nu[i] != 0) {
                keep = false;
                break;
            }
        }
        if (keep) {
            terms.emplace(MultiIndex({nu[keep_axis]}), c);
        }
    }
    return TateElem(f.characteristic(), 1, std::move(terms), f.slack());
}

TateElem embed_axis(const TateElem &f, int arity, int axis)
{
    if (f.arity() != 1) {
        fail(ErrorKind::math_domain, "arity-mismatch", "embed_axis needs an arity-1 element");
    }
    if (axis < 1 || axis > arity) {
        fail(ErrorKind::math_domain, "axis", "axis out of range");
    }
    TateElem::Terms terms;
    for (const auto &[nu, c] : f.terms()) {
        terms.emplace(MultiIndex::axis_power(arity, axis, nu[1]), c);
    }
    return TateElem(f.characteristic(), arity, std::move(terms), f.slack());
}

TateElem unit_inverse(const TateElem &u, const Norm &target)
{
    if (!is_unit(u)) {
        fail(ErrorKind::math_domain, "not-a-unit", "element is not a unit");
    }
    if (target.is_zero()) {
        fail(ErrorKind::precision, "undecidable-at-precision", "unit inverse needs a positive target slack");
    }
    const auto p = u.characteristic();
    const int n = u.arity();
    const auto zero_index = MultiIndex::zero(n);
    const LaurentElem a0 = u.coefficient(zero_index);
    const Rational v0 = a0.terms().front().exponent;
    // b ~ 1/a0 with its ball folded into slack at the target level
    const TateElem b = TateElem::constant(invert(a0, target.exponent()), n);
    const TateElem w = mul(b, sub(u, TateElem::constant(a0, n)));
    const TateElem minus_w = negate(w);
    // Terms of the geometric series below |a0| * target are absorbed.
    const Norm level = Norm::from_exponent(target.exponent() - v0);
    TateElem sum = TateElem::ball(p, n, level);
    TateElem pw = with_slack(TateElem::one(p, n), level);
    while (!pw.terms().empty()) {
        sum = add(sum, pw);
        pw = with_slack(mul(pw, minus_w), level);
    }
    return mul(b, sum);
}

std::string to_string(const MultiIndex &nu)
{
    std::string out;
    for (int i = 1; i <= nu.arity(); ++i) {
        if (nu[i] == 0) {
            continue;
        }
        if (!out.empty()) {
            out += "*";
        }
        out += nu.arity() == 1 ? "X" : "X" + std::to_string(i);
        if (nu[i] != 1) {
            out += "^" + std::to_string(nu[i]);
        }
    }
    return out;
}

std::string to_string(const TateElem &f)
{
    std::vector<std::pair<MultiIndex, LaurentElem>> ordered(f.terms().begin(), f.terms().end());
    std::sort(ordered.begin(), ordered.end(), [](const auto &a, const auto &b) {
        auto da = a.first.total_degree();
        auto db = b.first.total_degree();
        return da != db ? da > db : a.first > b.first;
    });
    const LaurentElem one = LaurentElem::constant(f.characteristic(), 1);
    std::string out;
    for (const auto &[nu, c] : ordered) {
        if (!out.empty()) {
            out += " + ";
        }
        if (nu.is_zero()) {
            out += "[" + to_string(c) + "]";
        } else if (c == one) {
            out += to_string(nu);
        } else {
            out += "[" + to_string(c) + "]" + to_string(nu);
        }
    }
    if (!f.is_exact()) {
        if (!out.empty()) {
            out += " + ";
        }
        out += "O(" + to_string(f.slack()) + ")";
    }
    return out.empty() ? "0" : out;
}

} // namespace tatekit
