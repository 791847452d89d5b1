// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/frobenius.hpp>

#include <istream>
#include <sstream>
#include <string>

namespace tatekit
{

namespace
{

std::int64_t ipow(std::int64_t base, int e)
{
    std::int64_t r = 1;
    while (e-- > 0) {
        r *= base;
    }
    return r;
}

bool in_lattice(const Rational &q, std::int64_t scale)
{
    return (q * scale).denominator() == 1;
}

void check_level(const SplittingMap &phi, const LaurentElem &x, const char *what)
{
    if (x.characteristic() != phi.p) {
        fail(ErrorKind::math_domain, "backend-mismatch", std::string(what) + " has the wrong characteristic");
    }
    if (lattice_level(x) > phi.level + 1) {
        fail(ErrorKind::math_domain, "lattice-mismatch",
             std::string(what) + " " + to_string(x) + " is not in k^{1/p} at level " + std::to_string(phi.level));
    }
}

TateElem identity_like(const PLinearMap &m, const TateElem &x, int arity)
{
    return x.arity() == arity ? x : TateElem::one(m.phi.p, arity);
}

} // namespace

SplittingMap phi_standard(std::uint32_t p, std::optional<LaurentElem> twist)
{
    SplittingMap phi{p, 0, std::move(twist)};
    if (!is_prime(p)) {
        fail(ErrorKind::math_domain, "not-prime", std::to_string(p) + " is not prime");
    }
    if (phi.twist) {
        check_level(phi, *phi.twist, "twist");
    }
    return phi;
}

LaurentElem phi_apply(const SplittingMap &phi, const LaurentElem &x)
{
    check_level(phi, x, "argument");
    LaurentElem y = x;
    if (phi.twist) {
        check_level(phi, *phi.twist, "twist");
        y = mul(*phi.twist, x);
    }
    const std::int64_t scale = ipow(phi.p, phi.level);
    std::vector<LaurentElem::Term> kept;
    for (const auto &t : y.terms()) {
        if (in_lattice(t.exponent, scale)) {
            kept.push_back(t);
        }
    }
    std::optional<Rational> cut;
    if (y.cutoff()) {
        cut = Rational(ceil_of(*y.cutoff() * scale), scale);
    }
    return LaurentElem(phi.p, std::move(kept), cut);
}

Norm twist_norm(const SplittingMap &phi)
{
    if (!phi.twist) {
        return Norm::from_exponent(Rational(0));
    }
    return norm(*phi.twist).value;
}

TateElem frobenius(const TateElem &f)
{
    const auto p = f.characteristic();
    TateElem::Terms terms;
    for (const auto &[nu, c] : f.terms()) {
        auto e = nu.exps;
        for (auto &x : e) {
            x *= p;
        }
        terms.emplace(MultiIndex(std::move(e)), frobenius(c));
    }
    Norm slack = f.slack().is_zero() ? Norm::zero() : Norm::from_exponent(f.slack().exponent() * Rational(p));
    return TateElem(p, f.arity(), std::move(terms), slack);
}

TateElem lift_splitting_tate(const SplittingMap &phi, const TateElem &f)
{
    if (f.characteristic() != phi.p) {
        fail(ErrorKind::math_domain, "backend-mismatch", "characteristics differ");
    }
    TateElem::Terms terms;
    for (const auto &[nu, c] : f.terms()) {
        bool divisible = true;
        auto e = nu.exps;
        for (auto &x : e) {
            divisible = divisible && x % phi.p == 0;
            x /= phi.p;
        }
        if (!divisible) {
            continue;
        }
        auto image = phi_apply(phi, pth_root(c));
        if (!image.is_exact_zero()) {
            terms.emplace(MultiIndex(std::move(e)), std::move(image));
        }
    }
    Norm slack = Norm::zero();
    if (!f.slack().is_zero()) {
        slack = twist_norm(phi) * Norm::from_exponent(f.slack().exponent() / Rational(phi.p));
    }
    return TateElem(phi.p, f.arity(), std::move(terms), slack);
}

PLinearMap lift_map(const SplittingMap &phi, int arity)
{
    if (arity < 1) {
        fail(ErrorKind::math_domain, "arity", "arity must be at least 1");
    }
    const auto one = TateElem::one(phi.p, arity);
    return PLinearMap{phi, arity, one, std::nullopt, false, one, one};
}

PLinearMap pretwisted(const PLinearMap &lift, const TateElem &a)
{
    if (a.arity() != lift.arity || a.characteristic() != lift.phi.p) {
        fail(ErrorKind::math_domain, "arity-mismatch", "twist must live in the map's Tate algebra");
    }
    PLinearMap out = lift;
    out.inner_twist = mul(a, lift.inner_twist);
    return out;
}

TateElem evaluate(const PLinearMap &map, const TateElem &f)
{
    if (f.arity() != map.domain_arity() || f.characteristic() != map.phi.p) {
        fail(ErrorKind::math_domain, "arity-mismatch",
             "map expects arity " + std::to_string(map.domain_arity()) + ", got " + std::to_string(f.arity()));
    }
    const int n = map.arity;
    TateElem y = mul(identity_like(map, map.outer_twist, f.arity()), f);
    if (map.project) {
        y = embed_axis(y, n, n);
    }
    if (map.conjugation) {
        y = apply_automorphism(*map.conjugation, y, Direction::inverse);
    }
    y = mul(map.inner_twist, y);
    TateElem w = lift_splitting_tate(map.phi, y);
    if (map.conjugation) {
        w = apply_automorphism(*map.conjugation, w, Direction::forward);
    }
    if (map.project) {
        w = project_kill_vars(w, n);
    }
    return mul(identity_like(map, map.post_scale, w.arity()), w);
}

PLinearMap reduce_to_t1(const PLinearMap &lift, const AutomorphismSpec &sigma)
{
    if (lift.project || lift.conjugation) {
        fail(ErrorKind::math_domain, "composed-map", "reduction expects a lift, possibly pretwisted");
    }
    if (sigma.arity() != lift.arity) {
        fail(ErrorKind::math_domain, "arity-mismatch", "automorphism arity differs from the lift");
    }
    PLinearMap out = lift;
    out.conjugation = sigma;
    out.project = true;
    out.outer_twist = TateElem::one(lift.phi.p, 1);
    out.post_scale = TateElem::one(lift.phi.p, 1);
    return out;
}

TateElem reduce_to_t1(const PLinearMap &lift, const AutomorphismSpec &sigma, const TateElem &f)
{
    const PLinearMap reduced = reduce_to_t1(lift, sigma);
    if (f.arity() == 1) {
        return evaluate(reduced, f);
    }
    if (f.arity() != lift.arity) {
        fail(ErrorKind::math_domain, "arity-mismatch", "input arity differs from the lift");
    }
    for (const auto &[nu, c] : f.terms()) {
        for (int i = 1; i < f.arity(); ++i) {
            if (nu[i] != 0) {
                fail(ErrorKind::math_domain, "not-in-last-variable", "input must involve X_n only");
            }
        }
    }
    return evaluate(reduced, project_kill_vars(f, f.arity()));
}

AutomorphismSpec choose_reduction(const PLinearMap &lift)
{
    const TateElem at_one = evaluate(lift, TateElem::one(lift.phi.p, lift.domain_arity()));
    if (at_one.terms().empty()) {
        fail(ErrorKind::math_domain, "zero-image", "the map vanishes at 1");
    }
    if (lift.arity == 1) {
        return AutomorphismSpec{};
    }
    return find_distinguishing_automorphism({at_one});
}

std::optional<UnitalMap> normalize_to_unital(const PLinearMap &psi, std::int64_t search_bound, const Norm &inverse_slack)
{
    if (psi.domain_arity() != 1) {
        fail(ErrorKind::math_domain, "arity-mismatch", "unital normalization needs a map on T_1");
    }
    const auto p = psi.phi.p;
    const TateElem one = TateElem::one(p, 1);
    std::optional<std::pair<TateElem, TateElem>> first_unit;
    for (std::int64_t b = 0; b <= search_bound; ++b) {
        for (std::int64_t k = 0; k <= 2 * search_bound; ++k) {
            const std::int64_t a = (k % 2 == 0) ? k / 2 : -(k + 1) / 2;
            const auto x = TateElem::monomial(LaurentElem::monomial(p, 1, Rational(a)),
                                              MultiIndex({static_cast<std::uint32_t>(b)}));
            const TateElem y = evaluate(psi, x);
            if (y == one) {
                PLinearMap out = psi;
                out.outer_twist = mul(x, psi.outer_twist);
                return UnitalMap{out, x};
            }
            if (!first_unit) {
                bool unit = false;
                try {
                    unit = is_unit(y);
                } catch (const Error &e) {
                    if (e.kind() != ErrorKind::precision) {
                        throw;
                    }
                }
                if (unit) {
                    first_unit.emplace(x, y);
                }
            }
        }
    }
    if (!first_unit) {
        return std::nullopt;
    }
    const auto &[x, y] = *first_unit;
    TateElem inv(p, 1);
    if (y.is_exact() && y.terms().size() == 1 && y.terms().begin()->second.terms().size() == 1 &&
        y.terms().begin()->first.is_zero()) {
        inv = TateElem::constant(invert(y.terms().begin()->second, Rational(0)), 1);
    } else {
        inv = unit_inverse(y, inverse_slack);
    }
    PLinearMap out = psi;
    out.outer_twist = mul(x, psi.outer_twist);
    out.post_scale = mul(inv, psi.post_scale);
    return UnitalMap{out, x};
}

bool verify_certificate(const TateElem &f, const ConvergenceCertificate &cert)
{
    if (cert.log_radii.size() != static_cast<std::size_t>(f.arity())) {
        fail(ErrorKind::math_domain, "arity-mismatch", "certificate radii do not match the arity");
    }
    for (const auto &[nu, c] : f.terms()) {
        const auto n = norm(c).value;
        if (n.is_zero()) {
            continue;
        }
        Rational log_size = -n.exponent();
        for (int j = 1; j <= f.arity(); ++j) {
            log_size += cert.log_radii[static_cast<std::size_t>(j - 1)] * static_cast<std::int64_t>(nu[j]);
        }
        if (log_size > cert.log_bound) {
            return false;
        }
    }
    return true;
}

CertifiedSeries lift_splitting_convergent(const SplittingMap &phi, const TateElem &f, const ConvergenceCertificate &cert)
{
    if (!f.is_exact()) {
        fail(ErrorKind::precision, "inexact-input", "convergent lift needs a finite-support series");
    }
    if (!verify_certificate(f, cert)) {
        fail(ErrorKind::math_domain, "invalid-certificate", "certificate fails on an explicit coefficient");
    }
    CertifiedSeries out{lift_splitting_tate(phi, f), cert};
    out.cert.log_bound = cert.log_bound / Rational(phi.p);
    const Norm tw = twist_norm(phi);
    if (!tw.is_zero()) {
        out.cert.log_bound -= tw.exponent();
    }
    if (!verify_certificate(out.series, out.cert)) {
        fail(ErrorKind::internal, "certificate-transform", "transformed certificate does not re-verify");
    }
    return out;
}

NormTable::NormTable(std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries, std::vector<Rational> floors)
    : entries_(std::move(entries)), floors_(std::move(floors))
{
    for (const auto &[ij, v] : entries_) {
        rows_ = std::max(rows_, ij.first + 1);
    }
    if (floors_.size() < rows_) {
        fail(ErrorKind::usage, "floor-count",
             "need " + std::to_string(rows_) + " floors, got " + std::to_string(floors_.size()));
    }
    rows_ = static_cast<std::uint32_t>(floors_.size());
}

NormTable::NormTable(std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries)
    : entries_(std::move(entries))
{
    for (const auto &[ij, v] : entries_) {
        rows_ = std::max(rows_, ij.first + 1);
    }
    for (std::uint32_t i = 0; i < rows_; ++i) {
        auto v = exponent(i, 0);
        if (!v) {
            fail(ErrorKind::math_domain, "precondition", "row " + std::to_string(i) + " has a zero b_{i,0}");
        }
        floors_.push_back(*v);
    }
}

std::optional<Rational> NormTable::exponent(std::uint32_t i, std::uint32_t j) const
{
    auto it = entries_.find({i, j});
    if (it == entries_.end()) {
        return std::nullopt;
    }
    return it->second;
}

NormTable read_norm_table_csv(std::istream &in, std::optional<std::vector<Rational>> floors)
{
    std::string line;
    int line_no = 0;
    auto syntax = [&](const std::string &msg) {
        fail(ErrorKind::usage, "syntax", "line " + std::to_string(line_no) + ": " + msg);
    };
    bool header = false;
    std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') {
            line.pop_back();
        }
        if (line.find_first_not_of(" \t") == std::string::npos) {
            continue;
        }
        if (!header) {
            if (line != "i,j,v") {
                syntax("expected header `i,j,v`");
            }
            header = true;
            continue;
        }
        std::istringstream fields(line);
        std::string a, b, v;
        if (!std::getline(fields, a, ',') || !std::getline(fields, b, ',') || !std::getline(fields, v) ||
            v.find(',') != std::string::npos) {
            syntax("expected three fields");
        }
        std::uint32_t i = 0, j = 0;
        try {
            std::size_t pos = 0;
            i = static_cast<std::uint32_t>(std::stoul(a, &pos));
            if (pos != a.size()) {
                syntax("bad index `" + a + "`");
            }
            j = static_cast<std::uint32_t>(std::stoul(b, &pos));
            if (pos != b.size()) {
                syntax("bad index `" + b + "`");
            }
        } catch (const std::logic_error &) {
            syntax("bad index");
        }
        if (!entries.emplace(std::make_pair(i, j), parse_rational(v)).second) {
            syntax("duplicate entry");
        }
    }
    if (!header) {
        syntax("missing header");
    }
    if (floors) {
        return NormTable(std::move(entries), std::move(*floors));
    }
    return NormTable(std::move(entries));
}

std::vector<DiagonalStep> select_diagonal_indices(const NormTable &table, std::optional<std::size_t> count)
{
    const auto &floors = table.floors();
    const std::uint32_t rows = table.rows();
    for (std::uint32_t i = 0; i < rows; ++i) {
        auto v = table.exponent(i, 0);
        if (!v || *v > floors[i]) {
            fail(ErrorKind::math_domain, "precondition",
                 "row " + std::to_string(i) + " violates |b_{i,0}| >= its floor");
        }
        if (i > 0 && floors[i] > floors[i - 1]) {
            fail(ErrorKind::math_domain, "precondition", "growth floors must be non-decreasing in norm");
        }
    }
    if (rows < 2 || !(floors.back() < floors.front())) {
        fail(ErrorKind::math_domain, "precondition", "growth floors do not increase");
    }

    std::vector<DiagonalStep> steps;
    steps.push_back(DiagonalStep{0, 0, *table.exponent(0, 0), floors[0], std::nullopt});
    while (!count || steps.size() < *count) {
        const auto i = static_cast<std::uint32_t>(steps.size());
        std::optional<Rational> dominated;
        for (std::uint32_t r = 0; r < i; ++r) {
            auto v = table.exponent(steps[r].m, i - r);
            if (v && (!dominated || *v < *dominated)) {
                dominated = v;
            }
        }
        std::optional<std::uint32_t> pick;
        for (std::uint32_t m = steps.back().m + 1; m < rows; ++m) {
            if (!dominated || *table.exponent(m, 0) < *dominated) {
                pick = m;
                break;
            }
        }
        if (!pick) {
            break;
        }
        steps.push_back(DiagonalStep{i, *pick, *table.exponent(*pick, 0), floors[*pick], dominated});
    }
    if (count && steps.size() < *count) {
        fail(ErrorKind::search_exhausted, "table-exhausted",
             "only " + std::to_string(steps.size()) + " of " + std::to_string(*count) + " indices fit in the table");
    }
    return steps;
}

} // namespace tatekit
