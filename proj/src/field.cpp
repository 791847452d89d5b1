// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#include <tatekit/field.hpp>

namespace tatekit
{

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p)
{
    a %= p;
    if (a == 0) {
        fail(ErrorKind::math_domain, "division-by-zero", "0 has no inverse in F_" + std::to_string(p));
    }
    // extended Euclid on (a, p)
    std::int64_t r0 = p, r1 = a, s0 = 0, s1 = 1;
    while (r1 != 0) {
        auto q = r0 / r1;
        std::tie(r0, r1) = std::make_pair(r1, r0 - q * r1);
        std::tie(s0, s1) = std::make_pair(s1, s0 - q * s1);
    }
    return LaurentElem::reduce(s0, p);
}

void ExponentTraits<Rational>::validate(std::uint32_t p, const Rational &a)
{
    auto d = a.denominator();
    while (d % p == 0) {
        d /= p;
    }
    if (d != 1) {
        fail(ErrorKind::math_domain, "lattice-mismatch",
             "exponent " + to_string(a) + " is not in (1/" + std::to_string(p) + "^e)Z");
    }
}

std::optional<ExponentVector> ExponentTraits<ExponentVector>::divide(const ExponentVector &a, std::uint32_t p)
{
    std::vector<ExponentVector::Entry> out;
    for (const auto &[i, c] : a.entries()) {
        if (c % static_cast<std::int64_t>(p) != 0) {
            return std::nullopt;
        }
        out.emplace_back(i, c / static_cast<std::int64_t>(p));
    }
    return ExponentVector(std::move(out));
}

std::string to_string(const NormValue<Rational> &n)
{
    if (n.is_zero()) {
        return "0";
    }
    return "e^" + to_string(Rational(-n.exponent()));
}

std::string to_string(const NormValue<ExponentVector> &n)
{
    if (n.is_zero()) {
        return "0";
    }
    return "e^" + to_string(-n.exponent());
}

int lattice_level(const LaurentElem &x)
{
    const auto p = static_cast<std::int64_t>(x.characteristic());
    auto level_of = [p](const Rational &q) {
        int e = 0;
        for (auto d = q.denominator(); d > 1; d /= p) {
            ++e;
        }
        return e;
    };
    int e = 0;
    for (const auto &t : x.terms()) {
        e = std::max(e, level_of(t.exponent));
    }
    if (x.cutoff()) {
        e = std::max(e, level_of(*x.cutoff()));
    }
    return e;
}

LaurentElem invert(const LaurentElem &x, const Rational &target_cutoff)
{
    const auto p = x.characteristic();
    if (x.terms().empty()) {
        fail(ErrorKind::precision, "valuation-unknown", "cannot invert an element whose valuation is not known");
    }
    const auto &lead = x.terms().front();
    const auto a_inv = fp_inv(lead.coeff, p);
    const Rational v = lead.exponent;
    if (x.is_exact() && x.terms().size() == 1) {
        return LaurentElem::monomial(p, a_inv, -v);
    }

    Rational y_cut = target_cutoff;
    if (x.cutoff()) {
        y_cut = std::min(y_cut, *x.cutoff() - 2 * v);
    }
    // x = a t^v (1 + u) with v(u) > 0; s = 1/(1+u) is needed below y_cut + v.
    const Rational s_cut = y_cut + v;
    std::vector<LaurentElem::Term> u_terms;
    for (std::size_t i = 1; i < x.terms().size(); ++i) {
        const auto &t = x.terms()[i];
        u_terms.push_back({t.exponent - v, static_cast<std::uint32_t>(std::uint64_t{t.coeff} * a_inv % p)});
    }
    const LaurentElem u(p, std::move(u_terms));
    const LaurentElem one = LaurentElem::constant(p, 1);

    LaurentElem s(p, {}, s_cut);
    if (s_cut > Rational(0)) {
        s = LaurentElem(p, one.terms(), s_cut);
        while (true) {
            auto next = LaurentElem(p, sub(one, mul(u, s)).terms(), s_cut);
            if (next == s) {
                break;
            }
            s = std::move(next);
        }
    }
    std::vector<LaurentElem::Term> y_terms;
    for (const auto &t : s.terms()) {
        y_terms.push_back({t.exponent - v, static_cast<std::uint32_t>(std::uint64_t{t.coeff} * a_inv % p)});
    }
    return LaurentElem(p, std::move(y_terms), y_cut);
}

namespace
{

template <class Exp, class FormatExp>
std::string format_series(const BallSeries<Exp> &x, FormatExp format_exp)
{
    std::string out;
    const Exp zero = ExponentTraits<Exp>::zero();
    for (const auto &t : x.terms()) {
        if (!out.empty()) {
            out += " + ";
        }
        if (t.exponent == zero) {
            out += std::to_string(t.coeff);
            continue;
        }
        if (t.coeff != 1) {
            out += std::to_string(t.coeff) + "*";
        }
        out += format_exp(t.exponent);
    }
    if (x.cutoff()) {
        if (!out.empty()) {
            out += " + ";
        }
        out += "O(" + format_exp(*x.cutoff()) + ")";
    }
    return out.empty() ? "0" : out;
}

} // namespace

std::string to_string(const LaurentElem &x)
{
    return format_series(x, [](const Rational &e) {
        return e == Rational(1) ? std::string("t") : "t^" + to_string(e);
    });
}

std::string to_string(const HahnSumElem &x)
{
    return format_series(x, [](const ExponentVector &e) { return "t^" + to_string(e); });
}

} // namespace tatekit
