// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_FIELD_HPP
#define TATEKIT_FIELD_HPP

#include <algorithm>
#include <compare>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <tatekit/error.hpp>
#include <tatekit/gamma.hpp>
#include <tatekit/rational.hpp>

namespace tatekit
{

// Two valued-field backends share one representation: a finite sum of
// F_p-multiples of t^e plus an unknown tail of valuation >= cutoff.
//
//   Laurent: exponents in (1/p^e)Z, e >= 0. Covers k = F_p((t)) and its
//            p-power root extensions k^{1/p^e}.
//   Hahn:    exponents in Gamma (see gamma.hpp). Finite sums only; used for
//            the dense subring of the generalized series field.
//
// The norm is |x| = exp(-v(x)) with v the least exponent present.

std::uint32_t fp_inv(std::uint32_t a, std::uint32_t p);

template <class Exp>
struct ExponentTraits;

template <>
struct ExponentTraits<Rational> {
    static std::strong_ordering compare(const Rational &a, const Rational &b) { return cmp(a, b); }
    static Rational zero() { return Rational(0); }
    static Rational scale(const Rational &a, std::int64_t k) { return a * k; }
    static std::optional<Rational> divide(const Rational &a, std::uint32_t p)
    {
        return a / static_cast<std::int64_t>(p);
    }
    /// Denominator must be a power of p.
    static void validate(std::uint32_t p, const Rational &a);
    static std::string format(const Rational &a) { return to_string(a); }
};

template <>
struct ExponentTraits<ExponentVector> {
    static std::strong_ordering compare(const ExponentVector &a, const ExponentVector &b)
    {
        return gamma_compare(a, b);
    }
    static ExponentVector zero() { return {}; }
    static ExponentVector scale(const ExponentVector &a, std::int64_t k) { return a.scaled(k); }
    static std::optional<ExponentVector> divide(const ExponentVector &a, std::uint32_t p);
    static void validate(std::uint32_t, const ExponentVector &) {}
    static std::string format(const ExponentVector &a) { return to_string(a); }
};

/// A norm value e^(-v), or the norm of 0. Ordered as norms, so a larger
/// exponent compares smaller.
template <class Exp>
class NormValue
{
public:
    NormValue() = default;

    static NormValue zero() { return NormValue(); }
    static NormValue from_exponent(Exp v)
    {
        NormValue n;
        n.exponent_ = std::move(v);
        return n;
    }

    bool is_zero() const noexcept { return !exponent_.has_value(); }
    /// Precondition: !is_zero().
    const Exp &exponent() const { return *exponent_; }

    friend std::strong_ordering operator<=>(const NormValue &a, const NormValue &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return static_cast<int>(!a.is_zero()) <=> static_cast<int>(!b.is_zero());
        }
        return ExponentTraits<Exp>::compare(*b.exponent_, *a.exponent_);
    }
    friend bool operator==(const NormValue &a, const NormValue &b) { return a.exponent_ == b.exponent_; }

    friend NormValue operator*(const NormValue &a, const NormValue &b)
    {
        if (a.is_zero() || b.is_zero()) {
            return zero();
        }
        return from_exponent(*a.exponent_ + *b.exponent_);
    }

    friend NormValue max(const NormValue &a, const NormValue &b) { return (a < b) ? b : a; }
    friend NormValue min(const NormValue &a, const NormValue &b) { return (b < a) ? b : a; }

private:
    std::optional<Exp> exponent_;
};

/// `0`, or `e^x` with x = -v printed as a rational.
std::string to_string(const NormValue<Rational> &n);
std::string to_string(const NormValue<ExponentVector> &n);

template <class Exp>
struct Valuation {
    enum class Kind { exact, at_least, zero };
    Kind kind = Kind::zero;
    Exp value{};

    friend bool operator==(const Valuation &, const Valuation &) = default;
};

/// Result of a norm query on a ball: `value` is exact unless `upper_bound`,
/// in which case only |x| <= value is known.
template <class Exp>
struct NormBound {
    NormValue<Exp> value;
    bool upper_bound = false;

    friend bool operator==(const NormBound &, const NormBound &) = default;
};

template <class Exp>
class BallSeries
{
public:
    using Traits = ExponentTraits<Exp>;

    struct Term {
        Exp exponent;
        std::uint32_t coeff;
        friend bool operator==(const Term &, const Term &) = default;
    };

    /// Exact zero in characteristic p.
    explicit BallSeries(std::uint32_t p) : p_(p) { check_prime(p); }

    /// Normalizes: reduces coefficients mod p, merges equal exponents, drops
    /// zero coefficients and every term at or above the cutoff.
    BallSeries(std::uint32_t p, std::vector<Term> terms, std::optional<Exp> cutoff = std::nullopt)
        : p_(p), cutoff_(std::move(cutoff))
    {
        check_prime(p);
        normalize(std::move(terms));
    }

    static BallSeries monomial(std::uint32_t p, std::int64_t coeff, Exp exponent)
    {
        return BallSeries(p, {Term{std::move(exponent), reduce(coeff, p)}});
    }
    static BallSeries constant(std::uint32_t p, std::int64_t coeff)
    {
        return monomial(p, coeff, Traits::zero());
    }
    /// O(t^cutoff): nothing known beyond the valuation bound.
    static BallSeries ball(std::uint32_t p, Exp cutoff) { return BallSeries(p, {}, std::move(cutoff)); }

    std::uint32_t characteristic() const noexcept { return p_; }
    /// Terms in ascending exponent order, all strictly below the cutoff.
    const std::vector<Term> &terms() const noexcept { return terms_; }
    const std::optional<Exp> &cutoff() const noexcept { return cutoff_; }
    bool is_exact() const noexcept { return !cutoff_.has_value(); }
    bool is_exact_zero() const noexcept { return terms_.empty() && !cutoff_; }

    std::uint32_t coefficient(const Exp &e) const
    {
        for (const auto &t : terms_) {
            if (t.exponent == e) {
                return t.coeff;
            }
        }
        return 0;
    }

    friend bool operator==(const BallSeries &, const BallSeries &) = default;

    static std::uint32_t reduce(std::int64_t c, std::uint32_t p)
    {
        auto r = c % static_cast<std::int64_t>(p);
        return static_cast<std::uint32_t>(r < 0 ? r + p : r);
    }

private:
    static void check_prime(std::uint32_t p)
    {
        if (!is_prime(p)) {
            fail(ErrorKind::math_domain, "not-prime", std::to_string(p) + " is not prime");
        }
    }

    void normalize(std::vector<Term> raw)
    {
        if (cutoff_) {
            Traits::validate(p_, *cutoff_);
        }
        std::map<Exp, std::uint64_t> acc;
        for (auto &t : raw) {
            Traits::validate(p_, t.exponent);
            auto &slot = acc[t.exponent];
            slot = (slot + t.coeff % p_) % p_;
        }
        terms_.clear();
        for (auto &[e, c] : acc) {
            if (c == 0) {
                continue;
            }
            if (cutoff_ && Traits::compare(e, *cutoff_) != std::strong_ordering::less) {
                continue;
            }
            terms_.push_back(Term{e, static_cast<std::uint32_t>(c)});
        }
        std::sort(terms_.begin(), terms_.end(), [](const Term &a, const Term &b) {
            return Traits::compare(a.exponent, b.exponent) == std::strong_ordering::less;
        });
    }

    std::uint32_t p_;
    std::vector<Term> terms_;
    std::optional<Exp> cutoff_;
};

using LaurentElem = BallSeries<Rational>;
using HahnSumElem = BallSeries<ExponentVector>;

namespace detail
{

template <class Exp>
void require_same_backend(const BallSeries<Exp> &x, const BallSeries<Exp> &y)
{
    if (x.characteristic() != y.characteristic()) {
        fail(ErrorKind::math_domain, "backend-mismatch",
             "characteristics " + std::to_string(x.characteristic()) + " and " +
                 std::to_string(y.characteristic()) + " differ");
    }
}

template <class Exp>
std::optional<Exp> min_cutoff(const std::optional<Exp> &a, const std::optional<Exp> &b)
{
    if (!a) {
        return b;
    }
    if (!b) {
        return a;
    }
    return ExponentTraits<Exp>::compare(*a, *b) == std::strong_ordering::less ? a : b;
}

/// Lower bound on v(x): the least explicit exponent, else the cutoff; empty
/// for exact zero.
template <class Exp>
std::optional<Exp> valuation_floor(const BallSeries<Exp> &x)
{
    if (!x.terms().empty()) {
        return x.terms().front().exponent;
    }
    return x.cutoff();
}

} // namespace detail

template <class Exp>
BallSeries<Exp> add(const BallSeries<Exp> &x, const BallSeries<Exp> &y)
{
    detail::require_same_backend(x, y);
    auto terms = x.terms();
    terms.insert(terms.end(), y.terms().begin(), y.terms().end());
    return BallSeries<Exp>(x.characteristic(), std::move(terms), detail::min_cutoff(x.cutoff(), y.cutoff()));
}

template <class Exp>
BallSeries<Exp> negate(const BallSeries<Exp> &x)
{
    auto terms = x.terms();
    for (auto &t : terms) {
        t.coeff = x.characteristic() - t.coeff;
    }
    return BallSeries<Exp>(x.characteristic(), std::move(terms), x.cutoff());
}

template <class Exp>
BallSeries<Exp> sub(const BallSeries<Exp> &x, const BallSeries<Exp> &y)
{
    return add(x, negate(y));
}

template <class Exp>
BallSeries<Exp> scale(const BallSeries<Exp> &x, std::int64_t c)
{
    const auto p = x.characteristic();
    const std::uint64_t cr = BallSeries<Exp>::reduce(c, p);
    auto terms = x.terms();
    for (auto &t : terms) {
        t.coeff = static_cast<std::uint32_t>(t.coeff * cr % p);
    }
    if (cr == 0) {
        terms.clear();
    }
    return BallSeries<Exp>(p, std::move(terms), x.cutoff());
}

/// Product; the cutoff is min(v(x) + cut(y), v(y) + cut(x)) using valuation
/// floors, so every product of representatives lies in the result ball.
template <class Exp>
BallSeries<Exp> mul(const BallSeries<Exp> &x, const BallSeries<Exp> &y)
{
    detail::require_same_backend(x, y);
    const auto p = x.characteristic();
    if (x.is_exact_zero() || y.is_exact_zero()) {
        return BallSeries<Exp>(p);
    }
    std::vector<typename BallSeries<Exp>::Term> terms;
    terms.reserve(x.terms().size() * y.terms().size());
    for (const auto &a : x.terms()) {
        for (const auto &b : y.terms()) {
            terms.push_back({a.exponent + b.exponent,
                             static_cast<std::uint32_t>(static_cast<std::uint64_t>(a.coeff) * b.coeff % p)});
        }
    }
    std::optional<Exp> cut;
    const auto fx = detail::valuation_floor(x);
    const auto fy = detail::valuation_floor(y);
    if (y.cutoff()) {
        cut = detail::min_cutoff(cut, std::optional<Exp>(*fx + *y.cutoff()));
    }
    if (x.cutoff()) {
        cut = detail::min_cutoff(cut, std::optional<Exp>(*fy + *x.cutoff()));
    }
    return BallSeries<Exp>(p, std::move(terms), std::move(cut));
}

template <class Exp>
Valuation<Exp> valuation(const BallSeries<Exp> &x)
{
    using K = typename Valuation<Exp>::Kind;
    if (!x.terms().empty()) {
        return {K::exact, x.terms().front().exponent};
    }
    if (x.cutoff()) {
        return {K::at_least, *x.cutoff()};
    }
    return {K::zero, Exp{}};
}

template <class Exp>
NormBound<Exp> norm(const BallSeries<Exp> &x)
{
    auto v = valuation(x);
    switch (v.kind) {
    case Valuation<Exp>::Kind::exact:
        return {NormValue<Exp>::from_exponent(v.value), false};
    case Valuation<Exp>::Kind::at_least:
        return {NormValue<Exp>::from_exponent(v.value), true};
    default:
        return {NormValue<Exp>::zero(), false};
    }
}

/// x^p. Coefficients in F_p are fixed by Frobenius; exponents scale by p.
template <class Exp>
BallSeries<Exp> frobenius(const BallSeries<Exp> &x)
{
    using T = ExponentTraits<Exp>;
    const auto p = x.characteristic();
    auto terms = x.terms();
    for (auto &t : terms) {
        t.exponent = T::scale(t.exponent, p);
    }
    std::optional<Exp> cut;
    if (x.cutoff()) {
        cut = T::scale(*x.cutoff(), p);
    }
    return BallSeries<Exp>(p, std::move(terms), std::move(cut));
}

/// The y with y^p = x. Always defined on the Laurent backend (moving to a
/// finer lattice); on the Hahn backend every exponent must lie in p*Gamma.
template <class Exp>
BallSeries<Exp> pth_root(const BallSeries<Exp> &x)
{
    using T = ExponentTraits<Exp>;
    const auto p = x.characteristic();
    auto terms = x.terms();
    for (auto &t : terms) {
        auto d = T::divide(t.exponent, p);
        if (!d) {
            fail(ErrorKind::math_domain, "not-a-pth-power",
                 "exponent " + T::format(t.exponent) + " has nonzero signature mod " + std::to_string(p));
        }
        t.exponent = *d;
    }
    std::optional<Exp> cut;
    if (x.cutoff()) {
        auto d = T::divide(*x.cutoff(), p);
        if (!d) {
            fail(ErrorKind::math_domain, "not-a-pth-power",
                 "cutoff " + T::format(*x.cutoff()) + " is not divisible by " + std::to_string(p));
        }
        cut = *d;
    }
    return BallSeries<Exp>(p, std::move(terms), std::move(cut));
}

/// Image in the residue field F_p; requires |x| <= 1 to be certified.
template <class Exp>
std::uint32_t residue(const BallSeries<Exp> &x)
{
    using T = ExponentTraits<Exp>;
    const auto zero = T::zero();
    auto v = valuation(x);
    bool ok = false;
    switch (v.kind) {
    case Valuation<Exp>::Kind::exact:
        ok = T::compare(v.value, zero) != std::strong_ordering::less;
        break;
    case Valuation<Exp>::Kind::at_least:
        ok = T::compare(v.value, zero) == std::strong_ordering::greater;
        break;
    default:
        ok = true;
    }
    if (!ok) {
        fail(ErrorKind::math_domain, "norm-exceeds-one", "residue needs |x| <= 1 certified");
    }
    return x.coefficient(zero);
}

// Laurent-only operations.

/// Level e of the coarsest lattice (1/p^e)Z holding every exponent and the cutoff.
int lattice_level(const LaurentElem &x);

/// Inverse to precision: the returned y has explicit terms below
/// min(target_cutoff, cut(x) - 2 v(x)) and x*y = 1 within the product ball.
/// Monomials invert exactly. Throws valuation-unknown for ball-only input.
LaurentElem invert(const LaurentElem &x, const Rational &target_cutoff);

/// `1 + 2*t^3 + O(t^5)`; `0` for exact zero.
std::string to_string(const LaurentElem &x);
/// `1 + 2*t^[1:-1] + O(t^[2:1])`.
std::string to_string(const HahnSumElem &x);

} // namespace tatekit

#endif
