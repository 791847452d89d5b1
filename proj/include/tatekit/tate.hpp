// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_TATE_HPP
#define TATEKIT_TATE_HPP

#include <compare>
#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include <tatekit/field.hpp>

namespace tatekit
{

using Norm = NormValue<Rational>;

/// Exponent vector nu of a monomial X^nu in n variables.
struct MultiIndex {
    std::vector<std::uint32_t> exps;

    MultiIndex() = default;
    explicit MultiIndex(std::vector<std::uint32_t> e) : exps(std::move(e)) {}
    static MultiIndex zero(int arity) { return MultiIndex(std::vector<std::uint32_t>(static_cast<std::size_t>(arity), 0)); }
    /// X_axis^power, axis 1-based.
    static MultiIndex axis_power(int arity, int axis, std::uint32_t power);

    int arity() const noexcept { return static_cast<int>(exps.size()); }
    std::uint32_t operator[](int axis) const { return exps[static_cast<std::size_t>(axis - 1)]; }
    std::uint64_t total_degree() const;
    bool is_zero() const;

    friend MultiIndex operator+(const MultiIndex &a, const MultiIndex &b);
    friend bool operator==(const MultiIndex &, const MultiIndex &) = default;
    friend auto operator<=>(const MultiIndex &, const MultiIndex &) = default;
};

/// Restricted power series over the Laurent backend, held as a finite table
/// of exact coefficients plus a Gauss-norm slack bound: the element is
/// sum(terms) + delta with ||delta|| <= slack. Slack zero means exact.
///
/// Normal form: coefficient balls are moved into the slack, and every
/// coefficient term of norm <= slack is absorbed, so each explicit
/// coefficient has norm strictly above the slack.
class TateElem
{
public:
    using Terms = std::map<MultiIndex, LaurentElem>;

    TateElem(std::uint32_t p, int arity);
    TateElem(std::uint32_t p, int arity, Terms terms, Norm slack = Norm::zero());

    static TateElem constant(const LaurentElem &c, int arity);
    static TateElem monomial(const LaurentElem &c, MultiIndex nu);
    static TateElem one(std::uint32_t p, int arity);
    /// Slack-only element O(slack).
    static TateElem ball(std::uint32_t p, int arity, Norm slack);

    std::uint32_t characteristic() const noexcept { return p_; }
    int arity() const noexcept { return arity_; }
    const Terms &terms() const noexcept { return terms_; }
    const Norm &slack() const noexcept { return slack_; }
    bool is_exact() const noexcept { return slack_.is_zero(); }
    bool is_exact_zero() const noexcept { return terms_.empty() && slack_.is_zero(); }

    /// Coefficient of X^nu (exact zero if absent).
    LaurentElem coefficient(const MultiIndex &nu) const;

    friend bool operator==(const TateElem &, const TateElem &) = default;

private:
    void normalize();

    std::uint32_t p_;
    int arity_;
    Terms terms_;
    Norm slack_;
};

TateElem add(const TateElem &f, const TateElem &g);
TateElem negate(const TateElem &f);
TateElem sub(const TateElem &f, const TateElem &g);
/// Slack: max(s_f ||g||, s_g ||f||, s_f s_g).
TateElem mul(const TateElem &f, const TateElem &g);
TateElem scale(const TateElem &f, const LaurentElem &c);
TateElem power(const TateElem &f, std::uint32_t k);
/// Same element with slack raised to at least `slack`, renormalized.
TateElem with_slack(const TateElem &f, const Norm &slack);

/// Max norm over the explicit coefficients (zero if there are none).
Norm explicit_norm(const TateElem &f);

/// Gauss norm. Exact for normalized elements with at least one explicit
/// coefficient; Zero for exact zero; undecidable-at-precision for slack-only input.
Norm gauss_norm(const TateElem &f);

/// Unit test: the constant term strictly dominates every other coefficient.
bool is_unit(const TateElem &f);

struct DistinguishedReport {
    std::uint32_t order = 0;
    Norm dominant_norm;
    bool is_distinguished = false;

    friend bool operator==(const DistinguishedReport &, const DistinguishedReport &) = default;
};

/// Writes g = sum g_nu X_axis^nu over the remaining variables and reports the
/// largest nu whose coefficient attains the Gauss norm, plus whether that
/// coefficient is a unit.
DistinguishedReport distinguished_order(const TateElem &g, int axis);

/// Coefficient g_nu of X_axis^nu, as an element of T_{n-1} in the remaining variables.
TateElem axis_coefficient(const TateElem &g, int axis, std::uint32_t nu);

/// Largest N with |a_N| = ||f||, for arity 1.
std::uint32_t euclid_degree(const TateElem &f);

/// sigma: X_i -> X_i + X_n^{alpha_i} for i < n, X_n -> X_n.
struct AutomorphismSpec {
    std::vector<std::uint32_t> alphas;

    int arity() const noexcept { return static_cast<int>(alphas.size()) + 1; }
    friend bool operator==(const AutomorphismSpec &, const AutomorphismSpec &) = default;
};

enum class Direction { forward, inverse };

TateElem apply_automorphism(const AutomorphismSpec &sigma, const TateElem &f, Direction direction = Direction::forward);

/// Finds alphas making every input X_n-distinguished. Tries the identity,
/// then alpha_i = c^(n-i) for c = 1, 2, ... up to 1 + D^n, D the largest
/// total degree among the inputs; each candidate is verified.
AutomorphismSpec find_distinguishing_automorphism(const std::vector<TateElem> &gs);

/// Sends X_i to 0 for i != keep_axis and returns the arity-1 result.
TateElem project_kill_vars(const TateElem &f, int keep_axis);

/// Views an arity-1 element as an element of T_n in the variable X_axis.
TateElem embed_axis(const TateElem &f, int arity, int axis);

/// Inverse of a unit to within `target` slack.
TateElem unit_inverse(const TateElem &u, const Norm &target);

/// `[1 + t]X1^2*X2 + [t^2] + O(e^-3)`; the variable is `X` when arity is 1.
std::string to_string(const TateElem &f);
std::string to_string(const MultiIndex &nu);

} // namespace tatekit

#endif
