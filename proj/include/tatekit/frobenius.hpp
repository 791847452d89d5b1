// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_FROBENIUS_HPP
#define TATEKIT_FROBENIUS_HPP

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include <tatekit/tate.hpp>

namespace tatekit
{

/// Continuous k-linear map k^{1/p} -> k for k = F_p((t^{1/p^level})):
/// x -> phi(c x), where phi keeps the terms whose exponent already lies in
/// the coarser lattice. Untwisted, phi(1) = 1 and |phi(x)| <= |x|.
struct SplittingMap {
    std::uint32_t p = 2;
    int level = 0;
    std::optional<LaurentElem> twist;
};

SplittingMap phi_standard(std::uint32_t p, std::optional<LaurentElem> twist = std::nullopt);

/// Throws lattice-mismatch when x (or the twist) is not in k^{1/p}.
LaurentElem phi_apply(const SplittingMap &phi, const LaurentElem &x);

/// Upper bound on |twist| as a norm multiplier (1 when untwisted).
Norm twist_norm(const SplittingMap &phi);

/// Frobenius on T_n: f -> f^p, coefficientwise.
TateElem frobenius(const TateElem &f);

/// Phi(sum a_nu X^nu) = sum over nu in pZ^n of phi(a_nu^{1/p}) X^{nu/p}.
/// A slack s maps to |twist| * s^{1/p}.
TateElem lift_splitting_tate(const SplittingMap &phi, const TateElem &f);

/// A p^{-1}-linear map built from the constructive shapes only: the lift Phi
/// of phi on T_n, precomposed with multiplication by `inner_twist`,
/// optionally conjugated by sigma, optionally restricted to k{X_n} and
/// projected back there, with an input pre-multiplier and an output scale.
///
///   f -> post_scale * pi( sigma( Phi( inner_twist * sigma^{-1}( outer_twist * f ) ) ) )
struct PLinearMap {
    SplittingMap phi;
    int arity = 1;
    TateElem inner_twist;
    std::optional<AutomorphismSpec> conjugation;
    bool project = false;
    TateElem outer_twist;
    TateElem post_scale;

    /// Arity of accepted inputs: 1 when projecting, else `arity`.
    int domain_arity() const noexcept { return project ? 1 : arity; }
};

/// The plain lift Phi on T_n.
PLinearMap lift_map(const SplittingMap &phi, int arity);

/// `lift` precomposed with multiplication by `a` (arity n).
PLinearMap pretwisted(const PLinearMap &lift, const TateElem &a);

TateElem evaluate(const PLinearMap &map, const TateElem &f);

/// pi o sigma o Phi o sigma^{-1} restricted to k{X_n}.
PLinearMap reduce_to_t1(const PLinearMap &lift, const AutomorphismSpec &sigma);

/// Evaluates the reduced map on f, given either in arity 1 or as an arity-n
/// element involving X_n only.
TateElem reduce_to_t1(const PLinearMap &lift, const AutomorphismSpec &sigma, const TateElem &f);

/// Picks sigma making lift(1) X_n-distinguished; requires lift(1) != 0.
AutomorphismSpec choose_reduction(const PLinearMap &lift);

struct UnitalMap {
    PLinearMap map;
    /// Monomial x with map(1) = psi(x) * psi(x)^{-1} = 1.
    TateElem witness;
};

/// Searches monomials x = t^a X^b (|a|, b <= search_bound) for psi(x) a unit
/// and returns y -> psi(x y) psi(x)^{-1}. An x with psi(x) = 1 is preferred;
/// otherwise the first unit in the order b = 0.., a = 0, -1, 1, -2, ....
/// Non-monomial unit inverses are computed to `inverse_slack`.
std::optional<UnitalMap> normalize_to_unital(const PLinearMap &psi, std::int64_t search_bound,
                                             const Norm &inverse_slack = Norm::from_exponent(Rational(32)));

/// |a_nu| r^nu <= M for every explicit coefficient, with radii and bound
/// kept on the exponential scale: r_j = e^{log_radii[j]}, M = e^{log_bound}.
struct ConvergenceCertificate {
    std::vector<Rational> log_radii;
    Rational log_bound;

    friend bool operator==(const ConvergenceCertificate &, const ConvergenceCertificate &) = default;
};

bool verify_certificate(const TateElem &f, const ConvergenceCertificate &cert);

struct CertifiedSeries {
    TateElem series;
    ConvergenceCertificate cert;
};

/// Applies Phi and transforms the certificate to (r, |twist| M^{1/p}), then
/// re-verifies it. Throws invalid-certificate if `cert` does not hold for f.
CertifiedSeries lift_splitting_convergent(const SplittingMap &phi, const TateElem &f,
                                          const ConvergenceCertificate &cert);

/// Norm exponents v_{i,j} of the coefficients b_{i,j} (|b| = e^{-v}); absent
/// entries are zero coefficients. floors[i] is an exponent bound with
/// v_{i,0} <= floors[i], i.e. |b_{i,0}| >= e^{-floors[i]}.
class NormTable
{
public:
    NormTable(std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries, std::vector<Rational> floors);
    /// Floors default to the v_{i,0} themselves.
    explicit NormTable(std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries);

    std::optional<Rational> exponent(std::uint32_t i, std::uint32_t j) const;
    std::uint32_t rows() const noexcept { return rows_; }
    const std::vector<Rational> &floors() const noexcept { return floors_; }
    const std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> &entries() const noexcept { return entries_; }

private:
    std::map<std::pair<std::uint32_t, std::uint32_t>, Rational> entries_;
    std::vector<Rational> floors_;
    std::uint32_t rows_ = 0;
};

/// CSV with header `i,j,v`.
NormTable read_norm_table_csv(std::istream &in, std::optional<std::vector<Rational>> floors = std::nullopt);

struct DiagonalStep {
    std::uint32_t i = 0;
    std::uint32_t m = 0;
    /// v_{m_i,0}: the X^i coefficient of the assembled image has exactly this norm.
    Rational coefficient_exponent;
    /// floors[m_i] >= coefficient_exponent: the certified lower bound.
    Rational floor_exponent;
    /// min over r < i of v_{m_r, i-r}; empty when those coefficients are all zero.
    std::optional<Rational> dominated_exponent;
};

/// m_0 = 0, then each m_i is the least m > m_{i-1} with
/// max_{r<i} |b_{m_r,i-r}| < |b_{m,0}|. Stops when the table runs out; with
/// `count`, fewer than `count` steps raises table-exhausted.
std::vector<DiagonalStep> select_diagonal_indices(const NormTable &table,
                                                  std::optional<std::size_t> count = std::nullopt);

} // namespace tatekit

#endif
