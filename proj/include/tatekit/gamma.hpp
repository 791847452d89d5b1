// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_GAMMA_HPP
#define TATEKIT_GAMMA_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include <tatekit/rational.hpp>

namespace tatekit
{

// The exponent group Gamma = Z{r_1, r_2, ...} inside the reals, with
// r_i = 1/sqrt(p_i) and p_i the i-th prime. The r_i are positive, strictly
// decreasing, tend to 0 and are linearly independent over Q, so the real
// order on Gamma is decidable: two elements are equal exactly when their
// integer coordinates agree, and otherwise interval refinement separates them.

/// The i-th prime, 1-based (nth_prime(1) == 2).
std::uint32_t nth_prime(int index);

bool is_prime(std::uint64_t n);

/// Element of Gamma: finitely many nonzero integer coordinates, keyed by
/// 1-based generator index and kept sorted by index.
class ExponentVector
{
public:
    using Entry = std::pair<int, std::int64_t>;

    ExponentVector() = default;
    explicit ExponentVector(std::vector<Entry> entries);

    /// c * e_index
    static ExponentVector generator(int index, std::int64_t c = 1);

    const std::vector<Entry> &entries() const noexcept { return entries_; }
    std::int64_t coord(int index) const;
    bool is_zero() const noexcept { return entries_.empty(); }
    /// Largest generator index with a nonzero coordinate, 0 for the zero vector.
    int max_index() const noexcept { return entries_.empty() ? 0 : entries_.back().first; }
    /// Sum of |coords|.
    std::int64_t l1_norm() const;

    ExponentVector operator-() const;
    ExponentVector scaled(std::int64_t factor) const;

    friend ExponentVector operator+(const ExponentVector &a, const ExponentVector &b);
    friend ExponentVector operator-(const ExponentVector &a, const ExponentVector &b);

    // Structural (coordinate) comparison. Equality coincides with equality of
    // real values; the ordering is only a container key, never the real order.
    friend bool operator==(const ExponentVector &, const ExponentVector &) = default;
    friend auto operator<=>(const ExponentVector &, const ExponentVector &) = default;

private:
    std::vector<Entry> entries_;
};

/// `[i1:c1, i2:c2]`, ascending indices; `[]` for zero.
std::string to_string(const ExponentVector &v);

/// Closed interval with exact rational endpoints, lo <= hi.
struct RealInterval {
    BigRational lo;
    BigRational hi;

    bool contains(const BigRational &x) const { return lo <= x && x <= hi; }
    BigRational width() const { return hi - lo; }
};

/// Enclosure of the real value of `a` whose width is at most `width` (> 0).
RealInterval gamma_interval(const ExponentVector &a, const BigRational &width);

/// Enclosure from `bits` bits of each 1/sqrt(p_i); width <= l1_norm / 2^bits.
RealInterval gamma_interval_bits(const ExponentVector &a, unsigned bits);

/// Real-order comparison. Equal iff the coordinates coincide; otherwise the
/// enclosure of a - b is halved until it excludes 0 (at most 256 rounds,
/// after which an internal error is raised).
std::strong_ordering gamma_compare(const ExponentVector &a, const ExponentVector &b);

/// Sign of the real value of `a` relative to 0.
std::strong_ordering gamma_sign(const ExponentVector &a);

/// Image of an element in Gamma / p Gamma: coordinates reduced into {0..p-1},
/// zero residues dropped.
class CosetSignature
{
public:
    CosetSignature() = default;
    CosetSignature(const ExponentVector &v, std::uint32_t p);

    const std::vector<std::pair<int, std::uint32_t>> &residues() const noexcept { return residues_; }
    bool is_zero() const noexcept { return residues_.empty(); }

    friend bool operator==(const CosetSignature &, const CosetSignature &) = default;
    friend auto operator<=>(const CosetSignature &, const CosetSignature &) = default;

private:
    std::vector<std::pair<int, std::uint32_t>> residues_;
};

CosetSignature gamma_mod_p(const ExponentVector &a, std::uint32_t p);

std::string to_string(const CosetSignature &s);

/// Search for v in p*Gamma with support in the first `gen_count` generators,
/// |coords| <= coeff_bound and |value(v) - target| < eps, certified by an
/// enclosure of width eps/4. Shells of growing max-coordinate are scanned in
/// order; inside a shell the lexicographically smallest hit wins.
std::optional<ExponentVector> approximate_in_pgamma(const Rational &target, const Rational &eps, std::uint32_t p,
                                                    int gen_count, std::int64_t coeff_bound);

/// Representatives s_1..s_count of the cosets of e_1..e_count modulo p*Gamma,
/// each with certified value in (-1, 1). Throws Error(search_exhausted) if a
/// shift into (-1, 1) cannot be found.
std::vector<ExponentVector> bounded_coset_reps(std::uint32_t p, int count);

/// True when the enclosure of `a` is certified to lie inside the open interval (lo, hi).
bool certified_inside(const ExponentVector &a, const BigRational &lo, const BigRational &hi);

} // namespace tatekit

#endif
