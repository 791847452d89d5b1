// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_WEIERSTRASS_HPP
#define TATEKIT_WEIERSTRASS_HPP

#include <tatekit/tate.hpp>

namespace tatekit
{

struct DivisionResult {
    TateElem quotient;
    TateElem remainder;
    /// Bound on ||f - (q g + r)||.
    Norm residual;
};

/// Euclidean division in T_1: f = q g + r up to `residual` <= target_slack,
/// with r a polynomial of degree < euclid_degree(g).
///
/// g is scaled by a monomial so its dominant coefficient has leading term 1,
/// then split as P + h with P monic of degree s = euclid_degree(g) and
/// ||h|| < 1. Each round divides the current tail by P and feeds -q h back
/// in, so the tail norm drops by at least ||h|| per round. The round cap is
/// ceil((target - v(f)) / v(h)) + 8.
///
/// Throws zero-divisor for g = 0 and nonconvergence-at-bound at the cap.
DivisionResult w_divide(const TateElem &f, const TateElem &g, const Norm &target_slack);

/// gcd by repeated division, normalized so a unit gcd is 1 and otherwise the
/// coefficient at the Euclidean degree has leading term 1.
TateElem w_gcd(const TateElem &f, const TateElem &g, const Norm &target_slack);

/// Division of a finite-support f by a monic polynomial of degree s. Exact.
std::pair<TateElem, TateElem> divide_by_monic(const TateElem &f, const TateElem &monic, std::uint32_t s);

} // namespace tatekit

#endif
