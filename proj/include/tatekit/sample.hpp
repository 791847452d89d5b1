// Licensed under the Apache License, Version 2.0, see LICENSE for details.
// SPDX-License-Identifier: Apache-2.0

#ifndef TATEKIT_SAMPLE_HPP
#define TATEKIT_SAMPLE_HPP

#include <cstdint>
#include <random>

#include <tatekit/field.hpp>
#include <tatekit/tate.hpp>

namespace tatekit::sample
{

using Rng = std::mt19937_64;

/// Random exact Laurent element: up to `max_terms` terms with exponents
/// a/p^level, a in [lo*p^level, hi*p^level]. May be zero.
LaurentElem laurent(Rng &rng, std::uint32_t p, int max_terms = 3, std::int64_t lo = -2, std::int64_t hi = 3,
                    int level = 0);

/// Same, but never zero.
LaurentElem nonzero_laurent(Rng &rng, std::uint32_t p, int max_terms = 3, std::int64_t lo = -2, std::int64_t hi = 3,
                            int level = 0);

/// Random exact finite-support Tate element with total degree per variable
/// <= max_degree and Laurent coefficients as above.
TateElem tate(Rng &rng, std::uint32_t p, int arity, int max_terms = 4, std::uint32_t max_degree = 3,
              int coeff_terms = 2, std::int64_t lo = -2, std::int64_t hi = 3, int level = 0);

/// Random Hahn sum over the first `gen_count` generators with coordinates
/// in [-bound, bound].
HahnSumElem hahn(Rng &rng, std::uint32_t p, int gen_count = 3, int max_terms = 3, std::int64_t bound = 3);

} // namespace tatekit::sample

#endif
