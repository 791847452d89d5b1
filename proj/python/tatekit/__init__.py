# Licensed under the Apache License, Version 2.0, see LICENSE for details.
# SPDX-License-Identifier: Apache-2.0
"""Exact arithmetic for valued fields of characteristic p, Tate algebras and Frobenius splittings.

Norms are passed as the exponent v of e^-v (a Fraction), with None for the zero norm.
"""

from ._core import (
    Error,
    Hahn,
    Laurent,
    Tate,
    automorph,
    certify,
    divide,
    find_distinguishing_automorphism,
    gabber_distance,
    gabber_reps,
    gabber_witness,
    gamma_compare,
    gcd,
    phi,
    select_diagonal_indices,
    split,
)

__all__ = [
    "Error",
    "Hahn",
    "Laurent",
    "Tate",
    "automorph",
    "certify",
    "divide",
    "find_distinguishing_automorphism",
    "gabber_distance",
    "gabber_reps",
    "gabber_witness",
    "gamma_compare",
    "gcd",
    "phi",
    "select_diagonal_indices",
    "split",
]
