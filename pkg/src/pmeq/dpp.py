"""Determinantal point process application.

A (possibly nonsymmetric) kernel K defines a distribution over subsets Y
with Pr[J is contained in Y] = det(K[J]).  Two kernels produce the same
process exactly when they are principal minor equivalent, so kernel
equivalence reduces to pme_check and inherits its certificates.
"""

from __future__ import annotations

from .linalg import determinant
from .pme import pme_check


def subset_probability(K, J):
    """Pr[J subset of Y] = det(K[J]); the empty set has probability 1."""
    return determinant(K.principal_submatrix(J))


def dpp_equivalent(K1, K2, randomized_shift=False):
    """Verdict on whether the two kernels define the same DPP."""
    return pme_check(K1, K2, randomized_shift=randomized_shift)
