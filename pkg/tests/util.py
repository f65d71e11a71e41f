"""Shared helpers for the test suite."""

import numpy as np

from grk.supermatrix import SuperMatrix


def sorted_product_oracle(idx_a, idx_b):
    """Independent sign oracle: multiply monomials given as ascending index
    tuples by concatenating and bubble-sorting, counting transpositions.

    Returns (sign, merged_tuple) or (0, None) when an index repeats.
    """
    seq = list(idx_a) + list(idx_b)
    if len(set(seq)) != len(seq):
        return 0, None
    swaps = 0
    changed = True
    while changed:
        changed = False
        for i in range(len(seq) - 1):
            if seq[i] > seq[i + 1]:
                seq[i], seq[i + 1] = seq[i + 1], seq[i]
                swaps += 1
                changed = True
    return (-1 if swaps % 2 else 1), tuple(seq)


def mat_close(X, Y, tol=1e-12):
    scale = max(X.norm(), Y.norm(), 1.0)
    return (X - Y).norm() <= tol * scale


def dense_of(X):
    """Stack the per-monomial coefficient matrices into one array keyed by
    sorted mask order; useful for exact comparisons."""
    masks = sorted(X.terms)
    if not masks:
        return np.zeros((1, X.dim, X.dim), dtype=complex), []
    return np.stack([X.terms[m] for m in masks]), masks


def random_scalar_matrix(rng, profile, order=1):
    d = profile.dim ** order
    arr = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return SuperMatrix(profile, order, None, {0: arr})
