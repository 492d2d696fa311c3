"""Exact rank over prime fields.

GF(2) columns are Python ints used as bit-packed vectors; odd primes use a
dense ``int64`` numpy elimination (entries stay below ``p**2 < 2**32``).
"""

from __future__ import annotations

import numpy as np

MAX_PRIME = 1 << 16


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    k = 2
    while k * k <= p:
        if p % k == 0:
            return False
        k += 1
    return True


def check_prime(p: int) -> int:
    if not is_prime(p) or p >= MAX_PRIME:
        raise ValueError(f"field characteristic must be a prime below 2**16, got {p}")
    return p


def rank_gf2(vectors) -> int:
    """Rank of a family of bit-packed GF(2) vectors."""
    pivots: dict[int, int] = {}
    rank = 0
    for vec in vectors:
        while vec:
            top = vec.bit_length() - 1
            piv = pivots.get(top)
            if piv is None:
                pivots[top] = vec
                rank += 1
                break
            vec ^= piv
    return rank


def rank_mod_p(matrix: np.ndarray, p: int) -> int:
    """Rank of an integer matrix reduced modulo the prime ``p``."""
    a = np.array(matrix, dtype=np.int64) % p
    n_rows, n_cols = a.shape
    r = 0
    for c in range(n_cols):
        if r == n_rows:
            break
        nz = np.flatnonzero(a[r:, c])
        if nz.size == 0:
            continue
        piv = r + int(nz[0])
        if piv != r:
            a[[r, piv]] = a[[piv, r]]
        inv = pow(int(a[r, c]), p - 2, p)
        a[r] = (a[r] * inv) % p
        below = r + 1 + np.flatnonzero(a[r + 1:, c])
        if below.size:
            a[below] = (a[below] - np.outer(a[below, c], a[r])) % p
        r += 1
    return r
