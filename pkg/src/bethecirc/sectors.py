"""Fixed total-spin sectors and the collective index.

A basis state of the r-flip sector of k qubits is the ordered string
m_1 < ... < m_r of flipped positions (1-based).  Its binary label is
chi = sum_p 2^(k - m_p) (first position = most significant bit), and the
collective index alpha = 1..binom(k, r) ranks the sector by ascending chi.
"""
from __future__ import annotations

from functools import lru_cache
from itertools import combinations
from math import comb

import numpy as np


def chi_of(positions: tuple[int, ...], k: int) -> int:
    """Binary label of a flip-position string."""
    return sum(1 << (k - m) for m in positions)


@lru_cache(maxsize=None)
def sector_basis(k: int, r: int) -> tuple[tuple[int, ...], ...]:
    """All strings of the (k, r) sector, ordered by ascending chi.

    Empty for r < 0 or r > k, matching the vanishing-binomial convention.
    """
    if r < 0 or r > k:
        return ()
    strings = sorted(combinations(range(1, k + 1), r), key=lambda s: chi_of(s, k))
    return tuple(strings)


@lru_cache(maxsize=None)
def _rank_table(k: int, r: int) -> dict:
    return {s: i + 1 for i, s in enumerate(sector_basis(k, r))}


def encode(positions: tuple[int, ...], k: int) -> int:
    """Collective index alpha (1-based) of a flip string within its sector."""
    positions = tuple(positions)
    r = len(positions)
    if list(positions) != sorted(set(positions)) or any(not 1 <= m <= k for m in positions):
        raise ValueError(f"{positions} is not a strictly increasing string in 1..{k}")
    return _rank_table(k, r)[positions]


def decode(alpha: int, k: int, r: int) -> tuple[int, ...]:
    """Inverse of encode."""
    basis = sector_basis(k, r)
    if not 1 <= alpha <= len(basis):
        raise ValueError(f"alpha = {alpha} out of range 1..{len(basis)} for sector ({k},{r})")
    return basis[alpha - 1]


def sector_dim(k: int, r: int) -> int:
    """binom(k, r), defined as 0 when r < 0 or r > k."""
    if r < 0 or r > k:
        return 0
    return comb(k, r)


def embed_sector(vec: np.ndarray, k: int, r: int) -> np.ndarray:
    """Lift a sector vector to the full 2^k statevector (amplitudes at chi slots)."""
    basis = sector_basis(k, r)
    if vec.shape != (len(basis),):
        raise ValueError(f"expected length {len(basis)} for sector ({k},{r}), got {vec.shape}")
    out = np.zeros(2**k, dtype=complex)
    for amp, s in zip(vec, basis):
        out[chi_of(s, k)] = amp
    return out


def extract_sector(state: np.ndarray, k: int, r: int) -> np.ndarray:
    """Restriction of a 2^k statevector to the (k, r) sector, in chi order."""
    if state.shape != (2**k,):
        raise ValueError(f"expected full statevector of {k} qubits, got {state.shape}")
    return np.array([state[chi_of(s, k)] for s in sector_basis(k, r)], dtype=complex)


def off_sector_norm(state: np.ndarray, k: int, r: int) -> float:
    """Norm of the component of `state` outside the (k, r) sector."""
    inside = embed_sector(extract_sector(state, k, r), k, r)
    return float(np.linalg.norm(state - inside))
