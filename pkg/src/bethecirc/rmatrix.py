"""R-matrix, monodromy and transfer matrices, and their exchange algebra.

The 4x4 trigonometric R-matrix

    R(u) = [[1, 0,    0,    0],
            [0, f(u), g(u), 0],
            [0, g(u), f(u), 0],
            [0, 0,    0,    1]]

satisfies the Yang-Baxter equation, is regular (R(0) equals the swap Pi)
and pseudo-unitary (R_12(u) R_21(-u) = 1).  The monodromy matrix of the
inhomogeneous chain is the ordered product T(u) = R_0N(u - v_N) ... R_01(u - v_1)
over one ancilla (qubit 0) and N spins; its ancilla trace is the transfer
matrix, a commuting family in the spectral parameter.
"""
from __future__ import annotations

import numpy as np

from .errors import SizeGuardError
from .model import ChainSpec, weight_f, weight_g
from .qubits import embed, guard_qubits, identity, max_abs, permutation_operator

#: Two-qubit swap; equals R(0) by regularity.
PI_SWAP = np.array(
    [
        [1, 0, 0, 0],
        [0, 0, 1, 0],
        [0, 1, 0, 0],
        [0, 0, 0, 1],
    ],
    dtype=complex,
)


def build_r(u: complex, gamma: complex, tol: float = 1e-10) -> np.ndarray:
    """The 4x4 R-matrix; first qubit is the most significant index."""
    f = weight_f(u, gamma, tol)
    g = weight_g(u, gamma, tol)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, f, g, 0],
            [0, g, f, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )


def ybe_residual(u1: complex, u2: complex, u3: complex, gamma: complex) -> float:
    """Max-norm residual of R12 R13 R23 = R23 R13 R12 on three qubits."""
    r12 = embed(build_r(u1 - u2, gamma), [0, 1], 3)
    r13 = embed(build_r(u1 - u3, gamma), [0, 2], 3)
    r23 = embed(build_r(u2 - u3, gamma), [1, 2], 3)
    return max_abs(r12 @ r13 @ r23 - r23 @ r13 @ r12)


def build_monodromy(u: complex, spec: ChainSpec) -> np.ndarray:
    """Monodromy matrix T(u) on (ancilla, N spins); R_01 acts first.

    Dense (N+1)-qubit construction; guarded at N <= 12.
    """
    n = spec.n_sites
    if n > 12:
        raise SizeGuardError(f"dense monodromy guarded at N <= 12, got N = {n}")
    guard_qubits(n + 1)
    t = identity(n + 1)
    for j in range(1, n + 1):
        r0j = embed(build_r(u - spec.inhomogeneities[j - 1], spec.gamma, spec.tol), [0, j], n + 1)
        t = r0j @ t
    return t


def monodromy_blocks(t: np.ndarray) -> tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
    """Ancilla blocks (A, B, C, D) of a monodromy matrix, ancilla = qubit 0."""
    half = t.shape[0] // 2
    return (
        t[:half, :half],
        t[:half, half:],
        t[half:, :half],
        t[half:, half:],
    )


def transfer_matrix(u: complex, spec: ChainSpec) -> np.ndarray:
    """t(u) = A(u) + D(u), the ancilla trace of the monodromy matrix."""
    a, _, _, d = monodromy_blocks(build_monodromy(u, spec))
    return a + d


def rtt_residual(u: complex, v: complex, spec: ChainSpec) -> float:
    """Residual of R12(u-v) T1(u) T2(v) = T2(v) T1(u) R12(u-v).

    Built on two ancillae (qubits 0, 1) plus the N spins; guarded small.
    """
    n = spec.n_sites
    if n > 4:
        raise SizeGuardError(f"RTT check guarded at N <= 4, got N = {n}")
    total = n + 2
    spins = list(range(2, total))
    t1 = embed_monodromy(build_monodromy(u, spec), 0, spins, total)
    t2 = embed_monodromy(build_monodromy(v, spec), 1, spins, total)
    r12 = embed(build_r(u - v, spec.gamma, spec.tol), [0, 1], total)
    return max_abs(r12 @ t1 @ t2 - t2 @ t1 @ r12)


def embed_monodromy(t: np.ndarray, ancilla: int, spins: list[int], total: int) -> np.ndarray:
    """Place a monodromy matrix (its qubit 0 = ancilla) onto named qubits."""
    return embed(t, [ancilla] + list(spins), total)


def bubble_word(start: tuple[int, ...], target: tuple[int, ...]) -> list[tuple[int, int]]:
    """Adjacent label swaps turning one monodromy ordering into another.

    Swaps are (a, b) with label a immediately left of b at the time of the
    swap; produced by a deterministic bubble sort.
    """
    if sorted(start) != sorted(target):
        raise ValueError(f"{start} and {target} are not reorderings of each other")
    current = list(start)
    rank = {label: pos for pos, label in enumerate(target)}
    word = []
    while current != list(target):
        swapped = False
        for p in range(len(current) - 1):
            a, b = current[p], current[p + 1]
            if rank[a] > rank[b]:
                word.append((a, b))
                current[p], current[p + 1] = b, a
                swapped = True
        if not swapped:  # pragma: no cover - cannot happen for valid reorderings
            raise RuntimeError("bubble sort stalled")
    return word


def permutation_r(sigma: tuple[int, ...], rapidities, gamma: complex, tol: float = 1e-10) -> np.ndarray:
    """The operator R^sigma with R^sigma T_1 ... T_M = T_{sigma(1)} ... T_{sigma(M)} R^sigma.

    Factorized into adjacent transpositions by bubble sort: left-multiplying
    R_ab(u_a - u_b) swaps adjacent labels (a left of b) in the monodromy
    product, so the accumulated product realizes sigma.  Any factorization
    agrees by the Yang-Baxter equation.
    """
    m = len(sigma)
    if sorted(sigma) != list(range(1, m + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{m}")
    if m > 8:
        raise SizeGuardError(f"permutation R guarded at M <= 8, got M = {m}")
    word = bubble_word(tuple(range(1, m + 1)), sigma)
    return permutation_r_word(word, rapidities, gamma, tol)


def permutation_r_word(
    word: list[tuple[int, int]], rapidities, gamma: complex, tol: float = 1e-10
) -> np.ndarray:
    """R^sigma from an explicit sequence of adjacent label swaps.

    Each (a, b) entry swaps labels a (currently left) and b; used to check
    that different reduced words of the same sigma agree.
    """
    m = len(rapidities)
    acc = identity(m)
    for a, b in word:
        r_ab = build_r(rapidities[a - 1] - rapidities[b - 1], gamma, tol)
        acc = embed(r_ab, [a - 1, b - 1], m) @ acc
    return acc


def permutation_matrix(sigma: tuple[int, ...]) -> np.ndarray:
    """Pi^sigma on M qubits; re-export with the package-wide slot convention."""
    return permutation_operator(sigma)
