"""Dense operators on qubit tensor products.

Single ordering rule used everywhere: the lowest qubit index is the most
significant bit of the computational-basis label, so the basis state
|i_1 i_2 ... i_n> sits at integer index sum_j 2^(n-j) i_j.  Every kron,
embed and permutation below derives from this rule.
"""
from __future__ import annotations

import numpy as np

from .errors import SizeGuardError

#: Dense construction is guarded at this many qubits (spins + ancillae).
MAX_DENSE_QUBITS = 13


def n_qubits_of(op: np.ndarray) -> int:
    dim = op.shape[0]
    n = dim.bit_length() - 1
    if op.shape != (dim, dim) or 2**n != dim:
        raise ValueError(f"operator shape {op.shape} is not square power-of-two")
    return n


def identity(n: int) -> np.ndarray:
    return np.eye(2**n, dtype=complex)


def kron_all(*ops: np.ndarray) -> np.ndarray:
    """Kronecker product, first factor most significant."""
    out = np.array([[1.0 + 0j]])
    for op in ops:
        out = np.kron(out, op)
    return out


def guard_qubits(n: int):
    if n > MAX_DENSE_QUBITS:
        raise SizeGuardError(f"{n} qubits exceeds dense guard of {MAX_DENSE_QUBITS}")


def embed(op: np.ndarray, positions: list[int], total: int) -> np.ndarray:
    """Embed `op` so that its k-th qubit acts on qubit `positions[k]` (0-based).

    Remaining qubits carry the identity.  Positions need not be sorted;
    embed(R, [1, 0], 2) conjugates a two-qubit R by the swap.
    """
    guard_qubits(total)
    m = n_qubits_of(op)
    if len(positions) != m:
        raise ValueError(f"need {m} positions, got {len(positions)}")
    if len(set(positions)) != m or not all(0 <= p < total for p in positions):
        raise ValueError(f"positions {positions} invalid for {total} qubits")
    rest = [q for q in range(total) if q not in positions]
    big = np.kron(op, identity(total - m)).reshape((2,) * (2 * total))
    # Axis k of the kron result currently holds (positions + rest)[k]; send it home.
    src_order = list(positions) + rest
    perm = [0] * total
    for axis, q in enumerate(src_order):
        perm[q] = axis
    full_perm = perm + [p + total for p in perm]
    return big.transpose(full_perm).reshape(2**total, 2**total)


def permutation_operator(sigma: tuple[int, ...]) -> np.ndarray:
    """Matrix of sigma in S_M acting on M qubits.

    Defined on basis states by moving the content of slot p to slot sigma(p)
    (1-based), so Pi^sigma |x_1 ... x_M> = |y_1 ... y_M> with y_{sigma(p)} = x_p.
    This is the convention under which the permuted F-matrix reads
    Pi^sigma F(u_sigma) Pi^sigma^-1 and satisfies R^sigma = F_sigma^-1 F.
    """
    m = len(sigma)
    if sorted(sigma) != list(range(1, m + 1)):
        raise ValueError(f"{sigma} is not a permutation of 1..{m}")
    dim = 2**m
    out = np.zeros((dim, dim), dtype=complex)
    for col in range(dim):
        bits = [(col >> (m - 1 - k)) & 1 for k in range(m)]
        new_bits = [0] * m
        for p in range(m):
            new_bits[sigma[p] - 1] = bits[p]
        row = sum(b << (m - 1 - k) for k, b in enumerate(new_bits))
        out[row, col] = 1.0
    return out


def apply_window(state: np.ndarray, u: np.ndarray, first: int, n: int) -> np.ndarray:
    """Apply a w-qubit unitary on the contiguous window starting at qubit `first`."""
    w = n_qubits_of(u)
    if not 0 <= first <= n - w:
        raise ValueError(f"window [{first}, {first + w}) out of range for {n} qubits")
    if state.shape != (2**n,):
        raise ValueError(f"state length {state.shape} does not match {n} qubits")
    left, right = 2**first, 2 ** (n - first - w)
    s = state.reshape(left, 2**w, right)
    return np.einsum("ij,ajb->aib", u, s).reshape(-1)


def apply_two_qubit(state: np.ndarray, u4: np.ndarray, q0: int, q1: int, n: int) -> np.ndarray:
    """Apply a two-qubit gate on arbitrary (not necessarily adjacent) qubits."""
    if q0 == q1:
        raise ValueError("qubits must differ")
    s = state.reshape((2,) * n)
    s = np.tensordot(u4.reshape(2, 2, 2, 2), s, axes=([2, 3], [q0, q1]))
    # tensordot leaves the two output axes first; move them back.
    s = np.moveaxis(s, [0, 1], [q0, q1])
    return s.reshape(-1)


def basis_state(bits: str) -> np.ndarray:
    """Statevector |bits> with the first character as the most significant bit."""
    n = len(bits)
    state = np.zeros(2**n, dtype=complex)
    state[int(bits, 2)] = 1.0
    return state


def max_abs(a: np.ndarray) -> float:
    return float(np.max(np.abs(a))) if a.size else 0.0
