"""Dense statevector simulation of windowed unitaries, the end-to-end verifier."""
from __future__ import annotations

import numpy as np

from .errors import SizeGuardError
from .model import ChainSpec
from .qubits import apply_window, basis_state
from .synthesis import Circuit, CircuitUnitary


def apply_gate(state: np.ndarray, gate: CircuitUnitary, n_qubits: int) -> np.ndarray:
    """Apply one windowed unitary; amplitudes outside the window untouched."""
    return apply_window(state, gate.matrix, gate.window[0], n_qubits)


def run_circuit(circuit: Circuit) -> np.ndarray:
    """Sequential application of all gates to the initial bitstring."""
    n = circuit.n_qubits
    if n > 12:
        raise SizeGuardError(f"statevector guard N <= 12, got N = {n}")
    state = basis_state(circuit.initial)
    for gate in circuit.gates:
        state = apply_gate(state, gate, n)
    return state


def fidelity(a: np.ndarray, b: np.ndarray) -> float:
    """|<a|b>| / (||a|| ||b||), phase-insensitive overlap in [0, 1]."""
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch {a.shape} vs {b.shape}")
    na, nb = np.linalg.norm(a), np.linalg.norm(b)
    if na == 0 or nb == 0:
        raise ValueError("fidelity of a zero vector is undefined")
    return float(abs(np.vdot(a, b)) / (na * nb))


def xxz_hamiltonian(n: int, gamma: complex) -> np.ndarray:
    """Periodic XXZ Hamiltonian sum_j (X_j X_j+1 + Y_j Y_j+1 + Delta Z_j Z_j+1)."""
    if n > 10:
        raise SizeGuardError(f"dense Hamiltonian guard N <= 10, got N = {n}")
    sx = np.array([[0, 1], [1, 0]], dtype=complex)
    sy = np.array([[0, -1j], [1j, 0]], dtype=complex)
    sz = np.array([[1, 0], [0, -1]], dtype=complex)
    delta = complex(np.cos(gamma))
    from .qubits import embed

    h = np.zeros((2**n, 2**n), dtype=complex)
    for j in range(n):
        jn = (j + 1) % n
        h += embed(np.kron(sx, sx), [j, jn], n)
        h += embed(np.kron(sy, sy), [j, jn], n)
        h += delta * embed(np.kron(sz, sz), [j, jn], n)
    return h


def hamiltonian_residual(state: np.ndarray, spec: ChainSpec) -> tuple[float, complex]:
    """Eigenstate diagnostic ||H psi - <H> psi|| / ||psi|| and <H> itself.

    Only meaningful on a homogeneous chain; the residual vanishes when the
    supplied rapidities happen to solve the Bethe equations (finding such
    roots is out of scope here).
    """
    if not spec.is_homogeneous:
        raise ValueError("Hamiltonian diagnostic defined for the homogeneous chain")
    n = spec.n_sites
    if state.shape != (2**n,):
        raise ValueError(f"state shape {state.shape} mismatches N = {n}")
    h = xxz_hamiltonian(n, spec.gamma)
    norm2 = np.vdot(state, state)
    expect = complex(np.vdot(state, h @ state) / norm2)
    resid = float(np.linalg.norm(h @ state - expect * state) / np.sqrt(norm2.real))
    return resid, expect
