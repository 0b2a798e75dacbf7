"""F-matrices and the exchange-symmetric basis of the auxiliary space.

The two-qubit F-matrix factorizes the R-matrix, R_12(u) = F_21(-u)^-1 F_12(u),
and its multi-ancilla extension F_{1..M} turns every reordering operator
R^sigma into a twist: R^sigma = F_sigma^-1 F.  Dressing a dual (column)
monodromy matrix with F makes it symmetric under simultaneous permutation
of ancilla slots and rapidity arguments -- the property the whole circuit
construction rests on.

Note on the closed product formula for F_{1..M}: the upper limit of the
outer product is taken as M-1.  With M-2 the two-ancilla case would
degenerate to the identity and contradict the explicit 4x4 F-matrix, while
M-1 reproduces it exactly; the regression tests pin this choice.
"""
from __future__ import annotations

import numpy as np

from .errors import SingularFactorError, SizeGuardError
from .model import ChainSpec, weight_f, weight_g
from .qubits import embed, identity, max_abs, permutation_operator
from .rmatrix import build_monodromy, build_r, embed_monodromy


def build_f2(u: complex, gamma: complex, tol: float = 1e-10) -> np.ndarray:
    """The 4x4 F-matrix; fixes |00> and |11>, det = f(u)."""
    f = weight_f(u, gamma, tol)
    g = weight_g(u, gamma, tol)
    return np.array(
        [
            [1, 0, 0, 0],
            [0, 1, 0, 0],
            [0, g, f, 0],
            [0, 0, 0, 1],
        ],
        dtype=complex,
    )


def build_fM(rapidities, gamma: complex, tol: float = 1e-10) -> np.ndarray:
    """Multi-ancilla F-matrix as a product of projector-dressed R-strings.

    F = prod_{a=1}^{M-1} [ |0><0|_a + |1><1|_a prod_{b=a+1}^{M} R_ab(u_a - u_b) ].
    """
    m = len(rapidities)
    if m > 8:
        raise SizeGuardError(f"F-matrix guarded at M <= 8, got M = {m}")
    if m <= 1:
        return identity(m)
    p0 = np.array([[1, 0], [0, 0]], dtype=complex)
    p1 = np.array([[0, 0], [0, 1]], dtype=complex)
    # Both products compose right to left (lowest index acts first), like the
    # monodromy matrix; this is the ordering that satisfies R^sigma = F_sigma^-1 F.
    out = identity(m)
    for a in range(m - 1, 0, -1):
        r_string = identity(m)
        for b in range(m, a, -1):
            r_ab = build_r(rapidities[a - 1] - rapidities[b - 1], gamma, tol)
            r_string = r_string @ embed(r_ab, [a - 1, b - 1], m)
        factor = embed(p0, [a - 1], m) + embed(p1, [a - 1], m) @ r_string
        out = out @ factor
    det = np.linalg.det(out)
    if abs(det) < tol:
        raise SingularFactorError(f"F-matrix numerically singular, |det| = {abs(det):.3e}")
    return out


def f_sigma(sigma: tuple[int, ...], rapidities, gamma: complex, tol: float = 1e-10) -> np.ndarray:
    """F_{sigma(1)...sigma(M)}: ancilla slots and rapidity arguments permuted together.

    Realized as Pi^sigma F(u_{sigma(1)}, ..., u_{sigma(M)}) Pi^sigma^-1 with the
    slot convention of `permutation_operator`; verified against R^sigma = F_sigma^-1 F
    for every sigma in S_3.
    """
    permuted = [rapidities[s - 1] for s in sigma]
    pi = permutation_operator(sigma)
    return pi @ build_fM(permuted, gamma, tol) @ pi.conj().T


def rff_residual(u: complex, gamma: complex, tol: float = 1e-10) -> float:
    """Residual of the defining relation R_12(u) = F_21(-u)^-1 F_12(u)."""
    from .rmatrix import PI_SWAP

    f12 = build_f2(u, gamma, tol)
    f21 = PI_SWAP @ build_f2(-u, gamma, tol) @ PI_SWAP
    return max_abs(build_r(u, gamma, tol) - np.linalg.solve(f21, f12))


def rfm_residual(sigma: tuple[int, ...], rapidities, gamma: complex, tol: float = 1e-10) -> float:
    """Residual of R^sigma = F_sigma^-1 F_{1..M}."""
    from .rmatrix import permutation_r

    f_plain = build_fM(rapidities, gamma, tol)
    f_perm = f_sigma(sigma, rapidities, gamma, tol)
    lhs = permutation_r(sigma, rapidities, gamma, tol)
    return max_abs(lhs - np.linalg.solve(f_perm, f_plain))


def twist_consistency_residual(rapidities, sigma: tuple[int, ...], spec: ChainSpec) -> float:
    """Residual of F T_1...T_M F^-1 = F_sigma T_{sigma(1)}...T_{sigma(M)} F_sigma^-1.

    The number of monodromy factors is len(rapidities), independent of the
    chain's own magnon count.  Dense check on M ancillae plus N spins;
    guarded at M <= 3, N <= 2.
    """
    m, n = len(rapidities), spec.n_sites
    if m > 3 or n > 2:
        raise SizeGuardError(f"twist check guarded at M <= 3, N <= 2, got M={m}, N={n}")
    total = m + n
    spins = list(range(m, total))
    t_ops = [
        embed_monodromy(build_monodromy(u, spec), a, spins, total) for a, u in enumerate(rapidities)
    ]
    f_plain = embed(build_fM(rapidities, spec.gamma, spec.tol), list(range(m)), total)
    f_perm = embed(f_sigma(sigma, rapidities, spec.gamma, spec.tol), list(range(m)), total)

    prod_plain = identity(total)
    prod_perm = identity(total)
    for a in range(m):
        prod_plain = prod_plain @ t_ops[a]
        prod_perm = prod_perm @ t_ops[sigma[a] - 1]
    lhs = f_plain @ prod_plain @ np.linalg.inv(f_plain)
    rhs = f_perm @ prod_perm @ np.linalg.inv(f_perm)
    return max_abs(lhs - rhs)


def dual_monodromy(j: int, spec: ChainSpec) -> np.ndarray:
    """Column monodromy matrix of site j on (M ancillae, 1 spin); spin is the last qubit.

    T_j = R_1j(u_1 - v_j) R_2j(u_2 - v_j) ... R_Mj(u_M - v_j), R_Mj acting first.
    """
    m = spec.n_magnons
    if m > 8:
        raise SizeGuardError(f"dual monodromy guarded at M <= 8, got M = {m}")
    v_j = spec.inhomogeneities[j - 1]
    total = m + 1
    out = identity(total)
    for a in range(1, m + 1):
        r_aj = embed(build_r(spec.rapidities[a - 1] - v_j, spec.gamma, spec.tol), [a - 1, m], total)
        out = out @ r_aj
    return out


def dual_rtt_residual(j1: int, j2: int, spec: ChainSpec) -> float:
    """Residual of T_1(v_1) T_2(v_2) R_12(v_1 - v_2) = R_12(v_1 - v_2) T_2 T_1.

    Here the two dual monodromies share the M ancillae and carry one spin each;
    R acts on the pair of spins.
    """
    m = spec.n_magnons
    total = m + 2
    t1 = embed(dual_monodromy(j1, spec), list(range(m)) + [m], total)
    t2 = embed(dual_monodromy(j2, spec), list(range(m)) + [m + 1], total)
    dv = spec.inhomogeneities[j1 - 1] - spec.inhomogeneities[j2 - 1]
    r12 = embed(build_r(dv, spec.gamma, spec.tol), [m, m + 1], total)
    return max_abs(t1 @ t2 @ r12 - r12 @ t2 @ t1)


def dress_dual(t_dual: np.ndarray, f_matrix: np.ndarray) -> np.ndarray:
    """Conjugate a dual monodromy by the F-matrix on its ancillae only."""
    m_dim = f_matrix.shape[0]
    if t_dual.shape[0] != 2 * m_dim:
        raise ValueError("F-matrix ancilla count does not match the dual monodromy")
    f_full = np.kron(f_matrix, np.eye(2, dtype=complex))
    return f_full @ t_dual @ np.linalg.inv(f_full)


def dressed_dual_monodromy(j: int, spec: ChainSpec) -> np.ndarray:
    """F-dressed dual monodromy of site j."""
    f_matrix = build_fM(spec.rapidities, spec.gamma, spec.tol)
    return dress_dual(dual_monodromy(j, spec), f_matrix)


def dual_blocks(t_dual: np.ndarray) -> dict[tuple[int, int], np.ndarray]:
    """Spin blocks of an operator on (M ancillae, 1 spin): block[(i, i')] = <i|T|i'>."""
    m_dim = t_dual.shape[0] // 2
    view = t_dual.reshape(m_dim, 2, m_dim, 2)
    return {(i, ip): np.ascontiguousarray(view[:, i, :, ip]) for i in (0, 1) for ip in (0, 1)}


def fbasis_operators(j: int, spec: ChainSpec) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Closed forms of the dressed operators (A~_j, B~_j, C~_j) on M ancillae.

    A~_j is the diagonal tensor product of diag(1, f_aj); B~_j and C~_j are
    sums of single-flip strings dressed by f-ratios on the spectator slots.
    """
    m = spec.n_magnons
    if m > 8:
        raise SizeGuardError(f"closed-form operators guarded at M <= 8, got M = {m}")
    f_aj = [spec.x(a, j) for a in range(1, m + 1)]
    g_aj = [spec.g_aj(a, j) for a in range(1, m + 1)]
    s_ab = {
        (a, b): spec.s(a, b) for a in range(1, m + 1) for b in range(1, m + 1) if a != b
    }
    lower = np.array([[0, 0], [1, 0]], dtype=complex)
    raise_op = np.array([[0, 1], [0, 0]], dtype=complex)

    a_op = identity(m) if m == 0 else _kron_chain(
        [np.diag([1.0 + 0j, f_aj[a]]) for a in range(m)]
    )
    b_op = np.zeros((2**m, 2**m), dtype=complex)
    c_op = np.zeros((2**m, 2**m), dtype=complex)
    for a in range(1, m + 1):
        b_factors = []
        c_factors = []
        for b in range(1, m + 1):
            if b < a:
                b_factors.append(np.diag([1.0 + 0j, f_aj[b - 1] / s_ab[(b, a)]]))
                c_factors.append(np.diag([1.0 / s_ab[(a, b)], f_aj[b - 1]]))
            elif b == a:
                b_factors.append(g_aj[a - 1] * lower)
                c_factors.append(g_aj[a - 1] * raise_op)
            else:
                b_factors.append(np.diag([1.0 + 0j, f_aj[b - 1] / s_ab[(b, a)]]))
                c_factors.append(np.diag([1.0 / s_ab[(a, b)], f_aj[b - 1]]))
        b_op += _kron_chain(b_factors)
        c_op += _kron_chain(c_factors)
    return a_op, b_op, c_op


def _kron_chain(factors) -> np.ndarray:
    out = np.array([[1.0 + 0j]])
    for f in factors:
        out = np.kron(out, f)
    return out


def exchange_symmetry_residual(j: int, sigma: tuple[int, ...], spec: ChainSpec) -> float:
    """Residual of Pi^sigma T~_j(v_j; u_sigma) Pi^sigma^-1 = T~_j(v_j; u_1..u_M)."""
    m = spec.n_magnons
    plain = dressed_dual_monodromy(j, spec)
    permuted_spec = ChainSpec(
        n_sites=spec.n_sites,
        n_magnons=m,
        gamma=spec.gamma,
        inhomogeneities=spec.inhomogeneities,
        rapidities=tuple(spec.rapidities[s - 1] for s in sigma),
        tol=spec.tol,
    )
    permuted = dressed_dual_monodromy(j, permuted_spec)
    pi = embed(permutation_operator(sigma), list(range(m)), m + 1)
    return max_abs(pi @ permuted @ pi.conj().T - plain)
