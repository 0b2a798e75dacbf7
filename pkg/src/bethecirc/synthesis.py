"""From the Bethe-state MPS to a deterministic circuit.

For every support length k the family of Bethe states with r magnons chosen
from the first min(k, M) momenta has a positive-definite Gram matrix
C_k^{[r]}.  Its Cholesky factor supplies the upper-triangular change of
basis X (and X^-1) that orthonormalizes the family; sandwiching the site
tensors between consecutive X factors yields unitary gates:

    long gates   P_j = X_{j+1}^-1 Lambda_j X_j    on M+1 qubits, j = 1 .. N-M,
    short gates  P_j = X_{j+1}^-1 Omega_j  X_j    on k = N-j+1 qubits after the
                                                  auxiliary register starts
                                                  shrinking, j > N-M.

Long gates fix only the columns with incoming spin |0>; the remaining
columns are completed to an orthonormal basis sector by sector, seeded by
canonical basis vectors in chi order, so circuits are reproducible bit for
bit.  Short gates are square and need no completion.  The production X is
a numerically stable Cholesky factorization; the determinant-ratio closed
formulas are kept as a cross-check path, since their minors are
exponentially ill-conditioned at larger sector sizes.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import CompletionError, SingularFactorError, SizeGuardError
from .model import ChainSpec
from .qubits import max_abs
from .sectors import chi_of, sector_basis, sector_dim
from .states import bethe_state_explicit, lambda_block

#: Unitarity tolerance for every emitted gate.
GATE_TOL = 1e-10


@dataclass(frozen=True)
class CircuitUnitary:
    """One gate: a unitary on a contiguous window of qubits (0-based)."""

    window: tuple[int, ...]
    matrix: np.ndarray
    kind: str  # "long" | "short"

    def __post_init__(self):
        w = len(self.window)
        if self.matrix.shape != (2**w, 2**w):
            raise ValueError(f"matrix shape {self.matrix.shape} mismatches window {self.window}")
        if list(self.window) != list(range(self.window[0], self.window[0] + w)):
            raise ValueError(f"window {self.window} is not contiguous ascending")


@dataclass(frozen=True)
class Circuit:
    """Ordered list of windowed unitaries applied to |1>^M |0>^(N-M)."""

    n_qubits: int
    initial: str
    gates: tuple = field(default_factory=tuple)

    def __post_init__(self):
        if len(self.initial) != self.n_qubits or set(self.initial) - {"0", "1"}:
            raise ValueError(f"bad initial bitstring {self.initial!r}")


def momentum_pool(k: int, spec: ChainSpec) -> tuple[int, ...]:
    """Momentum labels available to Bethe states on the last k spins."""
    return tuple(range(1, min(k, spec.n_magnons) + 1))


def state_family(k: int, r: int, spec: ChainSpec, pool=None) -> np.ndarray:
    """Matrix B with B[lam, alpha] = <lam | Psi_{k, alpha}>, both in chi order.

    Columns run over the r-element selections from the pool (collective
    index order); rows over the (k, r) sector basis.
    """
    pool = momentum_pool(k, spec) if pool is None else tuple(pool)
    selections = sector_basis(len(pool), r)
    cols = [
        bethe_state_explicit(k, tuple(pool[p - 1] for p in sel), spec) for sel in selections
    ]
    return np.column_stack(cols) if cols else np.zeros((sector_dim(k, r), 0), dtype=complex)


def gram_matrix(k: int, r: int, spec: ChainSpec, pool=None) -> np.ndarray:
    """Gram matrix C of the Bethe family on the last k spins (Hermitian PD)."""
    if r > min(k, spec.n_magnons):
        raise ValueError(f"no Bethe family with r = {r} on k = {k} spins")
    b = state_family(k, r, spec, pool)
    c = b.conj().T @ b
    return 0.5 * (c + c.conj().T)


def orth_factor(k: int, r: int, spec: ChainSpec, pool=None) -> tuple[np.ndarray, np.ndarray]:
    """(X, X^-1) with X upper-triangular, positive diagonal, X^-1† X^-1 = C.

    Production path: Cholesky of the Gram matrix (X^-1 is its conjugate
    transpose), inverted by a triangular solve.
    """
    c = gram_matrix(k, r, spec, pool)
    try:
        low = np.linalg.cholesky(c)
    except np.linalg.LinAlgError as exc:
        raise SingularFactorError(
            f"Gram matrix at (k={k}, r={r}) is not positive definite; "
            f"rapidities too close to degenerate"
        ) from exc
    x_inv = low.conj().T
    x = np.linalg.solve(x_inv, np.eye(x_inv.shape[0], dtype=complex))
    return x, x_inv


def orth_factor_determinant(
    k: int, r: int, spec: ChainSpec, pool=None
) -> tuple[np.ndarray, np.ndarray]:
    """(X, X^-1) from the determinant-ratio closed formulas (cross-check path).

    X_aa = sqrt(det_{a-1} C / det_a C);
    X_ab = -det_{b-1} C_{a->b} / sqrt(det_{b-1} C det_b C)  for a < b;
    X^-1_ab = det_a C_{a->b} / sqrt(det_{a-1} C det_a C)    for a <= b;
    det_0 = 1, det_t the top-left t x t minor, and C_{a->b} replaces the
    a-th column of C by its b-th.
    """
    c = gram_matrix(k, r, spec, pool)
    d = c.shape[0]

    def minor(mat, t):
        return 1.0 + 0j if t == 0 else complex(np.linalg.det(mat[:t, :t]))

    def replaced(a, b):
        out = c.copy()
        out[:, a - 1] = c[:, b - 1]
        return out

    dets = [minor(c, t) for t in range(d + 1)]
    for t in range(1, d + 1):
        if not dets[t].real > 0:
            raise SingularFactorError(f"principal minor {t} of the Gram matrix not positive")
    x = np.zeros((d, d), dtype=complex)
    x_inv = np.zeros((d, d), dtype=complex)
    for a in range(1, d + 1):
        x[a - 1, a - 1] = np.sqrt(dets[a - 1].real / dets[a].real)
        x_inv[a - 1, a - 1] = np.sqrt(dets[a].real / dets[a - 1].real)
        for b in range(a + 1, d + 1):
            x[a - 1, b - 1] = -minor(replaced(a, b), b - 1) / np.sqrt(
                dets[b - 1].real * dets[b].real
            )
            x_inv[a - 1, b - 1] = minor(replaced(a, b), a) / np.sqrt(
                dets[a - 1].real * dets[a].real
            )
    return x, x_inv


class OrthFactorCache:
    """X factors per support length, shared between consecutive gates."""

    def __init__(self, spec: ChainSpec):
        self.spec = spec
        self._store: dict[tuple[int, int], tuple[np.ndarray, np.ndarray]] = {}

    def x(self, k: int, r: int) -> np.ndarray:
        return self._get(k, r)[0]

    def x_inv(self, k: int, r: int) -> np.ndarray:
        return self._get(k, r)[1]

    def _get(self, k, r):
        key = (k, r)
        if key not in self._store:
            self._store[key] = orth_factor(k, r, self.spec)
        return self._store[key]


def long_unitary(j: int, spec: ChainSpec, cache: OrthFactorCache | None = None) -> CircuitUnitary:
    """The (M+1)-qubit gate at chain position j, 1 <= j <= N - M.

    Input layout: auxiliary register on the first M window qubits, fresh
    spin (always |0> in the circuit) on the last; output layout: emitted
    spin first, register on the remaining M qubits.  Columns with incoming
    spin |1> are free and filled by deterministic orthonormal completion.
    """
    n, m = spec.n_sites, spec.n_magnons
    if not 1 <= j <= n - m:
        raise ValueError(f"long gate index j = {j} outside 1..{n - m}")
    cache = cache or OrthFactorCache(spec)
    k = n - j + 1
    w = m + 1
    dim = 2**w
    p = np.zeros((dim, dim), dtype=complex)
    pool = tuple(range(1, m + 1))
    for r in range(0, m + 2):
        for i in (0, 1):
            if sector_dim(m, r) == 0 or sector_dim(m, r - i) == 0:
                continue
            block = (
                cache.x_inv(k - 1, r - i)
                @ lambda_block(j, pool, i, r, spec)
                @ cache.x(k, r)
            )
            rows = sector_basis(m, r - i)
            cols = sector_basis(m, r)
            for ri, rs in enumerate(rows):
                row = i * 2**m + chi_of(rs, m)
                for ci, cs in enumerate(cols):
                    p[row, 2 * chi_of(cs, m)] = block[ri, ci]
    _complete_free_columns(p, m)
    return _checked_gate(p, j, w, "long", spec)


def _complete_free_columns(p: np.ndarray, m: int):
    """Fill the incoming-spin-|1> columns sector by sector.

    Within each total-spin sector of the (M+1)-qubit window the fixed
    columns are already orthonormal (the Appendix-style Gram recursion is
    exactly this isometry); seeds are canonical basis vectors in chi order,
    orthogonalized twice against the accepted columns.
    """
    w = m + 1
    for r in range(0, w + 1):
        row_idx = [i * 2**m + chi_of(s, m) for i in (0, 1) for s in sector_basis(m, r - i)]
        fixed_cols = [2 * chi_of(s, m) for s in sector_basis(m, r)]
        free_cols = [2 * chi_of(s, m) + 1 for s in sector_basis(m, r - 1)]
        if not free_cols:
            continue
        q = [p[row_idx, c] for c in fixed_cols]
        for c in free_cols:
            vec = None
            for seed_pos in range(len(row_idx)):
                cand = np.zeros(len(row_idx), dtype=complex)
                cand[seed_pos] = 1.0
                for _ in range(2):
                    for col in q:
                        cand = cand - col * np.vdot(col, cand)
                norm = np.linalg.norm(cand)
                if norm > 1e-8:
                    vec = cand / norm
                    break
            if vec is None:
                raise CompletionError(
                    f"no completion vector found in sector r = {r}; fixed columns not isometric"
                )
            q.append(vec)
            p[row_idx, c] = vec


def short_tensor(j_k: int, spec: ChainSpec) -> dict[tuple[int, int], np.ndarray]:
    """Blocks {(i, r): Omega^{[i, r]}} of the shrinking-register tensor at site j_k.

    Defined by the linear systems  B_{k-1}^{[r-i]} Omega^{[i,r]} = RHS^{[i,r]}
    where B is the change of basis from the computational basis to the Bethe
    family and the right-hand side reads off the length-k family, rows offset
    by binom(k-1, r) for i = 1.  Solving the systems is Cramer's rule in
    numerically sane form.
    """
    n, m = spec.n_sites, spec.n_magnons
    k = n - j_k + 1
    if not 1 <= k <= min(m, n):
        raise ValueError(f"short tensor needs N-M < j_k <= N, got j_k = {j_k} (k = {k})")
    blocks: dict[tuple[int, int], np.ndarray] = {}
    if k == 1:
        blocks[(0, 0)] = np.eye(1, dtype=complex)
        blocks[(1, 1)] = np.eye(1, dtype=complex)
        return blocks
    fam_k = {r: state_family(k, r, spec, pool=range(1, k + 1)) for r in range(k + 1)}
    fam_km1 = {r: state_family(k - 1, r, spec, pool=range(1, k)) for r in range(k)}
    for r in range(0, k + 1):
        for i in (0, 1):
            rows = sector_dim(k - 1, r - i)
            cols = sector_dim(k, r)
            if rows == 0 or cols == 0:
                continue
            offset = sector_dim(k - 1, r) if i == 1 else 0
            rhs = fam_k[r][offset : offset + rows, :]
            b = fam_km1[r - i]
            try:
                blocks[(i, r)] = np.linalg.solve(b, rhs)
            except np.linalg.LinAlgError as exc:
                raise SingularFactorError(
                    f"Bethe family at (k={k - 1}, r={r - i}) linearly dependent; "
                    f"near-degenerate rapidities"
                ) from exc
    return blocks


def short_tensor_cramer(j_k: int, spec: ChainSpec) -> dict[tuple[int, int], np.ndarray]:
    """Same blocks as `short_tensor`, via explicit determinant ratios."""
    n, m = spec.n_sites, spec.n_magnons
    k = n - j_k + 1
    blocks = {}
    if k == 1:
        return short_tensor(j_k, spec)
    fam_k = {r: state_family(k, r, spec, pool=range(1, k + 1)) for r in range(k + 1)}
    fam_km1 = {r: state_family(k - 1, r, spec, pool=range(1, k)) for r in range(k)}
    for r in range(0, k + 1):
        for i in (0, 1):
            rows = sector_dim(k - 1, r - i)
            cols = sector_dim(k, r)
            if rows == 0 or cols == 0:
                continue
            offset = sector_dim(k - 1, r) if i == 1 else 0
            b = fam_km1[r - i]
            den = np.linalg.det(b)
            out = np.zeros((rows, cols), dtype=complex)
            for alpha in range(rows):
                for beta in range(cols):
                    rep = b.copy()
                    rep[:, alpha] = fam_k[r][offset : offset + rows, beta]
                    out[alpha, beta] = np.linalg.det(rep) / den
            blocks[(i, r)] = out
    return blocks


def omega_mps_state(k: int, selection, spec: ChainSpec) -> np.ndarray:
    """Bethe state on the last k spins contracted from the shrinking tensors.

    `selection` picks r momenta out of 1..k; must reproduce the oracle.
    """
    selection = tuple(selection)
    r = len(selection)
    n = spec.n_sites
    if k > min(spec.n_magnons, n):
        raise ValueError(f"Omega contraction defined for k <= M, got k = {k}")
    tensors = {kk: short_tensor(n - kk + 1, spec) for kk in range(1, k + 1)}
    start = np.zeros(sector_dim(k, r), dtype=complex)
    from .sectors import encode

    start[encode(selection, k) - 1] = 1.0
    basis = sector_basis(k, r)
    amps = np.zeros(len(basis), dtype=complex)
    for idx, positions in enumerate(basis):
        flips = set(positions)
        vec = start
        r_reg = r
        ok = True
        for w in range(1, k + 1):  # window position w = site j_k + w - 1, register size k-w+1
            i = 1 if w in flips else 0
            block = tensors[k - w + 1].get((i, r_reg))
            if block is None:
                ok = False
                break
            vec = block @ vec
            r_reg -= i
        amps[idx] = vec[0] if ok and vec.size else 0.0
    return amps


def short_unitary(j_k: int, spec: ChainSpec, cache: OrthFactorCache | None = None) -> CircuitUnitary:
    """The k-qubit gate at chain position j_k, N - M < j_k <= N - 1.

    Square by construction: the two spin-output blocks stack to a
    binom(k, r) x binom(k, r) unitary in every window sector, so no
    completion is involved.
    """
    n, m = spec.n_sites, spec.n_magnons
    k = n - j_k + 1
    if not (n - m < j_k <= n - 1):
        raise ValueError(f"short gate index j_k = {j_k} outside {n - m + 1}..{n - 1}")
    cache = cache or OrthFactorCache(spec)
    omega = short_tensor(j_k, spec)
    dim = 2**k
    p = np.zeros((dim, dim), dtype=complex)
    for r in range(0, k + 1):
        for i in (0, 1):
            if (i, r) not in omega:
                continue
            block = cache.x_inv(k - 1, r - i) @ omega[(i, r)] @ cache.x(k, r)
            rows = sector_basis(k - 1, r - i)
            cols = sector_basis(k, r)
            for ri, rs in enumerate(rows):
                row = i * 2 ** (k - 1) + chi_of(rs, k - 1)
                for ci, cs in enumerate(cols):
                    p[row, chi_of(cs, k)] = block[ri, ci]
    return _checked_gate(p, j_k, k, "short", spec)


def _checked_gate(p: np.ndarray, j: int, w: int, kind: str, spec: ChainSpec) -> CircuitUnitary:
    defect = max_abs(p.conj().T @ p - np.eye(p.shape[0]))
    if defect > GATE_TOL:
        pair = _closest_rapidity_pair(spec)
        raise CompletionError(
            f"{kind} gate at j = {j} fails unitarity by {defect:.3e}; either the Bethe "
            f"family is near-degenerate (closest rapidities {pair}) or an upstream "
            f"isometry is broken"
        )
    return CircuitUnitary(window=tuple(range(j - 1, j - 1 + w)), matrix=p, kind=kind)


def _closest_rapidity_pair(spec: ChainSpec) -> str:
    best = None
    m = spec.n_magnons
    for a in range(1, m + 1):
        for b in range(a + 1, m + 1):
            gap = abs(spec.rapidities[a - 1] - spec.rapidities[b - 1])
            if best is None or gap < best[0]:
                best = (gap, a, b)
    if best is None:
        return "n/a"
    return f"u_{best[1]}, u_{best[2]} at distance {best[0]:.3e}"


def synthesize_circuit(spec: ChainSpec) -> Circuit:
    """Assemble the full staircase: N - 1 gates preparing the normalized Bethe state.

    Gates 1..N-M are long (sliding (M+1)-qubit windows); the remaining ones
    are short with shrinking windows k = M, ..., 2.  The trivial single-qubit
    gate at j = N is omitted.  For M = 0 every gate is the identity.
    """
    n, m = spec.n_sites, spec.n_magnons
    cache = OrthFactorCache(spec)
    gates = []
    if m == 0:
        eye = np.eye(2, dtype=complex)
        for j in range(1, n):
            gates.append(CircuitUnitary(window=(j - 1,), matrix=eye, kind="long"))
    else:
        for j in range(1, n - m + 1):
            gates.append(long_unitary(j, spec, cache))
        for j_k in range(n - m + 1, n):
            gates.append(short_unitary(j_k, spec, cache))
    initial = "1" * m + "0" * (n - m)
    return Circuit(n_qubits=n, initial=initial, gates=tuple(gates))


def unitarity_recursions(spec: ChainSpec) -> list[tuple[str, float]]:
    """Residuals of the Gram recursions behind gate unitarity, long and short.

    Long form (k > M):   C_k = Lambda^{[0,r]}+ C_{k-1}^{[r]} Lambda^{[0,r]}
                               + Lambda^{[1,r]}+ C_{k-1}^{[r-1]} Lambda^{[1,r]};
    short form (k <= M): same with Omega blocks and the per-k momentum pools.
    """
    n, m = spec.n_sites, spec.n_magnons
    out = []
    pool_m = tuple(range(1, m + 1))
    for k in range(m + 1, n + 1):
        j_k = n - k + 1
        for r in range(0, m + 1):
            c_k = gram_matrix(k, r, spec, pool=pool_m)
            term = np.zeros_like(c_k)
            lam0 = lambda_block(j_k, pool_m, 0, r, spec)
            term += lam0.conj().T @ gram_matrix(k - 1, r, spec, pool=pool_m) @ lam0
            if r >= 1:
                lam1 = lambda_block(j_k, pool_m, 1, r, spec)
                term += lam1.conj().T @ gram_matrix(k - 1, r - 1, spec, pool=pool_m) @ lam1
            out.append((f"long k={k} r={r}", max_abs(c_k - term)))
    for k in range(2, min(m, n) + 1):
        j_k = n - k + 1
        omega = short_tensor(j_k, spec)
        for r in range(0, k + 1):
            c_k = gram_matrix(k, r, spec, pool=range(1, k + 1))
            term = np.zeros_like(c_k)
            if (0, r) in omega:
                blk = omega[(0, r)]
                term += blk.conj().T @ gram_matrix(k - 1, r, spec, pool=range(1, k)) @ blk
            if (1, r) in omega:
                blk = omega[(1, r)]
                term += blk.conj().T @ gram_matrix(k - 1, r - 1, spec, pool=range(1, k)) @ blk
            out.append((f"short k={k} r={r}", max_abs(c_k - term)))
    return out


def ruiz_equivalence_check(j_k: int, spec: ChainSpec) -> float:
    """Homogeneous cross-check: Omega blocks from Gram-based L times Lambda blocks.

    L^{[r-i]} solves C_{k-1} L = G where G extends the Gram matrix by the
    linearly dependent Bethe states carrying one momentum beyond the pool;
    the residual of  Omega^{[i,r]} = L^{[r-i]} Lambda_{j_k}^{[i,r]}  over all
    blocks is returned.
    """
    if not spec.is_homogeneous:
        raise ValueError("short-tensor equivalence check requires a homogeneous chain")
    n, m = spec.n_sites, spec.n_magnons
    k = n - j_k + 1
    if not 2 <= k <= min(m, n):
        raise ValueError(f"check needs 2 <= k <= M, got k = {k}")
    omega = short_tensor(j_k, spec)
    worst = 0.0
    pool_k = tuple(range(1, k + 1))
    for r in range(0, k + 1):
        for i in (0, 1):
            if (i, r) not in omega:
                continue
            if sector_dim(k - 1, r - i) == 0 or sector_dim(k, r - i) == 0:
                continue
            fam_small = state_family(k - 1, r - i, spec, pool=range(1, k))
            fam_wide = state_family(k - 1, r - i, spec, pool=pool_k)
            c_small = fam_small.conj().T @ fam_small
            g_wide = fam_small.conj().T @ fam_wide
            l_mat = np.linalg.solve(c_small, g_wide)
            lam = lambda_block(j_k, pool_k, i, r, spec)
            worst = max(worst, max_abs(omega[(i, r)] - l_mat @ lam))
    return worst
