"""Scalar functions of the XXZ model and the problem specification.

The trigonometric Boltzmann weights

    f(u) = sinh(u) / sinh(u + i*gamma)
    g(u) = sinh(i*gamma) / sinh(u + i*gamma)

generate everything else in the package: R-matrix entries, quasi-momenta
x_{a,j} = f(u_a - v_j) and scattering amplitudes s_{ab} = f(u_a - u_b).
The anisotropy is Delta = cos(gamma); gamma may be an arbitrary complex
number, and Delta is always derived, never stored.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DegenerateRapiditiesError, PoleError

#: Default tolerance for pole proximity and rapidity separation.
DEFAULT_TOL = 1e-10


def weight_f(u: complex, gamma: complex, tol: float = DEFAULT_TOL) -> complex:
    """f(u) = sinh(u)/sinh(u + i*gamma), the diagonal R-matrix weight."""
    den = np.sinh(u + 1j * gamma)
    if abs(den) < tol:
        raise PoleError(f"sinh(u + i*gamma) = {den:.3e} at u = {u}, gamma = {gamma}")
    return complex(np.sinh(u)) / complex(den)


def weight_g(u: complex, gamma: complex, tol: float = DEFAULT_TOL) -> complex:
    """g(u) = sinh(i*gamma)/sinh(u + i*gamma), the off-diagonal R-matrix weight."""
    den = np.sinh(u + 1j * gamma)
    if abs(den) < tol:
        raise PoleError(f"sinh(u + i*gamma) = {den:.3e} at u = {u}, gamma = {gamma}")
    return complex(np.sinh(1j * gamma)) / complex(den)


def rapidity_from_momentum(x: complex, gamma: complex) -> complex:
    """Invert f: return u with f(u) = x.

    Solves sinh(u) = x*sinh(u + i*gamma) for tanh(u); the principal branch
    of artanh fixes the solution.
    """
    return complex(np.arctanh(x * np.sinh(1j * gamma) / (1.0 - x * np.cosh(1j * gamma))))


@dataclass(frozen=True)
class ChainSpec:
    """Full problem instance: chain size, anisotropy, inhomogeneities, rapidities.

    Sites are labelled j = 1..N and magnons a = 1..M, matching the 1-based
    index conventions used throughout the construction.
    """

    n_sites: int
    n_magnons: int
    gamma: complex
    inhomogeneities: tuple = ()
    rapidities: tuple = ()
    tol: float = field(default=DEFAULT_TOL)

    def __post_init__(self):
        n, m = self.n_sites, self.n_magnons
        if n < 1:
            raise ValueError(f"n_sites must be positive, got {n}")
        if not 0 <= m <= n:
            raise ValueError(f"n_magnons must satisfy 0 <= M <= N, got M={m}, N={n}")
        v = tuple(complex(z) for z in self.inhomogeneities) or (0j,) * n
        u = tuple(complex(z) for z in self.rapidities)
        if len(v) != n:
            raise ValueError(f"expected {n} inhomogeneities, got {len(v)}")
        if len(u) != m:
            raise ValueError(f"expected {m} rapidities, got {len(u)}")
        object.__setattr__(self, "inhomogeneities", v)
        object.__setattr__(self, "rapidities", u)
        object.__setattr__(self, "gamma", complex(self.gamma))
        for a in range(m):
            for b in range(a + 1, m):
                if abs(u[a] - u[b]) < self.tol:
                    raise DegenerateRapiditiesError(
                        f"rapidities u_{a + 1} = {u[a]} and u_{b + 1} = {u[b]} coincide "
                        f"within tolerance {self.tol}"
                    )
        # All f, g used anywhere in the build must be finite.
        for a in range(m):
            for z in v:
                weight_f(u[a] - z, self.gamma, self.tol)
            for b in range(m):
                if a != b:
                    weight_f(u[a] - u[b], self.gamma, self.tol)

    @property
    def delta(self) -> complex:
        """Anisotropy Delta = cos(gamma), always derived."""
        return complex(np.cos(self.gamma))

    @property
    def is_homogeneous(self) -> bool:
        v = self.inhomogeneities
        return all(z == v[0] for z in v)

    def f(self, u: complex) -> complex:
        return weight_f(u, self.gamma, self.tol)

    def g(self, u: complex) -> complex:
        return weight_g(u, self.gamma, self.tol)

    def x(self, a: int, j: int) -> complex:
        """Quasi-momentum x_{a,j} = f(u_a - v_j) of magnon a at site j (1-based)."""
        self._check_magnon(a)
        self._check_site(j)
        return self.f(self.rapidities[a - 1] - self.inhomogeneities[j - 1])

    def g_aj(self, a: int, j: int) -> complex:
        """Off-diagonal weight g(u_a - v_j) of magnon a at site j (1-based)."""
        self._check_magnon(a)
        self._check_site(j)
        return self.g(self.rapidities[a - 1] - self.inhomogeneities[j - 1])

    def s(self, a: int, b: int) -> complex:
        """Scattering amplitude s_{ab} = f(u_a - u_b); requires a != b."""
        self._check_magnon(a)
        self._check_magnon(b)
        if a == b:
            raise DegenerateRapiditiesError(f"scattering amplitude needs a != b, got a = b = {a}")
        return self.f(self.rapidities[a - 1] - self.rapidities[b - 1])

    def _check_site(self, j: int):
        if not 1 <= j <= self.n_sites:
            raise IndexError(f"site index {j} out of range 1..{self.n_sites}")

    def _check_magnon(self, a: int):
        if not 1 <= a <= self.n_magnons:
            raise IndexError(f"magnon index {a} out of range 1..{self.n_magnons}")


def quasi_momentum(a: int, j: int, spec: ChainSpec) -> complex:
    """x_{a,j} = f(u_a - v_j); uniform in j for a homogeneous chain."""
    return spec.x(a, j)


def scattering_amplitude(a: int, b: int, spec: ChainSpec) -> complex:
    """s_{ab} = f(u_a - u_b); the two-body S-matrix is s_{ba}/s_{ab}."""
    return spec.s(a, b)
