import numpy as np
import pytest

from bethecirc.errors import SizeGuardError
from bethecirc.qubits import (
    apply_two_qubit,
    apply_window,
    basis_state,
    embed,
    identity,
    max_abs,
    permutation_operator,
)
from bethecirc.rmatrix import PI_SWAP, build_r
from conftest import random_complex


def test_embed_identity_is_identity():
    assert max_abs(embed(identity(2), [0, 1], 3) - identity(3)) == 0.0


def test_embed_in_place_is_noop(rng):
    r = build_r(random_complex(rng), 0.9)
    assert max_abs(embed(r, [0, 1], 2) - r) == 0.0


def test_embed_swapped_positions_conjugates(rng):
    r = build_r(random_complex(rng), 0.9)
    assert max_abs(embed(r, [1, 0], 2) - PI_SWAP @ r @ PI_SWAP) < 1e-15


def test_embed_against_kron(rng):
    a = rng.normal(size=(2, 2)) + 1j * rng.normal(size=(2, 2))
    assert max_abs(embed(a, [0], 2) - np.kron(a, np.eye(2))) == 0.0
    assert max_abs(embed(a, [1], 2) - np.kron(np.eye(2), a)) == 0.0


def test_embed_rejects_bad_positions():
    with pytest.raises(ValueError):
        embed(identity(2), [0, 0], 3)
    with pytest.raises(ValueError):
        embed(identity(1), [5], 3)
    with pytest.raises(SizeGuardError):
        embed(identity(1), [0], 20)


def test_permutation_operator_involution_and_composition():
    swap = permutation_operator((2, 1))
    assert max_abs(swap - PI_SWAP) == 0.0
    cycle = permutation_operator((2, 3, 1))
    # content of slot p moves to slot sigma(p): |x y z> -> |z x y>
    state = basis_state("100")
    assert max_abs(cycle @ state - basis_state("010")) == 0.0
    assert max_abs(cycle @ cycle @ cycle - identity(3)) == 0.0


def test_apply_window_matches_full_matrix(rng):
    n = 5
    state = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    u = np.linalg.qr(rng.normal(size=(8, 8)) + 1j * rng.normal(size=(8, 8)))[0]
    for first in (0, 1, 2):
        full = embed(u, [first, first + 1, first + 2], n)
        assert max_abs(apply_window(state, u, first, n) - full @ state) < 1e-12


def test_apply_two_qubit_matches_embed(rng):
    n = 4
    state = rng.normal(size=2**n) + 1j * rng.normal(size=2**n)
    r = build_r(random_complex(rng), 0.8)
    for q0, q1 in [(0, 2), (3, 1), (2, 3)]:
        full = embed(r, [q0, q1], n)
        assert max_abs(apply_two_qubit(state, r, q0, q1, n) - full @ state) < 1e-12
