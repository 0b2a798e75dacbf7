from itertools import permutations

import numpy as np
import pytest

from bethecirc.errors import SizeGuardError
from bethecirc.model import ChainSpec, weight_f
from bethecirc.qubits import basis_state, embed, identity, max_abs
from bethecirc.rmatrix import (
    PI_SWAP,
    bubble_word,
    build_monodromy,
    build_r,
    embed_monodromy,
    monodromy_blocks,
    permutation_r,
    permutation_r_word,
    rtt_residual,
    transfer_matrix,
    ybe_residual,
)
from bethecirc.sectors import sector_basis, chi_of
from conftest import random_complex, random_spec

GAMMA = 0.8 - 0.15j


def test_r_diagonal_corners_are_one(rng):
    r = build_r(random_complex(rng), GAMMA)
    assert r[0, 0] == 1.0 and r[3, 3] == 1.0


def test_r_structure(rng):
    u = random_complex(rng)
    r = build_r(u, GAMMA)
    f, g = weight_f(u, GAMMA), r[1, 2]
    assert r[1, 1] == r[2, 2] == f
    assert r[1, 2] == r[2, 1] == g
    assert max_abs(r - r.T) == 0.0


def test_regularity_exact():
    assert max_abs(build_r(0.0, GAMMA) - PI_SWAP) < 1e-15
    assert max_abs(build_r(0.0, 1.1) - PI_SWAP) < 1e-15


def test_pseudo_unitarity(rng):
    worst = 0.0
    for _ in range(100):
        u = random_complex(rng)
        r12 = build_r(u, GAMMA)
        r21 = PI_SWAP @ build_r(-u, GAMMA) @ PI_SWAP
        worst = max(worst, max_abs(r12 @ r21 - identity(2)))
    assert worst < 1e-12


def test_ybe_random_triples(rng):
    worst = max(
        ybe_residual(random_complex(rng), random_complex(rng), random_complex(rng), GAMMA)
        for _ in range(100)
    )
    assert worst < 1e-12


def test_ybe_degenerate_arguments(rng):
    u = random_complex(rng)
    w = random_complex(rng)
    assert ybe_residual(u, u, w, GAMMA) < 1e-13
    assert ybe_residual(u, u, u, GAMMA) < 1e-13


def test_monodromy_single_site(rng):
    spec = random_spec(rng, 1, 0)
    u = random_complex(rng)
    t = build_monodromy(u, spec)
    assert max_abs(t - build_r(u - spec.inhomogeneities[0], spec.gamma)) == 0.0


def test_monodromy_size_guard():
    spec = ChainSpec(n_sites=13, n_magnons=0, gamma=GAMMA)
    with pytest.raises(SizeGuardError):
        build_monodromy(0.3, spec)


def test_rtt_relation(rng):
    for n in (2, 3, 4):
        spec = random_spec(rng, n, 0)
        assert rtt_residual(random_complex(rng), random_complex(rng), spec) < 1e-12


def test_creation_block_matches_sweep_route(rng):
    # <0|T|1> extracted from the dense monodromy equals the windowed-sweep
    # construction used by the reference-state builder.
    from bethecirc.states import _apply_creation

    spec = random_spec(rng, 3, 0)
    u = random_complex(rng)
    _, b_block, _, _ = monodromy_blocks(build_monodromy(u, spec))
    vac = basis_state("000")
    assert max_abs(b_block @ vac - _apply_creation(vac, u, spec)) < 1e-13


def test_transfer_commutes(rng):
    for n in (2, 4, 6):
        spec = random_spec(rng, n, 0)
        t1 = transfer_matrix(random_complex(rng), spec)
        t2 = transfer_matrix(random_complex(rng), spec)
        assert max_abs(t1 @ t2 - t2 @ t1) < 1e-10


def test_transfer_preserves_sectors(rng):
    spec = random_spec(rng, 4, 0)
    t = transfer_matrix(random_complex(rng), spec)
    labels = np.array([bin(i).count("1") for i in range(16)])
    off = t[labels[:, None] != labels[None, :]]
    assert max_abs(off) < 1e-13


def test_transfer_single_site(rng):
    spec = random_spec(rng, 1, 0)
    u = random_complex(rng)
    t = transfer_matrix(u, spec)
    f = weight_f(u - spec.inhomogeneities[0], spec.gamma)
    assert max_abs(t - (1 + f) * identity(1)) < 1e-14


def test_permutation_r_identity(rng):
    us = [random_complex(rng) for _ in range(3)]
    assert max_abs(permutation_r((1, 2, 3), us, GAMMA) - identity(3)) == 0.0


def test_permutation_r_explicit_factorization(rng):
    us = [random_complex(rng) for _ in range(3)]

    def r(a, b):
        return embed(build_r(us[a - 1] - us[b - 1], GAMMA), [a - 1, b - 1], 3)

    lhs = permutation_r((3, 2, 1), us, GAMMA)
    assert max_abs(lhs - r(1, 2) @ r(1, 3) @ r(2, 3)) < 1e-13


def test_permutation_r_reduced_words_agree(rng):
    us = [random_complex(rng) for _ in range(3)]
    # two different reduced words for the full inversion (3,2,1)
    word_a = [(1, 2), (1, 3), (2, 3)]
    word_b = [(2, 3), (1, 3), (1, 2)]
    ra = permutation_r_word(word_a, us, GAMMA)
    rb = permutation_r_word(word_b, us, GAMMA)
    assert max_abs(ra - rb) < 1e-12


def test_permutation_r_defining_relation(rng):
    us = [random_complex(rng) for _ in range(3)]
    spec = random_spec(rng, 1, 0)
    total = 4
    t_ops = [embed_monodromy(build_monodromy(u, spec), a, [3], total) for a, u in enumerate(us)]
    for sig in permutations((1, 2, 3)):
        rs = embed(permutation_r(sig, us, GAMMA), [0, 1, 2], total)
        lhs = rs @ t_ops[0] @ t_ops[1] @ t_ops[2]
        rhs = t_ops[sig[0] - 1] @ t_ops[sig[1] - 1] @ t_ops[sig[2] - 1] @ rs
        assert max_abs(lhs - rhs) < 1e-12


def test_permutation_r_group_law(rng):
    # R^{sigma tau} equals the continuation product applied after R^sigma
    us = [random_complex(rng) for _ in range(3)]
    sigma = (2, 3, 1)
    tau = (3, 1, 2)
    sigma_tau = tuple(sigma[t - 1] for t in tau)
    first = permutation_r(sigma, us, GAMMA)
    continuation = permutation_r_word(bubble_word(sigma, sigma_tau), us, GAMMA)
    assert max_abs(continuation @ first - permutation_r(sigma_tau, us, GAMMA)) < 1e-12


def test_triple_product_reorderings(rng):
    # Both bracketings of the triple inversion reproduce T1 T2 T3 at N = 1, 2.
    for n in (1, 2):
        spec = random_spec(rng, n, 0)
        us = [random_complex(rng) for _ in range(3)]
        total = 3 + n
        spins = list(range(3, total))
        t_ops = [
            embed_monodromy(build_monodromy(u, spec), a, spins, total) for a, u in enumerate(us)
        ]

        def r(a, b):
            return embed(build_r(us[a - 1] - us[b - 1], GAMMA), [a - 1, b - 1], total)

        t123 = t_ops[0] @ t_ops[1] @ t_ops[2]
        t321 = t_ops[2] @ t_ops[1] @ t_ops[0]
        inv = np.linalg.inv
        lhs1 = inv(r(2, 3)) @ inv(r(1, 3)) @ inv(r(1, 2)) @ t321 @ r(1, 2) @ r(1, 3) @ r(2, 3)
        lhs2 = inv(r(1, 2)) @ inv(r(1, 3)) @ inv(r(2, 3)) @ t321 @ r(2, 3) @ r(1, 3) @ r(1, 2)
        assert max_abs(lhs1 - t123) < 1e-10
        assert max_abs(lhs2 - t123) < 1e-10
