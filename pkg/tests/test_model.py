import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethecirc.errors import DegenerateRapiditiesError, PoleError
from bethecirc.model import (
    ChainSpec,
    quasi_momentum,
    rapidity_from_momentum,
    scattering_amplitude,
    weight_f,
    weight_g,
)
from conftest import random_complex, random_spec

GAMMA = 0.9 + 0.2j


def test_f_vanishes_at_zero():
    assert weight_f(0.0, GAMMA) == 0.0
    assert weight_f(0.0, 1.3) == 0.0


def test_f_symmetric_point():
    # gamma = pi/2, u = i pi/4: sin(pi/4)/sin(3pi/4) = 1
    assert abs(weight_f(0.25j * np.pi, np.pi / 2) - 1.0) < 1e-14


def test_g_at_zero_is_one():
    assert weight_g(0.0, GAMMA) == 1.0


def test_g_decays_for_large_real_u():
    assert abs(weight_g(30.0, GAMMA)) < 1e-10


def test_pole_raises():
    with pytest.raises(PoleError):
        weight_f(-1j * GAMMA, GAMMA)
    with pytest.raises(PoleError):
        weight_g(-1j * 0.7, 0.7)


complex_box = st.builds(
    complex,
    st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False),
    st.floats(-2.0, 2.0, allow_nan=False, allow_infinity=False),
)


@settings(max_examples=300, deadline=None)
@given(u=complex_box)
def test_weight_identities(u):
    # f(u)f(-u) + g(u)g(-u) = 1 and f(u)g(-u) + g(u)f(-u) = 0
    try:
        f_p, f_m = weight_f(u, GAMMA), weight_f(-u, GAMMA)
        g_p, g_m = weight_g(u, GAMMA), weight_g(-u, GAMMA)
    except PoleError:
        return
    assert abs(f_p * f_m + g_p * g_m - 1.0) < 1e-12
    assert abs(f_p * g_m + g_p * f_m) < 1e-12


def test_weight_identities_bulk(rng):
    worst_one = worst_zero = 0.0
    for _ in range(10_000):
        u = random_complex(rng, 2.0)
        try:
            f_p, f_m = weight_f(u, GAMMA), weight_f(-u, GAMMA)
            g_p, g_m = weight_g(u, GAMMA), weight_g(-u, GAMMA)
        except PoleError:
            continue
        worst_one = max(worst_one, abs(f_p * f_m + g_p * g_m - 1.0))
        worst_zero = max(worst_zero, abs(f_p * g_m + g_p * f_m))
    assert worst_one < 1e-12
    assert worst_zero < 1e-12


def test_quasi_momentum_matches_f(rng):
    spec = random_spec(rng, 5, 3)
    for a in range(1, 4):
        for j in range(1, 6):
            expected = weight_f(spec.rapidities[a - 1] - spec.inhomogeneities[j - 1], spec.gamma)
            assert quasi_momentum(a, j, spec) == expected


def test_quasi_momentum_homogeneous_uniform(rng):
    spec = random_spec(rng, 5, 2, homogeneous=True)
    vals = {quasi_momentum(1, j, spec) for j in range(1, 6)}
    assert len(vals) == 1


def test_quasi_momentum_vanishes_when_rapidity_hits_site():
    spec = ChainSpec(
        n_sites=2,
        n_magnons=1,
        gamma=GAMMA,
        inhomogeneities=[0.3 + 0.1j, 0.5],
        rapidities=[0.3 + 0.1j],
    )
    assert quasi_momentum(1, 1, spec) == 0.0


def test_scattering_amplitude(rng):
    spec = random_spec(rng, 4, 3)
    for a in range(1, 4):
        for b in range(1, 4):
            if a == b:
                with pytest.raises(DegenerateRapiditiesError):
                    scattering_amplitude(a, a, spec)
            else:
                assert scattering_amplitude(a, b, spec) == weight_f(
                    spec.rapidities[a - 1] - spec.rapidities[b - 1], spec.gamma
                )


def test_s_matrix_reciprocal(rng):
    spec = random_spec(rng, 4, 2)
    s_ab = scattering_amplitude(1, 2, spec)
    s_ba = scattering_amplitude(2, 1, spec)
    assert abs((s_ba / s_ab) * (s_ab / s_ba) - 1.0) < 1e-14


def test_purity(rng):
    spec = random_spec(rng, 4, 2)
    assert quasi_momentum(1, 3, spec) == quasi_momentum(1, 3, spec)
    assert scattering_amplitude(1, 2, spec) == scattering_amplitude(1, 2, spec)


def test_chainspec_rejects_coincident_rapidities():
    with pytest.raises(DegenerateRapiditiesError):
        ChainSpec(n_sites=3, n_magnons=2, gamma=GAMMA, rapidities=[0.4, 0.4 + 1e-14])


def test_chainspec_rejects_bad_sizes():
    with pytest.raises(ValueError):
        ChainSpec(n_sites=2, n_magnons=3, gamma=GAMMA, rapidities=[0.1, 0.2, 0.3])
    with pytest.raises(ValueError):
        ChainSpec(n_sites=0, n_magnons=0, gamma=GAMMA)


def test_chainspec_rejects_pole_configuration():
    # u - v + i*gamma at a sinh zero makes f, g undefined
    with pytest.raises(PoleError):
        ChainSpec(
            n_sites=1,
            n_magnons=1,
            gamma=0.7,
            inhomogeneities=[0.0],
            rapidities=[-0.7j],
        )


def test_delta_derived():
    spec = ChainSpec(n_sites=2, n_magnons=0, gamma=GAMMA)
    assert spec.delta == complex(np.cos(GAMMA))


def test_rapidity_from_momentum_inverts_f():
    for x in (np.exp(0.4j), np.exp(-1.1j), 0.7 + 0.2j):
        u = rapidity_from_momentum(x, 0.73)
        assert abs(weight_f(u, 0.73) - x) < 1e-12
