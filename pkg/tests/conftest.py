import numpy as np
import pytest

from bethecirc.model import ChainSpec


def random_complex(rng, scale=1.0):
    return complex(rng.uniform(-scale, scale), rng.uniform(-scale, scale))


def random_spec(rng, n, m, homogeneous=False, spread=True):
    """Random chain with rapidities kept apart so Gram matrices stay sane."""
    while True:
        gamma = random_complex(rng)
        if abs(np.sinh(1j * gamma)) < 0.2:
            continue
        v = [0j] * n if homogeneous else [random_complex(rng, 0.5) for _ in range(n)]
        u = [random_complex(rng) for _ in range(m)]
        if spread and any(
            abs(u[a] - u[b]) < 0.2 for a in range(m) for b in range(a + 1, m)
        ):
            continue
        try:
            return ChainSpec(
                n_sites=n, n_magnons=m, gamma=gamma, inhomogeneities=v, rapidities=u
            )
        except Exception:
            continue


@pytest.fixture
def rng():
    return np.random.default_rng(20260810)
