import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from bethecirc.sectors import (
    chi_of,
    decode,
    embed_sector,
    encode,
    extract_sector,
    off_sector_norm,
    sector_basis,
    sector_dim,
)

# Collective-index assignment for k = 4, r = 2 (the reference table).
TABLE_K4_R2 = [
    ((3, 4), 3, 1),
    ((2, 4), 5, 2),
    ((2, 3), 6, 3),
    ((1, 4), 9, 4),
    ((1, 3), 10, 5),
    ((1, 2), 12, 6),
]


def test_reference_table():
    for string, chi, alpha in TABLE_K4_R2:
        assert chi_of(string, 4) == chi
        assert encode(string, 4) == alpha
        assert decode(alpha, 4, 2) == string
    assert [s for s, _, _ in TABLE_K4_R2] == list(sector_basis(4, 2))


def test_empty_string_and_full_string():
    assert encode((), 4) == 1
    assert decode(1, 5, 5) == (1, 2, 3, 4, 5)
    assert sector_dim(5, 5) == 1


def test_round_trip_all_sectors():
    for k in range(1, 11):
        for r in range(0, k + 1):
            basis = sector_basis(k, r)
            assert len(basis) == sector_dim(k, r)
            for alpha, s in enumerate(basis, start=1):
                assert encode(s, k) == alpha
                assert decode(alpha, k, r) == s


def test_alpha_order_matches_chi_order():
    for k in range(1, 9):
        for r in range(0, k + 1):
            chis = [chi_of(s, k) for s in sector_basis(k, r)]
            assert chis == sorted(chis)


def test_sectors_partition_basis():
    for k in range(1, 11):
        seen = set()
        for r in range(0, k + 1):
            seen |= {chi_of(s, k) for s in sector_basis(k, r)}
        assert seen == set(range(2**k))


def test_out_of_range_sector_is_empty():
    assert sector_basis(3, -1) == ()
    assert sector_basis(3, 4) == ()
    assert sector_dim(3, 4) == 0


def test_encode_rejects_bad_strings():
    with pytest.raises(ValueError):
        encode((2, 2), 4)
    with pytest.raises(ValueError):
        encode((0, 1), 4)
    with pytest.raises(ValueError):
        decode(7, 4, 2)


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10), st.data())
def test_round_trip_hypothesis(k, data):
    r = data.draw(st.integers(0, k))
    alpha = data.draw(st.integers(1, sector_dim(k, r)))
    assert encode(decode(alpha, k, r), k) == alpha


def test_embed_sector_places_amplitudes():
    vec = np.zeros(6, dtype=complex)
    vec[0] = 1.0
    state = embed_sector(vec, 4, 2)
    assert state[0b0011] == 1.0
    assert np.count_nonzero(state) == 1


def test_embed_sector_norm_and_round_trip(rng):
    vec = rng.normal(size=6) + 1j * rng.normal(size=6)
    state = embed_sector(vec, 4, 2)
    assert abs(np.linalg.norm(state) - np.linalg.norm(vec)) < 1e-14
    assert np.array_equal(extract_sector(state, 4, 2), vec)
    assert off_sector_norm(state, 4, 2) == 0.0


def test_embed_sector_zero_vector():
    assert np.count_nonzero(embed_sector(np.zeros(6, dtype=complex), 4, 2)) == 0


def test_embed_sector_dimension_mismatch():
    with pytest.raises(ValueError):
        embed_sector(np.zeros(5, dtype=complex), 4, 2)
