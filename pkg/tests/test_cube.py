from __future__ import annotations

import itertools
from math import comb, factorial

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubedensity.cube import (
    Automorphism,
    CubeConfig,
    DimensionError,
    Subcube,
    apply_automorphism,
    automorphism_count,
    automorphism_table,
    deposit,
    enumerate_automorphisms,
    enumerate_subcubes,
    extract,
    hamming,
    masks_of_weight,
    permutation_table,
    restrict,
    subcube_count,
    vertex_from_bits,
    vertex_from_subset,
    vertex_to_bits,
    weight,
)


def automorphisms(d):
    return st.builds(
        Automorphism,
        st.permutations(list(range(d))).map(tuple),
        st.integers(0, (1 << d) - 1),
    )


def test_bit_conventions():
    assert vertex_from_bits("1010") == 0b0101
    assert vertex_to_bits(5, 4) == "1010"
    assert vertex_from_subset("13") == 0b101
    assert vertex_from_subset("∅") == 0
    assert vertex_from_subset([2]) == 2
    assert weight(0b1011) == 3
    assert hamming(0b1100, 0b0101) == 2
    with pytest.raises(ValueError):
        vertex_from_bits("102")


@given(st.integers(0, 255), st.integers(0, 255))
def test_deposit_extract_roundtrip(x, mask):
    k = mask.bit_count()
    x &= (1 << k) - 1
    assert extract(deposit(x, mask), mask) == x
    assert deposit(x, mask) & ~mask == 0


def test_masks_of_weight_matches_combinations():
    for n in range(7):
        for d in range(n + 1):
            got = list(masks_of_weight(n, d))
            want = sorted(sum(1 << b for b in c) for c in itertools.combinations(range(n), d))
            assert got == want


def test_config_roundtrips():
    H = CubeConfig.from_bitstrings(["000", "110", "111"])
    assert len(H) == 3
    assert H.bitstrings() == ["000", "110", "111"]
    assert CubeConfig.from_array(H.to_array()) == H
    assert H.complement().complement() == H
    assert len(H.complement()) == 5
    assert H.distance_multiset() == [1, 2, 3]
    with pytest.raises(DimensionError):
        CubeConfig(2, 1 << 4)
    with pytest.raises(DimensionError):
        CubeConfig.from_vertices(2, [4])


def test_subcube_vertices_and_validation():
    R = Subcube(4, 0b0101, 0b1010)
    assert R.dim == 2
    assert R.vertices() == [0b1010, 0b1011, 0b1110, 0b1111]
    assert all(v in R for v in R.vertices())
    with pytest.raises(DimensionError):
        Subcube(4, 0b0101, 0b0001)
    with pytest.raises(DimensionError):
        Subcube(3, 0, 0)


def test_subcube_enumeration_counts():
    for n in range(1, 7):
        for d in range(1, n + 1):
            cubes = list(enumerate_subcubes(n, d))
            assert len(cubes) == subcube_count(n, d) == comb(n, d) * 2 ** (n - d)
            assert len({(R.flip_mask, R.base) for R in cubes}) == len(cubes)


def test_restrict_local_order():
    # flip bits 2, 3, 5 of Q6 at base 0: local bit j is the j-th lowest flip coordinate
    S = CubeConfig.from_vertices(6, [0, vertex_from_subset("23"), vertex_from_subset("235")])
    R = Subcube(6, vertex_from_subset("235"), 0)
    assert restrict(S, R).bitstrings() == ["000", "110", "111"]


def test_group_order_and_enumeration():
    for d in range(5):
        auts = list(enumerate_automorphisms(d))
        assert len(auts) == automorphism_count(d) == 2**d * factorial(d)
        assert len({a.vertex_map() for a in auts}) == len(auts)


def test_dense_tables_match_objects():
    for d in range(5):
        table = automorphism_table(d)
        for row, a in zip(table, enumerate_automorphisms(d)):
            assert tuple(int(x) for x in row) == a.vertex_map()
    pt = permutation_table(3)
    assert pt.shape == (6, 8)


@settings(max_examples=60)
@given(automorphisms(4), automorphisms(4), automorphisms(4), st.integers(0, 15))
def test_group_laws(a, b, c, v):
    assert a.compose(b)(v) == a(b(v))
    assert a.compose(b).compose(c).vertex_map() == a.compose(b.compose(c)).vertex_map()
    assert a.compose(a.inverse()).vertex_map() == Automorphism.identity(4).vertex_map()
    assert a.inverse().compose(a).vertex_map() == Automorphism.identity(4).vertex_map()


@settings(max_examples=60)
@given(automorphisms(5), st.integers(0, 31), st.integers(0, 31))
def test_automorphisms_are_isometries(a, u, v):
    assert hamming(a(u), a(v)) == hamming(u, v)


@given(automorphisms(3), st.integers(0, 255))
def test_apply_preserves_size(a, mask):
    H = CubeConfig(3, mask)
    assert len(apply_automorphism(a, H)) == len(H)


def test_flip_constructor():
    a = Automorphism.flip(3, [1, 3])
    assert a(0) == 0b101
    with pytest.raises(ValueError):
        Automorphism((0, 0, 1), 0)
