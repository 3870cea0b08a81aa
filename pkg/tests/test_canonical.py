from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubedensity.canonical import (
    OrbitAtlas,
    canonical_form,
    canonical_form_pruned,
    canonical_table,
    classify,
    is_exact_copy,
    is_layered,
    is_trivial_layered,
    orbit,
    parity_set,
)
from cubedensity.constructions import perfect_cycle
from cubedensity.cube import (
    Automorphism,
    CubeConfig,
    DimensionError,
    apply_automorphism,
    automorphism_table,
    enumerate_automorphisms,
)


def brute_orbit(H: CubeConfig) -> set[int]:
    return {apply_automorphism(a, H).mask for a in enumerate_automorphisms(H.dim)}


def burnside_orbit_count(d: int) -> int:
    """Orbits of Aut(Q_d) on subsets of V(Q_d): mean of 2^(cycles of the vertex map)."""
    total = 0
    for a in enumerate_automorphisms(d):
        seen, cycles = set(), 0
        for v in range(1 << d):
            if v in seen:
                continue
            cycles += 1
            w = v
            while w not in seen:
                seen.add(w)
                w = a(w)
        total += 2**cycles
    count, rem = divmod(total, 2**d * len(list(itertools.permutations(range(d)))))
    assert rem == 0
    return count


@pytest.mark.parametrize("d,orbits,classes", [(0, 2, 1), (1, 3, 2), (2, 6, 4), (3, 22, 14), (4, 402, 222)])
def test_classification_counts(d, orbits, classes):
    atlas = classify(d)
    assert atlas.orbit_count == orbits
    assert atlas.complement_class_count == classes
    assert sum(c.orbit_size for c in atlas.classes) == 2 ** (2**d)


@pytest.mark.parametrize("d", [1, 2, 3])
def test_orbit_count_matches_burnside(d):
    assert classify(d).orbit_count == burnside_orbit_count(d)


def test_table_keys_are_orbit_minima():
    # the key is the least image in member-first order: the lexicographically least sorted member tuple
    for mask in range(256):
        H = CubeConfig(3, mask)
        imgs = brute_orbit(H)
        best = min(imgs, key=lambda m: sorted(CubeConfig(3, m).members()))
        assert canonical_form(H).key == best


def test_pruned_agrees_with_table():
    for d in range(1, 5):
        table = canonical_table(d)
        rng = random.Random(d)
        for mask in rng.sample(range(1 << (1 << d)), min(300, 1 << (1 << d))):
            assert canonical_form_pruned(CubeConfig(d, mask)).key == int(table[mask])


def test_pruned_matches_brute_force_d5():
    rng = random.Random(5)
    auts = automorphism_table(5)
    for _ in range(25):
        H = CubeConfig(5, rng.getrandbits(32))
        members = H.members()
        images = set()
        for row in auts:
            images.add(sum(1 << int(row[v]) for v in members))
        best = min(images, key=lambda m: sorted(CubeConfig(5, m).members()))
        assert canonical_form(H).key == best


@settings(max_examples=40, deadline=None)
@given(
    st.integers(0, (1 << 32) - 1),
    st.permutations(list(range(5))).map(tuple),
    st.integers(0, 31),
)
def test_canonical_form_invariant_d5(mask, perm, t):
    H = CubeConfig(5, mask)
    K = apply_automorphism(Automorphism(perm, t), H)
    assert canonical_form(H) == canonical_form(K)
    assert is_exact_copy(H, K)


def test_orbit_matches_brute_force():
    H = CubeConfig.from_bitstrings(["000", "110", "111"])
    assert orbit(H) == brute_orbit(H)
    assert len(orbit(H)) == classify(3).classes[classify(3).index_of(H)].orbit_size


def test_exact_copy_is_stricter_than_size():
    # both are 2-sets, but an edge and a diagonal are not exact copies
    assert not is_exact_copy(CubeConfig.from_bitstrings(["00", "10"]), CubeConfig.from_bitstrings(["00", "11"]))
    with pytest.raises(DimensionError):
        is_exact_copy(CubeConfig(2), CubeConfig(3))


def test_layered_detection():
    assert is_layered(CubeConfig.from_bitstrings(["000", "111"])) == frozenset({0, 3})
    assert is_layered(CubeConfig.from_bitstrings(["110", "101", "011"])) == frozenset({2})
    assert is_layered(CubeConfig.from_bitstrings(["000", "110"])) is None
    # the smallest working translate decides the reported weights
    assert is_layered(CubeConfig.from_bitstrings(["1000", "0100", "0010", "0001", "1111"])) is not None


def test_perfect_six_cycle_is_layered():
    # the 6-cycle is the complement of an antipodal pair, so a translate makes it weights {1, 2}
    C6 = perfect_cycle(3)
    assert len(C6) == 6
    assert is_layered(C6) == frozenset({1, 2})


def test_trivial_layered():
    assert is_trivial_layered(CubeConfig(3))
    assert is_trivial_layered(CubeConfig.full(3))
    assert is_trivial_layered(parity_set(3, 0))
    assert is_trivial_layered(parity_set(3, 1))
    assert not is_trivial_layered(CubeConfig.from_bitstrings(["000"]))


def test_complement_pairing_and_json_roundtrip():
    atlas = classify(3)
    for i, c in enumerate(atlas.classes):
        j = c.complement_of
        assert atlas.classes[j].complement_of == i
        assert is_exact_copy(c.config.complement(), atlas.classes[j].config)
    again = OrbitAtlas.from_json(atlas.to_json())
    assert again == atlas


def test_dimension_limits():
    with pytest.raises(DimensionError):
        classify(5)
    with pytest.raises(DimensionError):
        canonical_form(CubeConfig(9))
