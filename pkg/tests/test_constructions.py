from __future__ import annotations

import itertools
import json
from fractions import Fraction as F

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubedensity.canonical import is_exact_copy, is_layered
from cubedensity.constructions import (
    CONSTRUCTIONS,
    REGISTRY,
    BlowupSpec,
    ConstructionError,
    LayeredSpec,
    PartitionModularSpec,
    RandomSpec,
    construction,
    cross_checks,
    family_E,
    family_H,
    generate,
    hamming_code_q7,
    named,
    part_sizes,
    perfect_cycle,
    perfect_cycle_order,
    spec_from_json,
)
from cubedensity.cube import CubeConfig, DimensionError, Subcube, hamming, restrict
from cubedensity.density import count_good


def test_layered_example():
    S = generate(LayeredSpec(2, {0}), 5).config
    assert len(S) == 16
    assert all(v.bit_count() % 2 == 0 for v in S)


def test_partition_modular_example():
    spec = PartitionModularSpec((F(1, 2), F(1, 2)), (2, 2), {(0, None)})
    S = generate(spec, 6).config
    assert len(S) == 32
    assert all((v & 0b111).bit_count() % 2 == 0 for v in S)


def test_blowup_example():
    S = generate(BlowupSpec(named("Z4").config, (F(1, 2), F(1, 2))), 4).config
    expected = {v for v in range(16) if (v & 3).bit_count() % 2 == (v >> 2).bit_count() % 2}
    assert set(S) == expected and len(S) == 8


def test_part_sizes_rules():
    assert part_sizes((F(1, 2), F(1, 2)), 7) == (4, 3)
    assert part_sizes((F(2, 3), F(1, 3)), 7, "floor") == (4, 3)
    assert part_sizes((F(1, 3), F(1, 3), F(1, 3)), 8) == (3, 3, 2)
    assert part_sizes((F(1, 4), F(3, 4)), 9, "ceil") == (3, 6)
    with pytest.raises(ConstructionError):
        part_sizes((F(1, 2), F(1, 3)), 6)
    with pytest.raises(ConstructionError):
        generate(PartitionModularSpec((F(1, 2), F(1, 2)), (2, 2), {(0, 0)}), 1)


@settings(max_examples=25, deadline=None)
@given(st.integers(1, 4), st.integers(1, 10), st.data())
def test_predicate_agrees_with_explicit(a, n, data):
    residues = data.draw(st.sets(st.integers(0, a - 1)))
    spec = LayeredSpec(a, frozenset(residues))
    g = generate(spec, n)
    assert all(g.predicate(v) == (v in g.config) for v in range(1 << n))


def test_random_spec_predicate_matches_explicit():
    spec = RandomSpec(F(1, 3), seed=42)
    g = generate(spec, 11)
    assert all((v in spec) == (v in g.config) for v in range(1 << 11))
    assert 0.25 < len(g.config) / 2**11 < 0.42
    assert generate(RandomSpec(F(1), 1), 4).config == CubeConfig.full(4)
    assert len(generate(RandomSpec(F(0), 1), 4).config) == 0


def test_named_examples():
    assert set(named("W8").config.bitstrings()) == {"110", "101", "011"}
    assert set(named("Y").config.bitstrings()) == {"0000", "1100", "0011", "1111"}
    assert set(named("Z").config.bitstrings()) == {"0000", "1100", "1010", "0110"}
    assert len(named("T").config) == 24
    assert named("U5").config == CubeConfig(5, 1)
    assert named("H(3,1)").config == family_H(3, 1)
    assert named("C8").config == perfect_cycle(4)
    with pytest.raises(KeyError):
        named("W99")


def test_h_family_examples_and_properties():
    assert is_exact_copy(family_H(2, 1), named("Z3").config)
    assert family_H(3, 1) == named("W6").config
    assert family_H(3, 2) == named("W13").config
    for d in range(2, 7):
        for i in range(1, d):
            H = family_H(d, i)
            assert len(H) == 2 ** (d - 1)
            assert is_exact_copy(H, H.complement())
            for v in H:
                assert sum((v ^ (1 << k)) in H for k in range(d)) == d - i
    with pytest.raises(DimensionError):
        family_H(3, 3)


def test_e_family():
    assert is_exact_copy(family_E(3, 1), named("W2").config)
    assert is_exact_copy(family_E(4, 2), named("Y").config)
    assert is_exact_copy(family_E(4, 1), named("Z").config)
    for d in range(2, 7):
        for i in range(1, d):
            assert len(family_E(d, i)) == 2 ** (d - 2)
            assert is_exact_copy(family_E(d, i), family_E(d, d - i))


def test_hamming_code():
    C = hamming_code_q7()
    words = C.members()
    assert len(words) == 16
    dists = [hamming(a, b) for i, a in enumerate(words) for b in words[i + 1 :]]
    assert min(dists) == 3
    assert dists.count(3) == 56
    for w in words:
        assert sum(hamming(w, u) == 3 for u in words) == 7
    # perfect: every vertex of Q7 is within distance 1 of exactly one codeword
    assert all(sum(hamming(v, w) <= 1 for w in words) == 1 for v in range(128))


def test_perfect_cycle():
    C = perfect_cycle(4)
    assert set(C.bitstrings()) == {"0000", "1000", "1100", "1110", "1111", "0111", "0011", "0001"}
    for d in range(2, 7):
        order = perfect_cycle_order(d)
        assert len(set(order)) == 2 * d
        for k in range(2 * d):
            assert hamming(order[k], order[(k + 1) % (2 * d)]) == 1
            assert hamming(order[k], order[(k + d) % (2 * d)]) == d
        # induced: no chords
        for a in range(2 * d):
            for b in range(a + 2, 2 * d):
                if (a, b) != (0, 2 * d - 1):
                    assert hamming(order[a], order[b]) > 1
    assert perfect_cycle(2) == CubeConfig.full(2)


def test_registry_cross_checks():
    checks = cross_checks()
    assert checks and all(checks.values()), checks


def test_layered_registry_flags():
    assert is_layered(named("W7").config) == frozenset({0, 3})
    assert is_layered(named("W12").config) == frozenset({0, 1})


def test_blowup_guarantee():
    # one flip bit in each part gives an exact copy of the base
    base = named("W11").config
    spec = BlowupSpec(base)
    n = 7
    g = generate(spec, n)
    sizes = g.model.sizes
    starts = [sum(sizes[:p]) for p in range(len(sizes))]
    for picks in itertools.product(*(range(s, s + k) for s, k in zip(starts, sizes))):
        F_ = sum(1 << b for b in picks)
        for base_bits in (0, ((1 << n) - 1) & ~F_):
            assert is_exact_copy(restrict(g.config, Subcube(n, F_, base_bits)), base)


def test_constructions_reach_targets_at_small_n():
    for name in ("Z3", "W2", "W6", "W13", "Y", "Z", "W11", "W12", "W7", "W8"):
        spec = CONSTRUCTIONS[name]
        H = named(name).config
        assert count_good(H, generate(spec, H.dim + 3).config).good_count > 0


def test_construction_aliases():
    assert construction("W2-construction") is CONSTRUCTIONS["W2"]
    assert construction("H(4,1)").fractions == (F(1, 4), F(3, 4))
    assert construction("U4") == LayeredSpec(5, frozenset({0}))
    with pytest.raises(KeyError):
        construction("nothing")


def test_json_specs(tmp_path):
    docs = [
        {"kind": "explicit", "dim": 3, "vertices": ["000", "110"]},
        {"kind": "named", "name": "W8"},
        {"kind": "layered", "modulus": 3, "residues": [0]},
        {"kind": "partition_modular", "parts": [{"fraction": "1/2", "modulus": 2}, {"fraction": "1/2", "modulus": 2}], "allowed": [[0, None]]},
        {"kind": "blowup", "base": "Z4"},
        {"kind": "random", "p": "1/8", "seed": 5},
    ]
    for doc in docs:
        p = tmp_path / "spec.json"
        p.write_text(json.dumps(doc))
        obj = spec_from_json(p)
        if not isinstance(obj, CubeConfig):
            again = spec_from_json(obj.to_json())
            assert again == obj
    assert spec_from_json(docs[0]) == named("W2").config
    with pytest.raises(ConstructionError):
        spec_from_json({"kind": "mystery"})


def test_registry_is_complete():
    for name in ["Z1", "Z2", "Z3", "Z4"] + [f"W{k}" for k in range(1, 15)] + ["Y", "Z", "C8", "T", "hamming7"]:
        assert name in REGISTRY
