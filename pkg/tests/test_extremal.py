from __future__ import annotations

import json
from fractions import Fraction as F

import pytest

from cubedensity.analytics import construction_density_exact
from cubedensity.constructions import CONSTRUCTIONS, LayeredSpec, construction, generate, named
from cubedensity.cube import CubeConfig
from cubedensity.density import FeasibilityError, count_good
from cubedensity.extremal import (
    SearchParams,
    averaging_identity,
    ex_exhaustive,
    good_counts_all,
    local_search,
    monotonicity_report,
)


def brute_ex(H, n):
    return max(count_good(H, CubeConfig(n, m)).good_count for m in range(1 << (1 << n)))


def test_exhaustive_matches_brute_force_n3():
    for name in ("Z2", "Z3", "Z4"):
        H = named(name).config
        assert ex_exhaustive(H, 3).good_count == brute_ex(H, 3)


def test_all_mask_counts_match_count_good():
    H = named("Z3").config
    counts = good_counts_all(H, 3)
    for m in range(256):
        assert counts[m] == count_good(H, CubeConfig(3, m)).good_count


def test_trivial_cases():
    assert ex_exhaustive(named("Z3").config, 2).ex_value == 1
    assert ex_exhaustive(named("W2").config, 3).ex_value == 1
    for n in (2, 3, 4):
        assert ex_exhaustive(CubeConfig.full(2), n).ex_value == 1


def test_witnesses_verify():
    H = named("Z3").config
    for n in (3, 4):
        res = ex_exhaustive(H, n)
        assert 1 <= len(res.witnesses) <= 16
        for W in res.witnesses:
            assert count_good(H, W).good_count == res.good_count


def test_complement_symmetry():
    for name in ("Z2", "Z3"):
        H = named(name).config
        for n in (2, 3, 4):
            assert ex_exhaustive(H, n).ex_value == ex_exhaustive(H.complement(), n).ex_value


def test_exhaustive_dominates_constructions():
    for name in ("Z2", "Z3", "Z4", "W2", "W6", "W7", "W8", "W12"):
        H = named(name).config
        for n in range(H.dim, 5):
            try:
                value = construction_density_exact(CONSTRUCTIONS[name], H, n)
            except Exception:
                continue
            assert ex_exhaustive(H, n).ex_value >= value


def test_monotonicity_report():
    rep = monotonicity_report(named("Z3").config, 4)
    assert [e.n for e in rep] == [2, 3, 4]
    assert rep.nonincreasing and rep.averaging_ok
    assert all(v >= F(1, 2) for v in rep.values)
    assert all(v >= F(2, 3) for v in monotonicity_report(named("Z2").config, 4).values)
    assert set(monotonicity_report(CubeConfig.full(2), 4).values) == {1}


def test_averaging_identity_on_random_sets():
    import random

    rng = random.Random(1)
    for _ in range(10):
        S = CubeConfig(5, rng.getrandbits(32))
        ok, parts = averaging_identity(named("W2").config, S)
        assert ok and len(parts) == 10


def test_exhaustive_limit():
    with pytest.raises(FeasibilityError):
        ex_exhaustive(named("Z3").config, 5)


def test_search_never_worse_than_init():
    init = LayeredSpec(3, frozenset({0}))
    r = local_search(named("W8").config, 6, SearchParams(seed=3, restarts=2, max_steps=2000, init=init))
    assert r.init_good == count_good(named("W8").config, generate(init, 6).config).good_count
    assert r.best_good >= r.init_good


def test_search_from_w2_construction():
    H = named("W2").config
    r = local_search(H, 8, SearchParams(seed=1, restarts=1, max_steps=3000, init=construction("W2")))
    assert r.best_fraction >= construction_density_exact(construction("W2"), H, 8) == F(6, 7)


def test_search_reproducible_and_verified():
    H = named("Z3").config
    p = SearchParams(seed=11, restarts=2, max_steps=3000)
    a, b = local_search(H, 6, p), local_search(H, 6, p)
    assert json.dumps(a.to_json(), sort_keys=True) == json.dumps(b.to_json(), sort_keys=True)
    assert count_good(H, a.best_S).good_count == a.best_good
    c = local_search(H, 6, SearchParams(seed=12, restarts=2, max_steps=3000))
    assert c.params["seed"] == 12


def test_search_limits():
    with pytest.raises(FeasibilityError):
        local_search(named("Z3").config, 21)
    with pytest.raises(ValueError):
        local_search(named("Z3").config, 5, SearchParams(restarts=0))
