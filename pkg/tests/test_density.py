from __future__ import annotations

import random
from fractions import Fraction
from math import comb

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cubedensity.constructions import named
from cubedensity.cube import CubeConfig, DimensionError, Subcube, enumerate_subcubes, restrict, vertex_from_subset
from cubedensity.density import (
    FeasibilityError,
    count_good,
    count_good_naive,
    count_good_sampled,
    density_profile,
    local_count,
)


@pytest.fixture(scope="module")
def T():
    return named("T").config


@pytest.fixture(scope="module")
def W10():
    return named("W10").config


def test_T_count_matches_oracle(T, W10):
    r = count_good(W10, T)
    assert (r.good_count, r.total) == (120, 160)
    assert r.fraction == Fraction(3, 4)
    assert count_good_naive(W10, T) == 120


def test_T_local_counts(T, W10):
    # ∅ is in T, {2} is not
    for v, inside in ((0, True), (vertex_from_subset("2"), False)):
        r = local_count(W10, T, v)
        assert (r.good_count, r.total) == (15, 20)
        assert r.in_S is inside


def test_T_local_counts_everywhere(T, W10):
    # every vertex, inside or outside T, sees 15 of its 20 sub-3-cubes good
    prof = density_profile(W10, T)
    assert set(prof.gamma.tolist()) == {15}
    assert prof.sum_in == 120 * 3 and prof.sum_out == 120 * 5


def test_T_restriction_example(T):
    R = Subcube(6, vertex_from_subset("235"), 0)
    assert restrict(T, R).bitstrings() == ["000", "110", "111"]


def random_pairs(seed, count, dmax=3, nmax=6):
    rng = random.Random(seed)
    for _ in range(count):
        d = rng.randint(1, dmax)
        n = rng.randint(d, nmax)
        yield CubeConfig(d, rng.getrandbits(1 << d)), CubeConfig(n, rng.getrandbits(1 << n))


def test_vectorised_count_matches_oracle():
    for H, S in random_pairs(11, 60):
        assert count_good(H, S).good_count == count_good_naive(H, S)


def test_count_d5_and_d6_against_oracle():
    rng = random.Random(3)
    for d in (5, 6):
        H = CubeConfig(d, rng.getrandbits(1 << d))
        S = CubeConfig(d + 1, rng.getrandbits(1 << (d + 1)))
        assert count_good(H, S).good_count == count_good_naive(H, S)
        # a hit is guaranteed when H sits inside S on a facet
        S2 = CubeConfig(d + 1, H.mask)
        assert count_good(H, S2).good_count == count_good_naive(H, S2) >= 1


def test_local_count_matches_definition():
    for H, S in random_pairs(5, 20):
        n, d = S.dim, H.dim
        v = random.Random(n).randrange(1 << n)
        direct = sum(
            count_good(H, restrict(S, R)).good_count for R in enumerate_subcubes(n, d) if v in R
        ) if d < n else count_good(H, S).good_count
        r = local_count(H, S, v)
        assert r.good_count == direct
        assert r.total == comb(n, d)


@settings(max_examples=30, deadline=None)
@given(st.integers(1, 3), st.data())
def test_profile_identity(d, data):
    n = data.draw(st.integers(d, 7))
    H = CubeConfig(d, data.draw(st.integers(0, (1 << (1 << d)) - 1)))
    S = CubeConfig(n, data.draw(st.integers(0, (1 << (1 << n)) - 1)))
    G = count_good(H, S).good_count
    prof = density_profile(H, S)
    assert prof.good_count == G
    assert prof.sum_in == G * len(H)
    assert prof.sum_out == G * (2**d - len(H))


def test_threads_do_not_change_result(T, W10):
    assert count_good(W10, T, threads=3) == count_good(W10, T)


def test_sampled_reproducible_and_close():
    H = named("W10").config
    S = named("T").config
    a = count_good_sampled(H, S, 6, 4000, seed=9)
    b = count_good_sampled(H, S.__contains__, 6, 4000, seed=9)
    assert a == b
    assert abs(float(a.fraction) - 0.75) < 5 * a.standard_error + 1e-9
    assert a.to_json()["mode"] == "sampled"


def test_feasibility_and_dimension_errors():
    with pytest.raises(FeasibilityError) as exc:
        count_good(CubeConfig(2, 1), CubeConfig(25))
    assert exc.value.cost > 0
    with pytest.raises(DimensionError):
        count_good(CubeConfig(4, 1), CubeConfig(3))
    with pytest.raises(DimensionError):
        local_count(CubeConfig(2, 1), CubeConfig(3), 8)


def test_json_shapes(T, W10):
    doc = count_good(W10, T).to_json()
    assert doc["fraction"] == {"numerator": "3", "denominator": "4", "value": 0.75}
    assert local_count(W10, T, 0).to_json()["total"] == 20
