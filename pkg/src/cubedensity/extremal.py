"""Exact extremal values for tiny n and annealing search for larger n."""
from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Iterator, Union

import numpy as np

from .canonical import CanonicalKey, canonical_form, canonical_table
from .constructions import ConstructionSpec, generate
from .cube import CubeConfig, DimensionError, enumerate_subcubes, masks_of_weight, restrict, subcube_count
from .density import FeasibilityError, check_exact_feasible, count_good, fraction_json, good_table, pack_codes

MAX_EXHAUSTIVE_N = 4
MAX_SEARCH_N = 20
MAX_WITNESSES = 16
DEFAULT_SWEEPS = 300


@dataclass(frozen=True)
class ExactExtremalResult:
    H_key: CanonicalKey
    d: int
    n: int
    good_count: int
    total: int
    witnesses: tuple[CubeConfig, ...]
    witness_classes: int

    @property
    def ex_value(self) -> Fraction:
        return Fraction(self.good_count, self.total)

    def to_json(self) -> dict[str, Any]:
        return {
            "H_key": self.H_key.hex,
            "d": self.d,
            "n": self.n,
            "ex_value": fraction_json(self.ex_value),
            "good_count": self.good_count,
            "total": self.total,
            "witness_classes": self.witness_classes,
            "witnesses": [w.bitstrings() for w in self.witnesses],
        }


def _all_mask_bits(n: int) -> np.ndarray:
    """(2^(2^n), 2^n) boolean matrix: row m is the membership vector of mask m."""
    L = 1 << n
    masks = np.arange(1 << L, dtype=np.uint32)
    return ((masks[:, None] >> np.arange(L, dtype=np.uint32)) & 1).astype(bool)


def good_counts_all(H: CubeConfig, n: int) -> np.ndarray:
    """Good-subcube count of every S ⊆ V(Q_n), indexed by membership mask."""
    d = H.dim
    if not 1 <= d <= n <= MAX_EXHAUSTIVE_N:
        raise DimensionError(f"exhaustive mode needs 1 <= d <= n <= {MAX_EXHAUSTIVE_N}, got d={d}, n={n}")
    bits = _all_mask_bits(n)
    table = good_table(H)
    counts = np.zeros(bits.shape[0], dtype=np.int32)
    for R in enumerate_subcubes(n, d):
        verts = [R.base ^ off for off in R.offsets()]
        counts += table.lookup(pack_codes(bits[:, verts]))
    return counts


def ex_exhaustive(H: CubeConfig, n: int) -> ExactExtremalResult:
    """max over all S ⊆ V(Q_n) of the number of good sub-d-cubes (n <= 4)."""
    if n > MAX_EXHAUSTIVE_N:
        raise FeasibilityError(f"exhaustive search over Q_{n} needs 2^{1 << n} subsets; limit is n <= 4", 1 << (1 << n))
    counts = good_counts_all(H, n)
    best = int(counts.max())
    keys = np.unique(canonical_table(n)[np.flatnonzero(counts == best)])
    # member-first order: sort keys by bit-reversed value descending, matching CanonicalKey ordering on sets
    order = sorted((int(k) for k in keys), key=lambda k: _order_key(k, 1 << n))
    witnesses = tuple(CubeConfig(n, k) for k in order[:MAX_WITNESSES])
    return ExactExtremalResult(canonical_form(H), H.dim, n, best, subcube_count(n, H.dim), witnesses, len(order))


def _order_key(mask: int, width: int) -> tuple[int, ...]:
    return tuple(0 if (mask >> v) & 1 else 1 for v in range(width))


@dataclass(frozen=True)
class MonotonicityEntry:
    n: int
    ex_value: Fraction
    averaging_ok: bool

    def __iter__(self) -> Iterator[Any]:
        return iter((self.n, self.ex_value))


@dataclass(frozen=True)
class MonotonicityReport:
    entries: tuple[MonotonicityEntry, ...]

    def __iter__(self) -> Iterator[MonotonicityEntry]:
        return iter(self.entries)

    def __len__(self) -> int:
        return len(self.entries)

    @property
    def values(self) -> list[Fraction]:
        return [e.ex_value for e in self.entries]

    @property
    def nonincreasing(self) -> bool:
        v = self.values
        return all(a >= b for a, b in zip(v, v[1:]))

    @property
    def averaging_ok(self) -> bool:
        return all(e.averaging_ok for e in self.entries)

    def to_json(self) -> dict[str, Any]:
        return {
            "entries": [
                {"n": e.n, "ex_value": fraction_json(e.ex_value), "averaging_ok": e.averaging_ok}
                for e in self.entries
            ],
            "nonincreasing": self.nonincreasing,
            "averaging_ok": self.averaging_ok,
        }


def averaging_identity(H: CubeConfig, S: CubeConfig) -> tuple[bool, list[Fraction]]:
    """g(S) equals the mean of g over the 2n sub-(n-1)-cubes of Q_n.

    Each sub-d-cube lies in exactly n - d of them, so the identity is exact.
    Returns the check and the 2n restricted fractions.
    """
    n, d = S.dim, H.dim
    if d >= n:
        return True, []
    g = count_good(H, S).fraction
    parts = []
    for R in enumerate_subcubes(n, n - 1):
        parts.append(count_good(H, restrict(S, R)).fraction)
    return sum(parts) / len(parts) == g, parts


def monotonicity_report(H: CubeConfig, n_max: int) -> MonotonicityReport:
    """ex(H, d, n) for n = d..n_max, with the averaging check on each witness."""
    if n_max > MAX_EXHAUSTIVE_N:
        raise FeasibilityError(f"monotonicity report needs n_max <= {MAX_EXHAUSTIVE_N}", 1 << (1 << n_max))
    entries = []
    prev: Fraction | None = None
    for n in range(H.dim, n_max + 1):
        res = ex_exhaustive(H, n)
        ok = True
        for W in res.witnesses:
            same, parts = averaging_identity(H, W)
            ok &= same
            if prev is not None:
                ok &= all(p <= prev for p in parts)
        entries.append(MonotonicityEntry(n, res.ex_value, ok))
        prev = res.ex_value
    return MonotonicityReport(tuple(entries))


# ---------------------------------------------------------------------------
# annealing search


@dataclass(frozen=True)
class Schedule:
    """Geometric cooling per sweep (2^n proposals).

    The starting temperature is ``t0_fraction`` times the number of sub-d-cubes
    through one vertex, which is the largest change a single flip can cause.
    """

    t0_fraction: float = 1.0
    ratio: float = 0.98
    greedy_finish: bool = True

    def to_json(self) -> dict[str, Any]:
        return {"t0_fraction": self.t0_fraction, "ratio": self.ratio, "greedy_finish": self.greedy_finish}


@dataclass(frozen=True)
class SearchParams:
    seed: int = 0
    restarts: int = 1
    max_steps: int | None = None
    schedule: Schedule = field(default_factory=Schedule)
    init: Union[ConstructionSpec, CubeConfig, None] = None

    def steps_for(self, n: int) -> int:
        return self.max_steps if self.max_steps is not None else DEFAULT_SWEEPS * (1 << n)

    def to_json(self, n: int) -> dict[str, Any]:
        if self.init is None:
            init: Any = "random"
        elif isinstance(self.init, CubeConfig):
            init = {"kind": "explicit", "dim": self.init.dim, "vertices": self.init.bitstrings()}
        else:
            init = self.init.to_json()
        return {
            "seed": self.seed,
            "restarts": self.restarts,
            "max_steps": self.steps_for(n),
            "schedule": self.schedule.to_json(),
            "init": init,
        }


@dataclass(frozen=True)
class SearchResult:
    H_key: CanonicalKey
    n: int
    best_S: CubeConfig
    best_good: int
    total: int
    init_good: int
    trajectory: tuple[tuple[int, Fraction], ...]
    restart_goods: tuple[int, ...]
    params: dict[str, Any]

    @property
    def best_fraction(self) -> Fraction:
        return Fraction(self.best_good, self.total)

    @property
    def seed(self) -> int:
        return self.params["seed"]

    @property
    def restarts(self) -> int:
        return self.params["restarts"]

    @property
    def steps(self) -> int:
        return self.params["max_steps"]

    def to_json(self) -> dict[str, Any]:
        return {
            "H_key": self.H_key.hex,
            "n": self.n,
            "best_fraction": fraction_json(self.best_fraction),
            "best_good": self.best_good,
            "total": self.total,
            "init_good": self.init_good,
            "best_S": format(self.best_S.mask, "x"),
            "best_S_size": len(self.best_S),
            "restart_goods": list(self.restart_goods),
            "trajectory": [[s, str(f)] for s, f in self.trajectory],
            "params": self.params,
        }


class _FlipEvaluator:
    """Good-count change from toggling one vertex, touching only the C(n,d) subcubes through it."""

    def __init__(self, H: CubeConfig, n: int) -> None:
        d = H.dim
        self.table = good_table(H)
        self.flips = np.array(list(masks_of_weight(n, d)), dtype=np.int64)
        # offsets listed in local-vertex order: local j <-> deposit of j into F
        self.offsets = np.array([self._local_order(int(F), n) for F in self.flips], dtype=np.int64)
        self.d = d

    @staticmethod
    def _local_order(F: int, n: int) -> list[int]:
        bits = [b for b in range(n) if (F >> b) & 1]
        out = []
        for j in range(1 << len(bits)):
            v = 0
            for k, b in enumerate(bits):
                if (j >> k) & 1:
                    v |= 1 << b
            out.append(v)
        return out

    def delta(self, S: np.ndarray, v: int) -> int:
        idx = (v & ~self.flips)[:, None] ^ self.offsets
        block = S[idx]
        before = self.table.lookup(pack_codes(block))
        local = np.nonzero(idx == v)[1]
        block[np.arange(block.shape[0]), local] ^= True
        after = self.table.lookup(pack_codes(block))
        return int(np.count_nonzero(after)) - int(np.count_nonzero(before))


def _initial_array(init: Union[ConstructionSpec, CubeConfig, None], n: int, rng: np.random.Generator) -> np.ndarray:
    if init is None:
        return rng.random(1 << n) < 0.5
    if isinstance(init, CubeConfig):
        if init.dim != n:
            raise DimensionError(f"initial configuration lives in Q_{init.dim}, search runs in Q_{n}")
        return init.to_array().copy()
    return generate(init, n).config.to_array().copy()


def local_search(H: CubeConfig, n: int, params: SearchParams | None = None) -> SearchResult:
    """Simulated annealing on single-vertex flips, best state tracked from the initialisation."""
    params = params or SearchParams()
    d = H.dim
    if n > MAX_SEARCH_N:
        raise FeasibilityError(f"local search supports n <= {MAX_SEARCH_N}", subcube_count(n, d) if d <= n else 0)
    check_exact_feasible(d, n)
    if params.restarts < 1:
        raise ValueError("restarts must be positive")
    total = subcube_count(n, d)
    ev = _FlipEvaluator(H, n)
    steps = params.steps_for(n)
    sweep = 1 << n
    sched = params.schedule
    t0 = sched.t0_fraction * math.comb(n, d)

    best_overall: tuple[int, np.ndarray] | None = None
    best_traj: list[tuple[int, Fraction]] = []
    restart_goods = []
    init_good = None
    for r in range(params.restarts):
        rng = np.random.Generator(np.random.PCG64(np.random.SeedSequence([params.seed, r])))
        S = _initial_array(params.init, n, rng)
        G = count_good(H, CubeConfig.from_array(S)).good_count
        if init_good is None:
            init_good = G
        best_G, best_S = G, S.copy()
        traj = [(0, Fraction(G, total))]
        T = t0
        for step in range(1, steps + 1):
            v = int(rng.integers(sweep))
            delta = ev.delta(S, v)
            u = rng.random()
            if delta >= 0 or (T > 0 and u < math.exp(delta / T)):
                S[v] ^= True
                G += delta
                if G > best_G:
                    best_G, best_S = G, S.copy()
            if step % sweep == 0:
                T *= sched.ratio
                traj.append((step, Fraction(G, total)))
        if sched.greedy_finish:
            S = best_S.copy()
            G = best_G
            improved = True
            while improved:
                improved = False
                for v in range(sweep):
                    delta = ev.delta(S, v)
                    if delta > 0:
                        S[v] ^= True
                        G += delta
                        improved = True
            if G > best_G:
                best_G, best_S = G, S.copy()
            traj.append((steps + 1, Fraction(best_G, total)))
        restart_goods.append(best_G)
        # ties keep the earlier restart
        if best_overall is None or best_G > best_overall[0]:
            best_overall = (best_G, best_S)
            best_traj = traj

    best_G, best_arr = best_overall
    best_S = CubeConfig.from_array(best_arr)
    check = count_good(H, best_S).good_count
    if check != best_G:
        raise RuntimeError(f"search bookkeeping drifted: tracked {best_G}, recomputed {check}")
    return SearchResult(
        canonical_form(H),
        n,
        best_S,
        best_G,
        total,
        init_good,
        tuple(best_traj),
        tuple(restart_goods),
        params.to_json(n),
    )
