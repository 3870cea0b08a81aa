"""Counting good sub-d-cubes: global counts, sampled estimates and local counts.

The hot loop never builds Subcube objects. For each flip mask the membership
array of S (viewed as a 2 x 2 x ... x 2 tensor) is transposed so the flip axes
come last; every row is then one subcube, packed into an integer code and
looked up in a table of exact copies of H.
"""
from __future__ import annotations

import logging
import math
import random
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from typing import Any, Callable, Iterator

import numpy as np

from .canonical import TABLE_DIM, canonical_form, canonical_table, orbit
from .cube import CubeConfig, DimensionError, Subcube, masks_of_weight, restrict, subcube_count

log = logging.getLogger(__name__)

MAX_EXACT_N = 24
MAX_EXACT_COST = 1 << 36
MAX_PROFILE_N = 20


class FeasibilityError(RuntimeError):
    """The requested exact computation exceeds the configured cost caps."""

    def __init__(self, message: str, cost: int) -> None:
        super().__init__(message)
        self.cost = cost


def fraction_json(x: Fraction) -> dict[str, Any]:
    return {"numerator": str(x.numerator), "denominator": str(x.denominator), "value": float(x)}


@dataclass(frozen=True)
class DensityResult:
    good_count: int
    total: int
    mode: str = "exact"
    sample_size: int | None = None
    seed: int | None = None
    standard_error: float | None = None

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.good_count, self.total)

    def to_json(self) -> dict[str, Any]:
        out = {
            "mode": self.mode,
            "good_count": self.good_count,
            "total": self.total,
            "fraction": fraction_json(self.fraction),
        }
        if self.mode == "sampled":
            out.update(sample_size=self.sample_size, seed=self.seed, standard_error=self.standard_error)
        return out


@dataclass(frozen=True)
class LocalDensityResult:
    vertex: int
    in_S: bool
    good_count: int
    total: int

    @property
    def fraction(self) -> Fraction:
        return Fraction(self.good_count, self.total)

    def to_json(self) -> dict[str, Any]:
        return {
            "vertex": self.vertex,
            "in_S": self.in_S,
            "good_count": self.good_count,
            "total": self.total,
            "fraction": fraction_json(self.fraction),
        }


@dataclass(frozen=True)
class DensityProfile:
    """Local counts for every vertex of Q_n; indexable like a list of LocalDensityResult."""

    gamma: np.ndarray
    in_S: np.ndarray
    total: int
    good_count: int = field(default=0)

    def __len__(self) -> int:
        return self.gamma.size

    def __getitem__(self, v: int) -> LocalDensityResult:
        return LocalDensityResult(v, bool(self.in_S[v]), int(self.gamma[v]), self.total)

    def __iter__(self) -> Iterator[LocalDensityResult]:
        return (self[v] for v in range(len(self)))

    @property
    def sum_in(self) -> int:
        return int(self.gamma[self.in_S].sum())

    @property
    def sum_out(self) -> int:
        return int(self.gamma[~self.in_S].sum())

    def to_json(self) -> dict[str, Any]:
        return {
            "total_per_vertex": self.total,
            "good_count": self.good_count,
            "sum_gamma_in": self.sum_in,
            "sum_gamma_out": self.sum_out,
            "entries": [r.to_json() for r in self],
        }


class GoodTable:
    """Membership test 'restriction code is an exact copy of H'."""

    def __init__(self, H: CubeConfig) -> None:
        self.H = H
        d = H.dim
        self.dim = d
        self.key = canonical_form(H)
        if d <= TABLE_DIM:
            self.table: np.ndarray | None = canonical_table(d) == self.key.key
            self.codes: np.ndarray | None = None
        elif d <= 6:
            self.table = None
            self.codes = np.array(sorted(orbit(H)), dtype=np.uint64)
        else:
            self.table = None
            self.codes = None
            self._cache: dict[int, bool] = {}

    def lookup(self, codes: np.ndarray) -> np.ndarray:
        if self.table is not None:
            return self.table[codes]
        if self.codes is not None:
            return np.isin(codes, self.codes)
        return np.array([self.is_good(int(c)) for c in codes], dtype=bool)

    def is_good(self, code: int) -> bool:
        if self.table is not None:
            return bool(self.table[code])
        if self.codes is not None:
            i = np.searchsorted(self.codes, np.uint64(code))
            return bool(i < self.codes.size and int(self.codes[i]) == code)
        hit = self._cache.get(code)
        if hit is None:
            hit = canonical_form(CubeConfig(self.dim, code)) == self.key
            self._cache[code] = hit
        return hit


@lru_cache(maxsize=64)
def good_table(H: CubeConfig) -> GoodTable:
    return GoodTable(H)


def _flip_positions(F: int) -> list[int]:
    return [k for k in range(F.bit_length()) if (F >> k) & 1]


def _axis_order(n: int, F: int) -> tuple[list[int], list[int]]:
    """Tensor axes (axis k holds bit n-1-k) with non-flip axes first, low flip bit last."""
    flips = _flip_positions(F)
    flip_axes = [n - 1 - b for b in reversed(flips)]
    flip_set = set(flip_axes)
    rest = [a for a in range(n) if a not in flip_set]
    return rest, flip_axes


_CODE_DTYPES = {1: np.uint8, 2: np.uint16, 4: np.uint32, 8: np.uint64}


def restriction_codes(tensor: np.ndarray, n: int, F: int) -> np.ndarray:
    """Codes of S restricted to every subcube with flip mask F, bases ascending."""
    d = F.bit_count()
    rest, flip_axes = _axis_order(n, F)
    block = tensor.transpose(rest + flip_axes).reshape(1 << (n - d), 1 << d)
    return pack_codes(block)


def pack_codes(block: np.ndarray) -> np.ndarray:
    """Row j of a (rows, 2^d) boolean block as the integer sum of 2^k over set columns k."""
    width_bits = block.shape[1]
    if width_bits <= 64:
        packed = np.packbits(block, axis=1, bitorder="little")
        width = packed.shape[1]
        if width == 1:
            return packed[:, 0]
        return np.ascontiguousarray(packed).view(np.dtype(_CODE_DTYPES[width]).newbyteorder("<"))[:, 0]
    weights = [1 << j for j in range(width_bits)]
    return np.array([sum(w for w, b in zip(weights, row) if b) for row in block], dtype=object)


def as_tensor(S: CubeConfig) -> np.ndarray:
    arr = S.to_array()
    return arr.reshape((2,) * S.dim) if S.dim else arr


def check_exact_feasible(d: int, n: int, max_n: int = MAX_EXACT_N) -> int:
    if d > n:
        raise DimensionError(f"pattern dimension {d} exceeds ambient dimension {n}")
    if d < 1:
        raise DimensionError("pattern dimension must be at least 1")
    cost = subcube_count(n, d)
    if n > max_n or cost > MAX_EXACT_COST:
        raise FeasibilityError(
            f"exact count over Q_{n} with d={d} needs {cost} subcube evaluations "
            f"(caps: n <= {max_n}, cost <= 2^36); use sampled mode",
            cost,
        )
    log.info("exact count: %d subcubes of dimension %d in Q_%d", cost, d, n)
    return cost


def count_good(H: CubeConfig, S: CubeConfig, threads: int | None = None) -> DensityResult:
    """Exact number of sub-d-cubes R of Q_n with S ∩ R an exact copy of H."""
    d, n = H.dim, S.dim
    total = check_exact_feasible(d, n)
    table = good_table(H)
    tensor = as_tensor(S)
    flips = list(masks_of_weight(n, d))

    def partial(F: int) -> int:
        return int(np.count_nonzero(table.lookup(restriction_codes(tensor, n, F))))

    if threads and threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            parts = list(pool.map(partial, flips))
    else:
        parts = [partial(F) for F in flips]
    # summed in flip-mask order whatever the thread count
    return DensityResult(sum(parts), total)


def count_good_naive(H: CubeConfig, S: CubeConfig) -> int:
    """Reference count straight from the definition (one restrict per subcube)."""
    from .cube import enumerate_subcubes

    key = canonical_form(H)
    return sum(canonical_form(restrict(S, R)) == key for R in enumerate_subcubes(S.dim, H.dim))


def sample_subcube(rng: random.Random, n: int, d: int) -> Subcube:
    flips = rng.sample(range(n), d)
    F = 0
    for b in flips:
        F |= 1 << b
    return Subcube(n, F, rng.getrandbits(n) & ~F)


def count_good_sampled(
    H: CubeConfig,
    S: Callable[[int], bool] | CubeConfig,
    n: int,
    sample_size: int,
    seed: int,
) -> DensityResult:
    """Monte Carlo estimate of g(H, d, n, S) from uniformly drawn subcubes."""
    if sample_size < 1:
        raise ValueError("sample_size must be positive")
    d = H.dim
    if not 1 <= d <= n:
        raise DimensionError(f"need 1 <= d <= n, got d={d}, n={n}")
    if isinstance(S, CubeConfig):
        if S.dim != n:
            raise DimensionError("configuration dimension differs from n")
        pred: Callable[[int], bool] = S.__contains__
    else:
        pred = S
    table = good_table(H)
    rng = random.Random(seed)
    hits = 0
    for _ in range(sample_size):
        R = sample_subcube(rng, n, d)
        code = 0
        for j, off in enumerate(R.offsets()):
            if pred(R.base ^ off):
                code |= 1 << j
        hits += table.is_good(code)
    p = hits / sample_size
    stderr = math.sqrt(p * (1 - p) / sample_size)
    return DensityResult(hits, sample_size, "sampled", sample_size, seed, stderr)


def local_count(H: CubeConfig, S: CubeConfig, v: int) -> LocalDensityResult:
    """Γ(v): good subcubes among the C(n, d) sub-d-cubes containing v."""
    d, n = H.dim, S.dim
    check_exact_feasible(d, n)
    if not 0 <= v < (1 << n):
        raise DimensionError(f"vertex {v} not in Q_{n}")
    table = good_table(H)
    good = 0
    for F in masks_of_weight(n, d):
        R = Subcube(n, F, v & ~F)
        good += table.is_good(restrict(S, R).mask)
    return LocalDensityResult(v, v in S, good, math.comb(n, d))


def density_profile(H: CubeConfig, S: CubeConfig) -> DensityProfile:
    d, n = H.dim, S.dim
    check_exact_feasible(d, n, MAX_PROFILE_N)
    table = good_table(H)
    tensor = as_tensor(S)
    acc = np.zeros((2,) * n, dtype=np.int32)
    G = 0
    for F in masks_of_weight(n, d):
        good = table.lookup(restriction_codes(tensor, n, F))
        G += int(np.count_nonzero(good))
        rest, flip_axes = _axis_order(n, F)
        view = acc.transpose(rest + flip_axes)
        view += good.reshape((2,) * (n - d) + (1,) * d)
    return DensityProfile(acc.reshape(-1), tensor.reshape(-1).copy(), math.comb(n, d), G)
