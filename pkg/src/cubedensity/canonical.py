"""Exact-copy classes of configurations under Aut(Q_d).

Canonical keys use one total order on membership bitvectors: read from vertex 0
upward, a member sorts before a non-member, and the least image over the orbit
is the key. For sets of equal size this is the lexicographically least sorted
member tuple, so a nonempty key always contains vertex 0. That property lets
the large-d path restrict translations to those that send a member to 0.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from functools import lru_cache
from math import comb
from typing import Any

import numpy as np

from .cube import (
    MAX_AUT_DIM,
    CubeConfig,
    DimensionError,
    automorphism_table,
    permutation_table,
)

TABLE_DIM = 4


@dataclass(frozen=True, order=True)
class CanonicalKey:
    dim: int
    key: int

    @property
    def config(self) -> CubeConfig:
        return CubeConfig(self.dim, self.key)

    @property
    def hex(self) -> str:
        width = max(1, (1 << self.dim) // 4)
        return format(self.key, f"0{width}x")


def _check_dim(d: int) -> None:
    if not 0 <= d <= MAX_AUT_DIM:
        raise DimensionError(f"exact-copy tests support 0 <= d <= {MAX_AUT_DIM}, got {d}")


def _reverse_bits(values: np.ndarray, width: int) -> np.ndarray:
    out = np.zeros_like(values)
    for k in range(width):
        out |= ((values >> k) & 1) << (width - 1 - k)
    return out


@lru_cache(maxsize=None)
def canonical_table(d: int) -> np.ndarray:
    """Canonical key of every one of the 2^(2^d) configurations of Q_d (d <= 4)."""
    if not 0 <= d <= TABLE_DIM:
        raise DimensionError(f"canonical tables exist for d <= {TABLE_DIM}")
    L = 1 << d
    auts = automorphism_table(d).astype(np.int64)
    keys = np.full(1 << L, -1, dtype=np.int64)
    for m in range(1 << L):
        if keys[m] >= 0:
            continue
        images = np.zeros(auts.shape[0], dtype=np.int64)
        for v in range(L):
            if (m >> v) & 1:
                images |= np.int64(1) << auts[:, v]
        # least in the member-first order = largest after bit reversal
        best = images[np.argmax(_reverse_bits(images, L))]
        keys[images] = best
    keys.flags.writeable = False
    return keys


def _least_sorted_row(rows: np.ndarray, bound: tuple[int, ...] | None) -> tuple[int, ...] | None:
    """Lexicographically least sorted row of ``rows``; None if it cannot beat ``bound``.

    Rows hold distinct values, so peeling off row minima one position at a time
    filters the candidates long before a full sort is needed.
    """
    width = rows.shape[1]
    sentinel = np.iinfo(rows.dtype).max
    rows = rows.copy()
    prefix: list[int] = []
    tight = bound is not None
    while rows.shape[0] > 32 and len(prefix) < width:
        mins = rows.min(axis=1)
        m = int(mins.min())
        if tight:
            if m > bound[len(prefix)]:
                return None
            tight = m == bound[len(prefix)]
        rows = rows[mins == m]
        rows[rows == m] = sentinel
        prefix.append(m)
    rest = np.sort(rows, axis=1)[:, : width - len(prefix)]
    best_rest = rest[np.lexsort(rest.T[::-1])[0]] if rest.shape[1] else rest[0]
    cand = tuple(prefix) + tuple(int(x) for x in best_rest)
    if bound is not None and cand >= bound:
        return None
    return cand


def _pruned_key(H: CubeConfig) -> int:
    members = np.array(H.members(), dtype=np.int64)
    if members.size == 0:
        return 0
    perms = permutation_table(H.dim)
    best: tuple[int, ...] | None = None
    for h in members:
        cand = _least_sorted_row(perms[:, members ^ h], best)
        if cand is not None:
            best = cand
    key = 0
    for v in best:
        key |= 1 << v
    return key


@lru_cache(maxsize=8192)
def _key_for(dim: int, mask: int) -> int:
    if dim <= TABLE_DIM:
        return int(canonical_table(dim)[mask])
    return _pruned_key(CubeConfig(dim, mask))


def canonical_form(H: CubeConfig) -> CanonicalKey:
    _check_dim(H.dim)
    return CanonicalKey(H.dim, _key_for(H.dim, H.mask))


def canonical_form_pruned(H: CubeConfig) -> CanonicalKey:
    """Translation-normalised minimisation over permutations only; valid for every d <= 8."""
    _check_dim(H.dim)
    return CanonicalKey(H.dim, _pruned_key(H))


def is_exact_copy(H: CubeConfig, K: CubeConfig) -> bool:
    if H.dim != K.dim:
        raise DimensionError(f"configurations live in Q_{H.dim} and Q_{K.dim}")
    _check_dim(H.dim)
    if len(H) != len(K):
        return False
    return canonical_form(H) == canonical_form(K)


def orbit(H: CubeConfig) -> set[int]:
    """Membership masks of all exact copies of H (d <= 6)."""
    auts = automorphism_table(H.dim).astype(np.int64)
    if H.dim <= 5:
        images = np.zeros(auts.shape[0], dtype=np.int64)
        for v in H:
            images |= np.int64(1) << auts[:, v]
        return {int(x) for x in np.unique(images)}
    images = np.zeros(auts.shape[0], dtype=np.uint64)
    for v in H:
        images |= np.uint64(1) << auts[:, v].astype(np.uint64)
    return {int(x) for x in np.unique(images)}


def layered_weights(H: CubeConfig) -> frozenset[int] | None:
    """Weight set of H itself if membership depends only on weight, else None."""
    d = H.dim
    counts = [0] * (d + 1)
    for v in H:
        counts[v.bit_count()] += 1
    weights = set()
    for w, c in enumerate(counts):
        if c == comb(d, w):
            weights.add(w)
        elif c:
            return None
    return frozenset(weights)


def is_layered(H: CubeConfig) -> frozenset[int] | None:
    """Weight set of a weight-determined exact copy of H, or None.

    Coordinate permutations preserve weight, so only the 2^d translates need
    checking; the smallest working translate decides which weight set is
    reported.
    """
    _check_dim(H.dim)
    members = H.members()
    for t in range(1 << H.dim):
        W = layered_weights(CubeConfig.from_vertices(H.dim, (v ^ t for v in members)))
        if W is not None:
            return W
    return None


def parity_set(d: int, parity: int) -> CubeConfig:
    return CubeConfig.from_vertices(d, (v for v in range(1 << d) if v.bit_count() % 2 == parity))


def is_trivial_layered(H: CubeConfig) -> bool:
    _check_dim(H.dim)
    if len(H) in (0, H.size):
        return True
    return H.mask in (parity_set(H.dim, 0).mask, parity_set(H.dim, 1).mask)


@dataclass(frozen=True)
class OrbitClass:
    key: CanonicalKey
    orbit_size: int
    complement_of: int
    layered: frozenset[int] | None
    distances: tuple[int, ...]

    @property
    def config(self) -> CubeConfig:
        return self.key.config


@dataclass(frozen=True)
class OrbitAtlas:
    dim: int
    classes: tuple[OrbitClass, ...]

    def index_of(self, H: CubeConfig) -> int:
        key = canonical_form(H)
        for i, c in enumerate(self.classes):
            if c.key == key:
                return i
        raise KeyError(H)

    def complement_classes(self) -> list[int]:
        """One class index per complementary pair: the smaller set, ties by key."""
        reps = []
        for i, c in enumerate(self.classes):
            j = c.complement_of
            other = self.classes[j]
            mine = (len(c.config), c.key.key)
            theirs = (len(other.config), other.key.key)
            if i == j or mine < theirs:
                reps.append(i)
        return reps

    @property
    def orbit_count(self) -> int:
        return len(self.classes)

    @property
    def complement_class_count(self) -> int:
        return len(self.complement_classes())

    def to_json(self) -> dict[str, Any]:
        return {
            "dim": self.dim,
            "orbit_count": self.orbit_count,
            "complement_class_count": self.complement_class_count,
            "classes": [
                {
                    "key_hex": c.key.hex,
                    "members": c.config.bitstrings(),
                    "orbit_size": c.orbit_size,
                    "complement_of": c.complement_of,
                    "layered": sorted(c.layered) if c.layered is not None else False,
                    "distances": list(c.distances),
                }
                for c in self.classes
            ],
        }

    @classmethod
    def from_json(cls, doc: dict[str, Any] | str) -> OrbitAtlas:
        if isinstance(doc, str):
            doc = json.loads(doc)
        d = doc["dim"]
        classes = []
        for c in doc["classes"]:
            lay = c["layered"]
            classes.append(
                OrbitClass(
                    key=CanonicalKey(d, int(c["key_hex"], 16)),
                    orbit_size=c["orbit_size"],
                    complement_of=c["complement_of"],
                    layered=None if lay is False else frozenset(lay),
                    distances=tuple(c["distances"]),
                )
            )
        return cls(d, tuple(classes))


@lru_cache(maxsize=None)
def classify(d: int) -> OrbitAtlas:
    """All exact-copy classes of Q_d, ordered by (size, key)."""
    if not 0 <= d <= TABLE_DIM:
        raise DimensionError(f"classification supports d <= {TABLE_DIM}, got {d}")
    table = canonical_table(d)
    keys, sizes = np.unique(table, return_counts=True)
    full = (1 << (1 << d)) - 1
    order = sorted(range(len(keys)), key=lambda i: (int(keys[i]).bit_count(), int(keys[i])))
    keys = [int(keys[i]) for i in order]
    sizes = [int(sizes[i]) for i in order]
    position = {k: i for i, k in enumerate(keys)}
    classes = []
    for k, size in zip(keys, sizes):
        H = CubeConfig(d, k)
        classes.append(
            OrbitClass(
                key=CanonicalKey(d, k),
                orbit_size=size,
                complement_of=position[int(table[k ^ full])],
                layered=is_layered(H),
                distances=tuple(H.distance_multiset()),
            )
        )
    return OrbitAtlas(d, tuple(classes))
