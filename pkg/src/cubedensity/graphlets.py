"""Induced-subgraph counts for small patterns and the edge-count bounds built on them.

Graphs on k <= 5 labelled vertices are encoded as edge masks over the pairs
(a, b), a < b, in lexicographic order. A table maps each mask to the least
mask over all relabellings, so isomorphism tests inside counting loops are
array lookups.
"""
from __future__ import annotations

import itertools
import json
import logging
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import comb
from pathlib import Path
from typing import Iterable, Iterator

import numpy as np

log = logging.getLogger(__name__)

MAX_PATTERN = 5
MAX_HOST = 64
MAX_SWEEP_N = 7


class PatternError(ValueError):
    pass


@dataclass(frozen=True)
class SmallGraph:
    """Simple graph on vertices 0..order-1; ``adj[v]`` is the neighbour bitmask of v."""

    order: int
    adj: tuple[int, ...]

    def __post_init__(self) -> None:
        if not 0 <= self.order <= MAX_HOST:
            raise PatternError(f"graphs support up to {MAX_HOST} vertices")
        if len(self.adj) != self.order:
            raise PatternError("one adjacency row per vertex")
        for v, row in enumerate(self.adj):
            if (row >> v) & 1:
                raise PatternError(f"loop at vertex {v}")
            if row >> self.order:
                raise PatternError(f"vertex {v} has a neighbour outside the graph")
            for u in range(self.order):
                if (row >> u) & 1 and not (self.adj[u] >> v) & 1:
                    raise PatternError(f"adjacency not symmetric at ({v},{u})")

    @classmethod
    def from_edges(cls, order: int, edges: Iterable[tuple[int, int]]) -> SmallGraph:
        adj = [0] * order
        for a, b in edges:
            if a == b:
                raise PatternError("loops are not allowed")
            adj[a] |= 1 << b
            adj[b] |= 1 << a
        return cls(order, tuple(adj))

    @classmethod
    def from_matrix(cls, A: np.ndarray) -> SmallGraph:
        n = A.shape[0]
        return cls.from_edges(n, ((a, b) for a in range(n) for b in range(a + 1, n) if A[a, b]))

    @classmethod
    def from_edge_mask(cls, order: int, mask: int) -> SmallGraph:
        return cls.from_edges(order, (p for k, p in enumerate(pairs(order)) if (mask >> k) & 1))

    @classmethod
    def empty(cls, order: int) -> SmallGraph:
        return cls(order, (0,) * order)

    @property
    def edges(self) -> list[tuple[int, int]]:
        return [(a, b) for a in range(self.order) for b in range(a + 1, self.order) if (self.adj[a] >> b) & 1]

    @property
    def edge_count(self) -> int:
        return sum(row.bit_count() for row in self.adj) // 2

    def has_edge(self, a: int, b: int) -> bool:
        return bool((self.adj[a] >> b) & 1)

    def complement(self) -> SmallGraph:
        full = (1 << self.order) - 1
        return SmallGraph(self.order, tuple(full ^ row ^ (1 << v) for v, row in enumerate(self.adj)))

    def matrix(self) -> np.ndarray:
        A = np.zeros((self.order, self.order), dtype=bool)
        for a, b in self.edges:
            A[a, b] = A[b, a] = True
        return A

    def edge_mask(self) -> int:
        return sum(1 << k for k, (a, b) in enumerate(pairs(self.order)) if self.has_edge(a, b))

    def to_json(self) -> dict:
        return {"order": self.order, "edges": [list(e) for e in self.edges]}


def load_graph(path: str | Path) -> SmallGraph:
    """Edge-list JSON: {"order": n, "edges": [[a, b], ...]}."""
    doc = json.loads(Path(path).read_text())
    return SmallGraph.from_edges(int(doc["order"]), (tuple(e) for e in doc["edges"]))


@lru_cache(maxsize=None)
def pairs(k: int) -> tuple[tuple[int, int], ...]:
    return tuple(itertools.combinations(range(k), 2))


@lru_cache(maxsize=None)
def pattern_table(k: int) -> np.ndarray:
    """Least edge mask over all relabellings, for every labelled graph on k vertices."""
    if not 0 <= k <= MAX_PATTERN:
        raise PatternError(f"pattern tables exist for k <= {MAX_PATTERN}")
    P = pairs(k)
    index = {p: j for j, p in enumerate(P)}
    masks = np.arange(1 << len(P), dtype=np.int64)
    best = masks.copy()
    for perm in itertools.permutations(range(k)):
        image = np.zeros_like(masks)
        for j, (a, b) in enumerate(P):
            pa, pb = perm[a], perm[b]
            target = index[(min(pa, pb), max(pa, pb))]
            image |= ((masks >> j) & 1) << target
        np.minimum(best, image, out=best)
    best.flags.writeable = False
    return best


def canonical_code(G: SmallGraph) -> int:
    if G.order > MAX_PATTERN:
        raise PatternError(f"patterns have at most {MAX_PATTERN} vertices")
    return int(pattern_table(G.order)[G.edge_mask()])


def _subset_codes(A: np.ndarray, combos: np.ndarray, k: int) -> np.ndarray:
    codes = np.zeros(combos.shape[0], dtype=np.int64)
    for j, (a, b) in enumerate(pairs(k)):
        codes |= A[combos[:, a], combos[:, b]].astype(np.int64) << j
    return codes


def _combination_chunks(n: int, k: int, chunk: int = 1 << 18) -> Iterator[np.ndarray]:
    it = itertools.combinations(range(n), k)
    while True:
        block = list(itertools.islice(it, chunk))
        if not block:
            return
        yield np.array(block, dtype=np.int64).reshape(len(block), k)


def count_induced(pattern: SmallGraph, host: SmallGraph) -> int:
    """Number of k-subsets of host vertices inducing a copy of pattern."""
    k = pattern.order
    if k > MAX_PATTERN:
        raise PatternError(f"patterns have at most {MAX_PATTERN} vertices")
    if k > host.order:
        return 0
    if k == 0:
        return 1
    target = canonical_code(pattern)
    table = pattern_table(k)
    A = host.matrix()
    return sum(int(np.count_nonzero(table[_subset_codes(A, c, k)] == target)) for c in _combination_chunks(host.order, k))


def induced_profile(host: SmallGraph, k: int) -> dict[int, int]:
    """Induced counts of every k-vertex isomorphism class, keyed by canonical code."""
    table = pattern_table(k)
    A = host.matrix()
    out: dict[int, int] = {}
    for c in _combination_chunks(host.order, k):
        vals, cnt = np.unique(table[_subset_codes(A, c, k)], return_counts=True)
        for v, m in zip(vals, cnt):
            out[int(v)] = out.get(int(v), 0) + int(m)
    return out


# ---------------------------------------------------------------------------
# named patterns and hosts


def complete_multipartite(*parts: int) -> SmallGraph:
    labels = [p for p, size in enumerate(parts) for _ in range(size)]
    n = len(labels)
    return SmallGraph.from_edges(n, ((a, b) for a in range(n) for b in range(a + 1, n) if labels[a] != labels[b]))


def disjoint_union(*graphs: SmallGraph) -> SmallGraph:
    edges, offset = [], 0
    for G in graphs:
        edges += [(a + offset, b + offset) for a, b in G.edges]
        offset += G.order
    return SmallGraph.from_edges(offset, edges)


def K12() -> SmallGraph:
    return complete_multipartite(1, 2)


def K22() -> SmallGraph:
    return complete_multipartite(2, 2)


def K13() -> SmallGraph:
    return complete_multipartite(1, 3)


def two_K2() -> SmallGraph:
    return SmallGraph.from_edges(4, [(0, 1), (2, 3)])


def edge_plus_vertex() -> SmallGraph:
    return SmallGraph.from_edges(3, [(0, 1)])


PATTERNS = {"K12": K12, "K22": K22, "K13": K13, "2K2": two_K2, "K2+K1": edge_plus_vertex}


# ---------------------------------------------------------------------------
# lemma bounds


@dataclass(frozen=True)
class BoundDetail:
    count: int
    bound: Fraction
    odd_branch: bool

    @property
    def holds(self) -> bool:
        return self.count <= self.bound

    @property
    def tight(self) -> bool:
        return self.count == self.bound


def k12_bound(n: int, e: int) -> Fraction:
    """min(floor(n^2/4)(n-2)/2, e(n-2)/2); for even n the first term is n C(n/2, 2)."""
    return min(Fraction((n * n // 4) * (n - 2), 2), Fraction(e * (n - 2), 2))


def k22_bound(n: int, e: int) -> Fraction:
    """min(C(floor(n/2),2) C(ceil(n/2),2), e floor((n-2)^2/4) / 4)."""
    return min(
        Fraction(comb(n // 2, 2) * comb((n + 1) // 2, 2)),
        Fraction(e * ((n - 2) ** 2 // 4), 4),
    )


def k12_detail(host: SmallGraph) -> BoundDetail:
    n = host.order
    return BoundDetail(count_induced(K12(), host), k12_bound(n, host.edge_count), n % 2 == 1)


def k22_detail(host: SmallGraph) -> BoundDetail:
    n = host.order
    detail = BoundDetail(count_induced(K22(), host), k22_bound(n, host.edge_count), n % 2 == 1)
    if detail.odd_branch:
        log.info("odd host order %d: K22 bound uses the floor/ceil split", n)
    return detail


def check_k12_bound(host: SmallGraph) -> bool:
    return k12_detail(host).holds


def check_k22_bound(host: SmallGraph) -> bool:
    return k22_detail(host).holds


def tripartite_k12_count(x: int, y: int, z: int) -> int:
    if min(x, y, z) < 0:
        raise ValueError("part sizes must be nonnegative")
    return x * comb(y, 2) + x * comb(z, 2) + y * comb(x, 2) + y * comb(z, 2) + z * comb(x, 2) + z * comb(y, 2)


def tripartite_k22_count(x: int, y: int, z: int) -> int:
    if min(x, y, z) < 0:
        raise ValueError("part sizes must be nonnegative")
    return comb(x, 2) * comb(y, 2) + comb(x, 2) * comb(z, 2) + comb(y, 2) * comb(z, 2)


# ---------------------------------------------------------------------------
# exhaustive sweep over all labelled graphs


@dataclass(frozen=True)
class SweepSummary:
    n: int
    graphs: int
    k12_violations: int
    k22_violations: int
    k12_tight: int
    k22_tight: int
    max_k12: int
    max_k22: int

    @property
    def max_k12_density(self) -> Fraction:
        return Fraction(self.max_k12, comb(self.n, 3)) if self.n >= 3 else Fraction(0)

    @property
    def holds(self) -> bool:
        return self.k12_violations == 0 and self.k22_violations == 0


def _mask_counts(masks: np.ndarray, n: int, k: int, accept: np.ndarray) -> np.ndarray:
    """Per edge mask, the number of k-subsets whose induced code is accepted."""
    index = {p: j for j, p in enumerate(pairs(n))}
    out = np.zeros(masks.size, dtype=np.int32)
    for sub in itertools.combinations(range(n), k):
        code = np.zeros(masks.size, dtype=np.int64)
        for j, (a, b) in enumerate(pairs(k)):
            code |= ((masks >> index[(sub[a], sub[b])]) & 1).astype(np.int64) << j
        out += accept[code]
    return out


def sweep_all_graphs(n: int, chunk: int = 1 << 20) -> SweepSummary:
    """Evaluate both bounds on every labelled graph on n vertices (all 2^C(n,2) edge masks)."""
    if not 1 <= n <= MAX_SWEEP_N:
        raise PatternError(f"exhaustive sweep supports 1 <= n <= {MAX_SWEEP_N}")
    P = comb(n, 2)
    k12_code = canonical_code(K12())
    k22_code = canonical_code(K22())
    acc12 = pattern_table(3) == k12_code
    acc22 = pattern_table(4) == k22_code
    stats = dict(k12v=0, k22v=0, k12t=0, k22t=0, m12=0, m22=0)
    total = 1 << P
    for start in range(0, total, chunk):
        masks = np.arange(start, min(total, start + chunk), dtype=np.int64)
        e = np.bitwise_count(masks).astype(np.int64)
        c12 = _mask_counts(masks, n, 3, acc12) if n >= 3 else np.zeros(masks.size, dtype=np.int32)
        c22 = _mask_counts(masks, n, 4, acc22) if n >= 4 else np.zeros(masks.size, dtype=np.int32)
        # compare doubled / quadrupled sides to stay in integers
        b12a = (n * n // 4) * (n - 2)
        ok12 = (2 * c12 <= b12a) & (2 * c12 <= e * (n - 2))
        t12 = 2 * c12 == np.minimum(b12a, e * (n - 2))
        b22a = 4 * comb(n // 2, 2) * comb((n + 1) // 2, 2)
        b22b = e * ((n - 2) ** 2 // 4)
        ok22 = (4 * c22 <= b22a) & (4 * c22 <= b22b)
        t22 = 4 * c22 == np.minimum(b22a, b22b)
        stats["k12v"] += int(np.count_nonzero(~ok12))
        stats["k22v"] += int(np.count_nonzero(~ok22))
        stats["k12t"] += int(np.count_nonzero(t12))
        stats["k22t"] += int(np.count_nonzero(t22))
        stats["m12"] = max(stats["m12"], int(c12.max()))
        stats["m22"] = max(stats["m22"], int(c22.max()))
    return SweepSummary(n, total, stats["k12v"], stats["k22v"], stats["k12t"], stats["k22t"], stats["m12"], stats["m22"])
