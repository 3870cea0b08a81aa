"""Configuration families and the registry of named configurations.

Layered, partition-modular and blow-up constructions all reduce to one model
at a concrete n: [n] is cut into consecutive blocks of coordinates, and a
vertex belongs to S when the tuple of its block weights, each reduced by that
block's modulus, is allowed. ``PartModel`` is that reduced form; the exact
closed-form counter in ``analytics`` works directly on it.
"""
from __future__ import annotations

import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from pathlib import Path
from typing import Any, Callable, Iterable, Union

import numpy as np

from .canonical import is_exact_copy, is_layered, parity_set
from .cube import (
    CubeConfig,
    DimensionError,
    hamming,
    vertex_from_bits,
    vertex_from_subset,
    vertex_to_bits,
)

MAX_EXPLICIT_N = 24
ROUNDING_RULES = ("largest_remainder", "floor", "ceil")


class ConstructionError(ValueError):
    pass


def _as_fraction(x: Any) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(str(x))


def part_sizes(fractions: Iterable[Fraction], n: int, rounding: str = "largest_remainder") -> tuple[int, ...]:
    """Integer part sizes summing to n.

    ``largest_remainder`` hands leftover units to the largest fractional parts,
    earlier parts first on ties (so halves give ceil(n/2), floor(n/2)).
    ``floor``/``ceil`` round every part but the last and give it the rest.
    """
    fr = [_as_fraction(f) for f in fractions]
    if sum(fr) != 1 or any(f < 0 for f in fr):
        raise ConstructionError(f"part fractions must be nonnegative and sum to 1, got {fr}")
    quotas = [f * n for f in fr]
    if rounding == "largest_remainder":
        sizes = [q.numerator // q.denominator for q in quotas]
        left = n - sum(sizes)
        order = sorted(range(len(fr)), key=lambda i: (-(quotas[i] - sizes[i]), i))
        for i in order[:left]:
            sizes[i] += 1
    elif rounding in ("floor", "ceil"):
        rnd = (lambda q: q.numerator // q.denominator) if rounding == "floor" else (lambda q: -(-q.numerator // q.denominator))
        sizes = [rnd(q) for q in quotas[:-1]]
        sizes.append(n - sum(sizes))
        if sizes[-1] < 0:
            raise ConstructionError(f"part sizes infeasible at n={n}")
    else:
        raise ConstructionError(f"unknown rounding rule {rounding!r}")
    return tuple(sizes)


@dataclass(frozen=True)
class PartModel:
    """S ⊆ V_n given by block sizes, block moduli and the allowed residue tuples."""

    sizes: tuple[int, ...]
    moduli: tuple[int, ...]
    allowed: frozenset[tuple[int, ...]]

    @property
    def n(self) -> int:
        return sum(self.sizes)

    @property
    def part_masks(self) -> tuple[int, ...]:
        masks = []
        start = 0
        for s in self.sizes:
            masks.append(((1 << s) - 1) << start)
            start += s
        return tuple(masks)

    def residues(self, v: int) -> tuple[int, ...]:
        return tuple((v & pm).bit_count() % m for pm, m in zip(self.part_masks, self.moduli))

    def __contains__(self, v: int) -> bool:
        return self.residues(v) in self.allowed

    def materialize(self) -> CubeConfig:
        n = self.n
        if n > MAX_EXPLICIT_N:
            raise ConstructionError(f"explicit materialisation limited to n <= {MAX_EXPLICIT_N}")
        v = np.arange(1 << n, dtype=np.int64)
        index = np.zeros(v.size, dtype=np.int64)
        radix = 1
        for pm, m in zip(self.part_masks, self.moduli):
            index += (np.bitwise_count(v & pm).astype(np.int64) % m) * radix
            radix *= m
        lut = np.zeros(radix, dtype=bool)
        for tup in self.allowed:
            code, r = 0, 1
            for x, m in zip(tup, self.moduli):
                code += x * r
                r *= m
            lut[code] = True
        return CubeConfig.from_array(lut[index])


def expand_allowed(allowed: Iterable[tuple[int | None, ...]], moduli: tuple[int, ...]) -> frozenset[tuple[int, ...]]:
    """Replace wildcards (None) by every residue of that block."""
    out = set()
    for tup in allowed:
        if len(tup) != len(moduli):
            raise ConstructionError(f"residue tuple {tup} does not match {len(moduli)} parts")
        choices = []
        for x, m in zip(tup, moduli):
            if x is None:
                choices.append(range(m))
            elif 0 <= x < m:
                choices.append((x,))
            else:
                raise ConstructionError(f"residue {x} outside [0, {m})")
        out.update(itertools.product(*choices))
    return frozenset(out)


@dataclass(frozen=True)
class LayeredSpec:
    """All vertices whose weight mod ``modulus`` lies in ``residues``."""

    modulus: int
    residues: frozenset[int] = frozenset()

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise ConstructionError("modulus must be at least 1")
        object.__setattr__(self, "residues", frozenset(self.residues))
        if any(not 0 <= r < self.modulus for r in self.residues):
            raise ConstructionError("residue outside [0, modulus)")

    def model(self, n: int) -> PartModel:
        return PartModel((n,), (self.modulus,), frozenset((r,) for r in self.residues))

    def to_json(self) -> dict[str, Any]:
        return {"kind": "layered", "modulus": self.modulus, "residues": sorted(self.residues)}


@dataclass(frozen=True)
class PartitionModularSpec:
    """Block-weight congruences; ``None`` in an allowed tuple is a wildcard."""

    fractions: tuple[Fraction, ...]
    moduli: tuple[int, ...]
    allowed: frozenset[tuple[int | None, ...]]
    rounding: str = "largest_remainder"

    def __post_init__(self) -> None:
        object.__setattr__(self, "fractions", tuple(_as_fraction(f) for f in self.fractions))
        object.__setattr__(self, "moduli", tuple(self.moduli))
        object.__setattr__(self, "allowed", frozenset(tuple(t) for t in self.allowed))
        if len(self.fractions) != len(self.moduli):
            raise ConstructionError("one modulus per part")
        if self.rounding not in ROUNDING_RULES:
            raise ConstructionError(f"rounding must be one of {ROUNDING_RULES}")
        if sum(self.fractions) != 1:
            raise ConstructionError("part fractions must sum to 1")
        expand_allowed(self.allowed, self.moduli)

    def sizes(self, n: int) -> tuple[int, ...]:
        if n < len(self.fractions):
            raise ConstructionError(f"n={n} smaller than the number of parts")
        return part_sizes(self.fractions, n, self.rounding)

    def model(self, n: int) -> PartModel:
        return PartModel(self.sizes(n), self.moduli, expand_allowed(self.allowed, self.moduli))

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "partition_modular",
            "parts": [{"fraction": str(f), "modulus": m} for f, m in zip(self.fractions, self.moduli)],
            "allowed": sorted([list(t) for t in self.allowed], key=lambda t: [(-1 if x is None else x) for x in t]),
            "rounding": self.rounding,
        }


@dataclass(frozen=True)
class BlowupSpec:
    """v ∈ S iff the vector of per-part parities of v lies in ``base``."""

    base: CubeConfig
    fractions: tuple[Fraction, ...] | None = None
    rounding: str = "largest_remainder"

    def __post_init__(self) -> None:
        if self.fractions is None:
            object.__setattr__(self, "fractions", tuple(Fraction(1, self.base.dim) for _ in range(self.base.dim)))
        else:
            object.__setattr__(self, "fractions", tuple(_as_fraction(f) for f in self.fractions))
        if len(self.fractions) != self.base.dim:
            raise ConstructionError("a blow-up needs one part per base coordinate")

    def model(self, n: int) -> PartModel:
        d = self.base.dim
        if n < d:
            raise ConstructionError(f"n={n} smaller than the base dimension {d}")
        allowed = frozenset(tuple((u >> j) & 1 for j in range(d)) for u in self.base)
        return PartModel(part_sizes(self.fractions, n, self.rounding), (2,) * d, allowed)

    def to_json(self) -> dict[str, Any]:
        return {
            "kind": "blowup",
            "base": {"dim": self.base.dim, "vertices": self.base.bitstrings()},
            "fractions": [str(f) for f in self.fractions],
            "rounding": self.rounding,
        }


_GOLDEN = 0x9E3779B97F4A7C15
_M64 = (1 << 64) - 1


def _splitmix64(x: int) -> int:
    x = (x + _GOLDEN) & _M64
    x = ((x ^ (x >> 30)) * 0xBF58476D1CE4E5B9) & _M64
    x = ((x ^ (x >> 27)) * 0x94D049BB133111EB) & _M64
    return x ^ (x >> 31)


def _splitmix64_np(x: np.ndarray) -> np.ndarray:
    with np.errstate(over="ignore"):
        x = x + np.uint64(_GOLDEN)
        x = (x ^ (x >> np.uint64(30))) * np.uint64(0xBF58476D1CE4E5B9)
        x = (x ^ (x >> np.uint64(27))) * np.uint64(0x94D049BB133111EB)
        return x ^ (x >> np.uint64(31))


@dataclass(frozen=True)
class RandomSpec:
    """Each vertex joins S independently with probability p (hash-seeded, so any n works)."""

    p: Fraction
    seed: int = 0

    def __post_init__(self) -> None:
        object.__setattr__(self, "p", _as_fraction(self.p))
        if not 0 <= self.p <= 1:
            raise ConstructionError("p must lie in [0, 1]")

    @property
    def threshold(self) -> int:
        return (self.p * (1 << 64)).__floor__()

    def _key(self, v: int) -> int:
        return _splitmix64((self.seed & _M64) ^ ((v * _GOLDEN) & _M64))

    def __contains__(self, v: int) -> bool:
        return self._key(v) < self.threshold

    def materialize(self, n: int) -> CubeConfig:
        if n > MAX_EXPLICIT_N:
            raise ConstructionError(f"explicit materialisation limited to n <= {MAX_EXPLICIT_N}")
        v = np.arange(1 << n, dtype=np.uint64)
        with np.errstate(over="ignore"):
            keys = _splitmix64_np(np.uint64(self.seed & _M64) ^ (v * np.uint64(_GOLDEN)))
        if self.threshold >= 1 << 64:
            return CubeConfig.full(n)
        return CubeConfig.from_array(keys < np.uint64(self.threshold))

    def to_json(self) -> dict[str, Any]:
        return {"kind": "random", "p": str(self.p), "seed": self.seed}


ConstructionSpec = Union[LayeredSpec, PartitionModularSpec, BlowupSpec, RandomSpec]


@dataclass(frozen=True)
class Generated:
    n: int
    predicate: Callable[[int], bool]
    config: CubeConfig | None
    model: PartModel | None = None


def generate(spec: ConstructionSpec, n: int, materialize: bool | None = None) -> Generated:
    """Membership predicate for spec at dimension n, plus the explicit set when n <= 24."""
    if n < 1:
        raise ConstructionError("n must be positive")
    if materialize is None:
        materialize = n <= MAX_EXPLICIT_N
    if isinstance(spec, RandomSpec):
        return Generated(n, spec.__contains__, spec.materialize(n) if materialize else None)
    model = spec.model(n)
    return Generated(n, model.__contains__, model.materialize() if materialize else None, model)


# ---------------------------------------------------------------------------
# families


def family_H(d: int, i: int) -> CubeConfig:
    """Vertices of Q_d whose first i coordinates have even sum."""
    if not 1 <= i < d <= 8:
        raise DimensionError(f"H(d,i) needs 1 <= i < d <= 8, got ({d},{i})")
    low = (1 << i) - 1
    return CubeConfig.from_vertices(d, (v for v in range(1 << d) if (v & low).bit_count() % 2 == 0))


def family_E(d: int, i: int) -> CubeConfig:
    """Vertices of Q_d with even sum on the first i coordinates and on the rest."""
    if not 1 <= i < d <= 8:
        raise DimensionError(f"E(d,i) needs 1 <= i < d <= 8, got ({d},{i})")
    low = (1 << i) - 1
    return CubeConfig.from_vertices(
        d, (v for v in range(1 << d) if (v & low).bit_count() % 2 == 0 and (v >> i).bit_count() % 2 == 0)
    )


def hamming_code_q7() -> CubeConfig:
    """The [7,4] Hamming code: 0, the cyclic shifts of {1,2,4} mod 7, and complements."""
    words = [0]
    for s in range(7):
        words.append(vertex_from_subset([(c - 1 + s) % 7 + 1 for c in (1, 2, 4)]))
    full = (1 << 7) - 1
    words += [w ^ full for w in words]
    return CubeConfig.from_vertices(7, words)


def perfect_cycle(d: int) -> CubeConfig:
    """Prefix-ones vectors and their complements: an induced 2d-cycle with antipodal pairs."""
    if d < 2:
        raise DimensionError("perfect cycles need d >= 2")
    return CubeConfig.from_vertices(d, perfect_cycle_order(d))


def perfect_cycle_order(d: int) -> list[int]:
    full = (1 << d) - 1
    prefix = [(1 << k) - 1 for k in range(d)]
    return prefix + [p ^ full for p in prefix]


def single_vertex(d: int) -> CubeConfig:
    return CubeConfig(d, 1)


def h_family_construction(d: int, i: int) -> PartitionModularSpec:
    """Even weight on the first floor(i n / d) coordinates."""
    return PartitionModularSpec(
        (Fraction(i, d), Fraction(d - i, d)), (2, 2), frozenset({(0, None)}), rounding="floor"
    )


def e_family_construction(x: Fraction) -> PartitionModularSpec:
    """Even weight on both the first ceil(x n) coordinates and the rest."""
    x = _as_fraction(x)
    return PartitionModularSpec((x, 1 - x), (2, 2), frozenset({(0, 0)}), rounding="ceil")


# ---------------------------------------------------------------------------
# registry


def _bits(*strings: str) -> CubeConfig:
    return CubeConfig.from_bitstrings(strings)


def _subsets(dim: int, *names: str) -> CubeConfig:
    return CubeConfig.from_vertices(dim, (vertex_from_subset(s) for s in names))


T_SUBSETS = (
    "∅", "1",
    "124", "146", "163", "135", "152",
    "1234", "1456", "1623", "1345", "1562",
    "123456",
    "23", "34", "45", "56", "62",
    "235", "346", "452", "563", "624",
    "23456",
)


@dataclass(frozen=True)
class NamedConfig:
    name: str
    config: CubeConfig
    provenance: str
    construction: str | None = None

    def to_json(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "dim": self.config.dim,
            "vertices": self.config.bitstrings(),
            "provenance": self.provenance,
            "construction": self.construction,
        }


def _registry() -> dict[str, NamedConfig]:
    entries = [
        NamedConfig("Z1", CubeConfig(2), "Q2 figure: empty", "empty set"),
        NamedConfig("Z2", _bits("00"), "Q2 figure: one vertex", "layered 0 mod 3"),
        NamedConfig("Z3", _bits("00", "10"), "Q2 figure: an edge; equals H(2,1)", "A∪B, 0 mod 2 in A"),
        NamedConfig("Z4", _bits("00", "11"), "Q2 figure: a diagonal pair", "layered 0 mod 2"),
        NamedConfig("W1", CubeConfig(3), "Q3 table: empty", "empty set"),
        NamedConfig("W2", _bits("000", "110"), "E(3,1) identification", "A∪B, 00 mod 2"),
        NamedConfig("W3", _bits("000"), "one vertex in Q3", "layered 0 mod 4"),
        NamedConfig("W4", _bits("000", "100"), "decoded from the W4 construction", "A∪B, 0* mod 3"),
        NamedConfig("W5", _bits("001", "011", "101"), "W5 construction example", "A∪B, residues mod (3,3)"),
        NamedConfig("W6", family_H(3, 1), "H(3,1)", "A∪B, 0* mod 2"),
        NamedConfig("W7", _bits("000", "111"), "layered weights {0,3}", "layered 0 mod 3"),
        NamedConfig("W8", _bits("110", "101", "011"), "layered weight-2 representative", "layered 0 mod 3"),
        NamedConfig("W9", _bits("001", "100", "010", "110"), "W9 construction example", "A∪B, 00,10,21,31 mod (4,2)"),
        NamedConfig("W10", _bits("000", "110", "111"), "decoded from restrictions of T", "blow-up of T"),
        NamedConfig("W11", _bits("000", "100", "110", "111"), "induced path on 4 vertices", "perfect 8-cycle blow-up"),
        NamedConfig("W12", _bits("000", "100", "010", "001"), "layered weights {0,1}", "layered 0,1 mod 4"),
        NamedConfig("W13", family_H(3, 2), "H(3,2)", "A∪B, 0* mod 2"),
        NamedConfig("W14", parity_set(3, 0), "even-weight vertices", "layered 0 mod 2"),
        NamedConfig("Y", _bits("0000", "1100", "0011", "1111"), "Q4 configuration Y = E(4,2)", "A∪B, 00 mod 2"),
        NamedConfig("Z", _bits("0000", "1100", "1010", "0110"), "Q4 configuration Z ~ E(4,1)", "A∪B, 00 mod 2"),
        NamedConfig("C8", perfect_cycle(4), "perfect 8-cycle in Q4", "blow-up of C8"),
        NamedConfig("T", _subsets(6, *T_SUBSETS), "24-vertex configuration in Q6", None),
        NamedConfig("hamming7", hamming_code_q7(), "[7,4] Hamming code in Q7", None),
    ]
    return {e.name: e for e in entries}


REGISTRY: dict[str, NamedConfig] = _registry()


def _parse_family(name: str) -> NamedConfig | None:
    import re

    m = re.fullmatch(r"([HE])\((\d+),(\d+)\)", name.replace(" ", ""))
    if m:
        fam, d, i = m.group(1), int(m.group(2)), int(m.group(3))
        cfg = family_H(d, i) if fam == "H" else family_E(d, i)
        return NamedConfig(f"{fam}({d},{i})", cfg, f"family {fam}")
    m = re.fullmatch(r"U(\d+)", name)
    if m:
        d = int(m.group(1))
        return NamedConfig(name, single_vertex(d), "single vertex", f"layered 0 mod {d + 1}")
    m = re.fullmatch(r"C(\d+)", name)
    if m and int(m.group(1)) % 2 == 0 and int(m.group(1)) >= 4:
        d = int(m.group(1)) // 2
        return NamedConfig(name, perfect_cycle(d), f"perfect {2 * d}-cycle")
    return None


def named(name: str) -> NamedConfig:
    """Registry lookup; also understands H(d,i), E(d,i), U<d> and C<2d>."""
    if name in REGISTRY:
        return REGISTRY[name]
    entry = _parse_family(name)
    if entry is None:
        raise KeyError(f"unknown configuration name {name!r}")
    return entry


# Lower-bound constructions from the summary tables, keyed by target name.
CONSTRUCTIONS: dict[str, ConstructionSpec] = {
    "Z1": LayeredSpec(1, frozenset()),
    "Z2": LayeredSpec(3, frozenset({0})),
    "Z3": h_family_construction(2, 1),
    "Z4": LayeredSpec(2, frozenset({0})),
    "W1": LayeredSpec(1, frozenset()),
    "W2": PartitionModularSpec((Fraction(1, 2), Fraction(1, 2)), (2, 2), frozenset({(0, 0)})),
    "W3": LayeredSpec(4, frozenset({0})),
    "W4": PartitionModularSpec((Fraction(2, 3), Fraction(1, 3)), (3, 2), frozenset({(0, None)}), rounding="floor"),
    "W5": PartitionModularSpec(
        (Fraction(1, 2), Fraction(1, 2)), (3, 3), frozenset({(0, 0), (0, 1), (1, 0), (1, 1)})
    ),
    "W6": h_family_construction(3, 1),
    "W7": LayeredSpec(3, frozenset({0})),
    "W8": LayeredSpec(3, frozenset({0})),
    "W9": PartitionModularSpec(
        (Fraction(2, 3), Fraction(1, 3)), (4, 2), frozenset({(0, 0), (1, 0), (2, 1), (3, 1)}), rounding="floor"
    ),
    "W10": BlowupSpec(REGISTRY["T"].config),
    "W11": BlowupSpec(perfect_cycle(4)),
    "W12": LayeredSpec(4, frozenset({0, 1})),
    "W13": h_family_construction(3, 2),
    "W14": LayeredSpec(2, frozenset({0})),
    "Y": PartitionModularSpec((Fraction(1, 2), Fraction(1, 2)), (2, 2), frozenset({(0, 0)})),
    "Z": PartitionModularSpec((Fraction(1, 2), Fraction(1, 2)), (2, 2), frozenset({(0, 0)})),
    "C8": BlowupSpec(perfect_cycle(4)),
    "U3": BlowupSpec(hamming_code_q7()),
}


def construction(name: str) -> ConstructionSpec:
    """Construction for a registry name, or a ``<name>-construction`` alias."""
    key = name[: -len("-construction")] if name.endswith("-construction") else name
    if key in CONSTRUCTIONS:
        return CONSTRUCTIONS[key]
    import re

    m = re.fullmatch(r"H\((\d+),(\d+)\)", key.replace(" ", ""))
    if m:
        return h_family_construction(int(m.group(1)), int(m.group(2)))
    m = re.fullmatch(r"U(\d+)", key)
    if m:
        return LayeredSpec(int(m.group(1)) + 1, frozenset({0}))
    raise KeyError(f"no construction registered for {name!r}")


def cross_checks() -> dict[str, bool]:
    """Recorded consistency checks for registry entries decoded from figures."""
    from .density import count_good

    R = REGISTRY
    code = R["hamming7"].config.members()
    dists = [hamming(a, b) for a, b in itertools.combinations(code, 2)]
    return {
        "W10 on T: 120 good sub-3-cubes": count_good(R["W10"].config, R["T"].config).good_count == 120,
        "W7 layered with weights {0,3}": is_layered(R["W7"].config) == frozenset({0, 3}),
        "W12 layered with weights {0,1}": is_layered(R["W12"].config) == frozenset({0, 1}),
        "W6 = H(3,1)": R["W6"].config == family_H(3, 1),
        "W13 = H(3,2)": R["W13"].config == family_H(3, 2),
        "Z3 = H(2,1)": is_exact_copy(R["Z3"].config, family_H(2, 1)),
        "W2 ~ E(3,1)": is_exact_copy(R["W2"].config, family_E(3, 1)),
        "Y ~ E(4,2)": is_exact_copy(R["Y"].config, family_E(4, 2)),
        "Z ~ E(4,1)": is_exact_copy(R["Z"].config, family_E(4, 1)),
        "T has 24 vertices": len(R["T"].config) == 24,
        "hamming7: 16 words, min distance 3": len(code) == 16 and min(dists) == 3,
        "hamming7: 56 pairs at distance 3": dists.count(3) == 56,
    }


# ---------------------------------------------------------------------------
# JSON configuration files


def _config_from_doc(doc: dict[str, Any]) -> CubeConfig:
    dim = doc.get("dim", doc.get("n"))
    verts = doc.get("vertices", [])
    if dim is None:
        if not verts:
            raise ConstructionError("explicit configuration needs 'dim' or vertices")
        dim = len(verts[0])
    return CubeConfig.from_vertices(int(dim), (vertex_from_bits(s) for s in verts))


def spec_from_json(doc: dict[str, Any] | str | Path) -> ConstructionSpec | CubeConfig:
    """Parse the configuration-file format into a spec (or an explicit configuration)."""
    if isinstance(doc, Path) or (isinstance(doc, str) and not doc.lstrip().startswith("{")):
        doc = json.loads(Path(doc).read_text())
    elif isinstance(doc, str):
        doc = json.loads(doc)
    kind = doc.get("kind")
    if kind == "explicit":
        return _config_from_doc(doc)
    if kind == "named":
        return named(doc["name"]).config
    if kind == "layered":
        return LayeredSpec(int(doc["modulus"]), frozenset(int(r) for r in doc.get("residues", [])))
    if kind == "partition_modular":
        parts = doc["parts"]
        return PartitionModularSpec(
            tuple(_as_fraction(p["fraction"]) for p in parts),
            tuple(int(p["modulus"]) for p in parts),
            frozenset(tuple(None if x is None or x == "*" else int(x) for x in t) for t in doc["allowed"]),
            rounding=doc.get("rounding", "largest_remainder"),
        )
    if kind == "blowup":
        base = doc["base"]
        base_cfg = named(base).config if isinstance(base, str) else _config_from_doc(base)
        fr = doc.get("fractions")
        return BlowupSpec(base_cfg, tuple(_as_fraction(f) for f in fr) if fr else None, doc.get("rounding", "largest_remainder"))
    if kind == "random":
        return RandomSpec(_as_fraction(doc["p"]), int(doc.get("seed", 0)))
    raise ConstructionError(f"unknown configuration kind {kind!r}")


def config_to_json(H: CubeConfig) -> dict[str, Any]:
    return {"kind": "explicit", "dim": H.dim, "vertices": [vertex_to_bits(v, H.dim) for v in H]}


@lru_cache(maxsize=None)
def registry_names() -> tuple[str, ...]:
    return tuple(REGISTRY)
