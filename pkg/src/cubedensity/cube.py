"""Hypercube primitives: vertices, configurations, subcubes and automorphisms.

A vertex of Q_n is an integer in [0, 2^n) whose bit i holds coordinate x_{i+1}.
A configuration is stored as a Python int used as a membership bitvector of
length 2^n (bit v set iff vertex v is a member).
"""
from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from math import comb, factorial
from typing import Iterable, Iterator

import numpy as np

MAX_AUT_DIM = 8
MAX_AMBIENT_DIM = 30


class DimensionError(ValueError):
    """Raised when dimensions disagree or fall outside a supported range."""


def weight(v: int) -> int:
    return v.bit_count()


def hamming(u: int, v: int) -> int:
    return (u ^ v).bit_count()


def vertex_from_bits(bits: str) -> int:
    """Parse a bitstring written x_1 x_2 ... x_n (leftmost is coordinate 1)."""
    v = 0
    for k, ch in enumerate(bits):
        if ch == "1":
            v |= 1 << k
        elif ch != "0":
            raise ValueError(f"bad bitstring {bits!r}")
    return v


def vertex_from_subset(coords: Iterable[int] | str) -> int:
    """Vertex whose 1-coordinates are the given 1-based indices.

    A string such as ``"235"`` is read digit by digit, so it only covers n <= 9.
    ``""`` and ``"0"`` (the empty set) both give vertex 0.
    """
    if isinstance(coords, str):
        coords = [] if coords in ("", "0", "∅") else [int(c) for c in coords]
    v = 0
    for c in coords:
        if c < 1:
            raise ValueError(f"coordinates are 1-based, got {c}")
        v |= 1 << (c - 1)
    return v


def vertex_to_bits(v: int, n: int) -> str:
    return "".join("1" if (v >> k) & 1 else "0" for k in range(n))


def deposit(x: int, mask: int) -> int:
    """Scatter the low bits of x into the set positions of mask (pdep)."""
    out = 0
    k = 0
    while mask:
        low = mask & -mask
        if (x >> k) & 1:
            out |= low
        mask ^= low
        k += 1
    return out


def extract(v: int, mask: int) -> int:
    """Gather the bits of v at the set positions of mask into low bits (pext)."""
    out = 0
    k = 0
    while mask:
        low = mask & -mask
        if v & low:
            out |= 1 << k
        mask ^= low
        k += 1
    return out


def masks_of_weight(n: int, d: int) -> Iterator[int]:
    """All n-bit masks with exactly d bits set, in increasing order."""
    if d == 0:
        yield 0
        return
    m = (1 << d) - 1
    limit = 1 << n
    while m < limit:
        yield m
        # Gosper's hack
        c = m & -m
        r = m + c
        m = (((r ^ m) >> 2) // c) | r


def submasks_ascending(mask: int) -> Iterator[int]:
    s = 0
    while True:
        yield s
        s = (s - mask) & mask
        if s == 0:
            return


@dataclass(frozen=True)
class CubeConfig:
    """A set of vertices of Q_dim, held as a 2^dim-bit membership mask."""

    dim: int
    mask: int = 0

    def __post_init__(self) -> None:
        if self.dim < 0 or self.dim > MAX_AMBIENT_DIM:
            raise DimensionError(f"dimension {self.dim} outside [0, {MAX_AMBIENT_DIM}]")
        if self.mask < 0 or self.mask >> (1 << self.dim):
            raise DimensionError("membership mask longer than 2^dim")

    @classmethod
    def from_vertices(cls, dim: int, vertices: Iterable[int]) -> CubeConfig:
        mask = 0
        size = 1 << dim
        for v in vertices:
            if not 0 <= v < size:
                raise DimensionError(f"vertex {v} not in Q_{dim}")
            mask |= 1 << v
        return cls(dim, mask)

    @classmethod
    def from_bitstrings(cls, strings: Iterable[str]) -> CubeConfig:
        strings = list(strings)
        if not strings:
            raise ValueError("cannot infer dimension from an empty list; use CubeConfig(dim)")
        dims = {len(s) for s in strings}
        if len(dims) != 1:
            raise DimensionError("bitstrings of mixed length")
        return cls.from_vertices(dims.pop(), (vertex_from_bits(s) for s in strings))

    @classmethod
    def full(cls, dim: int) -> CubeConfig:
        return cls(dim, (1 << (1 << dim)) - 1)

    @classmethod
    def from_array(cls, arr: np.ndarray) -> CubeConfig:
        arr = np.asarray(arr, dtype=bool).ravel()
        size = arr.size
        dim = size.bit_length() - 1
        if size != 1 << dim:
            raise DimensionError("array length is not a power of two")
        packed = np.packbits(arr, bitorder="little")
        return cls(dim, int.from_bytes(packed.tobytes(), "little"))

    def to_array(self) -> np.ndarray:
        size = 1 << self.dim
        nbytes = max(1, (size + 7) // 8)
        raw = np.frombuffer(self.mask.to_bytes(nbytes, "little"), dtype=np.uint8)
        return np.unpackbits(raw, bitorder="little")[:size].astype(bool)

    @property
    def size(self) -> int:
        return 1 << self.dim

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, v: int) -> bool:
        return bool((self.mask >> v) & 1)

    def __iter__(self) -> Iterator[int]:
        m = self.mask
        while m:
            low = m & -m
            yield low.bit_length() - 1
            m ^= low

    def members(self) -> list[int]:
        return list(self)

    def complement(self) -> CubeConfig:
        return CubeConfig(self.dim, self.mask ^ ((1 << self.size) - 1))

    def bitstrings(self) -> list[str]:
        return [vertex_to_bits(v, self.dim) for v in self]

    def distance_multiset(self) -> list[int]:
        vs = self.members()
        return sorted(hamming(a, b) for a, b in itertools.combinations(vs, 2))

    def __repr__(self) -> str:
        if self.dim <= 8:
            return f"CubeConfig({self.dim}, {{{', '.join(self.bitstrings())}}})"
        return f"CubeConfig({self.dim}, |S|={len(self)})"


@dataclass(frozen=True)
class Subcube:
    """Sub-d-cube of Q_n: the flip-bit coordinates vary, the rest equal ``base``."""

    ambient_dim: int
    flip_mask: int
    base: int = 0

    def __post_init__(self) -> None:
        n = self.ambient_dim
        if not 1 <= n <= MAX_AMBIENT_DIM:
            raise DimensionError(f"ambient dimension {n} outside [1, {MAX_AMBIENT_DIM}]")
        if self.flip_mask >> n or self.base >> n:
            raise DimensionError("mask exceeds ambient dimension")
        if self.flip_mask == 0:
            raise DimensionError("a subcube needs at least one flip bit")
        if self.base & self.flip_mask:
            raise DimensionError("base must be zero on the flip bits")

    @property
    def dim(self) -> int:
        return self.flip_mask.bit_count()

    def offsets(self) -> tuple[int, ...]:
        """Offset of each local vertex; local bit j is the j-th lowest flip bit."""
        return _offsets(self.flip_mask)

    def vertices(self) -> list[int]:
        return [self.base ^ s for s in self.offsets()]

    def __contains__(self, v: int) -> bool:
        return (v & ~self.flip_mask) == self.base


@lru_cache(maxsize=4096)
def _offsets(flip_mask: int) -> tuple[int, ...]:
    d = flip_mask.bit_count()
    return tuple(deposit(s, flip_mask) for s in range(1 << d))


@dataclass(frozen=True)
class Automorphism:
    """Coordinate permutation followed by XOR translation.

    Bit i of a vertex moves to position ``perm[i]``; the result is then XORed
    with ``translate``.
    """

    perm: tuple[int, ...]
    translate: int = 0

    def __post_init__(self) -> None:
        d = len(self.perm)
        if sorted(self.perm) != list(range(d)):
            raise ValueError(f"not a permutation: {self.perm}")
        if not 0 <= self.translate < (1 << d):
            raise DimensionError("translate outside Q_d")

    @classmethod
    def identity(cls, d: int) -> Automorphism:
        return cls(tuple(range(d)), 0)

    @classmethod
    def flip(cls, d: int, coords: Iterable[int]) -> Automorphism:
        """Complement the given 1-based coordinates."""
        return cls(tuple(range(d)), vertex_from_subset(coords))

    @property
    def dim(self) -> int:
        return len(self.perm)

    def permute(self, v: int) -> int:
        out = 0
        for i, p in enumerate(self.perm):
            if (v >> i) & 1:
                out |= 1 << p
        return out

    def __call__(self, v: int) -> int:
        return self.permute(v) ^ self.translate

    def compose(self, other: Automorphism) -> Automorphism:
        """The map v -> self(other(v))."""
        if other.dim != self.dim:
            raise DimensionError("composing automorphisms of different cubes")
        perm = tuple(self.perm[other.perm[i]] for i in range(self.dim))
        return Automorphism(perm, self.permute(other.translate) ^ self.translate)

    def inverse(self) -> Automorphism:
        inv = [0] * self.dim
        for i, p in enumerate(self.perm):
            inv[p] = i
        inv_aut = Automorphism(tuple(inv), 0)
        return Automorphism(inv_aut.perm, inv_aut.permute(self.translate))

    def vertex_map(self) -> tuple[int, ...]:
        return tuple(self(v) for v in range(1 << self.dim))


def apply_automorphism(a: Automorphism, H: CubeConfig) -> CubeConfig:
    if a.dim != H.dim:
        raise DimensionError(f"automorphism of Q_{a.dim} applied to a configuration in Q_{H.dim}")
    return CubeConfig.from_vertices(H.dim, (a(v) for v in H))


def automorphism_count(d: int) -> int:
    return (1 << d) * factorial(d)


def enumerate_automorphisms(d: int) -> Iterator[Automorphism]:
    """Every element of Aut(Q_d) once: permutations in lexicographic order, translates ascending."""
    if not 0 <= d <= MAX_AUT_DIM:
        raise DimensionError(f"automorphism enumeration supports 0 <= d <= {MAX_AUT_DIM}, got {d}")
    for perm in itertools.permutations(range(d)):
        for t in range(1 << d):
            yield Automorphism(perm, t)


@lru_cache(maxsize=None)
def permutation_table(d: int) -> np.ndarray:
    """Vertex images under every coordinate permutation, shape (d!, 2^d)."""
    if not 0 <= d <= MAX_AUT_DIM:
        raise DimensionError(f"supported range is 0 <= d <= {MAX_AUT_DIM}")
    verts = np.arange(1 << d, dtype=np.int32)
    perms = np.array(list(itertools.permutations(range(d))), dtype=np.int32).reshape(factorial(d), d)
    table = np.zeros((perms.shape[0], 1 << d), dtype=np.int32)
    for i in range(d):
        table |= ((verts >> i) & 1)[None, :] << perms[:, i : i + 1]
    table = table.astype(np.int8 if d <= 6 else np.int16)
    table.flags.writeable = False
    return table


@lru_cache(maxsize=None)
def automorphism_table(d: int) -> np.ndarray:
    """Vertex maps of all automorphisms in ``enumerate_automorphisms`` order, shape (2^d d!, 2^d)."""
    if not 0 <= d <= 6:
        raise DimensionError("dense automorphism tables are limited to d <= 6")
    perm = permutation_table(d).astype(np.int64)
    trans = np.arange(1 << d, dtype=np.int64)
    table = (perm[:, None, :] ^ trans[None, :, None]).reshape(-1, 1 << d).astype(np.int16)
    table.flags.writeable = False
    return table


def subcube_count(n: int, d: int) -> int:
    return comb(n, d) << (n - d)


def enumerate_subcubes(n: int, d: int) -> Iterator[Subcube]:
    """Every sub-d-cube of Q_n, flip masks ascending then bases ascending."""
    if not 1 <= d <= n <= MAX_AMBIENT_DIM:
        raise DimensionError(f"need 1 <= d <= n <= {MAX_AMBIENT_DIM}, got d={d}, n={n}")
    full = (1 << n) - 1
    for flip in masks_of_weight(n, d):
        for base in submasks_ascending(full ^ flip):
            yield Subcube(n, flip, base)


def restrict(S: CubeConfig, R: Subcube) -> CubeConfig:
    """S ∩ R read as a configuration of Q_d in the subcube's local coordinates."""
    if R.ambient_dim != S.dim:
        raise DimensionError(f"subcube of Q_{R.ambient_dim} but configuration in Q_{S.dim}")
    mask = 0
    smask = S.mask
    base = R.base
    for j, off in enumerate(R.offsets()):
        if (smask >> (base ^ off)) & 1:
            mask |= 1 << j
    return CubeConfig(R.dim, mask)
