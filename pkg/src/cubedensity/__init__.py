"""Exact-copy densities of vertex configurations in hypercubes."""
from __future__ import annotations

__version__ = "0.1.0"

from .canonical import CanonicalKey, OrbitAtlas, canonical_form, classify, is_exact_copy, is_layered
from .constructions import (
    BlowupSpec,
    LayeredSpec,
    PartitionModularSpec,
    RandomSpec,
    family_E,
    family_H,
    generate,
    hamming_code_q7,
    named,
    perfect_cycle,
)
from .cube import Automorphism, CubeConfig, Subcube, restrict
from .density import count_good, count_good_sampled, density_profile, local_count

__all__ = [
    "Automorphism",
    "BlowupSpec",
    "CanonicalKey",
    "CubeConfig",
    "LayeredSpec",
    "OrbitAtlas",
    "PartitionModularSpec",
    "RandomSpec",
    "Subcube",
    "canonical_form",
    "classify",
    "count_good",
    "count_good_sampled",
    "density_profile",
    "family_E",
    "family_H",
    "generate",
    "hamming_code_q7",
    "is_exact_copy",
    "is_layered",
    "local_count",
    "named",
    "perfect_cycle",
    "restrict",
]
