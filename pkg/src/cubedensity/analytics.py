"""Closed forms, the f_{d,i} optimisation, exact construction counts and the bounds table.

Everything that can be exact is a Fraction. Irrational outputs (limits and
optimiser results) are mpmath floats at 128 bits.
"""
from __future__ import annotations

import csv
import io
import itertools
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from math import comb, factorial
from typing import Any, Iterable

import mpmath

from .canonical import canonical_form
from .constructions import ConstructionSpec, PartModel, RandomSpec, construction, generate, named
from .cube import CubeConfig, DimensionError

PREC_BITS = 128


def _mp():
    ctx = mpmath.mp.clone()
    ctx.prec = PREC_BITS
    return ctx


def _check_di(d: int, i: int) -> None:
    if not 1 <= i < d:
        raise DimensionError(f"need 1 <= i < d, got d={d}, i={i}")


def lambda_H_family(d: int, i: int) -> Fraction:
    """C(d,i) i^i (d-i)^(d-i) / d^d."""
    _check_di(d, i)
    return Fraction(comb(d, i) * i**i * (d - i) ** (d - i), d**d)


def generic_lower_bound(d: int) -> Fraction:
    if d < 1:
        raise DimensionError("d must be positive")
    return Fraction(factorial(d), d**d)


def flip_bit_fraction(d: int, i: int, m: int, n: int) -> Fraction:
    """C(d,i) m^i (n-m)^(d-i) / n^d: the flip-bit heuristic with independent coordinate draws."""
    _check_di(d, i)
    return Fraction(comb(d, i) * m**i * (n - m) ** (d - i), n**d)


def hypergeometric_fraction(d: int, i: int, m: int, n: int) -> Fraction:
    """Share of sub-d-cubes of Q_n with exactly i flip bits among m marked coordinates."""
    _check_di(d, i)
    return Fraction(comb(m, i) * comb(n - m, d - i), comb(n, d))


def f_di(d: int, i: int, x: Any) -> Any:
    """Share of d-sets of K_{xn,(1-x)n} inducing K_{i,d-i} in the limit; exact for Fraction input.

    C(d,i)[x^i(1-x)^(d-i) + x^(d-i)(1-x)^i], with the two terms counted once
    when i = d - i (they describe the same sets).
    """
    _check_di(d, i)
    if 2 * i == d:
        return comb(d, i) * x**i * (1 - x) ** i
    return comb(d, i) * (x**i * (1 - x) ** (d - i) + x ** (d - i) * (1 - x) ** i)


def _f_poly(d: int, i: int) -> list[int]:
    """Integer coefficients (ascending powers) of f_{d,i}."""
    coeffs = [0] * (d + 1)
    for a, b in {(i, d - i), (d - i, i)}:
        # x^a (1-x)^b
        for k in range(b + 1):
            coeffs[a + k] += comb(d, i) * comb(b, k) * (-1) ** k
    return coeffs


def _eval(coeffs: list[int], x: Any) -> Any:
    acc = 0 * x
    for c in reversed(coeffs):
        acc = acc * x + c
    return acc


def _deriv(coeffs: list[int]) -> list[int]:
    return [k * c for k, c in enumerate(coeffs)][1:]


@dataclass(frozen=True)
class RealFunctionResult:
    argmax: mpmath.mpf
    max_value: mpmath.mpf
    tolerance: float
    at_half: bool

    def to_json(self) -> dict[str, Any]:
        return {
            "argmax": mpmath.nstr(self.argmax, 36),
            "max_value": mpmath.nstr(self.max_value, 36),
            "tolerance": self.tolerance,
            "at_half": self.at_half,
        }


def equibipartite_criterion(d: int, i: int) -> bool:
    """min(i, d-i) >= (d - sqrt d)/2, decided in integers."""
    _check_di(d, i)
    j = min(i, d - i)
    return (d - 2 * j) ** 2 <= d


def maximize_f(d: int, i: int, grid: int = 512, tol: float = 1e-12) -> RealFunctionResult:
    """Maximise f_{d,i} over (0, 1/2].

    A rational grid locates the brackets where f' turns from positive to
    negative; golden-section search narrows each one in floating point and an
    exact bisection on f' finishes it. The endpoint 1/2 is always a candidate
    (f is symmetric about it, so f'(1/2) = 0).
    """
    _check_di(d, i)
    mp = _mp()
    poly = _f_poly(d, i)
    dpoly = _deriv(poly)
    half = Fraction(1, 2)
    xs = [Fraction(k, 2 * grid) for k in range(1, grid + 1)]
    signs = [_eval(dpoly, x) for x in xs]
    brackets = [(xs[k], xs[k + 1]) for k in range(grid - 1) if signs[k] > 0 and signs[k + 1] < 0]

    candidates = [(mp.mpf(1) / 2, mp.mpf(_eval(poly, half).numerator) / _eval(poly, half).denominator)]
    for lo, hi in brackets:
        a, b = _golden(mp, poly, mp.mpf(lo.numerator) / lo.denominator, mp.mpf(hi.numerator) / hi.denominator)
        # exact bisection needs a sign-verified rational bracket around the float estimate
        lo_q, hi_q = _rational_bracket(dpoly, a, b, lo, hi)
        while hi_q - lo_q > Fraction(1, 2**PREC_BITS):
            mid = (lo_q + hi_q) / 2
            if _eval(dpoly, mid) > 0:
                lo_q = mid
            else:
                hi_q = mid
        x = mp.mpf(lo_q.numerator) / lo_q.denominator
        candidates.append((x, _eval([mp.mpf(c) for c in poly], x)))
    best = max(candidates, key=lambda t: t[1])
    at_half = best[0] == candidates[0][0] or abs(best[1] - candidates[0][1]) < mp.mpf(2) ** (-PREC_BITS + 8)
    if at_half:
        best = candidates[0]
    return RealFunctionResult(best[0], best[1], tol, at_half)


def _golden(mp, poly: list[int], a, b, iters: int = 60):
    fpoly = [mp.mpf(c) for c in poly]
    g = (mp.sqrt(5) - 1) / 2
    c, e = b - g * (b - a), a + g * (b - a)
    fc, fe = _eval(fpoly, c), _eval(fpoly, e)
    for _ in range(iters):
        if fc > fe:
            b, e, fe = e, c, fc
            c = b - g * (b - a)
            fc = _eval(fpoly, c)
        else:
            a, c, fc = c, e, fe
            e = a + g * (b - a)
            fe = _eval(fpoly, e)
    return a, b


def _rational_bracket(dpoly, a, b, lo: Fraction, hi: Fraction) -> tuple[Fraction, Fraction]:
    qa = Fraction(str(mpmath.nstr(a, 40)))
    qb = Fraction(str(mpmath.nstr(b, 40)))
    if lo <= qa < qb <= hi and _eval(dpoly, qa) > 0 and _eval(dpoly, qb) < 0:
        return qa, qb
    return lo, hi


def limit_H_family(i: int) -> mpmath.mpf:
    """i^i / (i! e^i)."""
    if i < 1:
        raise DimensionError("i must be positive")
    mp = _mp()
    return mp.mpf(i) ** i / (mp.factorial(i) * mp.e**i)


@dataclass(frozen=True)
class RandomConstructionValue:
    d: int
    value: Fraction
    layered_bound: Fraction

    @property
    def beats_layered(self) -> bool:
        return self.value > self.layered_bound

    def to_json(self) -> dict[str, Any]:
        return {
            "d": self.d,
            "value": float(self.value),
            "layered_bound": str(self.layered_bound),
            "beats_layered": self.beats_layered,
        }


def random_construction_value(d: int) -> RandomConstructionValue:
    """((2^d - 1)/2^d)^(2^d - 1) against the layered bound 2/(d+1)."""
    if d < 1:
        raise DimensionError("d must be positive")
    L = 1 << d
    return RandomConstructionValue(d, Fraction(L - 1, L) ** (L - 1), Fraction(2, d + 1))


# ---------------------------------------------------------------------------
# exact construction densities


def _residue_counts(size: int, modulus: int) -> list[int]:
    """Number of 0/1 vectors of length ``size`` per weight residue."""
    out = [0] * modulus
    for w in range(size + 1):
        out[w % modulus] += comb(size, w)
    return out


def _local_config(model: PartModel, flips: tuple[int, ...], fixed: tuple[int, ...]) -> CubeConfig:
    d = sum(flips)
    members = []
    for u in range(1 << d):
        shift = 0
        res = []
        for j, r, m in zip(flips, fixed, model.moduli):
            w = ((u >> shift) & ((1 << j) - 1)).bit_count()
            res.append((r + w) % m)
            shift += j
        if tuple(res) in model.allowed:
            members.append(u)
    return CubeConfig.from_vertices(d, members)


def model_good_count(model: PartModel, H: CubeConfig) -> int:
    """Closed-form count of good sub-d-cubes for a part model.

    Sum over flip counts (j_p) per part and fixed-coordinate residues (r_p):
    prod C(n_p, j_p) * #{fixed bits in part p with weight = r_p mod m_p},
    counted when the induced local configuration is an exact copy of H.
    """
    d = H.dim
    key = canonical_form(H)
    total = 0
    parts = range(len(model.sizes))
    for flips in itertools.product(*(range(min(s, d) + 1) for s in model.sizes)):
        if sum(flips) != d:
            continue
        ways = 1
        for j, s in zip(flips, model.sizes):
            ways *= comb(s, j)
        if not ways:
            continue
        counts = [_residue_counts(model.sizes[p] - flips[p], model.moduli[p]) for p in parts]
        for fixed in itertools.product(*(range(m) for m in model.moduli)):
            mult = 1
            for p in parts:
                mult *= counts[p][fixed[p]]
            if mult and canonical_form(_local_config(model, flips, fixed)) == key:
                total += ways * mult
    return total


def construction_density_exact(spec: ConstructionSpec, H: CubeConfig, n: int) -> Fraction:
    """Exact fraction of good sub-d-cubes for a deterministic construction at dimension n."""
    if isinstance(spec, RandomSpec):
        raise ValueError("no closed form for random constructions; use density.count_good")
    if not 1 <= H.dim <= n:
        raise DimensionError(f"need 1 <= d <= n, got d={H.dim}, n={n}")
    model = generate(spec, n, materialize=False).model
    good = model_good_count(model, H)
    return Fraction(good, comb(n, H.dim) * 2 ** (n - H.dim))


# ---------------------------------------------------------------------------
# bounds table


@dataclass(frozen=True)
class BoundsRow:
    config_name: str
    construction: str
    lower_bound: Fraction
    upper_bound: Fraction | float
    source: str
    proved: bool = False

    @property
    def consistent(self) -> bool:
        return self.lower_bound <= self.upper_bound

    @property
    def gap(self) -> float:
        return float(self.upper_bound) - float(self.lower_bound)


def _parse_bound(x: Any) -> Fraction | float:
    if isinstance(x, str) and "/" in x:
        return Fraction(x)
    if isinstance(x, int):
        return Fraction(x)
    return float(x)


@lru_cache(maxsize=None)
def _bounds_doc() -> dict[str, Any]:
    return json.loads(resources.files("cubedensity").joinpath("data/bounds.json").read_text())


def bounds_table() -> list[BoundsRow]:
    rows = []
    for r in _bounds_doc()["rows"]:
        rows.append(
            BoundsRow(
                r["name"],
                r["construction"],
                Fraction(r["lower"]),
                _parse_bound(r["upper"]),
                r["source"],
                bool(r.get("proved", False)),
            )
        )
    return rows


def inducibility_constants() -> dict[str, Fraction]:
    return {k: Fraction(v) for k, v in _bounds_doc()["inducibility"].items()}


def bounds_version() -> str:
    return _bounds_doc()["version"]


@dataclass(frozen=True)
class ReportRow:
    name: str
    construction: str
    n: int | None
    finite_value: Fraction | None
    lower: Fraction
    upper: Fraction | float

    def as_dict(self) -> dict[str, Any]:
        return {
            "name": self.name,
            "construction": self.construction,
            "n": self.n,
            "finite_value": None if self.finite_value is None else str(self.finite_value),
            "finite_value_float": None if self.finite_value is None else float(self.finite_value),
            "lower": str(self.lower),
            "upper": str(self.upper),
            "gap": float(self.upper) - float(self.lower),
        }


def comparison_report(n: int = 12, names: Iterable[str] | None = None) -> list[ReportRow]:
    """Finite-n construction values next to the recorded bounds."""
    out = []
    wanted = set(names) if names is not None else None
    for row in bounds_table():
        if wanted is not None and row.config_name not in wanted:
            continue
        value = None
        try:
            spec = construction(row.config_name)
            H = named(row.config_name).config
            if not isinstance(spec, RandomSpec) and H.dim <= n:
                value = construction_density_exact(spec, H, n)
        except (KeyError, ValueError):
            value = None
        out.append(ReportRow(row.config_name, row.construction, n if value is not None else None, value, row.lower_bound, row.upper_bound))
    return out


def report_csv(rows: list[ReportRow]) -> str:
    buf = io.StringIO()
    fields = ["name", "construction", "n", "finite_value", "finite_value_float", "lower", "upper", "gap"]
    w = csv.DictWriter(buf, fieldnames=fields, lineterminator="\n")
    w.writeheader()
    for r in rows:
        w.writerow(r.as_dict())
    return buf.getvalue()

