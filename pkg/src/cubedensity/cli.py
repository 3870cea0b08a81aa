"""Command-line entry point: count, classify, search, reproduce, report."""
from __future__ import annotations

import argparse
import hashlib
import json
import logging
import os
import sys
import time
from dataclasses import dataclass
from datetime import datetime, timezone
from pathlib import Path
from typing import Any, Sequence

from . import __version__, acceptance, analytics
from .canonical import canonical_form, classify
from .constructions import (
    ConstructionError,
    RandomSpec,
    construction,
    generate,
    named,
    spec_from_json,
)
from .cube import CubeConfig, DimensionError, vertex_from_bits, vertex_from_subset
from .density import FeasibilityError, check_exact_feasible, count_good, count_good_sampled, local_count
from .extremal import Schedule, SearchParams, local_search

log = logging.getLogger("cubedensity")

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_FEASIBILITY = 3
EXIT_ACCEPTANCE = 4


class UsageError(Exception):
    pass


# ---------------------------------------------------------------------------
# run log


def log_dir() -> Path:
    env = os.environ.get("CUBEDENSITY_LOG_DIR")
    return Path(env) if env else Path.home() / ".cache" / "cubedensity"


def digest(result: Any) -> str:
    blob = json.dumps(result, sort_keys=True, separators=(",", ":")).encode()
    return hashlib.sha256(blob).hexdigest()


@dataclass(frozen=True)
class RunRecord:
    command: str
    arguments: dict[str, Any]
    seeds: list[int]
    wall_time: float
    result_digest: str
    artifact_version: str
    extra: dict[str, Any]

    def to_json(self) -> dict[str, Any]:
        out = {
            "timestamp": datetime.now(timezone.utc).isoformat(),
            "command": self.command,
            "arguments": self.arguments,
            "seeds": self.seeds,
            "wall_time": round(self.wall_time, 6),
            "result_digest": self.result_digest,
            "artifact_version": self.artifact_version,
        }
        out.update(self.extra)
        return out


def append_record(record: RunRecord) -> Path | None:
    """Append one JSONL line with a single O_APPEND write; logging failures never abort a run."""
    try:
        d = log_dir()
        d.mkdir(parents=True, exist_ok=True)
        path = d / "runs.jsonl"
        line = (json.dumps(record.to_json(), sort_keys=True) + "\n").encode()
        fd = os.open(path, os.O_WRONLY | os.O_APPEND | os.O_CREAT, 0o644)
        try:
            os.write(fd, line)
        finally:
            os.close(fd)
        return path
    except OSError as exc:
        log.warning("could not write run log: %s", exc)
        return None


# ---------------------------------------------------------------------------
# argument resolution


def resolve_pattern(text: str) -> CubeConfig:
    """A registry name or a configuration file holding an explicit set."""
    try:
        return named(text).config
    except KeyError:
        pass
    path = Path(text)
    if not path.exists():
        raise UsageError(f"unknown pattern {text!r} (not a registry name or file)")
    obj = _load_spec(path)
    if not isinstance(obj, CubeConfig):
        raise UsageError("a pattern file must describe an explicit or named configuration")
    return obj


def resolve_set(text: str, n: int) -> tuple[CubeConfig | None, Any]:
    """(explicit set or None, predicate source) for the host configuration at dimension n."""
    if text == "empty":
        return CubeConfig(n), None
    if text == "full":
        return CubeConfig.full(n), None
    try:
        cfg = named(text).config
        if cfg.dim != n:
            raise UsageError(f"{text} lives in Q_{cfg.dim}, not Q_{n}")
        return cfg, None
    except KeyError:
        pass
    if text.endswith("-construction"):
        try:
            spec = construction(text)
        except KeyError as exc:
            raise UsageError(str(exc)) from exc
        return _from_spec(spec, n)
    path = Path(text)
    if not path.exists():
        raise UsageError(f"unknown set {text!r} (not a registry name, construction or file)")
    obj = _load_spec(path)
    if isinstance(obj, CubeConfig):
        if obj.dim != n:
            raise UsageError(f"configuration file describes Q_{obj.dim}, not Q_{n}")
        return obj, None
    return _from_spec(obj, n)


def _from_spec(spec: Any, n: int) -> tuple[CubeConfig | None, Any]:
    g = generate(spec, n)
    return g.config, g.predicate


def _load_spec(path: Path) -> Any:
    try:
        return spec_from_json(path)
    except (json.JSONDecodeError, KeyError, ConstructionError, ValueError) as exc:
        raise UsageError(f"cannot read configuration file {path}: {exc}") from exc


def parse_vertex(text: str, n: int) -> int:
    """Integer index, ``bits:0101`` (leftmost is x1) or ``set:23`` / ``set:∅``."""
    if text.startswith("bits:"):
        bits = text[5:]
        if len(bits) != n:
            raise UsageError(f"bitstring must have length {n}")
        return vertex_from_bits(bits)
    if text.startswith("set:"):
        return vertex_from_subset(text[4:])
    try:
        v = int(text)
    except ValueError as exc:
        raise UsageError(f"cannot parse vertex {text!r}") from exc
    if not 0 <= v < (1 << n):
        raise UsageError(f"vertex {v} outside Q_{n}")
    return v


def emit(obj: Any) -> None:
    sys.stdout.write(json.dumps(obj, indent=2, sort_keys=True) + "\n")


# ---------------------------------------------------------------------------
# commands


def cmd_count(args: argparse.Namespace) -> int:
    H = resolve_pattern(args.pattern)
    n = args.n
    S, pred = resolve_set(args.set, n)
    if args.local is not None:
        if S is None:
            raise FeasibilityError(f"local counts need an explicit set; Q_{n} is too large to materialise", 1 << n)
        result = local_count(H, S, parse_vertex(args.local, n)).to_json()
    elif args.sampled:
        source = S if S is not None else pred
        result = count_good_sampled(H, source, n, args.sampled, args.seed).to_json()
    else:
        if S is None:
            check_exact_feasible(H.dim, n)
        result = count_good(H, S, threads=args.threads).to_json()
    result.update(pattern=args.pattern, set=args.set, n=n)
    emit(result)
    args._result = result
    if args.sampled:
        args._seeds = [args.seed]
    return EXIT_OK


def cmd_classify(args: argparse.Namespace) -> int:
    if args.d < 0:
        raise UsageError("d must be nonnegative")
    if args.d > 4:
        raise FeasibilityError(f"classification of Q_{args.d} is beyond the d <= 4 table", 1 << (1 << args.d))
    atlas = classify(args.d).to_json()
    emit(atlas)
    args._result = atlas
    return EXIT_OK


def cmd_search(args: argparse.Namespace) -> int:
    H = resolve_pattern(args.pattern)
    init = None
    if args.init:
        init = _resolve_init(args.init, args.n)
    params = SearchParams(
        seed=args.seed,
        restarts=args.restarts,
        max_steps=args.steps,
        schedule=Schedule(args.t0_fraction, args.ratio),
        init=init,
    )
    result = local_search(H, args.n, params).to_json()
    emit(result)
    args._result = result
    args._record_extra = {"H_key": canonical_form(H).hex, "n": args.n, "params": result["params"], "best_fraction": result["best_fraction"]}
    args._seeds = [args.seed]
    return EXIT_OK


def _resolve_init(text: str, n: int) -> Any:
    if text == "random":
        return None
    try:
        return construction(text)
    except KeyError:
        pass
    path = Path(text)
    if not path.exists():
        raise UsageError(f"unknown initialisation {text!r}")
    obj = _load_spec(path)
    if isinstance(obj, RandomSpec):
        return generate(obj, n).config
    return obj


def cmd_reproduce(args: argparse.Namespace) -> int:
    results = acceptance.run_suite(args.suite)
    failed = [r for r in results if not r.passed]
    report = {
        "suite": args.suite,
        "passed": len(results) - len(failed),
        "failed": len(failed),
        "bounds_consistent": acceptance.bounds_consistent(),
        "criteria": [r.to_json() for r in results],
    }
    if args.json:
        emit(report)
    else:
        for r in results:
            print(r.line())
        print(f"{len(results) - len(failed)}/{len(results)} criteria passed")
    args._result = report
    return EXIT_ACCEPTANCE if failed else EXIT_OK


def cmd_report(args: argparse.Namespace) -> int:
    rows = analytics.comparison_report(args.n)
    if args.format == "csv":
        sys.stdout.write(analytics.report_csv(rows))
    else:
        emit({"bounds_version": analytics.bounds_version(), "n": args.n, "rows": [r.as_dict() for r in rows]})
    return EXIT_OK


# ---------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="cubedensity", description="Densities of configurations in hypercube subcubes.")
    p.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    p.add_argument("-v", "--verbose", action="store_true", help="log progress to stderr")
    sub = p.add_subparsers(dest="command", required=True)

    c = sub.add_parser("count", help="count good sub-d-cubes")
    c.add_argument("--pattern", required=True, help="registry name or configuration file")
    c.add_argument("--set", required=True, help="registry name, empty, full, <name>-construction or spec file")
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--sampled", type=int, metavar="N", help="estimate from N random subcubes")
    c.add_argument("--seed", type=int, default=0)
    c.add_argument("--local", metavar="VERTEX", help="local count at a vertex (index, bits:..., set:...)")
    c.add_argument("--threads", type=int, default=None)
    c.set_defaults(func=cmd_count)

    k = sub.add_parser("classify", help="exact-copy classes of Q_d")
    k.add_argument("--d", type=int, required=True)
    k.set_defaults(func=cmd_classify)

    s = sub.add_parser("search", help="annealing search for a good configuration")
    s.add_argument("--pattern", required=True)
    s.add_argument("--n", type=int, required=True)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--restarts", type=int, default=1)
    s.add_argument("--steps", type=int, default=None, help="proposals per restart (default 300 sweeps)")
    s.add_argument("--init", default=None, help="random, <name>-construction or spec file")
    s.add_argument("--t0-fraction", type=float, default=Schedule.t0_fraction)
    s.add_argument("--ratio", type=float, default=Schedule.ratio)
    s.add_argument("--threads", type=int, default=None, help="accepted for symmetry; restarts run in seed order")
    s.set_defaults(func=cmd_search)

    r = sub.add_parser("reproduce", help="run the acceptance suite")
    r.add_argument("--suite", choices=("paper", "quick"), default="paper")
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_reproduce)

    b = sub.add_parser("report", help="construction values next to recorded bounds")
    b.add_argument("--n", type=int, default=12)
    b.add_argument("--format", choices=("csv", "json"), default="csv")
    b.set_defaults(func=cmd_report)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=sys.stderr, format="%(levelname)s %(message)s")
    start = time.perf_counter()
    try:
        code = args.func(args)
    except FeasibilityError as exc:
        print(f"error: {exc} (estimated cost {exc.cost})", file=sys.stderr)
        return EXIT_FEASIBILITY
    except (UsageError, DimensionError, ConstructionError, KeyError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    arguments = {k: v for k, v in vars(args).items() if k not in ("func",) and not k.startswith("_")}
    result = getattr(args, "_result", arguments)
    append_record(
        RunRecord(
            command=args.command,
            arguments=arguments,
            seeds=getattr(args, "_seeds", []),
            wall_time=time.perf_counter() - start,
            result_digest=digest(result),
            artifact_version=__version__,
            extra={**getattr(args, "_record_extra", {}), "result": result},
        )
    )
    return code


if __name__ == "__main__":
    raise SystemExit(main())
