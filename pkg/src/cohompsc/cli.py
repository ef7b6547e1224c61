"""Command-line front end.

Exit codes: 0 success, 1 usage or validation error, 2 numerical certificate failed,
3 input could not be parsed.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from dataclasses import dataclass
from typing import Optional, Sequence

from . import __version__
from .catalog import catalog_algebra, catalog_description, catalog_lookup, catalog_names
from .classify import ClassificationError, classify
from .diagrams import DiagramError, from_json
from .lie import RANK_TOL, LieAlgebraError, LieAlgebraModel
from .oracle import fd_oracle
from .warp import (ProfileError, build_gz_profile, build_modified_profile, samples_csv, smooth_profile,
                   verify_profile)

EXIT_OK, EXIT_INVALID, EXIT_CERTIFICATE, EXIT_PARSE = 0, 1, 2, 3
DEFAULT_TOL = 1e-6
PROFILE_KEYS = ("variant", "a", "b", "c", "d0", "d1", "d2", "epsilon", "delta", "tmax", "grid")


class UsageError(Exception):
    pass


class ParseError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    """argparse exits with 2 on bad usage; 2 is reserved for failed certificates here."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_INVALID, f"{self.prog}: error: {message}\n")


@dataclass
class RunConfig:
    command: str
    input_path: Optional[str] = None
    output_path: Optional[str] = None
    csv_path: Optional[str] = None
    variant: str = "modified"
    a: float = 0.5
    b: float = 0.5
    c: float = 1.0
    d: tuple[int, int, int] = (1, 1, 1)
    epsilon: float = 0.05
    delta: Optional[float] = None
    t_max: Optional[float] = None
    grid_size: int = 4096
    tol: float = DEFAULT_TOL
    require_uniform: bool = False
    oracle: bool = False

    def resolved(self) -> "RunConfig":
        if self.grid_size < 2:
            raise UsageError("--grid must be at least 2")
        if self.tol <= 0:
            raise UsageError("--tol must be positive")
        if self.delta is None:
            self.delta = self.epsilon / 5
        if self.t_max is None:
            self.t_max = 3 * self.c
        return self


def _default_tol() -> float:
    raw = os.environ.get("PSC_TOL")
    if raw is None:
        return DEFAULT_TOL
    try:
        return float(raw)
    except ValueError:
        raise UsageError(f"PSC_TOL is not a number: {raw!r}") from None


def _emit(text: str, path: Optional[str]) -> None:
    if path is None:
        sys.stdout.write(text)
    else:
        with open(path, "w", newline="") as fh:
            fh.write(text)


def _read_json(path: str):
    try:
        with open(path) as fh:
            return json.load(fh)
    except OSError as exc:
        raise UsageError(f"cannot read {path}: {exc.strerror}") from None
    except (json.JSONDecodeError, UnicodeDecodeError) as exc:
        raise ParseError(f"{path}: {exc}") from None


def _resolve_catalog(name: str):
    names = catalog_names()
    for candidate in (name, f"diagram:{name}", f"homogeneous:{name}"):
        if candidate in names:
            return catalog_lookup(candidate)
    raise UsageError(f"unknown catalog entry {name!r} (see `psc catalog`)")


# -- commands ----------------------------------------------------------------

def cmd_classify(args) -> int:
    if args.catalog:
        obj = _resolve_catalog(args.catalog)
        if isinstance(obj, LieAlgebraModel):
            raise UsageError(f"{args.catalog!r} is a Lie algebra, not a pair or diagram")
    else:
        raw = _read_json(args.input)
        if not isinstance(raw, dict):
            raise ParseError("top-level JSON value must be an object")
        obj = from_json(raw, catalog_algebra)
    # classify validates (after reducing torus actions to effective ones)
    verdict = classify(obj, args.rank_tol)
    _emit(json.dumps(verdict.to_json(), indent=2) + "\n", args.out)
    return EXIT_OK


def _profile_config(args, command: str) -> RunConfig:
    cfg = RunConfig(command=command, tol=_default_tol())
    if getattr(args, "input", None):
        raw = _read_json(args.input)
        if not isinstance(raw, dict):
            raise ParseError("profile parameters must be a JSON object")
        unknown = set(raw) - set(PROFILE_KEYS)
        if unknown:
            raise UsageError(f"unknown profile parameters: {sorted(unknown)}")
        for key, value in raw.items():
            if getattr(args, key) is None:  # command-line flags win over the file
                setattr(args, key, value)
    for key in ("variant", "a", "b", "c", "epsilon", "delta"):
        if getattr(args, key) is not None:
            setattr(cfg, key, getattr(args, key))
    d = list(cfg.d)
    for i in range(3):
        if getattr(args, f"d{i}") is not None:
            d[i] = int(getattr(args, f"d{i}"))
    cfg.d = tuple(d)
    if args.tmax is not None:
        cfg.t_max = float(args.tmax)
    if args.grid is not None:
        cfg.grid_size = int(args.grid)
    cfg.output_path = args.out
    if command == "metric-verify":
        cfg.csv_path = args.csv
        cfg.require_uniform = args.require_uniform
        cfg.oracle = args.oracle
        if args.tol is not None:
            cfg.tol = args.tol
    if cfg.variant not in ("gz", "modified"):
        raise UsageError("--variant must be gz or modified")
    return cfg.resolved()


def _build(cfg: RunConfig):
    if cfg.variant == "gz":
        p = build_gz_profile(cfg.a, cfg.b, cfg.c, *cfg.d, t_max=cfg.t_max)
    else:
        p = build_modified_profile(cfg.a, cfg.b, cfg.c, *cfg.d, epsilon=cfg.epsilon, t_max=cfg.t_max)
    return smooth_profile(p, cfg.delta)


def cmd_metric_build(args) -> int:
    cfg = _profile_config(args, "metric-build")
    p = _build(cfg)
    _emit(samples_csv(p, cfg.grid_size, include_breaks=True), cfg.output_path)
    return EXIT_OK


def cmd_metric_verify(args) -> int:
    cfg = _profile_config(args, "metric-verify")
    p = _build(cfg)
    report = verify_profile(p, cfg.grid_size, cfg.tol)
    out = report.to_json()
    holds = report.uniformly_positive if cfg.require_uniform else report.nonnegative
    if cfg.oracle:
        oracle = fd_oracle(p, cfg.grid_size)
        out["oracle"] = oracle.to_json()
        holds = holds and oracle.ok
    out["required"] = "uniformly_positive" if cfg.require_uniform else "nonnegative"
    out["certified"] = bool(holds)
    _emit(json.dumps(out, indent=2) + "\n", cfg.output_path)
    if cfg.csv_path:
        _emit(samples_csv(p, cfg.grid_size), cfg.csv_path)
    if not holds:
        print(f"certificate failed: {out['required']} does not hold "
              f"(lower bound {report.uniform_lower_bound:.3e}, tol {cfg.tol:g})", file=sys.stderr)
        return EXIT_CERTIFICATE
    return EXIT_OK


def cmd_catalog(args) -> int:
    names = catalog_names()
    if args.json:
        entries = [{"name": n, "description": catalog_description(n)} for n in names]
        sys.stdout.write(json.dumps(entries, indent=2) + "\n")
    else:
        width = max(map(len, names))
        for n in names:
            print(f"{n:<{width}}  {catalog_description(n)}")
    return EXIT_OK


# -- parser ------------------------------------------------------------------

def _profile_args(p: argparse.ArgumentParser) -> None:
    p.add_argument("--in", dest="input", metavar="FILE", help="JSON object of profile parameters")
    p.add_argument("--variant", choices=("gz", "modified"))
    p.add_argument("--a", type=float)
    p.add_argument("--b", type=float)
    p.add_argument("--c", type=float)
    for i in range(3):
        p.add_argument(f"--d{i}", type=int, metavar="N")
    p.add_argument("--epsilon", type=float)
    p.add_argument("--delta", type=float, help="smoothing half-width (default epsilon/5, 0 disables)")
    p.add_argument("--tmax", type=float, help="right end of the sampled interval (default 3c)")
    p.add_argument("--grid", type=int, metavar="N", help="number of grid points (default 4096)")
    p.add_argument("--out", metavar="FILE")


def build_parser() -> argparse.ArgumentParser:
    parser = _Parser(prog="psc", description="Positive scalar curvature for homogeneous and "
                                             "cohomogeneity one manifolds.")
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pc = sub.add_parser("classify", help="classify a homogeneous pair or group diagram")
    src = pc.add_mutually_exclusive_group(required=True)
    src.add_argument("--in", dest="input", metavar="FILE")
    src.add_argument("--catalog", metavar="NAME")
    pc.add_argument("--out", metavar="FILE")
    pc.add_argument("--rank-tol", type=float, default=RANK_TOL)
    pc.set_defaults(func=cmd_classify)

    pm = sub.add_parser("metric", help="build or verify warping profiles")
    msub = pm.add_subparsers(dest="metric_command", required=True, parser_class=_Parser)
    pb = msub.add_parser("build", help="sample a profile to CSV")
    _profile_args(pb)
    pb.set_defaults(func=cmd_metric_build)
    pv = msub.add_parser("verify", help="certify the Ricci functions of a profile")
    _profile_args(pv)
    pv.add_argument("--require-uniform", action="store_true")
    pv.add_argument("--tol", type=float, help="positivity tolerance (default 1e-6 or $PSC_TOL)")
    pv.add_argument("--csv", metavar="FILE")
    pv.add_argument("--oracle", action="store_true",
                    help="also run the finite-difference and Christoffel-symbol cross-checks")
    pv.set_defaults(func=cmd_metric_verify)

    pk = sub.add_parser("catalog", help="list built-in algebras, pairs and diagrams")
    pk.add_argument("--json", action="store_true")
    pk.set_defaults(func=cmd_catalog)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ParseError as exc:
        print(f"psc: parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except BrokenPipeError:  # e.g. piped into head
        sys.stderr.close()
        return EXIT_OK
    except (UsageError, DiagramError, LieAlgebraError, ProfileError, ClassificationError,
            ValueError, KeyError, TypeError, OSError) as exc:
        print(f"psc: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    except Exception as exc:  # keep the exit-code contract total
        print(f"psc: internal error: {exc!r}", file=sys.stderr)
        return EXIT_INVALID


if __name__ == "__main__":
    sys.exit(main())
