"""Command-line front end.

Exit codes: 0 success, 1 domain failure (JSON error body on stdout), 2 malformed input.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
from dataclasses import dataclass, field, fields
from fractions import Fraction
from pathlib import Path
from typing import Any

from . import characters as ch
from .acceptance import TS, run_all
from .dhmeasure import density_fourier_check, dh_density
from .exppoly import render_exp
from .gkm import GKMError, graded_dimension, load_graph, poincare_rank_check, validate_graph
from .localize import (
    IntegrandSpec,
    ModelError,
    NotPolynomial,
    bv_localize,
    dh_localize,
    load_model,
    localization_sum,
    polynomiality_check,
)
from .models import load_builtin_graph, load_builtin_model
from .pfaffian import AntisymMatrix, NotAntisymmetric, pfaffian, pfaffian_berezin
from .poly import render_rational
from .rootsys import RootSystemError, build_root_system
from .scalars import I, PiScalar, render_gauss, render_weight, to_fraction

SUBCOMMANDS = ("pfaffian", "localize", "dh", "character", "kirillov", "gkm", "selftest")
FORMATS = ("json", "csv", "text")

DEFAULT_TOLERANCES = {
    "fourier": 1e-8,
    "character": 1e-9,
    "kirillov": 1e-9,
}


class InputError(ValueError):
    """Malformed command-line or file input (exit 2)."""


class DomainFailure(Exception):
    """A well-formed input whose mathematics fails a check (exit 1)."""

    def __init__(self, kind: str, payload: dict):
        super().__init__(kind)
        self.kind = kind
        self.payload = payload


@dataclass
class RunConfig:
    subcommand: str = ""
    inputs: dict = field(default_factory=dict)
    format: str = "json"
    check: bool = False
    tolerances: dict = field(default_factory=lambda: dict(DEFAULT_TOLERANCES))
    seed: int = 0

    @classmethod
    def from_dict(cls, data: dict) -> "RunConfig":
        known = {f.name for f in fields(cls)}
        extra = set(data) - known
        if extra:
            raise InputError(f"unknown config fields: {sorted(extra)}")
        cfg = cls(**{k: v for k, v in data.items() if k != "tolerances"})
        if "tolerances" in data:
            tol = data["tolerances"]
            if not isinstance(tol, dict) or set(tol) - set(DEFAULT_TOLERANCES):
                raise InputError(f"tolerances must be a subset of {sorted(DEFAULT_TOLERANCES)}")
            cfg.tolerances.update({k: float(v) for k, v in tol.items()})
        cfg.validate()
        return cfg

    def validate(self):
        if self.subcommand and self.subcommand not in SUBCOMMANDS:
            raise InputError(f"unknown subcommand {self.subcommand!r}")
        if self.format not in FORMATS:
            raise InputError(f"format must be one of {FORMATS}")
        if not isinstance(self.check, bool) or not isinstance(self.seed, int):
            raise InputError("check must be a boolean and seed an integer")
        if not isinstance(self.inputs, dict):
            raise InputError("inputs must be an object")


def load_config(path: str) -> RunConfig:
    try:
        with open(path) as fh:
            data = json.load(fh)
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read config {path}: {exc}") from exc
    if not isinstance(data, dict):
        raise InputError("config must be a JSON object")
    return RunConfig.from_dict(data)


def thread_cap() -> int:
    """EQUILOC_THREADS, validated.  All computation here is single-threaded, so
    the value only caps (never raises) parallelism."""
    raw = os.environ.get("EQUILOC_THREADS")
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError:
        raise InputError(f"EQUILOC_THREADS must be a positive integer, got {raw!r}") from None
    if n < 1:
        raise InputError(f"EQUILOC_THREADS must be a positive integer, got {raw!r}")
    return n


# input helpers -------------------------------------------------------------

def _resolve_model(ref: str):
    if ref.startswith("builtin:"):
        return load_builtin_model(ref.split(":", 1)[1])
    return load_model(ref)


def _resolve_graph(ref: str):
    if ref.startswith("builtin:"):
        return load_builtin_graph(ref.split(":", 1)[1])
    return load_graph(ref)


def _parse_ints(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputError(f"expected comma-separated integers, got {text!r}") from None


def _parse_floats(text: str) -> list[float]:
    try:
        return [float(x) for x in text.replace(" ", "").split(",") if x != ""]
    except ValueError:
        raise InputError(f"expected comma-separated numbers, got {text!r}") from None


def _parse_range(text: str) -> list[int]:
    """"a..b" (inclusive) or a single integer."""
    try:
        if ".." in text:
            a, b = text.split("..", 1)
            lo, hi = int(a), int(b)
        else:
            lo = hi = int(text)
    except ValueError:
        raise InputError(f"expected a range like 0..4, got {text!r}") from None
    if lo < 0 or hi < lo:
        raise InputError(f"bad range {text!r}")
    return list(range(lo, hi + 1))


def _parse_matrix(text: str) -> list[list[Fraction]]:
    try:
        rows = json.loads(text)
        return [[to_fraction(x) for x in row] for row in rows]
    except (json.JSONDecodeError, TypeError, ValueError, ZeroDivisionError) as exc:
        raise InputError(f"matrix must be a JSON array of rational strings: {exc}") from exc


def _dominant(args) -> ch.DominantWeight:
    rs = build_root_system(args.type, args.rank)
    labels = _parse_ints(args.lam)
    if len(labels) != rs.rank:
        raise InputError(f"{rs.name} needs {rs.rank} Dynkin labels, got {len(labels)}")
    if any(x < 0 for x in labels):
        raise InputError("Dynkin labels must be nonnegative")
    return ch.DominantWeight.from_labels(rs, labels)


def _complex_out(z: complex) -> list[float]:
    return [z.real, z.imag]


# subcommands ---------------------------------------------------------------

def cmd_pfaffian(args, cfg: RunConfig) -> dict:
    if args.matrix is None and args.matrix_file is None:
        raise InputError("give --matrix or --matrix-file")
    text = args.matrix if args.matrix is not None else Path(args.matrix_file).read_text()
    A = _parse_matrix(text)
    pf = pfaffian(A)
    out: dict[str, Any] = {"pfaffian": render_gauss(pf), "n": len(A)}
    if cfg.check:
        M = AntisymMatrix(A)
        checks = {"square_equals_det": pf * pf == M.det()}
        if M.n <= 10:
            checks["berezin_agrees"] = pfaffian_berezin(M) == pf
        out["checks"] = checks
        if not all(checks.values()):
            raise DomainFailure("CheckFailed", out)
    return out


def cmd_localize(args, cfg: RunConfig) -> dict:
    m = _resolve_model(args.model)
    spec = IntegrandSpec.parse(args.integrand)
    if args.formula == "dh":
        if spec.kind != "expsym":
            raise InputError("the dh formula integrates expsym only")
        res = dh_localize(m)
        out = {"result": render_exp(res)}
    else:
        inter = localization_sum(m, spec)
        res = bv_localize(m, spec)
        if spec.kind == "sympower":
            poly = polynomiality_check(inter)
            if isinstance(poly, NotPolynomial):
                raise DomainFailure("NotPolynomial", {
                    "witness": render_weight(poly.witness),
                    "remainder": render_rational(poly.remainder),
                })
        out = {"result": render_exp(res), "intermediate_sum": render_exp(inter)}
    if cfg.check:
        bv_exp = bv_localize(m, IntegrandSpec.expsym())
        checks = {"bv_expsym_equals_i_pow_dh": bv_exp == dh_localize(m).scale(PiScalar(I ** m.half_dim))}
        if spec.kind == "sympower":
            checks["degree_zero_vanishes"] = not localization_sum(m, IntegrandSpec.sympower(0)) or m.dim == 0
        out["checks"] = checks
        if not all(checks.values()):
            raise DomainFailure("CheckFailed", out)
    return out


def cmd_dh(args, cfg: RunConfig) -> dict:
    m = _resolve_model(args.model)
    d = dh_density(m)
    out = d.as_dict()
    if args.emit:
        Path(args.emit).write_text(json.dumps(out, indent=2) + "\n")
    if cfg.check:
        ferr = density_fourier_check(d, m, TS)
        lo, hi = float(d.breakpoints[0]), float(d.breakpoints[-1])
        samples = [lo + (hi - lo) * k / 200 for k in range(201)]
        checks = {
            "fourier_error": ferr,
            "fourier_ok": ferr < cfg.tolerances["fourier"],
            "nonnegative": all(d(x) >= -1e-12 for x in samples),
        }
        out["checks"] = checks
        if not (checks["fourier_ok"] and checks["nonnegative"]):
            raise DomainFailure("CheckFailed", out)
    return out


def cmd_character(args, cfg: RunConfig) -> dict:
    d = _dominant(args)
    X = _parse_floats(args.at)
    if len(X) != d.rs.ambient_dim:
        raise InputError(f"--at needs {d.rs.ambient_dim} coordinates for {d.rs.name}")
    if d.rs.family == "A" and abs(sum(X)) > 1e-12:
        raise InputError("type A points must have coordinates summing to zero")
    val = ch.weyl_character_eval(d, X)
    out: dict[str, Any] = {
        "type": d.rs.name,
        "lambda": d.labels(),
        "at": X,
        "value": _complex_out(val),
        "dimension": ch.weyl_dimension(d),
    }
    if cfg.check:
        ref = ch.character_oracle(d, X)
        err = abs(val - ref)
        out["checks"] = {"oracle_value": _complex_out(ref), "error": err,
                         "ok": err < cfg.tolerances["character"]}
        if not out["checks"]["ok"]:
            raise DomainFailure("CheckFailed", out)
    return out


def cmd_kirillov(args, cfg: RunConfig) -> dict:
    d = _dominant(args)
    report = ch.kirillov_identity_check(d)
    out = report.as_dict()
    if cfg.check:
        rng = random.Random(cfg.seed)
        lhs, rhs = ch.kirillov_sides(d)
        worst = 0.0
        for _ in range(20):
            X = ch.random_regular_point(d.rs, rng, scale=3.0, margin=1e-2)
            worst = max(worst, abs(lhs.exp_eval(X) - rhs.exp_eval(X)))
        out["checks"] = {"max_numeric_gap": worst, "ok": worst < cfg.tolerances["kirillov"]}
    if not report.equal or (cfg.check and not out["checks"]["ok"]):
        raise DomainFailure("IdentityFailed", out)
    return out


def cmd_gkm(args, cfg: RunConfig) -> dict:
    g = _resolve_graph(args.graph)
    out: dict[str, Any] = {}
    if args.dims is not None:
        out["dims"] = [graded_dimension(g, k) for k in _parse_range(args.dims)]
    if args.poincare is not None:
        pr = poincare_rank_check(g, args.poincare)
        out["poincare"] = pr.poly
        out["rank"] = pr.rank
        out["formal"] = pr.formal
    if not out:
        out["dims"] = [graded_dimension(g, k) for k in range(5)]
    if cfg.check:
        bad = validate_graph(g)
        out["checks"] = {"violations": [[v, render_weight(a), render_weight(b)] for v, a, b in bad]}
        if bad:
            raise DomainFailure("CheckFailed", out)
    return out


def cmd_selftest(args, cfg: RunConfig) -> dict:
    results = run_all(cfg.seed)
    for r in results:
        print(r.line(), file=sys.stderr)
    out = {"criteria": [r.as_dict() for r in results], "passed": all(r.passed for r in results)}
    if not out["passed"]:
        raise DomainFailure("AcceptanceFailed", out)
    return out


HANDLERS = {
    "pfaffian": cmd_pfaffian,
    "localize": cmd_localize,
    "dh": cmd_dh,
    "character": cmd_character,
    "kirillov": cmd_kirillov,
    "gkm": cmd_gkm,
    "selftest": cmd_selftest,
}


# output --------------------------------------------------------------------

def _flatten(obj, prefix=""):
    if isinstance(obj, dict):
        for k, v in obj.items():
            yield from _flatten(v, f"{prefix}.{k}" if prefix else str(k))
    elif isinstance(obj, list) and all(not isinstance(x, (dict, list)) for x in obj):
        yield prefix, ";".join(str(x) for x in obj)
    elif isinstance(obj, list):
        for i, v in enumerate(obj):
            yield from _flatten(v, f"{prefix}.{i}")
    else:
        yield prefix, obj


def emit(out: dict, fmt: str, stream=None):
    stream = stream or sys.stdout
    if fmt == "json":
        stream.write(json.dumps(out) + "\n")
    elif fmt == "csv":
        import csv

        w = csv.writer(stream, lineterminator="\n")
        w.writerow(["key", "value"])
        for k, v in _flatten(out):
            w.writerow([k, json.dumps(v) if isinstance(v, bool) else v])
    else:
        for k, v in _flatten(out):
            stream.write(f"{k}: {v}\n")


# parser --------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--format", choices=FORMATS, default=None)
    common.add_argument("--check", action="store_true", default=None,
                        help="append oracle comparisons; fail if a tolerance is exceeded")
    common.add_argument("--config", help="JSON RunConfig file (unknown keys rejected)")
    common.add_argument("--seed", type=int, default=None)

    p = argparse.ArgumentParser(prog="equiloc", description="Exact equivariant localization computations.")
    sub = p.add_subparsers(dest="subcommand", required=True)

    sp = sub.add_parser("pfaffian", parents=[common], help="exact Pfaffian of an antisymmetric matrix")
    sp.add_argument("--matrix", help='JSON array, e.g. [["0","-3"],["3","0"]]')
    sp.add_argument("--matrix-file")

    sp = sub.add_parser("localize", parents=[common], help="fixed-point localization sums")
    sp.add_argument("--model", required=True, help="model JSON path or builtin:NAME")
    sp.add_argument("--integrand", default="sympower:1", help="sympower:K or expsym")
    sp.add_argument("--formula", choices=("bv", "dh"), default="bv")

    sp = sub.add_parser("dh", parents=[common], help="Duistermaat-Heckman density (circle actions)")
    sp.add_argument("--model", required=True)
    sp.add_argument("--emit", help="write the density JSON here")

    for name, helptext in (("character", "Weyl character value"), ("kirillov", "Kirillov identity check")):
        sp = sub.add_parser(name, parents=[common], help=helptext)
        sp.add_argument("--type", required=True, choices=tuple("ABCD"))
        sp.add_argument("--rank", required=True, type=int)
        sp.add_argument("--lambda", dest="lam", required=True, help="Dynkin labels, comma separated")
        if name == "character":
            sp.add_argument("--at", required=True, help="ambient coordinates of X, comma separated")

    sp = sub.add_parser("gkm", parents=[common], help="GKM graded dimensions and Poincare series")
    sp.add_argument("--graph", required=True, help="graph JSON path or builtin:NAME")
    sp.add_argument("--dims", help="degree range, e.g. 0..4")
    sp.add_argument("--poincare", type=int, metavar="K", help="run the rank check up to degree K")

    sub.add_parser("selftest", parents=[common], help="run the acceptance suite")
    return p


def _merge_config(args) -> RunConfig:
    cfg = load_config(args.config) if args.config else RunConfig()
    if cfg.subcommand and cfg.subcommand != args.subcommand:
        raise InputError(f"config is for {cfg.subcommand!r}, not {args.subcommand!r}")
    cfg.subcommand = args.subcommand
    for key, attr in (("model", "model"), ("graph", "graph")):
        if key in cfg.inputs and getattr(args, attr, None) is None:
            setattr(args, attr, cfg.inputs[key])
    if args.format is not None:
        cfg.format = args.format
    if args.check:
        cfg.check = True
    if args.seed is not None:
        cfg.seed = args.seed
    cfg.validate()
    return cfg


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    fmt = args.format or "json"
    try:
        thread_cap()
        cfg = _merge_config(args)
        fmt = cfg.format
        out = HANDLERS[args.subcommand](args, cfg)
    except DomainFailure as exc:
        emit({"error": exc.kind, **exc.payload}, fmt)
        return 1
    except (InputError, ModelError, GKMError, NotAntisymmetric, RootSystemError,
            ch.CharacterError, OSError, json.JSONDecodeError, KeyError, ValueError) as exc:
        msg = exc.args[0] if isinstance(exc, KeyError) and exc.args else str(exc)
        sys.stderr.write(json.dumps({"error": type(exc).__name__, "message": str(msg)}) + "\n")
        return 2
    emit(out, fmt)
    return 0


def main():
    sys.exit(run())
