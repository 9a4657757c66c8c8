"""Command line interface: ``hermsym COMMAND MODEL [options]``.

Exit codes: 0 success, 1 a verification check failed, 2 usage error.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import platform
import sys
from fractions import Fraction
from typing import Sequence

import numpy as np
import scipy

from . import __version__
from .branching import decompose
from .checks import Check
from .jordan import JordanModel, parse_model
from .lie import Weight
from .moment import PairPoint, chart_point, moment_general, moment_polytope, moment_to_weight
from .okounkov import OkounkovError, okounkov_pipeline, resolve_convention
from .suites import MAX_DIM, SUITES, k_max

WEIGHT_BASIS = "epsilon coordinates (type A projected to trace zero)"
FORMATS = ("json", "csv", "table")


class UsageError(Exception):
    pass


# -- serialization helpers -------------------------------------------------------
def frac(v) -> str:
    v = Fraction(v)
    return str(v.numerator) if v.denominator == 1 else f"{v.numerator}/{v.denominator}"


def weight_json(w: Weight) -> list[str]:
    return [frac(c) for c in w.coords]


def ints(v) -> list[int]:
    return [int(c) for c in v]


def cplx(v: complex) -> list[float]:
    return [float(np.real(v)), float(np.imag(v))]


def parse_vector(text: str, n: int) -> np.ndarray:
    try:
        vals = [complex(t.strip().replace(" ", "")) for t in text.split(",")]
    except ValueError as err:
        raise UsageError(f"cannot parse vector {text!r}: {err}") from None
    if len(vals) != n:
        raise UsageError(f"expected {n} coordinates, got {len(vals)}")
    return np.array(vals, dtype=complex)


# -- commands ----------------------------------------------------------------------
class Result:
    def __init__(self, data: dict, header: Sequence[str], rows: list[list], checks: list[Check] | None = None,
                 meta: dict | None = None):
        self.data = data
        self.header = list(header)
        self.rows = rows
        self.checks = checks or []
        self.meta = meta or {}


def cmd_describe(model: JordanModel, args) -> Result:
    par = model.parabolic()
    frame = [ints(np.real(e)) for e in model.frame()]
    verts = [weight_json(w) for w in par.lambda_vertices(1)]
    data = {
        "marking": par.describe(),
        "rank": model.rank,
        "dim": model.n,
        "structure_constant": model.structure_constant,
        "frame": frame,
        "gammas": [ints(g) for g in par.gammas],
        "lambda": weight_json(par.lam),
        "polytope_vertices": verts,
        "k_max": k_max(model),
    }
    rows = [[k, json.dumps(v)] for k, v in data.items()]
    return Result(data, ["field", "value"], rows)


def cmd_decompose(model: JordanModel, args) -> Result:
    k = args.k or 1
    table = decompose(model.parabolic(), k)
    entries = [{"m": list(e.m), "weight": weight_json(e.weight), "dimension": e.dimension}
               for e in table.entries]
    data = {"k": k, "rows": entries, "total": table.total, "expected_total": table.expected_total,
            "ok": table.ok}
    rows = [[" ".join(map(str, e.m)), " ".join(weight_json(e.weight)), e.dimension] for e in table.entries]
    check = Check("sum of K-type dimensions = dim H^0(L^k)", table.ok,
                  f"{table.total} vs {table.expected_total}")
    return Result(data, ["m", "weight", "dimension"], rows, [check])


def cmd_polytope(model: JordanModel, args) -> Result:
    k = args.k or 1
    poly = moment_polytope(model.parabolic(), k)
    verts = [weight_json(w) for w in poly.vertices]
    data = {"k": k, "vertices": verts, "inequalities": poly.inequalities}
    rows = [[j] + v for j, v in enumerate(verts)]
    header = ["vertex"] + [f"c{i + 1}" for i in range(len(verts[0]))]
    return Result(data, header, rows)


def cmd_okounkov(model: JordanModel, args) -> Result:
    top = args.k or 2
    try:
        res = okounkov_pipeline(model, levels=tuple(range(2, top + 1)), strict=False)
    except OkounkovError as err:
        return Result({"error": str(err)}, ["error"], [[str(err)]], [Check("okounkov pipeline", False, str(err))],
                      {"convention": None})
    data = {
        "convention": res.convention,
        "labels": [list(m) for m in res.labels],
        "generators": [[g, list(v)] for g, v in res.generators],
        "lambda_images": [weight_json(w) for w in res.lambda_images],
        "body_vertices": [list(v) for v in res.body_vertices],
    }
    rows = [[j] + list(v) for j, v in enumerate(res.body_vertices)]
    header = ["vertex"] + [f"v{i + 1}" for i in range(model.n)]
    return Result(data, header, rows, list(res.checks), {"convention": res.convention})


def cmd_moment_eval(model: JordanModel, args) -> Result:
    rng = np.random.default_rng(args.seed)
    if args.x is None:
        x = rng.normal(size=model.n) + 1j * rng.normal(size=model.n)
    else:
        x = parse_vector(args.x, model.n)
    a = np.zeros(model.n, complex) if args.a is None else parse_vector(args.a, model.n)
    point = chart_point(model, x) if args.a is None else PairPoint(x, a)
    value = moment_general(model, point)
    op = value.operator
    data = {"x": [cplx(v) for v in x], "a": [cplx(v) for v in a],
            "operator": [[cplx(v) for v in row] for row in op],
            "anti_hermitian_defect": value.anti_hermitian_defect}
    rows = []
    checks = [Check("moment value is anti-Hermitian", value.anti_hermitian_defect <= args.tolerance,
                    f"{value.anti_hermitian_defect:.3e}")]
    if value.frame is not None:
        w = moment_to_weight(value, model.parabolic())
        data.update({"nu": list(w.nu), "weight": list(w.coords), "in_polytope": w.in_polytope})
        rows = [[j + 1, nu] for j, nu in enumerate(w.nu)]
        checks.append(Check("weight lies in the moment polytope", w.in_polytope, ""))
    return Result(data, ["j", "nu"], rows, checks)


def cmd_verify(model: JordanModel, args) -> Result:
    names = args.suites or list(SUITES)
    rng = np.random.default_rng(args.seed)
    checks = []
    summary = []
    for name in names:
        fn = SUITES[name]
        kwargs = {}
        if name in ("peirce", "moment") and args.tolerance_set:
            kwargs["tolerance"] = args.tolerance
        if name == "branching" and args.k:
            kwargs["k_top"] = args.k
        found = fn(model, rng, **kwargs)
        for c in found:
            checks.append(Check(f"{name}: {c.name}", c.ok, c.detail))
        summary.append({"suite": name, "passed": sum(c.ok for c in found), "total": len(found)})
    rows = [[s["suite"], s["passed"], s["total"]] for s in summary]
    meta = {"convention": resolve_convention(model)} if "okounkov" in names else {}
    return Result({"suites": summary}, ["suite", "passed", "total"], rows, checks, meta)


COMMANDS = {
    "describe": cmd_describe,
    "verify": cmd_verify,
    "decompose": cmd_decompose,
    "polytope": cmd_polytope,
    "okounkov": cmd_okounkov,
    "moment-eval": cmd_moment_eval,
}


# -- output -------------------------------------------------------------------------
def render(result: Result, meta: dict, fmt: str) -> str:
    if fmt == "json":
        doc = {"meta": meta, "data": result.data, "checks": [c.as_dict() for c in result.checks]}
        return json.dumps(doc, indent=2) + "\n"
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf, lineterminator="\n")
        writer.writerow(result.header)
        writer.writerows(result.rows)
        return buf.getvalue()
    cells = [result.header] + [[str(v) for v in row] for row in result.rows]
    widths = [max(len(str(r[i])) for r in cells) for i in range(len(result.header))]
    lines = ["  ".join(str(v).ljust(w) for v, w in zip(r, widths)).rstrip() for r in cells]
    lines += [f"[{c.status}] {c.name}: {c.detail}" for c in result.checks]
    return "\n".join(lines) + "\n"


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="hermsym", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"hermsym {__version__}")
    parser.add_argument("command", choices=list(COMMANDS))
    parser.add_argument("model", help="rect:p,q or spin:n")
    parser.add_argument("--k", type=int, default=None, help="level (tensor power of the line bundle)")
    parser.add_argument("--format", choices=FORMATS, default="json")
    parser.add_argument("--seed", type=int, default=0)
    parser.add_argument("--suite", action="append", default=None,
                        help="verification suite (repeatable or comma separated): " + ", ".join(SUITES))
    parser.add_argument("--tolerance", type=float, default=None, help="numeric tolerance override")
    parser.add_argument("--force", action="store_true", help="bypass the size and k_max guards")
    parser.add_argument("--x", default=None, help="moment-eval: comma separated complex coordinates")
    parser.add_argument("--a", default=None, help="moment-eval: second component of the pair (x, a)")
    parser.add_argument("--output", "-o", default=None, help="write to a file instead of stdout")
    return parser


def _suites(raw: list[str] | None) -> list[str] | None:
    if not raw:
        return None
    names = [s.strip() for item in raw for s in item.split(",") if s.strip()]
    unknown = [s for s in names if s not in SUITES]
    if unknown:
        raise UsageError(f"unknown suite {unknown[0]!r}; choose from {', '.join(SUITES)}")
    return names


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        model = parse_model(args.model)
        args.suites = _suites(args.suite)
        if args.k is not None and args.k < 1:
            raise UsageError("--k must be positive")
        if not args.force and model.n > MAX_DIM:
            raise UsageError(f"{model.spec} has dim V = {model.n} > {MAX_DIM}; rerun with --force")
        if not args.force and args.k is not None and args.k > k_max(model):
            raise UsageError(f"k = {args.k} exceeds k_max = {k_max(model)} for {model.spec}; rerun with --force")
    except (UsageError, ValueError) as err:
        print(f"hermsym: error: {err}", file=sys.stderr)
        return 2
    args.tolerance_set = args.tolerance is not None
    if args.tolerance is None:
        args.tolerance = 1e-9
    try:
        result = COMMANDS[args.command](model, args)
    except UsageError as err:
        print(f"hermsym: error: {err}", file=sys.stderr)
        return 2
    # only commands that build sections resolve the raising convention
    convention = result.meta.get("convention")
    meta = {
        "model": model.spec,
        "command": args.command,
        "k": args.k,
        "seed": args.seed,
        "convention": convention,
        "weight_basis": WEIGHT_BASIS,
        "versions": {"hermsym": __version__, "numpy": np.__version__, "scipy": scipy.__version__,
                     "python": platform.python_version()},
    }
    text = render(result, meta, args.format)
    if args.output:
        with open(args.output, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    failed = [c for c in result.checks if not c.ok]
    if failed:
        print(f"hermsym: check failed: {failed[0].name} ({failed[0].detail})", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
