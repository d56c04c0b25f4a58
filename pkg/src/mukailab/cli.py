"""Command line interface.

Exit codes: 0 success, 1 a verification check failed, 2 usage or input error.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from pathlib import Path

from . import cohomology as coh
from .formats import FormatError, lattice_from_json, load_json, parse_mukai_vector, parse_vector, resolve_model
from .isometry import IsometryError, build_named
from .lattice import (
    LatticeError,
    change_of_basis,
    determinant,
    dual_cone_rank2,
    is_primitive,
    orthogonal_complement,
    saturate,
    signature,
    smith_normal_form,
)
from .mukai import MODELS, MukaiError, algebraic_mukai_lattice, named_model
from .pseudoheight import INF, PseudoheightError, connectedness_verdict, pseudoheight, table_from_json
from .scenarios import ScenarioError, dump_reports, list_scenarios, run_all, run_scenario


class UsageError(Exception):
    pass


def _color(enabled: bool):
    def paint(text: str, code: str) -> str:
        return f"\033[{code}m{text}\033[0m" if enabled else text

    return paint


def _fmt_matrix(m) -> str:
    if not m:
        return "  (empty)"
    width = max(len(str(x)) for row in m for x in row) if m and m[0] else 1
    return "\n".join("  [" + " ".join(str(x).rjust(width) for x in row) + "]" for row in m)


# -- verify ------------------------------------------------------------------


def cmd_verify(args, out, paint) -> int:
    if args.what == "list":
        for name in list_scenarios():
            print(name, file=out)
        return 0
    if args.all == bool(args.name):
        raise UsageError("verify scenario: give exactly one of <name> or --all")
    try:
        reports = run_all(parallel=args.parallel) if args.all else [run_scenario(args.name)]
    except ScenarioError as exc:
        raise FormatError(str(exc.args[0]), "scenario") from None
    for rep in reports:
        tag = paint("PASS", "32") if rep.verdict else paint("FAIL", "31")
        print(f"[{tag}] {rep.name}", file=out)
        for c in rep.checks:
            mark = paint("ok  ", "32") if c.passed else paint("FAIL", "31")
            print(f"    {mark} {c.description}: expected {c.expected}, got {c.actual}", file=out)
    passed = sum(r.verdict for r in reports)
    print(f"{passed}/{len(reports)} scenarios passed", file=out)
    if args.json:
        Path(args.json).write_text(dump_reports(reports), encoding="utf-8")
    return 0 if passed == len(reports) else 1


# -- lattice -------------------------------------------------------------------


def _load_lattice(source: str):
    if source in MODELS:
        return named_model(source).picard, {}
    data = load_json(source, "input")
    return lattice_from_json(data, "input"), data


def _generators(lat, args, data) -> list:
    raw = []
    if args.gens:
        raw = [g for g in args.gens.split(";") if g.strip()]
    elif isinstance(data, dict) and "generators" in data:
        raw = data["generators"]
        if not isinstance(raw, list):
            raise FormatError("must be a list of vectors", "generators")
    return [parse_vector(lat, g, f"generators[{i}]") for i, g in enumerate(raw)]


def cmd_lattice(args, out, paint) -> int:
    if args.op == "snf":
        data = load_json(args.input, "input") if args.input not in MODELS else {}
        if isinstance(data, dict) and "matrix" in data:
            mat = data["matrix"]
            if not isinstance(mat, list) or not all(isinstance(r, list) and all(isinstance(x, int) and not isinstance(x, bool) for x in r) for r in mat):
                raise FormatError("must be a list of integer rows", "matrix")
            if mat and len({len(r) for r in mat}) != 1:
                raise FormatError("rows have different lengths", "matrix")
        else:
            mat = _load_lattice(args.input)[0].gram
        u, s, v = smith_normal_form(mat)
        diag = [s[i][i] for i in range(min(len(s), len(s[0]) if s else 0))]
        print("invariant factors: " + (", ".join(str(d) for d in diag) or "(none)"), file=out)
        print("U =\n" + _fmt_matrix(u), file=out)
        print("S =\n" + _fmt_matrix(s), file=out)
        print("V =\n" + _fmt_matrix(v), file=out)
        return 0

    lat, data = _load_lattice(args.input)
    if args.op == "det":
        d = determinant(lat)
        print(d, file=out)
        if args.verbose:
            print(f"|det| = {abs(d)}", file=out)
        return 0
    if args.op == "sig":
        p, n, z = signature(lat)
        print(f"({p}, {n}, {z})", file=out)
        return 0
    if args.op == "basis":
        if not args.basis:
            raise FormatError("required: columns of the new basis, e.g. 'D+E; E'", "--basis")
        cols = [parse_vector(lat, c, f"basis[{i}]") for i, c in enumerate(args.basis.split(";"))]
        new = change_of_basis(lat, [list(r) for r in zip(*(c.coords for c in cols))])
        print("labels: " + ", ".join(new.labels), file=out)
        print(_fmt_matrix(new.gram), file=out)
        return 0
    gens = _generators(lat, args, data)
    if args.op == "dualcone":
        if len(gens) != 2:
            raise FormatError("dualcone needs exactly two generators", "--gens")
        a, b = dual_cone_rank2(lat, gens)
        print(f"{a}; {b}", file=out)
        return 0
    span = lat.span(gens)
    result = orthogonal_complement(span) if args.op == "complement" else saturate(span)
    print(f"rank {len(result.generators)}", file=out)
    for g in result.generators:
        print(f"  {g}    {list(g.coords)}", file=out)
    print("gram:\n" + _fmt_matrix(result.gram()), file=out)
    if args.op == "saturate":
        print(f"index of span in saturation: {span.index_in_saturation()}", file=out)
        print(f"primitive: {'yes' if is_primitive(span) else 'no'}", file=out)
    return 0


# -- isometry ------------------------------------------------------------------


def cmd_isometry(args, out, paint) -> int:
    model = resolve_model(args.model)
    try:
        f = build_named(model, args.word)
    except (FormatError, IsometryError, MukaiError) as exc:
        raise FormatError(str(exc), "--word") from None
    if args.op == "matrix":
        lat = algebraic_mukai_lattice(model)
        print("basis: " + ", ".join(lat.labels), file=out)
        print(_fmt_matrix(f.matrix), file=out)
        print(f"transcendental sign: {f.transcendental_sign:+d}", file=out)
        return 0
    if not args.vector:
        raise FormatError("required for 'apply'", "--vector")
    try:
        v = parse_mukai_vector(model, args.vector)
    except (FormatError, LatticeError, MukaiError) as exc:
        raise FormatError(str(exc), "--vector") from None
    print(f(v), file=out)
    print(f"transcendental sign: {f.transcendental_sign:+d}", file=out)
    return 0


# -- cohomology / pseudoheight ---------------------------------------------------


def cmd_cohomology(args, out, paint) -> int:
    try:
        a = coh.parse_coefficients(args.coeff)
    except coh.CohomologyError as exc:
        raise FormatError(str(exc), "--coeff") from None
    try:
        h = coh.cyclic_cohomology(args.m, args.n, a)
    except coh.CohomologyError as exc:
        raise FormatError(str(exc), "--m" if args.m < 2 else "--n") from None
    print(h, file=out)
    return 0


def cmd_pseudoheight(args, out, paint) -> int:
    t = table_from_json(load_json(args.input, "input"))
    if args.sheaf_mode:
        t.validate_sheaf_mode()
    ph = pseudoheight(t)
    v = connectedness_verdict(ph, t.rel_dim, t.n)
    report = {
        "pseudoheight": "inf" if ph is INF else ph,
        "iso_range_max": "inf" if v.iso_range_max is INF else v.iso_range_max,
        "injection_at": "inf" if v.injection_at is INF else v.injection_at,
        "connected_by_criterion": v.connected_by_criterion,
    }
    if args.json_out:
        print(json.dumps(report), file=out)
    else:
        print(f"pseudoheight: {report['pseudoheight']}", file=out)
        print(f"HH^i restriction is an isomorphism for i <= {report['iso_range_max']}", file=out)
        print(f"HH^i restriction is injective for i = {report['injection_at']}", file=out)
        print(f"connected by dim(X/S) >= n + 1: {'yes' if v.connected_by_criterion else 'no'}", file=out)
    return 0


# -- parser ------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="mukailab", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    v = sub.add_parser("verify", help="run the certification scenarios")
    v.add_argument("what", choices=["scenario", "list"])
    v.add_argument("name", nargs="?")
    v.add_argument("--all", action="store_true")
    v.add_argument("--json", metavar="PATH", help="write reports as a JSON array")
    v.add_argument("--parallel", action="store_true")
    v.set_defaults(func=cmd_verify)

    lt = sub.add_parser("lattice", help="exact lattice invariants")
    lt.add_argument("op", choices=["det", "sig", "snf", "complement", "saturate", "dualcone", "basis"])
    lt.add_argument("--input", required=True, help="lattice JSON file or bundled model name")
    lt.add_argument("--gens", help="';'-separated vectors: class expressions or [..] arrays")
    lt.add_argument("--basis", help="';'-separated new basis vectors (for 'basis')")
    lt.add_argument("-v", "--verbose", action="store_true")
    lt.set_defaults(func=cmd_lattice)

    iso = sub.add_parser("isometry", help="cohomological action of a word of autoequivalences")
    iso.add_argument("op", choices=["apply", "matrix"])
    iso.add_argument("--model", required=True, help="bundled model name or model JSON file")
    iso.add_argument("--word", required=True, help="tokens applied right to left: shift, tw:O, tw:U, tw:(r,c1,s), tw:O(c), lb:c")
    iso.add_argument("--vector", help="Mukai vector, e.g. '(0,0,1)' or '(2,-D-E,3)'")
    iso.set_defaults(func=cmd_isometry)

    c = sub.add_parser("cohomology", help="H^n(Z/m, A) for the trivial action")
    c.add_argument("--m", type=int, required=True)
    c.add_argument("--n", type=int, required=True)
    c.add_argument("--coeff", required=True, help="e.g. 'Cx+Z', 'Z^2', 'Z/4 + Z'")
    c.set_defaults(func=cmd_cohomology)

    ph = sub.add_parser("pseudoheight", help="pseudoheight and connectedness verdict")
    ph.add_argument("--input", required=True)
    ph.add_argument("--sheaf-mode", action="store_true", help="enforce e_plain >= 0 and e_serre >= rel_dim")
    ph.add_argument("--json", dest="json_out", action="store_true")
    ph.set_defaults(func=cmd_pseudoheight)
    return p


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    use_color = hasattr(out, "isatty") and out.isatty() and "NO_COLOR" not in os.environ
    try:
        return args.func(args, out, _color(use_color))
    except (UsageError, FormatError, LatticeError, MukaiError, IsometryError, PseudoheightError) as exc:
        print(f"mukailab: error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
