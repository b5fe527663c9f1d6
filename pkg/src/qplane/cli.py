"""Command-line front end: one JSON (or CSV) run record per invocation.

Exit status is 0 on success, 1 when an audit reports violations and 2 on
usage or input errors.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys
import time
from pathlib import Path

from . import census, flats, motions, simplex
from .errors import QPlaneError
from .field import GF, QuadExtElement, quad_ext
from .plane import SPEC_GRAMMAR, generate

FORMAT_VERSION = census.FORMAT_VERSION

ACTIONS = {
    "field": ["info", "legendre", "sqrt", "sos", "quadext"],
    "so2": ["census", "phi"],
    "screw": ["lines", "bijection", "uniqueness"],
    "flats": ["count", "enumerate"],
    "incidence": ["audit"],
    "triangle": ["exists", "extend"],
    "simplex": ["gram", "equilateral"],
    "census": ["triangles", "translations", "pairs"],
    "audit": ["elekes-sharir", "pairs"],
    "table": ["equilateral"],
}


class UsageError(QPlaneError):
    pass


def _ints(text: str, flag: str) -> list[int]:
    try:
        return [int(t) for t in text.replace(";", ",").split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"{flag} expects comma-separated integers, got {text!r}") from None


def _need(args, name: str):
    val = getattr(args, name)
    if val is None:
        raise UsageError(f"--{name.replace('_', '-')} is required for {args.command} {args.action}")
    return val


def _point_set(args, d: int = 2):
    return generate(args.set or "all", _need(args, "q"), d, args.seed)


def _length_table(args) -> list[list[int]]:
    if args.lengths_file:
        data = json.loads(Path(args.lengths_file).read_text())
    elif args.lengths:
        data = [_ints(row, "--lengths") for row in args.lengths.split(";")]
    else:
        raise UsageError("--lengths or --lengths-file is required")
    if not isinstance(data, list) or not all(isinstance(r, list) for r in data):
        raise UsageError("length table must be a nested list of integers")
    return [[int(v) for v in r] for r in data]


def cmd_field(args) -> tuple[dict, list]:
    F = GF(_need(args, "q"))
    if args.action == "info":
        p = F.p
        sq = sorted({a * a % p for a in range(1, p)})
        return {
            "p": p,
            "nonzero_squares": len(sq),
            "nonresidue": F.nonresidue,
            "minus_one_square": F.legendre(p - 1) == 1,
            "three_square": F.legendre(3) >= 0,
        }, []
    a = _need(args, "ell") % F.p
    if args.action == "legendre":
        return {"a": a, "legendre": F.legendre(a)}, []
    if args.action == "sqrt":
        if F.legendre(a) < 0:
            return {"a": a, "roots": None, "reason": f"{a} nonsquare mod {F.p}"}, []
        return {"a": a, "roots": list(F.sqrt(a))}, []
    if args.action == "sos":
        return {"c": a, "xy": list(F.sum_of_two_squares(a))}, []
    z = quad_ext(F(a)) if a else QuadExtElement(0, 0, F.p)
    return {"a": a, "ns": F.nonresidue, "root": [z.a0, z.a1], "in_base_field": z.in_base_field}, []


def cmd_so2(args):
    q = _need(args, "q")
    if args.action == "census":
        order = len(motions.enumerate_so2(q))
        expected = q + 1 if q % 4 == 3 else q - 1
        return {"order": order, "expected": expected}, [] if order == expected else ["order mismatch"]
    rots = motions.enumerate_so2(q)
    image = {motions.phi(r, q) for r in range(q)}
    ident = motions.Rotation.identity(q)
    viol = []
    if len(image) != q:
        viol.append("phi is not injective")
    if image | {ident} != set(rots) or ident in image:
        viol.append("phi image plus identity is not SO(2,q)")
    return {"q": q, "image_size": len(image), "so2_order": len(rots)}, viol


def cmd_screw(args):
    q = _need(args, "q")
    if args.action == "lines":
        rep = motions.line_family_audit(q)
    elif args.action == "bijection":
        rep = motions.screw_bijection_audit(q)
    else:
        rep = motions.segment_uniqueness_audit(q)
    rep.pop("elapsed", None)
    return rep, rep.pop("violations")


def cmd_flats(args):
    q, d, k = _need(args, "q"), _need(args, "d"), _need(args, "k")
    if args.action == "count":
        alpha = flats.alpha_formula(d, k, q)
        tp, tf = flats.through_counts(d, k, q) if k < d else (None, None)
        enumerated = len(flats.enumerate_flats(q, d, k))
        viol = [] if enumerated == alpha else ["enumeration disagrees with alpha"]
        return {
            "alpha": alpha,
            "enumerated": enumerated,
            "flats_through_point": tp,
            "superflats_through_flat": tf,
        }, viol
    return {"rows": [f.to_row() for f in flats.enumerate_flats(q, d, k)]}, []


def cmd_incidence(args):
    rep = flats.incidence_audit(
        _need(args, "q"), args.d or 3, _need(args, "k"), trials=args.n or 100, seed=args.seed
    )
    return rep, rep["violations"]


def cmd_triangle(args):
    q = _need(args, "q")
    ls = _ints(_need(args, "lengths"), "--lengths")
    if args.action == "exists":
        if len(ls) != 3:
            raise UsageError("--lengths needs three values for triangle exists")
        return simplex.triangle_exists(simplex.LengthTriple(*ls, q)).to_dict(), []
    if len(ls) != 6:
        raise UsageError("triangle extend takes --lengths x1,y1,x2,y2,l2,l3")
    pts = simplex.extend_segment(tuple(ls[0:2]), tuple(ls[2:4]), ls[4], ls[5], q)
    return {"points": [list(p) for p in pts], "mu": len(pts)}, []


def cmd_simplex(args):
    q = _need(args, "q")
    if args.action == "gram":
        B = simplex.length_matrix(_length_table(args), q)
        w = simplex.gram_decompose(B)
        out = w.to_dict()
        out["points"] = [list(p) for p in w.points()]
        return out, []
    rep = simplex.equilateral_simplex(_need(args, "d"), _need(args, "ell"), q)
    return rep, rep.pop("violations")


def cmd_census(args):
    if args.action == "triangles":
        rep = census.congruence_census(_point_set(args), args.include_degenerate)
        return rep.to_dict(), []
    if args.action == "translations":
        rep = census.translation_coverage(_point_set(args, args.d or 2), _need(args, "n"))
        return rep, [] if rep["size_bound_holds"] else ["translation-class inequality failed"]
    rep = census.pair_count(_point_set(args), _need(args, "ell")).to_dict()
    return rep, [] if rep["within_bound"] else ["residual exceeds q^(1/2)|E|"]


def cmd_audit(args):
    if args.action == "pairs":
        return cmd_census(args)
    rep = census.elekes_sharir_audit(_point_set(args), _need(args, "ell"))
    out = rep.to_dict()
    return out, out.pop("violations")


def cmd_table(args):
    rows = simplex.equilateral_triangle_table(_need(args, "q"))
    viol = [
        f"p={r['p']}: rule and field disagree"
        for r in rows
        if not r["exists_mod12_rule"] == r["exists_legendre"] == r["exists_Fp"] or not r["exists_Fp2"]
    ]
    return {"rows": rows}, viol


COMMANDS = {
    "field": cmd_field,
    "so2": cmd_so2,
    "screw": cmd_screw,
    "flats": cmd_flats,
    "incidence": cmd_incidence,
    "triangle": cmd_triangle,
    "simplex": cmd_simplex,
    "census": cmd_census,
    "audit": cmd_audit,
    "table": cmd_table,
}


def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="qplane", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True)
    for name, actions in ACTIONS.items():
        sp = sub.add_parser(name)
        sp.add_argument("action", choices=actions)
        sp.add_argument("--q", type=int, help="odd prime modulus (p_max for 'table')")
        sp.add_argument("--d", type=int, help="ambient dimension")
        sp.add_argument("--k", type=int, help="flat dimension")
        sp.add_argument("--n", type=int, help="configuration size, or trial count for incidence")
        sp.add_argument("--set", help=f"point-set spec: {SPEC_GRAMMAR}")
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--ell", type=int, help="length, or field element for 'field'")
        sp.add_argument("--lengths", help="comma list; rows separated by ';' for simplex gram")
        sp.add_argument("--lengths-file", help="JSON nested array length table")
        sp.add_argument("--include-degenerate", action="store_true")
        sp.add_argument("--format", choices=["json", "csv"], default="json")
        sp.add_argument("--out", help="write the record here instead of stdout")
    return ap


def _params(args) -> dict:
    return {k: v for k, v in sorted(vars(args).items()) if k not in ("out", "format")}


def _to_csv(record: dict) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    result = record["result"]
    w.writerow(["field", "value"])
    for key in ("command", "format_version", "seed"):
        w.writerow([key, record[key]])
    for key, val in result.items():
        w.writerow([key, json.dumps(val, sort_keys=True) if isinstance(val, (dict, list)) else val])
    w.writerow(["violations", len(record["violations"])])
    return buf.getvalue()


def _clean(obj):
    if isinstance(obj, float) and not math.isfinite(obj):
        return str(obj)
    if isinstance(obj, dict):
        return {k: _clean(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_clean(v) for v in obj]
    return obj


def _execute(args) -> tuple[dict, int]:
    start = time.perf_counter()
    result, violations = COMMANDS[args.command](args)
    record = {
        "format_version": FORMAT_VERSION,
        "command": f"{args.command} {args.action}",
        "parameters": _params(args),
        "seed": args.seed,
        "result": _clean(result),
        "violations": _clean(list(violations)),
        "elapsed_ms": round((time.perf_counter() - start) * 1000, 3),
    }
    return record, (1 if violations else 0)


def run(argv: list[str] | None = None) -> tuple[dict, int]:
    """Parse ``argv``, run the subcommand and return (record, exit code)."""
    return _execute(build_parser().parse_args(argv))


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    if args.format == "csv" and args.command != "census":
        print("qplane: error: --format csv is available for census tables only", file=sys.stderr)
        return 2
    try:
        record, code = _execute(args)
    except QPlaneError as exc:
        print(f"qplane: error: {exc}", file=sys.stderr)
        print(f"set-spec grammar: {SPEC_GRAMMAR}", file=sys.stderr)
        return 2
    except (OSError, json.JSONDecodeError) as exc:
        print(f"qplane: error: {exc}", file=sys.stderr)
        return 2
    if args.format == "csv":
        text = _to_csv(record)
    else:
        text = json.dumps(record, sort_keys=True, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text)
    else:
        sys.stdout.write(text)
    return code


if __name__ == "__main__":
    sys.exit(main())
