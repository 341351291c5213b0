"""Command-line front end.

Every command builds one report dictionary. ``--json`` prints it as JSON
(schema 1, sorted keys); otherwise the same dictionary is rendered as an
aligned text table. Exit codes: 0 success, 1 failed verification, 2 bad
input.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from fmpartners import __version__
from fmpartners.autoeq import (
    CONVENTION,
    IntMatrix2,
    gamma0_member,
    lift_residue,
    subgroup_member,
)
from fmpartners.fm_core import (
    SMALL_M,
    classify_case,
    compute_H_bruteforce,
    fm_partners,
    unit_multipliers,
)
from fmpartners.lattice import CurveClass, TorsionPoint, unit_group
from fmpartners.modmath import (
    euler_phi,
    factorize,
    make_subgroup,
    roots_n2_plus_1,
    roots_n2_plus_n_plus_1,
    subgroup_closure,
)
from fmpartners.suites import (
    LATTICE_MAX_M,
    cardinality_suite,
    coherence_suite,
    lattice_transfer_suite,
    small_m_suite,
    trichotomy_suite,
)

SCHEMA = 1
EXIT_OK, EXIT_FAILED, EXIT_INPUT = 0, 1, 2


class InputError(Exception):
    pass


# -- parsing -----------------------------------------------------------------


def _ints(text: str, count: int | None, what: str) -> list[int]:
    try:
        vals = [int(t) for t in text.split(",")]
    except ValueError:
        raise InputError(f"{what} must be comma-separated integers, got {text!r}") from None
    if count is not None and len(vals) != count:
        raise InputError(f"{what} needs {count} integers, got {len(vals)}")
    return vals


def _modulus(m: int) -> int:
    if m < 1:
        raise InputError(f"--m must be >= 1, got {m}")
    return m


def _point(c: CurveClass, m: int, text: str) -> TorsionPoint:
    x, y = _ints(text, 2, "--point")
    if not (0 <= x < m and 0 <= y < m):
        raise InputError(f"point coordinates must lie in [0, {m}), got ({x}, {y})")
    if math.gcd(x, y, m) != 1:
        order = m // math.gcd(x, y, m)
        raise InputError(f"point ({x}, {y}) has order {order}, not m = {m}")
    return TorsionPoint(c, m, x, y)


def _input_echo(c: CurveClass, a: TorsionPoint) -> dict:
    return {"class": c.value, "m": a.m, "point": [a.x, a.y]}


# -- commands ----------------------------------------------------------------


def cmd_partners(args) -> tuple[dict, int]:
    c = CurveClass(args.curve)
    m = _modulus(args.m)
    a = _point(c, m, args.point)
    fm = fm_partners(c, a)
    body = fm.as_dict()
    return {
        "input": _input_echo(c, a),
        "H": body["H"],
        "phi": body["phi"],
        "cardinality": body["cardinality"],
        "small_m_guard": body["small_m_guard"],
        "orbits": body["orbits"],
    }, EXIT_OK


def cmd_classify(args) -> tuple[dict, int]:
    c = CurveClass(args.curve)
    m = _modulus(args.m)
    a = _point(c, m, args.point)
    H = compute_H_bruteforce(c, a)
    out = {"input": _input_echo(c, a), "H_bruteforce": list(H.elements)}
    if m <= 3:
        out["status"] = "lemma not applicable (m <= 3)"
        return out, EXIT_OK
    rep = classify_case(c, a)
    out.update(rep.as_dict())
    out["agrees"] = rep.H == H
    out["status"] = "ok" if out["agrees"] else "brute-force H differs from the case prediction"
    return out, EXIT_OK if out["agrees"] else EXIT_FAILED


def cmd_hgroup(args) -> tuple[dict, int]:
    c = CurveClass(args.curve)
    m = _modulus(args.m)
    a = _point(c, m, args.point)
    mult = unit_multipliers(unit_group(c), a)
    H = compute_H_bruteforce(c, a)
    units_table = [
        {"unit": u.label, "matrix": [list(r) for r in u.matrix], "multiplier": mult.get(u.label)}
        for u in unit_group(c)
    ]
    return {
        "input": _input_echo(c, a),
        "H": list(H.elements),
        "order": len(H),
        "units": units_table,
    }, EXIT_OK


def cmd_roots(args) -> tuple[dict, int]:
    m = _modulus(args.m)
    return {
        "input": {"m": m, "method": args.method},
        "factorization": [[p, e] for p, e in factorize(m)],
        "phi": euler_phi(m),
        "roots_n2_plus_1": roots_n2_plus_1(m, args.method),
        "roots_n2_plus_n_plus_1": roots_n2_plus_n_plus_1(m, args.method),
    }, EXIT_OK


def _classes(text: str | None) -> list[CurveClass]:
    if not text:
        return list(CurveClass)
    try:
        chosen = {CurveClass(t.strip()) for t in text.split(",")}
    except ValueError:
        raise InputError(f"--classes takes generic, square, hexagonal; got {text!r}") from None
    return [c for c in CurveClass if c in chosen]


def cmd_verify(args) -> tuple[dict, int]:
    classes = _classes(args.classes)
    lo, hi = args.min_m, args.max_m
    if lo < 1 or hi < lo:
        raise InputError(f"need 1 <= --min-m <= --max-m, got {lo}, {hi}")
    ms = range(lo, hi + 1)
    suites = [
        # m <= 4 is settled by the small-m guard; the case analysis starts above it
        trichotomy_suite(classes, range(max(lo, SMALL_M + 1), hi + 1)),
        cardinality_suite(classes, ms),
        small_m_suite(classes, hi),
        lattice_transfer_suite(classes, range(lo, min(hi, args.lattice_max_m) + 1)),
        coherence_suite(classes, ms, args.lattice_max_m),
    ]
    passed = all(s.passed for s in suites)
    return {
        "input": {
            "classes": [c.value for c in classes],
            "min_m": lo,
            "max_m": hi,
            "lattice_max_m": args.lattice_max_m,
        },
        "suites": [s.as_dict() for s in suites],
        "passed": passed,
    }, EXIT_OK if passed else EXIT_FAILED


def _subgroup_from_args(args):
    if (args.h is None) == (args.from_point is None):
        raise InputError("give exactly one of --h and --from-point")
    if args.from_point is not None:
        parts = args.from_point.split(",")
        if len(parts) != 4:
            raise InputError("--from-point takes class,m,x,y")
        try:
            c = CurveClass(parts[0])
        except ValueError:
            raise InputError(f"unknown class {parts[0]!r}") from None
        m = _modulus(_ints(parts[1], 1, "--from-point m")[0])
        if args.m is not None and args.m != m:
            raise InputError(f"--m {args.m} disagrees with the point's m = {m}")
        a = _point(c, m, ",".join(parts[2:]))
        return m, compute_H_bruteforce(c, a), {"from_point": _input_echo(c, a)}
    if args.m is None:
        raise InputError("--h needs --m")
    m = _modulus(args.m)
    seed = _ints(args.h, None, "--h")
    try:
        H = subgroup_closure(m, seed)
    except ValueError as exc:
        raise InputError(str(exc)) from None
    return m, make_subgroup(m, H.elements), {"h": sorted(s % m for s in seed)}


def cmd_autoeq(args) -> tuple[dict, int]:
    m, H, source = _subgroup_from_args(args)
    if args.matrix is None and args.lift is None:
        raise InputError("give --matrix, --lift, or both")
    out = {"input": {"m": m, **source}, "H": list(H.elements), "convention": CONVENTION}
    if args.matrix is not None:
        M = IntMatrix2(*_ints(args.matrix, 4, "--matrix"))
        out["matrix"] = M.as_list()
        out["det"] = M.det
        out["gamma0_member"] = gamma0_member(M, m)
        out["residue"] = M.residue(m) if out["gamma0_member"] else None
        out["member"] = subgroup_member(M, m, H)
    if args.lift is not None:
        if math.gcd(args.lift, m) != 1:
            raise InputError(f"residue {args.lift} is not coprime to {m}")
        L = lift_residue(args.lift, m)
        out["lift"] = {"residue": args.lift % m, "matrix": L.as_list(), "member": subgroup_member(L, m, H)}
    return out, EXIT_OK


# -- output ------------------------------------------------------------------


def to_json(report: dict) -> str:
    return json.dumps(report, sort_keys=True, ensure_ascii=False, indent=2)


def _scalar(v) -> str:
    if v is None:
        return "-"
    if isinstance(v, bool):
        return "yes" if v else "no"
    if isinstance(v, list):
        return "[" + ", ".join(_scalar(x) for x in v) + "]"
    if isinstance(v, dict):
        return ", ".join(f"{k}={_scalar(v[k])}" for k in sorted(v))
    return str(v)


def to_table(report: dict, indent: str = "") -> str:
    """Render every field of the report; nested records become indented blocks."""
    lines = []
    width = max((len(k) for k in report), default=0)
    for key in sorted(report):
        val = report[key]
        if isinstance(val, dict) and any(isinstance(v, (dict, list)) for v in val.values()):
            lines.append(f"{indent}{key}:")
            lines.append(to_table(val, indent + "  "))
        elif isinstance(val, list) and val and all(isinstance(r, dict) for r in val):
            cols = sorted({k for r in val for k in r})
            rows = [[_scalar(r.get(k)) for k in cols] for r in val]
            widths = [max(len(h), *(len(r[i]) for r in rows)) for i, h in enumerate(cols)]
            lines.append(f"{indent}{key}:")
            lines.append(indent + "  " + "  ".join(h.ljust(w) for h, w in zip(cols, widths)).rstrip())
            for r in rows:
                lines.append(indent + "  " + "  ".join(s.ljust(w) for s, w in zip(r, widths)).rstrip())
        else:
            lines.append(f"{indent}{key.ljust(width)}  {_scalar(val)}")
    return "\n".join(lines)


# -- argument parser ---------------------------------------------------------


def _add_point_args(p):
    p.add_argument("--class", dest="curve", required=True, choices=[c.value for c in CurveClass])
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--point", required=True, help="x,y with the point (x + y*tau)/m")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="fmpartners",
        description="Fourier-Mukai partners of elliptic ruled surfaces P(O_E + L).",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    commands = {
        "partners": (cmd_partners, "partner orbits and |FM| = phi(m)/|H|"),
        "classify": (cmd_classify, "which of the three cases holds for the point"),
        "hgroup": (cmd_hgroup, "the multiplier group H with one witness per unit"),
        "roots": (cmd_roots, "roots of n^2 + 1 and n^2 + n + 1 mod m"),
        "verify": (cmd_verify, "exhaustive verification suites"),
        "autoeq": (cmd_autoeq, "membership in {M in Gamma_0(m) : b mod m in H}"),
    }
    for name, (func, help_text) in commands.items():
        p = sub.add_parser(name, help=help_text, description=help_text)
        p.set_defaults(func=func)
        p.add_argument("--json", action="store_true", help="print the report as JSON")
        if name in ("partners", "classify", "hgroup"):
            _add_point_args(p)
        elif name == "roots":
            p.add_argument("--m", type=int, required=True)
            p.add_argument("--method", choices=["auto", "scan", "lift"], default="auto")
        elif name == "verify":
            p.add_argument("--min-m", type=int, default=SMALL_M)
            p.add_argument("--max-m", type=int, default=100)
            p.add_argument("--lattice-max-m", type=int, default=LATTICE_MAX_M)
            p.add_argument("--classes", help="comma-separated subset of the classes")
        elif name == "autoeq":
            p.add_argument("--m", type=int)
            p.add_argument("--h", help="residues generating H, e.g. 1,4")
            p.add_argument("--from-point", help="class,m,x,y: take H of that point")
            p.add_argument("--matrix", help="c,a,d,b for the matrix (c a; d b)")
            p.add_argument("--lift", type=int, help="also lift this residue to Gamma_0(m)")
    return parser


def run(argv: list[str] | None = None) -> tuple[str, int]:
    """Parse, execute, and return (output text, exit code). Argparse errors exit 2."""
    args = build_parser().parse_args(argv)
    try:
        body, code = args.func(args)
    except InputError as exc:
        return f"error: {exc}", EXIT_INPUT
    report = {"schema": SCHEMA, "command": args.command, **body}
    return (to_json(report) if args.json else to_table(report)), code


def main(argv: list[str] | None = None) -> int:
    text, code = run(argv)
    stream = sys.stderr if code == EXIT_INPUT else sys.stdout
    if hasattr(stream, "reconfigure"):
        stream.reconfigure(encoding="utf-8")
    print(text, file=stream)
    return code


if __name__ == "__main__":
    sys.exit(main())
