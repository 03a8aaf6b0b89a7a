"""Command-line front end.

Exit codes: 0 success or PASS, 1 verification FAIL (or inconclusive), 2 usage
or input error. Results go to stdout, progress to stderr.
"""

from __future__ import annotations

import argparse
import json
import sys
from fractions import Fraction

from . import bounds, lp, search, walk
from .audit import verify_all
from .constructions import ConstructionId, UnsupportedConstruction, build, measure_formula, uniform_count
from .exactnum import parse_rational
from .setfam import (CapacityError, DomainError, FamilyFormatError, format_family, measure,
                     read_family, write_family)

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2


class UsageError(Exception):
    pass


def _rational(text: str) -> Fraction:
    try:
        return parse_rational(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _rationals(text: str) -> list[Fraction]:
    return [_rational(t) for t in text.split(",") if t.strip()]


def _emit(args, payload: dict, text: str) -> None:
    if getattr(args, "json", False):
        print(json.dumps(payload, indent=2))
    else:
        print(text)


def _decimal(x, digits: int = 30) -> str:
    """Fixed-point rendering of an exact rational, truncated toward zero."""
    x = Fraction(x)
    sign = "-" if x < 0 else ""
    x = abs(x)
    whole = x.numerator // x.denominator
    frac = (x - whole) * 10 ** digits
    return f"{sign}{whole}.{frac.numerator // frac.denominator:0{digits}d}"


# --- subcommands ------------------------------------------------------------------

def cmd_measure(args) -> int:
    if args.family:
        fam = read_family(args.family)
        origin = args.family
    elif args.construction:
        fam = build(ConstructionId.parse(args.construction))
        origin = args.construction
    else:
        raise UsageError("give --family FILE or --construction ID")
    value = measure(fam, args.p)
    _emit(args, {"source": origin, "n": fam.n, "size": len(fam), "p": str(args.p),
                 "measure": str(value)}, str(value))
    return EXIT_OK


def cmd_construct(args) -> int:
    cid = ConstructionId.parse(args.id)
    payload = {"id": str(cid)}
    lines = []
    if cid.tag in ("BD_UNIF", "FRS_UNIF"):
        payload["count"] = str(uniform_count(cid))
    if not args.count_only:
        fam = build(cid)
        payload.update(n=fam.n, size=len(fam))
        if args.out:
            write_family(fam, args.out)
            lines.append(f"wrote {len(fam)} sets on n={fam.n} to {args.out}")
        elif not args.json:
            lines.append(format_family(fam).rstrip("\n"))
        else:
            payload["members"] = fam.as_sets()
        if args.p is not None:
            payload["measure"] = str(measure(fam, args.p))
    if args.p is not None:
        try:
            payload["formula"] = str(measure_formula(cid, args.p))
        except UnsupportedConstruction:
            pass
    for key in ("count", "measure", "formula"):
        if key in payload:
            lines.append(f"{key}: {payload[key]}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def _load_certificate(args) -> lp.DualCertificate:
    if args.file:
        with open(args.file, encoding="utf-8") as fh:
            return lp.DualCertificate.from_json(json.load(fh))
    if not args.case:
        raise UsageError("give --case ID or --file CERT.json")
    try:
        return lp.certificate_by_id(args.case)
    except KeyError as exc:
        known = ", ".join(c.case_id for c in lp.builtin_certificates() + lp.printed_variants())
        raise UsageError(f"{exc.args[0]}; known cases: {known}") from None


def _report_text(rep: lp.CertificateReport) -> str:
    lines = [f"{rep.case_id} on [{rep.interval[0]}, {rep.interval[1]}]: {rep.status} "
             f"({rep.seconds:.2f}s)"]
    for c in rep.checks:
        line = f"  {c.status:<12} {c.kind:<20} {c.column_or_index:<10} {c.method} ({c.boxes_examined} boxes)"
        if c.method == "identity" and c.kind == "objective_le_target":
            line += "  objective equals the target identically"
        if c.witness is not None:
            line += f"  witness [{c.witness.lo}, {c.witness.hi}]"
        lines.append(line)
    return "\n".join(lines)


def cmd_verify_cert(args) -> int:
    cert = _load_certificate(args)
    if args.perturb:
        label, _, delta = args.perturb.partition(":")
        if label not in cert.duals:
            raise UsageError(f"no dual entry {label!r} in {cert.case_id}")
        cert = cert.perturbed(label, _rational(delta) if delta else Fraction(-1, 10))
    if args.export:
        with open(args.export, "w", encoding="utf-8") as fh:
            json.dump(cert.to_json(), fh, indent=2)
    rep = lp.check_certificate(cert, fail_fast=args.fail_fast, max_depth=args.max_depth)
    payload = rep.to_json()
    if any(c.method == "identity" and c.kind == "objective_le_target" for c in rep.checks):
        payload["note"] = "dual objective equals the target identically"
    _emit(args, payload, _report_text(rep))
    return EXIT_OK if rep.ok else EXIT_FAIL


def cmd_verify_all(args) -> int:
    sections = verify_all(threads=args.threads, seed=args.seed,
                          property_cases=args.property_cases, progress=sys.stderr)
    ok = all(s.ok for s in sections)
    payload = {"status": "PASS" if ok else "FAIL",
               "sections": [{"name": s.name, "status": "PASS" if s.ok else "FAIL",
                             "lines": s.lines, **s.data} for s in sections]}
    text = []
    for s in sections:
        text.append(f"[{'PASS' if s.ok else 'FAIL'}] {s.name}")
        text.extend(f"    {line}" for line in s.lines)
    text.append(f"overall: {payload['status']}")
    _emit(args, payload, "\n".join(text))
    return EXIT_OK if ok else EXIT_FAIL


def _num(v) -> str:
    return str(v) if isinstance(v, Fraction) else f"{v} ~ {float(v):.15g}"


def cmd_simplex(args) -> int:
    cert = _load_certificate(args)
    res = lp.simplex_max(cert.lp, args.p, approximate=args.approximate)
    payload = {"case_id": cert.case_id, "p": str(args.p), "status": res.status,
               "approximate": args.approximate}
    lines = [f"{cert.case_id} at p={args.p}: {res.status}"]
    if res.status == "optimal":
        dual = lp.dual_objective(cert).exact(args.p)
        payload.update(optimum=str(res.optimum), dual_objective=str(dual),
                       x={v: str(x) for v, x in zip(cert.lp.variables, res.x)},
                       weak_duality=bool(res.optimum <= dual))
        lines.append(f"primal optimum: {_num(res.optimum)}")
        lines.append(f"dual objective: {_num(dual)}")
        lines.append("argmax: " + ", ".join(f"{v}={x}" for v, x in zip(cert.lp.variables, res.x)))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_walk(args) -> int:
    if args.type == "A":
        if args.p is None:
            raise UsageError("a type A walk needs --p")
        j = args.j if args.j is not None else args.t
        spec = walk.WalkSpec.type_a(args.p, args.r, j, args.steps)
        closed = bounds.root_alpha_general(args.p, args.r) if args.t else None
        power = args.t
    else:
        if not args.ps:
            raise UsageError("a type B walk needs --ps p1,...,pr")
        r = len(args.ps)
        j = args.j if args.j is not None else r * args.t
        spec = walk.WalkSpec.type_b(args.ps, j, args.steps)
        closed = bounds.root_beta(args.ps) if args.t else None
        power = args.t
    if j is None:
        raise UsageError("give --t or --j")
    value = walk.hit_prob(spec)
    payload = {"kind": spec.kind, "r": spec.r, "j": spec.j, "steps": spec.steps,
               "probability": _decimal(value)}
    lines = [f"P(hit L_{spec.j} within {spec.steps} steps) = {_decimal(value)}"]
    if args.exact:
        payload["exact"] = str(value)
        lines.append(f"exact: {value}")
    if closed is not None and args.j is None:
        enc = closed ** power
        gap_hi = enc.hi - value
        payload.update(closed_form_lo=_decimal(enc.lo), closed_form_hi=_decimal(enc.hi),
                       below_closed_form=bool(value <= enc.hi), gap_upper=_decimal(gap_hi))
        lines.append(f"closed form in [{_decimal(enc.lo)}, {_decimal(enc.hi)}]")
        lines.append(f"gap to closed form <= {_decimal(gap_hi)}")
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_search_optimal(args) -> int:
    if args.method == "brute":
        res = search.max_nontrivial_3wise(args.n, args.p)
    else:
        res = search.max_nontrivial_3wise_split(args.n, args.p)
    payload = {"n": args.n, "p": str(args.p), "max": str(res.value),
               "candidates": res.candidates, "optima": [f.as_sets() for f in res.optima]}
    lines = [f"max measure {res.value} over {res.candidates} non-trivial 3-wise intersecting up-sets",
             f"{len(res.optima)} optimal class(es):"]
    for f in res.optima:
        lines.append(format_family(f).rstrip("\n"))
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_cross_sum(args) -> int:
    res = search.max_cross_sum(args.n, args.t, args.p, args.shifted, args.no_common)
    payload = {"n": args.n, "t": args.t, "p": str(args.p), "shifted": args.shifted,
               "no_common": args.no_common,
               "max": None if res.value is None else str(res.value),
               "triple": None if res.triple is None else [f.as_sets() for f in res.triple]}
    if res.value is None:
        text = "no admissible triple"
    else:
        text = f"max sum {res.value}\n" + "\n".join(f"F{i + 1}: {f.as_sets()}" for i, f in enumerate(res.triple))
    _emit(args, payload, text)
    return EXIT_OK


def cmd_scan(args) -> int:
    ks = search.parse_k_range(args.k)
    rows = []
    for k in ks:
        print(f"k={k}", file=sys.stderr, flush=True)
        rows.extend(search.counterexample_scan(args.n, args.r, [k]))
    if args.csv:
        sys.stdout.write(search.scan_csv(rows, args.r))
        return EXIT_OK
    payload = {"n": args.n, "r": args.r,
               "rows": [{"k": row.k, "BD": str(row.bd), **{f"F_{s}": str(c) for s, c in row.frs.items()},
                         "verdict": row.verdict} for row in rows]}
    lines = [f"k={row.k}: F_1 {'>' if row.verdict else '<='} max(BD, F_s>=2)  "
             f"(BD={row.bd}, " + ", ".join(f"F_{s}={c}" for s, c in row.frs.items()) + ")"
             for row in rows]
    _emit(args, payload, "\n".join(lines))
    return EXIT_OK


def cmd_bounds_eval(args) -> int:
    f, p = args.fn, args.p
    need = {"gmps": ("r", "t", "n"), "ak": ("n", "t"), "ft": ("t",), "tilde-a": ("t",),
            "alpha-general": ("r",)}
    for key in need.get(f, ()):
        if getattr(args, key) is None:
            raise UsageError(f"{f} needs --{key}")
    if f == "beta":
        if not args.ps:
            raise UsageError("beta needs --ps")
        value = bounds.root_beta(args.ps, args.prec)
    elif p is None:
        raise UsageError(f"{f} needs --p")
    elif f == "m3":
        value = bounds.m3_limit(p)
    elif f == "alpha":
        value = bounds.alpha(p)
    elif f == "alpha-general":
        value = bounds.root_alpha_general(p, args.r, args.prec)
    elif f == "eps":
        value = bounds.epsilon_p(p)
    elif f == "gmps":
        value, arg = bounds.gmps_bound(args.r, args.t, p, args.n)
        _emit(args, {"fn": f, "value": str(value), "argmax_a": arg}, f"{value} (a={arg})")
        return EXIT_OK
    elif f == "ak":
        value = bounds.ak_measure(args.n, args.t, p)
    elif f == "ft":
        value = bounds.f_t_limit(args.t, p)
    elif f == "tilde-alpha":
        value = bounds.tilde_alpha().exact(p)
    elif f == "tilde-a":
        value = bounds.tilde_a(args.t).exact(p)
    elif f == "c":
        value = bounds.c_expr().exact(p)
    elif f == "d":
        value = bounds.d_taylor(p)
    else:  # bd
        value = bounds.bd_expr(args.r or 3).exact(p)
    if hasattr(value, "lo") and hasattr(value, "hi"):
        lo, hi = value.to_strings()
        _emit(args, {"fn": f, "lo": lo, "hi": hi}, f"[{_decimal(value.lo)}, {_decimal(value.hi)}]")
        return EXIT_OK
    text = str(value)
    if not isinstance(value, Fraction):
        text = f"{value} ~ {_decimal(value.enclosure(128).mid)}"
    _emit(args, {"fn": f, "value": str(value)}, text)
    return EXIT_OK


# --- parser ---------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="threewise",
                                     description="Exact checks for non-trivial 3-wise intersecting families.")
    sub = parser.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("--json", action="store_true", help="machine-readable output")
        sp.set_defaults(func=func)
        return sp

    sp = add("measure", cmd_measure, "p-measure of a family file or construction")
    sp.add_argument("--family")
    sp.add_argument("--construction")
    sp.add_argument("--p", type=_rational, required=True)

    sp = add("construct", cmd_construct, "build a named construction")
    sp.add_argument("--id", required=True, help="e.g. BD(3,5), AK(8,2,1), FRS_UNIF(3,10,5,1)")
    sp.add_argument("--out")
    sp.add_argument("--p", type=_rational)
    sp.add_argument("--count-only", action="store_true", help="uniform count without building")

    def cert_args(sp):
        sp.add_argument("--case")
        sp.add_argument("--file", help="certificate JSON")

    sp = add("verify-cert", cmd_verify_cert, "verify one dual certificate")
    cert_args(sp)
    sp.add_argument("--perturb", help="LABEL[:DELTA], default delta -1/10")
    sp.add_argument("--export", help="write the certificate JSON here")
    sp.add_argument("--max-depth", type=int)
    sp.add_argument("--fail-fast", action="store_true")

    sp = add("verify-all", cmd_verify_all, "every certificate, identity, canary and property suite")
    sp.add_argument("--threads", type=int, default=1, help="worker cap for certificate checks")
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--property-cases", type=int, default=200)

    sp = add("simplex", cmd_simplex, "exact primal optimum of a case LP at rational p")
    cert_args(sp)
    sp.add_argument("--p", type=_rational, required=True)
    sp.add_argument("--approximate", action="store_true",
                    help="round irrational data outward to rationals first")

    sp = add("walk", cmd_walk, "exact hitting probability of a biased walk")
    sp.add_argument("--type", choices=("A", "B"), default="A")
    sp.add_argument("--p", type=_rational)
    sp.add_argument("--ps", type=_rationals)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--j", type=int, help="explicit line index (overrides --t)")
    sp.add_argument("--steps", type=int, default=3000)
    sp.add_argument("--exact", action="store_true", help="also print the exact fraction")

    sp = add("search-optimal", cmd_search_optimal, "max non-trivial 3-wise intersecting up-set")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--p", type=_rational, required=True)
    sp.add_argument("--method", choices=("brute", "split"), default="brute")

    sp = add("cross-sum", cmd_cross_sum, "max measure sum of 3-cross t-intersecting up-sets")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--t", type=int, default=1)
    sp.add_argument("--p", type=_rational, required=True)
    sp.add_argument("--shifted", action="store_true")
    sp.add_argument("--no-common", action="store_true")

    sp = add("scan-counterexample", cmd_scan, "uniform family size comparison")
    sp.add_argument("--n", type=int, required=True)
    sp.add_argument("--r", type=int, default=3)
    sp.add_argument("--k", required=True, help="e.g. 63..90 or 5,6,7")
    sp.add_argument("--csv", action="store_true")

    sp = add("bounds-eval", cmd_bounds_eval, "evaluate a closed-form bound")
    sp.add_argument("--fn", required=True,
                    choices=("m3", "alpha", "alpha-general", "beta", "eps", "gmps", "ak", "ft",
                             "tilde-alpha", "tilde-a", "c", "d", "bd"))
    sp.add_argument("--p", type=_rational)
    sp.add_argument("--ps", type=_rationals)
    sp.add_argument("--r", type=int)
    sp.add_argument("--t", type=int)
    sp.add_argument("--n", type=int)
    sp.add_argument("--prec", type=int, default=bounds.ROOT_PREC)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except FamilyFormatError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UsageError, DomainError, CapacityError, UnsupportedConstruction, ValueError,
            OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
