"""Command-line front end: ``modhyp <command> ...``.

Exit status is 0 when every requested check passes, 1 on a mismatch and
2 on a usage error. JSON output always carries the package version.
"""

from __future__ import annotations

import argparse
import json
import re
import sys

from . import __version__, data, fuchsian, identities, modcurve, qforms
from .exact import format_rational

MAX_TERMS = 128
DEFAULT_TERMS = 40


class UsageError(Exception):
    pass


def _terms(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if not 1 <= n <= MAX_TERMS:
        raise argparse.ArgumentTypeError(f"must be between 1 and {MAX_TERMS}")
    return n


def _level(text: str) -> int:
    try:
        n = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if n < 1:
        raise argparse.ArgumentTypeError("level must be positive")
    return n


def _emit_json(payload: dict) -> None:
    print(json.dumps({"version": __version__, **payload}, indent=2))


# -- commands ---------------------------------------------------------------------


def cmd_verify(args) -> int:
    if args.all:
        names = list(identities.REGISTRY)
    else:
        unknown = [n for n in args.id if n not in identities.REGISTRY]
        if unknown:
            raise UsageError(f"unknown identity {unknown[0]!r}; see 'modhyp list'")
        names = args.id
    reports = [identities.run_identity(n, args.terms) for n in names]
    ok = all(r.passed for r in reports)
    if args.json:
        _emit_json({"passed": ok, "reports": [r.to_json() for r in reports]})
    else:
        for r in reports:
            print(r.line())
        print(f"{sum(r.passed for r in reports)}/{len(reports)} passed")
    return 0 if ok else 1


def cmd_list(args) -> int:
    for name in identities.REGISTRY:
        print(name)
    return 0


def _h_level(target: str) -> int:
    m = re.fullmatch(r"h(\d+)", target)
    if not m:
        raise UsageError(f"expected a target like h5, got {target!r}")
    N = int(m.group(1))
    try:
        data.covering(N)
    except KeyError:
        raise UsageError(f"no covering recorded for level {N}") from None
    return N


def cmd_series(args) -> int:
    N = _h_level(args.target)
    if args.scaled:
        if N not in identities.SEQUENCE_SCALE:
            raise UsageError(f"--scaled needs N in {sorted(identities.SEQUENCE_SCALE)}")
        values = [str(d) for d in identities.coefficient_sequence(N, args.count)]
    else:
        h = fuchsian.h_series(N, args.count)
        values = [format_rational(h[n]) for n in range(args.count)]
    if args.json:
        _emit_json({"target": args.target, "scaled": args.scaled, "coeffs": values})
    else:
        for n, v in enumerate(values):
            print(f"{n} {v}")
    return 0


def _qexp(name: str, order: int) -> qforms.QExpansion:
    if name.startswith("eta:"):
        try:
            p = qforms.EtaProduct.parse(name[4:])
        except ValueError as exc:
            raise UsageError(str(exc)) from None
        return qforms.eta_product_qexp(p, order)
    if name == "j":
        return qforms.j_qexp(order)
    if name == "t36" or name in qforms.HAUPTMODUL_NAMES:
        return qforms.hauptmodul_qexp(name, order)
    m = re.fullmatch(r"h(\d+)", name)
    if m and int(m.group(1)) in data.FORM_ETA:
        return qforms.form_qexp(int(m.group(1)), order)
    raise UsageError(
        f"unknown expansion {name!r}; expected eta:[k]..., "
        + ", ".join(qforms.HAUPTMODUL_NAMES)
        + ", j or h2..h7"
    )


def cmd_qexp(args) -> int:
    f = _qexp(args.name, args.terms + qforms.GUARD)
    f = qforms.QExpansion(f.q_exponent, f.unit.truncate(args.terms))
    _emit_json({"name": args.name, **f.to_json()})
    return 0


def cmd_cusps(args) -> int:
    table = modcurve.cusp_table(args.N)
    if args.json:
        _emit_json({"N": args.N, "cusps": [c.to_json() for c in table]})
        return 0
    print(f"X0({args.N}): {len(table)} cusps, {sum(c.rational for c in table)} rational")
    for c in table:
        flags = [f for f, on in (("infinity", c.is_infinity), ("zero", c.is_zero), ("rational", c.rational)) if on]
        print(f"  {c.label():<14} width {c.width:<4} {' '.join(flags)}".rstrip())
    return 0


def cmd_profile(args) -> int:
    p = modcurve.arithmetic_profile(args.N)
    rows = {
        "N": p.N,
        "index": p.psi,
        "cusps": p.sigma_infty,
        "elliptic_order_2": p.eps_i,
        "elliptic_order_3": p.eps_rho,
        "genus": p.genus,
    }
    if args.N >= 5:
        fq = modcurve.fricke_genus_plus(args.N)
        rows["fricke_fixed_points"] = fq.a
        rows["fricke_quotient_genus"] = fq.genus
    if args.json:
        _emit_json(rows)
    else:
        for k, v in rows.items():
            print(f"{k:<22} {v}")
    return 0


def cmd_lift(args) -> int:
    try:
        L = fuchsian.lifted_operator(args.N)
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    print(f"lifted operator on the x{args.N}-line:")
    print(f"  {L.format('z')}")
    print("singular points:")
    for sp in fuchsian.singular_points(L):
        print(f"  {sp.describe('z')}")
    return 0


def cmd_lift_cusps(args) -> int:
    which = {"phi": "phi", "phi-prime": "phi_prime"}[args.map]
    for key, fibre in modcurve.lift_cusps(args.N, which).items():
        print(f"{fibre.base.label()} ({key}) <- {modcurve.format_formal_sum(fibre.points)}  [degree {fibre.degree}]")
    return 0


def cmd_recurrence(args) -> int:
    try:
        rec = fuchsian.extract_recurrence(fuchsian.lifted_operator(args.N))
    except KeyError as exc:
        raise UsageError(str(exc.args[0])) from None
    top = len(rec) - 1
    for k, p in enumerate(rec):
        shift = k - top + 1
        index = "c_{n+1}" if shift == 1 else ("c_n" if shift == 0 else f"c_{{n{shift}}}")
        print(f"{index:<9} {p.format('n')}")
    return 0


def cmd_sequence(args) -> int:
    if args.N not in identities.SEQUENCE_SCALE:
        raise UsageError(f"no integral sequence for N={args.N}; choose from {sorted(identities.SEQUENCE_SCALE)}")
    values = identities.coefficient_sequence(args.N, args.count)
    if args.json:
        _emit_json({"N": args.N, "scale": identities.SEQUENCE_SCALE[args.N], "values": values})
    else:
        print(", ".join(str(v) for v in values))
    return 0


# -- parser -----------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="modhyp", description=__doc__.splitlines()[0])
    parser.add_argument("--version", action="version", version=f"modhyp {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("verify", help="run registered identity checks")
    which = p.add_mutually_exclusive_group(required=True)
    which.add_argument("--all", action="store_true")
    which.add_argument("--id", action="append", metavar="NAME")
    p.add_argument("--terms", type=_terms, default=DEFAULT_TERMS)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("list", help="names of the registered checks")
    p.set_defaults(func=cmd_list)

    p = sub.add_parser("series", help="Taylor coefficients of h_N in x_N")
    p.add_argument("target", metavar="hN")
    p.add_argument("--count", type=_terms, default=10)
    p.add_argument("--scaled", action="store_true", help="print the integers scale^n c_n")
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_series)

    p = sub.add_parser("qexp", help="q-expansion of an eta product, Hauptmodul, j or h_N")
    p.add_argument("name")
    p.add_argument("--terms", type=_terms, default=DEFAULT_TERMS)
    p.set_defaults(func=cmd_qexp)

    p = sub.add_parser("cusps", help="cusps of X0(N)")
    p.add_argument("N", type=_level)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_cusps)

    p = sub.add_parser("profile", help="index, cusp and elliptic counts, genus")
    p.add_argument("N", type=_level)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_profile)

    p = sub.add_parser("lift", help="operator lifted to the x_N-line")
    p.add_argument("--N", type=_level, required=True)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser("lift-cusps", help="cusps of X0(N^2) over 0 and infinity of X0(N)")
    p.add_argument("N", type=_level)
    p.add_argument("--map", choices=("phi", "phi-prime"), default="phi")
    p.set_defaults(func=cmd_lift_cusps)

    p = sub.add_parser("recurrence", help="coefficient recurrence for h_N")
    p.add_argument("--N", type=_level, required=True)
    p.set_defaults(func=cmd_recurrence)

    p = sub.add_parser("sequence", help="integral sequence scale^n c_n for N = 5, 6, 7")
    p.add_argument("N", type=_level)
    p.add_argument("--count", type=_terms, default=8)
    p.add_argument("--json", action="store_true")
    p.set_defaults(func=cmd_sequence)
    return parser


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except UsageError as exc:
        print(f"modhyp {args.command}: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
