"""Command-line front end: construct, check, catalog, and export
reproduction data.

Commands: construct, check, invariants, catalog, witness, gold-aut.
Exit codes partition outcomes: 0 success, 2 parameter error, 3 malformed
input file, 4 timeout, 5 internal verification failure. All output is
deterministic: identical flags produce byte-identical bytes.
"""

from __future__ import annotations

import argparse
import json
import math
import sys

from . import constructions, gf2m, linearized, vbf
from .errors import FormatError, ParameterError, SearchTimeout, SelfCheckError
from .invariants import InvariantReport, aut_l_order, gamma_rank, graph_aut_order

EXIT_OK = 0
EXIT_PARAMETER = 2
EXIT_FORMAT = 3
EXIT_TIMEOUT = 4
EXIT_SELFCHECK = 5

_ALPHA_HELP = (
    "alpha as lowercase hex of its bit pattern under the smallest irreducible "
    "modulus (moduli: m=2: 7, m=4: 13, m=6: 43, m=8: 11b, m=10: 409, m=12: 1009); "
    "default: the field generator"
)


def _write_out(text: str, out: str | None) -> None:
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def _load_vbf(path: str) -> vbf.VBF:
    try:
        with open(path) as fh:
            return vbf.from_text(fh.read())
    except OSError as exc:
        raise FormatError(f"cannot read {path}: {exc.strerror}") from None


def _parse_alpha(ctx, text: str | None) -> int:
    if text is None:
        return ctx.gamma
    try:
        value = int(text, 16)
    except ValueError:
        raise ParameterError(f"alpha must be hex, got {text!r}") from None
    if not 0 < value < ctx.order:
        raise ParameterError(f"alpha {text} out of range for GF(2^{ctx.m})")
    return value


# -- construct ---------------------------------------------------------------


def cmd_construct(args) -> int:
    ctx = gf2m.field_new(args.m)
    if args.family == "gold":
        table = constructions.gold(ctx, args.k)
    else:
        if args.s is None:
            raise ParameterError("--s is required for the pott-zhou family")
        params = constructions.PottZhouParams(
            args.m, args.k, args.s, _parse_alpha(ctx, args.alpha)
        )
        table = constructions.pott_zhou(
            ctx, params, unsafe_skip_validation=args.unsafe_skip_validation
        )
    _write_out(vbf.to_text(table), args.out)
    return EXIT_OK


# -- check -------------------------------------------------------------------


def cmd_check(args) -> int:
    f = _load_vbf(args.table)
    report: dict = {"n": f.n}
    if args.apn:
        report["is_apn"] = f.is_apn()
    if args.degree:
        report["algebraic_degree"] = f.algebraic_degree()
    if args.spectrum:
        spectrum = f.differential_spectrum()
        report["differential_spectrum"] = {str(k): spectrum[k] for k in sorted(spectrum)}
    if not (args.apn or args.degree or args.spectrum):
        report["is_apn"] = f.is_apn()
        report["algebraic_degree"] = f.algebraic_degree()
    _write_out(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


# -- invariants ----------------------------------------------------------------


def cmd_invariants(args) -> int:
    f = _load_vbf(args.table)
    report = InvariantReport(algebraic_degree=f.algebraic_degree())
    if f.n <= 14:  # the exhaustive APN check is O(2^(2n))
        report.is_apn = f.is_apn()
    timed_out = False
    try:
        if args.gamma_rank:
            report.gamma_rank = gamma_rank(f)
        if args.aut:
            autl = aut_l_order(f, timeout=args.timeout)
            report.aut_l_order = autl
            if report.is_apn and report.algebraic_degree == 2:
                report.aut_ea_order = (1 << f.n) * autl
                report.aut_order = report.aut_ea_order
            if f.n <= 6:
                graph = graph_aut_order(f, timeout=args.timeout)
                if report.aut_order is not None and graph != report.aut_order:
                    raise SelfCheckError(
                        f"graph automorphism search ({graph}) disagrees with "
                        f"2^n * |Aut_L| ({report.aut_order})"
                    )
                report.aut_order = graph
    except SearchTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        timed_out = True
    _write_out(report.to_json(), args.out)
    return EXIT_TIMEOUT if timed_out else EXIT_OK


# -- catalog -------------------------------------------------------------------


def _catalog_counts(m_max: int) -> str:
    lines = ["m,count"]
    for m in range(2, m_max + 1, 2):
        lines.append(f"{m},{constructions.count_inequivalent(m)}")
    return "\n".join(lines) + "\n"


def _catalog_figure(m_max: int) -> str:
    lines = ["m,count,lower_bound,upper_bound"]
    for m in range(4, m_max + 1, 2):
        lower, upper = constructions.count_bounds(m)
        lines.append(f"{m},{constructions.count_inequivalent(m)},{lower!r},{upper!r}")
    return "\n".join(lines) + "\n"


def _catalog_instances(m_max: int) -> str:
    if m_max > 6:
        raise ParameterError(
            "--with-invariants enumerates full truth tables; m-max must be <= 6"
        )
    lines = ["m,k,s,alpha,n,is_apn,algebraic_degree,gamma_rank,aut_l_order"]
    for m in range(2, m_max + 1, 2):
        ctx = gf2m.field_new(m)
        for k, s in constructions.enumerate_canonical(m):
            params = constructions.PottZhouParams.default(ctx, k, s)
            f = constructions.pott_zhou(ctx, params)
            grank = gamma_rank(f) if f.n <= 6 else ""
            autl = aut_l_order(f) if f.n <= 8 else ""
            lines.append(
                f"{m},{k},{s},{params.alpha:x},{f.n},{f.is_apn()},"
                f"{f.algebraic_degree()},{grank},{autl}"
            )
    return "\n".join(lines) + "\n"


def cmd_catalog(args) -> int:
    if args.m_max < 2 or args.m_max % 2 != 0:
        raise ParameterError(f"--m-max must be even and >= 2, got {args.m_max}")
    if args.with_invariants:
        text = _catalog_instances(args.m_max)
    elif args.figure_data:
        text = _catalog_figure(args.m_max)
    else:
        text = _catalog_counts(args.m_max)
    _write_out(text, args.out)
    return EXIT_OK


# -- witness -------------------------------------------------------------------


def cmd_witness(args) -> int:
    ctx = gf2m.field_new(args.m)
    alpha = _parse_alpha(ctx, args.alpha)
    k, s, m = args.k, args.s, args.m

    def pz(kk, ss, aa):
        return constructions.pott_zhou(
            ctx, constructions.PottZhouParams(m, kk % m, ss % m, aa)
        )

    if args.to_alpha is not None:
        beta = _parse_alpha(ctx, args.to_alpha)
        w = linearized.pz_alpha_witness(ctx, k, s, alpha, beta)
        f, g = pz(k, s, alpha), pz(k, s, beta)
        target = {"k": k, "s": s, "alpha": format(beta, "x")}
    else:
        sign_k = -1 if args.negate_k or args.negate_both else 1
        sign_s = -1 if args.negate_s or args.negate_both else 1
        if sign_k == 1 and sign_s == 1:
            raise ParameterError(
                "pick one of --to-alpha, --negate-k, --negate-s, --negate-both"
            )
        w = linearized.pz_sign_witness(ctx, k, s, sign_k, sign_s, alpha)
        k2, s2 = (sign_k * k) % m, (sign_s * s) % m
        f, g = pz(k, s, alpha), pz(k2, s2, alpha)
        target = {"k": k2, "s": s2, "alpha": format(alpha, "x")}
    verified = linearized.verify_ea_witness(f, g, w)
    if not verified:
        raise SelfCheckError("constructed witness failed pointwise verification")
    doc = json.loads(linearized.witness_to_json(w))
    doc["source"] = {"k": k, "s": s, "alpha": format(alpha, "x")}
    doc["target"] = target
    doc["verified"] = True
    _write_out(json.dumps(doc, indent=2) + "\n", args.out)
    return EXIT_OK


# -- gold-aut ------------------------------------------------------------------


def cmd_gold_aut(args) -> int:
    ctx = gf2m.field_new(args.m)
    if math.gcd(args.k, args.m) != 1:
        raise ParameterError(f"k must be coprime to m: gcd({args.k}, {args.m}) != 1")
    g = constructions.gold(ctx, args.k)
    monomials = linearized.gold_monomial_automorphisms(ctx, args.k)
    for w in monomials:
        if not linearized.verify_ea_witness(g, g, w):
            raise SelfCheckError("monomial automorphism failed verification")
    report: dict = {
        "m": args.m,
        "k": args.k,
        "monomial_count": len(monomials),
    }
    total = len(monomials)
    if args.m == 4:
        binomials = linearized.gold_m4_binomial_automorphisms(ctx)
        for w in binomials:
            if not linearized.verify_ea_witness(g, g, w):
                raise SelfCheckError("binomial automorphism failed verification")
        candidates, permutations = linearized.gold_m4_case2_exhaustion(ctx)
        report["binomial_count"] = len(binomials)
        report["case2_candidates"] = candidates
        report["case2_permutations"] = permutations
        total += len(binomials)
    report["aut_l_order"] = total
    if args.m <= 6:
        searched = aut_l_order(g)
        report["search_aut_l_order"] = searched
        if searched != total:
            raise SelfCheckError(
                f"search found {searched} linear automorphisms, enumeration gives {total}"
            )
    if args.enumerate:
        report["witnesses"] = [
            json.loads(linearized.witness_to_json(w)) for w in monomials
        ]
        if args.m == 4:
            report["witnesses"] += [
                json.loads(linearized.witness_to_json(w)) for w in binomials
            ]
    _write_out(json.dumps(report, indent=2) + "\n", args.out)
    return EXIT_OK


# -- parser --------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="apnkit",
        description=(
            "Workbench for Gold and Pott-Zhou APN functions: construction, "
            "differential checks, CCZ-invariants, equivalence witnesses, and "
            "inequivalence counts."
        ),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("construct", help="write a truth table")
    p.add_argument("--family", choices=["pott-zhou", "gold"], default="pott-zhou")
    p.add_argument("--m", type=int, required=True, help="field extension degree")
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, default=None)
    p.add_argument("--alpha", default=None, help=_ALPHA_HELP)
    p.add_argument(
        "--unsafe-skip-validation",
        action="store_true",
        help="build even when the APN conditions are violated (for testing necessity)",
    )
    p.add_argument("--out", default=None, help="output file (default stdout)")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("check", help="differential and degree analysis of a table")
    p.add_argument("table", help="truth-table file")
    p.add_argument("--apn", action="store_true")
    p.add_argument("--degree", action="store_true")
    p.add_argument("--spectrum", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("invariants", help="CCZ-invariant report for a table")
    p.add_argument("table")
    p.add_argument("--gamma-rank", action="store_true")
    p.add_argument("--aut", action="store_true")
    p.add_argument("--timeout", type=float, default=None, help="search budget in seconds")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_invariants)

    p = sub.add_parser("catalog", help="inequivalence counts / instance catalog (CSV)")
    p.add_argument("--m-max", type=int, required=True, help="largest even m")
    p.add_argument(
        "--figure-data",
        action="store_true",
        help="emit m,count,lower_bound,upper_bound rows (m >= 4)",
    )
    p.add_argument(
        "--with-invariants",
        action="store_true",
        help="emit one row per canonical instance with computed invariants (m-max <= 6)",
    )
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_catalog)

    p = sub.add_parser("witness", help="explicit equivalence witness, verified")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--s", type=int, required=True)
    p.add_argument("--alpha", default=None, help=_ALPHA_HELP)
    group = p.add_mutually_exclusive_group(required=True)
    group.add_argument("--to-alpha", default=None, metavar="HEX")
    group.add_argument("--negate-k", action="store_true")
    group.add_argument("--negate-s", action="store_true")
    group.add_argument("--negate-both", action="store_true")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_witness)

    p = sub.add_parser("gold-aut", help="Gold automorphism counts (m=4: full breakdown)")
    p.add_argument("--m", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--enumerate", action="store_true", help="include witness list")
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_gold_aut)

    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ParameterError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER
    except FormatError as exc:
        print(f"input format error: {exc}", file=sys.stderr)
        return EXIT_FORMAT
    except SearchTimeout as exc:
        print(f"timeout: {exc}", file=sys.stderr)
        return EXIT_TIMEOUT
    except SelfCheckError as exc:
        print(f"internal verification failure: {exc}", file=sys.stderr)
        return EXIT_SELFCHECK


if __name__ == "__main__":
    sys.exit(main())
