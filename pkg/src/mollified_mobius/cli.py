"""Command-line entry point: deterministic CSV/TSV reports on standard output.

Exit codes: 0 success, 1 a checked identity or ceiling failed, 2 usage
error, 3 a size cap was exceeded.
"""

from __future__ import annotations

import argparse
import csv
import logging
import math
import sys
from typing import Iterable, Sequence

import numpy as np

from .arith import RationalPoint, build_tables, sin_turns
from .characters import character_group, gauss_sum, lemma2_sum, orthogonality_residuals
from .criterion import criterion_report
from .exceptions import CapacityError, DomainError
from .series import boundedness_monitor, convergence_scan, jump_probe
from .special_values import l_at_one, l_at_zero, log_deriv_crosscheck

log = logging.getLogger("mollified_mobius")

EXIT_OK, EXIT_FAIL, EXIT_USAGE, EXIT_CAPACITY = 0, 1, 2, 3

NAMED_ALPHAS = {
    "sqrt2": math.sqrt(2.0) - 1.0,
    "golden": (math.sqrt(5.0) - 1.0) / 2.0,
    "pi_frac": math.pi - 3.0,
}

IDENTITY_TOLERANCES = {
    "orthogonality_chars": 1e-10,
    "orthogonality_residues": 1e-10,
    "gauss_norm": 1e-9,
    "gauss_product": 1e-9,
    "l0_even": 1e-10,
    "l0_l1_relation": 1e-6,
    "odd_character_sine": 1e-10,
}


class UsageError(Exception):
    pass


def fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, (int, np.integer)) and not isinstance(x, bool):
        return str(int(x))
    if isinstance(x, bool):
        return str(x).lower()
    if isinstance(x, float) or isinstance(x, np.floating):
        return format(float(x) + 0.0, ".17g")
    return str(x)


def parse_alpha(text: str) -> RationalPoint | float:
    """``a/q`` (must be reduced), a decimal, or one of the named irrationals."""
    text = text.strip()
    if text in NAMED_ALPHAS:
        return NAMED_ALPHAS[text]
    if "/" in text:
        return RationalPoint.parse(text)
    try:
        return float(text)
    except ValueError:
        raise DomainError(f"cannot parse alpha {text!r}") from None


def alpha_label(text: str, alpha) -> str:
    return str(alpha) if isinstance(alpha, RationalPoint) else (text if text in NAMED_ALPHAS else fmt(alpha))


def parse_int_list(text: str) -> list[int]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse integer list {text!r}") from None
    if not vals or any(v != int(v) or v < 1 for v in vals):
        raise UsageError(f"expected positive integers, got {text!r}")
    return [int(v) for v in vals]


def parse_float_list(text: str) -> list[float]:
    try:
        vals = [float(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise UsageError(f"cannot parse list {text!r}") from None
    if not vals:
        raise UsageError("empty list")
    return vals


def _increasing(xs: Sequence[int], what: str) -> None:
    if any(b <= a for a, b in zip(xs, xs[1:])):
        raise UsageError(f"{what} must be strictly increasing")


def _tables_for(args, needed: int):
    limit = args.sieve_limit or needed
    if limit < needed:
        raise UsageError(f"sieve limit {limit} below required {needed}")
    log.info("sieving to %d", limit)
    return build_tables(limit)


def _emit(args, header: Sequence[str], rows: Iterable[Sequence]) -> None:
    out = open(args.output, "w", newline="") if args.output else sys.stdout
    try:
        writer = csv.writer(out, delimiter="\t" if args.format == "tsv" else ",", lineterminator="\n")
        writer.writerow(header)
        for row in rows:
            writer.writerow([fmt(x) for x in row])
    finally:
        if args.output:
            out.close()


def cmd_scan(args) -> int:
    alpha = parse_alpha(args.alpha)
    schedule = parse_int_list(args.schedule)
    _increasing(schedule, "schedule")
    tables = _tables_for(args, schedule[-1])
    scan = convergence_scan(args.kind, alpha, schedule, tables)
    label = alpha_label(args.alpha, alpha)
    errs = scan.errors or [None] * len(schedule)
    _emit(
        args,
        ["kind", "alpha", "N", "value", "target", "error"],
        ([args.kind, label, n, v, scan.target, e] for n, v, e in zip(schedule, scan.values, errs)),
    )
    return EXIT_OK


def identity_rows(q_max: int) -> list[tuple[str, int, int | None, float]]:
    """Residual of every exact identity for moduli ``1..q_max``."""
    rows = []
    for q in range(1, q_max + 1):
        group = character_group(q)
        r1, r2 = orthogonality_residuals(group)
        rows.append(("orthogonality_chars", q, None, r1))
        rows.append(("orthogonality_residues", q, None, r2))
        for chi in group:
            if not chi.is_primitive:
                continue
            tau = gauss_sum(chi)
            tau_bar = gauss_sum(chi.conjugate())
            rows.append(("gauss_norm", q, chi.index, abs(abs(tau) ** 2 - q)))
            sign = -1.0 if chi.is_odd else 1.0
            rows.append(("gauss_product", q, chi.index, abs(tau * tau_bar - sign * q)))
            if chi.is_odd:
                lhs = l_at_zero(chi.conjugate())
                rhs = tau_bar / (math.pi * 1j) * l_at_one(chi, 1e-10)
                rows.append(("l0_l1_relation", q, chi.index, abs(lhs - rhs)))
            elif q > 1:
                rows.append(("l0_even", q, chi.index, abs(l_at_zero(chi))))
        for a in range(q):
            if math.gcd(a, q) == 1:
                p = RationalPoint(a, q)
                rows.append(("odd_character_sine", q, a, abs(lemma2_sum(p) - sin_turns(a, q))))
    return rows


def cmd_identities(args) -> int:
    rows = identity_rows(args.q_max)
    if args.perturb:
        name, q, idx, r = rows[-1]
        rows[-1] = (name, q, idx, r + args.perturb)
    failed = [r for r in rows if not r[3] <= IDENTITY_TOLERANCES[r[0]]]
    _emit(args, ["identity", "q", "chi_index", "residual"], rows)
    for name, q, idx, r in failed:
        print(f"identity {name} failed at q={q} index={idx}: residual {r:.3e}", file=sys.stderr)
    return EXIT_FAIL if failed else EXIT_OK


def cmd_criterion(args) -> int:
    ns = parse_int_list(args.n)
    _increasing(ns, "N list")
    tables = _tables_for(args, ns[-1])
    rows = criterion_report(ns, tables, u_max=args.u_max, with_lhs=args.with_lhs, t_max=args.t_max)
    bad = [r for r in rows if r.pairs_consistency > 1e-9]
    _emit(
        args,
        ["N", "rhs_value", "rhs_uncertainty", "lhs_value", "lhs_uncertainty", "gap_to_one", "weighted_mertens"],
        (
            [r.n, r.rhs_value, r.rhs_uncertainty, r.lhs_value, r.lhs_uncertainty, r.gap_to_one, r.weighted_mertens]
            for r in rows
        ),
    )
    for r in bad:
        print(f"pairs vs piecewise mismatch at N={r.n}: {r.pairs_consistency:.3e}", file=sys.stderr)
    return EXIT_FAIL if bad else EXIT_OK


def cmd_jump(args) -> int:
    point = parse_alpha(args.alpha)
    if not isinstance(point, RationalPoint):
        raise DomainError("jump probe needs a rational point a/q")
    eps = parse_float_list(args.eps)
    tables = _tables_for(args, args.n_max)
    rep = jump_probe(point, eps, args.n_max, tables)
    _emit(
        args,
        ["a", "q", "eps", "T_left", "T_right", "avg", "T_at", "conjectured_half_jump"],
        ([point.a, point.q, r.eps, r.t_left, r.t_right, r.average, rep.t_at, rep.conjectured_half_jump] for r in rep.rows),
    )
    return EXIT_OK


def cmd_logderiv(args) -> int:
    tables = _tables_for(args, args.n_max)
    rows = []
    for q in range(3, args.q_max + 1):
        for chi in character_group(q).odd():
            c = log_deriv_crosscheck(chi, tables, args.n_max, args.tolerance)
            rows.append([q, chi.index, c.quoted_expression.real, c.corrected_expression.real,
                         c.series_oracle.real, c.flagged, c.corrected_agrees])
    _emit(args, ["q", "chi_index", "quoted_re", "corrected_re", "oracle_re", "quoted_flagged", "corrected_agrees"], rows)
    return EXIT_OK if all(r[-1] for r in rows) else EXIT_FAIL


def cmd_monitor(args) -> int:
    rng = np.random.default_rng(args.seed)
    grid = rng.random(args.grid)
    tables = _tables_for(args, args.n_max)
    rep = boundedness_monitor(args.kind, grid, args.n_max, tables, args.ceiling)
    _emit(
        args,
        ["kind", "N_max", "grid_size", "sup", "alpha_at_sup", "N_at_sup", "ceiling"],
        [[rep.kind, rep.n_max, args.grid, rep.sup, rep.alpha_at_sup, rep.n_at_sup, rep.ceiling]],
    )
    return EXIT_OK if rep.within_ceiling else EXIT_FAIL


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--sieve-limit", type=int, default=None, help="sieve bound (default: largest N needed)")
    common.add_argument("--format", choices=("csv", "tsv"), default="csv")
    common.add_argument("-o", "--output", default=None, help="write to this file instead of stdout")
    common.add_argument("-v", "--verbose", action="store_true")

    p = argparse.ArgumentParser(prog="mollified-mobius", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("scan", parents=[common], help="partial sums of one series over an N schedule")
    s.add_argument("--kind", choices=("U", "V", "Vstar", "W", "Tsum", "S"), required=True)
    s.add_argument("--alpha", required=True, help="a/q, decimal, or sqrt2 | golden | pi_frac")
    s.add_argument("--schedule", default="1e3,1e4,1e5,1e6")
    s.set_defaults(func=cmd_scan)

    s = sub.add_parser("identities", parents=[common], help="exact character identities up to q_max")
    s.add_argument("--q-max", type=int, default=40)
    s.add_argument("--perturb", type=float, default=0.0, help=argparse.SUPPRESS)
    s.set_defaults(func=cmd_identities)

    s = sub.add_parser("criterion", parents=[common], help="distance integral per N")
    s.add_argument("--n", default="2,3,5,8")
    s.add_argument("--u-max", type=float, default=1e3)
    s.add_argument("--with-lhs", action="store_true", help="also evaluate the critical-line side")
    s.add_argument("--t-max", type=float, default=200.0)
    s.set_defaults(func=cmd_criterion)

    s = sub.add_parser("jump", parents=[common], help="one-sided values of T around a/q (report only)")
    s.add_argument("--alpha", required=True)
    s.add_argument("--eps", default="1e-2,1e-3,1e-4")
    s.add_argument("--n-max", type=int, default=10**6)
    s.set_defaults(func=cmd_jump)

    s = sub.add_parser("logderiv", parents=[common], help="L'/L(1) finite expression vs series oracle")
    s.add_argument("--q-max", type=int, default=12)
    s.add_argument("--n-max", type=int, default=10**6)
    s.add_argument("--tolerance", type=float, default=1e-3)
    s.set_defaults(func=cmd_logderiv)

    s = sub.add_parser("monitor", parents=[common], help="sup of partial sums over random alpha")
    s.add_argument("--kind", choices=("V", "Vstar", "Tsum"), required=True)
    s.add_argument("--grid", type=int, default=1000)
    s.add_argument("--n-max", type=int, default=10**6)
    s.add_argument("--seed", type=int, default=0)
    s.add_argument("--ceiling", type=float, default=None)
    s.set_defaults(func=cmd_monitor)
    return p


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        return args.func(args)
    except (UsageError, DomainError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity: {exc}", file=sys.stderr)
        return EXIT_CAPACITY


if __name__ == "__main__":
    sys.exit(main())
