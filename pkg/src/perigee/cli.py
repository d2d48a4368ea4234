"""Command-line surface: reproducible tables over the library calls.

Every command emits either CSV (a table followed by '# key=value' summary
lines) or the JSON mirror of the same content.  All randomness is seeded and
all precision explicit, so identical invocations produce byte-identical
output.

Exit codes: 0 ok, 1 oracle mismatch, 2 invalid configuration or parse error,
3 computation budget exceeded, 4 degenerate polynomial.
"""

import argparse
import json
import os
import re
import sys
from dataclasses import dataclass, field
from fractions import Fraction

from mpmath import mp

from . import construction, numtheory, orbits, toral, zeta
from .numtheory import BudgetError
from .precision import DEFAULT_PRECISION_BITS, PrecisionError, digits_for_bits, log_real
from .targets import FINITE, GrowthTarget
from .toral import DegeneracyError, IntegerPolynomial

EXIT_OK = 0
EXIT_MISMATCH = 1
EXIT_CONFIG = 2
EXIT_BUDGET = 3
EXIT_DEGENERATE = 4

PRECISION_ENV_VAR = "PERIGEE_PRECISION_BITS"


@dataclass
class RunConfig:
    command: str
    output_format: str
    precision_bits: int
    seed: int
    parameters: dict = field(default_factory=dict)


def _default_precision_bits():
    raw = os.environ.get(PRECISION_ENV_VAR)
    if raw is None:
        return DEFAULT_PRECISION_BITS
    try:
        bits = int(raw)
    except ValueError:
        raise ValueError("%s must be an integer, got %r" % (PRECISION_ENV_VAR, raw))
    if bits < 8:
        raise ValueError("%s must be at least 8" % PRECISION_ENV_VAR)
    return bits


def _fmt(x, bits):
    return mp.nstr(x, digits_for_bits(bits))


def _emit(config, header, rows, summary, out):
    if config.output_format == "csv":
        out.write(",".join(header) + "\n")
        for row in rows:
            out.write(",".join(str(v) for v in row) + "\n")
        for key, value in summary.items():
            out.write("# %s=%s\n" % (key, value))
    else:
        payload = {
            "command": config.command,
            "rows": [dict(zip(header, row)) for row in rows],
            "summary": summary,
        }
        out.write(json.dumps(payload, indent=2) + "\n")


# --- construct ---------------------------------------------------------------


def _parse_target(args):
    if args.C is not None and args.target is not None:
        raise ValueError("give either --C or --target, not both")
    if args.C is not None:
        target = GrowthTarget.parse(args.C)
        if target.kind != FINITE:
            raise ValueError("--C must be a positive rational; use --target for zero/infinite")
        return target
    if args.target is None:
        raise ValueError("a growth target is required (--C or --target)")
    return GrowthTarget.parse(args.target)


def cmd_construct(config, args, out):
    target = _parse_target(args)
    strategy = args.strategy
    if target.kind != FINITE and strategy is not None:
        raise ValueError("--strategy only applies to finite targets")
    gamma = Fraction(args.gamma) if args.gamma is not None else None
    plan = construction.build_plan(
        target,
        strategy=strategy if target.kind == FINITE else None,
        n_max=args.max_n,
        gamma=gamma,
        precision_bits=config.precision_bits,
    )
    if args.plan_out:
        construction.save_plan(plan, args.plan_out)
    if args.sequence_out:
        with open(args.sequence_out, "w", encoding="utf-8", newline="") as fh:
            orbits.write_sequence_csv(construction.fixed_sequence(plan), fh)

    bits = config.precision_bits
    header = ["n", "p", "g", "K", "F_factored", "F_log", "L_exact", "L_claimed", "rate"]
    rows = []
    rates = []
    with mp.workprec(bits + 12):
        for comp in plan.components:
            n = comp.n
            factored = construction.fixed_count(plan, n)
            f_log = construction.fixed_count_log(plan, n, bits)
            rate = f_log / n
            rates.append((n, rate))
            rows.append(
                [
                    n,
                    comp.p,
                    comp.g,
                    comp.K,
                    str(factored),
                    _fmt(f_log, bits),
                    construction.least_count_exact(plan, n),
                    construction.least_count_claimed(plan, n),
                    _fmt(rate, bits),
                ]
            )
        window = max(1, min(args.window, len(rates)))
        tail = [r for (_, r) in rates[-window:]]
        report = construction.claimed_vs_exact_report(plan, plan.N)
        max_n, max_rate = max(rates, key=lambda item: item[1])
        summary = {
            "target": target.describe(),
            "strategy": plan.strategy,
            "window_len": window,
            "window_inf": _fmt(min(tail), bits),
            "window_sup": _fmt(max(tail), bits),
            "max_rate": _fmt(max_rate, bits),
            "max_rate_n": max_n,
            "claimed_vs_exact_discrepancies": report.discrepancy_count,
        }
        if plan.strategy == construction.STRATEGY_COMPENSATED:
            deficits = construction.deficit_report(plan, precision_bits=bits)
            summary["deficit_unverified"] = (
                ";".join(str(n) for n in deficits.unverified) or "none"
            )
            summary["deficit_negative_budget"] = (
                ";".join(str(n) for n in deficits.negative_budget) or "none"
            )
        if plan.strategy == construction.STRATEGY_PAPER:
            gaps = []
            for n, rate in rates:
                nominal = construction.sigma_rate_target(plan, n)
                nominal_mpf = mp.mpf(nominal.numerator) / nominal.denominator
                gaps.append(abs(rate - nominal_mpf))
            summary["sigma_rate_max_gap"] = _fmt(max(gaps), bits)
    _emit(config, header, rows, summary, out)
    return EXIT_OK


# --- oracle -------------------------------------------------------------------


def cmd_oracle(config, args, out):
    plan = construction.load_plan(args.plan)
    components = args.components if args.components is not None else plan.N
    n_max = args.max_n if args.max_n is not None else plan.N
    counts = construction.enumerate_oracle(
        plan, components, n_max, max_points=args.max_points
    )
    header = ["n", "F_oracle", "L_oracle", "F_closed", "L_closed", "status"]
    rows = []
    mismatches = 0
    for n in range(1, n_max + 1):
        f_oracle = counts.fixed.values[n - 1]
        l_oracle = counts.least.values[n - 1]
        f_closed = construction.fixed_count(plan, n, component_limit=components).value()
        l_closed = construction.least_count_exact(plan, n, component_limit=components)
        ok = f_oracle == f_closed and l_oracle == l_closed
        if not ok:
            mismatches += 1
        rows.append([n, f_oracle, l_oracle, f_closed, l_closed, "MATCH" if ok else "MISMATCH"])
    summary = {
        "points": counts.points,
        "components": components,
        "mismatches": mismatches,
    }
    _emit(config, header, rows, summary, out)
    return EXIT_OK if mismatches == 0 else EXIT_MISMATCH


# --- lehmer ---------------------------------------------------------------------


def cmd_lehmer(config, args, out):
    poly = IntegerPolynomial.parse(args.poly)
    sequence = toral.toral_fix_sequence(poly, args.max_n)
    bits = config.precision_bits
    measure = toral.mahler_measure(poly, precision_bits=bits)
    header = ["n", "delta", "rate"]
    rows = []
    with mp.workprec(bits + 12):
        for n, value in enumerate(sequence.values, start=1):
            rate = mp.log(value) / n if value > 0 else mp.mpf(0)
            rows.append([n, value, _fmt(rate, bits)])
        final_rate = mp.log(sequence.values[-1]) / args.max_n
        summary = {
            "mahler": _fmt(measure.measure, bits),
            "mahler_error_bound": _fmt(measure.error_bound, bits),
            "entropy": _fmt(measure.measure, bits),
            "gap_at_max_n": _fmt(abs(final_rate - measure.measure), bits),
            "near_unit_roots": len(measure.flagged),
        }
    _emit(config, header, rows, summary, out)
    return EXIT_OK


# --- zeta -----------------------------------------------------------------------


def cmd_zeta(config, args, out):
    with open(args.sequence, "r", encoding="utf-8", newline="") as fh:
        sequence = orbits.read_sequence_csv(fh)
    order = args.max_m if args.max_m is not None else sequence.N
    series = zeta.zeta_truncate(sequence, order)
    probe = zeta.rationality_probe(series)
    header = ["m", "numerator", "denominator"]
    rows = [[m, c.numerator, c.denominator] for m, c in enumerate(series.coefficients)]
    if config.output_format == "csv":
        summary = {"probe": json.dumps(probe.to_json(), separators=(",", ":"))}
    else:
        summary = {"probe": probe.to_json()}
    _emit(config, header, rows, summary, out)
    return EXIT_OK


# --- analyze --------------------------------------------------------------------


def cmd_analyze(config, args, out):
    with open(args.sequence, "r", encoding="utf-8", newline="") as fh:
        sequence = orbits.read_sequence_csv(fh)
    bits = config.precision_bits
    diagnostics = orbits.growth_diagnostics(
        sequence, target=None, window_len=args.window, precision_bits=bits
    )
    least = orbits.least_from_fixed(sequence)
    sandwich = orbits.lemma_sandwich_check(sequence, least)
    header = ["n", "value", "log", "rate"]
    rows = [
        [n, sequence.values[n - 1], _fmt(lg, bits), _fmt(rate, bits)]
        for (n, lg, rate) in diagnostics.entries
    ]
    summary = {
        "window_len": diagnostics.window_len,
        "window_inf": _fmt(diagnostics.window_inf, bits),
        "window_sup": _fmt(diagnostics.window_sup, bits),
        "skipped": ";".join(str(n) for n in diagnostics.skipped) or "none",
        "sandwich_ok": sandwich.ok,
        "sandwich_violations": (
            ";".join("%d:%s" % (v.r, v.inequality) for v in sandwich.violations) or "none"
        ),
    }
    _emit(config, header, rows, summary, out)
    return EXIT_OK


# --- primes ---------------------------------------------------------------------


def cmd_primes(config, args, out):
    bits = config.precision_bits
    header = ["n", "p", "ratio"]
    rows = []
    worst = None
    with mp.workprec(bits + 12):
        for n in range(1, args.max_n + 1):
            found = numtheory.least_prime_congruent_one(n)
            ratio = found.p / mp.mpf(n) ** numtheory.PRIME_BOUND_EXPONENT
            rows.append([n, found.p, _fmt(ratio, bits)])
            if n >= 2 and (worst is None or ratio > worst[1]):
                worst = (n, ratio)
        summary = {
            "bound_exponent": numtheory.PRIME_BOUND_EXPONENT,
            "bound_constant": numtheory.PRIME_BOUND_CONSTANT,
            "max_ratio": _fmt(worst[1], bits) if worst else "none",
            "max_ratio_n": worst[0] if worst else "none",
        }
    _emit(config, header, rows, summary, out)
    return EXIT_OK


# --- parser ----------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument(
        "--format", choices=("csv", "json"), default="csv", help="output format"
    )
    common.add_argument(
        "--precision-bits",
        type=int,
        default=None,
        help="fractional bits for logs and rates (default: $%s or %d)"
        % (PRECISION_ENV_VAR, DEFAULT_PRECISION_BITS),
    )
    common.add_argument(
        "--seed", type=int, default=0, help="seed for any randomized generation"
    )

    parser = argparse.ArgumentParser(
        prog="perigee",
        description="Exact periodic-point counting for product-group automorphism plans.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser(
        "construct",
        parents=[common],
        help="build a plan and tabulate its exact period counts",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--C", help="finite growth target, as a/b or an exact decimal")
    p.add_argument("--target", help="zero | infinite (or a rational, same as --C)")
    p.add_argument(
        "--strategy",
        choices=(
            construction.STRATEGY_PAPER,
            construction.STRATEGY_COMPENSATED,
            construction.STRATEGY_SUBEXPONENTIAL,
        ),
        default=None,
        help="exponent strategy for finite targets (default: paper)",
    )
    p.add_argument("--gamma", help="exponent for the subexponential strategy, in (0,1)")
    p.add_argument("--max-n", type=int, required=True, help="plan horizon")
    p.add_argument("--window", type=int, default=10, help="trailing rate window length")
    p.add_argument("--plan-out", help="also save the plan as JSON to this path")
    p.add_argument(
        "--sequence-out",
        help="also write the period counts in the shared n,value CSV format",
    )
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser(
        "oracle",
        parents=[common],
        help="enumerate a truncated plan and compare with closed forms",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--plan", required=True, help="plan JSON file")
    p.add_argument("--components", type=int, default=None, help="truncation (default: all)")
    p.add_argument("--max-n", type=int, default=None, help="tally periods up to this n")
    p.add_argument(
        "--max-points",
        type=int,
        default=construction.DEFAULT_ENUMERATION_BUDGET,
        help="enumeration budget",
    )
    p.set_defaults(func=cmd_oracle)

    p = sub.add_parser(
        "lehmer",
        parents=[common],
        help="delta_n table and Mahler measure for a monic integer polynomial",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    # Let coefficient lists with a leading minus (e.g. --poly -2,1) parse as
    # values rather than option strings.
    p._negative_number_matcher = re.compile(r"^-\d")
    p.add_argument("--poly", required=True, help="coefficients c0,c1,...,cd with cd = 1")
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_lehmer)

    p = sub.add_parser(
        "zeta",
        parents=[common],
        help="truncated zeta coefficients and rationality probe for a sequence file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--sequence", required=True, help="CSV file with header n,value")
    p.add_argument("--max-m", type=int, default=None, help="truncation order (default: all)")
    p.set_defaults(func=cmd_zeta)

    p = sub.add_parser(
        "analyze",
        parents=[common],
        help="growth diagnostics and sandwich checks for a sequence file",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--sequence", required=True, help="CSV file with header n,value")
    p.add_argument("--window", type=int, default=10, help="trailing rate window length")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser(
        "primes",
        parents=[common],
        help="least primes ≡ 1 (mod n) with the n**5.5 bound ratio",
        formatter_class=argparse.ArgumentDefaultsHelpFormatter,
    )
    p.add_argument("--max-n", type=int, required=True)
    p.set_defaults(func=cmd_primes)

    return parser


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        precision_bits = (
            args.precision_bits if args.precision_bits is not None else _default_precision_bits()
        )
        if precision_bits < 8:
            raise ValueError("--precision-bits must be at least 8")
        config = RunConfig(
            command=args.command,
            output_format=args.format,
            precision_bits=precision_bits,
            seed=args.seed,
            parameters={},
        )
        return args.func(config, args, sys.stdout)
    except BudgetError as exc:
        print("budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except PrecisionError as exc:
        print("precision budget exceeded: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except DegeneracyError as exc:
        print(
            "degenerate polynomial: vanishes on cyclotomic index %d" % exc.cyclotomic_index,
            file=sys.stderr,
        )
        return EXIT_DEGENERATE
    except (ValueError, OSError, KeyError, json.JSONDecodeError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_CONFIG


if __name__ == "__main__":
    sys.exit(main())
