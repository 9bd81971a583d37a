"""Command line front end.

Subcommands:
  coeffs   print a coefficient table for one weight
  largen   print a large-N series for the shifted free energy
  mc       Monte Carlo estimate of a trace-moment integral, with the
           exact sector value when one is available
  tensor   exact value of a single tensor-level integral
  verify   run consistency suites and exit nonzero on failure

Results go to stdout as JSON (or latex/csv where supported); progress
and diagnostics go to stderr.  Exit codes: 0 success, 1 a verification
comparison failed, 2 usage error.
"""
from __future__ import annotations

import argparse
import csv
import io
import json
import sys
from fractions import Fraction

import numpy as np

from .exactmath import RatFuncN
from .haar_mc import (
    SPECIAL_UNITARY,
    UNITARY,
    GroupSpec,
    compare,
    estimate_monomial,
    estimate_trace_moment,
    random_source_matrices,
)
from .largen import (
    TraceSeries,
    shifted_free_energy_closed,
    shifted_free_energy_fixedpoint,
    shifted_free_energy_from_tables,
    strong_coupling_series,
)
from .partitions import Partition, enumerate_partitions
from .reference import reference_table, reference_weights
from .su_shifted import (
    check_shift_identity,
    epsilon_integral,
    eval_shifted,
    shifted_table,
    shifted_table_recursive,
)
from .weingarten import (
    MAX_TENSOR_WEIGHT,
    MAX_WEIGHT,
    CoeffTable,
    SectorError,
    SourceMatrices,
    eval_ordinary,
    monomial_integral,
    weingarten_table_character,
    weingarten_table_recursive,
)

WEINGARTEN = "weingarten"
SU_SHIFTED = "su-shifted"

_TABLE_BUILDERS = {
    (WEINGARTEN, "character"): weingarten_table_character,
    (WEINGARTEN, "recursion"): weingarten_table_recursive,
    (SU_SHIFTED, "shift"): shifted_table,
    (SU_SHIFTED, "recursion"): shifted_table_recursive,
}
_DEFAULT_METHOD = {WEINGARTEN: "character", SU_SHIFTED: "shift"}


def _emit(text: str, output: str | None) -> None:
    if output:
        with open(output, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _json_text(payload: dict) -> str:
    return json.dumps(payload, indent=2) + "\n"


def _frac_str(x: Fraction) -> str:
    return str(x)


def _frac_latex(x: Fraction) -> str:
    if x.denominator == 1:
        return str(x.numerator)
    sign = "-" if x < 0 else ""
    return sign + r"\frac{%d}{%d}" % (abs(x.numerator), x.denominator)


def _ratfunc_latex(val: RatFuncN) -> str:
    from .exactmath import format_poly

    num = format_poly(val.num)
    if val.is_polynomial:
        if val.den.leading == 1:
            return num
        return r"\frac{%s}{%s}" % (num, val.den.leading)
    return r"\frac{%s}{%s}" % (num, format_poly(val.den))


def _partition_label(alpha: Partition) -> str:
    return "[%s]" % alpha.to_string() if alpha.weight else "[]"


# ---------------------------------------------------------------- coeffs

def _render_table(table: CoeffTable, fmt: str) -> str:
    if fmt == "json":
        return _json_text(table.as_json_dict())
    if fmt == "csv":
        buf = io.StringIO()
        writer = csv.writer(buf)
        writer.writerow(["partition", "value"])
        for alpha in enumerate_partitions(table.n):
            writer.writerow([alpha.to_string(), str(table[alpha])])
        return buf.getvalue()
    lines = [r"\begin{array}{ll}"]
    for alpha in enumerate_partitions(table.n):
        lines.append(r"%s & %s \\" % (_partition_label(alpha),
                                      _ratfunc_latex(table[alpha])))
    lines.append(r"\end{array}")
    return "\n".join(lines) + "\n"


def _cmd_coeffs(args: argparse.Namespace) -> int:
    method = args.method or _DEFAULT_METHOD[args.family]
    builder = _TABLE_BUILDERS.get((args.family, method))
    if builder is None:
        print("error: method %r does not apply to family %r"
              % (method, args.family), file=sys.stderr)
        return 2
    if not 1 <= args.n <= MAX_WEIGHT:
        print("error: --n must be in 1..%d" % MAX_WEIGHT, file=sys.stderr)
        return 2
    table = builder(args.n)
    _emit(_render_table(table, args.format), args.output)
    return 0


# ---------------------------------------------------------------- largen

def _series_payload(series: TraceSeries, target: str, method: str) -> dict:
    terms = []
    for grade, alpha, coeff in series.sorted_terms():
        terms.append({
            "grade": grade,
            "kappa_power": grade * series.kappa_power_per_grade,
            "partition": alpha.to_string(),
            "coefficient": _frac_str(coeff),
        })
    return {"target": target, "order": series.max_order,
        "method": method, "trace_symbol": series.trace_symbol,
        "terms": terms}


def _series_latex(series: TraceSeries) -> str:
    sym = series.trace_symbol
    sym = {"tau": r"\tau"}.get(sym, sym)
    lines = []
    for grade, alpha, coeff in series.sorted_terms():
        mono = " ".join(
            "%s_%d" % (sym, q) if m == 1 else "%s_%d^{%d}" % (sym, q, m)
            for q, m in alpha.items()) or "1"
        lines.append(r"\tilde\kappa^{%d} \cdot %s \, %s"
                     % (grade * series.kappa_power_per_grade,
                        _frac_latex(coeff), mono))
    return "\n".join(lines) + "\n"


def _wd_series(method: str, order: int) -> TraceSeries:
    if method == "closed":
        return shifted_free_energy_closed(order)
    if method == "fixedpoint":
        return shifted_free_energy_fixedpoint(order)
    return shifted_free_energy_from_tables(order)


def _cmd_largen(args: argparse.Namespace) -> int:
    if args.order < 1:
        print("error: --order must be >= 1", file=sys.stderr)
        return 2
    if args.target == "ww":
        if args.method not in (None, "closed"):
            print("error: target 'ww' supports only --method closed",
                  file=sys.stderr)
            return 2
        if args.compare:
            print("error: --compare applies to target 'wd' only",
                  file=sys.stderr)
            return 2
        series = strong_coupling_series(args.order)
        payload = _series_payload(series, "ww", "closed")
        text = (_series_latex(series) if args.format == "latex"
                else _json_text(payload))
        _emit(text, args.output)
        return 0

    method = args.method or "closed"
    if method == "finite-n" and args.order > 4:
        print("error: --method finite-n supports --order <= 4",
              file=sys.stderr)
        return 2
    series = _wd_series(method, args.order)
    payload = _series_payload(series, "wd", method)
    status = 0
    if args.compare:
        others = [m for m in ("closed", "fixedpoint", "finite-n")
                  if m != method and not (m == "finite-n"
                                          and args.order > 4)]
        mismatches = []
        for other in others:
            alt = _wd_series(other, args.order)
            if alt != series:
                keys = set(series.terms) | set(alt.terms)
                for key in sorted(keys, key=lambda k: (k[0], str(k[1]))):
                    a = series.terms.get(key, Fraction(0))
                    b = alt.terms.get(key, Fraction(0))
                    if a != b:
                        mismatches.append({
                            "method": other, "grade": key[0],
                            "partition": key[1].to_string(),
                            "expected": _frac_str(a), "got": _frac_str(b)})
        payload["compare"] = {"methods": others,
                              "identical": not mismatches,
                              "mismatches": mismatches}
        if mismatches:
            status = 1
    text = (_series_latex(series) if args.format == "latex"
            else _json_text(payload))
    _emit(text, args.output)
    return status


# ------------------------------------------------------------------- mc

def _group_spec(name: str, dim: int) -> GroupSpec:
    group = SPECIAL_UNITARY if name == "special-unitary" else UNITARY
    return GroupSpec(group, dim)


def _exact_trace_moment(p: int, n: int, src: SourceMatrices,
                        group: str) -> tuple[complex | None, str]:
    """Exact value of the (p, n) trace-moment integral when known.

    Returns (value, sector label); value is None when the sector is
    outside the implemented range.
    """
    dim = src.dim
    if group == "unitary":
        if p != n:
            return 0.0, "unbalanced"
        if n == 0:
            return 1.0, "trivial"
        if n < dim and n <= MAX_WEIGHT:
            return complex(eval_ordinary(n, src)), "balanced"
        return None, "balanced-high-weight"
    diff = p - n
    if diff % dim != 0:
        return 0.0, "charge-mismatch"
    if diff == 0:
        if n == 0:
            return 1.0, "trivial"
        if n < dim and n <= MAX_WEIGHT:
            return complex(eval_ordinary(n, src)), "balanced"
        return None, "balanced-high-weight"
    if diff == dim and n < dim and n <= MAX_WEIGHT:
        val = complex(np.linalg.det(src.K)) if n == 0 \
            else complex(eval_shifted(n, src))
        return val, "shifted"
    return None, "outside-range"


def _cmd_mc(args: argparse.Namespace) -> int:
    if args.p < 0 or args.n < 0:
        print("error: --p and --n must be >= 0", file=sys.stderr)
        return 2
    if args.matrices:
        src = SourceMatrices.from_json_file(args.matrices)
        if src.dim != args.N:
            print("error: matrices file has N=%d, not %d"
                  % (src.dim, args.N), file=sys.stderr)
            return 2
    else:
        src = random_source_matrices(args.N, args.seed)
    spec = _group_spec(args.group, args.N)
    print("sampling %d matrices from %s(%d)"
          % (args.samples, "SU" if spec.group == SPECIAL_UNITARY else "U",
             args.N), file=sys.stderr)
    est = estimate_trace_moment(args.p, args.n, src, spec,
                                samples=args.samples, seed=args.seed)
    exact, sector = _exact_trace_moment(args.p, args.n, src, spec.group)
    payload = {"p": args.p, "n": args.n, "N": args.N,
               "group": args.group, "sector": sector,
               "estimate": est.as_json_dict()}
    status = 0
    if exact is None:
        payload["exact"] = None
        payload["comparison"] = None
    else:
        report = compare(est, exact, sigmas=args.sigmas)
        payload["exact"] = report["exact"]
        payload["comparison"] = report
        if not report["pass"]:
            status = 1
    _emit(_json_text(payload), args.output)
    return status


# --------------------------------------------------------------- tensor

def _parse_index_pairs(text: str) -> tuple[list[int], list[int]]:
    rows: list[int] = []
    cols: list[int] = []
    text = text.strip()
    if not text:
        return rows, cols
    for chunk in text.split(","):
        a, _, b = chunk.partition(":")
        rows.append(int(a))
        cols.append(int(b))
    return rows, cols


def _cmd_tensor(args: argparse.Namespace) -> int:
    try:
        i, j = _parse_index_pairs(args.u)
        k, l = _parse_index_pairs(args.udagger)
    except ValueError:
        print("error: index lists look like '1:2,3:1'", file=sys.stderr)
        return 2
    dim = args.N
    p, n = len(i), len(k)
    if max(p, n) > MAX_TENSOR_WEIGHT:
        print("error: at most %d factors of each kind"
              % MAX_TENSOR_WEIGHT, file=sys.stderr)
        return 2
    if any(x < 1 for x in i + j + k + l):
        print("error: indices are 1-based", file=sys.stderr)
        return 2

    exact: Fraction | None = None
    sector = "outside-range"
    if args.group == "unitary":
        if p != n:
            exact, sector = Fraction(0), "unbalanced"
        elif p < dim:
            exact, sector = monomial_integral(i, j, k, l, dim), "balanced"
        else:
            sector = "balanced-high-weight"
    else:
        diff = p - n
        if diff % dim != 0:
            exact, sector = Fraction(0), "charge-mismatch"
        elif diff == 0:
            if p < dim:
                exact, sector = monomial_integral(i, j, k, l, dim), \
                    "balanced"
            else:
                sector = "balanced-high-weight"
        elif diff == dim and n == 0:
            exact, sector = epsilon_integral(i, j, dim), "epsilon"

    payload = {"N": dim, "group": args.group, "sector": sector,
               "u": args.u, "udagger": args.udagger,
               "exact": None if exact is None else str(exact),
               "exact_float": None if exact is None else float(exact)}
    status = 0
    if args.mc_samples:
        spec = _group_spec(args.group, dim)
        est = estimate_monomial(i, j, k, l, spec,
                                samples=args.mc_samples, seed=args.seed)
        payload["estimate"] = est.as_json_dict()
        if exact is not None:
            report = compare(est, complex(exact), sigmas=args.sigmas)
            payload["comparison"] = report
            if not report["pass"]:
                status = 1
    _emit(_json_text(payload), args.output)
    return status


# --------------------------------------------------------------- verify

def _suite_tables() -> list[dict]:
    checks = []
    for family in (WEINGARTEN, SU_SHIFTED):
        primary, secondary = ((weingarten_table_character,
                               weingarten_table_recursive)
                              if family == WEINGARTEN else
                              (shifted_table, shifted_table_recursive))
        for n in reference_weights(family):
            ref = reference_table(family, n)
            got = primary(n)
            ok = all(got[alpha] == val for alpha, val in ref.items())
            checks.append({"name": "%s n=%d vs packaged" % (family, n),
                           "pass": ok})
        for n in range(1, 6):
            ok = primary(n).entries == secondary(n).entries
            checks.append({"name": "%s n=%d dual route" % (family, n),
                           "pass": ok})
    return checks


def _suite_shift() -> list[dict]:
    checks = []
    for n in range(1, 6):
        rows = check_shift_identity(n)
        ok = all(row["ok"] for row in rows)
        checks.append({"name": "shift identity n=%d" % n, "pass": ok})
    return checks


def _suite_largen() -> list[dict]:
    checks = []
    closed = shifted_free_energy_closed(8)
    checks.append({"name": "wd closed == fixedpoint to order 8",
                   "pass": closed == shifted_free_energy_fixedpoint(8)})
    checks.append({
        "name": "wd closed == finite-n route to order 4",
        "pass": (closed.truncated(4)
                 == shifted_free_energy_from_tables(4))})
    ww = strong_coupling_series(4)
    expected_g4 = {
        Partition.from_string("1^4"): Fraction(6),
        Partition.from_string("1^2 2^1"): Fraction(-12),
        Partition.from_string("2^2"): Fraction(9, 4),
        Partition.from_string("1^1 3^1"): Fraction(5),
        Partition.from_string("4^1"): Fraction(-5, 4),
    }
    checks.append({"name": "ww grade-4 slice",
                   "pass": ww.grade_slice(4) == expected_g4})
    return checks


def _suite_mc(samples: int, seed: int) -> list[dict]:
    checks = []
    dim = 3
    src = random_source_matrices(dim, seed)
    su = GroupSpec(SPECIAL_UNITARY, dim)
    cases = [
        ("Z(1,1) balanced", 1, 1, complex(eval_ordinary(1, src))),
        ("Z(2,2) balanced", 2, 2, complex(eval_ordinary(2, src))),
        ("Z(3,0) pure det", 3, 0, complex(np.linalg.det(src.K))),
        ("Z(4,1) shifted", 4, 1, complex(eval_shifted(1, src))),
        ("Z(5,2) shifted", 5, 2, complex(eval_shifted(2, src))),
        ("Z(2,1) charge mismatch", 2, 1, 0.0),
        ("Z(3,1) charge mismatch", 3, 1, 0.0),
    ]
    for name, p, n, exact in cases:
        est = estimate_trace_moment(p, n, src, su,
                                    samples=samples, seed=seed)
        report = compare(est, exact)
        checks.append({"name": name, "pass": report["pass"],
                       "pull": [report["pull_real"],
                                report["pull_imag"]]})
    su2 = GroupSpec(SPECIAL_UNITARY, 2)
    for cols in ([1, 2], [2, 1]):
        est = estimate_monomial([1, 2], cols, [], [], su2,
                                samples=samples, seed=seed)
        exact = complex(epsilon_integral([1, 2], cols, 2))
        report = compare(est, exact)
        checks.append({"name": "SU(2) bare pair cols=%s" % (cols,),
                       "pass": report["pass"],
                       "pull": [report["pull_real"],
                                report["pull_imag"]]})
    return checks


def _cmd_verify(args: argparse.Namespace) -> int:
    suites = {
        "tables": lambda: _suite_tables(),
        "shift": lambda: _suite_shift(),
        "largen": lambda: _suite_largen(),
        "mc": lambda: _suite_mc(args.samples, args.seed),
    }
    names = list(suites) if args.suite == "all" else [args.suite]
    payload = {"suites": {}, "pass": True}
    for name in names:
        print("running suite %r" % name, file=sys.stderr)
        checks = suites[name]()
        ok = all(c["pass"] for c in checks)
        payload["suites"][name] = {"pass": ok, "checks": checks}
        payload["pass"] = payload["pass"] and ok
    _emit(_json_text(payload), args.output)
    return 0 if payload["pass"] else 1


# --------------------------------------------------------------- parser

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="sunint",
        description="exact and Monte Carlo moments of Haar-random "
                    "unitary matrix elements")
    sub = parser.add_subparsers(dest="command", required=True)

    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--output", help="write result to a file "
                                         "instead of stdout")

    p_coeffs = sub.add_parser(
        "coeffs", parents=[common],
        help="coefficient table for one weight")
    p_coeffs.add_argument("--family", required=True,
                          choices=[WEINGARTEN, SU_SHIFTED])
    p_coeffs.add_argument("--n", type=int, required=True,
                          help="total weight, 1..%d" % MAX_WEIGHT)
    p_coeffs.add_argument("--method",
                          choices=["character", "recursion", "shift"])
    p_coeffs.add_argument("--format", default="json",
                          choices=["json", "latex", "csv"])
    p_coeffs.set_defaults(handler=_cmd_coeffs)

    p_largen = sub.add_parser(
        "largen", parents=[common],
        help="large-N series of the shifted free energy")
    p_largen.add_argument("target", choices=["wd", "ww"])
    p_largen.add_argument("--order", type=int, required=True)
    p_largen.add_argument("--method",
                          choices=["closed", "fixedpoint", "finite-n"])
    p_largen.add_argument("--compare", action="store_true",
                          help="cross-check against the other routes")
    p_largen.add_argument("--format", default="json",
                          choices=["json", "latex"])
    p_largen.set_defaults(handler=_cmd_largen)

    p_mc = sub.add_parser(
        "mc", parents=[common],
        help="Monte Carlo estimate of a trace-moment integral")
    p_mc.add_argument("--p", type=int, required=True,
                      help="power of tr(KU)")
    p_mc.add_argument("--n", type=int, required=True,
                      help="power of tr(J U^dagger)")
    p_mc.add_argument("--N", type=int, required=True)
    p_mc.add_argument("--group", default="special-unitary",
                      choices=["special-unitary", "unitary"])
    p_mc.add_argument("--samples", type=int, default=100_000)
    p_mc.add_argument("--seed", type=int, default=0)
    p_mc.add_argument("--sigmas", type=float, default=5.0)
    p_mc.add_argument("--matrices",
                      help="JSON file with source matrices J and K")
    p_mc.set_defaults(handler=_cmd_mc)

    p_tensor = sub.add_parser(
        "tensor", parents=[common],
        help="exact single tensor-level integral")
    p_tensor.add_argument("--N", type=int, required=True)
    p_tensor.add_argument("--u", default="",
                          help="row:col pairs for plain factors, "
                               "e.g. '1:2,2:1'")
    p_tensor.add_argument("--udagger", default="",
                          help="row:col pairs for conjugate factors")
    p_tensor.add_argument("--group", default="special-unitary",
                          choices=["special-unitary", "unitary"])
    p_tensor.add_argument("--mc-samples", type=int, default=0,
                          help="also cross-check by sampling")
    p_tensor.add_argument("--seed", type=int, default=0)
    p_tensor.add_argument("--sigmas", type=float, default=5.0)
    p_tensor.set_defaults(handler=_cmd_tensor)

    p_verify = sub.add_parser(
        "verify", parents=[common],
        help="run consistency suites")
    p_verify.add_argument("--suite", default="all",
                          choices=["tables", "shift", "largen", "mc",
                                   "all"])
    p_verify.add_argument("--samples", type=int, default=100_000)
    p_verify.add_argument("--seed", type=int, default=0)
    p_verify.set_defaults(handler=_cmd_verify)

    return parser


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.handler(args)
    except SectorError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2
    except (OSError, ValueError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
