"""Command-line entry point.

Data records go to standard output (one per line; plain, JSON-lines, or
CSV), all human-readable decoration (banners, timing) goes to standard
error, so the tool composes in pipelines.  Exit codes: 0 success,
1 exact-identity violation or oracle mismatch, 2 usage error,
3 statistical-tolerance failure.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import os
import re
import sys
import time
from fractions import Fraction
from typing import Iterable, Optional

from . import catalog as catalog_mod
from .exact import HalfInt
from .moments import verify_equal_coeff_form, verify_master, even_moment
from .numeric import SERIES_VARIANTS, evaluate_series, verify_master_float
from .render import decimal15, fraction_str
from .walks import (
    DEFAULT_PATH_BUDGET,
    PathBudgetError,
    PathCount,
    WalkSpec,
    brute_force_return,
    path_count,
    return_probability,
    return_probability_odd,
    simulate_beta_moment,
    simulate_walk,
)

Z_LIMIT = 4.0

EXIT_OK = 0
EXIT_VIOLATED = 1
EXIT_USAGE = 2
EXIT_STATISTICAL = 3


class UsageError(ValueError):
    pass


def _parse_rational(text: str) -> Fraction:
    """Strict command-line rational: an integer or "a/b", no decimals."""
    if re.fullmatch(r"-?\d+(/[1-9]\d*)?", text):
        return Fraction(text)
    raise UsageError(f"expected an integer or a/b rational, got {text!r}")


def _parse_real(text: str) -> float:
    """Float-mode value: rational syntax or a decimal."""
    if re.fullmatch(r"-?\d+(/[1-9]\d*)?", text):
        return float(Fraction(text))
    try:
        return float(text)
    except ValueError:
        raise UsageError(f"expected a number, got {text!r}") from None


def _parse_range(text: str) -> list[int]:
    """"3" or "1..4" (inclusive)."""
    m = re.fullmatch(r"(\d+)(?:\.\.(\d+))?", text)
    if not m:
        raise UsageError(f"expected N or LO..HI, got {text!r}")
    lo = int(m.group(1))
    hi = int(m.group(2)) if m.group(2) else lo
    if hi < lo:
        raise UsageError(f"empty range {text!r}")
    return list(range(lo, hi + 1))


def _default_threads() -> int:
    env = os.environ.get("BETAWALK_THREADS")
    if env is not None:
        try:
            value = int(env)
        except ValueError:
            raise UsageError(f"BETAWALK_THREADS must be an integer, got {env!r}")
        if value < 1:
            raise UsageError("BETAWALK_THREADS must be >= 1")
        return value
    return os.cpu_count() or 1


def _bool(value: bool) -> str:
    return "true" if value else "false"


class Emitter:
    """Serialize one command's records to stdout in the chosen format."""

    def __init__(self, fmt: str, command: str, csv_fields: list[str]):
        self.fmt = fmt
        self.command = command
        self.csv_fields = csv_fields
        self._wrote_header = False

    def emit(self, parameters: dict, payload, status: str,
             plain: str, csv_row: dict) -> None:
        if self.fmt == "json":
            obj = payload.to_json_obj() if hasattr(payload, "to_json_obj") else payload
            print(json.dumps({
                "command": self.command,
                "parameters": parameters,
                "payload": obj,
                "status": status,
            }))
        elif self.fmt == "csv":
            buf = io.StringIO()
            writer = csv.DictWriter(buf, fieldnames=self.csv_fields,
                                    lineterminator="\n")
            if not self._wrote_header:
                writer.writeheader()
                self._wrote_header = True
            writer.writerow(csv_row)
            print(buf.getvalue(), end="")
        else:
            print(plain)


def _note(message: str) -> None:
    print(message, file=sys.stderr)


def _erratum_banner(entry: catalog_mod.CatalogEntry) -> None:
    if entry.erratum:
        _note(f"ERRATUM [{entry.name}] ({entry.location}): {entry.erratum}")


# ---------------------------------------------------------------------------
# verify
# ---------------------------------------------------------------------------


def _cmd_verify_master(args) -> int:
    threads = args.threads or _default_threads()
    n_values = _parse_range(args.n)
    if (args.coeffs is None) == (args.k is None):
        raise UsageError("give exactly one of --coeffs or --k")
    if args.mode == "exact":
        p = _parse_rational(args.p)
    else:
        p = _parse_real(args.p)
    if not p > 0:
        raise UsageError("p must be > 0")

    coeff_sets: list[tuple] = []
    if args.coeffs is not None:
        parts = [s for s in args.coeffs.split(",") if s]
        if not parts:
            raise UsageError("--coeffs must list at least one value")
        if args.mode == "exact":
            coeff_sets.append(tuple(_parse_rational(s) for s in parts))
        else:
            coeff_sets.append(tuple(_parse_real(s) for s in parts))
    else:
        for k in _parse_range(args.k):
            if k < 1:
                raise UsageError("k must be >= 1")
            one = Fraction(1) if args.mode == "exact" else 1.0
            coeff_sets.append((one,) * k)
    for cs in coeff_sets:
        if any(not c > 0 for c in cs):
            raise UsageError("coefficients must be positive")
    for n in n_values:
        if n < 1:
            raise UsageError("n must be >= 1")

    if args.mode == "exact":
        fields = ["n", "k", "p", "coeffs", "mode", "lhs", "rhs", "verified"]
    else:
        fields = ["n", "k", "p", "coeffs", "mode", "lhs", "rhs", "abs_diff",
                  "rel_diff", "condition_number", "tolerance", "passed"]
    out = Emitter(args.format, "verify master", fields)
    started = time.perf_counter()
    all_good = True
    for n in n_values:
        for cs in coeff_sets:
            coeff_text = ",".join(str(c) for c in cs)
            params = {"n": n, "k": len(cs), "p": str(p), "coeffs": coeff_text,
                      "mode": args.mode, "threads": threads}
            if args.mode == "exact":
                rep = verify_master(n, cs, p, threads=threads)
                status = "ok" if rep.verified else "violated"
                all_good &= rep.verified
                out.emit(
                    params, rep, status,
                    plain=(f"master n={n} k={len(cs)} p={p} coeffs={coeff_text} "
                           f"lhs={rep.lhs} rhs={rep.rhs} "
                           f"verified={_bool(rep.verified)}"),
                    csv_row={"n": n, "k": len(cs), "p": p,
                             "coeffs": coeff_text, "mode": "exact",
                             "lhs": str(rep.lhs), "rhs": str(rep.rhs),
                             "verified": _bool(rep.verified)},
                )
            else:
                fv = verify_master_float(n, cs, p, tolerance=args.tolerance)
                status = "ok" if fv.passed else "violated"
                all_good &= fv.passed
                out.emit(
                    params, fv, status,
                    plain=(f"master-float n={n} k={len(cs)} p={p!r} "
                           f"coeffs={coeff_text} lhs={fv.lhs!r} rhs={fv.rhs!r} "
                           f"relDiff={fv.rel_diff!r} "
                           f"cond={fv.condition_number!r} "
                           f"passed={_bool(fv.passed)}"),
                    csv_row={"n": n, "k": len(cs), "p": repr(p),
                             "coeffs": coeff_text, "mode": "float",
                             "lhs": repr(fv.lhs), "rhs": repr(fv.rhs),
                             "abs_diff": repr(fv.abs_diff),
                             "rel_diff": repr(fv.rel_diff),
                             "condition_number": repr(fv.condition_number),
                             "tolerance": repr(fv.tolerance),
                             "passed": _bool(fv.passed)},
                )
    _note(f"# verify master: {time.perf_counter() - started:.3f}s, "
          f"threads={threads}")
    return EXIT_OK if all_good else EXIT_VIOLATED


def _cmd_verify_equal_coeff(args) -> int:
    threads = args.threads or _default_threads()
    p = _parse_rational(args.p)
    if not p > 0:
        raise UsageError("p must be > 0")
    fields = ["n", "k", "p", "lhs", "rhs", "verified"]
    out = Emitter(args.format, "verify equal-coeff", fields)
    started = time.perf_counter()
    all_good = True
    for n in _parse_range(args.n):
        for k in _parse_range(args.k):
            if n < 1 or k < 1:
                raise UsageError("n and k must be >= 1")
            rep = verify_equal_coeff_form(n, k, p, threads=threads)
            all_good &= rep.verified
            params = {"n": n, "k": k, "p": str(p), "threads": threads}
            out.emit(
                params, rep, "ok" if rep.verified else "violated",
                plain=(f"equal-coeff n={n} k={k} p={p} lhs={rep.lhs} "
                       f"rhs={rep.rhs} verified={_bool(rep.verified)}"),
                csv_row={"n": n, "k": k, "p": p, "lhs": str(rep.lhs),
                         "rhs": str(rep.rhs),
                         "verified": _bool(rep.verified)},
            )
    _note(f"# verify equal-coeff: {time.perf_counter() - started:.3f}s, "
          f"threads={threads}")
    return EXIT_OK if all_good else EXIT_VIOLATED


# ---------------------------------------------------------------------------
# compute
# ---------------------------------------------------------------------------


def _even_steps(args) -> tuple[int, bool]:
    """Returns (half_steps, odd_shortcut); odd steps need --allow-odd."""
    if args.steps < 1:
        raise UsageError("steps must be >= 1")
    if args.steps % 2:
        if not args.allow_odd:
            raise UsageError(
                f"steps={args.steps} is odd (parity forces probability 0); "
                f"pass --allow-odd to print the exact 0")
        return args.steps, True
    return args.steps // 2, False


def _cmd_compute(args) -> int:
    if args.what in ("return-prob", "path-count"):
        if args.dim is None or args.steps is None:
            raise UsageError(f"{args.what} needs --dim and --steps")
        if args.dim < 1:
            raise UsageError("dim must be >= 1")
        half, odd = _even_steps(args)
        if args.what == "return-prob":
            value = (return_probability_odd(args.dim, args.steps) if odd
                     else return_probability(args.dim, half))
            out = Emitter(args.format, "compute return-prob",
                          ["dim", "steps", "probability", "decimal"])
            params = {"dim": args.dim, "steps": args.steps}
            out.emit(params,
                     {"probability": fraction_str(value),
                      "decimal": decimal15(value)},
                     "ok",
                     plain=f"{fraction_str(value)} {decimal15(value)}",
                     csv_row={"dim": args.dim, "steps": args.steps,
                              "probability": fraction_str(value),
                              "decimal": decimal15(value)})
            return EXIT_OK
        if odd:  # no closed path of odd length exists
            pc = PathCount(0, (2 * args.dim) ** args.steps)
        else:
            pc = path_count(args.dim, half)
        out = Emitter(args.format, "compute path-count",
                      ["dim", "steps", "count", "total_paths", "probability",
                       "decimal"])
        params = {"dim": args.dim, "steps": args.steps}
        out.emit(params, pc, "ok",
                 plain=(f"{pc.count}/{pc.total_paths} "
                        f"{decimal15(pc.probability)}"),
                 csv_row={"dim": args.dim, "steps": args.steps,
                          "count": pc.count, "total_paths": pc.total_paths,
                          "probability": fraction_str(pc.probability),
                          "decimal": decimal15(pc.probability)})
        return EXIT_OK

    # moment
    if args.n is None or args.p is None:
        raise UsageError("moment needs --n and --p")
    if args.n < 1:
        raise UsageError("n must be >= 1")
    p = _parse_rational(args.p)
    if not p > 0:
        raise UsageError("p must be > 0")
    try:
        value = even_moment(args.n, HalfInt.of(p))
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    # the sqrt(pi) powers cancel; the moment is a plain rational
    moment = value.coeff
    out = Emitter(args.format, "compute moment",
                  ["n", "p", "value", "decimal"])
    params = {"n": args.n, "p": str(p)}
    out.emit(params,
             {"value": fraction_str(moment), "decimal": decimal15(moment)},
             "ok",
             plain=f"{fraction_str(moment)} {decimal15(moment)}",
             csv_row={"n": args.n, "p": p, "value": fraction_str(moment),
                      "decimal": decimal15(moment)})
    return EXIT_OK


# ---------------------------------------------------------------------------
# oracle
# ---------------------------------------------------------------------------


def _cmd_oracle(args) -> int:
    if args.dim < 1:
        raise UsageError("dim must be >= 1")
    if args.steps < 1 or args.steps % 2:
        raise UsageError("oracle needs a positive even --steps")
    half = args.steps // 2
    try:
        pc = brute_force_return(args.dim, half, budget=args.budget)
    except PathBudgetError as exc:
        raise UsageError(str(exc)) from None
    expected = return_probability(args.dim, half)
    matches = pc.probability == expected
    out = Emitter(args.format, "oracle",
                  ["dim", "steps", "count", "total_paths", "probability",
                   "expected", "matches"])
    params = {"dim": args.dim, "steps": args.steps, "budget": args.budget}
    payload = dict(pc.to_json_obj(), expected=fraction_str(expected),
                   matches=matches)
    out.emit(params, payload, "ok" if matches else "violated",
             plain=(f"{pc.count}/{pc.total_paths} "
                    f"{'match' if matches else 'MISMATCH'}"),
             csv_row={"dim": args.dim, "steps": args.steps,
                      "count": pc.count, "total_paths": pc.total_paths,
                      "probability": fraction_str(pc.probability),
                      "expected": fraction_str(expected),
                      "matches": _bool(matches)})
    return EXIT_OK if matches else EXIT_VIOLATED


# ---------------------------------------------------------------------------
# simulate
# ---------------------------------------------------------------------------


def _cmd_simulate(args) -> int:
    workers = args.threads or _default_threads()
    if args.trials < 1:
        raise UsageError("trials must be >= 1")
    if args.dim < 1 or args.n < 1:
        raise UsageError("dim and n must be >= 1")
    if args.kind == "walk":
        result = simulate_walk(WalkSpec(args.dim, args.n), args.trials,
                               args.seed, workers=workers)
    else:
        result = simulate_beta_moment(args.dim, args.n, args.trials,
                                      args.seed, workers=workers)
    ok = abs(result.z_score) < Z_LIMIT
    out = Emitter(args.format, f"simulate {args.kind}",
                  ["kind", "dim", "n", "trials", "seed", "workers", "hits",
                   "estimate", "std_error", "exact", "z_score"])
    params = {"dim": args.dim, "n": args.n, "trials": args.trials,
              "seed": args.seed, "workers": workers}
    hits_text = "" if result.hits is None else str(result.hits)
    out.emit(params, result, "ok" if ok else "violated",
             plain=(f"{args.kind} dim={args.dim} n={args.n} "
                    f"trials={args.trials} seed={args.seed} "
                    f"workers={workers} hits={hits_text} "
                    f"estimate={result.estimate!r} "
                    f"stdError={result.std_error!r} "
                    f"exact={fraction_str(result.exact_reference)} "
                    f"z={result.z_score!r}"),
             csv_row={"kind": args.kind, "dim": args.dim, "n": args.n,
                      "trials": args.trials, "seed": args.seed,
                      "workers": workers, "hits": hits_text,
                      "estimate": repr(result.estimate),
                      "std_error": repr(result.std_error),
                      "exact": fraction_str(result.exact_reference),
                      "z_score": repr(result.z_score)})
    return EXIT_OK if ok else EXIT_STATISTICAL


# ---------------------------------------------------------------------------
# catalog
# ---------------------------------------------------------------------------


def _cmd_catalog(args) -> int:
    if args.action == "list":
        out = Emitter(args.format, "catalog list",
                      ["name", "variant", "location", "parameter_range",
                       "erratum"])
        for entry in catalog_mod.entries():
            _erratum_banner(entry)
            payload = {"name": entry.name, "variant": entry.variant,
                       "location": entry.location,
                       "parameterRange": entry.parameter_range,
                       "erratum": entry.erratum}
            out.emit({"name": entry.name}, payload, "ok",
                     plain=(f"{entry.name} [{entry.variant}] "
                            f"{entry.location}; range: {entry.parameter_range}"),
                     csv_row={"name": entry.name, "variant": entry.variant,
                              "location": entry.location,
                              "parameter_range": entry.parameter_range,
                              "erratum": entry.erratum or ""})
        return EXIT_OK

    names = [args.name] if args.name != "all" else list(catalog_mod.CATALOG)
    for name in names:
        if name not in catalog_mod.CATALOG:
            raise UsageError(f"unknown catalog entry {name!r} "
                             f"(try: {', '.join(catalog_mod.CATALOG)})")
    out = Emitter(args.format, "catalog verify",
                  ["name", "variant", "parameters", "lhs", "rhs", "verified"])
    started = time.perf_counter()
    all_good = True

    def emit_report(rep) -> None:
        variant = rep.parameters.get("variant", "corrected")
        shown = {k: v for k, v in rep.parameters.items() if k != "variant"}
        param_text = ",".join(f"{k}={v}" for k, v in shown.items())
        status = "ok" if (rep.verified or variant == "printed") else "violated"
        out.emit(dict(rep.parameters), rep, status,
                 plain=(f"{rep.identity_name} variant={variant} {param_text} "
                        f"lhs={rep.lhs} rhs={rep.rhs} "
                        f"verified={_bool(rep.verified)}"),
                 csv_row={"name": rep.identity_name, "variant": variant,
                          "parameters": param_text, "lhs": str(rep.lhs),
                          "rhs": str(rep.rhs),
                          "verified": _bool(rep.verified)})

    for name in names:
        entry = catalog_mod.CATALOG[name]
        _erratum_banner(entry)
        for rep in entry.run():
            all_good &= rep.verified
            emit_report(rep)
        if entry.counterexample is not None:
            emit_report(entry.counterexample())
    _note(f"# catalog verify: {time.perf_counter() - started:.3f}s")
    return EXIT_OK if all_good else EXIT_VIOLATED


# ---------------------------------------------------------------------------
# series
# ---------------------------------------------------------------------------


def _cmd_series(args) -> int:
    if args.n < 0:
        raise UsageError("n must be >= 0")
    if args.max_terms < 1:
        raise UsageError("max-terms must be >= 1")
    evaluation = evaluate_series(args.n, args.variant,
                                 max_terms=args.max_terms,
                                 cutoff=args.cutoff)
    out = Emitter(args.format, "series",
                  ["n", "variant", "terms_evaluated", "converged", "diverged",
                   "limit_estimate", "target", "last_term"])
    params = {"n": args.n, "variant": args.variant,
              "maxTerms": args.max_terms, "cutoff": args.cutoff}
    out.emit(params, evaluation, "ok",
             plain=(f"series n={args.n} variant={args.variant} "
                    f"terms={evaluation.terms_evaluated} "
                    f"converged={_bool(evaluation.converged)} "
                    f"diverged={_bool(evaluation.diverged)} "
                    f"limitEstimate={evaluation.limit_estimate!r} "
                    f"target={evaluation.target!r}"),
             csv_row={"n": args.n, "variant": args.variant,
                      "terms_evaluated": evaluation.terms_evaluated,
                      "converged": _bool(evaluation.converged),
                      "diverged": _bool(evaluation.diverged),
                      "limit_estimate": repr(evaluation.limit_estimate),
                      "target": repr(evaluation.target),
                      "last_term": repr(evaluation.terms[-1])})
    return EXIT_OK


# ---------------------------------------------------------------------------
# parser
# ---------------------------------------------------------------------------


def _add_format(parser) -> None:
    parser.add_argument("--format", choices=("plain", "json", "csv"),
                        default="plain", help="output record format")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="betawalk",
        description=("Exact verification of beta-moment identities and "
                     "lattice walk return probabilities."),
    )
    sub = parser.add_subparsers(dest="command", required=True)

    verify = sub.add_parser("verify", help="run exact or float verification")
    vsub = verify.add_subparsers(dest="target", required=True)

    vm = vsub.add_parser("master", help="the two-expansion moment identity")
    vm.add_argument("--n", required=True, help="N or LO..HI")
    vm.add_argument("--coeffs", help="comma-separated weights, e.g. 1/3,1/3")
    vm.add_argument("--k", help="dimension range (unit weights), e.g. 1..4")
    vm.add_argument("--p", required=True, help="beta shape (a/b; decimal in float mode)")
    vm.add_argument("--mode", choices=("exact", "float"), default="exact")
    vm.add_argument("--tolerance", type=float, default=1e-10)
    vm.add_argument("--threads", type=int)
    _add_format(vm)
    vm.set_defaults(handler=_cmd_verify_master)

    ve = vsub.add_parser("equal-coeff",
                         help="coefficient-free symmetric form")
    ve.add_argument("--n", required=True, help="N or LO..HI")
    ve.add_argument("--k", required=True, help="N or LO..HI")
    ve.add_argument("--p", required=True)
    ve.add_argument("--threads", type=int)
    _add_format(ve)
    ve.set_defaults(handler=_cmd_verify_equal_coeff)

    compute = sub.add_parser("compute", help="exact values")
    csub = compute.add_subparsers(dest="what", required=True)
    for what, helptext in (("return-prob", "exact return probability"),
                           ("path-count", "closed-path count"),
                           ("moment", "even moment of the centered beta")):
        cp = csub.add_parser(what, help=helptext)
        if what == "moment":
            cp.add_argument("--n", type=int)
            cp.add_argument("--p")
        else:
            cp.add_argument("--dim", type=int)
            cp.add_argument("--steps", type=int)
            cp.add_argument("--allow-odd", action="store_true")
        _add_format(cp)
        cp.set_defaults(handler=_cmd_compute)

    oracle = sub.add_parser("oracle",
                            help="exhaustive path-enumeration cross-check")
    oracle.add_argument("--dim", type=int, required=True)
    oracle.add_argument("--steps", type=int, required=True)
    oracle.add_argument("--budget", type=int, default=DEFAULT_PATH_BUDGET)
    _add_format(oracle)
    oracle.set_defaults(handler=_cmd_oracle)

    simulate = sub.add_parser("simulate", help="seeded Monte Carlo")
    ssub = simulate.add_subparsers(dest="kind", required=True)
    for kind, helptext in (("walk", "simulate lattice walks"),
                           ("beta", "sample the matching beta moment")):
        sp = ssub.add_parser(kind, help=helptext)
        sp.add_argument("--dim", type=int, required=True)
        sp.add_argument("--n", type=int, required=True,
                        help="half the walk length")
        sp.add_argument("--trials", type=int, required=True)
        sp.add_argument("--seed", type=int, default=0)
        sp.add_argument("--threads", type=int)
        _add_format(sp)
        sp.set_defaults(handler=_cmd_simulate)

    cat = sub.add_parser("catalog", help="identity registry")
    catsub = cat.add_subparsers(dest="action", required=True)
    cl = catsub.add_parser("list", help="list entries and errata")
    _add_format(cl)
    cl.set_defaults(handler=_cmd_catalog)
    cv = catsub.add_parser("verify", help="verify entries over their ranges")
    cv.add_argument("name", nargs="?", default="all")
    _add_format(cv)
    cv.set_defaults(handler=_cmd_catalog)

    series = sub.add_parser("series",
                            help="partial-sum diagnostics for the "
                                 "central-binomial ratio series")
    series.add_argument("--n", type=int, required=True)
    series.add_argument("--variant", choices=SERIES_VARIANTS, required=True)
    series.add_argument("--max-terms", type=int, default=10 ** 6)
    series.add_argument("--cutoff", type=float, default=1e-12)
    _add_format(series)
    series.set_defaults(handler=_cmd_series)

    return parser


def main(argv: Optional[Iterable[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv if argv is None else list(argv))
    try:
        return args.handler(args)
    except UsageError as exc:
        print(f"betawalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ValueError as exc:
        print(f"betawalk: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


def entry_point() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry_point()
