"""Command-line front end: state, sweep, solve, verify.

Exit codes: 0 ok, 1 verification failures, 2 argument errors,
3 degenerate configuration, 4 no sign change in the solver bracket.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import sys

import numpy as np

from . import entanglement, search, verify
from .errors import DegenerateState, DvcvError, InfiniteCoefficient, InvalidConfig, NoSignChange
from .fock import cutoff_for
from .schemes import single_photon, two_photon, oracle, psi, truncated

EXIT_OK, EXIT_VERIFY, EXIT_ARGS, EXIT_DEGENERATE, EXIT_NO_ROOT = 0, 1, 2, 3, 4
AMP_FLOOR = 1e-8
SCHEME_PARAMS = ("beta", "t", "beta1", "t1", "A", "term_count", "input_parity")


class ArgumentError(Exception):
    """Invalid flag combination; the message names the flag."""


def _fmt(x: float) -> str:
    return format(float(x), ".17g")


def parse_complex(text: str, flag: str) -> complex:
    """'0.7' or 're,im'."""
    parts = text.split(",")
    try:
        if len(parts) == 1:
            return complex(float(parts[0]), 0.0)
        if len(parts) == 2:
            return complex(float(parts[0]), float(parts[1]))
    except ValueError:
        pass
    raise ArgumentError(f"{flag}: expected a real number or 're,im', got {text!r}")


def parse_herald(text: str) -> tuple[int, ...]:
    try:
        return tuple(int(v) for v in text.split(","))
    except ValueError:
        raise ArgumentError(f"--herald: expected n or n,k, got {text!r}") from None


def amplitudes(args) -> tuple[complex, complex]:
    if args.a0 is None:
        a0 = complex(1 / math.sqrt(2))
    else:
        a0 = parse_complex(args.a0, "--a0")
    if args.a1 is not None:
        a1 = parse_complex(args.a1, "--a1")
        if abs(abs(a0) ** 2 + abs(a1) ** 2 - 1) > 1e-12:
            raise ArgumentError("--a1: |a0|^2 + |a1|^2 must equal 1")
    else:
        if abs(a0) > 1 + 1e-12:
            raise ArgumentError("--a0: |a0| must not exceed 1")
        a1 = complex(math.sqrt(max(0.0, 1 - abs(a0) ** 2)))
    return a0, a1


def scheme_params(args) -> dict:
    p = {}
    for name in SCHEME_PARAMS:
        v = getattr(args, name, None)
        if v is not None:
            p[name] = v
    if "A" in p:
        p["A"] = parse_complex(p["A"], "--A")
    p["a0"], p["a1"] = amplitudes(args)
    return p


def _require(args, scheme, *names):
    for name in names:
        if getattr(args, name, None) is None:
            raise ArgumentError(f"--{name} is required for scheme {scheme}")


def _check_scheme_flags(args):
    _require(args, args.scheme, "beta", "t")
    if args.scheme == "fig1b":
        _require(args, args.scheme, "beta1", "t1")


# output ---------------------------------------------------------------------


def _emit(args, text: str):
    if args.out:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _csv(rows, header) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows(rows)
    return buf.getvalue()


def _meta(args, command: str, **extra) -> dict:
    params = {k: v for k, v in vars(args).items() if k not in ("func", "out", "format") and v is not None}
    return {"command": command, "parameters": params, "engine": args.engine,
            "cutoffs": {"cv": args.cutoff}, **extra}


# state ------------------------------------------------------------------------


def _analytic_state(args, params, h):
    cfg = search.make_config(args.scheme, params)
    if args.scheme == "fig1a":
        return single_photon.build_conditional_state(cfg, h[0], args.cutoff)
    if args.scheme == "fig1b":
        exact = two_photon.build_exact_conditional if args.form == "exact" else two_photon.build_approximate_conditional
        return exact(cfg, *h, cutoff=args.cutoff)
    if args.scheme == "truncated":
        return truncated.build_truncated_conditional(cfg, int(params.get("term_count", 2)), h[0], args.cutoff)
    return psi.build_psi_conditional(cfg, h[0], args.cutoff)


def _state_rows(args, params, h):
    """(field, branch, n, re, im) rows plus a summary dict."""
    rows = []
    if args.engine == "analytic":
        state = _analytic_state(args, params, h)
        prob = state.probability
        neg = entanglement.negativity_analytic(params["a0"], params["a1"], state.B)
        rows.append(("B", "", "", _fmt(complex(state.B).real), _fmt(complex(state.B).imag)))
        for b in state.branches:
            rows.append(("weight", b.label, "", _fmt(b.weight.real), _fmt(b.weight.imag)))
            for n, a in enumerate(b.cv.amplitudes):
                if abs(a) >= args.floor:
                    rows.append(("cv", b.label, str(n), _fmt(a.real), _fmt(a.imag)))
    else:
        scheme = args.scheme
        cfg = search.make_config(scheme, params)
        cut = args.cutoff or cutoff_for(cfg.beta, int(scheme == "psi"))
        cv_in = search._oracle_input(scheme, params, cut)
        if scheme == "fig1b":
            out = oracle.two_photon_output(cv_in, cfg.a0, cfg.a1, cfg.t, cfg.beta1, cfg.t1)
            rec = oracle.two_photon_outcome(out, *h)
        else:
            rec = oracle.single_photon_outcome(cv_in, cfg.a0, cfg.a1, cfg.t, h[0])
        prob = rec.probability
        if prob == 0.0:
            raise DegenerateState(f"herald {h} has zero probability")
        joint = oracle.two_photon_joint(rec) if scheme == "fig1b" else oracle.single_photon_joint(rec)
        neg = entanglement.negativity_numeric(entanglement.joint_density(joint))
        tens = joint.tensor
        labels = ("01", "10") if scheme == "fig1b" else ("vacuum", "photon")
        for d, label in enumerate(labels):
            for idx in zip(*np.nonzero(np.abs(tens[..., d]) >= args.floor)):
                a = tens[idx + (d,)]
                rows.append(("cv", label, ";".join(str(i) for i in idx), _fmt(a.real), _fmt(a.imag)))
    return rows, {"probability": float(prob), "negativity": float(neg)}


def cmd_state(args) -> int:
    _check_scheme_flags(args)
    if args.herald is None:
        raise ArgumentError("--herald is required")
    params = scheme_params(args)
    h = parse_herald(args.herald)
    rows, summary = _state_rows(args, params, h)
    rows = [("probability", "", "", _fmt(summary["probability"]), "0"),
            ("negativity", "", "", _fmt(summary["negativity"]), "0")] + rows
    if args.format == "json":
        obj = {"columns": ["field", "branch", "n", "re", "im"], "rows": [list(r) for r in rows],
               **summary, "meta": _meta(args, "state")}
        _emit(args, json.dumps(obj, indent=1) + "\n")
    else:
        _emit(args, _csv(rows, ("field", "branch", "n", "re", "im")))
    return EXIT_OK


# sweep ------------------------------------------------------------------------


def cmd_sweep(args) -> int:
    if not args.axis or len(args.axis) != 2:
        raise ArgumentError("--axis must be given exactly twice")
    if args.herald is None:
        raise ArgumentError("--herald is required")
    axes = [search.parse_axis(a) for a in args.axis]
    swept = {name for name, _ in axes}
    needed = {"beta", "t"} | ({"beta1", "t1"} if args.scheme == "fig1b" else set())
    for name in sorted(needed - swept):
        _require(args, args.scheme, name)
    params = scheme_params(args)
    if "a0_squared" in swept:
        params.pop("a0", None)
        params.pop("a1", None)
    grid = search.sweep(args.scheme, parse_herald(args.herald), args.quantity, axes, params,
                        args.engine, args.cutoff)
    for i, j, msg in grid.flags:
        print(f"flagged cell ({i}, {j}): {msg}", file=sys.stderr)
    if args.format == "json":
        obj = json.loads(grid.to_json())
        obj["meta"] = _meta(args, "sweep", axes=[axes[0][0], axes[1][0]], **obj["meta"])
        _emit(args, json.dumps(obj, indent=1) + "\n")
    else:
        _emit(args, grid.to_csv())
    return EXIT_OK


# solve ------------------------------------------------------------------------


FREE_ALIASES = {"beta": "beta", "t": "t", "a0sq": "a0_squared", "a0_squared": "a0_squared"}


def cmd_solve(args) -> int:
    free = FREE_ALIASES.get(args.free)
    if free is None:
        raise ArgumentError(f"--free: expected one of {sorted(FREE_ALIASES)}, got {args.free!r}")
    try:
        lo, hi = (float(v) for v in args.bracket.split(":"))
    except ValueError:
        raise ArgumentError(f"--bracket: expected lo:hi, got {args.bracket!r}") from None
    if args.herald is None:
        raise ArgumentError("--herald is required")
    needed = ["beta", "t"] + (["beta1", "t1"] if args.scheme == "fig1b" else [])
    _require(args, args.scheme, *[n for n in needed if n != free])
    if free != "a0_squared" and getattr(args, free) is not None:
        raise ArgumentError(f"--{free} cannot be fixed while solving for it")
    params = scheme_params(args)
    if free == "a0_squared":
        if args.a0 is not None or args.a1 is not None:
            raise ArgumentError("--a0/--a1 cannot be fixed while solving for a0sq")
        params.pop("a0")
        params.pop("a1")
    q = search.MaxEntanglementQuery(args.scheme, parse_herald(args.herald), params, free, (lo, hi),
                                    args.condition)
    roots = search.solve_max_entanglement(q)
    rows = [(_fmt(r.value), _fmt(r.residual), _fmt(r.probability), _fmt(r.negativity)) for r in roots]
    header = ("value", "residual", "probability", "negativity")
    if args.format == "json":
        obj = {"columns": list(header), "rows": [[float(v) for v in r] for r in rows],
               "meta": _meta(args, "solve", free=free)}
        _emit(args, json.dumps(obj, indent=1) + "\n")
    else:
        _emit(args, _csv(rows, header))
    return EXIT_OK


# verify -----------------------------------------------------------------------


def cmd_verify(args) -> int:
    report = verify.run_all(args.profile, args.only)
    _emit(args, report.to_text())
    c = report.counts()
    print(f"verify: {len(report.checks)} checks, {c['pass']} pass, {c['fail']} fail, "
          f"{c['discrepancy-documented']} discrepancy-documented", file=sys.stderr)
    return EXIT_OK if report.ok else EXIT_VERIFY


# parser -----------------------------------------------------------------------


def _global_options(p: argparse.ArgumentParser, suppress: bool):
    d = (lambda v: argparse.SUPPRESS) if suppress else (lambda v: v)
    p.add_argument("--engine", choices=search.ENGINES, default=d("analytic"))
    p.add_argument("--cutoff", type=int, default=d(None), metavar="N", help="CV mode photon-number cutoff")
    p.add_argument("--format", choices=("csv", "json"), default=d("csv"))
    p.add_argument("--out", default=d(None), metavar="PATH")


def _scheme_options(p: argparse.ArgumentParser):
    p.add_argument("--scheme", choices=search.SCHEMES, default="fig1a")
    p.add_argument("--beta", type=float)
    p.add_argument("--t", type=float)
    p.add_argument("--a0", help="real or 're,im'; a1 follows up to phase")
    p.add_argument("--a1", help="override a1 (normalization is checked)")
    p.add_argument("--beta1", type=float)
    p.add_argument("--t1", type=float)
    p.add_argument("--A", help="psi scheme amplitude, real or 're,im'")
    p.add_argument("--term-count", dest="term_count", type=int, choices=(2, 3))
    p.add_argument("--input-parity", dest="input_parity", choices=("even", "odd"))
    p.add_argument("--herald", help="n, or n,k for the two-photon scheme")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="dvcv", description=__doc__.splitlines()[0])
    _global_options(parser, suppress=False)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("state", help="heralded state, probability and negativity")
    _global_options(p, suppress=True)
    _scheme_options(p)
    p.add_argument("--form", choices=("exact", "approximate"), default="exact", help="two-photon scheme only")
    p.add_argument("--floor", type=float, default=AMP_FLOOR, help="smallest amplitude printed")
    p.set_defaults(func=cmd_state)

    p = sub.add_parser("sweep", help="two-axis grid of one quantity, as CSV")
    _global_options(p, suppress=True)
    _scheme_options(p)
    p.add_argument("--quantity", choices=search.QUANTITIES, required=True)
    p.add_argument("--axis", action="append", metavar="NAME:LO:HI:STEPS")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("solve", help="parameter values giving maximal entanglement")
    _global_options(p, suppress=True)
    _scheme_options(p)
    p.add_argument("--free", required=True, help="beta, t or a0sq")
    p.add_argument("--bracket", required=True, metavar="LO:HI")
    p.add_argument("--condition", choices=search.CONDITIONS, default="sqrt_ratio",
                   help="sqrt_ratio: |B| = sqrt(|a0|/|a1|); exact: |B| = |a0|/|a1|")
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser("verify", help="run the cross-engine verification suite")
    _global_options(p, suppress=True)
    p.add_argument("--profile", choices=verify.PROFILES, default="default")
    p.add_argument("--only", metavar="PREFIX", help="run checks whose name starts with PREFIX")
    p.set_defaults(func=cmd_verify)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    if args.cutoff is not None and args.cutoff < 1:
        parser.error("--cutoff must be >= 1")
    try:
        return args.func(args)
    except (ArgumentError, InvalidConfig) as exc:
        print(f"dvcv: error: {exc}", file=sys.stderr)
        return EXIT_ARGS
    except NoSignChange as exc:
        print(f"dvcv: no root: {exc}", file=sys.stderr)
        return EXIT_NO_ROOT
    except (DegenerateState, InfiniteCoefficient, DvcvError) as exc:
        print(f"dvcv: degenerate configuration: {exc}", file=sys.stderr)
        return EXIT_DEGENERATE


if __name__ == "__main__":
    sys.exit(main())
