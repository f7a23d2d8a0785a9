"""``reflectent`` command line: sweeps, counterexample scans, sigma curves and
the self-check suite.

Exit status is 0 on success, 1 on a numeric or verification failure and 2
on a usage error. Tables go to ``--out`` (stdout by default) as CSV or a
JSON array of records with the same field names; diagnostics go to stderr.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import re
import sys
from dataclasses import asdict

import numpy as np

from reflectent import counterexample as cx
from reflectent import rindler, verify
from reflectent.errors import ArgumentError, ReflectentError
from reflectent.linalg import hermitian_eig

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2

_PI = re.compile(r"^(?:(?P<k>[0-9.eE+-]+)\*?)?pi(?:/(?P<d>[0-9.eE+-]+))?$")


class UsageError(Exception):
    pass


def parse_number(tok: str) -> float:
    """A float, or a multiple of pi such as ``pi/4``, ``pi`` or ``3pi/8``."""
    tok = tok.strip().lower()
    m = _PI.match(tok)
    try:
        if m:
            k = float(m["k"]) if m["k"] else 1.0
            d = float(m["d"]) if m["d"] else 1.0
            return k * math.pi / d
        return float(tok)
    except (ValueError, ZeroDivisionError):
        raise UsageError(f"not a number: {tok!r}") from None


def parse_range(spec: str, *, log: bool = False) -> np.ndarray:
    """``min:max:steps`` into an inclusive grid; log-spaced when ``log``."""
    parts = spec.split(":")
    if len(parts) != 3:
        raise UsageError(f"range must be min:max:steps, got {spec!r}")
    lo, hi = parse_number(parts[0]), parse_number(parts[1])
    try:
        steps = int(parts[2])
    except ValueError:
        raise UsageError(f"range steps must be an integer, got {parts[2]!r}") from None
    if not (math.isfinite(lo) and math.isfinite(hi)) or lo >= hi:
        raise UsageError(f"range needs min < max, got {spec!r}")
    if steps < 2:
        raise UsageError(f"range needs at least 2 steps, got {steps}")
    if log:
        if lo <= 0:
            raise UsageError(f"log-spaced range needs min > 0, got {spec!r}")
        return np.logspace(math.log10(lo), math.log10(hi), steps)
    return np.linspace(lo, hi, steps)


def parse_list(spec: str) -> list[float]:
    try:
        return [parse_number(t) for t in spec.split(",") if t.strip()]
    except UsageError:
        raise UsageError(f"expected a comma-separated list of numbers, got {spec!r}") from None


def fmt(x) -> str:
    """Floats at 12 significant digits; everything else via ``str``."""
    if isinstance(x, (float, np.floating)):
        return f"{float(x) + 0.0:.12g}"
    return str(x)


def write_table(rows: list[dict], fields: tuple[str, ...], out, form: str) -> None:
    if form == "json":
        payload = [{k: _json_value(r[k]) for k in fields} for r in rows]
        out.write(json.dumps(payload, indent=1) + "\n")
        return
    w = csv.writer(out, lineterminator="\n")
    w.writerow(fields)
    for r in rows:
        w.writerow([fmt(r[k]) for k in fields])


def _json_value(v):
    if isinstance(v, (float, np.floating)):
        v = float(fmt(v))
        return v if math.isfinite(v) else str(v)
    return v


def _emit(args, rows, fields):
    buf = io.StringIO()
    write_table(rows, fields, buf, args.format)
    if args.out in (None, "-"):
        sys.stdout.write(buf.getvalue())
    else:
        with open(args.out, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(buf.getvalue())


def _family(args) -> rindler.StateFamily:
    try:
        kind = rindler.StateFamily.maximal(args.state).kind
        alpha = rindler.default_alpha(kind) if args.alpha is None else args.alpha
        return rindler.StateFamily(kind, alpha)
    except ArgumentError as exc:
        raise UsageError(str(exc)) from None


def cmd_sweep(args) -> int:
    fam = _family(args)
    pairs = [p.strip() for p in args.pairs.split(",") if p.strip()]
    if not pairs:
        raise UsageError("--pairs needs at least one selector")
    for p in pairs:
        sel = rindler.SELECTORS.get(p)
        if sel is None or not sel.is_pair:
            names = [k for k, s in rindler.SELECTORS.items() if s.is_pair]
            raise UsageError(f"unknown pair {p!r}; choose from {', '.join(names)}")
        if not sel.labels <= set(fam.labels):
            raise UsageError(f"pair {p!r} is not available for the {fam.kind} state")
    grid = parse_range(args.range)
    if args.var == "r":
        if grid[0] < 0 or grid[-1] > rindler.R_MAX + 1e-9:
            raise UsageError("r range must lie in [0, pi/4]")
        grid = np.minimum(grid, rindler.R_MAX)
    elif args.var == "T":
        if grid[0] <= 0:
            raise UsageError("temperature range must be positive")
        _check_omega([args.omega])
    else:
        if grid[0] < 0 or grid[-1] > rindler._ALPHA_MAX[fam.kind] + 1e-12:
            raise UsageError(f"alpha range must lie in [0, {rindler._ALPHA_MAX[fam.kind]:.6g}] for {fam.kind}")
        grid = np.minimum(grid, rindler._ALPHA_MAX[fam.kind])
    r_fixed = None
    if args.var == "alpha":
        r_fixed = 0.0 if args.r is None else args.r
        if not 0 <= r_fixed <= rindler.R_MAX + 1e-9:
            raise UsageError("--r must lie in [0, pi/4]")
        r_fixed = min(r_fixed, rindler.R_MAX)
    recs = rindler.sweep(fam.kind, pairs, args.var, grid, alpha=fam.alpha, r=r_fixed, omega=args.omega)
    _emit(args, [asdict(x) for x in recs], rindler.SWEEP_FIELDS)
    return EXIT_OK


CX_FIELDS = ("n", "m", "a", "b", "xi", "gap")


def cmd_counterexample(args) -> int:
    try:
        p = cx.CounterexampleParams(args.n, args.m, args.a, args.b)
    except ArgumentError as exc:
        raise UsageError(str(exc)) from None
    xis = parse_range(args.xi)
    if xis[0] <= 0:
        raise UsageError("Renyi indices must be positive")
    try:
        recs = cx.scan_xi(p, xis, args.reading)
    except cx.CounterexampleConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        for reading in cx.READINGS:
            print(f"  {reading}: {_reading_report(p, reading)}", file=sys.stderr)
        return EXIT_FAIL
    rows = [dict(n=p.n, m=p.m, a=p.a, b=p.b, xi=r.xi, gap=r.gap) for r in recs]
    _emit(args, rows, CX_FIELDS)
    worst = min(recs, key=lambda r: r.gap)
    verdict = "violation" if worst.gap < 0 else "no violation"
    print(f"min gap {fmt(worst.gap)} at xi={fmt(worst.xi)} ({verdict})", file=sys.stderr)
    return EXIT_OK


def _reading_report(p, reading) -> str:
    mat = cx.assemble(p, reading)
    low = float(hermitian_eig(mat / np.trace(mat)).eigenvalues[-1])
    return f"lowest eigenvalue {fmt(low)} ({'PSD' if low >= -1e-8 else 'not PSD'})"


SIGMA_FIELDS = ("family", "omega", "T", "sigma", "omega_sigma")


def _check_omega(omegas):
    if not omegas:
        raise UsageError("--omega needs at least one value")
    for w in omegas:
        if w is None or not (w > 0) or not math.isfinite(w):
            raise UsageError(f"omega must be a finite positive number, got {w!r}")


def cmd_sigma(args) -> int:
    fam = _family(args)
    omegas = parse_list(args.omega)
    _check_omega(omegas)
    temps = parse_range(args.t, log=True)
    rows = []
    for w in omegas:
        for t in temps:
            s = rindler.sigma_function(fam, w, float(t))
            rows.append(dict(family=fam.kind, omega=w, T=float(t), sigma=s, omega_sigma=w * s))
    _emit(args, rows, SIGMA_FIELDS)
    return EXIT_OK


def cmd_verify(args) -> int:
    if args.tol is not None and not (args.tol >= 0):
        raise UsageError("--tol must be non-negative")
    checks = verify.run(args.scope, args.tol)
    bad = verify.failures(checks)
    out = sys.stdout if args.out in (None, "-") else open(args.out, "w", encoding="utf-8", newline="\n")
    try:
        if args.format == "json":
            rows = [dict(name=c.name, status=c.status, expected=c.expected, got=_json_value(c.got), tol=c.tol, note=c.known or "") for c in checks]
            out.write(json.dumps(rows, indent=1) + "\n")
        else:
            for c in checks:
                out.write(c.line() + "\n")
            known = sum(1 for c in checks if c.known and not c.passed)
            passed = sum(1 for c in checks if c.passed)
            out.write(f"{passed} passed, {len(bad)} failed, {known} known deviations, {len(checks)} checks\n")
    finally:
        if out is not sys.stdout:
            out.close()
    if bad:
        print("verification failed:", file=sys.stderr)
        for c in bad:
            print(f"  {c.name}: expected {c.expected}, got {fmt(c.got)}, tol {c.tol:g}", file=sys.stderr)
        return EXIT_FAIL
    return EXIT_OK


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--out", default=None, help="output path (default stdout)")
    common.add_argument("--format", choices=("csv", "json"), default="csv")

    ap = _Parser(prog="reflectent", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    sp = sub.add_parser("sweep", parents=[common], help="S_R, I, h and bounds over a parameter grid")
    sp.add_argument("--state", required=True, help="bell, werner or ghz")
    sp.add_argument("--alpha", type=parse_number, default=None, help="state weight (default: maximally entangled)")
    sp.add_argument("--pairs", default="AB", help="comma-separated selectors, e.g. AB,ABbar,BBbar")
    sp.add_argument("--var", choices=rindler.SWEEP_VARIABLES, default="r")
    sp.add_argument("--range", default="0:pi/4:100", help="min:max:steps")
    sp.add_argument("--r", type=parse_number, default=None, help="fixed r for alpha sweeps")
    sp.add_argument("--omega", type=parse_number, default=1.0, help="mode frequency for T sweeps")
    sp.set_defaults(func=cmd_sweep)

    cp = sub.add_parser("counterexample", parents=[common], help="Renyi monotonicity gap over xi")
    cp.add_argument("--n", type=int, required=True)
    cp.add_argument("--m", type=int, required=True)
    cp.add_argument("--a", type=float, required=True)
    cp.add_argument("--b", type=float, required=True)
    cp.add_argument("--xi", default="0.01:1.99:200", help="min:max:steps")
    cp.add_argument("--reading", choices=cx.READINGS, default="projector")
    cp.set_defaults(func=cmd_counterexample)

    gp = sub.add_parser("sigma", parents=[common], help="sigma(T) on a log-spaced temperature grid")
    gp.add_argument("--state", required=True)
    gp.add_argument("--alpha", type=parse_number, default=None)
    gp.add_argument("--omega", default="10,20,30,40", help="comma-separated frequencies")
    gp.add_argument("--t", default="0.1:1000:100", help="min:max:steps, log-spaced")
    gp.set_defaults(func=cmd_sigma)

    vp = sub.add_parser("verify", parents=[common], help="run the self-check suite")
    vp.add_argument("--scope", choices=verify.SCOPES, default="all")
    vp.add_argument("--tol", type=float, default=None, help="override every check tolerance")
    vp.set_defaults(func=cmd_verify)
    return ap


def main(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ReflectentError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (ArithmeticError, np.linalg.LinAlgError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
