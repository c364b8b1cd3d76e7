"""Command-line interface: ``inducedpoly <command> ...``; all output is CSV."""

import argparse
import csv
import math
import sys

import numpy as np

from .errors import InducedError, NumericError
from .evaluation import get_distribution
from .inversion import idist_inverse
from .measures import Custom, Freud, HalfLineFreud, Jacobi, load_table, recurrence_table, support
from .sampling import (
    MultiIndexSet,
    TensorMeasure,
    c_delta,
    equilibrium_cdf,
    equilibrium_experiment,
    gram_discrepancy,
    ls_design,
    make_rng,
    sample_count,
    sample_mixture,
    total_degree_set,
)

_FAMILIES = {
    "jacobi": "jacobi",
    "hf": "hf",
    "halfline": "hf",
    "halfline_freud": "hf",
    "freud": "freud",
    "custom": "custom",
}


class UsageError(InducedError):
    pass


def fmt(v):
    return "%.17g" % v


def _floats(text):
    try:
        return [float(t) for t in text.split(",") if t.strip()]
    except ValueError:
        raise UsageError(f"expected comma-separated numbers, got {text!r}") from None


def _values(arg):
    """A comma-separated list, or a file of numbers separated by commas/newlines."""
    try:
        with open(arg, encoding="utf-8") as fh:
            text = fh.read()
    except OSError:
        text = arg
    return np.array(_floats(text.replace("\n", ",")), dtype=float)


def build_measure(family, params, table=None, base_table=None):
    fam = _FAMILIES.get(family.lower())
    if fam is None:
        raise UsageError(f"unknown measure {family!r}; choose from {sorted(set(_FAMILIES))}")
    tab = load_table(table).table if table else None
    base = load_table(base_table).table if base_table else None
    if fam == "custom":
        if not table:
            raise UsageError("custom measures need --table")
        return load_table(table)
    p = _floats(params) if isinstance(params, str) else list(params)
    if len(p) != 2:
        raise UsageError(f"{family} takes two parameters, got {len(p)}")
    if fam == "jacobi":
        return Jacobi(p[0], p[1])
    if fam == "hf":
        return HalfLineFreud(p[0], p[1], tab, base)
    return Freud(p[0], p[1], tab, base)


def parse_measure_string(text):
    """``family:p1,p2`` as used by the multivariate commands."""
    fam, _, params = text.partition(":")
    return build_measure(fam, params)


def _writer(out):
    return csv.writer(out, lineterminator="\n")


def _open_out(path):
    return open(path, "w", encoding="utf-8", newline="") if path else sys.stdout


def cmd_coeffs(args, out):
    spec = build_measure(args.measure, args.params, args.table, args.base_table)
    table = recurrence_table(spec, args.N)
    lo, hi = support(spec)
    out.write(f"# induced-table v1 support={fmt(lo)},{fmt(hi)}\n")
    for n, (a, b) in enumerate(zip(table.a, table.b)):
        out.write(f"{n},{fmt(a)},{fmt(b)}\n")


def _distribution(args):
    spec = build_measure(args.measure, args.params, args.table, args.base_table)
    if isinstance(spec, Custom):
        raise UsageError("eval/invert need a weight family, not a bare coefficient table")
    return get_distribution(spec, args.n, args.M)


def cmd_eval(args, out):
    dist = _distribution(args)
    x = _values(args.x)
    F = dist.cdf(x)
    w = _writer(out)
    if args.bound:
        if not isinstance(dist.spec, Jacobi):
            raise UsageError("--bound is available for Jacobi measures only")
        B = dist.error_bound(x)
        w.writerow(["x", "F", "bound"])
        w.writerows([fmt(a), fmt(b), fmt(c)] for a, b, c in zip(x, F, B))
    else:
        w.writerow(["x", "F"])
        w.writerows([fmt(a), fmt(b)] for a, b in zip(x, F))


def cmd_invert(args, out):
    dist = _distribution(args)
    u = _values(args.u)
    x = idist_inverse(u, dist, tol=args.tol)
    w = _writer(out)
    w.writerow(["u", "x"])
    w.writerows([fmt(a), fmt(b)] for a, b in zip(u, x))


def _tensor(args, d):
    specs = [parse_measure_string(s) for s in (args.measures or ["jacobi:0,0"])]
    if len(specs) == 1:
        specs = specs * d
    if len(specs) != d:
        raise UsageError(f"need 1 or {d} --measures, got {len(specs)}")
    return TensorMeasure(tuple(specs))


def _index_set(text, d):
    if text.startswith("total-degree:"):
        dd, n = (int(v) for v in text.split(":", 1)[1].split(","))
        if dd != d:
            raise UsageError(f"total-degree dimension {dd} differs from --dims {d}")
        return total_degree_set(dd, n)
    rows = []
    with open(text, encoding="utf-8") as fh:
        for line in fh:
            line = line.strip()
            if line and not line.startswith("#"):
                rows.append([int(v) for v in line.split(",")])
    return MultiIndexSet(np.array(rows, dtype=np.int64))


def cmd_sample(args, out):
    lam = _index_set(args.lambda_, args.dims)
    X = sample_mixture(lam, _tensor(args, args.dims), make_rng(args.seed), count=args.count)
    w = _writer(out)
    w.writerow([f"x{j + 1}" for j in range(args.dims)])
    w.writerows([fmt(v) for v in row] for row in X)


def cmd_ls_demo(args, out):
    lam = total_degree_set(args.dims, args.degree)
    T = _tensor(args, args.dims)
    N = len(lam)
    M = sample_count(N, args.r, args.delta)
    out.write(f"# N={N} c_delta={fmt(c_delta(args.delta))} M={M}\n")
    w = _writer(out)
    w.writerow(["trial", "gram_discrepancy", "success"])
    ok = 0
    for t in range(args.trials):
        X = sample_mixture(lam, T, make_rng(args.seed, t), count=M)
        g = gram_discrepancy(ls_design(lam, T, X))
        ok += g <= 0.5
        w.writerow([t, fmt(g), int(g <= 0.5)])
    floor = 1.0 - 2.0 * M ** (-args.r)
    out.write(f"# success_fraction={fmt(ok / args.trials)} guaranteed_at_least={fmt(floor)} "
              f"delta={fmt(args.delta)}\n")


def cmd_equilibrium(args, out):
    radii, ks = equilibrium_experiment(args.dims, args.degree, args.count, args.seed)
    emp = np.arange(1, radii.size + 1) / radii.size
    G = equilibrium_cdf(args.dims, np.clip(radii, 0.0, 1.0))
    w = _writer(out)
    w.writerow(["r", "empirical_cdf", "G_d"])
    w.writerows([fmt(a), fmt(b), fmt(c)] for a, b, c in zip(radii, emp, G))
    # close both CDFs at the edge of the unit ball (or beyond the last radius)
    w.writerow([fmt(max(1.0, radii[-1])), fmt(1.0), fmt(equilibrium_cdf(args.dims, 1.0))])
    out.write(f"# ks_distance={fmt(ks)}\n")


def _add_measure_args(p):
    p.add_argument("--measure", required=True, help="jacobi | hf | freud | custom")
    p.add_argument("--params", default="", help="two comma-separated parameters")
    p.add_argument("--table", help="coefficient-table CSV of the measure itself")
    p.add_argument("--base-table", help="coefficient-table CSV of the rho = 0 half-line measure")


def build_parser():
    parser = argparse.ArgumentParser(prog="inducedpoly",
                                     description="Induced distributions of orthogonal polynomials.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("coeffs", help="write a recurrence coefficient table")
    _add_measure_args(p)
    p.add_argument("-N", type=int, required=True)
    p.add_argument("--out")
    p.set_defaults(func=cmd_coeffs)

    p = sub.add_parser("eval", help="evaluate F_n on a grid")
    _add_measure_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-M", type=int)
    p.add_argument("--x", required=True, help="comma list or file")
    p.add_argument("--bound", action="store_true", help="add the Jacobi error-bound column")
    p.add_argument("--out")
    p.set_defaults(func=cmd_eval)

    p = sub.add_parser("invert", help="evaluate F_n^{-1}")
    _add_measure_args(p)
    p.add_argument("-n", type=int, required=True)
    p.add_argument("-M", type=int)
    p.add_argument("--u", required=True, help="comma list or file")
    p.add_argument("--tol", type=float, default=1e-12)
    p.add_argument("--out")
    p.set_defaults(func=cmd_invert)

    p = sub.add_parser("sample", help="draw from the mixture measure mu_Lambda")
    p.add_argument("--dims", type=int, required=True)
    p.add_argument("--measures", action="append", help="family:p1,p2 (repeat per coordinate)")
    p.add_argument("--lambda", dest="lambda_", required=True, help="file or total-degree:d,n")
    p.add_argument("--count", type=int, required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("ls-demo", help="Gram concentration of optimal least-squares designs")
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--degree", type=int, default=5)
    p.add_argument("--delta", type=float, default=0.5)
    p.add_argument("--r", type=float, default=1.0)
    p.add_argument("--trials", type=int, default=50)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--measures", action="append")
    p.add_argument("--out")
    p.set_defaults(func=cmd_ls_demo)

    p = sub.add_parser("equilibrium", help="radial distribution of mu_Lambda_n samples")
    p.add_argument("--dims", type=int, default=2)
    p.add_argument("--degree", type=int, default=100)
    p.add_argument("--count", type=int, default=20000)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--out")
    p.set_defaults(func=cmd_equilibrium)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        out = _open_out(args.out)
        try:
            args.func(args, out)
        finally:
            if out is not sys.stdout:
                out.close()
    except NumericError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except (InducedError, ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    return 0


if __name__ == "__main__":
    sys.exit(main())
