"""Command-line front end: ``latcount <command> [options]``.

Exit codes: 0 success, 2 bad input (including unknown flags), 3 when a
feasibility guard refuses the request.  Reals are written as decimal
strings in JSON; scans write one record per line in a fixed order that does
not depend on ``--workers``.
"""

from __future__ import annotations

import argparse
import csv
import io
import json
import math
import os
import sys
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction

from . import abcount, census, covol, finlie, quadfields, rootsys, zeta
from .arith import frac_str, is_prime, omega
from .errors import FeasibilityError, InputError, LatCountError

OUTDIR_ENV = "LATCOUNT_OUTDIR"

CLASSRANK_HEADER = ["delta", "t", "omega", "rank2_formula", "rank2_oracle", "h", "rank_l", "ratio_3A"]
CENSUS_HEADER = ["n", "c_n", "ratio"]
PROBE_HEADER = ["delta", "rank_l", "N", "x", "ratio", "gamma_target"]
TABLE1_HEADER = ["type", "s", "R", "residue", "bound", "ok"]
GAMMA_HEADER = ["type", "phi_plus", "rank", "R", "gamma"]


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        print(f"{self.prog}: error: {message}", file=sys.stderr)
        raise SystemExit(2)


def _num(x) -> str:
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, float):
        return repr(x)
    return str(x)


def _json_value(x):
    # integers stay integers; reals and rationals become decimal strings
    return x if isinstance(x, int) and not isinstance(x, bool) else _num(x)


# ------------------------------------------------------------ scans


def _chunks(lo: int, hi: int, parts: int) -> list[tuple[int, int]]:
    """Split the integer range [lo, hi] into contiguous pieces."""
    size = max(1, -(-(hi - lo + 1) // parts))
    return [(a, min(hi, a + size - 1)) for a in range(lo, hi + 1, size)]


def _classrank_chunk(args):
    l, dlo, dhi = args  # dlo <= -delta <= dhi
    forms = quadfields.forms_by_discriminant(dlo, dhi)
    rows = []
    for delta in sorted(forms, reverse=True):
        fs = forms[delta]
        # t counts the primes dividing delta; for fundamental delta it equals omega
        t = len(quadfields.factorize(-delta))
        oracle = quadfields.two_rank_from_forms(fs)
        rank = oracle if l == 2 else round(math.log(quadfields.torsion_count(fs, l), l))
        ratio = repr(quadfields.conjecture_ratio(delta, l, rank).ratio_sqrt) if -delta >= 5 else ""
        rows.append([delta, t, omega(delta), quadfields.gauss_two_rank(delta), oracle, len(fs), rank, ratio])
    return rows


def classrank_rows(l: int, dmin: int, dmax: int, workers: int = 1) -> list[list]:
    if dmax >= 0 or dmin > dmax:
        raise InputError("need dmin <= dmax < 0 (imaginary fields)")
    if not is_prime(l):
        raise InputError(f"{l} is not prime")
    pieces = [(l, a, b) for a, b in _chunks(-dmax, -dmin, max(1, workers))]
    results = _pmap(_classrank_chunk, pieces, workers)
    rows = [row for part in results for row in part]
    rows.sort(key=lambda r: -r[0])
    return rows


def _probe_chunk(args):
    l, dlo, dhi = args
    return [census.probe_class_growth(d, l) for d in quadfields.fundamental_discriminants(-dhi, -dlo)]


def probe_rows(l: int, dmax: int, dmin: int = 3, workers: int = 1):
    if dmax < dmin or dmin < 3:
        raise InputError("need 3 <= dmin <= dmax")
    if l == 2 or not is_prime(l):
        raise InputError("l must be an odd prime")
    pieces = [(l, a, b) for a, b in _chunks(dmin, dmax, max(1, workers))]
    res = [r for part in _pmap(_probe_chunk, pieces, workers) for r in part]
    res.sort(key=lambda r: -r.delta)
    return res


def _pmap(fn, items, workers):
    if workers > 1 and len(items) > 1:
        with ProcessPoolExecutor(workers) as ex:
            return list(ex.map(fn, items))
    return [fn(x) for x in items]


# ------------------------------------------------------------ commands


def cmd_gamma(a):
    if a.all:
        types = rootsys.untwisted_types_upto(a.max_rank)
        return "table", GAMMA_HEADER, [
            [str(r.type), r.phi_plus, r.rank, frac_str(r.ratio_R), r.gamma_str]
            for r in map(rootsys.growth_exponent, types)
        ]
    if not a.type:
        raise InputError("gamma needs --type or --all")
    return "object", rootsys.growth_exponent(rootsys.LieType.parse(a.type)).to_json()


def cmd_table1(a):
    types = rootsys.twisted_types_upto(a.max_rank) if a.max_rank else rootsys.table1_schemas()
    rows = []
    for t in types:
        row = rootsys.outer_form_row(t)
        ok, bound = rootsys.check_outer_inequality(row)
        rows.append([str(t), row.s, frac_str(row.ratio_R), str(row.residue_type), frac_str(bound),
                     "true" if ok else "false"])
    return "table", TABLE1_HEADER, rows


def cmd_classrank(a):
    return "table", CLASSRANK_HEADER, classrank_rows(a.l, a.dmin, a.dmax, a.workers)


def cmd_zeta(a):
    k = quadfields.parse_field(a.disc)
    z = zeta.dedekind_zeta(k, a.s, a.tol)
    return "object", {"field": repr(k), "s": a.s, "value": repr(z.value), "error": repr(z.error)}


def cmd_covol(a):
    k = quadfields.parse_field(a.disc)
    res = covol.harder_covolume(a.l, k, a.tol)
    lo, hi = covol.covolume_bounds(a.l, res.D, res.degree)
    return "object", res.to_json(lo, hi)


def cmd_minh(a):
    return "object", finlie.min_h_bruteforce(a.q).to_json()


def cmd_lambda(a):
    lam = finlie.lambda_example(a.p)
    return "object", {"p": a.p, "lambda": frac_str(lam), "lambda_over_p9": repr(float(lam / a.p**9))}


def cmd_abcount(a):
    try:
        factors = [int(x) for x in a.factors.split(",") if x.strip()]
    except ValueError as exc:
        raise InputError(f"bad --factors {a.factors!r}") from exc
    if any(d < 1 for d in factors):
        raise InputError("cyclic factors must be positive")
    A = abcount.AbelianGroupShape.from_cyclic_factors(factors)
    if A.order > 10**6:
        raise FeasibilityError("group order above 10^6")
    out = {"group": str(A), "order": A.order, "count": abcount.subgroup_count(A)}
    if a.index is not None:
        out["index"] = a.index
        out["count_at_index"] = abcount.subgroup_count_by_index(A, a.index)
    if a.l is not None:
        out["bounds_ok"] = abcount.bounds_check(A, a.l)
    return "object", out


def cmd_census(a):
    recs = census.congruence_count(a.nmax, a.level_max, a.workers)
    return "table", CENSUS_HEADER, [[r.n, r.c_n, "" if r.ratio is None else repr(r.ratio)] for r in recs]


def cmd_probe(a):
    res = probe_rows(a.l, a.dmax, a.dmin, a.workers)
    return "table", PROBE_HEADER, [[r.delta, r.rank_l, r.N, repr(r.x), repr(r.ratio), repr(r.gamma_target)]
                                   for r in res]


# ------------------------------------------------------------ plumbing


def _positive_int(text):
    v = int(text)
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _positive_float(text):
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be > 0")
    return v


def build_parser() -> argparse.ArgumentParser:
    p = _Parser(prog="latcount", description="Subgroup-growth toolkit for arithmetic lattices.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    def add(name, fn, help_):
        sp = sub.add_parser(name, help=help_)
        sp.set_defaults(func=fn)
        sp.add_argument("--format", choices=["json", "csv"], default=None)
        sp.add_argument("--json", action="store_const", const="json", dest="format")
        sp.add_argument("--out", help=f"output file; relative paths resolve under ${OUTDIR_ENV} if set")
        return sp

    sp = add("gamma", cmd_gamma, "root data and growth exponent of a type")
    sp.add_argument("--type")
    sp.add_argument("--all", action="store_true")
    sp.add_argument("--max-rank", type=_positive_int, default=8)

    sp = add("table1", cmd_table1, "outer-form inequality audit")
    sp.add_argument("--max-rank", type=_positive_int, default=None)

    sp = add("classrank", cmd_classrank, "l-ranks of imaginary quadratic class groups")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--dmin", type=int, required=True)
    sp.add_argument("--dmax", type=int, required=True)
    sp.add_argument("--workers", type=_positive_int, default=1)

    sp = add("zeta", cmd_zeta, "Dedekind zeta value")
    sp.add_argument("--disc", default="Q")
    sp.add_argument("--s", type=int, required=True)
    sp.add_argument("--tol", type=_positive_float, default=1e-12)

    sp = add("covol", cmd_covol, "covolume of SL_l(O_k)")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--disc", default="Q")
    sp.add_argument("--tol", type=_positive_float, default=1e-10)

    sp = add("minh", cmd_minh, "brute-force min h over subgroups of SL_2(F_q)")
    sp.add_argument("--q", type=int, required=True)

    sp = add("lambda", cmd_lambda, "exact lambda factor of the SL_3-over-quaternions example")
    sp.add_argument("--p", type=int, required=True)

    sp = add("abcount", cmd_abcount, "subgroup counts of a finite abelian group")
    sp.add_argument("--factors", required=True, help="comma-separated cyclic orders, e.g. 4,2")
    sp.add_argument("--index", type=_positive_int)
    sp.add_argument("--l", type=int)

    sp = add("census", cmd_census, "congruence subgroups of SL_2(Z) of index <= n")
    sp.add_argument("--nmax", type=int, required=True)
    sp.add_argument("--level-max", type=int, default=None)
    sp.add_argument("--workers", type=_positive_int, default=1)

    sp = add("probe", cmd_probe, "class-group subgroups against covolume")
    sp.add_argument("--l", type=int, required=True)
    sp.add_argument("--dmax", type=int, required=True, help="largest |delta|")
    sp.add_argument("--dmin", type=int, default=3, help="smallest |delta|")
    sp.add_argument("--workers", type=_positive_int, default=1)
    return p


def render(result, fmt: str | None) -> str:
    kind = result[0]
    if kind == "object":
        return json.dumps(result[1], sort_keys=False) + "\n"
    _, header, rows = result
    if fmt == "json":
        return "".join(json.dumps(dict(zip(header, map(_json_value, r)))) + "\n" for r in rows)
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(header)
    w.writerows([[_num(x) for x in r] for r in rows])
    return buf.getvalue()


def _resolve_out(path: str) -> str:
    base = os.environ.get(OUTDIR_ENV)
    if base and not os.path.isabs(path):
        os.makedirs(base, exist_ok=True)
        return os.path.join(base, path)
    return path


def run(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        text = render(args.func(args), args.format)
    except FeasibilityError as exc:
        print(f"latcount: {exc}", file=sys.stderr)
        return 3
    except InputError as exc:
        print(f"latcount: {exc}", file=sys.stderr)
        return 2
    except LatCountError as exc:
        print(f"latcount: {exc}", file=sys.stderr)
        return exc.exit_code
    if args.out:
        with open(_resolve_out(args.out), "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)
    return 0


def main() -> None:
    raise SystemExit(run())


if __name__ == "__main__":
    main()
