"""Command line front end; every command prints one JSON document."""

from __future__ import annotations

import argparse
import json
import random
import sys
from fractions import Fraction
from typing import Sequence

from . import arcs, cells, homalg, loci, pbw, suites
from .core import IsoClass, MatrixRep, RankTuple, dumps, iso_from_ranks, parse_named, rank_tuple, ranks_from_iso
from .errors import LindegenError


class UsageError(Exception):
    pass


def _jsonable(obj):
    if isinstance(obj, Fraction):
        return str(obj)
    if isinstance(obj, (IsoClass, RankTuple, MatrixRep, arcs.ArcDiagram, cells.FixedPoint)):
        return obj.to_json()
    if isinstance(obj, dict):
        return {_key(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple, set, frozenset)):
        items = sorted(obj) if isinstance(obj, (set, frozenset)) else obj
        return [_jsonable(x) for x in items]
    return obj


def _key(k) -> str:
    if isinstance(k, tuple):
        return ",".join(str(x) for x in k)
    return str(k)


def _ints(text: str | None) -> list[int]:
    if text is None or not text.strip():
        return []
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma separated integer list, got {text!r}") from exc


def _fractions(text: str | None) -> list[Fraction]:
    if text is None or not text.strip():
        return []
    try:
        return [Fraction(x.strip()) for x in text.split(",") if x.strip()]
    except ValueError as exc:
        raise UsageError(f"expected a comma separated list of numbers, got {text!r}") from exc


# ------------------------------------------------------------ input decoding


def _decode_rep(text: str) -> IsoClass | RankTuple:
    """``named:KIND[:params]:n``, a JSON document, or ``@path`` to one."""
    if text.startswith("named:"):
        kind_params, _, n = text[len("named:") :].rpartition(":")
        if not kind_params or not n.isdigit():
            raise UsageError(f"bad named representation {text!r}")
        return parse_named(kind_params, int(n))
    if text.startswith("@"):
        with open(text[1:], encoding="utf-8") as fh:
            text = fh.read()
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise UsageError(f"--rep is neither named:... nor JSON: {exc}") from exc
    if not isinstance(obj, dict):
        raise UsageError("--rep JSON must be an object")
    if "maps" in obj:
        return rank_tuple(MatrixRep.from_json(obj))
    if "m" in obj:
        return IsoClass.from_json(obj)
    if "r" in obj:
        return RankTuple.from_json(obj)
    raise UsageError("--rep JSON must describe a MatrixRep, an IsoClass or a RankTuple")


def _source(args) -> IsoClass | RankTuple:
    if getattr(args, "rep", None):
        return _decode_rep(args.rep)
    if getattr(args, "named", None):
        if args.n is None:
            raise UsageError("--named needs --n")
        return parse_named(args.named, args.n)
    raise UsageError("give --rep or --named with --n")


def _iso(args) -> IsoClass:
    x = _source(args)
    return x if isinstance(x, IsoClass) else iso_from_ranks(x)


def _ranks(args) -> RankTuple:
    x = _source(args)
    return x if isinstance(x, RankTuple) else ranks_from_iso(x)


def _need_n(args) -> int:
    if args.n is None or args.n < 1:
        raise UsageError("--n must be a positive integer")
    return args.n


def _e(args, iso: IsoClass) -> tuple[int, ...]:
    e = _ints(args.e)
    return tuple(e) if e else tuple(range(1, iso.n + 1))


# ------------------------------------------------------------------ commands


def cmd_classify(args) -> dict:
    return loci.classify(_ranks(args)).to_json()


def cmd_orbits(args) -> dict:
    n = _need_n(args)
    out = loci.flat_orbit_census(n)
    if args.list:
        out["flat_rank_tuples"] = [rt.to_json() for rt in loci.flat_rank_tuples(n)]
    return out


def cmd_rhymes(args) -> dict:
    schemes = loci.rhyme_enumerate(_need_n(args))
    if args.regular:
        schemes = [b for b in schemes if loci.is_regular(b)]
    return {"count": len(schemes), "schemes": [list(b) for b in schemes]}


def cmd_arcs(args) -> dict:
    n = _need_n(args)
    rows = []
    for k, A in enumerate(arcs.enumerate_arcs(n)):
        row = {"arcs": A.to_json()["arcs"], "n_a": arcs.n_of_arcs(A), "q_a": arcs.q_of_arcs(A)}
        if args.check:
            row["ses"] = arcs.verify_ses(A)
            row["desing"] = arcs.desing_dims(A, seed=args.seed + k)
        rows.append(row)
    return {"count": len(rows), "diagrams": rows, "seed": args.seed}


def cmd_components(args) -> dict:
    res = homalg.flag_components(_iso(args))
    return {"min_dim": res["min_dim"], "count": len(res["components"]), "components": res["components"]}


def cmd_poincare(args) -> dict:
    iso = _iso(args)
    return {"coeffs": cells.poincare(iso, _e(args, iso))}


def cmd_count(args) -> dict:
    iso = _iso(args)
    if args.p is None:
        raise UsageError("count needs --p")
    return {"count": cells.count_points_fq(iso, _e(args, iso), args.p, budget=args.budget, jobs=args.jobs)}


def _point_json(fp: cells.FixedPoint) -> dict:
    return {
        "starts": fp.to_json(),
        "cell_dim": cells.cell_dim(fp),
        "tangent_dim": cells.tangent_dim(fp),
        "sub": fp.sub_class(),
        "quotient": fp.quotient_class(),
    }


def cmd_tangent(args) -> dict:
    iso = _iso(args)
    if args.starts:
        return _point_json(cells.FixedPoint(cells.layout(iso), tuple(_ints(args.starts))))
    return {"points": [_point_json(fp) for fp in cells.fixed_points(iso, _e(args, iso))]}


def cmd_schubert(args) -> dict:
    n = _need_n(args)
    return pbw.schubert_data(n, _ints(args.i))


def cmd_demazure_check(args) -> dict:
    n = _need_n(args)
    lam = _ints(args.lam) or [1] * n
    return pbw.demazure_check(n, _ints(args.i), lam)


def _lambda_table(n: int, values: Sequence[Fraction], pbw_only: bool) -> dict:
    if pbw_only:
        if len(values) != n - 1:
            raise UsageError(f"--pbw needs {n - 1} values for lambda_(i,i)")
        return {(i, i): v for i, v in enumerate(values, start=1)}
    keys = [(a, b) for a in range(1, n) for b in range(a, n)]
    if len(values) != len(keys):
        raise UsageError(f"--lambda needs {len(keys)} values (lambda_(a,b), a <= b, row by row)")
    return dict(zip(keys, values))


def cmd_slice(args) -> dict:
    n = _need_n(args)
    lam = _lambda_table(n, _fractions(args.lam), args.pbw)
    rep = loci.slice_rep(n, lam)
    rt = rank_tuple(rep)
    return {"rep": rep, "ranks": rt, "locus": loci.classify(rt).to_json()}


def cmd_gamma_check(args) -> dict:
    n = _need_n(args)
    rng = random.Random(args.seed)
    diag = _fractions(args.lam)
    if args.triple:
        if n != 3:
            raise UsageError("--triple is defined for n = 3 only")
        lam = _lambda_table(3, diag, False)
        x = {(p, q): Fraction(rng.randint(-1000, 1000), rng.randint(1, 50)) for p in range(1, 5) for q in range(1, p)}
        gs = loci.example_triple(lam, x)
        return {"automorphism": loci.check_automorphism(gs, loci.slice_rep(3, lam)), "seed": args.seed, "x": x}
    if len(diag) != n - 1:
        raise UsageError(f"--lambda needs {n - 1} diagonal values")
    x = {(p, q): Fraction(rng.randint(-1000, 1000), rng.randint(1, 50)) for p in range(1, n + 2) for q in range(1, p)}
    gs = loci.gamma_pbw(n, diag, x)
    return {
        "automorphism": loci.check_automorphism(gs, loci.slice_pbw(n, diag)),
        "stabilizer_trivial": loci.flag_stabilizer_trivial(n, diag),
        "seed": args.seed,
        "x": x,
    }


def cmd_verify(args) -> dict:
    if args.suite not in suites.SUITES:
        raise UsageError(f"unknown suite {args.suite!r}; choose from {sorted(suites.SUITES)}")
    report = suites.run_suite(args.suite, seed=args.seed)
    if not args.timing:
        for check in report["checks"]:
            for key in ("seconds", "in_time"):
                check.pop(key)
    return report


# -------------------------------------------------------------------- parser


def _add_source(p: argparse.ArgumentParser, e: bool = False) -> None:
    p.add_argument("--named", help="M0, M1, M2, Ma:<a>, Mai:<i>, Maij:<i,j> or Mi:<sequence>")
    p.add_argument("--n", type=int, help="number of quiver vertices")
    p.add_argument("--rep", help="named:KIND[:params]:n, JSON text or @file (MatrixRep, IsoClass or RankTuple)")
    if e:
        p.add_argument("--e", help="dimension vector, default 1,2,...,n")


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="lindegen", description="Linear degenerations of type A flag varieties.")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("classify", help="flat / irreducible / normal / PBW locus membership of an orbit and its witness")
    _add_source(p)
    p.set_defaults(func=cmd_classify)

    p = sub.add_parser("orbits", help="census of flat orbits: rank tuples dominating r2 versus set-sequence orbits")
    p.add_argument("--n", type=int)
    p.add_argument("--list", action="store_true", help="also list the flat rank tuples")
    p.set_defaults(func=cmd_orbits)

    p = sub.add_parser("rhymes", help="broken rhyme schemes of length n-1 (flat irreducible orbits)")
    p.add_argument("--n", type=int)
    p.add_argument("--regular", action="store_true", help="only regular schemes (PBW locus)")
    p.set_defaults(func=cmd_rhymes)

    p = sub.add_parser("arcs", help="non-crossing arc diagrams with N_A and Q_A (components of the mf-degenerate fiber)")
    p.add_argument("--n", type=int)
    p.add_argument("--check", action="store_true", help="verify the exact sequence and the resolution tower")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_arcs)

    p = sub.add_parser("components", help="dimension test and irreducible components of Gr_(1..n)(M)")
    _add_source(p)
    p.set_defaults(func=cmd_components)

    p = sub.add_parser("poincare", help="Poincare polynomial of Gr_e(M) from the torus fixed-point cells")
    _add_source(p, e=True)
    p.set_defaults(func=cmd_poincare)

    p = sub.add_parser("count", help="number of F_p-points of the quiver Grassmannian Gr_e(M)")
    _add_source(p, e=True)
    p.add_argument("--p", type=int, help="prime field size")
    p.add_argument("--jobs", type=int, default=1, help="worker processes")
    p.add_argument("--budget", type=int, default=50_000_000, help="maximum number of subspaces visited")
    p.set_defaults(func=cmd_count)

    p = sub.add_parser("tangent", help="cell and tangent space dimensions Hom(L, M/L) at torus fixed points")
    _add_source(p, e=True)
    p.add_argument("--starts", help="suffix start per segment (0 = unused); default lists all fixed points")
    p.set_defaults(func=cmd_tangent)

    p = sub.add_parser("schubert", help="h-vector, ell-vector and Weyl word w_i of a projection sequence")
    p.add_argument("--n", type=int)
    p.add_argument("--i", help="projection sequence, e.g. 1,3 (empty for none)")
    p.set_defaults(func=cmd_schubert)

    p = sub.add_parser("demazure-check", help="dim V_{w_i}(Psi(lambda)) versus dim V(lambda)")
    p.add_argument("--n", type=int)
    p.add_argument("--i", help="projection sequence")
    p.add_argument("--lambda", dest="lam", help="fundamental weight coefficients, default rho")
    p.set_defaults(func=cmd_demazure_check)

    p = sub.add_parser("slice", help="point of the transversal slice T (or T_PBW) with its rank tuple and loci")
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", help="lambda_(a,b) for a <= b row by row, or the diagonal with --pbw")
    p.add_argument("--pbw", action="store_true")
    p.set_defaults(func=cmd_slice)

    p = sub.add_parser("gamma-check", help="unipotent group scheme elements acting on slice points")
    p.add_argument("--n", type=int)
    p.add_argument("--lambda", dest="lam", help="diagonal lambdas (or all three for --triple)")
    p.add_argument("--triple", action="store_true", help="use the n = 3 triple on the full slice")
    p.add_argument("--seed", type=int, default=0)
    p.set_defaults(func=cmd_gamma_check)

    p = sub.add_parser("verify", help="run a named verification suite (acceptance, quick, c1 ... c12)")
    p.add_argument("--suite", required=True)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--timing", action="store_true", help="include wall-clock seconds (not deterministic)")
    p.set_defaults(func=cmd_verify)
    return parser


def run(argv: Sequence[str] | None = None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        result = args.func(args)
    except UsageError as exc:
        parser.print_usage(sys.stderr)
        print(f"lindegen: error: {exc}", file=sys.stderr)
        return 2
    except LindegenError as exc:
        print(dumps({"error": exc.code, "detail": exc.detail}), file=out)
        return 1
    print(dumps(_jsonable(result)), file=out)
    return 0


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
