"""Named verification suites: the twelve end-to-end acceptance checks.

Each check returns ``(ok, detail)``; :func:`run_suite` adds timing and the
time budget of the check.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable

from . import arcs, cells, core, homalg, loci, pbw
from .core import IsoClass, RankTuple, named_rep, ranks_from_iso

CheckResult = tuple[bool, dict]


def _tri(n: int) -> int:
    return n * (n + 1) // 2


# Reference values the checks compare against, entered by hand.

RHYMES_LENGTH_3 = (
    "000 001 010 011 012 100 101 102 110 111 112 120 121 122 123".split()
)
REGULAR_LENGTH_3 = frozenset("000 001 010 012 100 102 120 123".split())

# (sequence, word, h, summands of M^i as (interval, multiplicity))
SCHUBERT_TABLE_N4 = (
    ((), "1234123121", (0, 0, 0, 0), {(1, 4): 5}),
    ((1,), "2345234231", (0, 1, 1, 1), {(1, 4): 4, (1, 1): 1, (2, 4): 1}),
    ((2,), "2345234121", (0, 0, 1, 1), {(1, 4): 4, (1, 2): 1, (3, 4): 1}),
    ((3,), "2345123121", (0, 0, 0, 1), {(1, 4): 4, (1, 3): 1, (4, 4): 1}),
    ((1, 2), "3456345231", (0, 1, 2, 2), {(1, 4): 3, (1, 1): 1, (2, 4): 1, (1, 2): 1, (3, 4): 1}),
    ((1, 3), "3456234231", (0, 1, 1, 2), {(1, 4): 3, (1, 1): 1, (2, 4): 1, (1, 3): 1, (4, 4): 1}),
    ((2, 3), "3456345121", (0, 0, 1, 2), {(1, 4): 3, (1, 2): 1, (3, 4): 1, (1, 3): 1, (4, 4): 1}),
    ((1, 2, 3), "4567345231", (0, 1, 2, 3), {(1, 4): 2, (1, 1): 1, (2, 4): 1, (1, 2): 1, (3, 4): 1, (1, 3): 1, (4, 4): 1}),
)

# Row order of the eleven segments of M2 for n = 4, top to bottom.
M2_N4_ROWS = ((4, 4), (4, 4), (3, 4), (2, 4), (1, 4), (3, 3), (1, 3), (2, 2), (1, 2), (1, 1), (1, 1))

# Starts vectors (0 = segment not used) of three fixed points with known cells.
EXAMPLE_M2_N4 = ((4, 0, 3, 2, 2, 0, 0, 0, 0, 1, 0), 10, 11)
MAI2_N4_POINTS = {
    "P": ((3, 4, 1, 2, 0, 0, 0), 10),
    "R": ((3, 3, 1, 4, 0, 2, 0), 10),
    "Q": ((3, 4, 1, 3, 0, 2, 0), 9),
}
MAI2_N4_ROWS = ((3, 4), (3, 4), (1, 4), (1, 4), (1, 4), (1, 2), (1, 2))


# --------------------------------------------------------------------- checks


def check_named_ranks(seed: int = 0) -> CheckResult:
    bad = []
    for n in range(2, 9):
        for level, kind in enumerate(("M0", "M1", "M2")):
            if ranks_from_iso(named_rep(kind, n)) != RankTuple.standard(n, level):
                bad.append([kind, n])
    return not bad, {"mismatches": bad}


def check_rhymes(seed: int = 0) -> CheckResult:
    found = ["".join(map(str, b)) for b in loci.rhyme_enumerate(4)]
    regular = {s for s in found if loci.is_regular([int(c) for c in s])}
    ok = found == list(RHYMES_LENGTH_3) and regular == REGULAR_LENGTH_3
    return ok, {"count": len(found), "regular": len(regular)}


def check_schubert_table(seed: int = 0) -> CheckResult:
    bad = []
    for seq, word, h, summands in SCHUBERT_TABLE_N4:
        w = pbw.weyl_word(4, seq)
        computed = "".join(map(str, w.word))
        fields = []
        if computed != word:
            fields.append({"field": "word", "table": word, "computed": computed})
        if tuple(pbw.h_vector(4, seq)) != h:
            fields.append({"field": "h", "table": list(h), "computed": pbw.h_vector(4, seq)})
        if pbw.schubert_module(4, seq) != IsoClass.of(4, summands):
            fields.append({"field": "module", "computed": str(pbw.schubert_module(4, seq))})
        if not (w.is_reduced() and w.length == 10):
            fields.append({"field": "reduced"})
        if fields:
            bad.append({"seq": list(seq), "fields": fields})
    return not bad, {"rows": len(SCHUBERT_TABLE_N4), "mismatches": bad}


def check_catalan_components(seed: int = 0, max_n: int = 6) -> CheckResult:
    counts = {}
    ok = True
    for n in range(2, max_n + 1):
        m2 = named_rep("M2", n)
        res = homalg.flag_components(m2)
        comps = res["components"]
        counts[n] = len(comps)
        expected = sorted((arcs.n_of_arcs(A) for A in arcs.enumerate_arcs(n)), key=IsoClass.table)
        ok &= res["min_dim"] and comps == expected
        ok &= all(homalg.stratum_dim(c, m2) == _tri(n) for c in comps)
    return ok, {"components": counts}


def _counting_cases(n4: bool = True):
    for n in range(1, 4):
        e = tuple(range(1, n + 1))
        for iso in core.iso_classes((n + 1,) * n):
            yield iso, e
    if n4:
        named = [("M0", ()), ("M1", ()), ("M2", ())] + [("Mai", (i,)) for i in range(1, 4)]
        for kind, params in named:
            yield named_rep(kind, 4, params), (1, 2, 3, 4)


def check_counting_identity(seed: int = 0, primes=(2, 3, 5), n4: bool = True) -> CheckResult:
    bad = []
    cases = 0
    for iso, e in _counting_cases(n4):
        poly = cells.poincare(iso, e)
        for q in primes:
            cases += 1
            if cells.evaluate(poly, q) != cells.count_points_fq(iso, e, q):
                bad.append([str(iso), q])
    return not bad, {"cases": cases, "mismatches": bad}


def check_cell_examples(seed: int = 0) -> CheckResult:
    m2 = cells.layout(named_rep("M2", 4))
    ma = cells.layout(named_rep("Mai", 4, (2,)))
    starts, cdim, tdim = EXAMPLE_M2_N4
    ex = cells.FixedPoint(m2, starts)
    got = {"example": [cells.cell_dim(ex), cells.tangent_dim(ex)]}
    ok = m2.segments == M2_N4_ROWS and ma.segments == MAI2_N4_ROWS
    ok &= got["example"] == [cdim, tdim]
    for name, (st, d) in MAI2_N4_POINTS.items():
        fp = cells.FixedPoint(ma, st)
        got[name] = cells.cell_dim(fp)
        ok &= got[name] == d and fp.dims == (1, 2, 3, 4)
    return ok, got


def check_ses(seed: int = 0, max_n: int = 5) -> CheckResult:
    bad = []
    total = 0
    for n in range(1, max_n + 1):
        for A in arcs.enumerate_arcs(n):
            total += 1
            res = arcs.verify_ses(A)
            if not (res["ok"] and res["hom_dim"] == _tri(n)):
                bad.append(A.to_json())
    return not bad, {"diagrams": total, "failures": bad}


def check_desingularization(seed: int = 0, max_n: int = 5) -> CheckResult:
    bad = []
    total = 0
    for n in range(1, max_n + 1):
        for k, A in enumerate(arcs.enumerate_arcs(n)):
            total += 1
            res = arcs.desing_dims(A, seed=seed + k, samples=3)
            if res["total"] != _tri(n):
                bad.append(A.to_json())
    return not bad, {"diagrams": total, "failures": bad, "seed": seed}


def check_demazure(seed: int = 0, max_n: int = 3) -> CheckResult:
    bad = []
    cases = 0
    for n in range(1, max_n + 1):
        weights = [pbw.fundamental(n, r) for r in range(1, n + 1)] + [(1,) * n]
        for seq in pbw.all_sequences(n):
            for lam in weights:
                cases += 1
                if not pbw.demazure_check(n, seq, lam)["equal"]:
                    bad.append([n, list(seq), list(lam)])
    return not bad, {"cases": cases, "mismatches": bad}


def _rand_fraction(rng: random.Random, zero_bias: float = 0.0, size: int = 1000) -> Fraction:
    if rng.random() < zero_bias:
        return Fraction(0)
    return Fraction(rng.randint(-size, size), rng.randint(1, 50))


def _nonzero_fraction(rng: random.Random) -> Fraction:
    while True:
        x = _rand_fraction(rng)
        if x:
            return x


def check_group_schemes(seed: int = 0, samples: int = 20) -> CheckResult:
    rng = random.Random(seed)
    bad = []
    for n in range(2, 5):
        for _ in range(samples):
            diag = [_rand_fraction(rng, 0.3) for _ in range(n - 1)]
            x = {(p, q): _rand_fraction(rng) for p in range(1, n + 2) for q in range(1, p)}
            rep = loci.slice_pbw(n, diag)
            if not (loci.check_automorphism(loci.gamma_pbw(n, diag, x), rep) and loci.flag_stabilizer_trivial(n, diag)):
                bad.append([n, [str(d) for d in diag]])
    for pattern in loci.SLICE3_STRATA:
        for _ in range(samples):
            lam = {}
            for key, flag in zip(((1, 1), (1, 2), (2, 2)), pattern):
                if flag is True:
                    lam[key] = _nonzero_fraction(rng)
                elif flag is None:
                    lam[key] = _rand_fraction(rng, 0.3)
            x = {(p, q): _rand_fraction(rng) for p in range(1, 5) for q in range(1, p)}
            if not loci.check_automorphism(loci.example_triple(lam, x), loci.slice_rep(3, lam)):
                bad.append([3, list(pattern)])
    return not bad, {"failures": bad, "seed": seed}


def check_top_cells(seed: int = 0, max_n_irr: int = 4, max_n_a: int = 5) -> CheckResult:
    detail = {"irreducible": 0, "ai": 0, "aij": 0, "failures": []}
    for n in range(2, max_n_irr + 1):
        e = tuple(range(1, n + 1))
        r1 = RankTuple.standard(n, 1)
        for iso in core.iso_classes((n + 1,) * n):
            if not ranks_from_iso(iso).dominates(r1):
                continue
            detail["irreducible"] += 1
            top = cells.top_cells(iso, e)
            if len(top) != 1 or cells.cell_dim(top[0]) != _tri(n):
                detail["failures"].append(str(iso))
    for n in range(2, max_n_a + 1):
        e = tuple(range(1, n + 1))
        for i in range(1, n):
            top = cells.top_cells(named_rep("Mai", n, (i,)), e)
            detail["ai"] += 1
            if len(top) < 2 or cells.cell_dim(top[0]) != _tri(n):
                detail["failures"].append(f"Mai:{i} n={n}")
            for j in range(i, n):
                detail["aij"] += 1
                top = cells.top_cells(named_rep("Maij", n, (i, j)), e)
                if cells.cell_dim(top[0]) <= _tri(n):
                    detail["failures"].append(f"Maij:{i},{j} n={n}")
    return not detail["failures"], detail


def check_order_equivalence(seed: int = 0, max_n: int = 3) -> CheckResult:
    bad = []
    pairs = 0
    for n in range(1, max_n + 1):
        classes = core.iso_classes((n + 1,) * n)
        for a in classes:
            for b in classes:
                pairs += 1
                if homalg.degenerates_to(a, b, "rank") != homalg.degenerates_to(a, b, "hom"):
                    bad.append([str(a), str(b)])
    return not bad, {"pairs": pairs, "mismatches": bad}


# --------------------------------------------------------------------- suites


@dataclass(frozen=True)
class Check:
    number: int
    name: str
    run: Callable[..., CheckResult]
    limit: float


ACCEPTANCE = (
    Check(1, "named rank tuples", check_named_ranks, 1.0),
    Check(2, "broken rhyme schemes", check_rhymes, 1.0),
    Check(3, "Schubert table n=4", check_schubert_table, 1.0),
    Check(4, "Catalan components", check_catalan_components, 30.0),
    Check(5, "counting identity", check_counting_identity, 600.0),
    Check(6, "cell examples", check_cell_examples, 1.0),
    Check(7, "short exact sequences", check_ses, 10.0),
    Check(8, "desingularization", check_desingularization, 30.0),
    Check(9, "Demazure dimensions", check_demazure, 60.0),
    Check(10, "group schemes", check_group_schemes, 5.0),
    Check(11, "top cells", check_top_cells, 60.0),
    Check(12, "order equivalence", check_order_equivalence, 60.0),
)

SUITES: dict[str, tuple[Check, ...]] = {
    "acceptance": ACCEPTANCE,
    "quick": tuple(c for c in ACCEPTANCE if c.number != 5),
    **{f"c{c.number}": (c,) for c in ACCEPTANCE},
}


def run_check(check: Check, seed: int = 0) -> dict:
    start = time.perf_counter()
    ok, detail = check.run(seed=seed)
    seconds = time.perf_counter() - start
    return {
        "id": check.number,
        "name": check.name,
        "ok": bool(ok),
        "detail": detail,
        "seconds": seconds,
        "limit": check.limit,
        "in_time": seconds <= check.limit,
    }


def run_suite(name: str, seed: int = 0) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    results = [run_check(c, seed) for c in SUITES[name]]
    return {"suite": name, "seed": seed, "checks": results, "ok": all(r["ok"] for r in results)}
