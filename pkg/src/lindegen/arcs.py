"""Non-crossing arc diagrams and the components of the maximally degenerate flat fiber."""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping

from .cells import fixed_points
from .core import Interval, IsoClass, MatrixRep, RankTuple, canonical_rep, iso_from_ranks, named_rep, rank_tuple
from .errors import GenericityFailure, InvalidParams, NegativeMultiplicity
from .homalg import embeds, hom_dim
from .linalg import Matrix, intersect, preimage, span_rref

Arc = tuple[int, int]


@dataclass(frozen=True)
class ArcDiagram:
    n: int
    arcs: tuple[Arc, ...]

    def __post_init__(self):
        for i, j in self.arcs:
            if not 1 <= i < j <= self.n:
                raise InvalidParams(f"arc ({i},{j}) is not inside [1,{self.n}]")
        if list(self.arcs) != sorted(set(self.arcs)):
            raise InvalidParams("arcs must be sorted and distinct")

    @classmethod
    def of(cls, n: int, arcs) -> "ArcDiagram":
        return cls(n, tuple(sorted({(int(i), int(j)) for i, j in arcs})))

    def is_noncrossing(self) -> bool:
        return not any(
            i <= k < j <= l for (i, j) in self.arcs for (k, l) in self.arcs if (i, j) != (k, l)
        )

    def starting_at(self, v: int) -> int:
        return sum(1 for i, _ in self.arcs if i == v)

    def ending_at(self, v: int) -> int:
        return sum(1 for _, j in self.arcs if j == v)

    def to_json(self) -> dict:
        return {"n": self.n, "arcs": [list(a) for a in self.arcs]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "ArcDiagram":
        return cls.of(int(obj["n"]), obj["arcs"])


def enumerate_arcs(n: int) -> list[ArcDiagram]:
    """All non-crossing diagrams on n points, ordered by their sorted arc lists."""
    pairs = [(i, j) for i in range(1, n + 1) for j in range(i + 1, n + 1)]
    out: list[tuple[Arc, ...]] = []

    def compatible(a: Arc, b: Arc) -> bool:
        (i, j), (k, l) = sorted([a, b])
        return not (i <= k < j <= l)

    def rec(idx: int, chosen: list[Arc]) -> None:
        if idx == len(pairs):
            out.append(tuple(chosen))
            return
        rec(idx + 1, chosen)
        cand = pairs[idx]
        if all(compatible(cand, c) for c in chosen):
            chosen.append(cand)
            rec(idx + 1, chosen)
            chosen.pop()

    rec(0, [])
    return [ArcDiagram(n, a) for a in sorted(out)]


def rank_of_arcs(A: ArcDiagram) -> RankTuple:
    """Ranks i - #{arcs (a, b) with a <= i < b <= j}; diagonal entries are i."""
    n = A.n
    return RankTuple.from_function(
        n, range(1, n + 1), lambda i, j: i - sum(1 for a, b in A.arcs if a <= i < b <= j)
    )


def n_of_arcs(A: ArcDiagram) -> IsoClass:
    n = A.n
    table: dict = {}
    for i in range(1, n + 1):
        c = 1 + A.ending_at(i) - A.starting_at(i)
        if c < 0:
            raise NegativeMultiplicity(f"projective P{i} would have multiplicity {c}")
        table[(i, n)] = c
    for i, j in A.arcs:
        table[(i, j - 1)] = table.get((i, j - 1), 0) + 1
    return IsoClass.of(n, table)


def q_of_arcs(A: ArcDiagram) -> IsoClass:
    n = A.n
    table: dict = {}
    for i in range(1, n + 1):
        d = 1 + A.starting_at(i) - A.ending_at(i)
        if d < 0:
            raise NegativeMultiplicity(f"injective I{i} would have multiplicity {d}")
        table[(1, i)] = d
    for i, j in A.arcs:
        table[(i + 1, j)] = table.get((i + 1, j), 0) + 1
    return IsoClass.of(n, table)


def complete_chains(A: ArcDiagram) -> list[Arc]:
    """Maximal arc paths (i, j); isolated vertices give (i, i)."""
    nxt = {i: j for i, j in A.arcs}
    has_incoming = {j for _, j in A.arcs}
    out = []
    for i in range(1, A.n + 1):
        if i in has_incoming:
            continue
        j = i
        while j in nxt:
            j = nxt[j]
        out.append((i, j))
    return out


def dual(A: ArcDiagram) -> ArcDiagram:
    return ArcDiagram.of(A.n, [(i - 1, j) for i, j in complete_chains(A) if i >= 2])


def op(A: ArcDiagram) -> ArcDiagram:
    n = A.n
    return ArcDiagram.of(n, [(n + 1 - j, n + 1 - i) for i, j in A.arcs])


@lru_cache(maxsize=None)
def _m2_fixed_point_pairs(n: int) -> frozenset:
    m2 = named_rep("M2", n)
    return frozenset(
        (fp.sub_class(), fp.quotient_class()) for fp in fixed_points(m2, tuple(range(1, n + 1)))
    )


def _interval_sum(n: int, summands: list[Interval]) -> MatrixRep:
    """Direct sum of interval modules, basis ordered by summand then vertex."""
    cols = [[k for k, (a, b) in enumerate(summands) if a <= v <= b] for v in range(1, n + 1)]
    maps = []
    for v in range(1, n):
        pos = {k: r for r, k in enumerate(cols[v])}
        rows = [[0] * len(cols[v - 1]) for _ in cols[v]]
        for c, k in enumerate(cols[v - 1]):
            if summands[k][1] > v:
                rows[pos[k]][c] = 1
        maps.append(Matrix(rows, len(cols[v]), len(cols[v - 1])))
    return MatrixRep(tuple(len(c) for c in cols), tuple(maps))


def _interval_morphism(n, src, dst, entries) -> list[Matrix]:
    """Vertex matrices of sum(scalar * canonical map src[s] -> dst[t])."""
    src_cols = [[k for k, (a, b) in enumerate(src) if a <= v <= b] for v in range(1, n + 1)]
    dst_cols = [[k for k, (a, b) in enumerate(dst) if a <= v <= b] for v in range(1, n + 1)]
    mats = []
    for v in range(1, n + 1):
        rows = [[0] * len(src_cols[v - 1]) for _ in dst_cols[v - 1]]
        spos = {k: c for c, k in enumerate(src_cols[v - 1])}
        tpos = {k: r for r, k in enumerate(dst_cols[v - 1])}
        for s, t, scalar in entries:
            (a, b), (c, d) = src[s], dst[t]
            if not c <= a <= d <= b:
                raise InvalidParams(f"no nonzero map U{a},{b} -> U{c},{d}")
            if a <= v <= d:
                rows[tpos[t]][spos[s]] += scalar
        mats.append(Matrix(rows, len(dst_cols[v - 1]), len(src_cols[v - 1])))
    return mats


def ses_embedding(A: ArcDiagram) -> tuple[MatrixRep, MatrixRep, list[Matrix]]:
    """An explicit monomorphism N_A -> M2 assembled from elementary sequences.

    Pieces: for each arc (i, j) the diagonal map U(i,j-1) -> I(j-1) + S(i);
    for each complete chain (i, j) the diagonal map P(j) -> P(i) + S(j); the
    identity on P(j) for every arc endpoint j; and I(i), i < n, added to the
    target whenever no arc ends at i + 1.
    """
    n = A.n
    src: list[Interval] = []
    dst: list[Interval] = []
    entries: list[tuple[int, int, int]] = []

    def piece(sub: Interval | None, targets: list[Interval]) -> None:
        base = len(dst)
        dst.extend(targets)
        if sub is not None:
            src.append(sub)
            for t in range(len(targets)):
                entries.append((len(src) - 1, base + t, 1))

    for i, j in A.arcs:
        piece((i, j - 1), [(1, j - 1), (i, i)])
    for i, j in complete_chains(A):
        piece((j, n), [(i, n), (j, j)])
    for j in sorted({j for _, j in A.arcs}):
        piece((j, n), [(j, n)])
    ends = {j for _, j in A.arcs}
    for i in range(1, n):
        if i + 1 not in ends:
            piece(None, [(1, i)])
    sub_rep, big_rep = _interval_sum(n, src), _interval_sum(n, dst)
    return sub_rep, big_rep, _interval_morphism(n, src, dst, entries)


def cokernel_ranks(sub: MatrixRep, big: MatrixRep, phi: list[Matrix]) -> RankTuple:
    """Rank tuple of big / phi(sub) (phi must be a morphism)."""
    n = big.n
    images = [phi[v].column_space() for v in range(n)]
    quot_dims = [big.dims[v] - len(images[v]) for v in range(n)]

    def rank(i: int, j: int) -> int:
        f = big.composite(i, j)
        pushed = [f.apply(col) for col in Matrix.identity(big.dims[i - 1]).rows]
        return len(span_rref(pushed + images[j - 1], big.dims[j - 1], None)) - len(images[j - 1])

    return RankTuple.from_function(n, quot_dims, rank)


def verify_ses(A: ArcDiagram) -> dict:
    """Check the short exact sequence N_A -> M2 -> Q_{A*} for ``A``.

    Keys: ``dims`` (dimension vectors add up), ``embeds`` (N_A embeds into
    M2), ``quotient`` (the explicit monomorphism of :func:`ses_embedding` is
    an injective morphism between the right classes with cokernel of class
    Q_{A*}), ``hom`` (Hom(N_A, Q_{A*}) has dimension n(n+1)/2), ``hom_dim``,
    ``quotient_coordinate`` (whether some coordinate copy of N_A already has
    quotient Q_{A*}; informational) and ``ok``.
    """
    n = A.n
    m2 = named_rep("M2", n)
    sub, quot = n_of_arcs(A), q_of_arcs(dual(A))
    h = hom_dim(sub, quot)
    sub_rep, big_rep, phi = ses_embedding(A)
    is_morphism = all(
        phi[v + 1] @ sub_rep.maps[v] == big_rep.maps[v] @ phi[v] for v in range(n - 1)
    )
    injective = all(phi[v].rank() == sub_rep.dims[v] for v in range(n))
    classes_match = (
        iso_from_ranks(rank_tuple(sub_rep)) == sub and iso_from_ranks(rank_tuple(big_rep)) == m2
    )
    quotient_ok = (
        is_morphism
        and injective
        and classes_match
        and iso_from_ranks(cokernel_ranks(sub_rep, big_rep, phi)) == quot
    )
    report = {
        "dims": tuple(a + b for a, b in zip(sub.dims, quot.dims)) == m2.dims,
        "embeds": embeds(sub, m2),
        "quotient": quotient_ok,
        "hom": h == n * (n + 1) // 2,
        "hom_dim": h,
        "quotient_coordinate": (sub, quot) in _m2_fixed_point_pairs(n),
    }
    report["ok"] = all(report[k] for k in ("dims", "embeds", "quotient", "hom"))
    return report


# ------------------------------------------------------- desingularization


def _random_subspace_containing(base, ambient, target_dim, dim, rng) -> list[list[Fraction]]:
    """``base`` plus random vectors from ``ambient`` up to ``target_dim``."""
    out = span_rref(base, dim, None)
    attempts = 0
    while len(out) < target_dim:
        attempts += 1
        if attempts > 50:
            raise GenericityFailure("could not extend a subspace randomly")
        vec = [Fraction(0)] * dim
        for v in ambient:
            c = rng.randint(-1000, 1000)
            vec = [x + c * y for x, y in zip(vec, v)]
        out = span_rref(out + [vec], dim, None)
    return out


def _tower_sample(A: ArcDiagram, rng: random.Random) -> tuple[list[int], list[dict]]:
    n = A.n
    rep = canonical_rep(named_rep("M2", n))
    size = n + 1
    ra = rank_of_arcs(A)
    r2 = RankTuple.standard(n, 2)
    spaces: dict[Arc, list] = {}
    images: dict[Arc, list] = {}
    fibers, notes = [], []
    for i in range(1, n + 1):
        for j in range(n, i - 1, -1):
            if (i, j) not in images:
                images[(i, j)] = rep.composite(i, j).column_space()
            image = images[(i, j)]
            if j < n:
                allowed = intersect(preimage(rep.maps[j - 1], spaces[(i, j + 1)]), image, size, None)
            else:
                allowed = span_rref(image, size, None)
            below = spaces.get((i - 1, j), [])
            r_ij, r_below = ra[i, j], ra[i - 1, j]
            a = r_ij - r_below
            b = len(allowed)
            if b - r_below < a or a < 0:
                raise GenericityFailure(f"empty fiber at ({i},{j})")
            fibers.append(a * (b - r_below - a))
            predicted = (ra[i, j + 1] if j < n else 0) + r2[i, j] - (r2[i, j + 1] if j < n else 0)
            if predicted != b:
                notes.append({"pair": [i, j], "sampled": b, "closed_form": predicted})
            spaces[(i, j)] = _random_subspace_containing(below, allowed, r_ij, size, rng)
    return fibers, notes


def desing_dims(A: ArcDiagram, seed: int = 0, samples: int = 3) -> dict:
    """Grassmannian fiber dimensions along the resolution tower of a component.

    The tower is walked ``samples`` times with independent random choices;
    the fiber dimensions must agree. On disagreement one fresh batch is tried
    before giving up.
    """
    if samples < 1:
        raise InvalidParams("need at least one sample")
    rng = random.Random(seed)
    for _ in range(2):
        runs = [_tower_sample(A, rng) for _ in range(samples)]
        fiber_lists = [f for f, _ in runs]
        if all(f == fiber_lists[0] for f in fiber_lists):
            fibers = fiber_lists[0]
            return {
                "fiber_dims": fibers,
                "total": sum(fibers),
                "seed": seed,
                "samples": samples,
                "closed_form_mismatches": runs[0][1],
            }
    raise GenericityFailure(f"fiber dimensions disagree across samples: {fiber_lists}")
