"""Loci of map tuples on C^{n+1}: flat, irreducible, normal, PBW.

Points are tuples of n-1 endomorphisms of an (n+1)-dimensional space, so
every vertex dimension is n+1. Also contains the rhyme-scheme
parametrization of flat irreducible orbits, the transversal slices and the
unipotent group schemes acting on them.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterator, Mapping, Sequence

from .core import MatrixRep, RankTuple, rank_tuple
from .errors import InvalidScheme, NoWitness, NotRegular, ShapeMismatch, WrongDims
from .linalg import Matrix


@dataclass(frozen=True)
class LocusReport:
    flat: bool
    irreducible: bool
    normal: bool
    pbw: bool
    iso: bool
    witness: int | tuple[int, int] | None

    def to_json(self) -> dict:
        w = list(self.witness) if isinstance(self.witness, tuple) else self.witness
        return {
            "flat": self.flat,
            "irreducible": self.irreducible,
            "normal": self.normal,
            "pbw": self.pbw,
            "iso": self.iso,
            "witness": w,
        }


def _check_square(rt: RankTuple) -> int:
    n = rt.n
    if rt.diag != (n + 1,) * n:
        raise WrongDims(f"expected every vertex of dimension {n + 1}, got {rt.diag}")
    return n


def _flags(rt: RankTuple) -> tuple[bool, bool, bool, bool]:
    n = _check_square(rt)
    pairs = list(rt.pairs())
    flat = all(rt[i, j] >= n - j + i for i, j in pairs)
    irreducible = flat and all(rt[i, j] >= n + 1 - j + i for i, j in pairs)
    iso = all(rt[i, j] == n + 1 for i, j in pairs)
    pbw = irreducible and all(
        n + 1 - rt[i, j] == sum(n + 1 - rt[k, k + 1] for k in range(i, j)) for i, j in pairs
    )
    return flat, irreducible, iso, pbw


def witness(rt: RankTuple) -> int | tuple[int, int]:
    """A distinguished orbit dominating ``rt`` that certifies its locus.

    Flat but reducible: the smallest i with ``r[i, i+1] = n-1``; then the orbit
    of type ``Mai:i`` degenerates to ``rt``. Not flat: the pair (i, j) with
    ``r[i, j] <= n-j+i-1``, minimizing j-i and then i; then the orbit of type
    ``Maij:i,j-1`` degenerates to ``rt``.
    """
    flat, irreducible, _, _ = _flags(rt)
    n = rt.n
    if irreducible:
        raise NoWitness("the rank tuple lies in the flat irreducible locus")
    if flat:
        return next(i for i in range(1, n) if rt[i, i + 1] == n - 1)
    for gap in range(1, n):
        for i in range(1, n - gap + 1):
            if rt[i, i + gap] <= n - gap - 1:
                return (i, i + gap)
    raise AssertionError("unreachable: non-flat tuple without a deficient pair")


def witness_kind(w: int | tuple[int, int]) -> tuple[str, list[int]]:
    """Named representation kind and parameters for a witness value."""
    if isinstance(w, tuple):
        return "Maij", [w[0], w[1] - 1]
    return "Mai", [w]


def classify(rt: RankTuple) -> LocusReport:
    flat, irreducible, iso, pbw = _flags(rt)
    return LocusReport(
        flat=flat,
        irreducible=irreducible,
        normal=flat and irreducible,
        pbw=pbw,
        iso=iso,
        witness=None if irreducible else witness(rt),
    )


# ----------------------------------------------------------- rhyme schemes


def check_scheme(b: Sequence[int]) -> tuple[int, ...]:
    b = tuple(int(x) for x in b)
    top = 0
    for x in b:
        if x < 0 or x > top + 1:
            raise InvalidScheme(f"{list(b)} is not a broken rhyme scheme")
        top = max(top, x)
    return b


def rhyme_enumerate(n: int) -> list[tuple[int, ...]]:
    """Broken rhyme schemes of length n-1, lexicographically ordered."""
    if n < 2:
        raise InvalidScheme("need n >= 2")
    out: list[tuple[int, ...]] = []

    def rec(prefix: list[int], top: int) -> None:
        if len(prefix) == n - 1:
            out.append(tuple(prefix))
            return
        for x in range(top + 2):
            rec(prefix + [x], max(top, x))

    rec([], 0)
    return out


def is_regular(b: Sequence[int]) -> bool:
    nz = [x for x in check_scheme(b) if x]
    return len(nz) == len(set(nz))


def projection(k: int, size: int, p: int | None = None) -> Matrix:
    """Coordinate projection killing the k-th basis vector (1-based)."""
    rows = [[int(r == c and r != k - 1) for c in range(size)] for r in range(size)]
    return Matrix(rows, size, size, p)


def scheme_to_rep(b: Sequence[int], p: int | None = None) -> MatrixRep:
    b = check_scheme(b)
    n = len(b) + 1
    maps = tuple(projection(x, n + 1, p) if x else Matrix.identity(n + 1, p) for x in b)
    return MatrixRep((n + 1,) * n, maps, p)


def scheme_to_ranks(b: Sequence[int]) -> RankTuple:
    b = check_scheme(b)
    n = len(b) + 1
    return RankTuple.from_function(
        n, [n + 1] * n, lambda i, j: n + 1 - len({x for x in b[i - 1 : j - 1] if x})
    )


def dseq_of_scheme(b: Sequence[int]) -> tuple[int, ...]:
    """Positions of the nonzero entries of a regular scheme."""
    if not is_regular(b):
        raise NotRegular(f"{list(b)} repeats a nonzero value")
    return tuple(i for i, x in enumerate(b, start=1) if x)


def scheme_of_dseq(n: int, seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(int(x) for x in seq)
    if any(not 1 <= x <= n - 1 for x in seq) or any(x >= y for x, y in zip(seq, seq[1:])):
        raise InvalidScheme(f"{list(seq)} is not strictly increasing in [1,{n - 1}]")
    b = [0] * (n - 1)
    for s, i in enumerate(seq, start=1):
        b[i - 1] = s
    return tuple(b)


# ------------------------------------------------------------------ census


def flat_rank_tuples(n: int) -> Iterator[RankTuple]:
    """Realizable rank tuples (all vertex dimensions n+1) with r >= n-j+i."""
    size = n + 1
    order = [(i, j) for i in range(1, n + 1) for j in range(n, i, -1)]
    known: dict[tuple[int, int], int] = {(i, i): size for i in range(1, n + 1)}

    def r(i: int, j: int) -> int:
        return 0 if i == 0 or j == n + 1 else known[(i, j)]

    def mult(i: int, j: int) -> int:
        return r(i, j) - r(i, j + 1) - r(i - 1, j) + r(i - 1, j + 1)

    def rec(k: int) -> Iterator[RankTuple]:
        if k == len(order):
            yield RankTuple.from_function(n, [size] * n, r)
            return
        i, j = order[k]
        for val in range(n - j + i, size + 1):
            known[(i, j)] = val
            if mult(i, j) < 0:
                continue
            if j == i + 1 and mult(i, i) < 0:
                continue
            yield from rec(k + 1)
        del known[(i, j)]

    yield from rec(0)


def pcal_canonical(seq: Sequence[frozenset[int]]) -> tuple[tuple[int, ...], ...]:
    """Orbit invariant of a subset sequence under relabeling of the ground set.

    Each ground element is described by the positions of the subsets that
    contain it; the sorted list of these nonempty position sets determines
    the orbit.
    """
    members: dict[int, list[int]] = {}
    for pos, subset in enumerate(seq):
        for x in subset:
            members.setdefault(x, []).append(pos)
    return tuple(sorted(tuple(v) for v in members.values()))


def pcal_orbits(n: int) -> list[tuple[tuple[int, ...], ...]]:
    """Canonical forms of the orbits of admissible subset sequences.

    An admissible sequence has n-1 subsets of {1..n+1}, each of size at most
    2, with consecutive unions of size at most 3.
    """
    length = n - 1
    types = [t for k in range(1, length + 1) for t in itertools.combinations(range(length), k)]
    out = []

    def ok(chosen: list[tuple[int, ...]]) -> bool:
        size = [0] * length
        for t in chosen:
            for pos in t:
                size[pos] += 1
        if any(s > 2 for s in size):
            return False
        for pos in range(length - 1):
            if sum(1 for t in chosen if pos in t or pos + 1 in t) > 3:
                return False
        return True

    def rec(start: int, chosen: list[tuple[int, ...]]) -> None:
        out.append(tuple(sorted(chosen)))
        if len(chosen) == n + 1:
            return
        for k in range(start, len(types)):
            chosen.append(types[k])
            if ok(chosen):
                rec(k, chosen)
            chosen.pop()

    rec(0, [])
    return sorted(set(out))


def pcal_rank_tuple(n: int, orbit: Sequence[Sequence[int]]) -> RankTuple:
    """Rank tuple of the coordinate projections attached to an orbit.

    Projections along coordinate vectors commute, so the composite from i to
    j kills exactly the union of the subsets in between.
    """
    subsets: list[set[int]] = [set() for _ in range(n - 1)]
    for label, positions in enumerate(orbit):
        for pos in positions:
            subsets[pos].add(label)
    return RankTuple.from_function(
        n, [n + 1] * n, lambda i, j: n + 1 - len(set().union(*subsets[i - 1 : j - 1]))
    )


def flat_orbit_census(n: int) -> dict:
    """Flat orbit count by rank tuples, next to the subset-sequence count.

    ``pcal_flat_count`` counts subset-sequence orbits whose projections are
    flat and ``pcal_image_count`` the distinct rank tuples they produce.
    """
    flat = set(flat_rank_tuples(n))
    orbits = pcal_orbits(n)
    images = [pcal_rank_tuple(n, orb) for orb in orbits]
    inside = [rt for rt in images if rt in flat]
    return {
        "rank_count": len(flat),
        "pcal_count": len(orbits),
        "pcal_flat_count": len(inside),
        "pcal_image_count": len(set(inside)),
    }


# ------------------------------------------------------ slices and groups

LambdaParams = Mapping[tuple[int, int], object]


def _lam(lam: LambdaParams, a: int, b: int) -> Fraction:
    return Fraction(lam.get((a, b), 0))


def slice_rep(n: int, lam: LambdaParams) -> MatrixRep:
    """The affine slice through the flat irreducible locus.

    ``lam`` maps pairs (a, b) with 1 <= a <= b <= n-1 to field elements;
    missing entries are zero.
    """
    size = n + 1
    maps = []
    for i in range(1, n):
        rows = [[Fraction(0)] * size for _ in range(size)]
        for p in range(1, size + 1):
            for q in range(1, size + 1):
                if p == q != i + 1:
                    rows[p - 1][q - 1] = Fraction(1)
                elif 2 <= p <= i + 1 <= q <= n:
                    rows[p - 1][q - 1] = _lam(lam, p - 1, q - 1)
        maps.append(Matrix(rows, size, size))
    return MatrixRep((size,) * n, tuple(maps))


def slice_pbw(n: int, diag: Sequence) -> MatrixRep:
    """The slice restricted to diagonal parameters ``lam[i, i] = diag[i-1]``."""
    if len(diag) != n - 1:
        raise ShapeMismatch(f"need {n - 1} diagonal parameters")
    return slice_rep(n, {(i, i): Fraction(x) for i, x in enumerate(diag, start=1)})


def gamma_pbw(n: int, diag: Sequence, x: Mapping[tuple[int, int], object]) -> list[Matrix]:
    """Group elements (g_1, ..., g_n) attached to PBW slice parameters.

    ``x`` maps pairs (p, q) with p > q to field elements (missing = 0).
    """
    if len(diag) != n - 1:
        raise ShapeMismatch(f"need {n - 1} diagonal parameters")
    lam = [None] + [Fraction(v) for v in diag]
    size = n + 1
    out = []
    for i in range(1, n + 1):
        rows = [[Fraction(0)] * size for _ in range(size)]
        for p in range(1, size + 1):
            for q in range(1, p + 1):
                if p == q:
                    value = Fraction(1)
                else:
                    xpq = Fraction(x.get((p, q), 0))
                    if i < q:
                        value = lam[q - 1] * xpq
                    elif q <= i < p:
                        value = xpq
                    else:
                        value = lam[p - 1] * xpq
                rows[p - 1][q - 1] = value
        out.append(Matrix(rows, size, size))
    return out


def check_automorphism(gs: Sequence[Matrix], rep: MatrixRep) -> bool:
    """Whether (g_1, ..., g_n) is an invertible endomorphism of ``rep``."""
    if len(gs) != rep.n:
        raise ShapeMismatch(f"need {rep.n} matrices, got {len(gs)}")
    for v, g in enumerate(gs):
        if g.shape != (rep.dims[v], rep.dims[v]):
            raise ShapeMismatch(f"matrix {v + 1} has shape {g.shape}")
        if g.rank() != rep.dims[v]:
            return False
    return all(gs[v + 1] @ f == f @ gs[v] for v, f in enumerate(rep.maps))


def flag_stabilizer_trivial(n: int, diag: Sequence) -> bool:
    """Only x = 0 keeps every <v_1, ..., v_i> fixed under g_i.

    The entries of g_i below the i-th row in the first i columns are linear
    in x; the stabilizer is trivial iff that linear map is injective.
    """
    size = n + 1
    coords = [(p, q) for p in range(1, size + 1) for q in range(1, p)]
    vectors = []
    for c in coords:
        gs = gamma_pbw(n, diag, {c: 1})
        vectors.append([gs[i - 1][p - 1, q - 1] for i in range(1, n + 1) for q in range(1, i + 1) for p in range(i + 1, size + 1)])
    return Matrix(vectors, len(vectors), len(vectors[0])).rank() == len(coords)


def example_triple(lam: LambdaParams, x: Mapping[tuple[int, int], object]) -> list[Matrix]:
    """The three group elements for n = 3 acting on the full slice."""
    l11, l12, l22 = (Fraction(lam.get(k, 0)) for k in ((1, 1), (1, 2), (2, 2)))
    X = {k: Fraction(v) for k, v in x.items()}
    x21, x31, x32, x41, x42, x43 = (X.get(k, Fraction(0)) for k in ((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)))
    g1 = [
        [1, 0, 0, 0],
        [x21, 1, 0, 0],
        [x31, l11 * x32, 1 + 2 * l12 * x32, 0],
        [x41, l11 * x42, l22 * x43 + 2 * l12 * x42, 1],
    ]
    g2 = [
        [1, 0, 0, 0],
        [l11 * x21 + l12 * x31, 1 + l12 * x32, l12**2 * x32, 0],
        [x31, x32, 1 + l12 * x32, 0],
        [x41, x42, l22 * x43 + l12 * x42, 1],
    ]
    g3 = [
        [1, 0, 0, 0],
        [l11 * x21 + 2 * l12 * x31, 1 + 2 * l12 * x32, 0, 0],
        [l22 * x31, l22 * x32, 1, 0],
        [x41, x42, x43, 1],
    ]
    return [Matrix(g, 4, 4) for g in (g1, g2, g3)]


# Parameter patterns of the five orbits of the n = 3 slice: for each of
# (lam11, lam12, lam22), True = nonzero, False = zero, None = unconstrained.
SLICE3_STRATA = (
    (True, None, True),
    (True, None, False),
    (False, None, True),
    (False, True, False),
    (False, False, False),
)
