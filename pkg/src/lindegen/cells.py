"""Torus fixed points and attracting cells of quiver Grassmannians Gr_e(M).

``M`` is given by its isomorphism class and realized in the segment basis of
:func:`lindegen.core.canonical_rep`. A fixed point keeps, for every segment,
either nothing or a suffix of it.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from functools import lru_cache
from typing import Sequence

from .core import Interval, IsoClass, canonical_rep, check_dims, ordered_segments
from .errors import BudgetExceeded, DimMismatch, InvalidParams
from .homalg import hom_dim, stratum_dim
from .linalg import rref_rows


@dataclass(frozen=True)
class SegmentLayout:
    """Segments of a representation, in the order used for the torus grading."""

    n: int
    segments: tuple[Interval, ...]

    def column(self, v: int) -> list[int]:
        """Indices of segments covering vertex ``v``, top to bottom."""
        return [k for k, (a, b) in enumerate(self.segments) if a <= v <= b]

    def dims(self) -> tuple[int, ...]:
        return tuple(len(self.column(v)) for v in range(1, self.n + 1))

    def kernel_below_image(self) -> bool:
        """Within each column, segments ending there come after those that continue."""
        for v in range(1, self.n):
            ends = [b == v for b in (self.segments[k][1] for k in self.column(v))]
            if any(ends[t] and not ends[t + 1] for t in range(len(ends) - 1)):
                return False
        return True


def layout(iso: IsoClass) -> SegmentLayout:
    return SegmentLayout(iso.n, tuple(ordered_segments(iso)))


@dataclass(frozen=True)
class FixedPoint:
    """Suffix choice per segment; ``starts[k] == 0`` leaves segment k out."""

    layout: SegmentLayout
    starts: tuple[int, ...]

    def __post_init__(self):
        if len(self.starts) != len(self.layout.segments):
            raise DimMismatch("one start per segment is required")
        for s, (a, b) in zip(self.starts, self.layout.segments):
            if s and not a <= s <= b:
                raise DimMismatch(f"start {s} outside segment [{a},{b}]")

    def contains(self, k: int, v: int) -> bool:
        s = self.starts[k]
        return bool(s) and s <= v <= self.layout.segments[k][1]

    @property
    def dims(self) -> tuple[int, ...]:
        d = [0] * self.layout.n
        for s, (_, b) in zip(self.starts, self.layout.segments):
            if s:
                for v in range(s, b + 1):
                    d[v - 1] += 1
        return tuple(d)

    def sub_class(self) -> IsoClass:
        """Isomorphism class of the subrepresentation (the chosen suffixes)."""
        return IsoClass.from_summands(
            self.layout.n, [(s, b) for s, (_, b) in zip(self.starts, self.layout.segments) if s]
        )

    def quotient_class(self) -> IsoClass:
        """Isomorphism class of M/L (the complementary prefixes)."""
        pieces = []
        for s, (a, b) in zip(self.starts, self.layout.segments):
            if not s:
                pieces.append((a, b))
            elif s > a:
                pieces.append((a, s - 1))
        return IsoClass.from_summands(self.layout.n, pieces)

    def to_json(self) -> list[int]:
        return list(self.starts)


def _check_e(iso: IsoClass, e: Sequence[int]) -> tuple[int, ...]:
    e = check_dims(e, iso.n)
    if any(x > d for x, d in zip(e, iso.dims)):
        raise DimMismatch(f"e = {e} exceeds dimension vector {iso.dims}")
    return e


def fixed_points(iso: IsoClass, e: Sequence[int]) -> list[FixedPoint]:
    """All coordinate subrepresentations with dimension vector ``e``.

    Output is lexicographic in the starts vector (0 = segment left out).
    """
    e = _check_e(iso, e)
    lay = layout(iso)
    segs = lay.segments
    n = iso.n
    # remaining[k][v]: how many segments with index >= k cover vertex v
    remaining = [[0] * (n + 2) for _ in range(len(segs) + 1)]
    for k in range(len(segs) - 1, -1, -1):
        a, b = segs[k]
        remaining[k] = remaining[k + 1][:]
        for v in range(a, b + 1):
            remaining[k][v] += 1
    out: list[FixedPoint] = []
    counts = [0] * (n + 2)
    chosen = [0] * len(segs)

    def feasible(k: int) -> bool:
        return all(counts[v] <= e[v - 1] <= counts[v] + remaining[k][v] for v in range(1, n + 1))

    def rec(k: int) -> None:
        if k == len(segs):
            out.append(FixedPoint(lay, tuple(chosen)))
            return
        a, b = segs[k]
        for s in [0] + list(range(a, b + 1)):
            chosen[k] = s
            if s:
                for v in range(s, b + 1):
                    counts[v] += 1
            if feasible(k + 1):
                rec(k + 1)
            if s:
                for v in range(s, b + 1):
                    counts[v] -= 1
        chosen[k] = 0

    if feasible(0):
        rec(0)
    return out


def cell_dim(fp: FixedPoint) -> int:
    """Dimension of the attracting cell of ``fp``.

    Every chosen suffix contributes one free coordinate for each later
    segment passing through its first vertex without being chosen there.
    """
    segs = fp.layout.segments
    total = 0
    for k, s in enumerate(fp.starts):
        if not s:
            continue
        for j in range(k + 1, len(segs)):
            a, b = segs[j]
            if a <= s <= b and not fp.contains(j, s):
                total += 1
    return total


def tangent_dim(fp: FixedPoint) -> int:
    """Dimension of the tangent space Hom(L, M/L) at the fixed point."""
    return hom_dim(fp.sub_class(), fp.quotient_class())


def poincare(iso: IsoClass, e: Sequence[int]) -> list[int]:
    """Coefficients (ascending) of the sum of q^(cell dimension)."""
    dims = [cell_dim(fp) for fp in fixed_points(iso, e)]
    if not dims:
        return []
    coeffs = [0] * (max(dims) + 1)
    for d in dims:
        coeffs[d] += 1
    return coeffs


def euler(iso: IsoClass, e: Sequence[int]) -> int:
    return len(fixed_points(iso, e))


def evaluate(coeffs: Sequence[int], q: int) -> int:
    return sum(c * q**k for k, c in enumerate(coeffs))


def strata(iso: IsoClass, e: Sequence[int]) -> list[dict]:
    """Fixed points grouped by the isomorphism class of the subrepresentation."""
    groups: dict[IsoClass, list[int]] = defaultdict(list)
    for fp in fixed_points(iso, e):
        groups[fp.sub_class()].append(cell_dim(fp))
    out = []
    for cls in sorted(groups, key=IsoClass.table):
        ds = groups[cls]
        out.append(
            {
                "class": cls,
                "cell_count": len(ds),
                "max_cell_dim": max(ds),
                "hom_dim_formula": stratum_dim(cls, iso),
            }
        )
    return out


def top_cells(iso: IsoClass, e: Sequence[int]) -> list[FixedPoint]:
    fps = fixed_points(iso, e)
    if not fps:
        return []
    dims = [cell_dim(fp) for fp in fps]
    top = max(dims)
    return [fp for fp, d in zip(fps, dims) if d == top]


# ------------------------------------------------- counting over F_p


def subspaces(coords: Sequence[int], k: int, dim: int, p: int):
    """All k-dimensional subspaces of the coordinate span ``coords``.

    Yields echelon bases as lists of length-``dim`` rows.
    """
    coords = list(coords)
    for pivots in itertools.combinations(range(len(coords)), k):
        free_slots = [
            (r, c) for r, pc in enumerate(pivots) for c in range(pc + 1, len(coords)) if c not in pivots
        ]
        for values in itertools.product(range(p), repeat=len(free_slots)):
            rows = [[0] * dim for _ in range(k)]
            for r, pc in enumerate(pivots):
                rows[r][coords[pc]] = 1
            for (r, c), x in zip(free_slots, values):
                rows[r][coords[c]] = x
            yield rows


class _Counter:
    """Memoized count of chains ``f_v U_v <= U_{v+1}`` over GF(p).

    Only the image ``f_v(U_v)`` matters for the later vertices, so the
    recursion runs over candidate images X and weights each by the number of
    subspaces U_v containing the required part and mapping onto X.
    """

    def __init__(self, iso: IsoClass, e: tuple[int, ...], p: int, budget: int):
        rep = canonical_rep(iso, p)
        self.dims = rep.dims
        self.maps = [m.rows for m in rep.maps]
        self.e = e
        self.p = p
        self.budget = budget
        self.work = 0
        self.memo: dict[tuple[int, tuple], int] = {}
        self.image_bases = []
        for v, f in enumerate(self.maps):
            columns = [[f[r][c] % p for r in range(len(f))] for c in range(self.dims[v])]
            basis, pivots = rref_rows(columns, self.dims[v + 1], p)
            self.image_bases.append((basis, list(pivots)))

    def image(self, v: int, basis) -> tuple:
        """Echelon basis of ``f_v(span basis)`` (v is 0-based)."""
        p = self.p
        f = self.maps[v]
        imgs = [[sum(f[r][c] * x[c] for c in range(len(x))) % p for r in range(len(f))] for x in basis]
        reduced, _ = rref_rows(imgs, self.dims[v + 1], p)
        return tuple(tuple(r) for r in reduced)

    def branches(self, v: int, w: tuple):
        """Pairs (number of U_v over X, echelon basis of X) for U_v containing span(w)."""
        p = self.p
        need = self.e[v] - len(w)
        if need < 0:
            return
        basis, pivots = self.image_bases[v]
        rank = len(basis)
        kernel = self.dims[v] - rank
        fw = self.image(v, w)
        # U_v ⊇ W is fixed by X = f(U_v) up to a choice transversal to ker f;
        # work modulo W, where ker f contributes a subspace of dimension c.
        c = kernel - (len(w) - len(fw))
        local, local_pivots = rref_rows([[row[t] for t in pivots] for row in fw], rank, p)
        free = [t for t in range(rank) if t not in local_pivots]
        for x in range(len(fw), min(self.e[v], rank) + 1):
            ambient = x + kernel - len(w)
            meet = need + c - ambient
            if meet < 0 or meet > c:
                continue
            weight = gaussian_binomial(c, meet, p) * p ** ((ambient - c) * (c - meet))
            for extra in subspaces(free, x - len(fw), rank, p):
                self.work += 1
                if self.work > self.budget:
                    raise BudgetExceeded(f"more than {self.budget} subspaces visited")
                coords = [list(r) for r in local] + extra
                vectors = [[sum(a * b[col] for a, b in zip(row, basis)) % p for col in range(self.dims[v + 1])] for row in coords]
                reduced, _ = rref_rows(vectors, self.dims[v + 1], p)
                yield weight, tuple(tuple(r) for r in reduced)

    def count_from(self, v: int, w: tuple) -> int:
        """Number of ways to choose U_v, ..., U_n with U_v containing span(w)."""
        if v == len(self.dims) - 1:
            return gaussian_binomial(self.dims[v] - len(w), self.e[v] - len(w), self.p)
        key = (v, w)
        if key in self.memo:
            return self.memo[key]
        total = sum(weight * self.count_from(v + 1, x) for weight, x in self.branches(v, w))
        self.memo[key] = total
        return total


def _count_shard(args) -> int:
    iso, e, p, budget, firsts = args
    counter = _Counter(iso, e, p, budget)
    return sum(weight * counter.count_from(1, x) for weight, x in firsts)


def count_points_fq(iso: IsoClass, e: Sequence[int], p: int, budget: int = 50_000_000, jobs: int = 1) -> int:
    """Number of F_p-points of Gr_e(M), by enumeration of subspace chains.

    Sharding over the image of U_1 is done with ``jobs`` worker processes.
    """
    e = _check_e(iso, e)
    if p < 2 or any(p % d == 0 for d in range(2, int(p**0.5) + 1)):
        raise InvalidParams(f"{p} is not prime")
    counter = _Counter(iso, e, p, budget)
    if jobs <= 1 or iso.n == 1:
        return counter.count_from(0, ())
    firsts = list(counter.branches(0, ()))
    shards = [firsts[k::jobs] for k in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        return sum(pool.map(_count_shard, [(iso, e, p, budget, s) for s in shards]))


@lru_cache(maxsize=None)
def gaussian_binomial(m: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of GF(q)^m."""
    if k < 0 or k > m:
        return 0
    num = den = 1
    for t in range(k):
        num *= q ** (m - t) - 1
        den *= q ** (t + 1) - 1
    return num // den
