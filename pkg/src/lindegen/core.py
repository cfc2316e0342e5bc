"""Representations of the equioriented type A quiver 1 -> 2 -> ... -> n.

Three descriptions of a representation are used throughout:

* :class:`MatrixRep`, an explicit chain of exact matrices,
* :class:`RankTuple`, the ranks of all composites of consecutive maps,
* :class:`IsoClass`, multiplicities of the interval modules ``U(i, j)``.

The interval module ``U(i, j)`` is one-dimensional at the vertices ``i..j``
with identity maps between them. Intervals are always written as pairs
``(i, j)`` with ``1 <= i <= j <= n``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from math import comb
from typing import Callable, Iterable, Iterator, Mapping, Sequence

from .errors import InvalidParams, LengthMismatch, NonRealizable, ShapeMismatch
from .linalg import Matrix, coerce

Interval = tuple[int, int]


def intervals(n: int) -> Iterator[Interval]:
    """All intervals of ``[1, n]`` in row-major order."""
    for i in range(1, n + 1):
        for j in range(i, n + 1):
            yield (i, j)


def check_dims(dims: Sequence[int], n: int | None = None) -> tuple[int, ...]:
    dims = tuple(int(d) for d in dims)
    if n is not None and len(dims) != n:
        raise LengthMismatch(f"expected {n} entries, got {len(dims)}")
    if not dims or any(d < 0 for d in dims):
        raise InvalidParams(f"bad dimension vector {dims}")
    return dims


def segment_degree(i: int, j: int, n: int) -> int:
    """Sort key placing long-reaching intervals first; injective on intervals."""
    return j - i + 1 + comb(n + 1, 2) - comb(j + 1, 2)


# --------------------------------------------------------------------- IsoClass


@dataclass(frozen=True)
class IsoClass:
    """Isomorphism class as a table of interval multiplicities."""

    n: int
    mult: tuple[tuple[Interval, int], ...]

    def __post_init__(self):
        if self.n < 1:
            raise InvalidParams("n must be positive")
        for (i, j), m in self.mult:
            if not 1 <= i <= j <= self.n:
                raise InvalidParams(f"interval ({i},{j}) outside [1,{self.n}]")
            if m <= 0:
                raise InvalidParams("stored multiplicities must be positive")

    @classmethod
    def of(cls, n: int, table: Mapping[Interval, int] | Iterable[tuple[Interval, int]] = ()) -> "IsoClass":
        items = table.items() if isinstance(table, Mapping) else table
        acc: dict[Interval, int] = {}
        for (i, j), m in items:
            if m < 0:
                raise InvalidParams(f"negative multiplicity for ({i},{j})")
            acc[(int(i), int(j))] = acc.get((int(i), int(j)), 0) + int(m)
        return cls(n, tuple(sorted((k, v) for k, v in acc.items() if v)))

    @classmethod
    def from_summands(cls, n: int, summands: Iterable[Interval]) -> "IsoClass":
        return cls.of(n, [(s, 1) for s in summands])

    def __getitem__(self, interval: Interval) -> int:
        return dict(self.mult).get(tuple(interval), 0)

    def as_dict(self) -> dict[Interval, int]:
        return dict(self.mult)

    def __add__(self, other: "IsoClass") -> "IsoClass":
        if self.n != other.n:
            raise LengthMismatch("direct sum of classes over different quivers")
        return IsoClass.of(self.n, list(self.mult) + list(other.mult))

    @property
    def dims(self) -> tuple[int, ...]:
        d = [0] * self.n
        for (i, j), m in self.mult:
            for v in range(i, j + 1):
                d[v - 1] += m
        return tuple(d)

    def summands(self) -> list[Interval]:
        """Intervals listed with repetition, in row-major order."""
        return [iv for iv, m in self.mult for _ in range(m)]

    def num_summands(self) -> int:
        return sum(m for _, m in self.mult)

    def is_zero(self) -> bool:
        return not self.mult

    def projective_part(self) -> "IsoClass":
        return IsoClass(self.n, tuple(x for x in self.mult if x[0][1] == self.n))

    def nonprojective_part(self) -> "IsoClass":
        return IsoClass(self.n, tuple(x for x in self.mult if x[0][1] != self.n))

    def table(self) -> tuple[int, ...]:
        """Row-major multiplicity vector, used as a canonical sort key."""
        d = self.as_dict()
        return tuple(d.get(iv, 0) for iv in intervals(self.n))

    def to_json(self) -> dict:
        return {"n": self.n, "m": [{"i": i, "j": j, "mult": m} for (i, j), m in self.mult]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "IsoClass":
        return cls.of(int(obj["n"]), [((e["i"], e["j"]), e["mult"]) for e in obj["m"]])

    def __str__(self) -> str:
        if not self.mult:
            return "0"
        return " + ".join(f"U{i},{j}" + (f"^{m}" if m > 1 else "") for (i, j), m in self.mult)


# -------------------------------------------------------------------- RankTuple


@dataclass(frozen=True)
class RankTuple:
    """Ranks ``r[i, j]`` of the composite maps from vertex i to vertex j.

    ``rows[i-1]`` holds ``r[i, i+1], ..., r[i, n]``. Indexing follows the
    usual conventions ``r[i, i] = dims[i]`` and ``r[0, j] = r[i, n+1] = 0``.
    """

    n: int
    diag: tuple[int, ...]
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if len(self.diag) != self.n:
            raise LengthMismatch("diagonal length differs from n")
        if len(self.rows) != self.n or any(len(r) != self.n - k - 1 for k, r in enumerate(self.rows)):
            raise ShapeMismatch("rank rows have wrong lengths")

    @classmethod
    def from_function(cls, n: int, diag: Sequence[int], rank: Callable[[int, int], int]) -> "RankTuple":
        rows = tuple(tuple(int(rank(i, j)) for j in range(i + 1, n + 1)) for i in range(1, n + 1))
        return cls(n, tuple(int(d) for d in diag), rows)

    @classmethod
    def standard(cls, n: int, level: int) -> "RankTuple":
        """Rank tuple with ``r[i, j] = n + 1 - level * (j - i)`` style shapes.

        ``level`` 0 gives the generic tuple (all ranks n+1), level 1 gives
        ``n+1-j+i`` and level 2 gives ``n-j+i``.
        """
        funcs = {
            0: lambda i, j: n + 1,
            1: lambda i, j: n + 1 - j + i,
            2: lambda i, j: n - j + i,
        }
        if level not in funcs:
            raise InvalidParams("level must be 0, 1 or 2")
        return cls.from_function(n, [n + 1] * n, funcs[level])

    def __getitem__(self, idx: tuple[int, int]) -> int:
        i, j = idx
        if i == 0 or j == self.n + 1:
            return 0
        if not 1 <= i <= j <= self.n:
            raise IndexError(f"rank index ({i},{j}) out of range")
        if i == j:
            return self.diag[i - 1]
        return self.rows[i - 1][j - i - 1]

    def pairs(self) -> Iterator[tuple[int, int]]:
        for i in range(1, self.n + 1):
            for j in range(i + 1, self.n + 1):
                yield (i, j)

    def multiplicity(self, i: int, j: int) -> int:
        return self[i, j] - self[i, j + 1] - self[i - 1, j] + self[i - 1, j + 1]

    def violations(self) -> list[str]:
        """Human-readable list of violated invariants (empty when valid)."""
        out = []
        n = self.n
        for i in range(1, n + 1):
            for j in range(i, n + 1):
                if self[i, j] < 0:
                    out.append(f"negative rank at ({i},{j})")
                if self[i, j] < self[i, j + 1]:
                    out.append(f"r[{i},{j}] < r[{i},{j + 1}]")
                if self[i - 1, j] > self[i, j]:
                    out.append(f"r[{i - 1},{j}] > r[{i},{j}]")
                if self.multiplicity(i, j) < 0:
                    out.append(f"negative multiplicity at ({i},{j})")
        for i in range(1, n + 1):
            for j in range(i + 1, n + 1):
                for k in range(j, n + 1):
                    for l in range(k + 1, n + 1):
                        if self[i, l] + self[j, k] < self[i, k] + self[j, l]:
                            out.append(f"four-point inequality fails at {(i, j, k, l)}")
        return out

    def dominates(self, other: "RankTuple") -> bool:
        """Entrywise comparison of off-diagonal ranks."""
        return all(self[i, j] >= other[i, j] for i, j in self.pairs())

    def to_json(self) -> dict:
        return {"n": self.n, "diag": list(self.diag), "r": [list(r) for r in self.rows[: self.n - 1]]}

    @classmethod
    def from_json(cls, obj: Mapping) -> "RankTuple":
        n = int(obj["n"])
        rows = [tuple(int(x) for x in r) for r in obj["r"]]
        if len(rows) == n - 1:
            rows.append(())
        return cls(n, tuple(int(d) for d in obj["diag"]), tuple(rows))


def ranks_from_iso(iso: IsoClass) -> RankTuple:
    n = iso.n
    mult = iso.mult

    def count(i: int, j: int) -> int:
        return sum(m for (a, b), m in mult if a <= i and j <= b)

    return RankTuple.from_function(n, iso.dims, count)


def iso_from_ranks(rt: RankTuple) -> IsoClass:
    table = {}
    for i, j in intervals(rt.n):
        m = rt.multiplicity(i, j)
        if m < 0:
            raise NonRealizable(f"multiplicity of U({i},{j}) would be {m}")
        table[(i, j)] = m
    return IsoClass.of(rt.n, table)


def _compositions(total: int, parts: int) -> Iterator[tuple[int, ...]]:
    if parts == 1:
        yield (total,)
        return
    for first in range(total + 1):
        for rest in _compositions(total - first, parts - 1):
            yield (first,) + rest


def iso_classes(dims: Sequence[int]) -> list[IsoClass]:
    """Every isomorphism class with the given dimension vector, sorted by table."""
    dims = check_dims(dims)
    n = len(dims)
    out: list[IsoClass] = []

    # Walk left endpoints in order; summands starting at i fill what the
    # earlier ones still covering i leave open.
    def rec(i: int, table: dict[Interval, int]) -> None:
        if i > n:
            out.append(IsoClass.of(n, table))
            return
        fresh = dims[i - 1] - sum(m for (a, b), m in table.items() if b >= i)
        if fresh < 0:
            return
        for comp in _compositions(fresh, n - i + 1):
            extra = {(i, j): m for j, m in zip(range(i, n + 1), comp) if m}
            rec(i + 1, {**table, **extra})

    rec(1, {})
    out.sort(key=IsoClass.table)
    return out


# -------------------------------------------------------------------- MatrixRep


def _field_name(p: int | None) -> str:
    return "Q" if p is None else f"Fp:{p}"


def _parse_field(s: str) -> int | None:
    if s == "Q":
        return None
    if s.startswith("Fp:"):
        return int(s[3:])
    raise InvalidParams(f"unknown field {s!r}")


@dataclass(frozen=True)
class MatrixRep:
    """A chain of exact linear maps ``V_1 -> V_2 -> ... -> V_n``.

    ``maps[i]`` goes from vertex i+1 to vertex i+2 (0-based list), so it has
    shape ``dims[i+1] x dims[i]`` and acts on column vectors.
    """

    dims: tuple[int, ...]
    maps: tuple[Matrix, ...]
    p: int | None = None

    def __post_init__(self):
        if len(self.maps) != len(self.dims) - 1:
            raise ShapeMismatch("need exactly n-1 maps")
        for k, f in enumerate(self.maps):
            if f.shape != (self.dims[k + 1], self.dims[k]) or f.p != self.p:
                raise ShapeMismatch(f"map {k + 1} has shape {f.shape}")

    @property
    def n(self) -> int:
        return len(self.dims)

    @classmethod
    def build(cls, dims: Sequence[int], maps: Sequence[Sequence[Sequence]], p: int | None = None) -> "MatrixRep":
        dims = check_dims(dims)
        mats = tuple(Matrix(m, dims[k + 1], dims[k], p) for k, m in enumerate(maps))
        return cls(dims, mats, p)

    def composite(self, i: int, j: int) -> Matrix:
        """The map from vertex i to vertex j (1-based, ``i <= j``)."""
        out = Matrix.identity(self.dims[i - 1], self.p)
        for k in range(i, j):
            out = self.maps[k - 1] @ out
        return out

    def to_json(self) -> dict:
        return {
            "n": self.n,
            "dims": list(self.dims),
            "field": _field_name(self.p),
            "maps": [[[str(x) for x in row] for row in f.rows] for f in self.maps],
        }

    @classmethod
    def from_json(cls, obj: Mapping) -> "MatrixRep":
        dims = check_dims(obj["dims"], int(obj["n"]))
        return cls.build(dims, obj["maps"], _parse_field(obj.get("field", "Q")))


def rank_tuple(rep: MatrixRep) -> RankTuple:
    n = rep.n
    rows = []
    for i in range(1, n + 1):
        comp = Matrix.identity(rep.dims[i - 1], rep.p)
        row = []
        for j in range(i + 1, n + 1):
            comp = rep.maps[j - 2] @ comp
            row.append(comp.rank())
        rows.append(tuple(row))
    return RankTuple(n, rep.dims, tuple(rows))


def ordered_segments(iso: IsoClass) -> list[Interval]:
    """Summands with repetition, sorted by :func:`segment_degree`."""
    return sorted(iso.summands(), key=lambda s: segment_degree(s[0], s[1], iso.n))


def canonical_rep(iso: IsoClass, p: int | None = None) -> MatrixRep:
    """0/1 matrices sending each segment basis vector to its successor."""
    segs = ordered_segments(iso)
    n = iso.n
    columns = [[k for k, (a, b) in enumerate(segs) if a <= v <= b] for v in range(1, n + 1)]
    one = coerce(1, p)
    maps = []
    for v in range(1, n):
        src, dst = columns[v - 1], columns[v]
        pos = {k: r for r, k in enumerate(dst)}
        m = [[0] * len(src) for _ in dst]
        for c, k in enumerate(src):
            if segs[k][1] > v:
                m[pos[k]][c] = one
        maps.append(Matrix(m, len(dst), len(src), p))
    return MatrixRep(tuple(len(c) for c in columns), tuple(maps), p)


# ------------------------------------------------------ named representations


def projective(i: int, n: int) -> Interval:
    return (i, n)


def injective(i: int) -> Interval:
    return (1, i)


def _from_a(n: int, a: Sequence[int]) -> IsoClass:
    if len(a) != n - 1 or any(x < 0 for x in a) or sum(a) > n + 1:
        raise InvalidParams(f"need n-1 non-negative entries summing to at most n+1, got {list(a)}")
    table: dict[Interval, int] = {(1, n): n + 1 - sum(a)}
    for i in range(1, n):
        table[(1, i)] = table.get((1, i), 0) + a[i - 1]
        table[(i + 1, n)] = table.get((i + 1, n), 0) + a[i - 1]
    return IsoClass.of(n, table)


def _check_dseq(n: int, seq: Sequence[int]) -> tuple[int, ...]:
    seq = tuple(int(x) for x in seq)
    if any(not 1 <= x <= n - 1 for x in seq) or any(x >= y for x, y in zip(seq, seq[1:])):
        raise InvalidParams(f"need a strictly increasing sequence in [1,{n - 1}], got {list(seq)}")
    return seq


def named_rep(kind: str, n: int, params: Sequence[int] = ()) -> IsoClass:
    """Isomorphism classes of the distinguished degenerations.

    ``kind`` is one of ``M0`` (generic), ``M1``, ``M2``, ``Ma`` (params = a),
    ``Mai`` (params = (i,)), ``Maij`` (params = (i, j)), ``Mi`` (params = a
    strictly increasing sequence).
    """
    if n < 1:
        raise InvalidParams("n must be positive")
    params = [int(x) for x in params]
    if kind == "M0":
        return IsoClass.of(n, {(1, n): n + 1})
    if kind == "M1":
        return _from_a(n, [1] * (n - 1))
    if kind == "M2":
        return IsoClass.from_summands(
            n,
            [(i, n) for i in range(1, n + 1)]
            + [(i, i) for i in range(1, n + 1)]
            + [(1, i - 1) for i in range(2, n + 1)],
        )
    if kind == "Ma":
        return _from_a(n, params)
    if kind == "Mai":
        if len(params) != 1 or not 1 <= params[0] <= n - 1:
            raise InvalidParams("Mai needs one index in [1, n-1]")
        a = [0] * (n - 1)
        a[params[0] - 1] = 2
        return _from_a(n, a)
    if kind == "Maij":
        if len(params) != 2 or not 1 <= params[0] <= params[1] <= n - 1:
            raise InvalidParams("Maij needs 1 <= i <= j <= n-1")
        i, j = params
        a = [0] * (n - 1)
        if i == j:
            a[i - 1] = 3
        else:
            for k in range(i, j + 1):
                a[k - 1] = 1
            a[i - 1] = a[j - 1] = 2
        return _from_a(n, a)
    if kind == "Mi":
        seq = _check_dseq(n, params)
        summands = [(1, n)] * (n + 1 - len(seq))
        for i in seq:
            summands += [(1, i), (i + 1, n)]
        return IsoClass.from_summands(n, summands)
    raise InvalidParams(f"unknown representation kind {kind!r}")


def parse_named(text: str, n: int) -> IsoClass:
    """Parse ``M2``, ``Ma:1,0,2``, ``Mai:2``, ``Maij:1,2`` or ``Mi:1,3``."""
    kind, _, rest = text.partition(":")
    params = [int(x) for x in rest.split(",") if x.strip()] if rest else []
    return named_rep(kind, n, params)


def dumps(obj) -> str:
    """Deterministic JSON text."""
    return json.dumps(obj, sort_keys=True, separators=(",", ":"))
