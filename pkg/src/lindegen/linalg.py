"""Exact matrices over the rationals or a prime field.

``p is None`` selects the rationals (entries are :class:`fractions.Fraction`),
an integer ``p`` selects GF(p) with entries stored as ints in ``range(p)``.
Shapes are explicit so that matrices with a zero dimension behave.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Sequence

from .errors import ShapeMismatch


def coerce(x, p: int | None):
    """Bring an int, Fraction or ``"a/b"`` string into the field."""
    if isinstance(x, str):
        x = Fraction(x)
    if p is None:
        return Fraction(x)
    if isinstance(x, Fraction):
        return x.numerator * pow(x.denominator, -1, p) % p
    return int(x) % p


def _inv(x, p):
    return Fraction(1) / x if p is None else pow(x, -1, p)


def rref_rows(rows: list[list], ncols: int, p: int | None) -> tuple[list[list], list[int]]:
    """Reduced row echelon form of a mutable row list (modified in place).

    Returns the nonzero rows and the pivot columns.
    """
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = next((k for k in range(r, nrows) if rows[k][c]), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = _inv(rows[r][c], p)
        if p is None:
            rows[r] = [v * inv for v in rows[r]]
        else:
            rows[r] = [v * inv % p for v in rows[r]]
        prow = rows[r]
        for k in range(nrows):
            if k != r and rows[k][c]:
                factor = rows[k][c]
                if p is None:
                    rows[k] = [a - factor * b for a, b in zip(rows[k], prow)]
                else:
                    rows[k] = [(a - factor * b) % p for a, b in zip(rows[k], prow)]
        pivots.append(c)
        r += 1
    return rows[:r], pivots


class Matrix:
    """Immutable exact matrix with explicit shape."""

    __slots__ = ("rows", "nrows", "ncols", "p")

    def __init__(self, rows: Iterable[Sequence], nrows: int, ncols: int, p: int | None = None):
        data = tuple(tuple(coerce(v, p) for v in row) for row in rows)
        if len(data) != nrows or any(len(row) != ncols for row in data):
            raise ShapeMismatch(f"expected {nrows}x{ncols} matrix")
        self.rows = data
        self.nrows = nrows
        self.ncols = ncols
        self.p = p

    @classmethod
    def _raw(cls, rows: tuple, nrows: int, ncols: int, p) -> "Matrix":
        m = object.__new__(cls)
        m.rows, m.nrows, m.ncols, m.p = rows, nrows, ncols, p
        return m

    @classmethod
    def zeros(cls, nrows: int, ncols: int, p: int | None = None) -> "Matrix":
        z = coerce(0, p)
        return cls._raw(tuple((z,) * ncols for _ in range(nrows)), nrows, ncols, p)

    @classmethod
    def identity(cls, size: int, p: int | None = None) -> "Matrix":
        one, zero = coerce(1, p), coerce(0, p)
        rows = tuple(tuple(one if a == b else zero for b in range(size)) for a in range(size))
        return cls._raw(rows, size, size, p)

    @classmethod
    def from_columns(cls, cols: Sequence[Sequence], nrows: int, p: int | None = None) -> "Matrix":
        return cls([[c[i] for c in cols] for i in range(nrows)], nrows, len(cols), p)

    @property
    def shape(self) -> tuple[int, int]:
        return self.nrows, self.ncols

    def __getitem__(self, idx):
        i, j = idx
        return self.rows[i][j]

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.shape == other.shape
            and self.p == other.p
            and self.rows == other.rows
        )

    def __hash__(self) -> int:
        return hash((self.rows, self.nrows, self.ncols, self.p))

    def __repr__(self) -> str:
        return f"Matrix({[list(map(str, r)) for r in self.rows]}, {self.nrows}, {self.ncols}, p={self.p})"

    def _check_same(self, other: "Matrix") -> None:
        if self.shape != other.shape or self.p != other.p:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check_same(other)
        p = self.p
        rows = tuple(
            tuple((a + b) if p is None else (a + b) % p for a, b in zip(r, s))
            for r, s in zip(self.rows, other.rows)
        )
        return Matrix._raw(rows, self.nrows, self.ncols, p)

    def __neg__(self) -> "Matrix":
        p = self.p
        rows = tuple(tuple(-a if p is None else (-a) % p for a in r) for r in self.rows)
        return Matrix._raw(rows, self.nrows, self.ncols, p)

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.ncols != other.nrows or self.p != other.p:
            raise ShapeMismatch(f"cannot multiply {self.shape} by {other.shape}")
        p = self.p
        cols = list(zip(*other.rows)) if other.nrows else [()] * other.ncols
        zero = coerce(0, p)
        out = []
        for r in self.rows:
            row = []
            for c in cols:
                s = sum((a * b for a, b in zip(r, c) if a and b), zero)
                row.append(s if p is None else s % p)
            out.append(tuple(row))
        return Matrix._raw(tuple(out), self.nrows, other.ncols, p)

    def transpose(self) -> "Matrix":
        rows = tuple(zip(*self.rows)) if self.nrows else tuple(() for _ in range(self.ncols))
        return Matrix._raw(rows, self.ncols, self.nrows, self.p)

    def is_zero(self) -> bool:
        return not any(any(r) for r in self.rows)

    def rref(self) -> tuple[list[list], list[int]]:
        return rref_rows([list(r) for r in self.rows], self.ncols, self.p)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list[list]:
        """Basis of the right kernel as coordinate lists."""
        reduced, pivots = self.rref()
        free = [c for c in range(self.ncols) if c not in set(pivots)]
        zero, one = coerce(0, self.p), coerce(1, self.p)
        basis = []
        for f in free:
            v = [zero] * self.ncols
            v[f] = one
            for row, pc in zip(reduced, pivots):
                v[pc] = -row[f] if self.p is None else (-row[f]) % self.p
            basis.append(v)
        return basis

    def column_space(self) -> list[list]:
        """A basis (as coordinate lists) of the image, in reduced echelon form."""
        reduced, _ = self.transpose().rref()
        return reduced

    def apply(self, vec: Sequence) -> list:
        p = self.p
        out = []
        for r in self.rows:
            s = sum(a * b for a, b in zip(r, vec))
            out.append(s if p is None else s % p)
        return out


def span_rref(vectors: Sequence[Sequence], dim: int, p: int | None) -> list[list]:
    """Echelon basis of the span of ``vectors`` inside a ``dim``-dimensional space."""
    return rref_rows([list(v) for v in vectors], dim, p)[0]


def intersect(a: Sequence[Sequence], b: Sequence[Sequence], dim: int, p: int | None) -> list[list]:
    """Basis of the intersection of two subspaces given by spanning lists."""
    a = span_rref(a, dim, p)
    b = span_rref(b, dim, p)
    if not a or not b:
        return []
    # Solve sum x_k a_k = sum y_l b_l.
    cols = [list(v) for v in a] + [[-x if p is None else (-x) % p for x in v] for v in b]
    system = Matrix.from_columns(cols, dim, p)
    out = []
    for sol in system.nullspace():
        vec = [coerce(0, p)] * dim
        for coeff, v in zip(sol[: len(a)], a):
            if coeff:
                vec = [x + coeff * y for x, y in zip(vec, v)]
        if p is not None:
            vec = [x % p for x in vec]
        out.append(vec)
    return span_rref(out, dim, p)


def preimage(m: Matrix, target: Sequence[Sequence]) -> list[list]:
    """Basis of ``{v : m v in span(target)}``."""
    dim_out = m.nrows
    t = span_rref(target, dim_out, m.p)
    # Quotient by span(target): v lies in the preimage iff m v is killed by the
    # projection onto a complement, i.e. by the rows of a kernel of t^T.
    if t:
        annihilator = Matrix(t, len(t), dim_out, m.p).nullspace()
    else:
        annihilator = [list(r) for r in Matrix.identity(dim_out, m.p).rows]
    if not annihilator:
        return [list(r) for r in Matrix.identity(m.ncols, m.p).rows]
    ann = Matrix(annihilator, len(annihilator), dim_out, m.p)
    return (ann @ m).nullspace()
