"""Projection sequences, Weyl words, degree functions and Demazure dimensions.

Permutations act on ``{1, ..., N}``; a word ``[a_1, ..., a_m]`` stands for the
product ``s_{a_1} s_{a_2} ... s_{a_m}`` of adjacent transpositions, applied to
numbers right to left. Weights are written in fundamental-weight (Dynkin
label) coordinates.
"""

from __future__ import annotations

import itertools
from collections import defaultdict
from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .core import IsoClass, _check_dseq, named_rep
from .errors import InvalidParams, LengthMismatch, NegativeCoefficient, NotDominant, NotReduced
from .linalg import Matrix

RootPair = tuple[int, int]


def check_seq(n: int, seq: Iterable[int]) -> tuple[int, ...]:
    """Validate a projection sequence ``1 <= i_1 < ... < i_k <= n-1``."""
    return _check_dseq(n, list(seq))


def all_sequences(n: int) -> list[tuple[int, ...]]:
    """Every projection sequence for the given n, by length then lexicographically."""
    return [c for k in range(n) for c in itertools.combinations(range(1, n), k)]


def h_vector(n: int, seq: Sequence[int]) -> list[int]:
    seq = check_seq(n, seq)
    return [sum(1 for i in seq if i < s) for s in range(1, n + 1)]


def ell_vector(n: int, seq: Sequence[int]) -> list[int]:
    return [h + j for j, h in enumerate(h_vector(n, seq), start=1)]


def schubert_module(n: int, seq: Sequence[int]) -> IsoClass:
    return named_rep("Mi", n, check_seq(n, seq))


def projection_labels(n: int, seq: Sequence[int]) -> list[str]:
    """Names of the maps f_1, ..., f_{n-1}: ``pr_{i+1}`` where i is in the sequence."""
    seq = check_seq(n, seq)
    return [f"pr_{i + 1}" if i in seq else "id" for i in range(1, n)]


# ------------------------------------------------------------ permutations


def perm_of_word(N: int, word: Sequence[int]) -> tuple[int, ...]:
    """One-line notation ``(w(1), ..., w(N))`` of the product of the word."""
    images = list(range(1, N + 1))
    for a in reversed(word):
        if not 1 <= a <= N - 1:
            raise LengthMismatch(f"s_{a} is not a simple reflection of rank {N - 1}")
        images = [a + 1 if x == a else a if x == a + 1 else x for x in images]
    return tuple(images)


def inversions(perm: Sequence[int]) -> int:
    return sum(1 for x, y in itertools.combinations(perm, 2) if x > y)


@dataclass(frozen=True)
class WeylWord:
    N: int
    word: tuple[int, ...]

    @property
    def perm(self) -> tuple[int, ...]:
        return perm_of_word(self.N, self.word)

    def __call__(self, x: int) -> int:
        return self.perm[x - 1]

    @property
    def length(self) -> int:
        return len(self.word)

    def is_reduced(self) -> bool:
        return inversions(self.perm) == len(self.word)

    def to_json(self) -> dict:
        return {"N": self.N, "word": list(self.word), "perm": list(self.perm)}


def weyl_word(n: int, seq: Sequence[int]) -> WeylWord:
    """The word ``w_n w_{n-1} ... w_1`` with ``w_k = s_{h_k+1} ... s_{h_k+k}``."""
    seq = check_seq(n, seq)
    h = h_vector(n, seq)
    word: list[int] = []
    for k in range(n, 0, -1):
        word += [h[k - 1] + t for t in range(1, k + 1)]
    return WeylWord(n + 1 + len(seq), tuple(word))


def action_holds(n: int, seq: Sequence[int]) -> bool:
    """The values of w at ell_j (and ell_j - 1 after a jump) follow the h-vector."""
    h, ell = h_vector(n, seq), ell_vector(n, seq)
    w = weyl_word(n, seq)
    prev = 0
    for j in range(1, n + 1):
        lj, hj = ell[j - 1], h[j - 1]
        if lj == prev + 1:
            if w(lj) != hj + n - j + 2:
                return False
        elif w(lj - 1) != hj or w(lj) != hj + n + 1:
            return False
        prev = lj
    return True


def window(n: int, seq: Sequence[int], j: int) -> frozenset[int]:
    """Expected image of ``{1, ..., ell_j}``: ``{1..h_j}`` plus j values ending at n+1+h_j."""
    hj = h_vector(n, seq)[j - 1]
    return frozenset(range(1, hj + 1)) | frozenset(range(n + 2 + hj - j, n + 2 + hj))


def window_holds(n: int, seq: Sequence[int]) -> bool:
    w = weyl_word(n, seq)
    ell = ell_vector(n, seq)
    return all(frozenset(w.perm[: ell[j - 1]]) == window(n, seq, j) for j in range(1, n + 1))


def negative_inversion_pairs(w: WeylWord) -> set[RootPair]:
    """Pairs (t, u) with ``alpha_{t,u} > 0`` and ``w(alpha_{t,u}) < 0``.

    ``alpha_{t,u} = eps_t - eps_{u+1}``; these are the negatives of
    ``w^{-1}(positive roots)`` that land among the negative roots.
    """
    perm = w.perm
    return {(t, u) for t in range(1, w.N) for u in range(t, w.N) if perm[t - 1] > perm[u]}


def inversion_negative_roots(n: int, seq: Sequence[int]) -> set[RootPair]:
    """The roots ``-alpha_{t,u}`` (as pairs (t,u)) and a check against the ell-grid."""
    found = negative_inversion_pairs(weyl_word(n, seq))
    ell = ell_vector(n, seq)
    expected = {(ell[p - 1], ell[q - 1]) for p in range(1, n + 1) for q in range(p, n + 1)}
    if found != expected:
        raise AssertionError(f"inversion set {sorted(found)} differs from {sorted(expected)}")
    return found


# ------------------------------------------------------------ degree functions


@dataclass(frozen=True)
class DegreeTable:
    n: int
    seq: tuple[int, ...]
    values: tuple[tuple[RootPair, int], ...]

    def __getitem__(self, pq: RootPair) -> int:
        return dict(self.values)[pq]

    def as_dict(self) -> dict[RootPair, int]:
        return dict(self.values)

    def is_convex(self) -> bool:
        t = self.as_dict()
        return all(
            t[(p, q)] <= t[(p, s - 1)] + t[(s, q)]
            for (p, q) in t
            for s in range(p + 1, q + 1)
        )


def degree_closed_form(n: int, seq: Sequence[int], p: int, q: int) -> int:
    return q - p + 1 - sum(1 for i in seq if p <= i < q)


def degree_table(n: int, seq: Sequence[int]) -> DegreeTable:
    """Degrees ``t_{p,q}`` by applying ``D_{i_1}``, ..., ``D_{i_k}`` to the heights.

    The result is compared entrywise with the closed form.
    """
    seq = check_seq(n, seq)
    table = {(p, q): q - p + 1 for p in range(1, n + 1) for q in range(p, n + 1)}
    for l in seq:
        table = {(p, q): t - 1 if p <= l < q else t for (p, q), t in table.items()}
    for (p, q), t in table.items():
        if t != degree_closed_form(n, seq, p, q):
            raise AssertionError(f"recursion and closed form disagree at {(p, q)}")
    return DegreeTable(n, seq, tuple(sorted(table.items())))


# ------------------------------------------------ partially abelianized brackets


def bracket(seq: Sequence[int], x: RootPair, y: RootPair) -> RootPair | None:
    """``[f_x, f_y]`` for ``x = (p, q)``, ``y = (s, r)`` with ``p <= s``.

    Returns the pair of the resulting root vector (coefficient +1) or None.
    """
    (p, q), (s, r) = x, y
    if not (p <= q and s <= r and p <= s):
        raise InvalidParams("need p <= q, s <= r and p <= s")
    if s != q + 1 or q in seq:
        return None
    return (p, r)


def bracket_signed(seq: Sequence[int], x: RootPair, y: RootPair) -> dict[RootPair, int]:
    """Antisymmetric extension of :func:`bracket` to all ordered pairs."""
    if x[0] <= y[0]:
        res, sign = bracket(seq, x, y), 1
    else:
        res, sign = bracket(seq, y, x), -1
    return {res: sign} if res else {}


def _bracket_linear(seq, u: dict[RootPair, int], v: dict[RootPair, int]) -> dict[RootPair, int]:
    out: dict[RootPair, int] = defaultdict(int)
    for a, ca in u.items():
        for b, cb in v.items():
            for c, cc in bracket_signed(seq, a, b).items():
                out[c] += ca * cb * cc
    return {k: v for k, v in out.items() if v}


def roots(n: int) -> list[RootPair]:
    return [(p, q) for p in range(1, n + 1) for q in range(p, n + 1)]


def jacobi_holds(n: int, seq: Sequence[int]) -> bool:
    seq = check_seq(n, seq)
    basis = roots(n)
    for x, y, z in itertools.product(basis, repeat=3):
        total: dict[RootPair, int] = defaultdict(int)
        for a, b, c in ((x, y, z), (y, z, x), (z, x, y)):
            for k, v in _bracket_linear(seq, {a: 1}, _bracket_linear(seq, {b: 1}, {c: 1})).items():
                total[k] += v
        if any(total.values()):
            return False
    return True


def grading_holds(n: int, seq: Sequence[int]) -> bool:
    """Degrees add along every nonzero bracket."""
    t = degree_table(n, seq).as_dict()
    for x in roots(n):
        for y in roots(n):
            if x[0] <= y[0]:
                res = bracket(seq, x, y)
                if res and t[res] != t[x] + t[y]:
                    return False
    return True


def root_matrix(N: int, a: int, b: int) -> Matrix:
    """Matrix model of ``f_{a,b}``: ``-E_{b+1,a}`` in the N x N matrices."""
    rows = [[0] * N for _ in range(N)]
    rows[b][a - 1] = -1
    return Matrix(rows, N, N)


def eta_check(n: int, seq: Sequence[int]) -> bool:
    """Whether ``f_{p,q} -> f_{ell_p, ell_q}`` turns the bracket table into matrix commutators."""
    seq = check_seq(n, seq)
    N = n + 1 + len(seq)
    ell = ell_vector(n, seq)
    image = {x: root_matrix(N, ell[x[0] - 1], ell[x[1] - 1]) for x in roots(n)}
    zero = Matrix.zeros(N, N)
    for x in roots(n):
        for y in roots(n):
            comm = image[x] @ image[y] - image[y] @ image[x]
            expect = zero
            for z, c in bracket_signed(seq, x, y).items():
                expect = expect + (image[z] if c > 0 else -image[z])
            if comm != expect:
                return False
    return True


# ------------------------------------------------------------------ weights


def _check_weight(lam: Sequence[int]) -> tuple[int, ...]:
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise NegativeCoefficient(f"weight {list(lam)} has a negative coefficient")
    return lam


def psi_weight(n: int, seq: Sequence[int], lam: Sequence[int]) -> tuple[int, ...]:
    """Move the coefficient of ``varpi_j`` to ``varpi_{ell_j}``."""
    lam = _check_weight(lam)
    if len(lam) != n:
        raise LengthMismatch(f"expected {n} coefficients, got {len(lam)}")
    seq = check_seq(n, seq)
    out = [0] * (n + len(seq))
    for j, lj in enumerate(ell_vector(n, seq), start=1):
        out[lj - 1] = lam[j - 1]
    return tuple(out)


def weyl_dim(N: int, lam: Sequence[int]) -> int:
    """Dimension of the irreducible module of highest weight lam for sl_N."""
    lam = _check_weight(lam)
    if len(lam) != N - 1:
        raise LengthMismatch(f"sl_{N} weights have {N - 1} coordinates")
    value = Fraction(1)
    for i in range(N - 1):
        for j in range(i, N - 1):
            value *= Fraction(sum(lam[i : j + 1]) + j - i + 1, j - i + 1)
    assert value.denominator == 1
    return int(value)


def _simple_root(rank: int, i: int) -> tuple[int, ...]:
    """Dynkin labels of alpha_i."""
    v = [0] * rank
    v[i - 1] = 2
    if i > 1:
        v[i - 2] = -1
    if i < rank:
        v[i] = -1
    return tuple(v)


def demazure_operator(char: dict[tuple[int, ...], int], i: int, rank: int) -> dict[tuple[int, ...], int]:
    """Apply ``D_i`` to a character, one weight string at a time."""
    alpha = _simple_root(rank, i)
    out: dict[tuple[int, ...], int] = defaultdict(int)

    def shift(mu, k):
        return tuple(m + k * a for m, a in zip(mu, alpha))

    for mu, c in char.items():
        m = mu[i - 1]
        if m >= 0:
            for k in range(m + 1):
                out[shift(mu, -k)] += c
        elif m <= -2:
            for k in range(1, -m):
                out[shift(mu, k)] -= c
    return {k: v for k, v in out.items() if v}


def demazure_character(word: Sequence[int], lam: Sequence[int]) -> dict[tuple[int, ...], int]:
    char = {tuple(lam): 1}
    for a in reversed(word):
        char = demazure_operator(char, a, len(lam))
    return char


def demazure_dim(w: WeylWord | Sequence[int], lam: Sequence[int]) -> int:
    """Dimension of the Demazure module ``V_w(lam)``.

    A bare list of indices is read in rank ``len(lam) + 1``.
    """
    lam = tuple(int(x) for x in lam)
    if any(x < 0 for x in lam):
        raise NotDominant(f"weight {list(lam)} is not dominant")
    if not isinstance(w, WeylWord):
        w = WeylWord(len(lam) + 1, tuple(int(a) for a in w))
    if len(lam) != w.N - 1:
        raise LengthMismatch(f"sl_{w.N} weights have {w.N - 1} coordinates")
    if not w.is_reduced():
        raise NotReduced(f"word {list(w.word)} is not reduced")
    char = demazure_character(w.word, lam)
    if any(c < 0 for c in char.values()):
        raise AssertionError("Demazure character with negative multiplicity")
    return sum(char.values())


def longest_word(N: int) -> WeylWord:
    """``s_1 s_2 ... s_{N-1} s_1 ... s_{N-2} ... s_1``."""
    return WeylWord(N, tuple(a for k in range(N - 1, 0, -1) for a in range(1, k + 1)))


def fundamental(n: int, r: int) -> tuple[int, ...]:
    return tuple(int(k == r) for k in range(1, n + 1))


def demazure_check(n: int, seq: Sequence[int], lam: Sequence[int]) -> dict:
    """Compare ``dim V_{w_i}(Psi(lam))`` with ``dim V(lam)``."""
    w = weyl_word(n, seq)
    d = demazure_dim(w, psi_weight(n, seq, lam))
    v = weyl_dim(n + 1, lam)
    return {"demazure": d, "weyl": v, "equal": d == v}


def schubert_data(n: int, seq: Sequence[int]) -> dict:
    w = weyl_word(n, seq)
    return {
        "h": h_vector(n, seq),
        "ell": ell_vector(n, seq),
        "word": list(w.word),
        "length": w.length,
        "reduced": w.is_reduced(),
    }
