"""Hom, Ext and the Euler form for interval modules, plus orders and embeddings."""

from __future__ import annotations

import itertools
import random
from typing import Sequence

from .core import IsoClass, MatrixRep, RankTuple, canonical_rep, iso_from_ranks, ranks_from_iso
from .errors import DimMismatch, EmptyStratum, LengthMismatch, WrongDims
from .linalg import Matrix

# A large prime for generic sampling; failures happen with probability ~ deg/p.
GENERIC_PRIME = 2_147_483_647


def euler_form(d: Sequence[int], e: Sequence[int]) -> int:
    if len(d) != len(e):
        raise LengthMismatch(f"dimension vectors of lengths {len(d)} and {len(e)}")
    return sum(a * b for a, b in zip(d, e)) - sum(d[k] * e[k + 1] for k in range(len(d) - 1))


def hom_indec(i: int, j: int, k: int, l: int) -> int:
    """dim Hom(U(i,j), U(k,l))."""
    return int(k <= i <= l <= j)


def ext_indec(k: int, l: int, i: int, j: int) -> int:
    """dim Ext^1(U(k,l), U(i,j))."""
    return int(k + 1 <= i <= l + 1 <= j)


def _same_quiver(a: IsoClass, b: IsoClass) -> None:
    if a.n != b.n:
        raise LengthMismatch("classes live on quivers of different size")


def hom_dim(a: IsoClass, b: IsoClass) -> int:
    _same_quiver(a, b)
    return sum(ma * mb * hom_indec(i, j, k, l) for (i, j), ma in a.mult for (k, l), mb in b.mult)


def ext_dim(a: IsoClass, b: IsoClass) -> int:
    """dim Ext^1(a, b), computed as Hom minus the Euler form."""
    return hom_dim(a, b) - euler_form(a.dims, b.dims)


def ext_dim_intervals(a: IsoClass, b: IsoClass) -> int:
    """dim Ext^1(a, b) summed from the interval formula (redundant check)."""
    _same_quiver(a, b)
    return sum(ma * mb * ext_indec(i, j, k, l) for (i, j), ma in a.mult for (k, l), mb in b.mult)


# ------------------------------------------------------- explicit Hom spaces


def _hom_system(src: MatrixRep, dst: MatrixRep) -> tuple[Matrix, list[tuple[int, int, int]]]:
    """Linear system whose kernel is Hom(src, dst).

    Unknowns are the entries of phi_v : src_v -> dst_v; equations say
    ``g_v phi_v = phi_{v+1} f_v``.
    """
    if src.n != dst.n or src.p != dst.p:
        raise LengthMismatch("representations over different quivers or fields")
    index: dict[tuple[int, int, int], int] = {}
    for v in range(src.n):
        for r in range(dst.dims[v]):
            for c in range(src.dims[v]):
                index[(v, r, c)] = len(index)
    eqs = []
    for v in range(src.n - 1):
        f, g = src.maps[v], dst.maps[v]
        for r in range(dst.dims[v + 1]):
            for c in range(src.dims[v]):
                row = [0] * len(index)
                # (g phi_v)[r, c] = sum_k g[r, k] phi_v[k, c]
                for k in range(dst.dims[v]):
                    if g[r, k]:
                        row[index[(v, k, c)]] += g[r, k]
                # (phi_{v+1} f)[r, c] = sum_k phi_{v+1}[r, k] f[k, c]
                for k in range(src.dims[v + 1]):
                    if f[k, c]:
                        row[index[(v + 1, r, k)]] -= f[k, c]
                eqs.append(row)
    return Matrix(eqs, len(eqs), len(index), src.p), list(index)


def hom_space(src: MatrixRep, dst: MatrixRep) -> list[tuple[Matrix, ...]]:
    """A basis of Hom(src, dst), each element a tuple of vertex matrices."""
    system, keys = _hom_system(src, dst)
    basis = []
    for vec in system.nullspace():
        mats = []
        for v in range(src.n):
            entries = [[0] * src.dims[v] for _ in range(dst.dims[v])]
            mats.append(entries)
        for value, (v, r, c) in zip(vec, keys):
            mats[v][r][c] = value
        basis.append(tuple(Matrix(m, dst.dims[v], src.dims[v], src.p) for v, m in enumerate(mats)))
    return basis


def hom_dim_linear(src: MatrixRep, dst: MatrixRep) -> int:
    system, keys = _hom_system(src, dst)
    return len(keys) - system.rank()


def _generic_mono_exists(src: IsoClass, dst: IsoClass, rng: random.Random, tries: int = 3) -> bool:
    """Whether a random homomorphism over a large prime is injective.

    Injective maps form an open subset of Hom, so one success proves
    existence and repeated failure is overwhelming evidence against it.
    """
    if any(a > b for a, b in zip(src.dims, dst.dims)):
        return False
    if src.is_zero():
        return True
    p = GENERIC_PRIME
    a, b = canonical_rep(src, p), canonical_rep(dst, p)
    basis = hom_space(a, b)
    if not basis:
        return False
    for _ in range(tries):
        coeffs = [rng.randrange(p) for _ in basis]
        ok = True
        for v in range(src.n):
            acc = Matrix.zeros(b.dims[v], a.dims[v], p)
            for c, phi in zip(coeffs, basis):
                acc = acc + Matrix([[c * x for x in row] for row in phi[v].rows], b.dims[v], a.dims[v], p)
            if acc.rank() != a.dims[v]:
                ok = False
                break
        if ok:
            return True
    return False


# ------------------------------------------------------------ degenerations


def _as_ranks(x: RankTuple | IsoClass) -> RankTuple:
    return ranks_from_iso(x) if isinstance(x, IsoClass) else x


def _as_iso(x: RankTuple | IsoClass) -> IsoClass:
    return x if isinstance(x, IsoClass) else iso_from_ranks(x)


def degenerates_to(m: RankTuple | IsoClass, n: RankTuple | IsoClass, method: str = "rank") -> bool:
    """Whether the orbit of ``n`` lies in the orbit closure of ``m``.

    ``method="rank"`` compares rank tuples, ``method="hom"`` compares
    ``dim Hom(U, -)`` over all interval modules U.
    """
    rm, rn = _as_ranks(m), _as_ranks(n)
    if rm.n != rn.n or rm.diag != rn.diag:
        raise DimMismatch(f"dimension vectors {rm.diag} and {rn.diag} differ")
    if method == "rank":
        return rm.dominates(rn)
    if method == "hom":
        im, in_ = _as_iso(m), _as_iso(n)
        for i in range(1, im.n + 1):
            for j in range(i, im.n + 1):
                u = IsoClass.of(im.n, {(i, j): 1})
                if hom_dim(u, im) > hom_dim(u, in_):
                    return False
        return True
    raise ValueError(f"unknown method {method!r}")


# --------------------------------------------------------------- embeddings


def _check_embed_dims(sub: IsoClass, big: IsoClass) -> None:
    _same_quiver(sub, big)
    if any(a > b for a, b in zip(sub.dims, big.dims)):
        raise DimMismatch(f"{sub.dims} is not below {big.dims}")


def suffix_matching(sub: IsoClass, big: IsoClass) -> dict[int, list[tuple[int, int]]] | None:
    """Match each summand of ``sub`` to a distinct segment of ``big``.

    A summand ``U(s, b)`` can sit inside a segment ``U(a, b)`` as a suffix
    exactly when ``a <= s``. Returns, per right endpoint, the list of
    (segment start, suffix start) pairs, or ``None`` when impossible.
    """
    out: dict[int, list[tuple[int, int]]] = {}
    for right in range(1, sub.n + 1):
        starts = sorted(i for (i, j) in sub.summands() if j == right)
        hosts = sorted(i for (i, j) in big.summands() if j == right)
        if len(starts) > len(hosts):
            return None
        # Pair the k smallest host starts with the sorted suffix starts.
        pairs = list(zip(hosts, starts))
        if any(a > s for a, s in pairs):
            return None
        out[right] = pairs
    return out


def embeds(sub: IsoClass, big: IsoClass, method: str = "fixed_point", seed: int = 0) -> bool:
    """Whether ``sub`` is isomorphic to a subrepresentation of ``big``.

    ``fixed_point`` searches coordinate subrepresentations of the segment
    basis (suffix choices). ``split`` checks that the non-projective part
    embeds (by a generic homomorphism) and that the projective part fits.
    """
    _check_embed_dims(sub, big)
    if method == "fixed_point":
        return suffix_matching(sub, big) is not None
    if method == "split":
        proj_sub, rest_sub = sub.projective_part(), sub.nonprojective_part()
        proj_big, rest_big = big.projective_part(), big.nonprojective_part()
        if any(a > b for a, b in zip(proj_sub.dims, proj_big.dims)):
            return False
        return _generic_mono_exists(rest_sub, rest_big, random.Random(seed))
    raise ValueError(f"unknown method {method!r}")


def stratum_dim(sub: IsoClass, big: IsoClass) -> int:
    """Dimension of the locus of subrepresentations of ``big`` isomorphic to ``sub``."""
    if any(a > b for a, b in zip(sub.dims, big.dims)) or not embeds(sub, big):
        raise EmptyStratum(f"{sub} does not embed into {big}")
    return hom_dim(sub, big) - hom_dim(sub, sub)


# ------------------------------------------------- component criterion


def projective_with_dims(c: Sequence[int], n: int) -> IsoClass | None:
    """The projective module with dimension vector ``c``, if there is one."""
    prev = 0
    table = {}
    for i, ci in enumerate(c, start=1):
        if ci < prev:
            return None
        table[(i, n)] = ci - prev
        prev = ci
    return IsoClass.of(n, table)


def suffix_subclasses(x: IsoClass, bound: Sequence[int] | None = None) -> list[IsoClass]:
    """All isomorphism classes of suffix subrepresentations of ``x``.

    Each summand type ``U(a, b)`` of multiplicity m contributes a multiset of
    m choices from {empty, U(a, b), U(a+1, b), ..., U(b, b)}. Classes whose
    dimension vector exceeds ``bound`` are dropped.
    """
    n = x.n
    per_type = []
    for (a, b), m in x.mult:
        options = [None] + [(s, b) for s in range(a, b + 1)]
        per_type.append(list(itertools.combinations_with_replacement(options, m)))
    seen = set()
    out = []
    for combo in itertools.product(*per_type):
        summands = [iv for group in combo for iv in group if iv is not None]
        cls = IsoClass.from_summands(n, summands)
        if cls in seen:
            continue
        seen.add(cls)
        if bound is not None and any(a > b for a, b in zip(cls.dims, bound)):
            continue
        out.append(cls)
    out.sort(key=IsoClass.table)
    return out


def flag_components(m: IsoClass) -> dict:
    """Dimension test and component list for Gr_e(m) with ``e = (1, ..., n)``.

    Returns ``{"min_dim": bool, "components": [IsoClass, ...]}``. The
    components are listed only when the variety has the minimal dimension
    ``n(n+1)/2``.
    """
    n = m.n
    if m.dims != (n + 1,) * n:
        raise WrongDims(f"expected dimension vector {(n + 1,) * n}, got {m.dims}")
    e = tuple(range(1, n + 1))
    proj, rest = m.projective_part(), m.nonprojective_part()
    a_star = IsoClass.from_summands(n, [(1, i) for i in range(1, n + 1)])
    min_dim = True
    comps = []
    for nbar in suffix_subclasses(rest, bound=e):
        c = [ei - di for ei, di in zip(e, nbar.dims)]
        np_ = projective_with_dims(c, n)
        if np_ is None or any(a > b for a, b in zip(c, proj.dims)):
            continue
        lhs = hom_dim(nbar, nbar)
        rhs = hom_dim(nbar, rest) - hom_dim(nbar, a_star)
        if lhs < rhs:
            min_dim = False
        elif lhs == rhs:
            comps.append(np_ + nbar)
    comps.sort(key=IsoClass.table)
    return {"min_dim": min_dim, "components": comps if min_dim else []}
