import functools
import itertools
import random

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lindegen import arcs, cells, core, homalg
from lindegen.core import IsoClass, canonical_rep, named_rep
from lindegen.errors import DimMismatch, EmptyStratum, LengthMismatch, WrongDims


@functools.cache
def classes_below(n, bound):
    """Every IsoClass on n vertices whose dimension vector is at most ``bound``."""
    out = []
    for dims in itertools.product(*(range(b + 1) for b in bound)):
        out.extend(core.iso_classes(dims))
    return tuple(out)


def random_class(rng, n, max_mult=2):
    return IsoClass.of(n, {iv: rng.randint(0, max_mult) for iv in core.intervals(n)})


def embeds_by_enumeration(sub, big):
    return any(fp.sub_class() == sub for fp in cells.fixed_points(big, sub.dims))


def test_euler_form_examples():
    assert homalg.euler_form((1, 2, 3), (1, 1, 1)) == 3
    for n in range(1, 7):
        assert homalg.euler_form((1,) * n, (1,) * n) == 1
        assert homalg.euler_form((0,) * n, tuple(range(n))) == 0
    with pytest.raises(LengthMismatch):
        homalg.euler_form((1, 2), (1,))


def test_indecomposable_indicators():
    assert homalg.hom_indec(2, 3, 1, 2) == 1
    assert homalg.hom_indec(1, 1, 2, 2) == 0
    assert homalg.ext_indec(2, 2, 3, 3) == 1
    assert homalg.ext_indec(3, 3, 2, 2) == 0


def test_hom_dim_examples():
    assert homalg.hom_dim(named_rep("M1", 2), named_rep("M1", 2)) == 10
    zero = IsoClass.of(3, {})
    assert homalg.hom_dim(zero, named_rep("M2", 3)) == 0
    a = arcs.ArcDiagram.of(2, [(1, 2)])
    assert homalg.hom_dim(arcs.n_of_arcs(a), arcs.q_of_arcs(arcs.dual(a))) == 3


def test_hom_minus_ext_is_euler_form():
    rng = random.Random(11)
    for n in range(1, 6):
        for _ in range(200):
            a, b = random_class(rng, n), random_class(rng, n)
            euler = homalg.euler_form(a.dims, b.dims)
            assert homalg.hom_dim(a, b) - homalg.ext_dim(a, b) == euler
            assert homalg.ext_dim(a, b) == homalg.ext_dim_intervals(a, b)


def test_hom_dim_matches_linear_algebra_on_indecomposables():
    for n in (1, 2, 3):
        for x, y in itertools.product(core.intervals(n), repeat=2):
            a, b = IsoClass.of(n, {x: 1}), IsoClass.of(n, {y: 1})
            assert homalg.hom_dim(a, b) == homalg.hom_dim_linear(canonical_rep(a), canonical_rep(b))


def test_hom_dim_matches_linear_algebra_small_dims():
    for n, bound in ((1, (4,)), (2, (4, 4))):
        pool = classes_below(n, bound)
        for a in pool:
            ca = canonical_rep(a)
            for b in pool:
                assert homalg.hom_dim(a, b) == homalg.hom_dim_linear(ca, canonical_rep(b))


@given(st.data())
def test_hom_dim_matches_linear_algebra_n3(data):
    pool = classes_below(3, (4, 4, 4))
    a = data.draw(st.sampled_from(pool))
    b = data.draw(st.sampled_from(pool))
    assert homalg.hom_dim(a, b) == homalg.hom_dim_linear(canonical_rep(a), canonical_rep(b))


def test_degeneration_examples():
    for n in range(2, 5):
        m0 = named_rep("M0", n)
        for x in core.iso_classes((n + 1,) * n):
            assert homalg.degenerates_to(m0, x)
        assert homalg.degenerates_to(named_rep("M1", n), named_rep("M2", n))
        assert not homalg.degenerates_to(named_rep("M2", n), named_rep("M1", n))
    with pytest.raises(DimMismatch):
        homalg.degenerates_to(named_rep("M1", 2), IsoClass.of(2, {(1, 2): 1}))


@pytest.mark.parametrize("n", [1, 2, 3])
def test_rank_order_equals_hom_order(n):
    pool = core.iso_classes((n + 1,) * n)
    for a, b in itertools.product(pool, repeat=2):
        assert homalg.degenerates_to(a, b) == homalg.degenerates_to(a, b, method="hom")


def test_embeds_examples():
    for n in range(2, 6):
        a = IsoClass.from_summands(n, [(i, n) for i in range(1, n + 1)])
        assert homalg.embeds(a, named_rep("M1", n))
        assert homalg.embeds(a, named_rep("M1", n), method="split")
    assert not homalg.embeds(IsoClass.of(2, {(1, 2): 1}), IsoClass.of(2, {(2, 2): 1, (1, 1): 1}))
    assert not homalg.embeds(IsoClass.of(2, {(1, 2): 1}), IsoClass.of(2, {(2, 2): 1, (1, 1): 1}), method="split")
    rng = random.Random(5)
    for _ in range(30):
        x = random_class(rng, rng.randint(1, 4))
        assert homalg.embeds(x, x) and homalg.embeds(x, x, method="split")


def test_embeds_rejects_bigger_dims():
    with pytest.raises(DimMismatch):
        homalg.embeds(named_rep("M0", 2), IsoClass.of(2, {(1, 2): 1}))


@pytest.mark.parametrize("n,bound", [(1, (4,)), (2, (3, 3)), (3, (2, 2, 2))])
def test_embeds_algorithms_agree_exhaustively(n, bound):
    pool = classes_below(n, bound)
    for big in pool:
        for sub in pool:
            if any(a > b for a, b in zip(sub.dims, big.dims)):
                continue
            expected = embeds_by_enumeration(sub, big)
            assert homalg.embeds(sub, big) == expected
            assert homalg.embeds(sub, big, method="split") == expected


def test_embeds_algorithms_agree_n3_dims4():
    pool = classes_below(3, (4, 4, 4))
    for big in pool:
        for sub in pool:
            if all(a <= b for a, b in zip(sub.dims, big.dims)):
                assert homalg.embeds(sub, big) == homalg.embeds(sub, big, method="split")


def test_stratum_dim_examples():
    a = IsoClass.from_summands(2, [(1, 2), (2, 2)])
    assert homalg.stratum_dim(a, named_rep("M1", 2)) == 3
    m = named_rep("M2", 3)
    assert homalg.stratum_dim(m, m) == 0
    for n in range(2, 6):
        for i in range(1, n):
            n2 = IsoClass.from_summands(n, [(j, n) for j in range(1, n + 1) if j != i] + [(i, i), (i + 1, n)])
            assert homalg.stratum_dim(n2, named_rep("Mai", n, (i,))) == n * (n + 1) // 2
    with pytest.raises(EmptyStratum):
        homalg.stratum_dim(IsoClass.of(2, {(1, 2): 1}), IsoClass.of(2, {(2, 2): 1, (1, 1): 1}))


def test_stratum_dim_is_max_cell_dim():
    for iso in core.iso_classes((3, 3)) + core.iso_classes((4, 4, 4))[::5]:
        for row in cells.strata(iso, tuple(range(1, iso.n + 1))):
            assert row["max_cell_dim"] == row["hom_dim_formula"]


def test_flag_components_m2():
    res = homalg.flag_components(named_rep("M2", 2))
    assert res["min_dim"] and len(res["components"]) == 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_flag_components_catalan(n):
    catalan = [1, 1, 2, 5, 14, 42]
    res = homalg.flag_components(named_rep("M2", n))
    assert res["min_dim"]
    assert len(res["components"]) == catalan[n]
    for comp in res["components"]:
        assert homalg.stratum_dim(comp, named_rep("M2", n)) == n * (n + 1) // 2


@pytest.mark.parametrize("n", [2, 3, 4, 5])
def test_flag_components_single_and_double_degenerations(n):
    for i in range(1, n):
        res = homalg.flag_components(named_rep("Mai", n, (i,)))
        assert res["min_dim"] and len(res["components"]) >= 2
        a = IsoClass.from_summands(n, [(j, n) for j in range(1, n + 1)])
        assert a in res["components"]
        for j in range(i, n):
            assert not homalg.flag_components(named_rep("Maij", n, (i, j)))["min_dim"]


def test_flag_components_matches_enumeration_of_all_classes():
    # compare with the literal reading: every IsoClass with dims <= dim X that embeds into X
    for n in (2, 3):
        for m in core.iso_classes((n + 1,) * n):
            res = homalg.flag_components(m)
            x = m.nonprojective_part()
            proj = m.projective_part()
            a_star = IsoClass.from_summands(n, [(1, i) for i in range(1, n + 1)])
            e = tuple(range(1, n + 1))
            min_dim, comps = True, []
            for nbar in classes_below(n, e):
                if nbar.projective_part() != IsoClass.of(n, {}) or any(a > b for a, b in zip(nbar.dims, x.dims)):
                    continue
                if not embeds_by_enumeration(nbar, x):
                    continue
                c = [ei - di for ei, di in zip(e, nbar.dims)]
                np_ = homalg.projective_with_dims(c, n)
                if np_ is None or any(a > b for a, b in zip(c, proj.dims)):
                    continue
                lhs, rhs = homalg.hom_dim(nbar, nbar), homalg.hom_dim(nbar, x) - homalg.hom_dim(nbar, a_star)
                if lhs < rhs:
                    min_dim = False
                elif lhs == rhs:
                    comps.append(np_ + nbar)
            assert res["min_dim"] == min_dim
            if min_dim:
                assert sorted(res["components"], key=IsoClass.table) == sorted(comps, key=IsoClass.table)


def test_flag_components_wrong_dims():
    with pytest.raises(WrongDims):
        homalg.flag_components(IsoClass.of(2, {(1, 2): 1}))
