import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given
from hypothesis import strategies as st

from lindegen import core, homalg, loci
from lindegen.core import MatrixRep, RankTuple, named_rep, rank_tuple, ranks_from_iso
from lindegen.errors import InvalidScheme, NoWitness, NotRegular, ShapeMismatch, WrongDims
from lindegen.linalg import Matrix

fractions = st.fractions(min_value=-20, max_value=20, max_denominator=9)


def square_rank_tuples(n):
    return [ranks_from_iso(iso) for iso in core.iso_classes((n + 1,) * n)]


def test_classify_examples():
    assert loci.classify(RankTuple.standard(3, 0)) == loci.LocusReport(True, True, True, True, True, None)
    rep = loci.classify(RankTuple.standard(4, 2))
    assert (rep.flat, rep.irreducible, rep.normal, rep.pbw, rep.iso) == (True, False, False, False, False)
    assert loci.classify(loci.scheme_to_ranks((1, 0, 2))).pbw


def test_classify_wrong_dims():
    with pytest.raises(WrongDims):
        loci.classify(ranks_from_iso(core.IsoClass.of(2, {(1, 2): 1})))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_report_implications(n):
    for rt in square_rank_tuples(n):
        r = loci.classify(rt)
        assert not r.iso or r.pbw
        assert not r.pbw or r.irreducible
        assert not r.irreducible or r.flat
        assert r.normal == (r.flat and r.irreducible)
        assert (r.witness is None) == r.irreducible


def test_flat_locus_is_closure_of_m2_orbit():
    for n in (2, 3, 4):
        m1, m2 = named_rep("M1", n), named_rep("M2", n)
        for iso in core.iso_classes((n + 1,) * n):
            r = loci.classify(ranks_from_iso(iso))
            assert r.flat == homalg.degenerates_to(iso, m2)
            assert r.irreducible == homalg.degenerates_to(iso, m1)


def test_witness_examples():
    assert loci.witness(RankTuple.standard(3, 2)) == 1
    zero = MatrixRep.build([3, 3], [[[0] * 3] * 3])
    assert loci.witness(rank_tuple(zero)) == (1, 2)
    assert homalg.degenerates_to(named_rep("Maij", 2, (1, 1)), rank_tuple(zero))
    with pytest.raises(NoWitness):
        loci.witness(RankTuple.standard(4, 1))


@pytest.mark.parametrize("n", [2, 3, 4])
def test_witness_dominates_input(n):
    for rt in square_rank_tuples(n):
        r = loci.classify(rt)
        if r.irreducible:
            continue
        kind, params = loci.witness_kind(r.witness)
        assert homalg.degenerates_to(named_rep(kind, n, params), rt)
        if isinstance(r.witness, int):
            assert r.flat and rt[r.witness, r.witness + 1] == n - 1
        else:
            i, j = r.witness
            assert not r.flat and rt[i, j] <= n - j + i - 1
            shorter = [(a, b) for a, b in rt.pairs() if b - a < j - i or (b - a == j - i and a < i)]
            assert all(rt[a, b] > n - b + a - 1 for a, b in shorter)


def test_rhyme_enumeration_length_three():
    schemes = loci.rhyme_enumerate(4)
    assert len(schemes) == 15
    assert sum(loci.is_regular(b) for b in schemes) == 8
    assert schemes == sorted(schemes)


def test_rhyme_counts_are_bell_numbers():
    bell = [1, 1, 2, 5, 15, 52, 203, 877]
    for n in range(2, 8):
        assert len(loci.rhyme_enumerate(n)) == bell[n]


def brute_force_schemes(n):
    out = []
    for b in itertools.product(range(n), repeat=n - 1):
        top, ok = 0, True
        for x in b:
            if x > top + 1:
                ok = False
                break
            top = max(top, x)
        if ok:
            out.append(b)
    return out


def test_rhyme_enumeration_matches_brute_force():
    for n in range(2, 7):
        assert loci.rhyme_enumerate(n) == brute_force_schemes(n)


def test_scheme_rank_examples():
    assert loci.scheme_to_ranks((0, 0, 0)) == RankTuple.standard(4, 0)
    for n in range(2, 7):
        assert loci.scheme_to_ranks(tuple(range(1, n))) == RankTuple.standard(n, 1)


@pytest.mark.parametrize("n", range(2, 6))
def test_scheme_ranks_match_matrices(n):
    for b in loci.rhyme_enumerate(n):
        assert loci.scheme_to_ranks(b) == rank_tuple(loci.scheme_to_rep(b))


@pytest.mark.parametrize("n", range(2, 7))
def test_pbw_flag_equals_regularity(n):
    for b in loci.rhyme_enumerate(n):
        r = loci.classify(loci.scheme_to_ranks(b))
        assert r.irreducible
        assert r.pbw == loci.is_regular(b)


@pytest.mark.parametrize("n", range(2, 7))
def test_pbw_criterion_against_regular_schemes(n):
    regular = {loci.scheme_to_ranks(b) for b in loci.rhyme_enumerate(n) if loci.is_regular(b)}
    irreducible = {loci.scheme_to_ranks(b) for b in loci.rhyme_enumerate(n)}
    for rt in loci.flat_rank_tuples(n):
        r = loci.classify(rt)
        assert r.irreducible == (rt in irreducible)
        assert r.pbw == (rt in regular)


def test_invalid_schemes():
    for bad in [(2,), (0, 2), (1, 3), (-1,)]:
        with pytest.raises(InvalidScheme):
            loci.check_scheme(bad)
    with pytest.raises(InvalidScheme):
        loci.rhyme_enumerate(1)


def test_dseq_conversion():
    assert loci.scheme_of_dseq(4, (1, 3)) == (1, 0, 2)
    assert loci.scheme_of_dseq(5, ()) == (0, 0, 0, 0)
    assert loci.dseq_of_scheme((1, 0, 2)) == (1, 3)
    with pytest.raises(NotRegular):
        loci.dseq_of_scheme((1, 1))
    with pytest.raises(InvalidScheme):
        loci.scheme_of_dseq(4, (3, 1))


@pytest.mark.parametrize("n", range(2, 7))
def test_dseq_round_trip(n):
    regular = [b for b in loci.rhyme_enumerate(n) if loci.is_regular(b)]
    assert len(regular) == 2 ** (n - 1)
    for b in regular:
        assert loci.scheme_of_dseq(n, loci.dseq_of_scheme(b)) == b


def brute_force_pcal_orbits(n):
    """Orbits of admissible subset sequences under all relabelings of {0..n}."""
    ground = range(n + 1)
    small = [frozenset(c) for k in range(3) for c in itertools.combinations(ground, k)]
    seqs = []
    for seq in itertools.product(small, repeat=n - 1):
        if all(len(a | b) <= 3 for a, b in zip(seq, seq[1:])):
            seqs.append(seq)
    perms = list(itertools.permutations(ground))
    seen, orbits = set(), 0
    for seq in seqs:
        if seq in seen:
            continue
        orbits += 1
        for perm in perms:
            seen.add(tuple(frozenset(perm[x] for x in s) for s in seq))
    return orbits


def test_census_small_values():
    assert loci.flat_orbit_census(2) == {"rank_count": 3, "pcal_count": 3, "pcal_flat_count": 3, "pcal_image_count": 3}
    c3 = loci.flat_orbit_census(3)
    assert c3["rank_count"] == c3["pcal_count"] == 13
    c4 = loci.flat_orbit_census(4)
    assert (c4["rank_count"], c4["pcal_count"], c4["pcal_flat_count"], c4["pcal_image_count"]) == (77, 83, 82, 77)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_pcal_count_matches_relabeling_orbits(n):
    assert loci.flat_orbit_census(n)["pcal_count"] == brute_force_pcal_orbits(n)


@pytest.mark.parametrize("n", [2, 3, 4])
def test_flat_rank_tuples_match_iso_classes(n):
    expected = {rt for rt in square_rank_tuples(n) if loci.classify(rt).flat}
    found = list(loci.flat_rank_tuples(n))
    assert len(found) == len(set(found))
    assert set(found) == expected


def test_flat_irreducible_orbits_match_schemes():
    n = 4
    irreducible = [rt for rt in loci.flat_rank_tuples(n) if loci.classify(rt).irreducible]
    assert len(irreducible) == 15


def test_slice_rep_n4_pattern():
    lam = {(a, b): Fraction(10 * a + b) for a in range(1, 4) for b in range(a, 4)}
    f1, f2, f3 = (m.rows for m in loci.slice_rep(4, lam).maps)
    l = lambda a, b: 10 * a + b
    assert [list(r) for r in f1] == [
        [1, 0, 0, 0, 0], [0, l(1, 1), l(1, 2), l(1, 3), 0], [0, 0, 1, 0, 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    assert [list(r) for r in f2] == [
        [1, 0, 0, 0, 0], [0, 1, l(1, 2), l(1, 3), 0], [0, 0, l(2, 2), l(2, 3), 0], [0, 0, 0, 1, 0], [0, 0, 0, 0, 1]]
    assert [list(r) for r in f3] == [
        [1, 0, 0, 0, 0], [0, 1, 0, l(1, 3), 0], [0, 0, 1, l(2, 3), 0], [0, 0, 0, l(3, 3), 0], [0, 0, 0, 0, 1]]


@pytest.mark.parametrize("n", range(2, 7))
def test_slice_extremes(n):
    assert rank_tuple(loci.slice_pbw(n, [1] * (n - 1))) == RankTuple.standard(n, 0)
    assert rank_tuple(loci.slice_rep(n, {})) == RankTuple.standard(n, 1)


@given(st.lists(fractions, min_size=3, max_size=3))
def test_five_orbit_strata_on_n3_slice(values):
    l11, l12, l22 = values
    rt = rank_tuple(loci.slice_rep(3, {(1, 1): l11, (1, 2): l12, (2, 2): l22}))
    r = loci.classify(rt)
    assert r.irreducible
    fourth = l11 == 0 and l22 == 0 and l12 != 0
    assert r.pbw == (not fourth)


def test_five_orbits_are_distinct():
    reps = {
        1: {(1, 1): 1, (2, 2): 1},
        2: {(1, 1): 1},
        3: {(2, 2): 1},
        4: {(1, 2): 1},
        5: {},
    }
    tuples = {k: rank_tuple(loci.slice_rep(3, lam)) for k, lam in reps.items()}
    assert len(set(tuples.values())) == 5
    assert [loci.classify(tuples[k]).pbw for k in range(1, 6)] == [True, True, True, False, True]
    for pattern, lam in zip(loci.SLICE3_STRATA, reps.values()):
        for key, flag in zip(((1, 1), (1, 2), (2, 2)), pattern):
            if flag is not None:
                assert bool(lam.get(key, 0)) == flag


def random_lower(rng, size):
    return {(p, q): Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for p in range(1, size + 1) for q in range(1, p)}


def test_gamma_identity_at_zero():
    for n in range(2, 6):
        gs = loci.gamma_pbw(n, [Fraction(k + 2) for k in range(n - 1)], {})
        assert all(g == Matrix.identity(n + 1) for g in gs)


@pytest.mark.parametrize("n", range(2, 6))
def test_gamma_is_automorphism(n):
    rng = random.Random(n)
    for _ in range(10):
        diag = [Fraction(rng.randint(-5, 5), rng.randint(1, 3)) for _ in range(n - 1)]
        if rng.random() < 0.3:
            diag[rng.randrange(n - 1)] = Fraction(0)
        gs = loci.gamma_pbw(n, diag, random_lower(rng, n + 1))
        for g in gs:
            assert all(g[p, q] == 0 for p in range(n + 1) for q in range(p + 1, n + 1))
            assert all(g[p, p] == 1 for p in range(n + 1))
        assert loci.check_automorphism(gs, loci.slice_pbw(n, diag))


def test_gamma_at_pbw_degenerate_point():
    rng = random.Random(4)
    gs = loci.gamma_pbw(4, [0, 0, 0], random_lower(rng, 5))
    assert loci.check_automorphism(gs, loci.slice_pbw(4, [0, 0, 0]))
    assert rank_tuple(loci.slice_pbw(4, [0, 0, 0])) == RankTuple.standard(4, 1)


def test_flag_stabilizer_trivial():
    for n in range(2, 6):
        assert loci.flag_stabilizer_trivial(n, [1] * (n - 1))
        assert loci.flag_stabilizer_trivial(n, [0] * (n - 1))


def test_check_automorphism_detects_failures():
    rep = loci.slice_pbw(3, [2, 3])
    gs = [Matrix.identity(4) for _ in range(3)]
    assert loci.check_automorphism(gs, rep)
    bad = list(gs)
    bad[0] = Matrix([[1, 0, 0, 0], [1, 1, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]], 4, 4)
    bad[1] = Matrix.identity(4)
    assert not loci.check_automorphism(bad, rep)
    singular = [Matrix.zeros(4, 4)] + gs[1:]
    assert not loci.check_automorphism(singular, rep)
    with pytest.raises(ShapeMismatch):
        loci.check_automorphism(gs[:2], rep)
    with pytest.raises(ShapeMismatch):
        loci.gamma_pbw(3, [1], {})


@given(st.lists(fractions, min_size=3, max_size=3), st.lists(fractions, min_size=6, max_size=6))
def test_example_triple_commutes_with_slice(lam_values, x_values):
    lam = dict(zip(((1, 1), (1, 2), (2, 2)), lam_values))
    x = dict(zip(((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)), x_values))
    gs = loci.example_triple(lam, x)
    f1, f2 = loci.slice_rep(3, lam).maps
    assert gs[1] @ f1 == f1 @ gs[0]
    assert gs[2] @ f2 == f2 @ gs[1]


@given(st.lists(fractions, min_size=3, max_size=3), st.lists(fractions, min_size=6, max_size=6))
def test_example_triple_determinant(lam_values, x_values):
    import sympy

    lam = dict(zip(((1, 1), (1, 2), (2, 2)), lam_values))
    x = dict(zip(((2, 1), (3, 1), (3, 2), (4, 1), (4, 2), (4, 3)), x_values))
    expected = 1 + 2 * lam[(1, 2)] * x[(3, 2)]
    for g in loci.example_triple(lam, x):
        det = sympy.Matrix([[sympy.Rational(v.numerator, v.denominator) for v in row] for row in g.rows]).det()
        assert det == sympy.Rational(expected.numerator, expected.denominator)
    invertible = loci.check_automorphism(loci.example_triple(lam, x), loci.slice_rep(3, lam))
    assert invertible == (expected != 0)


def test_example_triple_singular_locus():
    lam = {(1, 1): 1, (1, 2): Fraction(1, 2), (2, 2): 1}
    x = {(3, 2): -1}
    assert not loci.check_automorphism(loci.example_triple(lam, x), loci.slice_rep(3, lam))
    assert all(g == Matrix.identity(4) for g in loci.example_triple(lam, {}))
