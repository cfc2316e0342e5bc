import io
import json

import pytest

from lindegen import arcs, cells, cli, homalg, loci, pbw
from lindegen.core import IsoClass, named_rep, ranks_from_iso


def call(*argv):
    out = io.StringIO()
    code = cli.run(list(argv), out)
    text = out.getvalue()
    return code, (json.loads(text) if text.strip() else None), text


def test_classify_m2():
    code, obj, _ = call("classify", "--named", "M2", "--n", "4")
    assert code == 0
    assert obj == {"flat": True, "irreducible": False, "iso": False, "normal": False, "pbw": False, "witness": 1}


def test_classify_matches_library():
    iso = named_rep("Mai", 3, (1,))
    _, obj, _ = call("classify", "--named", "Mai:1", "--n", "3")
    expected = loci.classify(ranks_from_iso(iso))
    assert obj == expected.to_json()


def test_classify_accepts_json_rep():
    iso = IsoClass.of(2, {(1, 2): 3})
    _, obj, _ = call("classify", "--rep", json.dumps(iso.to_json()))
    assert obj["iso"] and obj["pbw"]


def test_rhymes_regular():
    code, obj, _ = call("rhymes", "--n", "4", "--regular")
    assert code == 0 and obj["count"] == 8
    assert all(loci.is_regular(s) for s in obj["schemes"])
    _, all_obj, _ = call("rhymes", "--n", "4")
    assert all_obj["count"] == 15


def test_count_m2():
    code, obj, _ = call("count", "--named", "M2", "--n", "2", "--p", "2")
    assert code == 0 and obj == {"count": 33}
    # 1 + 2q + 3q^2 + 2q^3 at q = 2
    _, poly, _ = call("poincare", "--named", "M2", "--n", "2")
    assert poly["coeffs"] == [1, 2, 3, 2]


def test_count_sharded():
    _, obj, _ = call("count", "--named", "M1", "--n", "3", "--p", "3", "--jobs", "2")
    assert obj["count"] == cells.evaluate(cells.poincare(named_rep("M1", 3), (1, 2, 3)), 3)


def test_count_budget_error():
    code, obj, _ = call("count", "--named", "M0", "--n", "3", "--p", "3", "--budget", "1")
    assert code == 1 and obj["error"] == "BudgetExceeded"


def test_schubert():
    code, obj, _ = call("schubert", "--n", "4", "--i", "1")
    assert code == 0
    assert obj["word"] == [2, 3, 4, 5, 2, 3, 4, 2, 3, 1]
    assert obj["h"] == [0, 1, 1, 1] and obj["reduced"] and obj["length"] == 10


def test_demazure_check_default_weight():
    code, obj, _ = call("demazure-check", "--n", "3")
    assert code == 0 and obj == {"demazure": 64, "equal": True, "weyl": 64}
    assert pbw.weyl_dim(4, (1, 1, 1)) == 64


def test_orbits_census():
    _, obj, _ = call("orbits", "--n", "4")
    assert (obj["rank_count"], obj["pcal_count"], obj["pcal_flat_count"], obj["pcal_image_count"]) == (77, 83, 82, 77)


def test_arcs_and_components_agree():
    _, listing, _ = call("arcs", "--n", "3")
    _, comps, _ = call("components", "--named", "M2", "--n", "3")
    assert listing["count"] == comps["count"] == 5
    n_a = sorted(json.dumps(d["n_a"], sort_keys=True) for d in listing["diagrams"])
    assert n_a == sorted(json.dumps(c, sort_keys=True) for c in comps["components"])


def test_arcs_check():
    code, obj, _ = call("arcs", "--n", "3", "--check")
    assert code == 0
    assert len(obj["diagrams"]) == len(arcs.enumerate_arcs(3))


def test_tangent_lists_fixed_points():
    _, obj, _ = call("tangent", "--named", "M2", "--n", "2")
    fps = cells.fixed_points(named_rep("M2", 2), (1, 2))
    assert len(obj["points"]) == len(fps)
    assert all(p["tangent_dim"] >= p["cell_dim"] for p in obj["points"])
    assert sorted(p["tangent_dim"] for p in obj["points"]) == sorted(cells.tangent_dim(fp) for fp in fps)


def test_slice_and_gamma():
    _, obj, _ = call("slice", "--n", "2", "--lambda", "1", "--pbw")
    assert obj["locus"]["pbw"] and obj["locus"]["iso"]
    code, obj, _ = call("gamma-check", "--n", "3", "--lambda", "0,2")
    assert code == 0 and obj["automorphism"] and obj["stabilizer_trivial"]


def test_verify_suite_reports_each_check():
    code, obj, _ = call("verify", "--suite", "c1")
    assert code == 0 and obj["ok"] and [c["id"] for c in obj["checks"]] == [1]
    assert "seconds" not in obj["checks"][0]


def test_hom_consistency_through_json():
    # components returned by the CLI parse back into classes of the right stratum dimension
    _, comps, _ = call("components", "--named", "M2", "--n", "3")
    for c in comps["components"]:
        assert homalg.stratum_dim(IsoClass.from_json(c), named_rep("M2", 3)) == 6


def test_output_is_deterministic():
    runs = {call("gamma-check", "--n", "3", "--seed", "4")[2] for _ in range(3)}
    assert len(runs) == 1


@pytest.mark.parametrize("argv", [["bogus"], ["classify", "--n", "3"], ["verify", "--suite", "nope"], ["count", "--named", "M2", "--n", "2", "--p", "2", "--e", "1,x"]])
def test_usage_errors_exit_2(argv):
    code, obj, _ = call(*argv)
    assert code == 2 and obj is None


def test_mathematical_errors_exit_1():
    code, obj, _ = call("count", "--named", "M2", "--n", "2", "--p", "4")
    assert code == 1 and obj["error"] == "InvalidParams" and isinstance(obj["detail"], str)
    code, obj, _ = call("classify", "--named", "Ma:3", "--n", "3")
    assert code == 1 and obj["error"] == "InvalidParams"
