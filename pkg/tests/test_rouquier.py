import dataclasses

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from cmfamilies.arrangements import Hyperplane, HyperplaneArrangement, plane_inclusion
from cmfamilies.bundles import bundle_path, load_rouquier_bundle
from cmfamilies.errors import ValidationError
from cmfamilies.euler import sharp_permutation, young_blocks
from cmfamilies.partitions import FamilyPartition, refines
from cmfamilies.rouquier import martino_check, rouquier_data
from cmfamilies.supersingular import CMResult

from .conftest import EXCEPTIONAL, result

ESSENTIAL = {"G4": 6, "G5": 24, "G6": 16, "G8": 24, "G10": 81, "G23": 1, "G24": 1, "G25": 12, "G26": 31}


def rou(name):
    return load_rouquier_bundle(bundle_path(name, "rouquier"))


# ------------------------------------------------------------------ refines


def test_refines_examples():
    # [TRIVIAL]
    fine = FamilyPartition.singletons(4)
    coarse = FamilyPartition.from_blocks([[0, 1], [2, 3]])
    assert refines(fine, coarse) and not refines(coarse, fine)
    assert refines(coarse, coarse)
    other = FamilyPartition.from_blocks([[0, 2], [1, 3]])
    assert not refines(coarse, other) and not refines(other, coarse)
    with pytest.raises(ValueError):
        refines(FamilyPartition.singletons(3), coarse)


@st.composite
def partitions(draw, n=6):
    return FamilyPartition.from_keys(draw(st.lists(st.integers(0, 3), min_size=n, max_size=n)))


@settings(max_examples=80, deadline=None)
@given(partitions(), partitions(), partitions())
def test_refines_is_a_partial_order(a, b, c):
    assert refines(a, a)
    assert refines(FamilyPartition.singletons(6), a)
    if refines(a, b) and refines(b, a):
        assert a == b
    if refines(a, b) and refines(b, c):
        assert refines(a, c)


# ------------------------------------------------------------------ martino


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_martino_verdicts(name):
    # [PUBLISHED] equality everywhere except G25, unions and inclusion everywhere
    v = result(name).martino
    assert v.generic_equal is (name != "G25")
    assert v.cm_unions_of_rouquier and v.rou_in_eu and v.sharp_stable
    assert v.counterexample is (name == "G25")
    assert v.essential_planes == ESSENTIAL[name]


def test_g25_counterexample_evidence():
    # [PUBLISHED] the CM family {phi3,6, phi9,7, phi9,5} is the union of {phi3,6} and {phi9,7, phi9,5}
    v = result("G25").martino
    assert v.evidence == [{
        "cm_family": ["phi{3,6}", "phi{9,7}", "phi{9,5}"],
        "rouquier_families": [["phi{3,6}"], ["phi{9,7}", "phi{9,5}"]],
    }]


def test_s6_has_no_martino_check():
    assert result("S6").martino is None


def test_martino_refuses_uncertified_input():
    res = result("G24")
    with pytest.raises(ValidationError, match="not certified"):
        martino_check(res.euler, CMResult(False, None, [(0, 1)]), rouquier_data(rou("G24"), res.euler))


def test_coarser_rouquier_families_are_reported():
    # a Rouquier partition coarser than CM breaks the union statement
    res = result("G24")
    data = rouquier_data(rou("G24"), res.euler)
    merged = FamilyPartition.from_blocks([tuple(range(len(res.table)))])
    v = martino_check(res.euler, res.cm, dataclasses.replace(data, generic_families=merged))
    assert not v.generic_equal and not v.cm_unions_of_rouquier and not v.counterexample


# ------------------------------------------------------------------ planes


def test_plane_inclusion_examples():
    # [PUBLISHED] 24 essential planes inside the 37 Euler planes for G8, 31 inside 169 for G26
    for name, (small, big) in {"G8": (24, 37), "G26": (31, 169)}.items():
        res = result(name)
        ess = rouquier_data(rou(name), res.euler).essential_planes
        assert (len(ess), len(res.euler.variety)) == (small, big)
        assert plane_inclusion(ess, res.euler.variety) == (True, [])
        ok, missing = plane_inclusion(res.euler.variety, ess)
        assert not ok and len(missing) == big - small
    eu = result("G4").euler.variety
    assert plane_inclusion(eu, eu) == (True, [])


def test_plane_inclusion_dimension_mismatch():
    a = HyperplaneArrangement.build([Hyperplane.from_vector([1, -1])], [[0, 1]], 2)
    b = HyperplaneArrangement.build([Hyperplane.from_vector([1, -1, 0])], [[0], [1], [2]], 3)
    with pytest.raises(ValueError):
        plane_inclusion(a, b)


def test_hecke_convention_is_sharp_conjugated():
    res = result("G8")
    b = rou("G8")
    perm = sharp_permutation(res.group)
    swapped = [[vec[perm[i]] for i in range(len(vec))] for vec in b.essential_planes]
    hecke = dataclasses.replace(b, essential_planes=swapped, coordinate_convention="hecke")
    assert rouquier_data(hecke, res.euler).essential_planes.planes == rouquier_data(b, res.euler).essential_planes.planes


def test_essential_planes_need_not_be_young_closed():
    res = result("G8")
    ess = rouquier_data(rou("G8"), res.euler).essential_planes
    assert not ess.closed
    with pytest.raises(ValueError):
        HyperplaneArrangement.build(ess.planes, young_blocks(res.group), ess.dim)


def test_rouquier_bundle_validation():
    res = result("G4")
    b = rou("G4")
    with pytest.raises(ValidationError, match="coordinates"):
        rouquier_data(dataclasses.replace(b, essential_planes=[[1, -1]]), res.euler)
    with pytest.raises(ValidationError):
        rouquier_data(dataclasses.replace(b, families=[["phi{1,0}", "phi{9,9}"]]), res.euler)
    with pytest.raises(ValidationError, match="is for"):
        rouquier_data(dataclasses.replace(b, group="G5"), res.euler)
