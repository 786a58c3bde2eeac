import pytest

from cmfamilies.chardata import fake_degree, poincare_series
from cmfamilies.exact import Polynomial
from cmfamilies.partitions import FamilyPartition
from cmfamilies.supersingular import (
    Verdict,
    classify_block,
    classify_families,
    generic_cm_families,
    is_supersingular,
    supersingular_report,
)

from .conftest import ALL_GROUPS, EXCEPTIONAL, result, table

SUPERSINGULAR = {
    "G4": set(),
    "G5": {"phi{3,6}", "phi{3,4}", "phi{3,2}"},
    "G8": {"phi{4,5}", "phi{4,3}"},
    "G23": {"phi{3,6}", "phi{3,1}", "phi{4,3}", "phi{4,4}"},
    "G25": {"phi{3,6}", "phi{9,7}", "phi{9,5}"},
    "S6": set(),
}


@pytest.mark.parametrize("name", sorted(SUPERSINGULAR))
def test_supersingular_sets(name):
    t = table(name)
    flags = result(name).supersingular.flags
    assert {t.labels[r] for r, f in flags.items() if f} == SUPERSINGULAR[name]


def test_g25_phi36():
    # [PUBLISHED]
    t = table("G25")
    assert is_supersingular(t, t.index("phi{3,6}"))
    assert not is_supersingular(t, t.index("phi{1,0}"))


def test_trivial_character_is_not_supersingular():
    # [TRIVIAL] f = 1 divides everything
    for name in ALL_GROUPS:
        t = table(name)
        r = next(r for r in range(len(t)) if fake_degree(t, r).f == 1)
        assert not is_supersingular(t, r)


@pytest.mark.parametrize("name", ALL_GROUPS)
def test_witness_quotients(name):
    # the stored quotient certifies every non-supersingular verdict
    t = table(name)
    rep = supersingular_report(t)
    P = poincare_series(t.degrees)
    for r, ss in rep.flags.items():
        if ss:
            assert r not in rep.witnesses
            continue
        rec = fake_degree(t, r)
        assert rep.witnesses[r] * rec.f == Polynomial.monomial(rec.b, rec.d) * P


def test_classify_block_rules():
    # [PUBLISHED] good = singleton, pair with a supersingular member, triple of supersingulars
    flags = {0: False, 1: True, 2: True, 3: True, 4: False}
    assert classify_block([0], flags).verdict is Verdict.SINGLETON
    assert classify_block([0, 1], flags).verdict is Verdict.PAIR
    assert classify_block([0, 4], flags).verdict is Verdict.BAD
    assert classify_block([1, 2, 3], flags).verdict is Verdict.TRIPLE
    assert classify_block([0, 1, 2], flags).verdict is Verdict.BAD
    size4 = classify_block([0, 1, 2, 3], flags)
    assert size4.verdict is Verdict.BAD and not size4.good
    assert "4" in size4.rule


def test_census_format():
    flags = dict.fromkeys(range(12), False)
    part = FamilyPartition.from_blocks([[0, 1], [2, 3], [4, 5, 6], [7], [8, 9, 10, 11]])
    cls = classify_families(part, flags)
    assert cls.census() == "2^2, 3^1, 4^1"
    assert classify_families(FamilyPartition.singletons(3), flags).census() == ""


@pytest.mark.parametrize("name", EXCEPTIONAL)
def test_certified_for_exceptional_groups(name):
    res = result(name)
    assert res.cm.certified and res.cm.partition == res.euler.generic_partition
    assert all(b.good for b in res.classification.blocks)


def test_s6_is_refused():
    # [PUBLISHED] two pairs without supersingular members
    res = result("S6")
    assert res.cm.refused and res.cm.partition is None
    assert res.classification.census() == "2^2"
    t = res.table
    assert sorted(sorted(t.labels[i] for i in b) for b in res.cm.bad_blocks) == [
        ["phi{10,3}", "phi{5,3}"],
        ["phi{10,6}", "phi{5,6}"],
    ]


def test_refusal_is_all_or_nothing():
    part = FamilyPartition.from_blocks([[0, 1], [2, 3]])
    cls = classify_families(part, {0: True, 1: False, 2: False, 3: False})
    cm = generic_cm_families(part, cls)
    assert cm.refused and cm.bad_blocks == [(2, 3)]


@pytest.mark.parametrize("name", [n for n in EXCEPTIONAL if n != "G4"])
def test_nonsingleton_families_contain_supersingulars(name):
    # [DERIVED] every good non-singleton block has a supersingular member
    res = result(name)
    flags = res.supersingular.flags
    fams = res.euler.generic_partition.nonsingleton()
    assert fams and all(any(flags[i] for i in b) for b in fams)
