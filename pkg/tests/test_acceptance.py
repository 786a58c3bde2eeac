"""Acceptance criteria 1-8, one PASS/FAIL line each.

Runs under pytest (the lines are printed in the terminal summary) or as a
script: ``python3 tests/test_acceptance.py``.
"""
import itertools
import json
import random
import sys
from functools import lru_cache

import pytest

from cmfamilies.bundles import available_groups, bundle_path, load_character_bundle
from cmfamilies.chardata import fake_degree, load_and_validate, poincare_series
from cmfamilies.errors import ValidationError
from cmfamilies.euler import p_form, sharp_permutation
from cmfamilies.exact import Polynomial
from cmfamilies.partitions import FamilyPartition, refines
from cmfamilies.pipeline import run_group
from cmfamilies.report import default_golden_dir, diff_records, machine_records, project

GROUPS = available_groups()
EXCEPTIONAL = [g for g in GROUPS if g.startswith("G")]

ORDERS = {"G4": 24, "G5": 72, "G6": 48, "G8": 96, "G10": 288, "G23": 120, "G24": 336, "G25": 648, "G26": 1296, "S6": 720}
# non-singleton block sizes of the generic partition, and total block count where stated
BLOCK_SHAPES = {
    "G4": ([], None), "G5": ([3], None), "G6": ([2, 2, 2], None), "G8": ([2], None),
    "G10": ([2, 2, 2, 3, 3, 3, 3], 37), "G23": ([2, 2, 2], None), "G24": ([2, 3, 3], None),
    "G25": ([3], None), "G26": ([2, 2, 2, 2, 2], None), "S6": ([2, 2], None),
}
PLANES = {"G4": 6, "G5": 69, "G6": 22, "G8": 37, "G10": 300, "G23": 1, "G24": 1, "G25": 30, "G26": 169}

RESULTS: dict[int, tuple[bool, str]] = {}
TITLES = {
    1: "group orders and reflection classes",
    2: "omega forms and character values",
    3: "supersingularity flags",
    4: "generic Euler / CM partitions",
    5: "Euler variety census and sharp-stability",
    6: "Martino verdicts",
    7: "property suites",
    8: "negative controls",
}


@lru_cache(maxsize=None)
def result(name):
    return run_group(name, seed=0, samples=100)


@lru_cache(maxsize=None)
def records(name):
    return machine_records(result(name))


def golden(name, kind):
    path = default_golden_dir() / f"{name}.jsonl"
    recs = [json.loads(l) for l in path.read_text(encoding="utf-8").splitlines() if l.strip()]
    return [r for r in recs if r["type"] == kind]


def _matches(name, kind, keys):
    """Compare the given keys of every golden record of ``kind`` with the report."""
    exp = golden(name, kind)
    got = [r for r in records(name) if r["type"] == kind]
    if len(exp) != len(got):
        return f"{name}: {len(got)} {kind} records, golden has {len(exp)}"
    for e, g in zip(exp, got):
        for k in keys:
            if k in e and e[k] != project(g.get(k), e[k]):
                return f"{name} {kind} {e.get('label', '')}: {k} differs"
    return None


# ------------------------------------------------------------------ criteria


def criterion_1():
    # [PUBLISHED]
    for name in GROUPS:
        res = result(name)
        if res.group.order != ORDERS[name]:
            return False, f"{name}: order {res.group.order}"
        exp = golden(name, "group")[0]
        got = next(r for r in records(name) if r["type"] == "group")
        if exp.get("reflection_classes") is not None:
            proj = [{k: c[k] for k in e} for c, e in zip(got["reflection_classes"], exp["reflection_classes"])]
            if proj != exp["reflection_classes"]:
                return False, f"{name}: reflection classes differ"
    return True, f"{len(GROUPS)} groups"


def criterion_2():
    # [PUBLISHED]
    rows = 0
    for name in GROUPS:
        err = _matches(name, "character", ("label", "omega", "values"))
        if err:
            return False, err
        rows += len(golden(name, "character"))
    return True, f"{rows} table rows"


def criterion_3():
    # [PUBLISHED] ss columns, and at least one supersingular character beyond G4
    for name in GROUPS:
        err = _matches(name, "character", ("ss",))
        if err:
            return False, err
    for name in EXCEPTIONAL:
        if int(name[1:]) > 4 and not any(result(name).supersingular.flags.values()):
            return False, f"{name}: no supersingular character"
    return True, "flags match"


def criterion_4():
    # [PUBLISHED]
    for name in GROUPS:
        res = result(name)
        part = res.euler.generic_partition
        sizes, total = BLOCK_SHAPES[name]
        if sorted(len(b) for b in part.nonsingleton()) != sizes or (total and len(part) != total):
            return False, f"{name}: block shape {sorted(len(b) for b in part.nonsingleton())}"
        err = _matches(name, "families", ("nonsingleton", "cm", "bad_census"))
        if err:
            return False, err
        if name == "S6":
            if not res.cm.refused or len(res.cm.bad_blocks) != 2:
                return False, "S6 not refused with two bad pairs"
        elif not res.cm.certified:
            return False, f"{name}: not certified"
    g25 = result("G25")
    triple = sorted(g25.table.labels[i] for i in g25.euler.generic_partition.nonsingleton()[0])
    if triple != ["phi{3,6}", "phi{9,5}", "phi{9,7}"]:
        return False, f"G25 triple {triple}"
    return True, "9 certified, S6 refused"


def criterion_5():
    # [PUBLISHED]
    for name, count in PLANES.items():
        eu = result(name).euler
        if len(eu.variety) != count:
            return False, f"{name}: {len(eu.variety)} planes"
        err = _matches(name, "orbit", ("rep", "length")) or _matches(name, "variety", ("planes", "orbits", "sharp_stable"))
        if err:
            return False, err
        if not eu.sharp_stable():
            return False, f"{name}: not sharp-stable"
    return True, "/".join(str(c) for c in PLANES.values())


def criterion_6():
    # [PUBLISHED]
    equal = [n for n in EXCEPTIONAL if result(n).martino.generic_equal]
    if sorted(equal) != sorted(n for n in EXCEPTIONAL if n != "G25"):
        return False, f"generic equality for {equal}"
    v = result("G25").martino
    if not (v.cm_unions_of_rouquier and v.counterexample):
        return False, "G25 union refinement fails"
    for name in EXCEPTIONAL:
        if not result(name).martino.rou_in_eu:
            return False, f"{name}: essential planes outside the Euler variety"
        err = _matches(name, "martino", ("generic_equal", "cm_unions_of_rouquier", "rou_in_eu", "essential_planes"))
        if err:
            return False, err
    inc = {n: (result(n).martino.essential_planes, len(result(n).euler.variety)) for n in ("G8", "G26")}
    if inc != {"G8": (24, 37), "G26": (31, 169)}:
        return False, f"inclusion sizes {inc}"
    return True, "8 equal, G25 counter-example"


def criterion_7():
    # [DERIVED]
    for name in GROUPS:
        res = result(name)
        t = res.table
        P = poincare_series(t.degrees)
        total = Polynomial()
        for r in range(len(t)):
            total = total + fake_degree(t, r).f * t.dim(r)
        if total != P or P(1) != res.group.order:
            return False, f"{name}: fake-degree sum identity"
        for a, b in itertools.combinations(range(len(t)), 2):
            if p_form(t, a, b) != res.euler.omega[b] - res.euler.omega[a]:
                return False, f"{name}: p form {t.labels[a]}, {t.labels[b]}"
        if not (res.sampling and res.sampling.points == 100 and res.sampling.agree):
            return False, f"{name}: specialization at generic points"
        perm = sharp_permutation(res.group)
        if [perm[i] for i in perm] != list(range(len(perm))):
            return False, f"{name}: sharp is not an involution"
    rng = random.Random(0)
    parts = [FamilyPartition.from_keys([rng.randrange(3) for _ in range(7)]) for _ in range(60)]
    for a, b, c in itertools.islice(itertools.product(parts, repeat=3), 20000):
        if not refines(a, a) or (refines(a, b) and refines(b, c) and not refines(a, c)):
            return False, "refinement laws"
        if refines(a, b) and refines(b, a) and a != b:
            return False, "refinement antisymmetry"
    return True, "all invariants hold"


def criterion_8():
    b = load_character_bundle(bundle_path("G4", "characters"))
    b.values = [list(row) for row in b.values]
    b.values[2][3] = b.values[2][3] + 1
    try:
        load_and_validate(b, result("G4").group)
        return False, "perturbed table accepted"
    except ValidationError as exc:
        if "orthogonality" not in str(exc):
            return False, f"wrong failure: {exc}"
    lines = (default_golden_dir() / "G8.jsonl").read_text(encoding="utf-8").splitlines()
    k = next(i for i, l in enumerate(lines) if '"phi{4,5}"' in l)
    rec = json.loads(lines[k])
    rec["omega"] = "0"
    lines[k] = json.dumps(rec)
    div = diff_records(records("G8"), lines)
    if div is None or div.line != k + 1:
        return False, f"altered golden: {div}"
    return True, f"orthogonality rejected, diff points at line {k + 1}"


CRITERIA = {i: globals()[f"criterion_{i}"] for i in TITLES}


def evaluate(i: int) -> tuple[bool, str]:
    if i not in RESULTS:
        try:
            RESULTS[i] = CRITERIA[i]()
        except Exception as exc:  # a crash is a failure, reported like one
            RESULTS[i] = (False, f"{type(exc).__name__}: {exc}")
    return RESULTS[i]


def summary_lines() -> list[str]:
    return [
        f"criterion {i}: {'PASS' if ok else 'FAIL'}  {TITLES[i]} ({detail})"
        for i, (ok, detail) in sorted(RESULTS.items())
    ]


@pytest.mark.parametrize("i", sorted(TITLES))
def test_criterion(i):
    ok, detail = evaluate(i)
    assert ok, detail


if __name__ == "__main__":
    for i in TITLES:
        evaluate(i)
    print("\n".join(summary_lines()))
    sys.exit(0 if all(ok for ok, _ in RESULTS.values()) else 1)
