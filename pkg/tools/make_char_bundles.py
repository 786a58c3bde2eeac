"""Compute character tables with Burnside's method and write character bundles.

For each group the class multiplication coefficients are read off the
multiplication table; the characters are the common eigenvectors of the
class matrices. Values are recognized exactly by decomposing each element's
eigenvalues into roots of unity, and the rows are labelled and ordered by
matching (d, b) pairs and reflection values against the golden records.
The library re-validates every bundle exactly on load.

    python3 tools/make_char_bundles.py [G4 G5 ...]
"""
from __future__ import annotations

import cmath
import json
import re
import sys
from pathlib import Path

import numpy as np

from cmfamilies.bundles import (
    CharacterBundle,
    ClassFingerprint,
    available_groups,
    bundle_path,
    load_group_bundle,
    serialize_character_bundle,
)
from cmfamilies.chardata import fake_degree, load_and_validate
from cmfamilies.errors import ValidationError
from cmfamilies.exact import Cyclotomic
from cmfamilies.groups import enumerate_group

ROOT = Path(__file__).resolve().parents[1]
GOLDENS = ROOT / "src" / "cmfamilies" / "data" / "goldens"
OUT = ROOT / "src" / "cmfamilies" / "data" / "bundles"


def numeric_table(g, seed=1):
    k = len(g.classes)
    n = g.order
    sizes = np.array([c.size for c in g.classes], dtype=float)
    cls = g.class_of
    inv = g.inverse
    # a[i, j, l] = #{x in C_i : x^-1 z_l in C_j}
    a = np.zeros((k, k, k))
    for l, c in enumerate(g.classes):
        z = c.representative
        other = cls[g.table[inv, z]]
        np.add.at(a[:, :, l], (cls, other), 1)
    rng = np.random.default_rng(seed)
    combo = np.einsum("i,ijl->jl", rng.standard_normal(k), a)
    _, vecs = np.linalg.eig(combo)
    chars = []
    for v in vecs.T:
        v = v / v[0]
        deg2 = n / np.sum(np.abs(v) ** 2 / sizes)
        deg = np.sqrt(deg2.real)
        chars.append(v * deg / sizes)
    return np.array(chars)


def exact_value(g, chi_num, rep, o, n):
    """chi(rep) from the numeric values on powers of rep."""
    powers = [0]
    x = 0
    for _ in range(o - 1):
        x = int(g.table[x, rep])
        powers.append(x)
    powers = powers[1:] + [0]  # rep^1 .. rep^o
    vals = [chi_num[g.class_of[p]] for p in powers]
    # vals[j-1] = chi(rep^j) for j = 1 .. o
    terms = []
    for i in range(o):
        m = sum(vals[j - 1] * cmath.exp(-2j * cmath.pi * i * j / o) for j in range(1, o + 1)) / o
        r = round(m.real)
        if abs(m - r) > 1e-6:
            raise ValueError(f"non-integral eigenvalue multiplicity {m}")
        if r:
            terms.append((i, r))
    return Cyclotomic.from_terms(o, terms).to_conductor(n)


def exact_table(g):
    num = numeric_table(g)
    n = g.conductor
    rows = []
    for chi in num:
        row = []
        for c in g.classes:
            row.append(exact_value(g, chi, c.representative, c.element_order, n))
        rows.append(row)
    rows.sort(key=lambda r: (r[0].to_rational(), [complex(x).real for x in r[1:]]))
    return rows


def read_golden(name):
    recs = [json.loads(l) for l in (GOLDENS / f"{name}.jsonl").read_text().splitlines()]
    return [r for r in recs if r["type"] == "character"]


def db_of(label):
    m = re.match(r"phi\{(\d+),(\d+)\}", label)
    return int(m.group(1)), int(m.group(2))


def build(name):
    spec = load_group_bundle(bundle_path(name, "group"))
    g = enumerate_group(spec)
    n = g.conductor
    rows = exact_table(g)
    fps = [ClassFingerprint(c.size, c.element_order, c.trace.canonical(), c.det.canonical()) for c in g.classes]
    keys = [f.key() for f in fps]
    pins = {i: " ".join(g.element_word(c.representative)) for i, c in enumerate(g.classes) if keys.count(keys[i]) > 1}
    golden = read_golden(name)
    for conv in ("plain", "conjugate"):
        provisional = CharacterBundle(name, n, [f"x{i}" for i in range(len(rows))], fps, rows, list(spec.degrees), pins)
        table = load_and_validate(provisional, g, convention=conv)
        assigned = {}
        ok = True
        for gi, rec in enumerate(golden):
            d, b = db_of(rec["label"])
            want = {w: Cyclotomic.deserialize(n, v) for w, v in rec["values"].items()}
            cands = [
                r for r in range(len(rows))
                if r not in assigned.values()
                and fake_degree(table, r).d == d and fake_degree(table, r).b == b
                and all(table.value_at_word(r, w) == v for w, v in want.items())
            ]
            if not cands:
                ok = False
                break
            if len(cands) > 1:
                print(f"  {name} {rec['label']}: {len(cands)} indistinguishable candidates, taking the first", file=sys.stderr)
            assigned[gi] = cands[0]
        if ok and len(assigned) == len(rows):
            print(f"{name}: labels matched with fake degree convention {conv!r}")
            labels = [rec["label"] for rec in golden]
            ordered = [rows[assigned[i]] for i in range(len(golden))]
            bundle = CharacterBundle(name, n, labels, fps, ordered, list(spec.degrees), pins, conv)
            return serialize_character_bundle(bundle)
    raise ValidationError(f"{name}: could not match computed characters to golden labels")


def main(argv):
    names = argv or available_groups()
    for name in names:
        data = build(name)
        path = OUT / f"{name}.chars.json"
        path.write_text(json.dumps(data, indent=None, separators=(",", ":")).replace('],"', '],\n"') + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main(sys.argv[1:])
