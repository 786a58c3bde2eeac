"""Write the shipped group bundles.

Generator matrices are given as small Python expressions in ``z`` (a
primitive root of unity of the conductor) and optional named constants.
Run from the repository root:

    python3 tools/make_group_bundles.py
"""
from __future__ import annotations

import json
from fractions import Fraction
from pathlib import Path

from cmfamilies.exact import Cyclotomic

OUT = Path(__file__).resolve().parents[1] / "src" / "cmfamilies" / "data" / "bundles"

T = "(z+2)/3, (z-1)/3, (z-1)/3; (z-1)/3, (z+2)/3, (z-1)/3; (z-1)/3, (z-1)/3, (z+2)/3"

GROUPS = {
    "G4": dict(
        conductor=3,
        degrees=[4, 6],
        gens={"s": "1, 0; 0, z", "t": "(2*z+1)/3, (z-1)/3; (2*z-2)/3, (z+2)/3"},
    ),
    "G5": dict(
        conductor=3,
        degrees=[6, 12],
        gens={"s": "1, 0; 0, z", "t": "(z+2)/3, (-z+1)/3; (-2*z+2)/3, (2*z+1)/3"},
        pinned=["s", "t"],
    ),
    "G6": dict(
        conductor=12,
        degrees=[4, 12],
        gens={
            "s": "(-z**3+2*z)/3, (-z**3+2*z)/3; (-2*z**3+4*z)/3, (z**3-2*z)/3",
            "t": "1, 0; 0, z**2-1",
        },
        pinned=["s", "t"],
    ),
    "G8": dict(
        conductor=4,
        degrees=[8, 12],
        gens={"s": "1, 0; 0, z", "t": "(z+1)/2, (z-1)/2; (z-1)/2, (z+1)/2"},
    ),
    "G10": dict(
        conductor=12,
        degrees=[12, 24],
        gens={
            "s": "1, 0; 0, z**4",
            "t": "(z**3-z**2+z+2)/3, (z**3+2*z**2-2*z-1)/6; (z**3+2*z**2-2*z-1)/3, (2*z**3+z**2-z+1)/3",
        },
        pinned=["s", "t"],
    ),
    "G23": dict(
        conductor=5,
        degrees=[2, 6, 10],
        consts={"tau": "-z**3-z**2"},
        gens={
            "s": "-1, 0, 0; tau, 1, 0; 0, 0, 1",
            "t": "1, tau, 0; 0, -1, 0; 0, 1, 1",
            "u": "1, 0, 0; 0, 1, 1; 0, 0, -1",
        },
    ),
    "G24": dict(
        conductor=7,
        degrees=[4, 6, 14],
        consts={"tau": "z**4+z**2+z"},
        gens={
            "s": "-1, 1, tau; 0, 1, 0; 0, 0, 1",
            "t": "1, 0, 0; 1, -1, 1; 0, 0, 1",
            "u": "1, 0, 0; 0, 1, 0; -tau-1, 1, -1",
        },
    ),
    "G25": dict(
        conductor=3,
        degrees=[6, 9, 12],
        gens={"s": "1, 0, 0; 0, 1, 0; 0, 0, z", "t": T, "u": "1, 0, 0; 0, z, 0; 0, 0, 1"},
    ),
    "G26": dict(
        conductor=3,
        degrees=[6, 12, 18],
        gens={"s": "1, 0, 0; 0, 0, 1; 0, 1, 0", "t": "1, 0, 0; 0, 1, 0; 0, 0, z", "u": T},
        pinned=["s", "t"],
    ),
}


def _s6_generators() -> dict[str, str]:
    # simple reflections of type A5 on the root basis
    cartan = [[2 if i == j else (-1 if abs(i - j) == 1 else 0) for j in range(5)] for i in range(5)]
    gens = {}
    for i in range(5):
        rows = []
        for r in range(5):
            row = []
            for c in range(5):
                v = (1 if r == c else 0) - (cartan[c][i] if r == i else 0)
                row.append(str(v))
            rows.append(", ".join(row))
        gens[f"s{i + 1}"] = "; ".join(rows)
    return gens


GROUPS["S6"] = dict(conductor=1, degrees=[2, 3, 4, 5, 6], gens=_s6_generators())


def parse_matrix(text: str, n: int, consts: dict[str, str]) -> list[list[Cyclotomic]]:
    env = {"z": Cyclotomic.zeta(n), "Fraction": Fraction}
    for name, expr in consts.items():
        env[name] = eval(expr, {}, env)
    rows = []
    for row in text.split(";"):
        rows.append([Cyclotomic.coerce(eval(entry, {}, env), n).to_conductor(n) for entry in row.split(",")])
    return rows


def build(name: str, info: dict) -> dict:
    n = info["conductor"]
    gens = {g: parse_matrix(m, n, info.get("consts", {})) for g, m in info["gens"].items()}
    dim = len(next(iter(gens.values())))
    bundle = {
        "kind": "group",
        "name": name,
        "dim": dim,
        "conductor": n,
        "degrees": info["degrees"],
        "generator_names": list(gens),
        "generators": [[[x.serialize() for x in row] for row in m] for m in gens.values()],
    }
    if "pinned" in info:
        bundle["pinned_orbit_order"] = info["pinned"]
    return bundle


def main():
    OUT.mkdir(parents=True, exist_ok=True)
    for name, info in GROUPS.items():
        path = OUT / f"{name}.group.json"
        path.write_text(json.dumps(build(name, info), indent=1) + "\n")
        print("wrote", path)


if __name__ == "__main__":
    main()
