"""Machine and text renderings of a group result, and golden comparison.

The machine format is JSON Lines, UTF-8, keys sorted. A golden file uses the
same record types with a subset of the keys; comparison drops header records,
keeps only report records whose type occurs in the golden, projects them onto
the golden's keys and compares record by record in order.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .chardata import fake_degree
from .errors import GoldenMissingError
from .pipeline import GroupResult

FORMAT_VERSION = 1


def dumps(record: dict) -> str:
    return json.dumps(record, sort_keys=True, ensure_ascii=False, separators=(", ", ": "))


def _reflection_classes(res: GroupResult):
    """Reflection classes by hyperplane orbit, then by eigenvalue exponent j."""
    g = res.group
    return [g.classes[ci] for o in g.hyperplane_orbits for ci in o.reflection_classes]


def machine_records(res: GroupResult) -> list[dict]:
    g, t, eu = res.group, res.table, res.euler
    labels = t.labels
    refl = _reflection_classes(res)
    recs: list[dict] = [{"type": "header", "group": g.name, "format": FORMAT_VERSION}]
    recs.append({
        "type": "group",
        "group": g.name,
        "order": g.order,
        "classes": len(g.classes),
        "coordinates": [list(k) for k in g.omega_bar],
        "hyperplane_orbits": [{"omega": o.index, "e": o.e, "hyperplanes": o.size} for o in g.hyperplane_orbits],
        "reflection_classes": [
            {
                "word": res.class_words[c.index],
                "order": c.element_order,
                "length": c.size,
                "orbit": c.orbit,
                "eigenvalue": c.nontrivial_eigenvalue.serialize(),
                "c_form": str(eu.c_forms[c.index]),
            }
            for c in refl
        ],
    })
    for r, lab in enumerate(labels):
        fd = fake_degree(t, r)
        recs.append({
            "type": "character",
            "label": lab,
            "d": fd.d,
            "b": fd.b,
            "fake_degree": str(fd.f),
            "values": {res.class_words[c.index]: t.value(r, c.index).to_conductor(g.conductor).serialize() for c in refl},
            "omega": str(eu.omega[r]),
            "ss": res.supersingular.flags[r],
        })
    recs.append({
        "type": "families",
        "nonsingleton": [[labels[i] for i in b] for b in eu.generic_partition.nonsingleton()],
        "blocks": len(eu.generic_partition),
        "classification": [
            {"members": [labels[i] for i in b.members], "verdict": b.verdict.value, "rule": b.rule}
            for b in res.classification.blocks if len(b.members) > 1
        ],
        "cm": "certified" if res.cm.certified else "refused",
        "bad_census": res.classification.census(),
    })
    for rep, members in eu.variety.orbits:
        recs.append({"type": "orbit", "rep": list(rep.normal), "length": len(members)})
    recs.append({
        "type": "variety",
        "planes": len(eu.variety),
        "orbits": len(eu.variety.orbits),
        "sharp_stable": eu.sharp_stable(),
    })
    if res.martino is not None:
        v = res.martino
        recs.append({
            "type": "martino",
            "generic_equal": v.generic_equal,
            "cm_unions_of_rouquier": v.cm_unions_of_rouquier,
            "rou_in_eu": v.rou_in_eu,
            "sharp_stable": v.sharp_stable,
            "essential_planes": v.essential_planes,
            "counterexample": v.counterexample,
            "evidence": v.evidence,
        })
    if res.sampling is not None:
        recs.append({"type": "sampling", "seed": res.sampling.seed, "points": res.sampling.points, "agree": res.sampling.agree})
    return recs


def machine_text(res: GroupResult) -> str:
    return "".join(dumps(r) + "\n" for r in machine_records(res))


# ------------------------------------------------------------------ text


def _table(headers: list[str], rows: list[list[str]]) -> str:
    widths = [max(len(h), *(len(r[i]) for r in rows)) if rows else len(h) for i, h in enumerate(headers)]
    line = lambda cells: "  ".join(c.ljust(w) for c, w in zip(cells, widths)).rstrip()
    return "\n".join([line(headers), line(["-" * w for w in widths])] + [line(r) for r in rows])


def render_text(res: GroupResult) -> str:
    g, t, eu = res.group, res.table, res.euler
    labels = t.labels
    refl = _reflection_classes(res)
    out = [f"{g.name}: order {g.order}, {len(g.classes)} classes, {len(t)} characters"]
    out.append("parameters: " + ", ".join(f"k_{{{o},{j}}}" for o, j in g.omega_bar))
    out.append("")
    out.append(_table(
        ["class", "order", "length", "orbit", "c_k(s)"],
        [[res.class_words[c.index], str(c.element_order), str(c.size), str(c.orbit), str(eu.c_forms[c.index])] for c in refl],
    ))
    out.append("")
    words = [res.class_words[c.index] for c in refl]
    rows = []
    for r, lab in enumerate(labels):
        vals = [str(t.value(r, c.index)) for c in refl]
        rows.append([lab, *vals, str(eu.omega[r]), "y" if res.supersingular.flags[r] else "n"])
    out.append(_table(["character", *(f"chi({w})" for w in words), "omega", "ss"], rows))
    out.append("")
    fams = eu.generic_partition.nonsingleton()
    out.append(f"generic Euler families: {len(eu.generic_partition)} blocks, {len(fams)} non-singleton")
    for b in res.classification.blocks:
        if len(b.members) > 1:
            out.append(f"  {{{', '.join(labels[i] for i in b.members)}}}  {b.verdict.value} ({b.rule})")
    if res.cm.certified:
        out.append("generic Calogero-Moser families: certified equal to the Euler families")
    else:
        out.append(f"generic Calogero-Moser families: REFUSED, bad families {res.classification.census()}")
    out.append("")
    out.append(f"Euler variety: {len(eu.variety)} hyperplanes in {len(eu.variety.orbits)} orbits, "
               f"sharp-stable: {'yes' if eu.sharp_stable() else 'no'}")
    out.append(_table(["orbit", "representative", "length"],
                      [[str(i + 1), str(rep), str(len(m))] for i, (rep, m) in enumerate(eu.variety.orbits)]))
    if res.martino is not None:
        v = res.martino
        out.append("")
        out.append(f"Martino check: generic families equal: {v.generic_equal}; CM families unions of Rouquier families: "
                   f"{v.cm_unions_of_rouquier}; essential planes in Euler variety: {v.rou_in_eu} "
                   f"({v.essential_planes} of {len(eu.variety)}); sharp-stable: {v.sharp_stable}")
        if v.counterexample:
            out.append("COUNTER-EXAMPLE: generic Calogero-Moser families are strictly coarser than the generic Rouquier families")
        for ev in v.evidence:
            out.append(f"  {ev}")
    if res.sampling is not None:
        s = res.sampling
        out.append(f"specialization at {s.points} generic points (seed {s.seed}): "
                   f"{'agrees' if s.agree else 'DISAGREES'} with the generic partition")
    return "\n".join(out) + "\n"


# ------------------------------------------------------------------ goldens


def default_golden_dir() -> Path:
    return Path(str(resources.files("cmfamilies") / "data" / "goldens"))


def golden_path(group: str, golden_dir: str | Path | None = None) -> Path:
    base = Path(golden_dir) if golden_dir else default_golden_dir()
    path = base / f"{group}.jsonl"
    if not path.is_file():
        raise GoldenMissingError(f"no golden file for {group!r} in {base}")
    return path


_MISSING = object()


def project(value, template):
    """Restrict ``value`` to the shape of ``template`` (dict keys, list positions)."""
    if isinstance(template, dict) and isinstance(value, dict):
        return {k: project(value.get(k, _MISSING), v) for k, v in template.items()}
    if isinstance(template, list) and isinstance(value, list) and len(template) == len(value):
        return [project(v, t) for v, t in zip(value, template)]
    return value


@dataclass
class Divergence:
    line: int  # 1-based line in the golden file
    label: str
    expected: dict | None
    actual: dict | None

    def __str__(self):
        return (f"first divergence at golden line {self.line} ({self.label}):\n"
                f"  expected: {dumps(self.expected) if self.expected is not None else '<no record>'}\n"
                f"  actual:   {dumps(self.actual) if self.actual is not None else '<no record>'}")


def _label(rec: dict) -> str:
    for key in ("label", "rep", "group"):
        if key in rec:
            return f"{rec['type']} {rec[key]}"
    return str(rec.get("type"))


def diff_records(actual: list[dict], golden_lines: list[str]) -> Divergence | None:
    golden = [(i + 1, json.loads(l)) for i, l in enumerate(golden_lines) if l.strip()]
    golden = [(i, r) for i, r in golden if r.get("type") != "header"]
    kinds = {r["type"] for _, r in golden}
    act = [r for r in actual if r.get("type") in kinds]
    for k, (line, exp) in enumerate(golden):
        if k >= len(act):
            return Divergence(line, _label(exp), exp, None)
        got = project(act[k], exp)
        if got != exp:
            return Divergence(line, _label(exp), exp, {k2: v for k2, v in got.items() if v is not _MISSING})
    if len(act) > len(golden):
        extra = act[len(golden)]
        last = golden[-1][0] if golden else 0
        return Divergence(last + 1, _label(extra), None, extra)
    return None


def diff_golden(res: GroupResult, golden_dir: str | Path | None = None) -> Divergence | None:
    path = golden_path(res.name, golden_dir)
    return diff_records(machine_records(res), path.read_text(encoding="utf-8").splitlines())
