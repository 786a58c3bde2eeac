"""The per-group pipeline: enumerate, validate, derive, compare."""
from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

from .bundles import (
    bundle_path,
    load_character_bundle,
    load_group_bundle,
    load_rouquier_bundle,
)
from .chardata import CharacterTable, load_and_validate
from .errors import MissingBundleError
from .euler import EulerData, compute_euler, generic_points, specialize_partition
from .groups import GroupData, enumerate_group
from .rouquier import MartinoVerdict, martino_check, rouquier_data
from .supersingular import (
    CMResult,
    FamilyClassification,
    SupersingularReport,
    classify_families,
    generic_cm_families,
    supersingular_report,
)


@dataclass
class SamplingCheck:
    seed: int
    points: int
    agree: bool


@dataclass
class GroupResult:
    group: GroupData
    table: CharacterTable
    euler: EulerData
    supersingular: SupersingularReport
    classification: FamilyClassification
    cm: CMResult
    martino: MartinoVerdict | None
    sampling: SamplingCheck | None = None
    class_words: dict[int, str] = field(default_factory=dict)

    @property
    def name(self) -> str:
        return self.group.name


def class_word(g: GroupData, cls_index: int) -> str:
    """Readable word for a class: a generator power if one lies in it, else a BFS word."""
    for name in g.spec.generator_names:
        x = 0
        gen = g.generator_index[name]
        for m in range(1, g.exponent + 1):
            x = int(g.table[x, gen])
            if x == 0:
                break
            if int(g.class_of[x]) == cls_index:
                return name * m
    return "".join(g.element_word(g.classes[cls_index].representative))


def load_group(name: str, bundle_dir: str | Path | None = None) -> GroupData:
    return enumerate_group(load_group_bundle(bundle_path(name, "group", bundle_dir)))


def load_table(g: GroupData, bundle_dir: str | Path | None = None) -> CharacterTable:
    return load_and_validate(load_character_bundle(bundle_path(g.name, "characters", bundle_dir)), g)


def run_group(name: str, bundle_dir: str | Path | None = None, seed: int = 0, samples: int = 100) -> GroupResult:
    g = load_group(name, bundle_dir)
    table = load_table(g, bundle_dir)
    eu = compute_euler(table)
    ss = supersingular_report(table)
    cl = classify_families(eu.generic_partition, ss.flags)
    cm = generic_cm_families(eu.generic_partition, cl)
    verdict = None
    if cm.certified:
        try:
            rb = load_rouquier_bundle(bundle_path(name, "rouquier", bundle_dir))
        except MissingBundleError:
            rb = None
        if rb is not None:
            verdict = martino_check(eu, cm, rouquier_data(rb, eu))
    sampling = None
    if samples:
        pts = generic_points(eu, samples, seed=seed)
        agree = all(specialize_partition(eu, p) == eu.generic_partition for p in pts)
        sampling = SamplingCheck(seed, samples, agree)
    words = {c.index: class_word(g, c.index) for c in g.classes if c.is_reflection}
    return GroupResult(g, table, eu, ss, cl, cm, verdict, sampling, words)
