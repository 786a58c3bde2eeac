"""Comparison of Calogero-Moser data with ingested Rouquier data."""
from __future__ import annotations

from dataclasses import dataclass, field

from .arrangements import Hyperplane, HyperplaneArrangement, plane_inclusion, sharp_plane
from .bundles import RouquierBundle
from .errors import ValidationError
from .euler import EulerData, sharp_permutation, young_blocks
from .partitions import FamilyPartition, refines
from .supersingular import CMResult

__all__ = ["MartinoVerdict", "RouquierData", "martino_check", "plane_inclusion", "refines", "rouquier_data"]


@dataclass
class RouquierData:
    group: str
    generic_families: FamilyPartition
    essential_planes: HyperplaneArrangement
    provenance: str


def rouquier_data(bundle: RouquierBundle, euler: EulerData) -> RouquierData:
    g = euler.group
    labels = euler.table.labels
    if bundle.group != g.name:
        raise ValidationError(f"Rouquier bundle is for {bundle.group!r}, group is {g.name!r}")
    try:
        fams = FamilyPartition.from_labels(bundle.families, labels)
    except ValueError as exc:
        raise ValidationError(f"{g.name} Rouquier bundle: {exc}") from None
    dim = len(g.omega_bar)
    perm = sharp_permutation(g)
    planes = []
    for vec in bundle.essential_planes:
        if len(vec) != dim:
            raise ValidationError(f"{g.name} Rouquier bundle: plane {vec} has {len(vec)} coordinates, expected {dim}")
        try:
            p = Hyperplane.from_vector(vec)
        except ValueError as exc:
            raise ValidationError(f"{g.name} Rouquier bundle: {exc}") from None
        planes.append(sharp_plane(p, perm) if bundle.coordinate_convention == "hecke" else p)
    arr = HyperplaneArrangement.build(planes, young_blocks(g), dim, closed=False)
    return RouquierData(g.name, fams, arr, bundle.provenance)


@dataclass
class MartinoVerdict:
    group: str
    generic_equal: bool
    cm_unions_of_rouquier: bool
    rou_in_eu: bool
    sharp_stable: bool
    essential_planes: int
    evidence: list[dict] = field(default_factory=list)

    @property
    def counterexample(self) -> bool:
        """The generic conjecture fails while the union statement survives."""
        return not self.generic_equal and self.cm_unions_of_rouquier


def martino_check(euler: EulerData, cm: CMResult, rou: RouquierData) -> MartinoVerdict:
    if not cm.certified:
        raise ValidationError(f"{euler.group.name}: generic Calogero-Moser families are not certified; nothing to compare")
    labels = euler.table.labels
    cmp = cm.partition
    equal = cmp == rou.generic_families
    unions = refines(rou.generic_families, cmp)
    inside, missing = plane_inclusion(rou.essential_planes, euler.variety)
    sharp_ok = euler.sharp_stable() and euler.sharp(rou.essential_planes).planes == rou.essential_planes.planes
    evidence = []
    rou_blocks = set(rou.generic_families.blocks)
    for b in cmp.blocks:
        if b not in rou_blocks:
            parts = sorted({rou.generic_families.block_of(i) for i in b})
            evidence.append({
                "cm_family": [labels[i] for i in b],
                "rouquier_families": [[labels[i] for i in p] for p in parts],
            })
    for p in missing:
        evidence.append({"essential_plane_not_in_euler_variety": list(p.normal)})
    return MartinoVerdict(
        group=euler.group.name,
        generic_equal=equal,
        cm_unions_of_rouquier=unions,
        rou_in_eu=inside,
        sharp_stable=sharp_ok,
        essential_planes=len(rou.essential_planes),
        evidence=evidence,
    )
