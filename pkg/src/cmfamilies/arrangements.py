"""Integer hyperplane arrangements in parameter space and their orbits under
Young subgroups permuting coordinates within blocks."""
from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence

import numpy as np


def normalize_vector(vec: Sequence) -> tuple[int, ...]:
    """Primitive integer vector with first nonzero entry positive."""
    fr = [Fraction(x) for x in vec]
    if not any(fr):
        raise ValueError("zero vector does not define a hyperplane")
    den = lcm(*(x.denominator for x in fr))
    ints = [int(x * den) for x in fr]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    first = next(x for x in ints if x)
    return tuple(-x for x in ints) if first < 0 else tuple(ints)


def _normalize_rows(rows: np.ndarray) -> np.ndarray:
    g = np.gcd.reduce(rows, axis=1)
    rows = rows // g[:, None]
    first = rows[np.arange(len(rows)), np.argmax(rows != 0, axis=1)]
    return rows * np.where(first < 0, -1, 1)[:, None]


@dataclass(frozen=True, order=True)
class Hyperplane:
    normal: tuple[int, ...]

    def __post_init__(self):
        if normalize_vector(self.normal) != tuple(self.normal):
            raise ValueError(f"hyperplane normal {self.normal} is not normalized")

    @classmethod
    def from_vector(cls, vec: Sequence) -> "Hyperplane":
        return cls(normalize_vector(vec))

    def contains(self, point: Sequence) -> bool:
        return sum(a * Fraction(x) for a, x in zip(self.normal, point)) == 0

    def __str__(self):
        return "(" + ",".join(str(x) for x in self.normal) + ")"


def young_permutations(blocks: Sequence[Sequence[int]], dim: int) -> np.ndarray:
    """All coordinate permutations preserving each block, as index arrays."""
    perms = []
    for choice in itertools.product(*(itertools.permutations(b) for b in blocks)):
        p = list(range(dim))
        for b, img in zip(blocks, choice):
            for src, dst in zip(b, img):
                p[dst] = src
        perms.append(p)
    return np.array(perms, dtype=np.int64)


@dataclass
class HyperplaneArrangement:
    planes: frozenset[Hyperplane]
    young_blocks: tuple[tuple[int, ...], ...]
    dim: int
    orbits: list[tuple[Hyperplane, list[Hyperplane]]] = field(default_factory=list)
    closed: bool = True

    @classmethod
    def build(
        cls, planes: Iterable[Hyperplane], young_blocks: Sequence[Sequence[int]], dim: int, closed: bool = True
    ) -> "HyperplaneArrangement":
        """With ``closed=False`` the plane set may be a union of partial orbits;
        orbits are then the traces of Young orbits on it."""
        planes = frozenset(planes)
        for p in planes:
            if len(p.normal) != dim:
                raise ValueError(f"plane {p} has {len(p.normal)} coordinates, expected {dim}")
        arr = cls(planes, tuple(tuple(b) for b in young_blocks), dim, closed=closed)
        arr.orbits = arr._decompose()
        return arr

    def __len__(self):
        return len(self.planes)

    def __contains__(self, plane: Hyperplane):
        return plane in self.planes

    def sorted_planes(self) -> list[Hyperplane]:
        return sorted(self.planes)

    def orbit_images(self, plane: Hyperplane) -> set[Hyperplane]:
        perms = young_permutations(self.young_blocks, self.dim)
        rows = np.array(plane.normal, dtype=np.int64)[perms]
        return {Hyperplane(tuple(int(x) for x in r)) for r in _normalize_rows(rows)}

    def _decompose(self) -> list[tuple[Hyperplane, list[Hyperplane]]]:
        if not self.planes:
            return []
        ordered = self.sorted_planes()
        perms = young_permutations(self.young_blocks, self.dim)
        normals = np.array([p.normal for p in ordered], dtype=np.int64)
        images = _normalize_rows(normals[:, perms].reshape(-1, self.dim)).reshape(len(ordered), len(perms), self.dim)
        index = {p.normal: i for i, p in enumerate(ordered)}
        seen = np.zeros(len(ordered), dtype=bool)
        out = []
        for i, p in enumerate(ordered):
            if seen[i]:
                continue
            members = set()
            for row in images[i]:
                key = tuple(int(x) for x in row)
                j = index.get(key)
                if j is None:
                    if not self.closed:
                        continue
                    raise ValueError(f"arrangement is not closed under the Young subgroup: {p} maps to {key}")
                members.add(j)
            seen[list(members)] = True
            # ordered is sorted, so the smallest member index is the lex-min plane
            out.append((ordered[min(members)], [ordered[j] for j in sorted(members)]))
        return out

    def orbit_of(self, plane: Hyperplane) -> int:
        for i, (_, members) in enumerate(self.orbits):
            if plane in members:
                return i
        raise KeyError(str(plane))

    def orbit_sizes(self) -> list[int]:
        return [len(m) for _, m in self.orbits]

    def sharp(self, conjugation: Sequence[int]) -> "HyperplaneArrangement":
        return HyperplaneArrangement.build(
            (sharp_plane(p, conjugation) for p in self.planes), self.young_blocks, self.dim, closed=self.closed
        )

    def export_records(self) -> list[dict]:
        recs = [
            {"type": "plane", "normal": list(p.normal), "orbit": self.orbit_of(p)}
            for p in self.sorted_planes()
        ]
        recs.append({"type": "arrangement", "planes": len(self), "orbit_sizes": self.orbit_sizes()})
        return recs


def sharp_plane(plane: Hyperplane, conjugation: Sequence[int]) -> Hyperplane:
    """Apply the coordinate permutation ``new[i] = old[conjugation[i]]``."""
    return Hyperplane.from_vector([plane.normal[conjugation[i]] for i in range(len(plane.normal))])


def plane_inclusion(a: HyperplaneArrangement, b: HyperplaneArrangement) -> tuple[bool, list[Hyperplane]]:
    if a.dim != b.dim:
        raise ValueError(f"coordinate dimension mismatch: {a.dim} vs {b.dim}")
    missing = sorted(p for p in a.planes if p not in b.planes)
    return not missing, missing
