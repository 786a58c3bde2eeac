"""Euler element values, generic Euler families and the Euler variety.

For a reflection class with nontrivial eigenvalue eps and hyperplane orbit
Omega, the commutator coefficient is

    c_k(s) = sum_j det(s)^j (k_{Omega,j+1} - k_{Omega,j})      (j mod e_Omega)

and the Euler element acts on the standard module of lambda by

    omega_lambda = 1/lambda(1) sum_s c_k(s)/(1 - eps_s) (eps_s lambda(1) - lambda(s)).

Two characters share an Euler family at k iff their omega values agree there.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Mapping, Sequence

import numpy as np

from .arrangements import Hyperplane, HyperplaneArrangement, sharp_plane
from .chardata import CharacterTable
from .errors import ValidationError
from .exact.cyclotomic import Cyclotomic
from .exact.linform import LinearForm
from .groups import ConjugacyClass, GroupData
from .partitions import FamilyPartition


def c_form(cls: ConjugacyClass, omega: int, e: int) -> LinearForm:
    if not cls.is_reflection:
        raise ValueError(f"class {cls.index} is not a reflection class")
    det = cls.det
    acc = LinearForm()
    power = Cyclotomic.rational(1)
    for j in range(e):
        step = LinearForm.variable(omega, (j + 1) % e) - LinearForm.variable(omega, j)
        acc = acc + step * power
        power = power * det
    return acc


def _class_weights(g: GroupData) -> dict[int, LinearForm]:
    """size(s) * c_k(s) / (1 - eps_s) per reflection class."""
    out = {}
    for c in g.classes:
        if c.is_reflection:
            e = g.orbit(c.orbit).e
            one = Cyclotomic.rational(1)
            out[c.index] = c_form(c, c.orbit, e) * (Cyclotomic.rational(c.size) / (one - c.nontrivial_eigenvalue))
    return out


def omega_form(table: CharacterTable, row: int, weights: Mapping[int, LinearForm] | None = None) -> LinearForm:
    g = table.group
    weights = weights if weights is not None else _class_weights(g)
    d = Cyclotomic.rational(table.dim(row))
    acc = LinearForm()
    for ci, w in weights.items():
        eps = g.classes[ci].nontrivial_eigenvalue
        acc = acc + w * (eps - table.value(row, ci) / d)
    if not acc.is_rational():
        raise ValidationError(f"{g.name}: omega form of {table.labels[row]} has irrational coefficients: {acc}")
    return acc


def p_form(table: CharacterTable, lam: int, mu: int, weights: Mapping[int, LinearForm] | None = None) -> LinearForm:
    """Pairwise form, computed directly from the character values."""
    if lam == mu:
        raise ValueError("p_form needs two distinct characters")
    weights = weights if weights is not None else _class_weights(table.group)
    dl = Cyclotomic.rational(table.dim(lam))
    dm = Cyclotomic.rational(table.dim(mu))
    acc = LinearForm()
    for ci, w in weights.items():
        acc = acc + w * (table.value(lam, ci) / dl - table.value(mu, ci) / dm)
    return acc


def young_blocks(g: GroupData) -> list[list[int]]:
    pos = {key: i for i, key in enumerate(g.omega_bar)}
    return [[pos[(o.index, j)] for j in range(o.e)] for o in g.hyperplane_orbits]


def sharp_permutation(g: GroupData) -> list[int]:
    """Index map for k_{Omega,j} -> k_{Omega,-j}."""
    pos = {key: i for i, key in enumerate(g.omega_bar)}
    e = {o.index: o.e for o in g.hyperplane_orbits}
    return [pos[(om, (-j) % e[om])] for om, j in g.omega_bar]


@dataclass
class EulerData:
    group: GroupData
    table: CharacterTable
    c_forms: dict[int, LinearForm]
    omega: list[LinearForm]
    generic_partition: FamilyPartition
    variety: HyperplaneArrangement
    _vectors: np.ndarray = field(default=None, repr=False)

    @property
    def coordinates(self) -> list[tuple[int, int]]:
        return self.group.omega_bar

    def omega_vectors(self) -> np.ndarray:
        """Integer coefficient matrix, one row per character."""
        if self._vectors is None:
            rows = [f.to_vector(self.coordinates) for f in self.omega]
            if any(x.denominator != 1 for r in rows for x in r):
                raise ValidationError(f"{self.group.name}: omega forms are not integral")
            self._vectors = np.array([[int(x) for x in r] for r in rows], dtype=object)
        return self._vectors

    def sharp(self, arr: HyperplaneArrangement | Hyperplane):
        perm = sharp_permutation(self.group)
        if isinstance(arr, Hyperplane):
            return sharp_plane(arr, perm)
        return arr.sharp(perm)

    def sharp_stable(self) -> bool:
        return self.sharp(self.variety).planes == self.variety.planes

    def specialize(self, point) -> FamilyPartition:
        return specialize_partition(self, point)


def generic_partition(table: CharacterTable, omega: Sequence[LinearForm]) -> FamilyPartition:
    """Blocks of proportional reflection values, cross-checked against equal omega forms."""
    g = table.group
    refl = [c.index for c in g.classes if c.is_reflection]
    keys = []
    for r in range(len(table)):
        d = table.dim(r)
        keys.append(tuple(table.value(r, ci) / d for ci in refl))
    by_values = FamilyPartition.from_keys(keys)
    by_omega = FamilyPartition.from_keys(list(omega))
    if by_values != by_omega:
        raise ValidationError(
            f"{g.name}: generic Euler partition from character values {by_values.blocks} "
            f"differs from the one given by omega forms {by_omega.blocks}"
        )
    return by_values


def euler_variety(g: GroupData, omega: Sequence[LinearForm]) -> HyperplaneArrangement:
    order = g.omega_bar
    planes = set()
    for i in range(len(omega)):
        for j in range(i + 1, len(omega)):
            p = omega[j] - omega[i]
            if p.is_zero():
                continue
            if not p.is_rational():
                raise ValidationError(f"{g.name}: pairwise form {p} has irrational coefficients")
            planes.add(Hyperplane.from_vector(p.to_vector(order)))
    return HyperplaneArrangement.build(planes, young_blocks(g), len(order))


def compute_euler(table: CharacterTable) -> EulerData:
    g = table.group
    c_forms = {c.index: c_form(c, c.orbit, g.orbit(c.orbit).e) for c in g.classes if c.is_reflection}
    weights = _class_weights(g)
    omega = [omega_form(table, r, weights) for r in range(len(table))]
    part = generic_partition(table, omega)
    variety = euler_variety(g, omega)
    return EulerData(g, table, c_forms, omega, part, variety)


def _point_vector(data: EulerData, point) -> list[Fraction]:
    if isinstance(point, Mapping):
        return [Fraction(point.get(key, 0)) for key in data.coordinates]
    vec = [Fraction(x) for x in point]
    if len(vec) != len(data.coordinates):
        raise ValueError(f"point has {len(vec)} coordinates, expected {len(data.coordinates)}")
    return vec


def specialize_partition(data: EulerData, point) -> FamilyPartition:
    """Euler families at a concrete rational parameter."""
    vec = _point_vector(data, point)
    values = data.omega_vectors().dot(np.array(vec, dtype=object))
    return FamilyPartition.from_keys([Fraction(v) for v in values])


def generic_points(data: EulerData, count: int, seed: int = 0, bound: int = 10_000) -> list[list[int]]:
    """Points with distinct prime coordinates avoiding every Euler hyperplane."""
    from sympy import sieve

    rng = np.random.default_rng(seed)
    primes = np.array(list(sieve.primerange(2, bound)), dtype=np.int64)
    dim = len(data.coordinates)
    normals = np.array([p.normal for p in data.variety.sorted_planes()], dtype=np.int64).reshape(-1, dim)
    out = []
    while len(out) < count:
        pt = rng.choice(primes, size=dim, replace=False)
        if normals.size and np.any(normals @ pt == 0):
            continue  # landed on a wall; resample
        out.append([int(x) for x in pt])
    return out
