"""Supersingular characters and good generic Euler families.

A character is supersingular when its fake degree does not divide
dim(lambda) t^b P(t). A generic Euler family is good when it is a singleton,
a pair with a supersingular member, or a triple of supersingular characters;
good families are already Calogero-Moser families.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from enum import Enum

from .chardata import CharacterTable, fake_degree, poincare_series
from .exact.poly import Polynomial, exact_quotient, poly_divides
from .partitions import FamilyPartition


@dataclass
class SupersingularReport:
    flags: dict[int, bool]
    witnesses: dict[int, Polynomial] = field(default_factory=dict)


def _target(table: CharacterTable, row: int, P: Polynomial) -> Polynomial:
    rec = fake_degree(table, row)
    return Polynomial.monomial(rec.b, rec.d) * P


def is_supersingular(table: CharacterTable, row: int, P: Polynomial | None = None) -> bool:
    P = P if P is not None else poincare_series(table.degrees)
    return not poly_divides(fake_degree(table, row).f, _target(table, row, P))


def supersingular_report(table: CharacterTable) -> SupersingularReport:
    P = poincare_series(table.degrees)
    rep = SupersingularReport(flags={})
    for r in range(len(table)):
        f = fake_degree(table, r).f
        target = _target(table, r, P)
        ss = not poly_divides(f, target)
        rep.flags[r] = ss
        if not ss:
            q = exact_quotient(target, f)
            assert q * f == target
            rep.witnesses[r] = q
    return rep


class Verdict(str, Enum):
    SINGLETON = "good-singleton"
    PAIR = "good-pair"
    TRIPLE = "good-triple"
    BAD = "bad"


@dataclass
class BlockClassification:
    members: tuple[int, ...]
    verdict: Verdict
    rule: str

    @property
    def good(self) -> bool:
        return self.verdict is not Verdict.BAD


@dataclass
class FamilyClassification:
    blocks: list[BlockClassification]

    def bad(self) -> list[BlockClassification]:
        return [b for b in self.blocks if not b.good]

    def census(self) -> str:
        """Bad families as ``d^m`` terms (m families of size d); empty if none."""
        counts: dict[int, int] = {}
        for b in self.bad():
            counts[len(b.members)] = counts.get(len(b.members), 0) + 1
        return ", ".join(f"{d}^{m}" for d, m in sorted(counts.items()))


def classify_block(members, flags) -> BlockClassification:
    members = tuple(members)
    n_ss = sum(bool(flags[i]) for i in members)
    if len(members) == 1:
        return BlockClassification(members, Verdict.SINGLETON, "singleton")
    if len(members) == 2:
        if n_ss:
            return BlockClassification(members, Verdict.PAIR, "pair with a supersingular member")
        return BlockClassification(members, Verdict.BAD, "pair without a supersingular member")
    if len(members) == 3:
        if n_ss == 3:
            return BlockClassification(members, Verdict.TRIPLE, "triple of supersingular characters")
        return BlockClassification(members, Verdict.BAD, f"triple with {n_ss} supersingular members")
    return BlockClassification(members, Verdict.BAD, f"family of size {len(members)}")


def classify_families(partition: FamilyPartition, flags) -> FamilyClassification:
    return FamilyClassification([classify_block(b, flags) for b in partition.blocks])


@dataclass
class CMResult:
    """Either a certified Calogero-Moser partition or a refusal naming the bad blocks."""

    certified: bool
    partition: FamilyPartition | None
    bad_blocks: list[tuple[int, ...]]

    @property
    def refused(self) -> bool:
        return not self.certified


def generic_cm_families(partition: FamilyPartition, classification: FamilyClassification) -> CMResult:
    bad = [b.members for b in classification.bad()]
    if bad:
        return CMResult(False, None, bad)
    return CMResult(True, partition, [])
