"""Set partitions of character indices."""
from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from typing import Hashable, Iterable, Sequence


@dataclass(frozen=True)
class FamilyPartition:
    """Blocks of sorted indices, blocks ordered by least member."""

    blocks: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        blocks = tuple(sorted((tuple(sorted(b)) for b in self.blocks if b), key=lambda b: b[0]))
        seen = [x for b in blocks for x in b]
        if len(seen) != len(set(seen)):
            raise ValueError("partition blocks overlap")
        object.__setattr__(self, "blocks", blocks)

    @classmethod
    def from_blocks(cls, blocks: Iterable[Iterable[int]]) -> "FamilyPartition":
        return cls(tuple(tuple(b) for b in blocks))

    @classmethod
    def from_keys(cls, keys: Sequence[Hashable]) -> "FamilyPartition":
        """Index i and j share a block iff keys[i] == keys[j]."""
        groups: dict[Hashable, list[int]] = {}
        for i, k in enumerate(keys):
            groups.setdefault(k, []).append(i)
        return cls.from_blocks(groups.values())

    @classmethod
    def singletons(cls, n: int) -> "FamilyPartition":
        return cls.from_blocks([i] for i in range(n))

    @classmethod
    def from_labels(cls, blocks: Iterable[Iterable[str]], labels: Sequence[str]) -> "FamilyPartition":
        """Blocks given by label; unlisted labels become singletons."""
        index = {lab: i for i, lab in enumerate(labels)}
        out, used = [], set()
        for b in blocks:
            try:
                idx = [index[lab] for lab in b]
            except KeyError as exc:
                raise ValueError(f"unknown character label {exc.args[0]!r}") from None
            out.append(idx)
            used.update(idx)
        out.extend([i] for i in range(len(labels)) if i not in used)
        return cls.from_blocks(out)

    @property
    def universe(self) -> frozenset[int]:
        return frozenset(x for b in self.blocks for x in b)

    def __len__(self):
        return len(self.blocks)

    def block_of(self, i: int) -> tuple[int, ...]:
        for b in self.blocks:
            if i in b:
                return b
        raise KeyError(i)

    def nonsingleton(self) -> list[tuple[int, ...]]:
        return [b for b in self.blocks if len(b) > 1]

    def size_census(self) -> Counter:
        return Counter(len(b) for b in self.blocks)

    def labelled(self, labels: Sequence[str]) -> list[list[str]]:
        return [[labels[i] for i in b] for b in self.blocks]


def refines(fine: FamilyPartition, coarse: FamilyPartition) -> bool:
    """True iff every block of ``coarse`` is a union of blocks of ``fine``."""
    if fine.universe != coarse.universe:
        raise ValueError("partitions are over different label sets")
    where = {x: bi for bi, b in enumerate(coarse.blocks) for x in b}
    return all(len({where[x] for x in b}) == 1 for b in fine.blocks)
