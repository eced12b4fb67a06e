"""Total preorders on worlds and their bridge to complete belief algebras.

A total preorder is stored as one rank per world: rank 0 is most
plausible, ranks are dense (every level up to the maximum is used), and
equal ranks mean equally plausible. Complete belief algebras and total
preorders determine each other: a pair ``(U, V)`` holds exactly when some
world of ``U`` is strictly more plausible than everything in ``V``, and
conversely the singleton pairs of a complete algebra spell out the
preorder.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

from .algebra import BeliefAlgebra, Backbone, is_cba
from .core import (
    DEFAULT_MAX_WORLDS,
    Relation,
    WorldSet,
    check_universe_size,
    iter_submasks,
)
from .errors import NotCompleteError, UniverseMismatchError


@dataclass(frozen=True)
class TotalPreorder:
    """Dense ranks per world; lower rank means more plausible."""

    ranks: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.ranks:
            raise ValueError("a preorder needs at least one world")
        used = set(self.ranks)
        if used != set(range(max(used) + 1)):
            raise ValueError(f"ranks must be dense starting at 0, got {self.ranks}")

    @classmethod
    def from_ranks(cls, ranks: Sequence[int]) -> "TotalPreorder":
        """Normalize arbitrary comparable keys into dense ranks."""
        order = {key: position for position, key in enumerate(sorted(set(ranks)))}
        return cls(tuple(order[key] for key in ranks))

    @classmethod
    def from_levels(
        cls, levels: Iterable[Iterable[int]], universe_size: int
    ) -> "TotalPreorder":
        """Build from world groups listed most plausible first."""
        ranks = [-1] * universe_size
        for level, worlds in enumerate(levels):
            for world in worlds:
                if not 0 <= world < universe_size:
                    raise ValueError(
                        f"world {world} out of range for {universe_size} worlds"
                    )
                if ranks[world] != -1:
                    raise ValueError(f"world {world} appears in two levels")
                ranks[world] = level
        if -1 in ranks:
            raise ValueError(f"world {ranks.index(-1)} missing from the levels")
        return cls(tuple(ranks))

    @property
    def universe_size(self) -> int:
        return len(self.ranks)

    @property
    def level_count(self) -> int:
        return max(self.ranks) + 1

    def rank(self, world: int) -> int:
        return self.ranks[world]

    def levels(self) -> tuple[tuple[int, ...], ...]:
        """World groups, most plausible first."""
        groups: list[list[int]] = [[] for _ in range(self.level_count)]
        for world, rank in enumerate(self.ranks):
            groups[rank].append(world)
        return tuple(tuple(group) for group in groups)

    def strictly_precedes(self, first: int, second: int) -> bool:
        return self.ranks[first] < self.ranks[second]

    def backbone(self) -> Backbone:
        n = self.universe_size
        return Backbone(tuple(WorldSet.of(level, n) for level in self.levels()))


def cba_from_preorder(
    preorder: TotalPreorder, max_worlds: int = DEFAULT_MAX_WORLDS
) -> BeliefAlgebra:
    """The complete belief algebra matching ``preorder``.

    ``(U, V)`` is included exactly when some world of ``U`` is strictly
    more plausible than every world of ``V``; for non-empty sets that is
    a comparison of best ranks.
    """
    n = preorder.universe_size
    check_universe_size(n, max_worlds)
    full = (1 << n) - 1
    infinity = preorder.level_count
    best = [infinity] * (full + 1)
    for mask in range(1, full + 1):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        best[mask] = min(preorder.ranks[low], best[rest])
    masks = []
    for left in range(1, full + 1):
        for right in iter_submasks(full & ~left):
            if best[left] < best[right]:
                masks.append((left, right))
    result = BeliefAlgebra(Relation.from_masks(masks, n), _trusted=True)
    result._backbone = preorder.backbone()
    return result


def preorder_from_cba(algebra: BeliefAlgebra) -> TotalPreorder:
    """Read the total preorder back off a complete belief algebra.

    One world strictly precedes another exactly when the corresponding
    singleton pair is present. Raises ``NotCompleteError`` for algebras
    that are not complete.
    """
    if not is_cba(algebra):
        raise NotCompleteError("preorder extraction needs a complete belief algebra")
    n = algebra.universe_size
    masks = algebra.relation.mask_pairs
    below = [
        sum(1 for other in range(n) if (1 << other, 1 << world) in masks)
        for world in range(n)
    ]
    return TotalPreorder.from_ranks(below)


def revise_preorder(current: TotalPreorder, evidence: TotalPreorder) -> TotalPreorder:
    """Lexicographic refinement: evidence decides, current breaks ties."""
    if current.universe_size != evidence.universe_size:
        raise UniverseMismatchError(
            f"preorders over {current.universe_size} and "
            f"{evidence.universe_size} worlds"
        )
    keys = [
        (evidence.ranks[world], current.ranks[world])
        for world in range(current.universe_size)
    ]
    return TotalPreorder.from_ranks(keys)
