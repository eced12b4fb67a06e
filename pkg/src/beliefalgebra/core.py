"""Worlds, world sets, ordered pairs, and relations over a finite universe.

A universe of size ``n`` is the set of world indices ``0..n-1``. A world
set is stored as a bit mask: bit ``i`` set means world ``i`` is a member.
A relation is a set of ordered pairs of disjoint world sets over a single
universe; the pair ``(U, V)`` reads "every world in ``U`` is held more
plausible than all of ``V``". Pairs with an empty right side are called
trivial; they are vacuously true and belong to every belief algebra.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Iterator, Union

from .errors import CapExceededError, UniverseMismatchError

# Full-relation enumeration and closure are exponential in the universe
# size; callers may override per call, this is just a guard rail.
DEFAULT_MAX_WORLDS = 10


def check_universe_size(universe_size: int, max_worlds: int = DEFAULT_MAX_WORLDS) -> None:
    """Reject universe sizes the exponential operations must not attempt."""
    if universe_size < 1:
        raise ValueError(f"universe must contain at least one world, got {universe_size}")
    if universe_size > max_worlds:
        raise CapExceededError(
            f"universe of {universe_size} worlds exceeds the cap of {max_worlds}"
        )


def iter_submasks(mask: int) -> Iterator[int]:
    """Yield every submask of ``mask``, including ``mask`` itself and 0."""
    sub = mask
    while True:
        yield sub
        if sub == 0:
            return
        sub = (sub - 1) & mask


@dataclass(frozen=True)
class WorldSet:
    """Immutable set of world indices backed by a bit mask."""

    universe_size: int
    mask: int

    def __post_init__(self) -> None:
        if self.universe_size < 0:
            raise ValueError(f"negative universe size {self.universe_size}")
        if not 0 <= self.mask < (1 << self.universe_size):
            raise ValueError(
                f"mask {self.mask:#x} out of range for {self.universe_size} worlds"
            )

    @classmethod
    def of(cls, indices: Iterable[int], universe_size: int) -> "WorldSet":
        mask = 0
        for i in indices:
            if not 0 <= i < universe_size:
                raise ValueError(f"world index {i} out of range for {universe_size} worlds")
            mask |= 1 << i
        return cls(universe_size, mask)

    @classmethod
    def empty(cls, universe_size: int) -> "WorldSet":
        return cls(universe_size, 0)

    @classmethod
    def full(cls, universe_size: int) -> "WorldSet":
        return cls(universe_size, (1 << universe_size) - 1)

    def indices(self) -> tuple[int, ...]:
        return tuple(i for i in range(self.universe_size) if self.mask >> i & 1)

    def _require_same_universe(self, other: "WorldSet") -> None:
        if self.universe_size != other.universe_size:
            raise UniverseMismatchError(
                f"world sets over {self.universe_size} and {other.universe_size} worlds"
            )

    def union(self, other: "WorldSet") -> "WorldSet":
        self._require_same_universe(other)
        return WorldSet(self.universe_size, self.mask | other.mask)

    def intersection(self, other: "WorldSet") -> "WorldSet":
        self._require_same_universe(other)
        return WorldSet(self.universe_size, self.mask & other.mask)

    def difference(self, other: "WorldSet") -> "WorldSet":
        self._require_same_universe(other)
        return WorldSet(self.universe_size, self.mask & ~other.mask)

    def complement(self) -> "WorldSet":
        return WorldSet(self.universe_size, ~self.mask & (1 << self.universe_size) - 1)

    def isdisjoint(self, other: "WorldSet") -> bool:
        self._require_same_universe(other)
        return self.mask & other.mask == 0

    def issubset(self, other: "WorldSet") -> bool:
        self._require_same_universe(other)
        return self.mask & ~other.mask == 0

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def __contains__(self, index: int) -> bool:
        return 0 <= index < self.universe_size and bool(self.mask >> index & 1)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices())

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __bool__(self) -> bool:
        return self.mask != 0

    def __repr__(self) -> str:
        return f"WorldSet({list(self.indices())}, n={self.universe_size})"


@dataclass(frozen=True)
class Pair:
    """Ordered pair of disjoint world sets: ``left`` outranks ``right``."""

    left: WorldSet
    right: WorldSet

    def __post_init__(self) -> None:
        self.left._require_same_universe(self.right)
        if self.left.mask & self.right.mask:
            raise ValueError(f"pair sides overlap: {self.left!r} vs {self.right!r}")

    @classmethod
    def of(
        cls, left: Iterable[int], right: Iterable[int], universe_size: int
    ) -> "Pair":
        return cls(WorldSet.of(left, universe_size), WorldSet.of(right, universe_size))

    @property
    def universe_size(self) -> int:
        return self.left.universe_size

    @property
    def masks(self) -> tuple[int, int]:
        return (self.left.mask, self.right.mask)

    @property
    def is_trivial(self) -> bool:
        """True for vacuous pairs (empty right side)."""
        return self.right.mask == 0

    def reversed(self) -> "Pair":
        return Pair(self.right, self.left)

    def __repr__(self) -> str:
        return f"Pair({list(self.left.indices())} >> {list(self.right.indices())})"


PairLike = Union[Pair, tuple[int, int]]


class Relation:
    """Immutable set of pairs over one universe.

    Iteration is always in canonical order: ascending by left mask, then
    right mask, each read as an unsigned integer. Construction accepts
    ``Pair`` objects or raw ``(left_mask, right_mask)`` tuples; raw tuples
    need an explicit ``universe_size``.
    """

    __slots__ = ("universe_size", "_masks", "_sorted")

    def __init__(self, pairs: Iterable[PairLike] = (), universe_size: int | None = None):
        masks = set()
        size = universe_size
        staged: list[tuple[int, int]] = []
        for item in pairs:
            if isinstance(item, Pair):
                if size is None:
                    size = item.universe_size
                elif item.universe_size != size:
                    raise UniverseMismatchError(
                        f"pair over {item.universe_size} worlds in a relation over {size}"
                    )
                masks.add(item.masks)
            else:
                staged.append(tuple(item))
        if size is None:
            raise ValueError("universe_size is required when no Pair objects are given")
        if size < 0:
            raise ValueError(f"negative universe size {size}")
        limit = 1 << size
        for left, right in staged:
            if not (0 <= left < limit and 0 <= right < limit):
                raise ValueError(f"mask pair ({left:#x}, {right:#x}) out of range")
            if left & right:
                raise ValueError(f"pair sides overlap: masks ({left:#x}, {right:#x})")
            masks.add((left, right))
        self.universe_size = size
        self._masks = frozenset(masks)
        self._sorted: tuple[Pair, ...] | None = None

    @classmethod
    def from_masks(cls, masks: Iterable[tuple[int, int]], universe_size: int) -> "Relation":
        return cls(masks, universe_size)

    @property
    def mask_pairs(self) -> frozenset[tuple[int, int]]:
        return self._masks

    def pairs(self) -> tuple[Pair, ...]:
        if self._sorted is None:
            n = self.universe_size
            self._sorted = tuple(
                Pair(WorldSet(n, left), WorldSet(n, right))
                for left, right in sorted(self._masks)
            )
        return self._sorted

    def _require_same_universe(self, other: "Relation") -> None:
        if self.universe_size != other.universe_size:
            raise UniverseMismatchError(
                f"relations over {self.universe_size} and {other.universe_size} worlds"
            )

    def union(self, other: "Relation") -> "Relation":
        self._require_same_universe(other)
        return Relation(self._masks | other._masks, self.universe_size)

    def intersection(self, other: "Relation") -> "Relation":
        self._require_same_universe(other)
        return Relation(self._masks & other._masks, self.universe_size)

    def difference(self, other: "Relation") -> "Relation":
        self._require_same_universe(other)
        return Relation(self._masks - other._masks, self.universe_size)

    def issubset(self, other: "Relation") -> bool:
        self._require_same_universe(other)
        return self._masks <= other._masks

    __or__ = union
    __and__ = intersection
    __sub__ = difference

    def __contains__(self, item: PairLike) -> bool:
        if isinstance(item, Pair):
            if item.universe_size != self.universe_size:
                return False
            return item.masks in self._masks
        return tuple(item) in self._masks

    def __iter__(self) -> Iterator[Pair]:
        return iter(self.pairs())

    def __len__(self) -> int:
        return len(self._masks)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Relation):
            return NotImplemented
        return self.universe_size == other.universe_size and self._masks == other._masks

    def __hash__(self) -> int:
        return hash((self.universe_size, self._masks))

    def __repr__(self) -> str:
        return f"Relation({len(self._masks)} pairs, n={self.universe_size})"

    def nontrivial(self) -> "Relation":
        """The pairs that actually rank something (non-empty right side)."""
        return Relation(
            {(l, r) for l, r in self._masks if r != 0}, self.universe_size
        )


def tr(universe_size: int, max_worlds: int = DEFAULT_MAX_WORLDS) -> Relation:
    """The trivial relation: every non-empty set outranks the empty set."""
    check_universe_size(universe_size, max_worlds)
    full = (1 << universe_size) - 1
    return Relation(((u, 0) for u in range(1, full + 1)), universe_size)


def enumerate_r_w(universe_size: int, max_worlds: int = DEFAULT_MAX_WORLDS) -> Relation:
    """Every ordered pair of disjoint world sets; 3**n pairs in total."""
    check_universe_size(universe_size, max_worlds)
    full = (1 << universe_size) - 1
    masks = []
    for left in range(full + 1):
        free = full & ~left
        for right in iter_submasks(free):
            masks.append((left, right))
    return Relation(masks, universe_size)
