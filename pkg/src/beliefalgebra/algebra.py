"""Belief algebras: axiom checks, closure, backbones, completion, lattice ops.

A relation over disjoint world-set pairs is a belief algebra when it

- contains the trivial pair ``(U, empty)`` for every non-empty ``U`` and
  no pair whose left side is empty (triviality),
- never contains a pair together with its reverse (asymmetry),
- is closed under weakening: from ``(U, V)`` every ``(U1, V1)`` with
  ``U1 >= U``, ``V1 <= V`` and ``U1`` disjoint from ``V1`` follows, and
- is closed under combination: two pairs covering the same union combine
  into ``(left intersection, right union)``.

``gen`` completes any generator set into the smallest belief algebra
containing it, or raises ``ConflictError`` with the pair that proves no
such algebra exists. Every belief algebra carries a backbone: the unique
ordered partition of the universe into plausibility cells, most plausible
first. ``com`` completes an algebra into the largest one with the same
backbone, which corresponds one-to-one to a total preorder on worlds.
"""

from __future__ import annotations

from collections import defaultdict, deque
from dataclasses import dataclass
from typing import Iterable, Iterator

from .core import (
    DEFAULT_MAX_WORLDS,
    Pair,
    PairLike,
    Relation,
    WorldSet,
    check_universe_size,
    iter_submasks,
)
from .errors import (
    BackboneMismatchError,
    ConflictError,
    InternalError,
    InvalidAlgebraError,
    UniverseMismatchError,
)

AXIOM_NAMES = ("disjointness", "triviality", "asymmetry", "weakening", "combination")


@dataclass(frozen=True)
class AxiomCheck:
    """Outcome of one structural check over a relation."""

    name: str
    passed: bool
    witness: Pair | None = None
    detail: str = ""


@dataclass(frozen=True)
class AxiomReport:
    """Per-axiom results for one relation, in a fixed order."""

    checks: tuple[AxiomCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> tuple[AxiomCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def __getitem__(self, name: str) -> AxiomCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


def _pair(n: int, left: int, right: int) -> Pair:
    return Pair(WorldSet(n, left), WorldSet(n, right))


def check_axioms(relation: Relation) -> AxiomReport:
    """Check the five belief-algebra conditions, reporting one witness each."""
    n = relation.universe_size
    full = (1 << n) - 1
    masks = relation.mask_pairs
    ordered = sorted(masks)
    checks: list[AxiomCheck] = []

    witness = next((p for p in ordered if p[0] & p[1]), None)
    checks.append(
        AxiomCheck(
            "disjointness",
            witness is None,
            None if witness is None else _pair(n, *witness),
            "" if witness is None else "pair sides overlap",
        )
    )

    passed, pair, detail = True, None, ""
    for u in range(1, full + 1):
        if (u, 0) not in masks:
            passed, pair, detail = False, _pair(n, u, 0), "missing trivial pair"
            break
    if passed and (0, 0) in masks:
        passed, pair, detail = False, _pair(n, 0, 0), "empty pair present"
    checks.append(AxiomCheck("triviality", passed, pair, detail))

    passed, pair, detail = True, None, ""
    for left, right in ordered:
        if (right, left) in masks:
            passed = False
            pair = _pair(n, left, right)
            detail = "reverse pair also present"
            break
    checks.append(AxiomCheck("asymmetry", passed, pair, detail))

    passed, pair, detail = True, None, ""
    for left, right in ordered:
        for kept in iter_submasks(right):
            free = full & ~left & ~kept
            for grown in iter_submasks(free):
                if (left | grown, kept) not in masks:
                    passed = False
                    pair = _pair(n, left | grown, kept)
                    detail = f"missing weakening of {_pair(n, left, right)!r}"
                    break
            if not passed:
                break
        if not passed:
            break
    checks.append(AxiomCheck("weakening", passed, pair, detail))

    passed, pair, detail = True, None, ""
    groups: dict[int, list[tuple[int, int]]] = defaultdict(list)
    for left, right in ordered:
        groups[left | right].append((left, right))
    for key in sorted(groups):
        members = groups[key]
        for i, (l1, r1) in enumerate(members):
            for l2, r2 in members[i + 1 :]:
                if (l1 & l2, r1 | r2) not in masks:
                    passed = False
                    pair = _pair(n, l1 & l2, r1 | r2)
                    detail = (
                        f"missing combination of {_pair(n, l1, r1)!r} "
                        f"and {_pair(n, l2, r2)!r}"
                    )
                    break
            if not passed:
                break
        if not passed:
            break
    checks.append(AxiomCheck("combination", passed, pair, detail))

    return AxiomReport(tuple(checks))


def _close(seeds: Iterable[tuple[int, int]], n: int) -> set[tuple[int, int]]:
    """Worklist closure under weakening and combination, conflicts eager."""
    full = (1 << n) - 1
    closed: set[tuple[int, int]] = set()
    by_union: dict[int, list[tuple[int, int]]] = defaultdict(list)
    queue: deque[tuple[int, int]] = deque()

    def add(left: int, right: int) -> None:
        if left == 0:
            raise ConflictError(
                "closure derived a pair with an empty left side", _pair(n, left, right)
            )
        if (left, right) in closed:
            return
        if (right, left) in closed:
            raise ConflictError(
                "closure derived both orders of a pair", _pair(n, left, right)
            )
        closed.add((left, right))
        by_union[left | right].append((left, right))
        queue.append((left, right))

    for u in range(1, full + 1):
        add(u, 0)
    for left, right in seeds:
        add(left, right)

    while queue:
        left, right = queue.popleft()
        # weakening: keep any part of the right side, grow the left side
        # into whatever stays disjoint (elements dropped from the right
        # may move left)
        for kept in iter_submasks(right):
            free = full & ~left & ~kept
            for grown in iter_submasks(free):
                add(left | grown, kept)
        # combination against pairs covering the same union
        for other_left, other_right in list(by_union[left | right]):
            if (other_left, other_right) != (left, right):
                add(left & other_left, right | other_right)

    return closed


def gen(
    pairs: Relation | Iterable[PairLike],
    universe_size: int | None = None,
    max_worlds: int = DEFAULT_MAX_WORLDS,
) -> "BeliefAlgebra":
    """Smallest belief algebra containing ``pairs``.

    Raises ``ConflictError`` when no belief algebra contains the given
    pairs, with the first derived witness.
    """
    if isinstance(pairs, Relation):
        if universe_size is not None and universe_size != pairs.universe_size:
            raise UniverseMismatchError(
                f"generators over {pairs.universe_size} worlds, requested {universe_size}"
            )
        omega = pairs
    else:
        omega = Relation(pairs, universe_size)
    n = omega.universe_size
    check_universe_size(n, max_worlds)
    closed = _close(omega.mask_pairs, n)
    return BeliefAlgebra(Relation.from_masks(closed, n), _trusted=True)


@dataclass(frozen=True)
class Backbone:
    """Ordered partition of the universe into plausibility cells.

    Cells are listed most plausible first; worlds inside one cell are
    mutually incomparable.
    """

    cells: tuple[WorldSet, ...]

    def __post_init__(self) -> None:
        if not self.cells:
            raise ValueError("a backbone needs at least one cell")
        n = self.cells[0].universe_size
        seen = 0
        for cell in self.cells:
            if cell.universe_size != n:
                raise UniverseMismatchError("backbone cells over different universes")
            if cell.mask == 0:
                raise ValueError("backbone cells must be non-empty")
            if cell.mask & seen:
                raise ValueError("backbone cells must be disjoint")
            seen |= cell.mask
        if seen != (1 << n) - 1:
            raise ValueError("backbone cells must cover the universe")

    @property
    def universe_size(self) -> int:
        return self.cells[0].universe_size

    def support_index(self, worlds: WorldSet) -> int:
        """Position of the most plausible cell meeting ``worlds``."""
        if worlds.universe_size != self.universe_size:
            raise UniverseMismatchError(
                f"world set over {worlds.universe_size} worlds, backbone over "
                f"{self.universe_size}"
            )
        if worlds.mask == 0:
            raise ValueError("support of the empty set is undefined")
        for index, cell in enumerate(self.cells):
            if cell.mask & worlds.mask:
                return index
        raise InternalError("backbone cells do not cover the universe")

    def support(self, worlds: WorldSet) -> WorldSet:
        """The most plausible cell meeting ``worlds``."""
        return self.cells[self.support_index(worlds)]

    def as_levels(self) -> tuple[tuple[int, ...], ...]:
        return tuple(cell.indices() for cell in self.cells)

    def __len__(self) -> int:
        return len(self.cells)

    def __iter__(self) -> Iterator[WorldSet]:
        return iter(self.cells)

    def __repr__(self) -> str:
        return f"Backbone({[list(c.indices()) for c in self.cells]})"


def _extract_cells(masks: frozenset[tuple[int, int]], n: int) -> tuple[int, ...]:
    """Peel off least cells: each step intersects all full-split candidates."""
    cells: list[int] = []
    remaining = (1 << n) - 1
    while remaining:
        cell = remaining
        for candidate in iter_submasks(remaining):
            if candidate and (candidate, remaining & ~candidate) in masks:
                cell &= candidate
        if cell == 0:
            raise InvalidAlgebraError(
                "no least plausibility cell exists; relation is not a belief algebra"
            )
        cells.append(cell)
        remaining &= ~cell
    return tuple(cells)


def _verify_cells(masks: frozenset[tuple[int, int]], n: int, cells: tuple[int, ...]) -> None:
    """Re-check the backbone conditions; failure means a bug, not bad input."""
    full = (1 << n) - 1
    seen = 0
    for cell in cells:
        if cell == 0 or cell & seen:
            raise InternalError("backbone cells do not partition the universe")
        seen |= cell
    if seen != full:
        raise InternalError("backbone cells do not cover the universe")
    for i in range(len(cells)):
        for j in range(i + 1, len(cells)):
            if (cells[i], cells[j]) not in masks:
                raise InternalError("backbone cells are not chained by the relation")
    for left, right in masks:
        if right:
            combined = left | right
            for cell in cells:
                if combined & ~cell == 0:
                    raise InternalError("worlds within one backbone cell are comparable")


class BeliefAlgebra:
    """A validated belief-algebra relation with its cached backbone."""

    __slots__ = ("relation", "_backbone")

    def __init__(self, relation: Relation, *, _trusted: bool = False):
        if not _trusted:
            report = check_axioms(relation)
            if not report.passed:
                failure = report.failures()[0]
                raise InvalidAlgebraError(
                    f"{failure.name} fails: {failure.detail} (witness {failure.witness!r})"
                )
        self.relation = relation
        self._backbone: Backbone | None = None

    @property
    def universe_size(self) -> int:
        return self.relation.universe_size

    @property
    def backbone(self) -> Backbone:
        if self._backbone is None:
            n = self.universe_size
            masks = self.relation.mask_pairs
            cells = _extract_cells(masks, n)
            _verify_cells(masks, n, cells)
            self._backbone = Backbone(tuple(WorldSet(n, c) for c in cells))
        return self._backbone

    def __contains__(self, item: PairLike) -> bool:
        return item in self.relation

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, BeliefAlgebra):
            return NotImplemented
        return self.relation == other.relation

    def __hash__(self) -> int:
        return hash(self.relation)

    def __repr__(self) -> str:
        return f"BeliefAlgebra({len(self.relation)} pairs, n={self.universe_size})"


def backbone(algebra: BeliefAlgebra) -> Backbone:
    """The unique ordered plausibility partition of ``algebra``."""
    return algebra.backbone


def support(worlds: WorldSet, bb: Backbone) -> WorldSet:
    """Most plausible backbone cell meeting ``worlds``."""
    return bb.support(worlds)


def _min_levels(cells: tuple[int, ...], n: int) -> list[int]:
    """Memo of the best (lowest) cell position met by every non-empty mask."""
    level_of_world = [0] * n
    for position, cell in enumerate(cells):
        for w in range(n):
            if cell >> w & 1:
                level_of_world[w] = position
    size = 1 << n
    best = [len(cells)] * size
    for mask in range(1, size):
        low = (mask & -mask).bit_length() - 1
        rest = mask & (mask - 1)
        best[mask] = min(level_of_world[low], best[rest] if rest else len(cells))
    return best


def com(algebra: BeliefAlgebra) -> BeliefAlgebra:
    """Largest belief algebra with the same backbone (its completion).

    Contains every pair whose left side meets a strictly more plausible
    cell than the right side does, plus all trivial pairs.
    """
    n = algebra.universe_size
    bb = algebra.backbone
    cells = tuple(cell.mask for cell in bb.cells)
    best = _min_levels(cells, n)
    full = (1 << n) - 1
    masks = []
    for left in range(1, full + 1):
        level = best[left]
        for right in iter_submasks(full & ~left):
            if right == 0 or level < best[right]:
                masks.append((left, right))
    completed = BeliefAlgebra(Relation.from_masks(masks, n), _trusted=True)
    completed._backbone = bb
    return completed


def is_cba(algebra: BeliefAlgebra) -> bool:
    """True when the algebra already equals its completion."""
    return algebra.relation == com(algebra).relation


def meet(first: BeliefAlgebra, second: BeliefAlgebra) -> BeliefAlgebra:
    """Intersection of two belief algebras; always a belief algebra."""
    first.relation._require_same_universe(second.relation)
    return BeliefAlgebra(first.relation & second.relation, _trusted=True)


def join(first: BeliefAlgebra, second: BeliefAlgebra) -> BeliefAlgebra:
    """Closure of the union; defined only for algebras sharing a backbone."""
    first.relation._require_same_universe(second.relation)
    if first.backbone != second.backbone:
        raise BackboneMismatchError(
            f"join needs equal backbones, got {first.backbone!r} and {second.backbone!r}"
        )
    try:
        return gen(first.relation | second.relation, max_worlds=first.universe_size)
    except ConflictError as exc:  # pragma: no cover - excluded by equal backbones
        raise InternalError(f"join of compatible algebras conflicted: {exc}") from exc


def leq(first: BeliefAlgebra, second: BeliefAlgebra) -> bool:
    """Order of the lattice: same backbone and pairwise containment."""
    first.relation._require_same_universe(second.relation)
    return first.backbone == second.backbone and first.relation.issubset(second.relation)
