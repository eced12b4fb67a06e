"""Belief revision: incorporate evidence while keeping as much as possible.

The operator takes the current belief algebra and an evidence algebra
over the same worlds. Both are completed, the completions are revised by
keeping exactly the current strict singleton preferences that the
evidence leaves tied (``lambda_set``) and closing them with the evidence
(``revise_cba``), and the final result closes the evidence together with
the part of the current algebra that the completed revision still
sanctions (``revise``). Evidence itself is built from formulas or
conditionals and combined by closure.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Iterable

from .algebra import BeliefAlgebra, _min_levels, com, gen, is_cba
from .core import DEFAULT_MAX_WORLDS, Pair, Relation, WorldSet
from .errors import ContradictionError, InternalError, NotCompleteError
from .logic import Formula, Not, And, Vocabulary, models, parse_formula

POSTULATE_NAMES = (
    "retention",
    "groundedness",
    "completeness",
    "tie_preservation",
    "upper_bound",
    "maximality",
)


@dataclass(frozen=True)
class RevisionTrace:
    """Every intermediate of one revision, in computation order."""

    com_g1: BeliefAlgebra
    com_g2: BeliefAlgebra
    lambda_pairs: Relation
    g_star: BeliefAlgebra
    g1_cap_gstar: Relation
    result: BeliefAlgebra


def lambda_set(current: BeliefAlgebra, evidence: BeliefAlgebra) -> Relation:
    """Strict singleton preferences of ``current`` that ``evidence`` ties.

    Both algebras must be complete. The result collects every pair
    ``({a}, {b})`` of ``current`` whose two worlds share an evidence
    backbone cell; these are exactly the distinctions the evidence cannot
    make on its own.
    """
    current.relation._require_same_universe(evidence.relation)
    if not is_cba(current):
        raise NotCompleteError("lambda_set needs a complete current algebra")
    if not is_cba(evidence):
        raise NotCompleteError("lambda_set needs a complete evidence algebra")
    n = current.universe_size
    bb = evidence.backbone
    level = [bb.support_index(WorldSet(n, 1 << w)) for w in range(n)]
    masks = set()
    current_masks = current.relation.mask_pairs
    for a in range(n):
        for b in range(n):
            if a != b and level[a] == level[b] and (1 << a, 1 << b) in current_masks:
                masks.add((1 << a, 1 << b))
    return Relation.from_masks(masks, n)


def revise_cba(current: BeliefAlgebra, evidence: BeliefAlgebra) -> BeliefAlgebra:
    """Revise one complete algebra by another; the result is complete.

    Closes the evidence together with the tied singleton preferences kept
    from ``current``. Matches lexicographic refinement of the matching
    preorders.
    """
    lam = lambda_set(current, evidence)
    try:
        result = gen(lam | evidence.relation, max_worlds=current.universe_size)
    except Exception as exc:  # the inputs are closed, so this cannot conflict
        raise InternalError(f"complete revision conflicted: {exc}") from exc
    if not is_cba(result):
        raise InternalError("complete revision produced an incomplete algebra")
    return result


def revise(current: BeliefAlgebra, evidence: BeliefAlgebra) -> RevisionTrace:
    """Full revision of any belief algebra by any evidence algebra.

    Completes both operands, revises the completions, then keeps exactly
    the current pairs the completed revision sanctions and closes them
    with the evidence. The trace exposes every intermediate.
    """
    current.relation._require_same_universe(evidence.relation)
    n = current.universe_size
    com_g1 = com(current)
    com_g2 = com(evidence)
    lam = lambda_set(com_g1, com_g2)
    g_star = revise_cba(com_g1, com_g2)

    cells = tuple(cell.mask for cell in g_star.backbone.cells)
    best = _min_levels(cells, n)
    retained = {
        (left, right)
        for left, right in current.relation.mask_pairs
        if right == 0 or best[left] < best[right]
    }
    g1_cap_gstar = Relation.from_masks(retained, n)
    if retained != current.relation.mask_pairs & g_star.relation.mask_pairs:
        raise InternalError("support test disagrees with the materialized intersection")

    result = gen(g1_cap_gstar | evidence.relation, max_worlds=n)
    alternative = gen(
        (current.relation | evidence.relation) & g_star.relation, max_worlds=n
    )
    if alternative.relation != result.relation:
        raise InternalError("closed-form cross-check of the revision result failed")
    return RevisionTrace(com_g1, com_g2, lam, g_star, g1_cap_gstar, result)


def evidence_from_formula(
    formula: Formula | str,
    vocab: Vocabulary,
    max_worlds: int = DEFAULT_MAX_WORLDS,
) -> BeliefAlgebra:
    """Evidence algebra believing ``formula``: its models outrank the rest.

    A tautology yields the trivial algebra; a contradiction is rejected.
    """
    satisfied = models(formula, vocab)
    n = vocab.world_count
    if satisfied.mask == 0:
        raise ContradictionError("formula has no models")
    if len(satisfied) == n:
        return gen((), n, max_worlds)
    return gen([Pair(satisfied, satisfied.complement())], n, max_worlds)


def evidence_from_conditional(
    antecedent: Formula | str,
    consequent: Formula | str,
    vocab: Vocabulary,
) -> Pair:
    """Conditional evidence: given the antecedent, the consequent holds.

    Produces the pair (antecedent-and-consequent worlds,
    antecedent-without-consequent worlds). Rejected when antecedent and
    consequent are jointly unsatisfiable.
    """
    if isinstance(antecedent, str):
        antecedent = parse_formula(antecedent, vocab)
    if isinstance(consequent, str):
        consequent = parse_formula(consequent, vocab)
    accepted = models(And(antecedent, consequent), vocab)
    rejected = models(And(antecedent, Not(consequent)), vocab)
    if accepted.mask == 0:
        raise ContradictionError("antecedent and consequent are jointly unsatisfiable")
    return Pair(accepted, rejected)


def evidence_combine(
    pairs: Iterable[Pair],
    universe_size: int | None = None,
    max_worlds: int = DEFAULT_MAX_WORLDS,
) -> BeliefAlgebra:
    """Close several evidence pairs into one algebra; conflicts propagate."""
    return gen(pairs, universe_size, max_worlds)


@dataclass(frozen=True)
class PostulateCheck:
    """Outcome of one revision-postulate check."""

    name: str
    applicable: bool
    passed: bool
    witness: Pair | None = None
    detail: str = ""


@dataclass(frozen=True)
class PostulateReport:
    """All postulate checks for one (current, evidence, result) triple."""

    checks: tuple[PostulateCheck, ...]

    @property
    def passed(self) -> bool:
        return all(check.passed for check in self.checks)

    def failures(self) -> tuple[PostulateCheck, ...]:
        return tuple(check for check in self.checks if not check.passed)

    def __getitem__(self, name: str) -> PostulateCheck:
        for check in self.checks:
            if check.name == name:
                return check
        raise KeyError(name)


def _first_missing(subset: Relation, superset: Relation) -> Pair | None:
    for pair in subset:
        if pair not in superset:
            return pair
    return None


def check_postulates(
    current: BeliefAlgebra,
    evidence: BeliefAlgebra,
    result: BeliefAlgebra,
    *,
    subset_trials: int = 0,
    seed: int = 0,
) -> PostulateReport:
    """Check the revision postulates for a proposed ``result``.

    ``retention``: the evidence survives. ``groundedness``: the result is
    the closure of its own pairs drawn from the operands.
    ``completeness`` and ``tie_preservation`` apply only when both
    operands are complete: the result must be complete, and within
    evidence ties the singleton preferences must match ``current``
    exactly. ``upper_bound``: the result stays inside the revision of the
    completions. ``maximality``: no generator set inside that bound
    closes to something strictly larger; checked on the maximal candidate
    plus ``subset_trials`` seeded random sub-candidates.
    """
    n = current.universe_size
    checks: list[PostulateCheck] = []

    missing = _first_missing(evidence.relation, result.relation)
    checks.append(
        PostulateCheck(
            "retention",
            True,
            missing is None,
            missing,
            "" if missing is None else "evidence pair missing from the result",
        )
    )

    grounded = gen(result.relation & (current.relation | evidence.relation), max_worlds=n)
    ok = grounded.relation == result.relation
    checks.append(
        PostulateCheck(
            "groundedness",
            True,
            ok,
            None if ok else _first_missing(result.relation, grounded.relation),
            "" if ok else "result is larger than the closure of its own grounds",
        )
    )

    both_complete = is_cba(current) and is_cba(evidence)
    if both_complete:
        ok = is_cba(result)
        checks.append(
            PostulateCheck(
                "completeness",
                True,
                ok,
                None,
                "" if ok else "complete operands produced an incomplete result",
            )
        )
        bb = evidence.backbone
        level = [bb.support_index(WorldSet(n, 1 << w)) for w in range(n)]
        witness = None
        for a in range(n):
            for b in range(n):
                if a == b or level[a] != level[b]:
                    continue
                in_result = (1 << a, 1 << b) in result.relation.mask_pairs
                in_current = (1 << a, 1 << b) in current.relation.mask_pairs
                if in_result != in_current:
                    witness = _pair_of_worlds(n, a, b)
                    break
            if witness is not None:
                break
        checks.append(
            PostulateCheck(
                "tie_preservation",
                True,
                witness is None,
                witness,
                "" if witness is None else "evidence-tied singleton preference changed",
            )
        )
    else:
        checks.append(
            PostulateCheck("completeness", False, True, None, "operands not complete")
        )
        checks.append(
            PostulateCheck("tie_preservation", False, True, None, "operands not complete")
        )

    g_star = revise_cba(com(current), com(evidence))
    extra = _first_missing(result.relation, g_star.relation)
    checks.append(
        PostulateCheck(
            "upper_bound",
            True,
            extra is None,
            extra,
            "" if extra is None else "result exceeds the revision of the completions",
        )
    )

    candidate = (current.relation | evidence.relation) & g_star.relation
    witness, detail = _maximality_failure(candidate, result, n)
    if witness is None and subset_trials > 0:
        rng = random.Random(seed)
        ordered = candidate.pairs()
        for _ in range(subset_trials):
            chosen = [pair for pair in ordered if rng.random() < 0.5]
            sub = Relation(chosen, n)
            witness, detail = _maximality_failure(sub, result, n)
            if witness is not None:
                break
    checks.append(
        PostulateCheck("maximality", True, witness is None, witness, detail)
    )

    return PostulateReport(tuple(checks))


def _pair_of_worlds(n: int, a: int, b: int) -> Pair:
    return Pair(WorldSet(n, 1 << a), WorldSet(n, 1 << b))


def _maximality_failure(
    candidate: Relation, result: BeliefAlgebra, n: int
) -> tuple[Pair | None, str]:
    closure = gen(candidate, max_worlds=n)
    if result.relation.issubset(closure.relation) and closure.relation != result.relation:
        return (
            _first_missing(closure.relation, result.relation),
            "a candidate generator set closes to a strictly larger result",
        )
    return (None, "")
