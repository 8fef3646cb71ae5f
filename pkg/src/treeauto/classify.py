"""Element-level predicates: finitary, directed, odometer, bounded activity.

All predicates work on the section closure of the element, so a single
closure answers every question about the element and its sections.
"""
from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .core import Presentation, TreeWord, Word, act, first_level
from .errors import BudgetExceeded
from .solver import (DEFAULT_BUDGET, Decision, SectionClosure, TrivialityCache, are_equal,
                     is_trivial, section_closure)

DEFAULT_CAP = 12


@dataclass(frozen=True)
class FinitaryDecision(Decision):
    depth: int | None = None


@dataclass(frozen=True)
class DirectedDecision(Decision):
    period: int | None = None
    active_vertex: TreeWord | None = None
    strongly_directed: bool | None = None
    strongly_active: bool | None = None


@dataclass(frozen=True)
class BoundedDecision(Decision):
    level: int | None = None


@dataclass(frozen=True)
class ElementClass:
    finitary: FinitaryDecision
    directed: DirectedDecision
    odometer: bool | None
    bounded_finite_state: BoundedDecision


class _Analyzer:
    """Caches one section closure and the per-node answers derived from it."""

    def __init__(self, P: Presentation, g: Word, budget: int):
        self.P = P
        self.budget = budget
        self.closure: SectionClosure = section_closure(P, g, budget)
        self.memo: TrivialityCache = {}
        self._directed: dict[Word, DirectedDecision] = {}

    @property
    def complete(self) -> bool:
        return not self.closure.truncated

    def depth(self, w: Word) -> int | None:
        return self.closure.finitary_depths(self.P.degree)[w]

    def equal(self, u: Word, w: Word) -> bool | None:
        return are_equal(self.P, u, w, self.budget, self.memo).verdict

    def finitary(self, w: Word, cap: int) -> FinitaryDecision:
        spent = len(self.closure)
        if not self.complete:
            return FinitaryDecision(None, budget_spent=spent)
        k = self.depth(w)
        if k is None:
            return FinitaryDecision(False, budget_spent=spent)
        if k > cap:
            return FinitaryDecision(None, budget_spent=spent, depth=None)
        return FinitaryDecision(True, budget_spent=spent, depth=k)

    def directed(self, g: Word, cap: int) -> DirectedDecision:
        if g in self._directed:
            return self._directed[g]
        dec = self._directed_uncached(g, cap)
        self._directed[g] = dec
        return dec

    def _directed_uncached(self, g: Word, cap: int) -> DirectedDecision:
        spent = len(self.closure)
        if not self.complete:
            return DirectedDecision(None, budget_spent=spent)
        if self.depth(g) is not None:
            return DirectedDecision(False, budget_spent=spent)
        d = self.P.degree
        cl = self.closure
        # Non-finitary sections never finitary-ize, so the number of non-finitary
        # vertices per level is non-decreasing: directedness needs exactly one.
        node, path = g, []
        off_path: list[tuple[int, int]] = []  # (level of parent, finitary depth)
        visited = set()
        for k in range(1, cap + 1):
            nxt = None
            for x in range(d):
                child = cl.edges[(node, x)]
                dep = self.depth(child)
                if dep is None:
                    if nxt is not None:
                        return DirectedDecision(False, budget_spent=spent)
                    nxt = (child, x)
                else:
                    off_path.append((k - 1, dep))
            assert nxt is not None, "non-finitary node without non-finitary child"
            node = nxt[0]
            path.append(nxt[1])
            verdict = self.equal(node, g)
            if verdict is None:
                return DirectedDecision(None, budget_spent=spent)
            if verdict:
                v = tuple(path)
                strongly = all(dep <= k - lvl - 1 for lvl, dep in off_path)
                return DirectedDecision(True, budget_spent=spent, period=k, active_vertex=v,
                                        strongly_directed=strongly,
                                        strongly_active=act(self.P, g, v) != v)
            if node in visited:
                return DirectedDecision(False, budget_spent=spent)
            visited.add(node)
        return DirectedDecision(None, budget_spent=spent)

    def level_nodes(self, m: int) -> set[Word]:
        frontier = {self.closure.root}
        for _ in range(m):
            frontier = {c for w in frontier for c in self.closure.children(w, self.P.degree)}
        return frontier


@lru_cache(maxsize=256)
def _analyzer(P: Presentation, g: Word, budget: int) -> _Analyzer:
    return _Analyzer(P, g, budget)


def _get(P: Presentation, g: Word, budget: int) -> _Analyzer:
    return _analyzer(P, Word(g), budget)


def is_finitary(P: Presentation, g: Word, cap: int = DEFAULT_CAP,
                budget: int = DEFAULT_BUDGET) -> FinitaryDecision:
    """True with the least depth ``k <= cap`` at which all sections vanish.

    The identity is reported with depth 0.
    """
    g = Word(g)
    return _get(P, g, budget).finitary(g, cap)


def is_directed(P: Presentation, g: Word, cap: int = DEFAULT_CAP,
                budget: int = DEFAULT_BUDGET) -> DirectedDecision:
    g = Word(g)
    return _get(P, g, budget).directed(g, cap)


def is_odometer(P: Presentation, g: Word, budget: int = DEFAULT_BUDGET) -> bool:
    """A full-cycle root permutation, one section equal to ``g``, the rest trivial.

    Raises BudgetExceeded when a needed equality cannot be decided.
    """
    g = Word(g)
    perm, secs = first_level(P, g)
    if not g or not perm.is_full_cycle():
        return False
    memo: TrivialityCache = {}
    selves = 0
    for s in secs:
        triv = is_trivial(P, s, budget, memo).verdict
        if triv is None:
            raise BudgetExceeded("triviality of a section is undecided")
        if triv:
            continue
        eq = are_equal(P, s, g, budget, memo).verdict
        if eq is None:
            raise BudgetExceeded("equality of a section with the element is undecided")
        if not eq:
            return False
        selves += 1
    return selves == 1


def activity_count(P: Presentation, g: Word, n: int,
                   budget: int = DEFAULT_BUDGET) -> list[int]:
    """Number of vertices with nontrivial section on each level ``1..n``."""
    g = Word(g)
    memo: TrivialityCache = {}
    counts: dict[Word, int] = {g: 1}
    out = []
    for _ in range(n):
        nxt: dict[Word, int] = {}
        for w, c in counts.items():
            for x in range(P.degree):
                _, s = P.step(w, x)
                verdict = is_trivial(P, s, budget, memo).verdict
                if verdict is None:
                    raise BudgetExceeded("triviality of a section is undecided")
                if not verdict:
                    nxt[s] = nxt.get(s, 0) + c
        counts = nxt
        out.append(sum(counts.values()))
    return out


def is_bounded_finite_state(P: Presentation, g: Word, cap: int = DEFAULT_CAP,
                            budget: int = DEFAULT_BUDGET) -> BoundedDecision:
    """Least level ``m <= cap`` whose sections are all finitary or directed."""
    an = _get(P, Word(g), budget)
    spent = len(an.closure)
    if not an.complete:
        return BoundedDecision(None, budget_spent=spent)
    for m in range(1, cap + 1):
        if all(an.depth(w) is not None or an.directed(w, cap).is_true
               for w in an.level_nodes(m)):
            return BoundedDecision(True, budget_spent=spent, level=m)
    return BoundedDecision(None, budget_spent=spent)


def classify_element(P: Presentation, g: Word, cap: int = DEFAULT_CAP,
                     budget: int = DEFAULT_BUDGET) -> ElementClass:
    g = Word(g)
    try:
        odo: bool | None = is_odometer(P, g, budget)
    except BudgetExceeded:
        odo = None
    return ElementClass(
        finitary=is_finitary(P, g, cap, budget),
        directed=is_directed(P, g, cap, budget),
        odometer=odo,
        bounded_finite_state=is_bounded_finite_state(P, g, cap, budget),
    )


__all__ = [
    "FinitaryDecision", "DirectedDecision", "BoundedDecision", "ElementClass",
    "is_finitary", "is_directed", "is_odometer", "activity_count",
    "is_bounded_finite_state", "classify_element", "DEFAULT_CAP",
]
