"""Word problem by section-closure search.

An element is trivial exactly when every section reachable from it has an
identity root permutation. For automaton-closed presentations the set of
reachable (freely reduced) section words is finite, so a breadth-first
search terminates; otherwise a node budget turns divergence into an
``Unknown`` verdict.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, MutableMapping, Sequence

from .core import IDENTITY, Perm, Presentation, TreeWord, Word, first_level, root_perm

DEFAULT_BUDGET = 100_000
DEFAULT_RADIUS = 8
DEFAULT_ORDER_BOUND = 64
DEFAULT_SEARCH_LIMIT = 200_000
# Sections of words in a non-automaton-closed presentation can grow quickly;
# a word longer than this also counts as exhausting the budget.
MAX_WORD_LENGTH = 4096


@dataclass(frozen=True)
class Decision:
    """Three-valued answer: ``verdict`` is True, False or None (unknown)."""

    verdict: bool | None
    witness: object = None
    budget_spent: int = 0

    @property
    def decided(self) -> bool:
        return self.verdict is not None

    @property
    def is_true(self) -> bool:
        return self.verdict is True

    @property
    def is_false(self) -> bool:
        return self.verdict is False

    @property
    def is_unknown(self) -> bool:
        return self.verdict is None

    def __bool__(self):
        raise TypeError("Decision is three-valued; test .is_true / .is_false / .verdict")

    def label(self) -> str:
        return {True: "True", False: "False", None: "unknown"}[self.verdict]


UNKNOWN = Decision(None)


# A triviality cache maps words to None (trivial) or a witness vertex.
TrivialityCache = MutableMapping[Word, "TreeWord | None"]


def is_trivial(P: Presentation, g: Word, budget: int = DEFAULT_BUDGET,
               cache: TrivialityCache | None = None) -> Decision:
    """Decide ``g == 1``.

    The witness of a False verdict is the shallowest vertex found whose
    section has a non-identity root permutation.
    """
    g = Word(g)
    if not g:
        return Decision(True, budget_spent=0)
    memo: TrivialityCache = {} if cache is None else cache
    if g in memo:
        w = memo[g]
        return Decision(w is None, witness=w)

    parent: dict[Word, tuple[Word, int] | None] = {g: None}
    queue = deque([g])
    explored = 0

    def path_to(node: Word) -> list[int]:
        path = []
        while parent[node] is not None:
            node, x = parent[node]  # type: ignore[misc]
            path.append(x)
        return path[::-1]

    def fail(node: Word, tail: Sequence[int]) -> Decision:
        # record witnesses for every ancestor on the path
        path = path_to(node)
        full = tuple(path) + tuple(tail)
        cur = g
        for i in range(len(path) + 1):
            memo.setdefault(cur, full[i:])
            if i < len(path):
                _, cur = P.step(cur, path[i])
        return Decision(False, witness=full, budget_spent=explored)

    while queue:
        node = queue.popleft()
        explored += 1
        if explored > budget:
            return Decision(None, budget_spent=explored)
        children = []
        for x in range(P.degree):
            y, s = P.step(node, x)
            if y != x:
                return fail(node, ())
            children.append((x, s))
        for x, s in children:
            if not s or s in parent:
                continue
            if len(s) > MAX_WORD_LENGTH:
                return Decision(None, budget_spent=explored)
            if s in memo:
                w = memo[s]
                if w is None:
                    continue
                parent[s] = (node, x)
                return fail(s, w)
            parent[s] = (node, x)
            queue.append(s)
    for node in parent:
        memo[node] = None
    return Decision(True, budget_spent=explored)


def are_equal(P: Presentation, g: Word, h: Word, budget: int = DEFAULT_BUDGET,
              cache: TrivialityCache | None = None) -> Decision:
    g, h = Word(g), Word(h)
    if g == h:
        return Decision(True)
    return is_trivial(P, g * h.inverse(), budget, cache)


def order_up_to(P: Presentation, g: Word, bound: int = DEFAULT_ORDER_BOUND,
                budget: int = DEFAULT_BUDGET) -> Decision:
    """Least ``n <= bound`` with ``g^n == 1``, reported as ``witness``.

    False means no such ``n`` exists up to ``bound``; an undecided power
    makes the whole answer unknown.
    """
    if bound < 1:
        raise ValueError("bound must be at least 1")
    g = Word(g)
    if not g:
        return Decision(True, witness=1)
    root_order = root_perm(P, g).order()
    memo: TrivialityCache = {}
    spent = 0
    unknown = False
    for n in range(1, bound + 1):
        if n % root_order:
            continue
        dec = is_trivial(P, g ** n, budget, memo)
        spent += dec.budget_spent
        if dec.is_true:
            if unknown:
                return Decision(None, budget_spent=spent)
            return Decision(True, witness=n, budget_spent=spent)
        if dec.is_unknown:
            unknown = True
    return Decision(None if unknown else False, budget_spent=spent)


@dataclass
class SectionClosure:
    """Reachable sections of ``root`` with the letter transitions between them."""

    root: Word
    nodes: list[Word]
    edges: dict[tuple[Word, int], Word]
    perms: dict[Word, Perm]
    truncated: bool = False
    _nontrivial: set[Word] | None = field(default=None, repr=False)
    _depths: dict[Word, int | None] | None = field(default=None, repr=False)

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, w: Word) -> bool:
        return w in self.perms

    def children(self, w: Word, degree: int) -> list[Word]:
        return [self.edges[(w, x)] for x in range(degree)]

    def nontrivial(self) -> set[Word]:
        """Nodes that reach a non-identity root permutation (exact when not truncated)."""
        if self._nontrivial is None:
            preds: dict[Word, list[Word]] = {w: [] for w in self.nodes}
            for (src, _), dst in self.edges.items():
                preds[dst].append(src)
            bad = {w for w in self.nodes if not self.perms[w].is_identity()}
            queue = deque(bad)
            while queue:
                w = queue.popleft()
                for p in preds[w]:
                    if p not in bad:
                        bad.add(p)
                        queue.append(p)
            self._nontrivial = bad
        return self._nontrivial

    def finitary_depths(self, degree: int) -> dict[Word, int | None]:
        """Depth of every node (0 for trivial), None for non-finitary nodes.

        Peels the nontrivial subgraph from its sinks; whatever is never
        peeled lies on, or reaches, a cycle of nontrivial sections.
        """
        if self._depths is None:
            bad = self.nontrivial()
            depth: dict[Word, int | None] = {w: 0 for w in self.nodes if w not in bad}
            pending: dict[Word, int] = {}
            preds: dict[Word, list[Word]] = {w: [] for w in bad}
            for w in bad:
                kids = [c for c in self.children(w, degree) if c in bad]
                pending[w] = len(kids)
                for c in kids:
                    preds[c].append(w)
            queue = deque(w for w in bad if pending[w] == 0)
            while queue:
                w = queue.popleft()
                depth[w] = 1 + max(depth[c] for c in self.children(w, degree))  # type: ignore[type-var]
                for p in preds[w]:
                    pending[p] -= 1
                    if pending[p] == 0:
                        queue.append(p)
            for w in bad:
                depth.setdefault(w, None)
            self._depths = depth
        return self._depths


def section_closure(P: Presentation, g: Word, budget: int = DEFAULT_BUDGET) -> SectionClosure:
    g = Word(g)
    nodes = [g]
    seen = {g}
    edges: dict[tuple[Word, int], Word] = {}
    perms: dict[Word, Perm] = {}
    queue = deque([g])
    truncated = False
    while queue:
        if len(perms) >= budget:
            truncated = True
            break
        node = queue.popleft()
        if len(node) > MAX_WORD_LENGTH:
            truncated = True
            break
        perm, secs = first_level(P, node)
        perms[node] = perm
        for x, s in enumerate(secs):
            edges[(node, x)] = s
            if s not in seen:
                seen.add(s)
                nodes.append(s)
                queue.append(s)
    if truncated:
        nodes = [w for w in nodes if w in perms]
        edges = {k: v for k, v in edges.items() if v in perms}
    return SectionClosure(g, nodes, edges, perms, truncated)


def member_search(P: Presentation, target: Word, generators: Sequence[Word],
                  radius: int = DEFAULT_RADIUS, budget: int = DEFAULT_BUDGET,
                  limit: int = DEFAULT_SEARCH_LIMIT) -> list[tuple[int, int]] | None:
    """Bounded search for ``target`` as a product of generators and inverses.

    Returns ``[(generator index, +1|-1), ...]`` whose product equals
    ``target``, or None. None is not a proof of non-membership.
    """
    target = Word(target)
    gens = [Word(g) for g in generators]
    letters = [(i, s) for i in range(len(gens)) for s in (1, -1)]
    letter_words = {(i, s): gens[i] if s > 0 else gens[i].inverse() for i, s in letters}
    target_perm = root_perm(P, target)
    memo: TrivialityCache = {}

    def matches(w: Word) -> bool:
        if root_perm(P, w) != target_perm:
            return False
        return are_equal(P, w, target, budget, memo).is_true

    if matches(IDENTITY):
        return []
    seen = {IDENTITY}
    frontier: list[tuple[Word, list[tuple[int, int]]]] = [(IDENTITY, [])]
    explored = 0
    for _ in range(radius):
        nxt = []
        for w, path in frontier:
            for letter in letters:
                if path and path[-1] == (letter[0], -letter[1]):
                    continue
                u = w * letter_words[letter]
                if u in seen:
                    continue
                seen.add(u)
                explored += 1
                if explored > limit:
                    return None
                p = path + [letter]
                if matches(u):
                    return p
                nxt.append((u, p))
        frontier = nxt
    return None


def evaluate_product(generators: Sequence[Word], witness: Iterable[tuple[int, int]]) -> Word:
    out = IDENTITY
    for i, s in witness:
        out = out * (generators[i] if s > 0 else generators[i].inverse())
    return out


__all__ = [
    "Decision", "UNKNOWN", "SectionClosure", "is_trivial", "are_equal", "order_up_to",
    "section_closure", "member_search", "evaluate_product",
    "DEFAULT_BUDGET", "DEFAULT_RADIUS", "DEFAULT_ORDER_BOUND", "MAX_WORD_LENGTH",
]
