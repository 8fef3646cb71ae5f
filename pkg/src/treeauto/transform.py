"""Level restriction ``r_k``, transition closure and the reduced-form construction."""
from __future__ import annotations

from dataclasses import dataclass, field
from math import lcm
from typing import Iterable, Sequence

from .classify import DEFAULT_CAP, is_directed, is_finitary
from .core import (IDENTITY, Perm, Presentation, State, Word, first_level, level_perm,
                   level_words, perm_group_closure, section)
from .errors import BudgetExceeded, PreconditionError
from .solver import DEFAULT_BUDGET, TrivialityCache, are_equal, is_trivial

MAX_RESTRICTED_ALPHABET = 4096


def restrict_level(P: Presentation, k: int, states: Iterable[str] | None = None,
                   max_alphabet: int = MAX_RESTRICTED_ALPHABET) -> Presentation:
    """The same states acting on the tree over the alphabet ``X^k``.

    Letter ``i`` of the new alphabet is the ``i``-th word of ``X^k`` in
    lexicographic order.
    """
    if k < 1:
        raise ValueError("k must be at least 1")
    if not P.automaton_closed:
        raise PreconditionError("restrict_level needs an automaton-closed presentation")
    d = P.degree
    if d ** k > max_alphabet:
        raise BudgetExceeded(f"alphabet X^{k} has {d ** k} letters (limit {max_alphabet})")
    if k == 1 and states is None:
        return P
    names = P.names if states is None else [n for n in P.names if n in set(states)]
    out = []
    for name in names:
        g = Word.gen(name)
        perm = level_perm(P, g, k)
        trans = tuple(section(P, g, v) for v in level_words(d, k))
        out.append(State(name, perm, trans))
    return Presentation(d ** k, out)


def self_similar_closure(P: Presentation, seeds: Iterable[str]) -> list[str]:
    """Least transition-closed superset of ``seeds`` (presentation order)."""
    found = set()
    stack = list(seeds)
    while stack:
        name = stack.pop()
        if name in found:
            continue
        P[name]
        found.add(name)
        for t in P[name].transitions:
            stack.extend(t.names())
    return [n for n in P.names if n in found]


@dataclass(frozen=True)
class ReducedFormCheck:
    ok: bool
    diagnosis: dict[str, str] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.ok


def _root_group(P: Presentation, Y: Sequence[str]):
    return [P[n].perm for n in Y]


def classify_sections(P: Presentation, name: str, Y: Sequence[str],
                      rooted_perms: str = "group", budget: int = DEFAULT_BUDGET,
                      memo: TrivialityCache | None = None,
                      _cache: dict | None = None) -> str | None:
    """Check the shape shared by reduced form, GB and abelian wreath type.

    ``rooted_perms`` selects what a non-self section may be: ``"trivial"``
    (generalized basilica) or ``"group"`` (a rooted automorphism whose
    permutation lies in the group generated by the root permutations of
    ``Y``). Returns None when the state conforms, otherwise a diagnosis.
    """
    memo = {} if memo is None else memo
    g = Word.gen(name)
    _, secs = first_level(P, g)
    kinds = []
    for x, s in enumerate(secs):
        triv = is_trivial(P, s, budget, memo).verdict
        if triv is None:
            return f"triviality of section at {x} undecided"
        if triv:
            kinds.append("1")
            continue
        eq = are_equal(P, s, g, budget, memo).verdict
        if eq is None:
            return f"equality of section at {x} with {name} undecided"
        if eq:
            kinds.append("self")
            continue
        if rooted_perms == "trivial":
            return f"section at {x} is {s}, not in {{1, {name}}}"
        sperm, ssecs = first_level(P, s)
        if not all(is_trivial(P, t, budget, memo).is_true for t in ssecs):
            return f"section at {x} is {s}, which is neither {name} nor a rooted permutation"
        if _cache is not None:
            if "group" not in _cache:
                _cache["group"] = perm_group_closure(_root_group(P, Y))
            if sperm not in _cache["group"]:
                return f"section at {x} has root {sperm} outside the level-1 image"
        kinds.append("rooted")
    selves = kinds.count("self")
    if selves == 0 and all(k == "1" for k in kinds):
        return None
    if selves == 1:
        return None
    if selves == 0:
        return "nontrivial sections but no self-section"
    return f"{selves} self-sections (need exactly one)"


def is_reduced_form(P: Presentation, Y: Iterable[str] | None = None,
                    budget: int = DEFAULT_BUDGET) -> ReducedFormCheck:
    """Every state of ``Y`` is rooted (sections trivial) or has sections in
    ``{self} | pi_1(<Y>)`` with exactly one self."""
    Y = P.names if Y is None else list(Y)
    memo: TrivialityCache = {}
    cache: dict = {}
    diagnosis = {}
    for name in Y:
        problem = classify_sections(P, name, Y, "group", budget, memo, cache)
        diagnosis[name] = problem or "ok"
    return ReducedFormCheck(all(v == "ok" for v in diagnosis.values()), diagnosis)


@dataclass(frozen=True)
class ReducedFormResult:
    k: int
    H: Presentation
    Z: list[str]
    embedding: dict[str, tuple[Perm, tuple[Word, ...]]]


def reduced_form(P: Presentation, generator_words: Sequence[Word] | None = None,
                 cap: int = DEFAULT_CAP, budget: int = DEFAULT_BUDGET,
                 max_alphabet: int = MAX_RESTRICTED_ALPHABET) -> ReducedFormResult:
    """Pass to a level ``k`` where the finitary/directed states form a
    reduced-form presentation into which the generators embed.

    ``embedding`` maps each generator (by its printed word) to its
    permutation of ``X^k`` and its tuple of sections, written over ``Z``.
    """
    if not P.automaton_closed:
        raise PreconditionError("reduced_form needs an automaton-closed presentation")
    if generator_words is None:
        generator_words = [Word.gen(n) for n in P.names]
    generator_words = [Word(g) for g in generator_words]
    d = P.degree
    memo: TrivialityCache = {}

    periods, depths, classified = [], [], []
    for name in P.names:
        g = Word.gen(name)
        fin = is_finitary(P, g, cap, budget)
        if fin.is_true:
            if fin.depth:
                classified.append(name)
                depths.append(fin.depth)
            continue
        dirc = is_directed(P, g, cap, budget)
        if dirc.is_unknown or fin.is_unknown:
            raise PreconditionError(f"state {name} could not be classified")
        if dirc.is_true:
            classified.append(name)
    Z = [n for n in self_similar_closure(P, classified)
         if not is_trivial(P, Word.gen(n), budget, memo).is_true]
    for name in Z:
        g = Word.gen(name)
        fin = is_finitary(P, g, cap, budget)
        if fin.is_true:
            depths.append(fin.depth)
            continue
        dirc = is_directed(P, g, cap, budget)
        if not dirc.is_true:
            raise PreconditionError(f"section {name} is neither finitary nor directed")
        periods.append(dirc.period)
    m = lcm(*periods) if periods else 1
    n = max(depths, default=0)

    def as_z(w: Word) -> Word | None:
        if is_trivial(P, w, budget, memo).is_true:
            return IDENTITY
        if len(w) == 1 and w[0][1] == 1 and w[0][0] in Z:
            return w
        for z in Z:
            if are_equal(P, w, Word.gen(z), budget, memo).is_true:
                return Word.gen(z)
        return None

    k = m * max(1, -(-n // m))
    while d ** k <= max_alphabet:
        embedding = {}
        for g in generator_words:
            secs = []
            for v in level_words(d, k):
                z = as_z(section(P, g, v))
                if z is None:
                    break
                secs.append(z)
            else:
                embedding[str(g)] = (level_perm(P, g, k), tuple(secs))
                continue
            break
        else:
            H = restrict_level(P.restricted_to(Z), k, max_alphabet=max_alphabet) if Z else \
                Presentation(d ** k, [])
            return ReducedFormResult(k, H, Z, embedding)
        k += m
    raise BudgetExceeded(f"no admissible level with at most {max_alphabet} letters")


@dataclass(frozen=True)
class DirectedCore:
    Z: list[Word]
    embedding: dict[str, tuple[Perm, tuple[Word, ...]]]


def directed_core(P: Presentation, Y: Sequence[str] | None = None,
                  cap: int = DEFAULT_CAP, budget: int = DEFAULT_BUDGET) -> DirectedCore:
    """Sections of the directed generators, and each generator's image in
    ``Sym(X) x| <Z>^X``."""
    Y = P.names if Y is None else list(Y)
    check = is_reduced_form(P, Y, budget)
    if not check:
        raise PreconditionError(f"not in reduced form: {check.diagnosis}")
    memo: TrivialityCache = {}
    Z: list[Word] = []
    embedding = {}
    for name in Y:
        g = Word.gen(name)
        perm, secs = first_level(P, g)
        embedding[name] = (perm, secs)
        if not is_directed(P, g, cap, budget).is_true:
            continue
        for s in secs:
            if is_trivial(P, s, budget, memo).is_true:
                continue
            if not any(are_equal(P, s, z, budget, memo).is_true for z in Z):
                Z.append(s)
    return DirectedCore(Z, embedding)


__all__ = [
    "restrict_level", "self_similar_closure", "is_reduced_form", "ReducedFormCheck",
    "reduced_form", "ReducedFormResult", "directed_core", "DirectedCore",
    "classify_sections", "MAX_RESTRICTED_ALPHABET",
]
