"""Permutations, group words, wreath-recursion presentations and the
action/section calculus.

Conventions used throughout the package:

* A state ``g`` acts on tree words by ``g(x w) = perm(g)(x) . g_x(w)``.
* A product ``g*h`` applies ``h`` first, so ``(g h)(v) = g(h(v))`` and
  sections obey the cocycle rule ``(g h)_v = g_{h(v)} h_v``.
* Transition tuples are listed in letter order ``(g_0, ..., g_{d-1})``.
* Level ``n`` words are numbered lexicographically, ``(x_1..x_n) ->
  sum x_i d^(n-i)``.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Sequence

from .errors import BudgetExceeded, PresentationError

Factor = tuple[str, int]
TreeWord = tuple[int, ...]

#: Largest permutation table (number of tree words on one level) we build.
MAX_LEVEL_SIZE = 1 << 20


# ---------------------------------------------------------------------------
# Permutations
# ---------------------------------------------------------------------------

class Perm:
    """A permutation of ``0..d-1`` stored as its image table.

    Multiplication follows the group-word convention: ``(p * q)(x) ==
    p(q(x))``.
    """

    __slots__ = ("images", "_hash")

    def __init__(self, images: Iterable[int]):
        images = tuple(images)
        if sorted(images) != list(range(len(images))):
            raise PresentationError(f"not a permutation: {images}")
        self.images = images
        self._hash = hash(images)

    @classmethod
    def identity(cls, d: int) -> Perm:
        return cls(range(d))

    @classmethod
    def from_cycles(cls, d: int, cycles: Iterable[Sequence[int]]) -> Perm:
        images = list(range(d))
        seen: set[int] = set()
        for cycle in cycles:
            for x in cycle:
                if not 0 <= x < d:
                    raise PresentationError(f"letter {x} out of range for alphabet of size {d}")
                if x in seen:
                    raise PresentationError(f"letter {x} repeated in cycle notation")
                seen.add(x)
            for i, x in enumerate(cycle):
                images[x] = cycle[(i + 1) % len(cycle)]
        return cls(images)

    @property
    def degree(self) -> int:
        return len(self.images)

    def __call__(self, x: int) -> int:
        return self.images[x]

    def __mul__(self, other: Perm) -> Perm:
        if self.degree != other.degree:
            raise PresentationError("cannot compose permutations of different degrees")
        return Perm(self.images[y] for y in other.images)

    def __pow__(self, n: int) -> Perm:
        base = self if n >= 0 else self.inverse()
        result = Perm.identity(self.degree)
        for _ in range(abs(n)):
            result = base * result
        return result

    def inverse(self) -> Perm:
        inv = [0] * self.degree
        for x, y in enumerate(self.images):
            inv[y] = x
        return Perm(inv)

    def is_identity(self) -> bool:
        return all(x == y for x, y in enumerate(self.images))

    def cycles(self, complete: bool = True) -> list[tuple[int, ...]]:
        """Cycle decomposition, each cycle starting at its least letter,
        ordered by least letter. ``complete`` keeps the fixed points."""
        seen = [False] * self.degree
        out = []
        for start in range(self.degree):
            if seen[start]:
                continue
            cycle = [start]
            seen[start] = True
            x = self.images[start]
            while x != start:
                cycle.append(x)
                seen[x] = True
                x = self.images[x]
            if complete or len(cycle) > 1:
                out.append(tuple(cycle))
        return out

    def fixed_points(self) -> list[int]:
        return [x for x, y in enumerate(self.images) if x == y]

    def order(self) -> int:
        from math import lcm
        return lcm(*(len(c) for c in self.cycles())) if self.degree else 1

    def is_full_cycle(self) -> bool:
        return len(self.cycles()) == 1

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Perm) and self.images == other.images

    def __hash__(self) -> int:
        return self._hash

    def __str__(self) -> str:
        cyc = self.cycles(complete=False)
        if not cyc:
            return "()"
        return "".join("(" + " ".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({list(self.images)})"


def perm_group_closure(generators: Iterable[Perm], cap: int = 10**6) -> set[Perm]:
    """All elements of the group generated by ``generators`` (BFS on products)."""
    gens = list(generators)
    if not gens:
        return set()
    ident = Perm.identity(gens[0].degree)
    elements = {ident}
    queue = deque([ident])
    while queue:
        p = queue.popleft()
        for g in gens:
            q = g * p
            if q not in elements:
                elements.add(q)
                if len(elements) > cap:
                    raise BudgetExceeded(f"permutation group has more than {cap} elements")
                queue.append(q)
    return elements


# ---------------------------------------------------------------------------
# Words
# ---------------------------------------------------------------------------

def _reduce(factors: Iterable[Factor]) -> list[Factor]:
    stack: list[Factor] = []
    for f in factors:
        if stack and stack[-1][0] == f[0] and stack[-1][1] == -f[1]:
            stack.pop()
        else:
            stack.append(f)
    return stack


class Word(tuple):
    """A freely reduced group word: a tuple of ``(state name, +1 | -1)``.

    ``*`` is the group product and ``**`` the power; the empty word is the
    identity.
    """

    def __new__(cls, factors: Iterable[Factor] = ()):
        return super().__new__(cls, _reduce((str(n), 1 if s > 0 else -1) for n, s in factors))

    @classmethod
    def _trusted(cls, factors: Sequence[Factor]) -> Word:
        return super().__new__(cls, factors)

    @classmethod
    def gen(cls, name: str, power: int = 1) -> Word:
        sign = 1 if power > 0 else -1
        return cls._trusted([(name, sign)] * abs(power))

    def __mul__(self, other: Word) -> Word:  # type: ignore[override]
        if not isinstance(other, tuple):
            return NotImplemented
        return Word._trusted(_reduce(tuple.__add__(self, other)))

    __add__ = __mul__  # type: ignore[assignment]

    def __rmul__(self, other):  # type: ignore[override]
        return NotImplemented

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else self.inverse()
        out: list[Factor] = []
        for _ in range(abs(n)):
            out.extend(base)
        return Word._trusted(_reduce(out))

    def inverse(self) -> Word:
        return Word._trusted([(n, -s) for n, s in reversed(self)])

    def conj(self, h: Word) -> Word:
        """``h^-1 * self * h``."""
        return h.inverse() * self * h

    def names(self) -> set[str]:
        return {n for n, _ in self}

    def __str__(self) -> str:
        if not self:
            return "1"
        parts = []
        i = 0
        while i < len(self):
            name, sign = self[i]
            j = i
            while j < len(self) and self[j] == (name, sign):
                j += 1
            power = (j - i) * sign
            parts.append(name if power == 1 else f"{name}^{power}")
            i = j
        return "*".join(parts)

    def __repr__(self) -> str:
        return f"Word({str(self)!r})"

    def __hash__(self) -> int:
        return tuple.__hash__(self)


IDENTITY = Word()


def commutator(g: Word, h: Word) -> Word:
    """``[g, h] = g h g^-1 h^-1``."""
    return g * h * g.inverse() * h.inverse()


# ---------------------------------------------------------------------------
# Tree words
# ---------------------------------------------------------------------------

def encode(v: Sequence[int], d: int) -> int:
    n = 0
    for x in v:
        n = n * d + x
    return n


def decode(index: int, d: int, length: int) -> TreeWord:
    out = [0] * length
    for i in range(length - 1, -1, -1):
        index, out[i] = divmod(index, d)
    return tuple(out)


def level_words(d: int, n: int) -> Iterator[TreeWord]:
    for i in range(d ** n):
        yield decode(i, d, n)


def format_tree_word(v: Sequence[int]) -> str:
    return ".".join(map(str, v))


def parse_tree_word(text: str) -> TreeWord:
    text = text.strip()
    if text in ("", "-", "e"):
        return ()
    try:
        return tuple(int(part) for part in text.split("."))
    except ValueError:
        raise PresentationError(f"malformed tree word {text!r}") from None


def _check_level_size(d: int, n: int, limit: int | None) -> None:
    limit = MAX_LEVEL_SIZE if limit is None else limit
    if d ** n > limit:
        raise BudgetExceeded(f"level {n} of a {d}-ary tree has {d ** n} vertices (limit {limit})")


# ---------------------------------------------------------------------------
# Presentations
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class State:
    name: str
    perm: Perm
    transitions: tuple[Word, ...]

    def __post_init__(self):
        object.__setattr__(self, "transitions", tuple(Word(t) for t in self.transitions))


class Presentation:
    """A self-similar group given by finitely many states over ``0..d-1``.

    Immutable once built; the per-letter action tables are computed lazily.
    """

    def __init__(self, degree: int, states: Iterable[State]):
        if degree < 2:
            raise PresentationError("alphabet must have at least 2 letters")
        self.degree = degree
        table: dict[str, State] = {}
        for st in states:
            if st.name in table:
                raise PresentationError(f"duplicate state name {st.name!r}")
            if st.perm.degree != degree:
                raise PresentationError(f"state {st.name!r}: permutation degree != {degree}")
            if len(st.transitions) != degree:
                raise PresentationError(
                    f"state {st.name!r}: {len(st.transitions)} transitions for alphabet of size {degree}")
            table[st.name] = st
        for st in table.values():
            for t in st.transitions:
                for name in t.names():
                    if name not in table:
                        raise PresentationError(f"state {st.name!r} refers to unknown state {name!r}")
        self._states = table

    @classmethod
    def from_recursions(cls, degree: int,
                        table: Mapping[str, tuple[Sequence[Sequence[int]], Sequence[Word | str]]]) -> Presentation:
        """Build from ``{name: (cycles, transitions)}``; transitions may be
        state names, ``"1"`` or ``Word`` objects."""
        states = []
        for name, (cycles, trans) in table.items():
            words = []
            for t in trans:
                if isinstance(t, Word):
                    words.append(t)
                elif t in ("1", ""):
                    words.append(IDENTITY)
                else:
                    words.append(Word.gen(t))
            states.append(State(name, Perm.from_cycles(degree, cycles), tuple(words)))
        return cls(degree, states)

    @property
    def states(self) -> Mapping[str, State]:
        return dict(self._states)

    @property
    def names(self) -> list[str]:
        return list(self._states)

    def __contains__(self, name: str) -> bool:
        return name in self._states

    def __getitem__(self, name: str) -> State:
        try:
            return self._states[name]
        except KeyError:
            raise PresentationError(f"unknown state {name!r}") from None

    def word(self, name: str, power: int = 1) -> Word:
        self[name]
        return Word.gen(name, power)

    @cached_property
    def automaton_closed(self) -> bool:
        return all(len(t) <= 1 for st in self._states.values() for t in st.transitions)

    def restricted_to(self, names: Iterable[str]) -> Presentation:
        """The sub-presentation on ``names`` (must be transition-closed)."""
        keep = [n for n in self._states if n in set(names)]
        return Presentation(self.degree, [self._states[n] for n in keep])

    def renamed(self, mapping: Mapping[str, str]) -> Presentation:
        def ren(w: Word) -> Word:
            return Word((mapping.get(n, n), s) for n, s in w)
        return Presentation(self.degree, [
            State(mapping.get(st.name, st.name), st.perm, tuple(ren(t) for t in st.transitions))
            for st in self._states.values()])

    def __eq__(self, other: object) -> bool:
        return (isinstance(other, Presentation) and self.degree == other.degree
                and list(self._states.values()) == list(other._states.values()))

    def __hash__(self) -> int:
        return hash((self.degree, tuple(self._states.values())))

    def __repr__(self) -> str:
        return f"<Presentation d={self.degree} states={self.names}>"

    # -- action tables ------------------------------------------------------

    @cached_property
    def _tables(self) -> dict[Factor, tuple[tuple[int, ...], tuple[Word, ...]]]:
        tables = {}
        for name, st in self._states.items():
            tables[(name, 1)] = (st.perm.images, st.transitions)
            inv = st.perm.inverse()
            tables[(name, -1)] = (inv.images,
                                  tuple(st.transitions[inv(x)].inverse() for x in range(self.degree)))
        return tables

    def _factor_table(self, f: Factor):
        try:
            return self._tables[f]
        except KeyError:
            raise PresentationError(f"unknown state {f[0]!r}") from None

    def check_letter(self, x: int) -> None:
        if not (isinstance(x, int) and 0 <= x < self.degree):
            raise PresentationError(f"letter {x!r} out of range for alphabet of size {self.degree}")

    def step(self, g: Word, x: int) -> tuple[int, Word]:
        """``(g(x), g_x)`` for a single letter ``x``."""
        self.check_letter(x)
        parts: list[Word] = []
        for f in reversed(g):
            images, secs = self._factor_table(f)
            parts.append(secs[x])
            x = images[x]
        out: list[Factor] = []
        for w in reversed(parts):
            out.extend(w)
        return x, Word._trusted(_reduce(out))

    def image(self, g: Word, x: int) -> int:
        for f in reversed(g):
            x = self._factor_table(f)[0][x]
        return x


# ---------------------------------------------------------------------------
# Action and sections
# ---------------------------------------------------------------------------

def _as_word(P: Presentation, g: Word | str) -> Word:
    if isinstance(g, Word):
        return g
    if isinstance(g, str):
        return P.word(g)
    return Word(g)


def act(P: Presentation, g: Word | str, v: Sequence[int]) -> TreeWord:
    """The image ``g(v)`` of a tree word."""
    g = _as_word(P, g)
    out = []
    for x in v:
        y, g = P.step(g, x)
        out.append(y)
    return tuple(out)


def section(P: Presentation, g: Word | str, v: Sequence[int]) -> Word:
    """The freely reduced word for the section ``g_v``."""
    g = _as_word(P, g)
    for x in v:
        _, g = P.step(g, x)
    return g


def root_perm(P: Presentation, g: Word | str) -> Perm:
    g = _as_word(P, g)
    return Perm(P.image(g, x) for x in range(P.degree))


def first_level(P: Presentation, g: Word | str) -> tuple[Perm, tuple[Word, ...]]:
    """Wreath recursion of ``g``: root permutation and transition tuple."""
    g = _as_word(P, g)
    images, secs = [], []
    for x in range(P.degree):
        y, s = P.step(g, x)
        images.append(y)
        secs.append(s)
    return Perm(images), tuple(secs)


def level_perm(P: Presentation, g: Word | str, n: int, limit: int | None = None) -> Perm:
    """Permutation induced on ``X^n`` (lexicographic numbering)."""
    g = _as_word(P, g)
    d = P.degree
    _check_level_size(d, n, limit)
    if n == 0:
        return Perm([0])
    images = [0] * (d ** n)

    def walk(word: Word, depth: int, src: int, dst: int) -> None:
        for x in range(d):
            y, s = P.step(word, x)
            if depth == 1:
                images[src * d + x] = dst * d + y
            else:
                walk(s, depth - 1, src * d + x, dst * d + y)

    walk(g, n, 0, 0)
    return Perm(images)


__all__ = [
    "Perm", "Word", "IDENTITY", "State", "Presentation", "TreeWord", "Factor",
    "act", "section", "root_perm", "first_level", "level_perm", "commutator",
    "encode", "decode", "level_words", "format_tree_word", "parse_tree_word",
    "perm_group_closure", "MAX_LEVEL_SIZE",
]
