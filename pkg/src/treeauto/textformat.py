"""Presentation files.

One state per line::

    # the basilica group on [4]
    A = (2 3) (1, 1, 1, A)
    B = (0 2)(1 3) (1, 1, 1, B)

The root permutation is an optional run of cycles ``(l1 l2 ...)``; the
transition tuple is the final parenthesised group and must contain commas.
Words are ``1`` or ``*``-separated terms ``name``, ``name^k``. The alphabet
size is the tuple arity and must be the same on every line.
"""
from __future__ import annotations

import re

from .core import IDENTITY, Perm, Presentation, State, Word
from .errors import ParseError, PresentationError

_NAME = re.compile(r"[A-Za-z_][A-Za-z0-9_]*")
_TERM = re.compile(r"\s*([A-Za-z_][A-Za-z0-9_]*)\s*(?:\^\s*([+-]?\d+))?\s*$")


def parse_word(text: str, known: set[str] | None = None, *, line: int | None = None,
               col: int | None = None) -> Word:
    """Parse ``a*b^-1``-style words; ``1`` (or empty) is the identity."""
    stripped = text.strip()
    if stripped in ("", "1"):
        return IDENTITY
    factors = []
    offset = 0
    for term in text.split("*"):
        m = _TERM.match(term)
        here = None if col is None else col + offset
        if not m:
            if term.strip() == "1":
                offset += len(term) + 1
                continue
            raise ParseError(f"malformed word term {term.strip()!r}", line, here)
        name, power = m.group(1), int(m.group(2) or 1)
        if known is not None and name not in known:
            raise ParseError(f"unknown state {name!r}", line, here)
        factors.extend([(name, 1 if power > 0 else -1)] * abs(power))
        offset += len(term) + 1
    return Word(factors)


def _split_groups(body: str, line: int, col0: int) -> list[tuple[str, int]]:
    """Top-level parenthesised groups of ``body`` with their columns."""
    groups = []
    i = 0
    while i < len(body):
        ch = body[i]
        if ch.isspace():
            i += 1
            continue
        if ch != "(":
            raise ParseError(f"expected '(' but found {ch!r}", line, col0 + i)
        j = body.find(")", i)
        if j < 0:
            raise ParseError("unclosed '('", line, col0 + i)
        if "(" in body[i + 1:j]:
            raise ParseError("nested parentheses", line, col0 + i)
        groups.append((body[i + 1:j], col0 + i + 1))
        i = j + 1
    return groups


def parse(text: str) -> Presentation:
    """Parse a presentation file; raises ParseError with line/column."""
    entries = []
    degree = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        content = raw.split("#", 1)[0]
        if not content.strip():
            continue
        if "=" not in content:
            raise ParseError("expected 'name = ...'", lineno, 1)
        lhs, rhs = content.split("=", 1)
        name = lhs.strip()
        if not _NAME.fullmatch(name):
            raise ParseError(f"invalid state name {name!r}", lineno, 1)
        rhs_col = len(lhs) + 2
        groups = _split_groups(rhs, lineno, rhs_col)
        if not groups or "," not in groups[-1][0]:
            raise ParseError("missing transition tuple", lineno, rhs_col)
        *cycle_groups, (tuple_body, tuple_col) = groups
        arity = tuple_body.count(",") + 1
        if degree is None:
            degree = arity
        elif arity != degree:
            raise ParseError(f"tuple has {arity} entries, expected {degree}", lineno, tuple_col)
        cycles = []
        seen = set()
        for body, gcol in cycle_groups:
            if "," in body:
                raise ParseError("transition tuple must come last", lineno, gcol)
            try:
                letters = [int(t) for t in body.split()]
            except ValueError:
                raise ParseError(f"malformed cycle ({body})", lineno, gcol) from None
            if not letters:
                raise ParseError("empty cycle", lineno, gcol)
            for x in letters:
                if x >= degree:
                    raise ParseError(f"letter {x} out of range for alphabet of size {degree}", lineno, gcol)
                if x in seen:
                    raise ParseError(f"repeated letter {x} in cycle", lineno, gcol)
                seen.add(x)
            cycles.append(letters)
        words = []
        offset = 0
        for part in tuple_body.split(","):
            words.append((part, lineno, tuple_col + offset))
            offset += len(part) + 1
        entries.append((name, lineno, cycles, words))
    if not entries:
        raise ParseError("no states defined")
    known = {e[0] for e in entries}
    states = []
    seen_names: set[str] = set()
    for name, lineno, cycles, words in entries:
        if name in seen_names:
            raise ParseError(f"duplicate state {name!r}", lineno, 1)
        seen_names.add(name)
        trans = tuple(parse_word(w, known, line=ln, col=c) for w, ln, c in words)
        states.append(State(name, Perm.from_cycles(degree, cycles), trans))
    try:
        return Presentation(degree, states)
    except PresentationError as exc:
        raise ParseError(str(exc)) from exc


def format_state(st: State) -> str:
    perm = "" if st.perm.is_identity() else str(st.perm) + " "
    return f"{st.name} = {perm}({', '.join(str(t) for t in st.transitions)})"


def format_presentation(P: Presentation) -> str:
    return "".join(format_state(st) + "\n" for st in P.states.values())


def load(path) -> Presentation:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(P: Presentation, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_presentation(P))
