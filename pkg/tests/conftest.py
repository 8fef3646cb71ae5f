"""Independent oracles used across the test-suite.

The evaluator here reads raw wreath recursions (plain dicts and lists) and
applies them letter by letter, so it shares no code with the package.
"""
from __future__ import annotations

import itertools

import pytest

# name -> (images of the root permutation, section words as strings)
RECURSIONS = {
    "basilica": {"a": ([0, 1], ["1", "b"]), "b": ([1, 0], ["1", "a"])},
    "basilica_reduced": {"A": ([0, 1, 3, 2], ["1", "1", "1", "A"]),
                         "B": ([2, 3, 0, 1], ["1", "1", "1", "B"])},
    "ggs3_12": {"a": ([1, 2, 0], ["1", "1", "1"]), "a2": ([2, 0, 1], ["1", "1", "1"]),
                "b": ([0, 1, 2], ["a", "a2", "b"])},
    "G3": {"g": ([1, 2, 0], ["g", "1", "1"]), "h": ([1, 2, 0], ["1", "h", "1"])},
    "pair5": {"a": ([1, 0, 2, 4, 3], ["1", "1", "1", "1", "a"]),
              "b": ([0, 2, 1, 4, 3], ["1", "1", "1", "b", "1"])},
    "dihedral3": {"a": ([1, 0, 2], ["1", "1", "a"]), "b": ([2, 1, 0], ["1", "b", "1"])},
    "dihedral2": {"a": ([1, 0], ["1", "1"]), "b": ([0, 1], ["a", "b"])},
    "lamplighter4": {"a": ([2, 3, 0, 1], ["1", "1", "1", "a"]),
                     "b": ([2, 1, 0, 3], ["1", "b", "1", "1"])},
    "weak_selfrep2": {"s": ([1, 0], ["1", "1"]), "a": ([1, 0], ["s", "s*a"])},
}


def oracle_word(text: str) -> list[tuple[str, int]]:
    """Letters of a word like ``a*b^-2``; no free reduction needed."""
    out = []
    text = text.strip()
    if text in ("", "1"):
        return out
    for term in text.split("*"):
        name, _, power = term.partition("^")
        k = int(power) if power else 1
        out.extend([(name.strip(), 1 if k > 0 else -1)] * abs(k))
    return out


def oracle_inverse(w):
    return [(n, -s) for n, s in reversed(w)]


def oracle_apply(rec, w, v):
    """``w(v)`` from the recursion ``g(xu) = perm(x) g_x(u)``, rightmost factor first."""
    v = tuple(v)
    for name, sign in reversed(w):
        v = _apply_factor(rec, name, sign, v)
    return v


def _apply_factor(rec, name, sign, v):
    if not v:
        return v
    images, secs = rec[name]
    x = v[0]
    if sign > 0:
        return (images[x],) + oracle_apply(rec, oracle_word(secs[x]), v[1:])
    y = images.index(x)
    return (y,) + oracle_apply(rec, oracle_inverse(oracle_word(secs[y])), v[1:])


def oracle_perm(rec, w, n, d):
    """Images of ``w`` on all of X^n as a dict."""
    return {v: oracle_apply(rec, w, v) for v in itertools.product(range(d), repeat=n)}


def oracle_is_identity(rec, w, n, d):
    return all(oracle_apply(rec, w, v) == v for v in itertools.product(range(d), repeat=n))


def oracle_orbits(rec, words, n, d):
    """Orbit count of <words> on X^n by flood fill with the oracle action."""
    verts = list(itertools.product(range(d), repeat=n))
    seen, orbits = set(), []
    for v in verts:
        if v in seen:
            continue
        orbit, stack = {v}, [v]
        while stack:
            u = stack.pop()
            for w in words:
                for t in (w, oracle_inverse(w)):
                    z = oracle_apply(rec, t, u)
                    if z not in orbit:
                        orbit.add(z)
                        stack.append(z)
        seen |= orbit
        orbits.append(sorted(orbit))
    return orbits


def oracle_cycles(images):
    """Complete cycle decomposition by hand-walking the images list."""
    seen, out = set(), []
    for x in range(len(images)):
        if x in seen:
            continue
        cyc, y = [], x
        while y not in seen:
            seen.add(y)
            cyc.append(y)
            y = images[y]
        out.append(cyc)
    return out


@pytest.fixture
def recursions():
    return RECURSIONS


# ---------------------------------------------------------------------------
# Acceptance summary: one line per criterion at the end of the run
# ---------------------------------------------------------------------------

ACCEPTANCE_RESULTS: dict[int, tuple[bool, str]] = {}


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(ACCEPTANCE_RESULTS):
        ok, title = ACCEPTANCE_RESULTS[n]
        terminalreporter.write_line(f"criterion {n}: {'PASS' if ok else 'FAIL'}  {title}")
