"""Worked examples, each bundled with the facts it is expected to satisfy."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Callable, Sequence

from .classify import is_odometer
from .core import (IDENTITY, Perm, Presentation, State, Word, act, commutator, first_level,
                   root_perm, section)
from .solver import DEFAULT_BUDGET, TrivialityCache, are_equal, is_trivial, order_up_to
from .structure import (check_certificate, is_abelian_wreath_type, is_balanced,
                        is_generalized_basilica, is_kneading, orbits_on_level,
                        self_replicating)
from .textformat import format_presentation, parse, parse_word
from .transform import is_reduced_form

Check = Callable[[Presentation], bool]


@dataclass(frozen=True)
class CatalogEntry:
    """A presentation with its distinguished generators and expected facts.

    ``expected`` maps a class name (``reduced_form``, ``kneading``,
    ``generalized_basilica``, ``balanced``, ``abelian_wreath_type``,
    ``self_replicating``) to True, False or None; None means no certificate
    is expected. ``identities`` are pairs of words that must be equal and
    ``checks`` are further named predicates.
    """

    name: str
    presentation: Presentation
    distinguished: list[str]
    expected: dict[str, bool | None] = field(default_factory=dict)
    identities: list[tuple[str, Word, Word]] = field(default_factory=list)
    checks: list[tuple[str, Check]] = field(default_factory=list)
    generating_set: list[str] | None = None

    @property
    def Y(self) -> list[str]:
        return self.generating_set if self.generating_set is not None else self.presentation.names

    def text(self) -> str:
        return format_presentation(self.presentation)

    def word(self, text: str) -> Word:
        return parse_word(text, set(self.presentation.names))


def _w(text: str) -> Word:
    return parse_word(text)


def wreath_is(P: Presentation, g: Word, cycles: Sequence[Sequence[int]],
              sections: Sequence[Word | str], budget: int = DEFAULT_BUDGET) -> bool:
    """``g`` has root permutation ``cycles`` and first-level sections ``sections``."""
    perm, secs = first_level(P, g)
    if perm != Perm.from_cycles(P.degree, cycles):
        return False
    memo: TrivialityCache = {}
    want = [_w(s) if isinstance(s, str) else s for s in sections]
    return len(want) == len(secs) and all(
        are_equal(P, s, t, budget, memo).is_true for s, t in zip(secs, want))


def pairwise_distinct(P: Presentation, words: Sequence[Word]) -> bool:
    memo: TrivialityCache = {}
    return all(are_equal(P, u, v, DEFAULT_BUDGET, memo).is_false for u, v in combinations(words, 2))


def _order_is(g: str, n: int, bound: int = 8) -> Check:
    def check(P: Presentation) -> bool:
        dec = order_up_to(P, _w(g), bound)
        return dec.is_true and dec.witness == n
    return check


def _no_order(g: str, bound: int = 32) -> Check:
    return lambda P: order_up_to(P, _w(g), bound).is_false


# ---------------------------------------------------------------------------
# Constructors
# ---------------------------------------------------------------------------


def basilica() -> CatalogEntry:
    P = parse("a = (1, b)\nb = (0 1) (1, a)\n")
    return CatalogEntry(
        "basilica", P, ["a", "b"],
        expected={"reduced_form": False, "kneading": True, "generalized_basilica": False,
                  "self_replicating": True},
        identities=[("a_1 = b", section(P, "a", (1,)), _w("b")),
                    ("b_1 = a", section(P, "b", (1,)), _w("a"))],
        checks=[("act(b, 1.0) = 0.0", lambda P: act(P, "b", (1, 0)) == (0, 0))],
    )


def basilica_reduced() -> CatalogEntry:
    P = parse("A = (2 3) (1, 1, 1, A)\nB = (0 2)(1 3) (1, 1, 1, B)\n")
    odo = _w("A*B^-1")
    return CatalogEntry(
        "basilica_reduced", P, ["A", "B"],
        expected={"reduced_form": True, "kneading": True, "generalized_basilica": True,
                  "balanced": True, "abelian_wreath_type": False, "self_replicating": True},
        checks=[
            ("A^2 = (1, 1, A, A)", lambda P: wreath_is(P, _w("A^2"), [], ["1", "1", "A", "A"])),
            ("B^2 = (1, B, 1, B)", lambda P: wreath_is(P, _w("B^2"), [], ["1", "B", "1", "B"])),
            ("A*B^-1 = (0 3 1 2)(1, A*B^-1, 1, 1)",
             lambda P: wreath_is(P, odo, [[0, 3, 1, 2]], ["1", odo, "1", "1"])),
            ("A*B^-1 is an odometer", lambda P: is_odometer(P, odo)),
            ("A is not an odometer", lambda P: not is_odometer(P, _w("A"))),
            ("one orbit on level 1", lambda P: len(orbits_on_level(P, ["A", "B"], 1)) == 1),
        ],
    )


def _power_name(k: int) -> str:
    return "a" if k == 1 else f"a{k}"


def ggs(p: int, e: Sequence[int]) -> CatalogEntry:
    """GGS group ``<a, b>`` on ``[p]``: ``a`` the root cycle and
    ``b = (a^{e_1}, ..., a^{e_{p-1}}, b)``.

    Powers ``a^k`` with ``k >= 2`` appear as separate rooted states ``a<k>``
    so the presentation stays automaton-closed.
    """
    if p not in (3, 5, 7):
        raise ValueError("p must be 3, 5 or 7")
    e = [int(x) % p for x in e]
    if len(e) != p - 1:
        raise ValueError(f"need {p - 1} exponents, got {len(e)}")
    if not any(e):
        raise ValueError("some exponent must be nonzero")
    c = Perm([(x + 1) % p for x in range(p)])
    ones = tuple(IDENTITY for _ in range(p))
    states = [State("a", c, ones)]
    for k in sorted({k for k in e if k >= 2}):
        states.append(State(_power_name(k), c ** k, ones))
    trans = tuple(IDENTITY if k == 0 else Word.gen(_power_name(k)) for k in e) + (Word.gen("b"),)
    states.append(State("b", Perm.identity(p), trans))
    P = Presentation(p, states)
    name = f"ggs{p}_" + "".join(map(str, e))
    identities = [(f"{_power_name(k)} = a^{k}", Word.gen(_power_name(k)), Word.gen("a", k))
                  for k in sorted(set(e)) if k >= 2]
    return CatalogEntry(
        name, P, ["a", "b"],
        expected={"reduced_form": True, "abelian_wreath_type": True,
                  "generalized_basilica": False},
        identities=identities,
        checks=[(f"a has order {p}", _order_is("a", p, p)),
                (f"b has order {p}", _order_is("b", p, p))],
    )


def gupta_sidki() -> CatalogEntry:
    entry = ggs(3, (1, 2))
    entry.expected["self_replicating"] = True
    return entry


def ggs5() -> CatalogEntry:
    entry = ggs(5, (1, 0, 0, 1))
    entry.expected["self_replicating"] = True
    return entry


def g_p(p: int) -> CatalogEntry:
    if p not in (3, 5, 7):
        raise ValueError("p must be 3, 5 or 7")
    c = tuple(range(p))
    g_secs = ["g"] + ["1"] * (p - 1)
    h_secs = ["1", "h"] + ["1"] * (p - 2)
    cyc = "(" + " ".join(map(str, c)) + ")"
    P = parse(f"g = {cyc} ({', '.join(g_secs)})\nh = {cyc} ({', '.join(h_secs)})\n")
    g, h = _w("g"), _w("h")
    comm = commutator(g ** p, h)
    comm_secs: list[Word | str] = ["1"] * p
    comm_secs[2] = commutator(g, h)
    return CatalogEntry(
        f"G{p}", P, ["g", "h"],
        expected={"reduced_form": True, "generalized_basilica": True, "balanced": True,
                  "kneading": False, "self_replicating": True},
        checks=[
            ("(g*h)_0 = 1", lambda P: is_trivial(P, P.step(g * h, 0)[1]).is_true),
            ("(h*g)_0 = h*g", lambda P: are_equal(P, P.step(h * g, 0)[1], h * g).is_true),
            ("h*g is nontrivial", lambda P: is_trivial(P, h * g).is_false),
            (f"[g^{p},h] = (..., [g,h] at 2, ...)", lambda P: wreath_is(P, comm, [], comm_secs)),
            ("g^p has every section g",
             lambda P: wreath_is(P, g ** p, [], [g] * p)),
        ],
    )


def balanced_pair_5() -> CatalogEntry:
    P = parse("a = (0 1)(3 4) (1, 1, 1, 1, a)\nb = (1 2)(3 4) (1, 1, 1, b, 1)\n")
    c = _w("a*b")
    b = _w("b")

    def conj(n: int) -> Word:
        return c.conj(b ** n)

    return CatalogEntry(
        "pair5", P, ["a", "b"],
        expected={"generalized_basilica": True, "balanced": True, "self_replicating": None},
        checks=[
            ("orbits on level 1 are {0,1,2} and {3,4}",
             lambda P: orbits_on_level(P, ["a", "b"], 1) == [[(0,), (1,), (2,)], [(3,), (4,)]]),
            ("c = a*b = (0 1 2)(1, 1, 1, c, 1)",
             lambda P: wreath_is(P, c, [[0, 1, 2]], ["1", "1", "1", c, "1"])),
            ("b^2 = (1, 1, 1, b, b)", lambda P: wreath_is(P, b ** 2, [], ["1", "1", "1", "b", "b"])),
            ("b^-2n*c*b^2n = (0 1 2)(1, 1, 1, b^-n*c*b^n, 1) for n = 1, 2",
             lambda P: all(wreath_is(P, conj(2 * n), [[0, 1, 2]], ["1", "1", "1", conj(n), "1"])
                           for n in (1, 2))),
            ("c, b^-2*c*b^2, b^-4*c*b^4 are pairwise distinct",
             lambda P: pairwise_distinct(P, [c, conj(2), conj(4)])),
        ],
    )


def dihedral3() -> CatalogEntry:
    P = parse("a = (0 1) (1, 1, a)\nb = (0 2) (1, b, 1)\n")
    return CatalogEntry(
        "dihedral3", P, ["a", "b"],
        expected={"generalized_basilica": True, "self_replicating": True},
        checks=[("a has order 2", _order_is("a", 2, 4)), ("b has order 2", _order_is("b", 2, 4)),
                ("a*b has no order <= 32", _no_order("a*b"))],
    )


def dihedral2_aws() -> CatalogEntry:
    P = parse("a = (0 1) (1, 1)\nb = (a, b)\n")
    return CatalogEntry(
        "dihedral2", P, ["a", "b"],
        expected={"abelian_wreath_type": True, "reduced_form": True,
                  "generalized_basilica": False, "self_replicating": True},
        checks=[("a has order 2", _order_is("a", 2, 4)), ("b has order 2", _order_is("b", 2, 4)),
                ("b^2 is trivial", lambda P: is_trivial(P, _w("b^2")).is_true),
                ("a*b has no order <= 32", _no_order("a*b"))],
    )


def lamplighter4() -> CatalogEntry:
    P = parse("a = (0 2)(1 3) (1, 1, 1, a)\nb = (0 2) (1, b, 1, 1)\n")
    a, b = _w("a"), _w("b")
    conjugates = [b.conj(a.inverse() ** i) for i in range(4)]  # a^i b a^-i

    def products_nontrivial(P: Presentation) -> bool:
        memo: TrivialityCache = {}
        for r in (2, 3):
            for combo in combinations(conjugates, r):
                w = IDENTITY
                for t in combo:
                    w = w * t
                if not is_trivial(P, w, DEFAULT_BUDGET, memo).is_false:
                    return False
        return True

    def conj_commute(P: Presentation) -> bool:
        memo: TrivialityCache = {}
        return all(is_trivial(P, commutator(u, v), DEFAULT_BUDGET, memo).is_true
                   for u, v in combinations(conjugates, 2))

    return CatalogEntry(
        "lamplighter4", P, ["a", "b"],
        expected={"generalized_basilica": True, "abelian_wreath_type": True,
                  "reduced_form": True, "self_replicating": None},
        checks=[
            ("b^2 is trivial", lambda P: is_trivial(P, b ** 2).is_true),
            ("b*a*b*a^-1 = (1, b, 1, b)",
             lambda P: wreath_is(P, b * a * b * a.inverse(), [], ["1", "b", "1", "b"])),
            ("a^2n*b*a^-2n = (0 2)(1, a^n*b*a^-n, 1, 1) for n = 1, 2",
             lambda P: all(wreath_is(P, b.conj(a.inverse() ** (2 * n)), [[0, 2]],
                                     ["1", b.conj(a.inverse() ** n), "1", "1"]) for n in (1, 2))),
            ("a^i*b*a^-i commute pairwise for 0 <= i < j <= 3", conj_commute),
            ("products of 2 or 3 distinct conjugates are nontrivial", products_nontrivial),
        ],
    )


def weak_selfrep2() -> CatalogEntry:
    P = parse("s = (0 1) (1, 1)\na = (0 1) (s, s*a)\n")
    a, s = _w("a"), _w("s")

    def square_sections(P: Presentation) -> bool:
        perm, secs = first_level(P, a ** 2)
        if not perm.is_identity():
            return False
        x, y = secs
        return ((are_equal(P, x, a).is_true and are_equal(P, y, a.inverse()).is_true)
                or (are_equal(P, x, a.inverse()).is_true and are_equal(P, y, a).is_true))

    return CatalogEntry(
        "weak_selfrep2", P, ["a"], generating_set=["a"],
        expected={"generalized_basilica": False, "reduced_form": False, "self_replicating": None},
        identities=[("s*a*s = a^-1", s * a * s, a.inverse())],
        checks=[("a^2 fixes X", lambda P: root_perm(P, a ** 2).is_identity()),
                ("sections of a^2 are a and a^-1 in some order", square_sections),
                ("a has infinite order (none <= 32)", _no_order("a"))],
    )


def all_entries() -> list[CatalogEntry]:
    return [basilica(), basilica_reduced(), gupta_sidki(), ggs5(), g_p(3), g_p(5),
            balanced_pair_5(), dihedral3(), dihedral2_aws(), lamplighter4(), weak_selfrep2()]


def get_entry(name: str) -> CatalogEntry:
    for e in all_entries():
        if e.name == name:
            return e
    raise KeyError(name)


# ---------------------------------------------------------------------------
# Verification
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CheckResult:
    entry: str
    label: str
    passed: bool
    detail: str = ""


def _flag(entry: CatalogEntry, key: str) -> tuple[bool, str]:
    P, Y = entry.presentation, entry.Y
    want = entry.expected[key]
    if key == "reduced_form":
        got: object = is_reduced_form(P, Y).ok
    elif key == "kneading":
        got = is_kneading(P, Y).ok
    elif key == "generalized_basilica":
        got = is_generalized_basilica(P, Y)
    elif key == "balanced":
        got = is_balanced(P, Y)
    elif key == "abelian_wreath_type":
        got = is_abelian_wreath_type(P, Y)
    elif key == "self_replicating":
        res = self_replicating(P, Y)
        if not all(check_certificate(P, c) for c in res.certificates):
            return False, "certificate failed re-verification"
        got = res.decision.verdict
        return got is want, f"{got} via {res.kind}"
    else:
        raise KeyError(key)
    return got == want, str(got)


def verify_entry(entry: CatalogEntry) -> list[CheckResult]:
    P = entry.presentation
    out = []
    for key in entry.expected:
        ok, detail = _flag(entry, key)
        out.append(CheckResult(entry.name, f"{key} = {entry.expected[key]}", ok, detail))
    memo: TrivialityCache = {}
    for label, u, v in entry.identities:
        out.append(CheckResult(entry.name, label, are_equal(P, u, v, DEFAULT_BUDGET, memo).is_true))
    for label, check in entry.checks:
        out.append(CheckResult(entry.name, label, bool(check(P))))
    out.append(CheckResult(entry.name, "text round-trip", parse(entry.text()) == P))
    return out


def verify_all() -> list[CheckResult]:
    return [r for e in all_entries() for r in verify_entry(e)]


__all__ = [
    "CatalogEntry", "CheckResult", "basilica", "basilica_reduced", "ggs", "gupta_sidki",
    "ggs5", "g_p", "balanced_pair_5", "dihedral3", "dihedral2_aws", "lamplighter4",
    "weak_selfrep2", "all_entries", "get_entry", "verify_entry", "verify_all", "wreath_is",
    "pairwise_distinct",
]
