import itertools

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from conftest import RECURSIONS, oracle_apply, oracle_perm, oracle_word
from treeauto.catalog import all_entries, get_entry
from treeauto.core import (IDENTITY, Perm, Presentation, State, Word, act, commutator, decode,
                           encode, first_level, format_tree_word, level_perm, parse_tree_word,
                           root_perm, section)
from treeauto.errors import BudgetExceeded, PresentationError
from treeauto.solver import are_equal
from treeauto.textformat import parse_word


def W(text):
    return parse_word(text)


# ---------------------------------------------------------------------------
# Perm
# ---------------------------------------------------------------------------

def test_perm_from_cycles_and_str():
    p = Perm.from_cycles(4, [[0, 3, 1, 2]])
    assert p.images == (3, 2, 0, 1)
    assert str(p) == "(0 3 1 2)"
    assert str(Perm.identity(3)) == "()"
    assert p.is_full_cycle()
    assert p.order() == 4


def test_perm_product_applies_right_factor_first():
    p = Perm.from_cycles(3, [[0, 1]])
    q = Perm.from_cycles(3, [[1, 2]])
    pq = p * q
    assert all(pq(x) == p(q(x)) for x in range(3))
    assert (p * p.inverse()).is_identity()
    assert p ** 2 == Perm.identity(3)
    assert q ** -1 == q.inverse()


def test_perm_complete_cycles_include_fixed_points():
    p = Perm.from_cycles(4, [[2, 3]])
    assert p.cycles() == [(0,), (1,), (2, 3)]
    assert p.cycles(complete=False) == [(2, 3)]
    assert p.fixed_points() == [0, 1]


@pytest.mark.parametrize("cycles", [[[0, 0]], [[0, 1], [1, 2]], [[0, 4]]])
def test_perm_from_cycles_rejects_bad_cycles(cycles):
    with pytest.raises(ValueError):
        Perm.from_cycles(3, cycles)


def test_perm_rejects_non_bijection():
    with pytest.raises(ValueError):
        Perm([0, 0, 1])


# ---------------------------------------------------------------------------
# Word
# ---------------------------------------------------------------------------

def test_words_are_freely_reduced():
    w = Word([("a", 1), ("b", 1), ("b", -1), ("a", -1)])
    assert w == IDENTITY
    assert str(W("a*b*b^-1*c")) == "a*c"
    assert str(W("a^2*b^-1")) == "a^2*b^-1"
    assert str(IDENTITY) == "1"


def test_word_inverse_power_and_conjugate():
    g = W("a*b")
    assert g * g.inverse() == IDENTITY
    assert g ** -1 == g.inverse()
    assert g ** 0 == IDENTITY
    assert str(g ** 2) == "a*b*a*b"
    assert W("b").conj(W("a")) == W("a^-1*b*a")
    assert commutator(W("g"), W("h")) == W("g*h*g^-1*h^-1")


def test_tree_word_text_and_numbering():
    assert parse_tree_word("1.0") == (1, 0)
    assert parse_tree_word("") == ()
    assert format_tree_word((2, 10)) == "2.10"
    assert encode((1, 2), 4) == 6
    assert decode(6, 4, 2) == (1, 2)
    with pytest.raises(PresentationError):
        parse_tree_word("1.x")


# ---------------------------------------------------------------------------
# Presentation validation
# ---------------------------------------------------------------------------

def test_presentation_rejects_unknown_state_and_bad_arity():
    with pytest.raises(PresentationError):
        Presentation(2, [State("a", Perm.identity(2), (W("c"), IDENTITY))])
    with pytest.raises(PresentationError):
        Presentation(2, [State("a", Perm.identity(2), (IDENTITY,))])
    with pytest.raises(PresentationError):
        Presentation(2, [State("a", Perm.identity(3), (IDENTITY, IDENTITY))])


def test_presentation_rejects_duplicates_and_small_alphabet():
    s = State("a", Perm.identity(2), (IDENTITY, IDENTITY))
    with pytest.raises(PresentationError):
        Presentation(2, [s, s])
    with pytest.raises(PresentationError):
        Presentation(1, [State("a", Perm.identity(1), (IDENTITY,))])


def test_automaton_closed_flag():
    assert get_entry("basilica").presentation.automaton_closed
    assert not get_entry("weak_selfrep2").presentation.automaton_closed


def test_unknown_state_and_letter_errors():
    P = get_entry("basilica").presentation
    with pytest.raises(PresentationError):
        act(P, W("c"), (0,))
    with pytest.raises(PresentationError):
        act(P, W("a"), (2,))


# ---------------------------------------------------------------------------
# Action and sections: worked values
# ---------------------------------------------------------------------------

def test_act_basilica_b_on_1_0():
    P = get_entry("basilica").presentation
    assert act(P, W("b"), (1, 0)) == (0, 0)
    assert act(P, IDENTITY, (1, 0, 1)) == (1, 0, 1)


def test_act_reduced_basilica_odometer_on_0():
    P = get_entry("basilica_reduced").presentation
    assert act(P, W("A*B^-1"), (0,)) == (3,)


def test_section_examples():
    P = get_entry("basilica_reduced").presentation
    g = W("A*B^-1")
    assert section(P, g, (1,)) == g
    assert section(P, g, ()) == g
    G3 = get_entry("G3").presentation
    assert section(G3, W("h*g"), (0,)) == W("h*g")
    assert section(G3, W("g*h"), (0,)) == IDENTITY


def test_root_perm_examples():
    P = get_entry("basilica_reduced").presentation
    assert root_perm(P, W("A*B^-1")) == Perm.from_cycles(4, [[0, 3, 1, 2]])
    assert root_perm(P, IDENTITY).is_identity()
    D3 = get_entry("dihedral3").presentation
    oracle = {x: oracle_apply(RECURSIONS["dihedral3"], oracle_word("a^2"), (x,)) for x in range(3)}
    assert all(oracle[x] == (x,) for x in range(3))
    assert root_perm(D3, W("a^2")).is_identity()


def test_level_perm_examples():
    P = get_entry("basilica_reduced").presentation
    for g in ("A", "B", "A*B^-1"):
        assert level_perm(P, W(g), 1) == root_perm(P, W(g))
    odo2 = level_perm(P, W("A*B^-1"), 2)
    assert len(odo2.cycles()) == 1 and odo2.degree == 16
    D2 = get_entry("dihedral2").presentation
    assert level_perm(D2, W("b^2"), 3).is_identity()


def test_level_perm_budget():
    P = get_entry("basilica_reduced").presentation
    with pytest.raises(BudgetExceeded):
        level_perm(P, W("A"), 6, limit=1000)


def test_level_perm_uses_lexicographic_numbering():
    P = get_entry("basilica").presentation
    rec = RECURSIONS["basilica"]
    table = oracle_perm(rec, oracle_word("b*a"), 3, 2)
    perm = level_perm(P, W("b*a"), 3)
    for v, img in table.items():
        assert perm(encode(v, 2)) == encode(img, 2)


# ---------------------------------------------------------------------------
# Properties
# ---------------------------------------------------------------------------

ENTRIES = {e.name: e for e in all_entries()}
ORACLE_NAMES = sorted(RECURSIONS)


@st.composite
def element_and_vertex(draw, max_len=6, max_level=4):
    name = draw(st.sampled_from(ORACLE_NAMES))
    P = ENTRIES[name].presentation
    factors = draw(st.lists(st.tuples(st.sampled_from(P.names), st.sampled_from([1, -1])),
                            max_size=max_len))
    v = draw(st.lists(st.integers(0, P.degree - 1), max_size=max_level))
    return name, P, Word(factors), list(factors), tuple(v)


@st.composite
def two_elements_and_vertex(draw, max_len=5, max_level=4):
    name = draw(st.sampled_from(ORACLE_NAMES))
    P = ENTRIES[name].presentation
    letters = st.tuples(st.sampled_from(P.names), st.sampled_from([1, -1]))
    g = Word(draw(st.lists(letters, max_size=max_len)))
    h = Word(draw(st.lists(letters, max_size=max_len)))
    v = draw(st.lists(st.integers(0, P.degree - 1), max_size=max_level))
    return P, g, h, tuple(v)


@settings(max_examples=300, deadline=None)
@given(element_and_vertex())
def test_act_matches_independent_evaluator(data):
    name, P, g, raw, v = data
    assert act(P, g, v) == oracle_apply(RECURSIONS[name], raw, v)


@settings(max_examples=200, deadline=None)
@given(element_and_vertex(), st.lists(st.integers(0, 4), max_size=3))
def test_act_length_and_prefix_preserving(data, tail):
    _, P, g, _, v = data
    tail = tuple(x % P.degree for x in tail)
    image = act(P, g, v + tail)
    assert len(image) == len(v) + len(tail)
    assert image[:len(v)] == act(P, g, v)
    # g(v u) = g(v) g_v(u)
    assert image[len(v):] == act(P, section(P, g, v), tail)


@pytest.mark.parametrize("name", ORACLE_NAMES)
def test_act_is_bijective_on_small_levels(name):
    P = ENTRIES[name].presentation
    for g in [Word.gen(n, s) for n in P.names for s in (1, -1)] + [W("*".join(P.names))]:
        for n in range(1, 4):
            images = {act(P, g, v) for v in itertools.product(range(P.degree), repeat=n)}
            assert len(images) == P.degree ** n


@settings(max_examples=200, deadline=None)
@given(two_elements_and_vertex())
def test_cocycle_rule(data):
    P, g, h, v = data
    lhs = section(P, g * h, v)
    rhs = section(P, g, act(P, h, v)) * section(P, h, v)
    assert are_equal(P, lhs, rhs).is_true


@settings(max_examples=200, deadline=None)
@given(element_and_vertex(), st.integers(0, 3))
def test_sections_compose(data, split):
    _, P, g, _, v = data
    v1, v2 = v[:split], v[split:]
    assert section(P, g, v) == section(P, section(P, g, v1), v2)


@settings(max_examples=200, deadline=None)
@given(two_elements_and_vertex())
def test_root_perm_is_a_homomorphism(data):
    P, g, h, _ = data
    assert root_perm(P, g * h) == root_perm(P, g) * root_perm(P, h)
    assert root_perm(P, g.inverse()) == root_perm(P, g).inverse()


def test_first_level_matches_recursion():
    P = get_entry("lamplighter4").presentation
    perm, secs = first_level(P, W("b"))
    assert perm == Perm.from_cycles(4, [[0, 2]])
    assert secs == (IDENTITY, W("b"), IDENTITY, IDENTITY)
