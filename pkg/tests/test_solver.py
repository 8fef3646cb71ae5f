import pytest

from conftest import RECURSIONS, oracle_is_identity, oracle_word
from treeauto.catalog import get_entry
from treeauto.core import IDENTITY, section, root_perm
from treeauto.solver import (Decision, are_equal, evaluate_product, is_trivial, member_search,
                             order_up_to, section_closure)
from treeauto.textformat import parse, parse_word


def W(text):
    return parse_word(text)


def P_of(name):
    return get_entry(name).presentation


def test_decision_is_three_valued():
    d = Decision(None, budget_spent=5)
    assert d.is_unknown and not d.decided
    assert Decision(True).label() == "True"
    assert d.label() == "unknown"
    with pytest.raises(TypeError):
        bool(d)


def test_odometer_word_is_nontrivial_at_the_root():
    dec = is_trivial(P_of("basilica_reduced"), W("A*B^-1"))
    assert dec.is_false
    assert dec.witness == ()


def test_witness_points_at_a_moved_vertex():
    P = P_of("basilica_reduced")
    g = W("A^2*B^2*A^-2*B^-2")
    dec = is_trivial(P, g)
    assert dec.is_false
    assert not root_perm(P, section(P, g, dec.witness)).is_identity()


@pytest.mark.parametrize("name, word", [
    ("lamplighter4", "b^2"),
    ("dihedral3", "a^2"),
    ("dihedral2", "b^2"),
    ("basilica_reduced", "A*A^-1"),
    ("lamplighter4", "b*a*b*a^-1*b*a*b^-1*a^-1"),
])
def test_trivial_words(name, word):
    assert is_trivial(P_of(name), W(word)).is_true
    assert oracle_is_identity(RECURSIONS[name], oracle_word(word), 4, P_of(name).degree)


@pytest.mark.parametrize("name, word", [
    ("basilica", "a*b*a^-1*b^-1"),
    ("dihedral3", "a*b"),
    ("G3", "g*h*g^-1*h^-1"),
    ("weak_selfrep2", "a"),
])
def test_nontrivial_words_agree_with_brute_force(name, word):
    P = P_of(name)
    dec = is_trivial(P, W(word))
    assert dec.is_false
    assert not oracle_is_identity(RECURSIONS.get(name, {}) or RECURSIONS[name],
                                  oracle_word(word), len(dec.witness) + 1, P.degree)


def test_greatest_fixed_point_on_non_closed_input():
    # a = (a*b, 1), b = (b, 1): every section has an identity root, so a is
    # trivial, but the closure a, a*b, a*b^2, ... never closes.
    P = parse("a = (a*b, 1)\nb = (b, 1)")
    dec = is_trivial(P, W("a"), budget=50)
    assert dec.is_unknown
    assert dec.budget_spent > 50


def test_doubling_sections_hit_the_length_cap():
    P = parse("a = (a^2, 1)")
    assert is_trivial(P, W("a"), budget=10**6).is_unknown


def test_closure_of_a_trivial_cycle_terminates():
    P = parse("a = (a, a)\nb = (b, a)")
    assert is_trivial(P, W("a*b^-1")).is_true


def test_are_equal_examples():
    P = P_of("weak_selfrep2")
    assert are_equal(P, W("s*a*s"), W("a^-1")).is_true
    assert are_equal(P, W("a"), W("a")).is_true
    assert are_equal(P, W("a"), W("s")).is_false


def test_order_up_to():
    D3 = P_of("dihedral3")
    assert order_up_to(D3, W("a"), 4).witness == 2
    dec = order_up_to(D3, W("a*b"), 32)
    assert dec.is_false
    assert order_up_to(D3, IDENTITY, 3).witness == 1
    G = P_of("ggs3_12")
    assert order_up_to(G, W("a"), 12).witness == 3
    with pytest.raises(ValueError):
        order_up_to(D3, W("a"), 0)


def test_order_unknown_propagates():
    P = parse("a = (a*b, 1)\nb = (b, 1)\ns = (0 1) (1, 1)")
    assert order_up_to(P, W("s*a"), 4, budget=20).is_unknown


def test_section_closure_examples():
    P = P_of("basilica_reduced")
    cl = section_closure(P, W("A"))
    assert set(cl.nodes) == {W("A"), IDENTITY}
    assert len(cl) == 2
    cl = section_closure(P, W("A*B^-1"))
    assert set(cl.nodes) == {W("A*B^-1"), IDENTITY}
    assert set(section_closure(P, IDENTITY).nodes) == {IDENTITY}


def test_section_closure_is_closed():
    P = P_of("basilica")
    cl = section_closure(P, W("a*b^-1*a"))
    for w in cl.nodes:
        for x in range(P.degree):
            assert cl.edges[(w, x)] in cl


def test_member_search_finds_and_verifies():
    P = P_of("basilica_reduced")
    gens = [W("A*B^-1"), W("B")]
    found = member_search(P, W("A"), gens, radius=3)
    assert found is not None
    assert are_equal(P, evaluate_product(gens, found), W("A")).is_true
    assert member_search(P, IDENTITY, gens) == []


def test_member_search_gives_up_within_radius():
    P = P_of("lamplighter4")
    assert member_search(P, W("a"), [W("b")], radius=4) is None
