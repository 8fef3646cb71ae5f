import pytest

from treeauto.catalog import (all_entries, basilica_reduced, g_p, get_entry, ggs,
                              pairwise_distinct, verify_entry, wreath_is)
from treeauto.core import IDENTITY
from treeauto.structure import is_generalized_basilica
from treeauto.textformat import parse, parse_word


def W(text):
    return parse_word(text)


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.name)
def test_entry_verifies(entry):
    results = verify_entry(entry)
    assert results
    failed = [(r.label, r.detail) for r in results if not r.passed]
    assert not failed


def test_entry_names_are_unique_and_lookup_works():
    names = [e.name for e in all_entries()]
    assert len(names) == len(set(names))
    assert get_entry("G3").presentation.degree == 3
    with pytest.raises(KeyError):
        get_entry("nope")


@pytest.mark.parametrize("entry", all_entries(), ids=lambda e: e.name)
def test_text_round_trip(entry):
    assert parse(entry.text()) == entry.presentation
    assert set(entry.Y) <= set(entry.presentation.names)


def test_ggs_rejections():
    with pytest.raises(ValueError):
        ggs(3, (0, 0))
    with pytest.raises(ValueError):
        ggs(4, (1, 2, 3))
    with pytest.raises(ValueError):
        ggs(3, (1,))


def test_ggs_with_single_power_section():
    entry = ggs(3, (1, 0))
    P = entry.presentation
    assert P.names == ["a", "b"]
    assert P["b"].transitions == (W("a"), IDENTITY, W("b"))
    assert not is_generalized_basilica(P)


def test_ggs_power_states_are_powers():
    P = ggs(5, (2, 0, 3, 1)).presentation
    assert P.names == ["a", "a2", "a3", "b"]
    assert P["a3"].perm == P["a"].perm ** 3


def test_wreath_is_helper():
    P = basilica_reduced().presentation
    assert wreath_is(P, W("A^2"), [], [IDENTITY, IDENTITY, W("A"), W("A")])
    assert not wreath_is(P, W("A^2"), [[2, 3]], [IDENTITY, IDENTITY, W("A"), W("A")])


def test_pairwise_distinct_helper():
    P = g_p(3).presentation
    assert pairwise_distinct(P, [W("g"), W("h"), IDENTITY])
    assert not pairwise_distinct(P, [W("g"), W("g*h*h^-1")])


def test_g_p_rejects_bad_prime():
    with pytest.raises(ValueError):
        g_p(4)
