from hypothesis import given

from gfgkit import formulas as fm
from gfgkit.formulas import And, Leaf, Or
from strategies import conditions, valuations


def test_connectives_flatten_sort_and_dedupe():
    c = fm.conj("q", fm.conj("p", "q"), "r")
    assert c == And([Leaf("p"), Leaf("q"), Leaf("r")])
    assert fm.disj("p", "p") == Leaf("p")
    assert fm.disj(fm.disj("b", "a"), "c") == fm.disj("c", "b", "a")


def test_empty_connective_is_rejected():
    try:
        fm.conj([])
    except ValueError:
        return
    raise AssertionError("empty conjunction accepted")


def test_dnf_and_cnf_of_small_formula():
    c = fm.conj("p", fm.disj("q", "r"))
    assert fm.dnf_clauses(c) == [frozenset("pq"), frozenset("pr")]
    assert sorted(map(sorted, fm.cnf_clauses(c))) == [["p"], ["q", "r"]]


def test_absorption_keeps_minimal_clauses():
    c = fm.disj("p", fm.conj("p", "q"))
    assert fm.to_dnf(c) == Leaf("p")


def test_text_rendering():
    c = fm.disj(fm.conj("p", "q"), "r")
    assert fm.to_text(c) == "r | p & q"


@given(conditions)
def test_canonical_is_idempotent(c):
    assert fm.canonical(c) == c
    assert fm.canonical(fm.canonical(c)) == fm.canonical(c)


@given(conditions, valuations)
def test_normal_forms_preserve_truth(c, true_states):
    v = fm.evaluate(c, true_states)
    assert fm.evaluate(fm.to_dnf(c), true_states) == v
    assert fm.evaluate(fm.to_cnf(c), true_states) == v


@given(conditions, valuations)
def test_swap_is_boolean_dual(c, true_states):
    complement = set("pqrs") - set(true_states)
    assert fm.evaluate(fm.swap(c), true_states) == (not fm.evaluate(c, complement))


@given(conditions)
def test_swap_is_an_involution(c):
    assert fm.swap(fm.swap(c)) == c


@given(conditions)
def test_dnf_clauses_form_an_antichain(c):
    clauses = fm.dnf_clauses(c)
    for x in clauses:
        for y in clauses:
            assert x == y or not x <= y


@given(conditions)
def test_no_nested_same_connective(c):
    for s in fm.subformulas(c):
        if isinstance(s, (And, Or)):
            assert all(type(o) is not type(s) for o in s.ops)
            assert list(s.ops) == sorted(set(s.ops))
