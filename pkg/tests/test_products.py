import pytest
from hypothesis import given, settings

from gfgkit import formulas as fm
from gfgkit.automata import Acceptance, make_automaton
from gfgkit.fixtures import fin_a_or_fin_b, finitely_many_switches, fixtures
from gfgkit.games import ADAM, EVE, Arena, solve_parity
from gfgkit.oracle import random_arena, random_game
from gfgkit.products import (LassoWord, accepts, accepts_finite, compose, game_as_automaton,
                             lassos, model_checking_game, parse_lasso, synchronized_product)
from strategies import lasso_words, seeds


def test_lasso_canonical_form():
    assert LassoWord.of("aba", "ba") == LassoWord.of("a", "ba")
    assert LassoWord.of("", "abab") == LassoWord.of("", "ab")
    assert str(parse_lasso("aba(ba)^w")) == "(ab)^w"


def test_lasso_parse_errors():
    with pytest.raises(ValueError):
        parse_lasso("abab")
    with pytest.raises(ValueError):
        parse_lasso("a()^w")


def test_multi_character_letters():
    w = parse_lasso("x1.x2(y)^w")
    assert w.prefix == ("x1", "x2") and w.period == ("y",)


def test_lassos_enumerates_each_word_once():
    words = list(lassos("ab", 2, 2))
    assert len(words) == len(set(words))
    assert words[0] == parse_lasso("(a)^w")


@given(lasso_words())
def test_lasso_take_matches_period(w):
    n = len(w)
    assert w.take(n + len(w.period))[-len(w.period):] in {
        w.period[k:] + w.period[:k] for k in range(len(w.period))}


def test_f2_product_with_alternating_adam_arena():
    arena = Arena(["u", "v"], [[1], [0]], [], ["a", "b"], 0)
    g = synchronized_product(arena, fin_a_or_fin_b())
    assert solve_parity(g).winner(g.root) == ADAM
    g = synchronized_product(arena, finitely_many_switches())
    assert solve_parity(g).winner(g.root) == ADAM


def test_product_vertex_shapes():
    arena = Arena(["u"], [[0]], [], ["a"], 0)
    g = synchronized_product(arena, fin_a_or_fin_b())
    for i, (v, b) in enumerate(g.names):
        if isinstance(b, fm.Leaf):
            assert g.priority[i] >= 2
        else:
            assert g.priority[i] == 0
            assert g.eve[i] == isinstance(b, fm.Or)


def test_product_rejects_unknown_label():
    arena = Arena(["u"], [[0]], [], ["c"], 0)
    with pytest.raises(ValueError):
        synchronized_product(arena, fin_a_or_fin_b())


def test_model_checking_game_rejects_foreign_letter():
    with pytest.raises(ValueError):
        model_checking_game(parse_lasso("(c)^w"), fin_a_or_fin_b())


@settings(max_examples=150, deadline=None)
@given(seeds)
def test_game_as_automaton_matches_solver(rng):
    g = random_game(rng, max_vertices=8, max_priority=3)
    g.root = 0
    a = game_as_automaton(g)
    assert accepts(a, parse_lasso("(a)^w")) == (solve_parity(g).winner(0) == EVE)


def test_finite_membership():
    mod = fixtures()["Mod3-and"].automaton
    for n in range(7):
        assert accepts_finite(mod, "a" * n + "b") == (n % 3 == 0)


def outer_automaton():
    """Alternating automaton over {a, b} whose states carry inner letters."""
    return make_automaton("ab", ["x", "y", "z"], "x", {
        ("x", "a"): fm.disj("x", "y"), ("x", "b"): fm.conj("y", "z"),
        ("y", "a"): "z", ("y", "b"): fm.disj("x", "z"),
        ("z", "a"): fm.conj("x", "y"), ("z", "b"): "z",
    }, Acceptance.labels({"x": "a", "y": "b", "z": "a"}), "B")


@pytest.mark.parametrize("name", ["InfA-alt", "FinB-alt", "D2-alt", "F3c"])
def test_composition_with_gfg_inner_matches_reference(name):
    fx = fixtures()[name]
    outer = outer_automaton()
    if set(fx.automaton.alphabet) != {"a", "b"}:
        outer = make_automaton("ab", ["x"], "x", {("x", "a"): "x", ("x", "b"): "x"},
                               Acceptance.labels({"x": "a"}), "B1")
    left = compose(outer, fx.automaton)
    right = compose(outer, fx.reference)
    for w in lassos("ab", 3, 3):
        assert accepts(left, w) == accepts(right, w), w


def test_compose_needs_labels():
    with pytest.raises(ValueError):
        compose(fin_a_or_fin_b(), fin_a_or_fin_b())


@settings(max_examples=40, deadline=None)
@given(seeds)
def test_random_arenas_have_requested_shape(rng):
    for variant in ("two-player", "adam", "eve"):
        g = random_arena(rng, "ab", 8, variant)
        assert 1 <= len(g) <= 8 and g.root == 0
        assert all(1 <= len(s) <= 3 for s in g.succ)
        if variant == "adam":
            assert not any(g.eve)
        if variant == "eve":
            assert all(g.eve)
