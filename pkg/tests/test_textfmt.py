import pytest
from hypothesis import given, settings

from gfgkit.fixtures import fixtures
from gfgkit.games import Arena, ParityGame, solve_parity
from gfgkit.gfg import is_gfg
from gfgkit.oracle import random_automata, random_game
from gfgkit.textfmt import (ParseError, parse_arena, parse_automaton, parse_condition,
                            render_arena, render_automaton, render_transducer)
from gfgkit import formulas as fm
from strategies import conditions, seeds

F2_TEXT = """\
automaton F2
alphabet: a b
states: q0 qa qb r
initial: q0
acceptance: buchi { qa qb }
delta q0 a = q0 | qa | qb
delta q0 b = q0 | qa | qb
delta qa a = qa
delta qa b = r
delta qb a = r
delta qb b = qb
delta r a = r
delta r b = r
"""


def test_render_f2_is_stable():
    assert render_automaton(fixtures()["F2"].automaton) == F2_TEXT


@pytest.mark.parametrize("name", list(fixtures()))
def test_round_trip(name):
    a = fixtures()[name].automaton
    b = parse_automaton(render_automaton(a))
    assert (b.alphabet, b.states, b.initial, b.delta, b.acceptance) == \
        (a.alphabet, a.states, a.initial, a.delta, a.acceptance)


def test_round_trip_random():
    for a, _ in random_automata(16, seed=3):
        b = parse_automaton(render_automaton(a))
        assert b.delta == a.delta and b.acceptance == a.acceptance


def test_missing_delta_line_is_a_totality_error():
    text = F2_TEXT.replace("delta r b = r\n", "")
    with pytest.raises(ParseError) as err:
        parse_automaton(text)
    assert "totality: missing delta line for state 'r' letter 'b'" in str(err.value)


def test_duplicate_delta_line_is_reported_with_position():
    text = F2_TEXT + "delta r b = r\n"
    with pytest.raises(ParseError) as err:
        parse_automaton(text)
    assert err.value.line == 14


def test_unknown_state_in_condition():
    text = F2_TEXT.replace("delta r b = r", "delta r b = r | zz")
    with pytest.raises(ParseError) as err:
        parse_automaton(text)
    assert "zz" in str(err.value)


def test_comments_and_blank_lines_are_ignored():
    text = "# comment\n\n" + F2_TEXT.replace("delta qa a = qa", "delta qa a = qa  # loop")
    assert parse_automaton(text).delta == fixtures()["F2"].automaton.delta


def test_condition_precedence():
    assert parse_condition("p | q & r") == fm.disj("p", fm.conj("q", "r"))
    assert parse_condition("(p | q) & r") == fm.conj(fm.disj("p", "q"), "r")


def test_condition_syntax_error_has_column():
    with pytest.raises(ParseError) as err:
        parse_condition("p & | q")
    assert err.value.column >= 1


@given(conditions)
def test_condition_text_round_trip(c):
    assert parse_condition(fm.to_text(c)) == c


def test_parity_and_labels_acceptance_round_trip():
    text = F2_TEXT.replace("acceptance: buchi { qa qb }",
                           "acceptance: parity { q0:1 qa:2 qb:2 r:1 }")
    a = parse_automaton(text)
    assert a.acceptance.kind == "parity" and a.priority("qa") == 2
    assert parse_automaton(render_automaton(a)).acceptance == a.acceptance


def test_arena_round_trip():
    arena = Arena(["u", "v"], [[1], [0]], [], ["a", "b"], 0)
    back = parse_arena(render_arena(arena, "g"))
    assert not isinstance(back, ParityGame)
    assert back.succ == arena.succ and back.labels == arena.labels and back.root == 0


@settings(max_examples=50, deadline=None)
@given(seeds)
def test_game_round_trip(rng):
    g = random_game(rng)
    g.root = 0
    back = parse_arena(render_arena(g))
    assert isinstance(back, ParityGame)
    assert solve_parity(back).eve == solve_parity(g).eve


def test_arena_errors():
    with pytest.raises(ParseError):
        parse_arena("vertex u owner=X\nedge u -> u\n")
    with pytest.raises(ParseError):
        parse_arena("vertex u owner=E\n")
    with pytest.raises(ParseError):
        parse_arena("vertex u owner=E priority=1\nvertex v owner=A\nedge u -> v\nedge v -> u\n")


def test_render_transducer_lists_memories():
    f = fixtures()["F3"]
    v = is_gfg(f.automaton, f.reference)
    text = render_transducer(v.eve_witness, "M_E")
    assert text.startswith("transducer M_E")
