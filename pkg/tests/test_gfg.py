import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from gfgkit import formulas as fm
from gfgkit.automata import dualize, normalize
from gfgkit.fixtures import fixtures, count_mod, count_mod_redundant
from gfgkit.games import ADAM, EVE
from gfgkit.gfg import (END, IndexAppearanceRecord, NotGFGError, RabinCondition, counter_arena,
                        determinize_gfg, extract_hd_transducers, finite_word_encoding, hd_replay,
                        is_gfg, letter_input, parity_disjunction, replay_adam, replay_eve,
                        residual_check, state_input)
from gfgkit.oracle import composition_test, equivalence, product_winner, random_automata
from gfgkit.products import accepts, accepts_finite, lassos, parse_lasso


@pytest.fixture(scope="module")
def fx():
    return fixtures()


@pytest.mark.parametrize("name,nondet,univ", [
    ("F1", True, True), ("F2", False, True), ("F3", True, True), ("F4", True, False),
    ("F3c", True, True), ("ABW3", True, True), ("D2-alt", True, True),
])
def test_verdicts(fx, name, nondet, univ):
    v = is_gfg(fx[name].automaton, fx[name].reference)
    assert (v.nondeterminism_compliant, v.universality_compliant) == (nondet, univ)


def test_f2_has_counter_strategy_and_no_witness(fx):
    v = is_gfg(fx["F2"].automaton, fx["F2"].reference)
    assert v.eve_witness is None and v.nondet_counter is not None
    assert v.adam_witness is not None
    with pytest.raises(NotGFGError) as err:
        extract_hd_transducers(fx["F2"].automaton, fx["F2"].reference, v)
    assert err.value.verdict is v


def test_f2_counter_arena_beats_automaton(fx):
    v = is_gfg(fx["F2"].automaton, fx["F2"].reference)
    arena = counter_arena(v.nondet_counter, ADAM)
    assert not any(arena.eve)
    assert product_winner(arena, fx["F2"].reference) == EVE
    assert product_winner(arena, fx["F2"].automaton) == ADAM


def test_f4_counter_arena_is_eve_only(fx):
    v = is_gfg(fx["F4"].automaton, fx["F4"].reference)
    (arena,) = v.counter_arenas()
    assert all(arena.eve)
    assert product_winner(arena, fx["F4"].reference) == ADAM
    assert product_winner(arena, fx["F4"].automaton) == EVE


def test_witness_shapes(fx):
    a = fx["D2-alt"].automaton
    v = is_gfg(a, fx["D2-alt"].reference)
    dnf = normalize(a, "dnf")
    m_e, m_a = v.eve_witness, v.adam_witness
    assert m_e.problems() == [] and m_a.problems() == []
    assert {letter_input(x) for x in a.alphabet} <= set(m_e.inputs)
    assert {state_input(q) for q in a.states} <= set(m_e.inputs)
    clauses = {c for cond in dnf.delta.values() for c in fm.dnf_clauses(cond)}
    for out in m_e.chi.values():
        assert out is None or out in clauses
    for x, clause in m_a.inputs:
        assert x in a.alphabet and clause in clauses
    assert set(m_a.chi.values()) <= set(a.states)


@pytest.mark.parametrize("name", ["F1", "F3", "F3c", "ABW3", "InfA-alt", "FinB-alt", "D2-alt"])
def test_witnesses_win_replays(fx, name):
    a = fx[name].automaton
    v = is_gfg(a, fx[name].reference)
    dnf = normalize(a, "dnf")
    for w in lassos(a.alphabet, 3, 3):
        if accepts(a, w):
            assert replay_eve(dnf, v.eve_witness, w), w
        else:
            assert replay_adam(dnf, v.adam_witness, w), w


def test_replay_of_non_gfg_reports_failure(fx):
    v = is_gfg(fx["F2"].automaton, fx["F2"].reference)
    rep = hd_replay(fx["F2"].automaton, v)
    assert not rep.nondeterminism_hd and rep.universality_hd
    assert not rep.is_gfg


def test_rabin_pairs_of_parity_disjunction():
    r = parity_disjunction([1, 2], [1, 2])
    assert len(r.pairs) == 2
    assert r.holds_on_cycle([(2, 1)])
    assert r.holds_on_cycle([(1, 2)])
    assert not r.holds_on_cycle([(1, 1)])


def test_iar_step_by_hand():
    r = RabinCondition([({1}, {2}), ({2}, set())])
    iar = IndexAppearanceRecord(r)
    assert iar.step((0, 1), 2) == (4, (0, 1))
    assert iar.step((0, 1), 1) == (2, (0, 1))
    assert iar.step((1, 0), 2) == (5, (0, 1))
    assert iar.step((0, 1), 3) == (1, (0, 1))


def iar_cycle_parity(iar, cycle):
    rec = iar.initial
    seen = {}
    prios = []
    while rec not in seen:
        seen[rec] = len(prios)
        for c in cycle:
            p, rec = iar.step(rec, c)
            prios.append(p)
    return max(prios[seen[rec]:]) % 2 == 0


colours = st.tuples(st.integers(0, 3), st.integers(0, 3))


@settings(max_examples=300, deadline=None)
@given(st.lists(colours, min_size=1, max_size=6))
def test_iar_agrees_with_rabin_condition(cycle):
    r = parity_disjunction(range(4), range(4))
    assert iar_cycle_parity(IndexAppearanceRecord(r), cycle) == r.holds_on_cycle(cycle)


def test_finite_word_encoding_membership():
    mod = count_mod_redundant(3, "or")
    enc = finite_word_encoding(mod)
    assert enc.acceptance.kind == "weak"
    assert END in enc.alphabet
    for n in range(6):
        word = "a" * n
        w = parse_lasso(f"{word}{END}(a)^w")
        assert accepts(enc, w) == accepts_finite(mod, word) == (n % 3 == 0)
    assert not accepts(enc, parse_lasso("(a)^w"))


def test_determinize_f3(fx):
    v = is_gfg(fx["F3"].automaton, fx["F3"].reference)
    dnf = normalize(fx["F3"].automaton, "dnf")
    det = determinize_gfg(dnf, v.eve_witness, v.adam_witness)
    assert det.is_deterministic
    assert all(s.startswith("[") for s in det.states)
    assert equivalence(det, fx["F3"].reference).verified


def test_determinize_rejects_finite_acceptance():
    with pytest.raises(ValueError):
        determinize_gfg(count_mod(3), None, None)


@pytest.mark.parametrize("k", [3, 4, 5, 6])
def test_residual_classes_of_counters(k):
    for op in ("or", "and"):
        a = count_mod_redundant(k, op)
        v = is_gfg(a, count_mod(k))
        r = residual_check(a, v.eve_witness, v.adam_witness)
        assert r.passed and r.minimal_size == k and r.bound == k + 1


def test_verdict_summary_is_plain_data(fx):
    v = is_gfg(fx["F2"].automaton, fx["F2"].reference)
    s = v.summary()
    assert s["gfg"] is False and s["conditional"] is True
    assert s["nondet_counter_memory"] >= 1


def test_dual_swaps_flags_on_random_automata():
    for a, d in random_automata(12, seed=5):
        v = is_gfg(a, d, witnesses=False)
        w = is_gfg(dualize(a), dualize(d), witnesses=False)
        assert (v.nondeterminism_compliant, v.universality_compliant) == \
            (w.universality_compliant, w.nondeterminism_compliant)


def test_non_gfg_sweep_counter_arenas_discriminate():
    """More seeds than the acceptance run, keeping only non-GFG cases."""
    seen = 0
    for a, d in random_automata(120, seed=9):
        v = is_gfg(a, d)
        if v.is_gfg:
            continue
        seen += 1
        for arena in v.counter_arenas():
            assert product_winner(arena, d) != product_winner(arena, a), a.name
        rep = composition_test(a, d, trials=30, seed=3, verdict=v, verified=True)
        assert not rep.agrees
    assert seen >= 5
