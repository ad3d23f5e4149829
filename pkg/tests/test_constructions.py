import itertools
import random

import pytest
from hypothesis import given, settings

from gfgkit.automata import Acceptance, Automaton, dualize, normalize
from gfgkit.constructions import (acw_to_dcw_pipeline, alternating_subset_construction,
                                  breakpoint, gfg_acw_to_dcw, minimize_dfa,
                                  rejecting_sinks, safety_determinize, subset_construction)
from gfgkit.fixtures import fixtures, split_universal
from gfgkit.gfg import NotGFGError
from gfgkit.oracle import equivalence, random_condition, random_safety, random_ubw
from gfgkit.products import accepts, accepts_finite, lassos
from oracles import nbw_accepts
from strategies import seeds


def random_afa(rng, n=None, ops=("and", "or")):
    n = n or rng.randint(1, 4)
    qs = [f"q{i}" for i in range(n)]
    delta = {(q, x): random_condition(rng, qs, 3, ops) for q in qs for x in "ab"}
    final = {q for q in qs if rng.random() < 0.5}
    return Automaton(("a", "b"), tuple(qs), "q0", delta, Acceptance.finite(final), "afa")


def words(max_len, alphabet="ab"):
    for k in range(max_len + 1):
        yield from itertools.product(alphabet, repeat=k)


def nerode_classes(dfa):
    """Number of language classes of reachable states by table filling."""
    d = dfa.trim()
    qs = list(d.states)
    step = {(q, x): d.delta[(q, x)].state for q in qs for x in d.alphabet}
    final = d.acceptance.states
    apart = {(p, q) for p in qs for q in qs if (p in final) != (q in final)}
    changed = True
    while changed:
        changed = False
        for p in qs:
            for q in qs:
                if (p, q) not in apart and any((step[(p, x)], step[(q, x)]) in apart
                                               for x in d.alphabet):
                    apart.add((p, q))
                    changed = True
    reps = []
    for q in qs:
        if all((q, r) in apart for r in reps):
            reps.append(q)
    return len(reps)


def test_breakpoint_state_names_on_split():
    bp = breakpoint(split_universal())
    assert bp.initial == "<q0/q0>"
    assert "<q1,q2/>" in bp.states
    assert bp.acceptance.states == frozenset({"<q1,q2/>"})
    assert bp.kind in ("deterministic", "nondeterministic")


def test_breakpoint_rejects_cobuchi():
    with pytest.raises(ValueError):
        breakpoint(fixtures()["D2"].automaton)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_breakpoint_preserves_language(rng):
    a = random_ubw(rng) if rng.random() < 0.5 else random_safety(rng)
    bp = breakpoint(normalize(a, "dnf"))
    assert len(bp.states) <= 3 ** len(a.states)
    for w in lassos("ab", 2, 3):
        assert nbw_accepts(bp, w) == accepts(a, w), w


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_alternating_subset_construction(rng):
    a = random_afa(rng)
    dfa = alternating_subset_construction(a)
    assert dfa.is_deterministic
    for w in words(5):
        assert accepts_finite(dfa, w) == accepts_finite(a, w), w


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_subset_construction(rng):
    a = random_afa(rng, ops=("or",))
    dfa = subset_construction(a)
    for w in words(5):
        assert accepts_finite(dfa, w) == accepts_finite(a, w), w


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_minimize_matches_nerode_count(rng):
    dfa = alternating_subset_construction(random_afa(rng))
    m = minimize_dfa(dfa)
    assert len(m.states) == nerode_classes(dfa)
    for w in words(5):
        assert accepts_finite(m, w) == accepts_finite(dfa, w)
    assert len(minimize_dfa(m).states) == len(m.states)


def test_minimize_counter_with_duplicate_states():
    qs = [f"c{i}" for i in range(6)]
    delta = {}
    for i, q in enumerate(qs):
        delta[(q, "a")] = qs[(i + 1) % 6]
        delta[(q, "b")] = q
    from gfgkit.automata import make_automaton
    a = make_automaton("ab", qs, "c0", delta, Acceptance.finite({"c0", "c3"}))
    m = minimize_dfa(a)
    assert len(m.states) == 3
    assert m.initial == "c0"


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_safety_determinize(rng):
    a = random_safety(rng)
    assert rejecting_sinks(a) is not None
    d = safety_determinize(a)
    assert d.is_deterministic
    for w in lassos("ab", 3, 3):
        assert accepts(d, w) == accepts(a, w), w


def test_rejecting_sinks_absent():
    assert rejecting_sinks(fixtures()["F2"].automaton) is None


@pytest.mark.parametrize("name", ["F3c", "D2", "D2-alt", "FinB-alt"])
def test_pipeline_outputs(name):
    fx = fixtures()[name]
    res = acw_to_dcw_pipeline(fx.automaton, fx.reference)
    assert res.result.is_deterministic
    assert res.result.acceptance.kind == "cobuchi"
    assert len(res.breakpoint.states) <= 3 ** len(fx.automaton.states)
    assert len(res.result.states) <= res.bound
    assert equivalence(res.result, fx.reference).verified
    assert res.summary()["output_states"] == len(res.result.states)


def test_pipeline_rejects_non_gfg():
    fx = fixtures()["F4"]
    f4c = dualize(fixtures()["F2"].automaton)
    assert f4c.acceptance.kind == "cobuchi"
    with pytest.raises(NotGFGError):
        gfg_acw_to_dcw(f4c, fx.reference)


def test_pipeline_rejects_buchi_input():
    fx = fixtures()["F1"]
    with pytest.raises(ValueError):
        gfg_acw_to_dcw(fx.automaton, fx.reference)
