"""Named automata with deterministic references, used by tests and the CLI."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Dict, Optional

from . import formulas as fm
from .automata import Acceptance, Automaton, dualize, make_automaton
from .oracle import redundant


@dataclass(frozen=True)
class Fixture:
    name: str
    automaton: Automaton
    reference: Automaton
    gfg: Optional[bool]
    note: str = ""


def all_words() -> Automaton:
    """F1: one accepting state looping on a and b."""
    return make_automaton("ab", ["s"], "s", {("s", "a"): "s", ("s", "b"): "s"},
                          Acceptance.buchi({"s"}), "F1")


def fin_a_or_fin_b() -> Automaton:
    """F2: guess when the word becomes constant."""
    pick = fm.disj("q0", "qa", "qb")
    return make_automaton("ab", ["q0", "qa", "qb", "r"], "q0", {
        ("q0", "a"): pick, ("q0", "b"): pick,
        ("qa", "a"): "qa", ("qa", "b"): "r",
        ("qb", "b"): "qb", ("qb", "a"): "r",
        ("r", "a"): "r", ("r", "b"): "r",
    }, Acceptance.buchi({"qa", "qb"}), "F2")


def finitely_many_switches() -> Automaton:
    """D2: remembers the last letter and whether it just changed; the two
    'just changed' states are rejecting."""
    return make_automaton("ab", ["a0", "a1", "b0", "b1"], "a0", {
        ("a0", "a"): "a0", ("a0", "b"): "b1",
        ("a1", "a"): "a0", ("a1", "b"): "b1",
        ("b0", "b"): "b0", ("b0", "a"): "a1",
        ("b1", "b"): "b0", ("b1", "a"): "a1",
    }, Acceptance.cobuchi({"a1", "b1"}), "D2")


def redundant_or() -> Automaton:
    """F3: two accepting states, each moving to either."""
    either = fm.disj("p", "q")
    return make_automaton("a", ["p", "q"], "p", {("p", "a"): either, ("q", "a"): either},
                          Acceptance.buchi({"p", "q"}), "F3")


def redundant_or_cobuchi() -> Automaton:
    """F3 with co-Büchi acceptance rejecting q: Eve must keep choosing p."""
    either = fm.disj("p", "q")
    return make_automaton("a", ["p", "q"], "p", {("p", "a"): either, ("q", "a"): either},
                          Acceptance.cobuchi({"q"}), "F3c")


def only_a() -> Automaton:
    return make_automaton("a", ["s"], "s", {("s", "a"): "s"}, Acceptance.buchi({"s"}), "Aw")


def split_universal() -> Automaton:
    """Three-state ABW: q0 splits into two accepting self-loops."""
    return make_automaton("ab", ["q0", "q1", "q2"], "q0", {
        ("q0", "a"): fm.conj("q1", "q2"), ("q0", "b"): fm.conj("q1", "q2"),
        ("q1", "a"): "q1", ("q1", "b"): "q1", ("q2", "a"): "q2", ("q2", "b"): "q2",
    }, Acceptance.buchi({"q1", "q2"}), "ABW3")


def infinitely_many_a() -> Automaton:
    return make_automaton("ab", ["sa", "sb"], "sb", {
        ("sa", "a"): "sa", ("sa", "b"): "sb", ("sb", "a"): "sa", ("sb", "b"): "sb",
    }, Acceptance.buchi({"sa"}), "InfA")


def finitely_many_b() -> Automaton:
    return make_automaton("ab", ["sa", "sb"], "sa", {
        ("sa", "a"): "sa", ("sa", "b"): "sb", ("sb", "a"): "sa", ("sb", "b"): "sb",
    }, Acceptance.cobuchi({"sb"}), "FinB")


def weak_all() -> Automaton:
    return make_automaton("ab", ["s"], "s", {("s", "a"): "s", ("s", "b"): "s"},
                          Acceptance.weak({"s"}), "Wall")


def has_b() -> Automaton:
    return make_automaton("ab", ["n", "y"], "n", {
        ("n", "a"): "n", ("n", "b"): "y", ("y", "a"): "y", ("y", "b"): "y",
    }, Acceptance.weak({"y"}), "HasB")


def no_bb() -> Automaton:
    return make_automaton("ab", ["s0", "s1", "x"], "s0", {
        ("s0", "a"): "s0", ("s0", "b"): "s1", ("s1", "a"): "s0", ("s1", "b"): "x",
        ("x", "a"): "x", ("x", "b"): "x",
    }, Acceptance.weak({"s0", "s1"}), "NoBB")


def count_mod(k: int) -> Automaton:
    """Minimal k-state DFA: the number of a's is divisible by k."""
    qs = [f"c{i}" for i in range(k)]
    delta = {}
    for i, q in enumerate(qs):
        delta[(q, "a")] = qs[(i + 1) % k]
        delta[(q, "b")] = q
    return make_automaton("ab", qs, "c0", delta, Acceptance.finite({"c0"}), f"Mod{k}")


def count_mod_redundant(k: int, op: str = "or") -> Automaton:
    """count_mod(k) plus a copy of c0 reached through an Or (or And)."""
    return redundant(count_mod(k), random.Random(k), copies=["c0"], ops=(op,),
                     name=f"Mod{k}{op.capitalize()}")


def fixtures() -> Dict[str, Fixture]:
    f2 = fin_a_or_fin_b()
    d2 = finitely_many_switches()
    inf_a = infinitely_many_a()
    fin_b = finitely_many_b()
    f4 = dualize(f2)
    f4 = Automaton(f4.alphabet, f4.states, f4.initial, f4.delta, f4.acceptance, "F4")
    d4 = dualize(d2)
    d4 = Automaton(d4.alphabet, d4.states, d4.initial, d4.delta, d4.acceptance, "D4")
    rng = random.Random(7)
    items = [
        Fixture("F1", all_words(), all_words(), True, "all words"),
        Fixture("F2", f2, d2, False, "finitely many a's or finitely many b's"),
        Fixture("F3", redundant_or(), only_a(), True, "redundant Or"),
        Fixture("F4", f4, d4, False, "dual of F2"),
        Fixture("F3c", redundant_or_cobuchi(), only_a(), True, "co-Büchi redundant Or"),
        Fixture("D2", d2, d2, True, "deterministic co-Büchi"),
        Fixture("ABW3", split_universal(), all_words(), True, "universal split"),
        Fixture("InfA-alt", redundant(inf_a, rng, name="InfAalt"), inf_a, True,
                "alternating Büchi with twins"),
        Fixture("FinB-alt", redundant(fin_b, rng, name="FinBalt"), fin_b, True,
                "alternating co-Büchi with twins"),
        Fixture("D2-alt", redundant(d2, rng, copies=["a1"], name="D2alt"), d2, True,
                "alternating co-Büchi with one twin"),
        Fixture("Wall", weak_all(), weak_all(), True, "weak, all words"),
        Fixture("HasB-alt", redundant(has_b(), rng, name="HasBalt"), has_b(), True,
                "alternating weak with twins"),
        Fixture("NoBB-alt", redundant(no_bb(), rng, copies=["s0", "s1"], name="NoBBalt"),
                no_bb(), True, "alternating weak with twins"),
    ]
    for k in range(3, 7):
        items.append(Fixture(f"Mod{k}-or", count_mod_redundant(k, "or"), count_mod(k), True,
                             "DFA with a redundant Or"))
        items.append(Fixture(f"Mod{k}-and", count_mod_redundant(k, "and"), count_mod(k), True,
                             "DFA with a redundant And"))
    return {f.name: f for f in items}
