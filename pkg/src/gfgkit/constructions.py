"""Alternation and nondeterminism removal: breakpoint, subset constructions,
DFA minimization and the co-Büchi GFG determinization pipeline."""
from __future__ import annotations

import itertools
from collections import deque
from dataclasses import dataclass
from typing import Dict, FrozenSet, List, Optional, Tuple

from . import formulas as fm
from .automata import (BUCHI, COBUCHI, FINITE, WEAK, Acceptance, Automaton, Transducer,
                       dualize, normalize)
from .formulas import Leaf


def _ordered(a: Automaton, states) -> List[str]:
    pos = {q: i for i, q in enumerate(a.states)}
    return sorted(states, key=pos.__getitem__)


def _explore(start, step, alphabet):
    """BFS over hashable states; ``step(s, x)`` gives the successor."""
    order = [start]
    seen = {start}
    trans = {}
    queue = deque([start])
    while queue:
        s = queue.popleft()
        for x in alphabet:
            t = step(s, x)
            trans[(s, x)] = t
            if t not in seen:
                seen.add(t)
                order.append(t)
                queue.append(t)
    return order, trans


def _unique_names(order, naming):
    names = {s: naming(s) for s in order}
    if len(set(names.values())) != len(names):
        names = {s: f"s{i}" for i, s in enumerate(order)}
    return names


def breakpoint(a: Automaton) -> Automaton:
    """Miyano-Hayashi construction: nondeterministic Büchi automaton for an
    alternating Büchi (or weak) automaton.

    States are pairs <S, O> with O a subset of S; O holds the states still
    owing a visit to the accepting set.  Successors are generated per letter
    by choosing one DNF clause for every state of S.
    """
    kind = a.acceptance.kind
    if kind not in (BUCHI, WEAK):
        raise ValueError(f"breakpoint needs Büchi acceptance, got {kind}")
    acc = a.acceptance.states
    dnf = {k: fm.dnf_clauses(c) for k, c in a.delta.items()}

    def succ(state, x):
        s, o = state
        s_list = sorted(s)
        out = set()
        for pick in itertools.product(*(dnf[(q, x)] for q in s_list)):
            chosen = dict(zip(s_list, pick))
            s2 = frozenset().union(*pick)
            if not o:
                o2 = s2 - acc
            else:
                o2 = frozenset().union(*(chosen[q] for q in o)) - acc
            out.add((s2, o2))
        return sorted(out, key=lambda p: (sorted(p[0]), sorted(p[1])))

    start = (frozenset((a.initial,)), frozenset((a.initial,)) - acc)
    order = [start]
    seen = {start}
    edges = {}
    queue = deque([start])
    while queue:
        st = queue.popleft()
        for x in a.alphabet:
            nxt = succ(st, x)
            edges[(st, x)] = nxt
            for t in nxt:
                if t not in seen:
                    seen.add(t)
                    order.append(t)
                    queue.append(t)
    n = len(a.states)
    if len(order) > 3 ** n:
        raise AssertionError(f"breakpoint produced {len(order)} > 3^{n} states")

    def naming(st):
        s, o = st
        return "<" + ",".join(_ordered(a, s)) + "/" + ",".join(_ordered(a, o)) + ">"

    names = _unique_names(order, naming)
    delta = {(names[st], x): fm.disj([names[t] for t in nxt]) for (st, x), nxt in edges.items()}
    accepting = {names[st] for st in order if not st[1]}
    return Automaton(a.alphabet, [names[st] for st in order], names[start], delta,
                     Acceptance.buchi(accepting), f"bp({a.name})")


def subset_construction(a: Automaton) -> Automaton:
    """Reachable subset automaton of a nondeterministic finite-word automaton."""
    if a.acceptance.kind != FINITE:
        raise ValueError("subset construction needs finite-word acceptance")
    if a.kind not in ("deterministic", "nondeterministic"):
        raise ValueError("subset construction needs a nondeterministic automaton")

    def step(s, x):
        out = set()
        for q in s:
            out |= fm.states_of(a.delta[(q, x)])
        return frozenset(out)

    start = frozenset((a.initial,))
    order, trans = _explore(start, step, a.alphabet)
    names = _unique_names(order, lambda s: "<" + ",".join(_ordered(a, s)) + ">")
    delta = {(names[s], x): Leaf(names[t]) for (s, x), t in trans.items()}
    final = {names[s] for s in order if s & a.acceptance.states}
    return Automaton(a.alphabet, [names[s] for s in order], names[start], delta,
                     Acceptance.finite(final), f"subset({a.name})")


def _formula_step(a: Automaton, clauses, x, drop=frozenset()):
    """DNF (antichain of clauses) of the formula after reading ``x``."""
    out = []
    for cl in clauses:
        parts = [fm.dnf_clauses(a.delta[(q, x)]) for q in sorted(cl)]
        for pick in itertools.product(*parts):
            c2 = frozenset().union(*pick)
            if not c2 & drop:
                out.append(c2)
    return tuple(fm._absorb(out))


def _formula_name(a, clauses):
    if not clauses:
        return "<>"
    return "<" + "+".join(".".join(_ordered(a, cl)) for cl in clauses) + ">"


def alternating_subset_construction(a: Automaton) -> Automaton:
    """DFA for an alternating finite-word automaton.

    A state is the current residual obligation as a DNF antichain over
    states of ``a``; it is final iff some clause consists of final states.
    """
    if a.acceptance.kind != FINITE:
        raise ValueError("needs finite-word acceptance")
    final = a.acceptance.states
    start = (frozenset((a.initial,)),)
    order, trans = _explore(start, lambda s, x: _formula_step(a, s, x), a.alphabet)
    names = _unique_names(order, lambda s: _formula_name(a, s))
    delta = {(names[s], x): Leaf(names[t]) for (s, x), t in trans.items()}
    acc = {names[s] for s in order if any(cl <= final for cl in s)}
    return Automaton(a.alphabet, [names[s] for s in order], names[start], delta,
                     Acceptance.finite(acc), f"det({a.name})")


def rejecting_sinks(a: Automaton) -> Optional[FrozenSet[str]]:
    """Rejecting states if every one of them is a self-loop sink, else None."""
    acc = a.acceptance
    if acc.kind not in (BUCHI, WEAK):
        return None
    rej = frozenset(a.states) - acc.states
    for r in rej:
        if any(a.delta[(r, x)] != Leaf(r) for x in a.alphabet):
            return None
    return rej


def safety_determinize(a: Automaton) -> Automaton:
    """Deterministic Büchi automaton for an alternating safety automaton
    (a Büchi automaton whose rejecting states are all self-loop sinks).

    States are DNF antichains over the accepting states; clauses that reach
    a sink are dropped, and the empty antichain is the rejecting sink.
    """
    sinks = rejecting_sinks(a)
    if sinks is None:
        raise ValueError("rejecting states must all be self-loop sinks")
    start = () if a.initial in sinks else (frozenset((a.initial,)),)
    order, trans = _explore(start, lambda s, x: _formula_step(a, s, x, sinks), a.alphabet)
    names = _unique_names(order, lambda s: _formula_name(a, s))
    delta = {(names[s], x): Leaf(names[t]) for (s, x), t in trans.items()}
    acc = {names[s] for s in order if s}
    return Automaton(a.alphabet, [names[s] for s in order], names[start], delta,
                     Acceptance.buchi(acc), f"safe({a.name})")


def minimize_dfa(a: Automaton) -> Automaton:
    """Hopcroft minimization of the reachable part of a DFA."""
    if a.acceptance.kind != FINITE or not a.is_deterministic:
        raise ValueError("minimization needs a deterministic finite-word automaton")
    a = a.trim()
    states = list(a.states)
    alphabet = a.alphabet
    step = {(q, x): a.delta[(q, x)].state for q in states for x in alphabet}
    inv = {}
    for (q, x), t in step.items():
        inv.setdefault((t, x), set()).add(q)
    final = frozenset(q for q in states if q in a.acceptance.states)
    rest = frozenset(states) - final
    partition = [b for b in (final, rest) if b]
    work = [min(partition, key=len)] if len(partition) == 2 else []
    while work:
        splitter = work.pop()
        for x in alphabet:
            pre = set()
            for t in splitter:
                pre |= inv.get((t, x), set())
            if not pre:
                continue
            refined = []
            for block in partition:
                inside = block & pre
                outside = block - pre
                if inside and outside:
                    refined += [inside, outside]
                    if block in work:
                        work.remove(block)
                        work += [inside, outside]
                    else:
                        work.append(min(inside, outside, key=len))
                else:
                    refined.append(block)
            partition = refined
    pos = {q: i for i, q in enumerate(states)}
    partition.sort(key=lambda b: min(pos[q] for q in b))
    block_of = {}
    for i, b in enumerate(partition):
        for q in b:
            block_of[q] = i
    rep = [min(b, key=pos.__getitem__) for b in partition]
    names = [rep[i] for i in range(len(partition))]
    delta = {(names[i], x): Leaf(names[block_of[step[(rep[i], x)]]])
             for i in range(len(partition)) for x in alphabet}
    acc = {names[i] for i, b in enumerate(partition) if b & final}
    return Automaton(alphabet, names, names[block_of[a.initial]], delta,
                     Acceptance.finite(acc), f"min({a.name})")


@dataclass
class PipelineResult:
    """Intermediate objects of the co-Büchi determinization pipeline."""

    source: Automaton
    dual: Automaton
    breakpoint: Automaton
    eve_witness: Transducer
    adam_witness: Transducer
    determinized: Automaton
    result: Automaton

    @property
    def bound(self) -> int:
        return 3 ** len(self.source.states) * len(self.eve_witness) * len(self.adam_witness)

    def summary(self) -> dict:
        return {"input_states": len(self.source.states),
                "breakpoint_states": len(self.breakpoint.states),
                "eve_memory": len(self.eve_witness), "adam_memory": len(self.adam_witness),
                "output_states": len(self.result.states), "bound": self.bound}


def acw_to_dcw_pipeline(a: Automaton, d_ref: Automaton) -> PipelineResult:
    """Dualize, breakpoint, extract witnesses, determinize, dualize back."""
    from .gfg import NotGFGError, extract_hd_transducers, is_gfg, determinize_gfg

    if a.acceptance.kind != COBUCHI:
        raise ValueError("expected co-Büchi acceptance")
    verdict = is_gfg(a, d_ref)
    if not verdict.is_gfg:
        raise NotGFGError("input automaton is not GFG", verdict)
    dual = dualize(a)
    nbw = breakpoint(normalize(dual, "dnf"))
    if len(nbw.states) > 3 ** len(a.states):
        raise AssertionError("breakpoint exceeds 3^n states")
    d_dual = dualize(d_ref)
    m_e, m_a = extract_hd_transducers(nbw, d_dual)
    det = determinize_gfg(normalize(nbw, "dnf"), m_e, m_a)
    out = dualize(det)
    out = Automaton(out.alphabet, out.states, out.initial, out.delta, out.acceptance,
                    f"dcw({a.name})")
    res = PipelineResult(a, dual, nbw, m_e, m_a, det, out)
    if len(det.states) > len(nbw.states) * len(m_e) * len(m_a):
        raise AssertionError("determinized product exceeds |Q| * |M_A| * |M_E|")
    if len(out.states) > res.bound:
        raise AssertionError("output exceeds 3^n times the witness memories")
    return res


def gfg_acw_to_dcw(a: Automaton, d_ref: Automaton) -> Automaton:
    """Deterministic co-Büchi automaton for a GFG alternating co-Büchi one."""
    return acw_to_dcw_pipeline(a, d_ref).result
