"""Alternating word automata, acceptance conditions and transducers."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, Hashable, Mapping, Optional, Tuple

import networkx as nx

from . import formulas as fm
from .formulas import Condition

FINITE = "finite"
WEAK = "weak"
BUCHI = "buchi"
COBUCHI = "cobuchi"
PARITY = "parity"
LABELS = "labels"

KINDS = (FINITE, WEAK, BUCHI, COBUCHI, PARITY, LABELS)


@dataclass(frozen=True)
class Acceptance:
    """Tagged acceptance condition.

    ``states`` is the final / accepting / rejecting set for the set-based kinds.
    ``mapping`` holds the priority map for parity and the state labelling for
    ``labels`` (the latter only describes the outer automaton of a
    composition and has no acceptance semantics of its own).

    Parity is max-even.  Buchi(F) is read as priority 2 on F and 1 elsewhere,
    CoBuchi(R) as priority 1 on R and 0 elsewhere, Weak like Buchi.
    """

    kind: str
    states: FrozenSet[str] = frozenset()
    mapping: Tuple[Tuple[str, Hashable], ...] = ()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown acceptance kind {self.kind!r}")
        object.__setattr__(self, "states", frozenset(self.states))
        if isinstance(self.mapping, Mapping):
            object.__setattr__(self, "mapping", tuple(sorted(self.mapping.items())))

    @classmethod
    def finite(cls, final):
        return cls(FINITE, frozenset(final))

    @classmethod
    def weak(cls, accepting):
        return cls(WEAK, frozenset(accepting))

    @classmethod
    def buchi(cls, accepting):
        return cls(BUCHI, frozenset(accepting))

    @classmethod
    def cobuchi(cls, rejecting):
        return cls(COBUCHI, frozenset(rejecting))

    @classmethod
    def parity(cls, priorities: Mapping[str, int]):
        if any(p < 0 for p in priorities.values()):
            raise ValueError("priorities must be non-negative")
        return cls(PARITY, mapping=dict(priorities))

    @classmethod
    def labels(cls, labelling: Mapping[str, str]):
        return cls(LABELS, mapping=dict(labelling))

    @property
    def as_dict(self) -> Dict[str, Hashable]:
        return dict(self.mapping)

    @property
    def is_omega(self) -> bool:
        return self.kind in (WEAK, BUCHI, COBUCHI, PARITY)

    def priority(self, q: str) -> int:
        k = self.kind
        if k in (BUCHI, WEAK):
            return 2 if q in self.states else 1
        if k == COBUCHI:
            return 1 if q in self.states else 0
        if k == PARITY:
            return self.as_dict[q]
        raise ValueError(f"{k} acceptance has no priority encoding")

    def as_parity(self, states) -> "Acceptance":
        return Acceptance.parity({q: self.priority(q) for q in states})

    def index(self, states) -> int:
        """Number of distinct priorities used over ``states``."""
        return len({self.priority(q) for q in states})

    def restrict(self, states) -> "Acceptance":
        keep = set(states)
        if self.kind in (PARITY, LABELS):
            return Acceptance(self.kind, mapping={q: p for q, p in self.mapping if q in keep})
        return Acceptance(self.kind, self.states & keep)


@dataclass(frozen=True)
class Automaton:
    """Alternating automaton ``(alphabet, states, initial, delta, acceptance)``.

    ``delta`` maps ``(state, letter)`` to a canonical transition condition.
    Construction does not validate; call :func:`validate` for a report or
    :meth:`check` to raise on the first problem.
    """

    alphabet: Tuple[str, ...]
    states: Tuple[str, ...]
    initial: str
    delta: Dict[Tuple[str, str], Condition]
    acceptance: Acceptance
    name: str = field(default="A", compare=False)

    def __post_init__(self):
        object.__setattr__(self, "alphabet", tuple(self.alphabet))
        object.__setattr__(self, "states", tuple(self.states))

    def __hash__(self):
        return id(self)

    def d(self, q: str, a: str) -> Condition:
        return self.delta[(q, a)]

    def check(self) -> "Automaton":
        problems = validate(self)
        if problems:
            raise ValueError(f"automaton {self.name}: " + "; ".join(problems))
        return self

    @property
    def kind(self) -> str:
        return classify(self)

    @property
    def is_deterministic(self) -> bool:
        return all(isinstance(c, fm.Leaf) for c in self.delta.values())

    def priority(self, q: str) -> int:
        return self.acceptance.priority(q)

    def successors(self, q: str) -> FrozenSet[str]:
        out = set()
        for a in self.alphabet:
            out |= fm.states_of(self.delta[(q, a)])
        return frozenset(out)

    def graph(self) -> nx.DiGraph:
        g = nx.DiGraph()
        g.add_nodes_from(self.states)
        for (q, _a), c in self.delta.items():
            for p in fm.states_of(c):
                g.add_edge(q, p)
        return g

    def reachable_states(self):
        seen = {self.initial}
        stack = [self.initial]
        while stack:
            q = stack.pop()
            for p in self.successors(q):
                if p not in seen:
                    seen.add(p)
                    stack.append(p)
        return [q for q in self.states if q in seen]

    def trim(self) -> "Automaton":
        keep = self.reachable_states()
        keep_set = set(keep)
        delta = {k: c for k, c in self.delta.items() if k[0] in keep_set}
        return replace(self, states=tuple(keep), delta=delta,
                       acceptance=self.acceptance.restrict(keep))


def make_automaton(alphabet, states, initial, delta, acceptance, name="A") -> Automaton:
    """Build an automaton from a loose delta (conditions or bare state names)."""
    norm = {}
    for key, c in delta.items():
        if isinstance(c, str):
            c = fm.Leaf(c)
        norm[key] = fm.canonical(c)
    return Automaton(tuple(alphabet), tuple(states), initial, norm, acceptance, name)


def classify(a: Automaton) -> str:
    conds = list(a.delta.values())
    if all(isinstance(c, fm.Leaf) for c in conds):
        return "deterministic"
    has_and = any(isinstance(s, fm.And) for c in conds for s in fm.subformulas(c))
    has_or = any(isinstance(s, fm.Or) for c in conds for s in fm.subformulas(c))
    if not has_and:
        return "nondeterministic"
    if not has_or:
        return "universal"
    return "alternating"


def sccs(a: Automaton):
    return [frozenset(c) for c in nx.strongly_connected_components(a.graph())]


def validate(a: Automaton):
    """List of violated well-formedness invariants; empty iff well-formed."""
    problems = []
    states = set(a.states)
    if not a.alphabet:
        problems.append("alphabet is empty")
    if not a.states:
        problems.append("state set is empty")
    if len(states) != len(a.states):
        problems.append("duplicate state identifiers")
    if a.initial not in states:
        problems.append(f"initial state {a.initial!r} is not a state")
    for q in a.states:
        for x in a.alphabet:
            if (q, x) not in a.delta:
                problems.append(f"totality: no transition for state {q!r} on letter {x!r}")
    for (q, x), c in a.delta.items():
        if q not in states or x not in a.alphabet:
            problems.append(f"transition ({q!r}, {x!r}) outside states x alphabet")
        stray = fm.states_of(c) - states
        if stray:
            problems.append(f"transition ({q!r}, {x!r}) mentions unknown states {sorted(stray)}")
    acc = a.acceptance
    if acc.kind in (PARITY, LABELS):
        mapped = set(acc.as_dict)
        if mapped != states:
            problems.append(f"{acc.kind} map does not cover exactly the states")
    elif not acc.states <= states:
        problems.append(f"acceptance set mentions unknown states {sorted(acc.states - states)}")
    if acc.kind == WEAK and not problems:
        for comp in sccs(a):
            marks = {q in acc.states for q in comp}
            if len(marks) > 1:
                problems.append(f"weak: SCC {sorted(comp)} mixes accepting and rejecting states")
    return problems


def dualize(a: Automaton) -> Automaton:
    """Swap And/Or everywhere and complement the acceptance condition."""
    acc = a.acceptance
    if acc.kind == BUCHI:
        dual = Acceptance.cobuchi(acc.states)
    elif acc.kind == COBUCHI:
        dual = Acceptance.buchi(acc.states)
    elif acc.kind == WEAK:
        dual = Acceptance.weak(frozenset(a.states) - acc.states)
    elif acc.kind == PARITY:
        dual = Acceptance.parity({q: p + 1 for q, p in acc.mapping})
    else:
        raise ValueError(f"cannot dualize {acc.kind} acceptance")
    delta = {k: fm.swap(c) for k, c in a.delta.items()}
    return replace(a, delta=delta, acceptance=dual, name=f"dual({a.name})")


def normalize(a: Automaton, form: str = "dnf") -> Automaton:
    form = form.lower()
    if form not in ("dnf", "cnf"):
        raise ValueError("form must be 'dnf' or 'cnf'")
    conv = fm.to_dnf if form == "dnf" else fm.to_cnf
    return replace(a, delta={k: conv(c) for k, c in a.delta.items()})


def residual(a: Automaton, q: str) -> Automaton:
    if q not in a.states:
        raise KeyError(f"unknown state {q!r}")
    if q == a.initial:
        return a
    return replace(a, initial=q)


def as_buchi(a: Automaton) -> Optional[Automaton]:
    """Büchi automaton with the same language, when one is read off directly.

    Works for Büchi and weak automata, and for any parity-type automaton whose
    SCCs are homogeneous in priority parity (a weak structure), where the
    accepting set is the set of even-priority states.
    """
    acc = a.acceptance
    if acc.kind == BUCHI:
        return a
    if acc.kind == WEAK:
        return replace(a, acceptance=Acceptance.buchi(acc.states))
    if not acc.is_omega:
        return None
    even = {q for q in a.states if acc.priority(q) % 2 == 0}
    for comp in sccs(a):
        if len({q in even for q in comp}) > 1:
            return None
    return replace(a, acceptance=Acceptance.buchi(even))


@dataclass(frozen=True)
class Transducer:
    """Finite-memory strategy ``(I, O, M, iota, rho, chi)``.

    ``rho`` is total over ``memories x inputs``; ``run`` follows the usual
    extension rho(eps) = iota, rho(u.a) = rho(rho(u), a), and calling the
    transducer on a history returns chi(rho(history)).
    """

    inputs: Tuple[Hashable, ...]
    outputs: Tuple[Hashable, ...]
    memories: Tuple[Hashable, ...]
    initial: Hashable
    rho: Dict[Tuple[Hashable, Hashable], Hashable]
    chi: Dict[Hashable, Hashable]

    def __hash__(self):
        return id(self)

    def step(self, m, i):
        return self.rho[(m, i)]

    def run(self, inputs, start=None):
        m = self.initial if start is None else start
        for i in inputs:
            m = self.rho[(m, i)]
        return m

    def __call__(self, history=()):
        return self.chi[self.run(history)]

    def __len__(self):
        return len(self.memories)

    def problems(self):
        out = []
        if self.initial not in self.memories:
            out.append("initial memory is not a memory")
        for m in self.memories:
            if m not in self.chi:
                out.append(f"no output for memory {m!r}")
            for i in self.inputs:
                if (m, i) not in self.rho:
                    out.append(f"rho undefined on ({m!r}, {i!r})")
                elif self.rho[(m, i)] not in self.chi:
                    out.append(f"rho({m!r}, {i!r}) leaves the memory set")
        return out
