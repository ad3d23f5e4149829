"""Positive Boolean transition conditions over state names.

Conditions are kept canonical: And/Or are n-ary and flattened, operands are
sorted and deduplicated, and a connective with a single operand collapses to
that operand.  Two canonical conditions are equal iff they are syntactically
equal, which is what products rely on for vertex deduplication.

There are no constants; a "dead" continuation is modelled by a rejecting sink.
"""
from __future__ import annotations

from itertools import product as _cartesian
from typing import Callable, FrozenSet, Iterable, List, Mapping


class Condition:
    __slots__ = ("_key", "_hash")

    def __eq__(self, other):
        return isinstance(other, Condition) and self._key == other._key

    def __hash__(self):
        return self._hash

    def __lt__(self, other):
        return self._key < other._key

    def __repr__(self):
        return f"Condition({to_text(self)!r})"

    def __str__(self):
        return to_text(self)


class Leaf(Condition):
    __slots__ = ("state",)

    def __init__(self, state: str):
        self.state = state
        self._key = (0, state)
        self._hash = hash(self._key)


class _Connective(Condition):
    __slots__ = ("ops",)
    tag = -1

    def __init__(self, ops):
        # Callers go through conj/disj; this constructor trusts its input.
        self.ops = tuple(ops)
        self._key = (self.tag, tuple(o._key for o in self.ops))
        self._hash = hash(self._key)


class And(_Connective):
    __slots__ = ()
    tag = 1


class Or(_Connective):
    __slots__ = ()
    tag = 2


def _connect(cls, operands: Iterable[Condition]) -> Condition:
    flat = set()
    for op in operands:
        if isinstance(op, str):
            op = Leaf(op)
        if type(op) is cls:
            flat.update(op.ops)
        else:
            flat.add(op)
    if not flat:
        raise ValueError(f"{cls.__name__} needs at least one operand")
    if len(flat) == 1:
        return next(iter(flat))
    return cls(sorted(flat))


def conj(*operands) -> Condition:
    """Canonical conjunction; accepts conditions or bare state names."""
    if len(operands) == 1 and not isinstance(operands[0], (Condition, str)):
        operands = tuple(operands[0])
    return _connect(And, operands)


def disj(*operands) -> Condition:
    """Canonical disjunction; accepts conditions or bare state names."""
    if len(operands) == 1 and not isinstance(operands[0], (Condition, str)):
        operands = tuple(operands[0])
    return _connect(Or, operands)


def leaf(state: str) -> Leaf:
    return Leaf(state)


def canonical(c: Condition) -> Condition:
    """Rebuild ``c`` bottom-up through the canonicalizing constructors."""
    if isinstance(c, Leaf):
        return c
    kids = [canonical(o) for o in c.ops]
    return conj(kids) if isinstance(c, And) else disj(kids)


def is_leaf(c: Condition) -> bool:
    return isinstance(c, Leaf)


def states_of(c: Condition) -> FrozenSet[str]:
    if isinstance(c, Leaf):
        return frozenset((c.state,))
    out = set()
    for o in c.ops:
        out |= states_of(o)
    return frozenset(out)


def subformulas(c: Condition) -> set:
    out = {c}
    if not isinstance(c, Leaf):
        for o in c.ops:
            out |= subformulas(o)
    return out


def evaluate(c: Condition, true_states) -> bool:
    if isinstance(c, Leaf):
        return c.state in true_states
    if isinstance(c, And):
        return all(evaluate(o, true_states) for o in c.ops)
    return any(evaluate(o, true_states) for o in c.ops)


def substitute(c: Condition, f: Callable[[str], Condition]) -> Condition:
    """Replace every leaf ``q`` by ``f(q)`` and re-canonicalize."""
    if isinstance(c, Leaf):
        return f(c.state)
    kids = [substitute(o, f) for o in c.ops]
    return conj(kids) if isinstance(c, And) else disj(kids)


def rename(c: Condition, mapping: Mapping[str, str]) -> Condition:
    return substitute(c, lambda q: Leaf(mapping[q]))


def swap(c: Condition) -> Condition:
    """Exchange And and Or throughout."""
    if isinstance(c, Leaf):
        return c
    kids = [swap(o) for o in c.ops]
    return disj(kids) if isinstance(c, And) else conj(kids)


# -- two-level forms -------------------------------------------------------

def _absorb(clauses: Iterable[FrozenSet[str]]) -> List[FrozenSet[str]]:
    uniq = sorted(set(clauses), key=lambda s: (len(s), sorted(s)))
    kept: List[FrozenSet[str]] = []
    for cl in uniq:
        if not any(k <= cl for k in kept):
            kept.append(cl)
    return kept


def dnf_clauses(c: Condition) -> List[FrozenSet[str]]:
    """Minimal conjunctive clauses (as state sets) whose disjunction is ``c``."""
    if isinstance(c, Leaf):
        return [frozenset((c.state,))]
    parts = [dnf_clauses(o) for o in c.ops]
    if isinstance(c, Or):
        return _absorb(cl for p in parts for cl in p)
    return _absorb(frozenset().union(*combo) for combo in _cartesian(*parts))


def cnf_clauses(c: Condition) -> List[FrozenSet[str]]:
    """Minimal disjunctive clauses whose conjunction is ``c``."""
    return dnf_clauses(swap(c))


def from_dnf(clauses) -> Condition:
    return disj([conj(sorted(cl)) for cl in clauses])


def from_cnf(clauses) -> Condition:
    return conj([disj(sorted(cl)) for cl in clauses])


def to_dnf(c: Condition) -> Condition:
    return from_dnf(dnf_clauses(c))


def to_cnf(c: Condition) -> Condition:
    return from_cnf(cnf_clauses(c))


def to_text(c: Condition) -> str:
    if isinstance(c, Leaf):
        return c.state
    if isinstance(c, And):
        return " & ".join(f"({to_text(o)})" if isinstance(o, Or) else to_text(o) for o in c.ops)
    return " | ".join(to_text(o) for o in c.ops)
