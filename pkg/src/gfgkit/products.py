"""Products of arenas with automata, membership, and game/automaton encodings."""
from __future__ import annotations

import itertools
import re
from collections import deque
from dataclasses import dataclass
from typing import Callable, Hashable, Iterator, Optional, Sequence, Tuple

from . import formulas as fm
from .automata import (BUCHI, COBUCHI, FINITE, LABELS, PARITY, WEAK, Acceptance,
                       Automaton, Transducer)
from .formulas import Condition, Leaf
from .games import ADAM, EVE, Arena, ParityGame, solve_parity

# Real priorities are shifted by this much so that neutral vertices (priority
# 0) are dominated without changing parity.
SHIFT = 2


@dataclass(frozen=True)
class LassoWord:
    """Ultimately periodic word ``prefix . period^omega`` in canonical form."""

    prefix: Tuple[str, ...]
    period: Tuple[str, ...]

    def __post_init__(self):
        u, v = tuple(self.prefix), tuple(self.period)
        if not v:
            raise ValueError("period must be nonempty")
        n = len(v)
        for k in range(1, n + 1):
            if n % k == 0 and v[:k] * (n // k) == v:
                v = v[:k]
                break
        while u and u[-1] == v[-1]:
            u = u[:-1]
            v = v[-1:] + v[:-1]
        object.__setattr__(self, "prefix", u)
        object.__setattr__(self, "period", v)

    @classmethod
    def of(cls, prefix, period):
        return cls(tuple(prefix), tuple(period))

    def __len__(self):
        return len(self.prefix) + len(self.period)

    def letter(self, i: int) -> str:
        return (self.prefix + self.period)[i]

    def next(self, i: int) -> int:
        return i + 1 if i + 1 < len(self) else len(self.prefix)

    def letters(self):
        return set(self.prefix) | set(self.period)

    def take(self, n: int) -> Tuple[str, ...]:
        out = list(self.prefix[:n])
        while len(out) < n:
            out.extend(self.period)
        return tuple(out[:n])

    def __str__(self):
        sep = "" if all(len(x) == 1 for x in self.prefix + self.period) else "."
        return f"{sep.join(self.prefix)}({sep.join(self.period)})^w"


_LASSO = re.compile(r"^\s*([^()\s]*)\(([^()\s]+)\)\^w\s*$")


def parse_lasso(text: str) -> LassoWord:
    """Parse ``u(v)^w``; letters are single characters unless separated by dots."""
    m = _LASSO.match(text)
    if not m:
        raise ValueError(f"not a lasso word: {text!r} (expected u(v)^w)")

    def split(s):
        if not s:
            return ()
        return tuple(s.split(".")) if "." in s else tuple(s)

    return LassoWord(split(m.group(1)), split(m.group(2)))


def lassos(alphabet: Sequence[str], max_prefix: int, max_period: int) -> Iterator[LassoWord]:
    """Every canonical lasso with |u| <= max_prefix and |v| <= max_period, once.

    Ordered by total length, then prefix length, then lexicographically.
    """
    seen = set()
    alphabet = list(alphabet)
    for total in range(1, max_prefix + max_period + 1):
        for lu in range(0, min(max_prefix, total - 1) + 1):
            lv = total - lu
            if lv > max_period:
                continue
            for u in itertools.product(alphabet, repeat=lu):
                for v in itertools.product(alphabet, repeat=lv):
                    w = LassoWord(u, v)
                    if w not in seen:
                        seen.add(w)
                        yield w


def build_game(roots, expand: Callable, root=None) -> ParityGame:
    """Explore a game from ``roots``; ``expand(v)`` returns
    ``(owner, priority, label, successors)``."""
    names = []
    index = {}
    info = []
    queue = deque()
    for r in roots:
        if r not in index:
            index[r] = len(names)
            names.append(r)
            queue.append(r)
    while queue:
        v = queue.popleft()
        owner, prio, label, succ = expand(v)
        info.append((owner, prio, label, succ))
        for u in succ:
            if u not in index:
                index[u] = len(names)
                names.append(u)
                queue.append(u)
    succ_idx = [[index[u] for u in s] for (_, _, _, s) in info]
    eve = [i for i, (o, _, _, _) in enumerate(info) if o == EVE]
    prio = [p for (_, p, _, _) in info]
    labels = [lab for (_, _, lab, _) in info]
    r = index[root] if root is not None else None
    return ParityGame(names, succ_idx, eve, prio, labels, r)


def _check_parity_ready(a: Automaton):
    if not a.acceptance.is_omega:
        raise ValueError(f"{a.acceptance.kind} acceptance has no game semantics over infinite words")


def synchronized_product(arena: Arena, a: Automaton) -> ParityGame:
    """Product game of a letter-labelled arena and an alternating automaton.

    Vertices are ``(arena vertex name, condition)``.  State vertices carry
    label ``alpha(q)`` and priority ``alpha(q) + 2``; And/Or vertices are
    neutral (label None, priority 0).  Connectives branch n-ary.
    """
    _check_parity_ready(a)
    alphabet = set(a.alphabet)
    for i in range(len(arena)):
        if arena.label(i) not in alphabet:
            raise ValueError(f"arena label {arena.label(i)!r} at {arena.names[i]!r} "
                             f"is not in the automaton's alphabet")
    delta = a.delta
    prio = {q: a.priority(q) for q in a.states}

    def expand(node):
        i, b = node
        if isinstance(b, Leaf):
            q = b.state
            succ = [(j, delta[(q, arena.labels[j])]) for j in arena.succ[i]]
            owner = EVE if arena.eve[i] else ADAM
            return owner, prio[q] + SHIFT, prio[q], succ
        owner = EVE if isinstance(b, fm.Or) else ADAM
        return owner, 0, None, [(i, o) for o in b.ops]

    if arena.root is not None:
        roots = [(arena.root, delta[(a.initial, arena.labels[arena.root])])]
        root = roots[0]
    else:
        roots = [(i, delta[(a.initial, arena.labels[i])]) for i in range(len(arena))]
        root = None
    g = build_game(roots, expand, root)
    # index-based arena vertices -> names
    g.names = [(arena.names[i], b) for (i, b) in g.names]
    g.index = {v: k for k, v in enumerate(g.names)}
    return g


def lasso_arena(w: LassoWord) -> Arena:
    n = len(w)
    return Arena(list(range(n)), [[w.next(i)] for i in range(n)], range(n),
                 [w.letter(i) for i in range(n)], 0)


def model_checking_game(w: LassoWord, a: Automaton) -> ParityGame:
    """Membership game: Eve wins from the root iff ``a`` accepts ``w``."""
    stray = w.letters() - set(a.alphabet)
    if stray:
        raise ValueError(f"letters {sorted(stray)} are not in the alphabet")
    return synchronized_product(lasso_arena(w), a)


def accepts_finite(a: Automaton, word: Sequence[str]) -> bool:
    if a.acceptance.kind != FINITE:
        raise ValueError("finite-word membership needs finite acceptance")
    final = a.acceptance.states
    value = {q: q in final for q in a.states}
    for x in reversed(tuple(word)):
        value = {q: fm.evaluate(a.delta[(q, x)], {p for p, ok in value.items() if ok})
                 for q in a.states}
    return value[a.initial]


def accepts(a: Automaton, w) -> bool:
    """Membership of a lasso word (or a finite word, for finite acceptance)."""
    if a.acceptance.kind == FINITE:
        return accepts_finite(a, w)
    if isinstance(w, str):
        w = parse_lasso(w)
    g = model_checking_game(w, a)
    return solve_parity(g).winner(g.root) == EVE


def _state_name(q, p) -> str:
    return f"[{q},{p}]"


def compose(outer: Automaton, inner: Automaton, labels=None) -> Automaton:
    """Composition of ``outer`` (states labelled over the inner alphabet)
    with ``inner``: unfold the outer condition, then the inner one.

    ``labels`` defaults to the outer automaton's ``labels`` acceptance.
    """
    if labels is None:
        if outer.acceptance.kind != LABELS:
            raise ValueError("outer automaton needs a state labelling")
        labels = outer.acceptance.as_dict
    if set(labels) != set(outer.states):
        raise ValueError("labelling must cover the outer states")
    stray = set(labels.values()) - set(inner.alphabet)
    if stray:
        raise ValueError(f"labels {sorted(stray)} are not letters of the inner automaton")
    _check_parity_ready(inner)

    pair_of = {}

    def f(c: Condition, qa: str) -> Condition:
        return fm.substitute(c, lambda qb: g(qb, inner.delta[(qa, labels[qb])]))

    def g(qb: str, c: Condition) -> Condition:
        def lift(pa):
            name = _state_name(qb, pa)
            pair_of[name] = (qb, pa)
            return Leaf(name)
        return fm.substitute(c, lift)

    start = (outer.initial, inner.initial)
    seen = {_state_name(*start)}
    order = [start]
    delta = {}
    queue = deque([start])
    while queue:
        qb, qa = queue.popleft()
        for x in outer.alphabet:
            c = f(outer.delta[(qb, x)], qa)
            delta[(_state_name(qb, qa), x)] = c
            for name in sorted(fm.states_of(c)):
                if name not in seen:
                    seen.add(name)
                    order.append(pair_of[name])
                    queue.append(pair_of[name])
    states = [_state_name(*p) for p in order]
    acc = inner.acceptance
    inner_of = {_state_name(*p): p[1] for p in order}
    if acc.kind in (BUCHI, WEAK):
        new_acc = Acceptance.buchi({s for s in states if inner_of[s] in acc.states})
    elif acc.kind == COBUCHI:
        new_acc = Acceptance.cobuchi({s for s in states if inner_of[s] in acc.states})
    else:
        new_acc = Acceptance.parity({s: acc.priority(inner_of[s]) for s in states})
    return Automaton(outer.alphabet, states, _state_name(*start), delta, new_acc,
                     f"{outer.name}*{inner.name}")


def game_as_automaton(game: ParityGame, letter: str = "a") -> Automaton:
    """One-letter automaton whose unique word is accepted iff Eve wins from the root."""
    if game.root is None:
        raise ValueError("game must be rooted")
    names = [str(v) for v in game.names]
    if len(set(names)) != len(names) or not all(re.fullmatch(r"[A-Za-z0-9_.,<>/\[\]'*+$-]+", n) for n in names):
        names = [f"v{i}" for i in range(len(game))]
    delta = {}
    for i in range(len(game)):
        kids = [names[j] for j in game.succ[i]]
        delta[(names[i], letter)] = fm.disj(kids) if game.eve[i] else fm.conj(kids)
    acc = Acceptance.parity({names[i]: game.priority[i] for i in range(len(game))})
    return Automaton((letter,), names, names[game.root], delta, acc, "game")


def transducer_to_one_player_game(m: Transducer, owner: int = ADAM,
                                  letter_of: Callable = lambda out: out[0],
                                  legal: Optional[Callable] = None) -> Arena:
    """One-player arena whose vertices are the memories of ``m``.

    Edges follow ``m``'s transitions on the inputs ``legal(memory, output)``
    (default: every input), the label of a memory is ``letter_of`` of its
    output, the root is the initial memory, and every vertex belongs to
    ``owner``.
    """
    mems = list(m.memories)
    idx = {x: i for i, x in enumerate(mems)}
    succ = []
    for x in mems:
        ins = m.inputs if legal is None else legal(x, m.chi[x])
        succ.append(sorted({idx[m.rho[(x, i)]] for i in ins}))
    eve = range(len(mems)) if owner == EVE else ()
    labels = [letter_of(m.chi[x]) for x in mems]
    return Arena([f"m{i}" for i in range(len(mems))], succ, eve, labels, idx[m.initial])
