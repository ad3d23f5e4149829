"""Arenas, max-even parity games, Zielonka's solver and strategies.

Vertices carry arbitrary hashable names but everything is stored by index;
the global vertex order is the insertion order, and every tie (attractor
strategy choice, arbitrary moves) goes to the lowest index.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Callable, Dict, FrozenSet, Hashable, Iterable, List, Optional, Sequence

import networkx as nx

from .automata import Transducer

EVE = 0
ADAM = 1


def player_name(p: int) -> str:
    return "Eve" if p == EVE else "Adam"


class Arena:
    """Game graph with an ownership partition and an optional vertex labelling."""

    def __init__(self, names: Sequence[Hashable], succ: Sequence[Sequence[int]],
                 eve: Iterable[int], labels: Optional[Sequence] = None,
                 root: Optional[int] = None):
        self.names = list(names)
        self.index = {v: i for i, v in enumerate(self.names)}
        if len(self.index) != len(self.names):
            raise ValueError("duplicate vertex names")
        self.succ = [tuple(sorted(set(s))) for s in succ]
        n = len(self.names)
        self.eve = [False] * n
        for i in eve:
            self.eve[i] = True
        self.labels = list(labels) if labels is not None else None
        self.root = root
        for i, s in enumerate(self.succ):
            if not s:
                raise ValueError(f"vertex {self.names[i]!r} has no successor")
            for j in s:
                if not 0 <= j < n:
                    raise ValueError(f"edge from {self.names[i]!r} leaves the arena")
        if root is not None and not 0 <= root < n:
            raise ValueError("root is not a vertex")
        self._pred = None

    @classmethod
    def build(cls, vertices, edges, eve=(), labels=None, root=None, **kw):
        """Build from vertex names, ``(u, v)`` edge pairs and name-keyed maps."""
        names = list(vertices)
        idx = {v: i for i, v in enumerate(names)}
        succ = [[] for _ in names]
        for u, v in edges:
            succ[idx[u]].append(idx[v])
        lab = [labels[v] for v in names] if labels is not None else None
        r = idx[root] if root is not None else None
        return cls(names, succ, [idx[v] for v in eve], lab, r, **kw)

    def __len__(self):
        return len(self.names)

    @property
    def pred(self) -> List[List[int]]:
        if self._pred is None:
            pred = [[] for _ in self.names]
            for i, s in enumerate(self.succ):
                for j in s:
                    pred[j].append(i)
            self._pred = pred
        return self._pred

    def owner(self, i: int) -> int:
        return EVE if self.eve[i] else ADAM

    def label(self, i: int):
        return self.labels[i] if self.labels is not None else None

    def edges(self):
        for i, s in enumerate(self.succ):
            for j in s:
                yield i, j

    def reachable(self, sources: Iterable[int], step=None) -> FrozenSet[int]:
        step = step or (lambda i: self.succ[i])
        seen = set(sources)
        stack = list(seen)
        while stack:
            i = stack.pop()
            for j in step(i):
                if j not in seen:
                    seen.add(j)
                    stack.append(j)
        return frozenset(seen)

    def with_owner(self, player: int) -> "Arena":
        """Same graph with every vertex handed to ``player``."""
        eve = range(len(self)) if player == EVE else ()
        return Arena(self.names, self.succ, eve, self.labels, self.root)


class ParityGame(Arena):
    """Arena with a vertex priority map; Eve wins iff the top priority seen
    infinitely often is even."""

    def __init__(self, names, succ, eve, priority: Sequence[int], labels=None, root=None):
        super().__init__(names, succ, eve, labels, root)
        if len(priority) != len(self.names):
            raise ValueError("priority map must cover every vertex")
        if any(p < 0 for p in priority):
            raise ValueError("priorities must be non-negative")
        self.priority = list(priority)

    @classmethod
    def build(cls, vertices, edges, eve=(), priority=None, labels=None, root=None):
        names = list(vertices)
        idx = {v: i for i, v in enumerate(names)}
        succ = [[] for _ in names]
        for u, v in edges:
            succ[idx[u]].append(idx[v])
        prio = [priority[v] for v in names]
        lab = [labels[v] for v in names] if labels is not None else None
        r = idx[root] if root is not None else None
        return cls(names, succ, [idx[v] for v in eve], prio, lab, r)

    @classmethod
    def from_arena(cls, arena: Arena, priority: Sequence[int]):
        return cls(arena.names, arena.succ, [i for i in range(len(arena)) if arena.eve[i]],
                   priority, arena.labels, arena.root)


@dataclass(frozen=True)
class PositionalStrategy:
    owner: int
    choice: Dict[int, int] = field(default_factory=dict)

    def named(self, game: Arena) -> Dict[Hashable, Hashable]:
        return {game.names[v]: game.names[u] for v, u in self.choice.items()}

    def problems(self, game: Arena):
        out = []
        for v, u in self.choice.items():
            if game.owner(v) != self.owner:
                out.append(f"{game.names[v]!r} is not owned by {player_name(self.owner)}")
            elif u not in game.succ[v]:
                out.append(f"{game.names[v]!r} -> {game.names[u]!r} is not an edge")
        return out


@dataclass(frozen=True)
class Solution:
    regions: tuple  # (Eve's region, Adam's region) as frozensets of indices
    strategies: tuple  # (Eve's strategy, Adam's strategy)

    @property
    def eve(self) -> FrozenSet[int]:
        return self.regions[EVE]

    @property
    def adam(self) -> FrozenSet[int]:
        return self.regions[ADAM]

    def winner(self, v: int) -> int:
        return EVE if v in self.regions[EVE] else ADAM


def attractor(game: Arena, target: Iterable[int], player: int,
              within: Optional[Iterable[int]] = None):
    """Attractor of ``target`` for ``player`` inside the subgame ``within``.

    Returns ``(region, strategy)`` where the strategy maps the player's
    vertices outside ``target`` to a successor that is one step closer.
    """
    area = set(range(len(game))) if within is None else set(within)
    attr = set(t for t in target if t in area)
    strat = {}
    count = {}
    queue = deque(sorted(attr))
    pred = game.pred
    while queue:
        u = queue.popleft()
        for v in pred[u]:
            if v not in area or v in attr:
                continue
            if game.owner(v) == player:
                strat[v] = min(w for w in game.succ[v] if w in attr)
                attr.add(v)
                queue.append(v)
            else:
                if v not in count:
                    count[v] = sum(1 for w in game.succ[v] if w in area)
                count[v] -= 1
                if count[v] == 0:
                    attr.add(v)
                    queue.append(v)
    return frozenset(attr), strat


def _zielonka(game: ParityGame, area: FrozenSet[int]):
    if not area:
        return [frozenset(), frozenset()], [{}, {}]
    top = max(game.priority[v] for v in area)
    p = top % 2
    q = 1 - p
    tops = [v for v in area if game.priority[v] == top]
    attr_a, strat_a = attractor(game, tops, p, area)
    sub_w, sub_s = _zielonka(game, area - attr_a)
    if not sub_w[q]:
        win = [None, None]
        win[p] = area
        win[q] = frozenset()
        sp = dict(sub_s[p])
        sp.update(strat_a)
        for v in tops:
            if game.owner(v) == p:
                sp[v] = min(w for w in game.succ[v] if w in area)
        strats = [None, None]
        strats[p] = sp
        strats[q] = {}
        return win, strats
    attr_b, strat_b = attractor(game, sub_w[q], q, area)
    rest_w, rest_s = _zielonka(game, area - attr_b)
    win = [None, None]
    win[q] = rest_w[q] | attr_b
    win[p] = rest_w[p]
    # keep sub-game choices only where q actually wins the sub-game
    sq = {v: u for v, u in sub_s[q].items() if v in sub_w[q]}
    sq.update(strat_b)
    sq.update(rest_s[q])
    strats = [None, None]
    strats[q] = sq
    strats[p] = {v: u for v, u in rest_s[p].items() if v in rest_w[p]}
    return win, strats


def solve_parity(game: ParityGame) -> Solution:
    """Winning regions and positional winning strategies (Zielonka)."""
    win, strats = _zielonka(game, frozenset(range(len(game))))
    out = []
    for player in (EVE, ADAM):
        s = {v: u for v, u in strats[player].items()
             if v in win[player] and game.owner(v) == player}
        out.append(PositionalStrategy(player, s))
    return Solution(tuple(win), tuple(out))


def winner(game: ParityGame, vertex: Optional[int] = None) -> int:
    v = game.root if vertex is None else vertex
    if v is None:
        raise ValueError("game has no root; pass a vertex")
    return solve_parity(game).winner(v)


def check_strategy(game: ParityGame, strategy: PositionalStrategy, start: Iterable[int]) -> bool:
    """True iff every cycle reachable from ``start`` in the strategy-restricted
    graph has a top priority of the owner's parity."""
    owner = strategy.owner
    if strategy.problems(game):
        return False
    restricted = {}
    start = set(start)
    seen = set(start)
    stack = list(start)
    while stack:
        v = stack.pop()
        if game.owner(v) == owner:
            if v not in strategy.choice:
                return False
            nxt = (strategy.choice[v],)
        else:
            nxt = game.succ[v]
        restricted[v] = nxt
        for u in nxt:
            if u not in seen:
                seen.add(u)
                stack.append(u)
    bad_parity = 1 - owner
    for p in sorted({game.priority[v] for v in seen if game.priority[v] % 2 == bad_parity}):
        g = nx.DiGraph()
        low = [v for v in seen if game.priority[v] <= p]
        g.add_nodes_from(low)
        low_set = set(low)
        for v in low:
            g.add_edges_from((v, u) for u in restricted[v] if u in low_set)
        for comp in nx.strongly_connected_components(g):
            hits = [v for v in comp if game.priority[v] == p]
            if not hits:
                continue
            if len(comp) > 1 or g.has_edge(hits[0], hits[0]):
                return False
    return True


def strategy_to_transducer(game: Arena, strategy: PositionalStrategy, inputs: Sequence,
                           observe: Callable[[int, int], Hashable],
                           output: Callable[[int, int], Hashable],
                           root: Optional[int] = None) -> Transducer:
    """Turn a positional strategy into a transducer reading opponent moves.

    Memories are the root and every vertex entered by an observed opponent
    move.  From a memory, the owner's moves are silent (follow the strategy)
    and an opponent vertex consumes one input: the successor ``u`` with
    ``observe(v, u) == input``.  An opponent vertex whose only successor is
    unobserved (``observe`` returns None) is crossed silently.  Inputs that do
    not apply leave the memory unchanged.  ``output(m, end)`` gives chi at
    memory ``m``, where ``end`` is the vertex where the silent walk from ``m``
    stops.
    """
    owner = strategy.owner
    start = game.root if root is None else root
    if start is None:
        raise ValueError("need a root")

    def walk(m):
        v = m
        seen = {v}
        while True:
            if game.owner(v) == owner:
                v = strategy.choice[v]
            else:
                s = game.succ[v]
                if len(s) == 1 and observe(v, s[0]) is None:
                    v = s[0]
                else:
                    return v
            if v in seen:
                return v
            seen.add(v)

    rho = {}
    chi = {}
    order = [start]
    known = {start}
    queue = deque([start])
    while queue:
        m = queue.popleft()
        end = walk(m)
        chi[game.names[m]] = output(m, end)
        for i in inputs:
            targets = set()
            if game.owner(end) != owner:
                targets = {u for u in game.succ[end] if observe(end, u) == i}
            if len(targets) > 1:
                names = sorted(repr(game.names[u]) for u in targets)
                raise ValueError(f"ambiguous projection of input {i!r} at "
                                 f"{game.names[end]!r}: {', '.join(names)}")
            nxt = targets.pop() if targets else m
            rho[(game.names[m], i)] = game.names[nxt]
            if nxt not in known:
                known.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    memories = tuple(game.names[m] for m in order)
    outputs = tuple(dict.fromkeys(chi[m] for m in memories))
    return Transducer(tuple(inputs), outputs, memories, game.names[start], rho, chi)
