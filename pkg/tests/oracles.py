"""Independent membership oracles that avoid the game solver."""
import networkx as nx

from gfgkit import formulas as fm
from gfgkit.automata import BUCHI, COBUCHI, WEAK, dualize, normalize
from gfgkit.constructions import breakpoint


def finitely_many_a_or_b(w):
    return len(set(w.period)) == 1


def only_a(w):
    return set(w.prefix) <= {"a"} and set(w.period) == {"a"}


def deterministic_run_accepts(d, w):
    """Simulate a deterministic automaton on a lasso until (position, state) repeats."""
    n = len(w)
    seen = {}
    trail = []
    q, i = d.initial, 0
    while (i, q) not in seen:
        seen[(i, q)] = len(trail)
        trail.append(q)
        q = d.delta[(q, w.letter(i))].state
        i = w.next(i)
    cycle = trail[seen[(i, q)]:]
    return max(d.priority(p) for p in cycle) % 2 == 0


def nbw_accepts(n, w):
    """Nondeterministic Büchi membership: an accepting cycle reachable in the
    product of lasso positions and states."""
    g = nx.DiGraph()
    start = (0, n.initial)
    stack = [start]
    g.add_node(start)
    while stack:
        i, q = stack.pop()
        for p in fm.states_of(n.delta[(q, w.letter(i))]):
            nxt = (w.next(i), p)
            if nxt not in g:
                g.add_node(nxt)
                stack.append(nxt)
            g.add_edge((i, q), nxt)
    acc = n.acceptance.states
    for comp in nx.strongly_connected_components(g):
        v = next(iter(comp))
        if (len(comp) > 1 or g.has_edge(v, v)) and any(q in acc for _, q in comp):
            return True
    return False


def lasso_member(a, w):
    """Membership through the breakpoint construction (Büchi / weak) or its
    dual (co-Büchi)."""
    kind = a.acceptance.kind
    if a.is_deterministic:
        return deterministic_run_accepts(a, w)
    if kind in (BUCHI, WEAK):
        return nbw_accepts(breakpoint(normalize(a, "dnf")), w)
    if kind == COBUCHI:
        return not lasso_member(dualize(a), w)
    raise ValueError(kind)
