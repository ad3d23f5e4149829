"""Letter games, GFG verdicts, history-deterministic witnesses and the
transducer-product determinization.

Eve's letter game needs "w is not in L(A)" as part of Eve's winning
condition; it is made operational by a deterministic parity reference
automaton for L(A).  Eve then wins a play iff the run of A is accepting or
the reference run is rejecting.  That disjunction of two parity conditions
is a Rabin condition, compiled to parity with an index appearance record.
Adam's letter game is Eve's letter game of the dual automaton.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field, replace
from typing import Dict, FrozenSet, List, NamedTuple, Optional, Tuple

from . import formulas as fm
from .automata import (BUCHI, COBUCHI, FINITE, PARITY, WEAK, Acceptance, Automaton,
                       Transducer, dualize, normalize)
from .formulas import And, Condition, Leaf, Or
from .games import (ADAM, EVE, Arena, ParityGame, PositionalStrategy, solve_parity,
                    strategy_to_transducer)
from .products import (LassoWord, accepts, build_game, lassos, synchronized_product)

LETTER = "letter"
STATE = "state"

END = "$"


def letter_input(x: str):
    return (LETTER, x)


def state_input(q: str):
    return (STATE, q)


class NotGFGError(ValueError):
    """Raised when an operation needs a GFG automaton; carries the verdict."""

    def __init__(self, message, verdict=None):
        super().__init__(message)
        self.verdict = verdict


# -- Rabin conditions and the index appearance record ----------------------

@dataclass(frozen=True)
class RabinCondition:
    """Disjunction over pairs (good colours, bad colours): some pair's good
    set is seen infinitely often while its bad set is seen finitely often."""

    pairs: Tuple[Tuple[FrozenSet, FrozenSet], ...]

    def __post_init__(self):
        object.__setattr__(self, "pairs", tuple((frozenset(g), frozenset(b)) for g, b in self.pairs))

    def holds_on_cycle(self, colours) -> bool:
        cyc = set(colours)
        return any(cyc & g and not cyc & b for g, b in self.pairs)


def parity_disjunction(run_priorities, ref_priorities) -> RabinCondition:
    """Colours are pairs (run priority, complemented reference priority); the
    play is good iff either component's top recurring priority is even."""
    colours = [(r, s) for r in sorted(set(run_priorities)) for s in sorted(set(ref_priorities))]
    pairs = []
    for comp, prios in ((0, run_priorities), (1, ref_priorities)):
        for e in sorted({p for p in prios if p % 2 == 0}):
            good = {c for c in colours if c[comp] == e}
            bad = {c for c in colours if c[comp] > e}
            pairs.append((good, bad))
    return RabinCondition(tuple(pairs))


class IndexAppearanceRecord:
    """Parity memory for a Rabin condition.

    The record is a permutation of pair indices.  Visiting a colour emits a
    priority computed on the current record, then moves every pair whose bad
    set was hit to the front.  Pairs that are eventually never hit drift to
    the back; a winning pair sits behind every pair hit infinitely often.
    """

    def __init__(self, rabin: RabinCondition):
        self.rabin = rabin
        self.k = len(rabin.pairs)
        self._cache = {}

    @property
    def initial(self):
        return tuple(range(self.k))

    def step(self, record, colour):
        key = (record, colour)
        hit = self._cache.get(key)
        if hit is not None:
            return hit
        pairs = self.rabin.pairs
        f = g = 0
        bad = []
        rest = []
        for pos, i in enumerate(record, start=1):
            good, badset = pairs[i]
            if colour in badset:
                f = pos
                bad.append(i)
            else:
                if colour in good:
                    g = pos
                rest.append(i)
        if f and f >= g:
            prio = 2 * f + 1
        elif g:
            prio = 2 * g
        else:
            prio = 1
        out = (prio, tuple(bad + rest))
        self._cache[key] = out
        return out


# -- letter games -------------------------------------------------------------

class Config(NamedTuple):
    letter: Optional[str]
    cond: Condition
    ref: str
    record: tuple


def _check_reference(a: Automaton, d_ref: Automaton):
    if not d_ref.is_deterministic:
        raise ValueError("reference automaton must be deterministic")
    if set(a.alphabet) != set(d_ref.alphabet):
        raise ValueError("automaton and reference have different alphabets")
    for x in (a, d_ref):
        if not x.acceptance.is_omega:
            raise ValueError(f"{x.acceptance.kind} acceptance is not an infinite-word condition")


def build_eve_letter_game(a: Automaton, d_ref: Automaton) -> ParityGame:
    """Eve's letter game for ``a``, made finite through ``d_ref``.

    Vertices are ``Config(letter-or-None, condition, reference state, record)``.
    Adam owns letter choices and conjunctions, Eve owns disjunctions; only
    letter moves advance the reference.  State vertices carry the IAR
    priority of the colour (run priority, complemented reference priority);
    every other vertex has priority 0.
    """
    _check_reference(a, d_ref)
    run_p = {q: a.priority(q) for q in a.states}
    ref_p = {d: d_ref.priority(d) + 1 for d in d_ref.states}
    rabin = parity_disjunction(run_p.values(), ref_p.values())
    iar = IndexAppearanceRecord(rabin)
    alphabet = a.alphabet
    ddelta = {k: c.state for k, c in d_ref.delta.items()}

    def expand(v: Config):
        b = v.cond
        if isinstance(b, Leaf):
            q = b.state
            prio, rec = iar.step(v.record, (run_p[q], ref_p[v.ref]))
            succ = [Config(x, a.delta[(q, x)], ddelta[(v.ref, x)], rec) for x in alphabet]
            return ADAM, prio, None, succ
        owner = EVE if isinstance(b, Or) else ADAM
        return owner, 0, None, [Config(None, o, v.ref, v.record) for o in b.ops]

    root = Config(None, Leaf(a.initial), d_ref.initial, iar.initial)
    g = build_game([root], expand, root)
    g.rabin = rabin
    return g


def build_adam_letter_game(a: Automaton, d_ref: Automaton) -> ParityGame:
    """Adam's letter game, played as Eve's letter game of the dual automaton
    against the complemented reference.  Adam wins Adam's letter game of
    ``a`` iff Eve wins the returned game from its root."""
    return build_eve_letter_game(dualize(a), dualize(d_ref))


def eve_wins_letter_game(a, d_ref) -> bool:
    g = build_eve_letter_game(a, d_ref)
    return solve_parity(g).winner(g.root) == EVE


def adam_wins_letter_game(a, d_ref) -> bool:
    g = build_adam_letter_game(a, d_ref)
    return solve_parity(g).winner(g.root) == EVE


# -- finite words ---------------------------------------------------------

def _end_marker(alphabet) -> str:
    mark = END
    while mark in alphabet:
        mark += END
    return mark


def finite_word_encoding(a: Automaton) -> Automaton:
    """Weak automaton over ``alphabet + [$]`` for ``L(a) . $ . anything``.

    Used to run letter games on finite-word automata.
    """
    if a.acceptance.kind != FINITE:
        raise ValueError("expected finite-word acceptance")
    mark = _end_marker(a.alphabet)
    acc, rej = "_acc", "_rej"
    while acc in a.states or rej in a.states:
        acc, rej = acc + "_", rej + "_"
    alphabet = a.alphabet + (mark,)
    delta = dict(a.delta)
    for q in a.states:
        delta[(q, mark)] = Leaf(acc if q in a.acceptance.states else rej)
    for x in alphabet:
        delta[(acc, x)] = Leaf(acc)
        delta[(rej, x)] = Leaf(rej)
    return Automaton(alphabet, a.states + (acc, rej), a.initial, delta,
                     Acceptance.weak({acc}), f"enc({a.name})")


def _omega_pair(a, d_ref):
    if a.acceptance.kind == FINITE:
        if d_ref.acceptance.kind != FINITE:
            raise ValueError("finite-word automaton needs a finite-word reference")
        return finite_word_encoding(a), finite_word_encoding(d_ref)
    return a, d_ref


# -- witnesses --------------------------------------------------------------

def _eve_transducer(game: ParityGame, strategy: PositionalStrategy, a: Automaton) -> Transducer:
    """M_E from Eve's letter game on a DNF automaton: reads letters and Adam's
    state choices, outputs the chosen clause after a letter and None otherwise."""
    names = game.names
    inputs = [letter_input(x) for x in a.alphabet] + [state_input(q) for q in a.states]

    def observe(v, u):
        cv, cu = names[v], names[u]
        if isinstance(cv.cond, Leaf):
            return letter_input(cu.letter)
        if isinstance(cv.cond, And) and isinstance(cu.cond, Leaf):
            return state_input(cu.cond.state)
        return None

    def output(m, end):
        if names[m].letter is None:
            return None
        return fm.states_of(names[end].cond)

    return strategy_to_transducer(game, strategy, inputs, observe, output)


def _choice_transducer(game: ParityGame, strategy: PositionalStrategy, a: Automaton,
                       mode: str) -> Transducer:
    """Transducers for CNF-shaped letter games (Adam picks a letter and a
    clause, Eve picks a state of the clause).

    mode "eve": Eve's strategy as M_A, inputs (letter, clause) -> output state.
    mode "adam": Adam's strategy, inputs Eve's states -> output (letter, clause).
    Memories are state vertices in both cases.
    """
    names = game.names
    idx = game.index
    choice = strategy.choice

    def next_leaf(v, q):
        cv = names[v].cond
        if isinstance(cv, Leaf):
            return v if cv.state == q else None
        for u in game.succ[v]:
            if names[u].cond == Leaf(q):
                return u
        return None

    def clause_vertex(u, clause_cond):
        cu = names[u].cond
        if isinstance(cu, And):
            for w in game.succ[u]:
                if names[w].cond == clause_cond:
                    return w
            return None
        return u if cu == clause_cond else None

    rho = {}
    chi = {}
    start = game.root
    order = [start]
    seen = {start}
    queue = deque([start])
    if mode == "eve":
        clauses = {}
        for (q, x), c in a.delta.items():
            for cl in fm.cnf_clauses(c):
                clauses.setdefault(x, set()).add(cl)
        inputs = [(x, cl) for x in a.alphabet for cl in sorted(clauses.get(x, ()), key=sorted)]
    else:
        inputs = [state_input(q) for q in a.states]
    while queue:
        m = queue.popleft()
        cm = names[m]
        if mode == "eve":
            chi[m] = cm.cond.state
            for x, cl in inputs:
                nxt = m
                u = next(w for w in game.succ[m] if names[w].letter == x)
                v = clause_vertex(u, fm.disj(sorted(cl)))
                if v is not None:
                    w = choice[v] if isinstance(names[v].cond, Or) else v
                    nxt = w
                rho[(m, (x, cl))] = nxt
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
        else:
            u = choice[m]
            v = choice[u] if isinstance(names[u].cond, And) else u
            clause = fm.states_of(names[v].cond)
            chi[m] = (names[u].letter, clause)
            for inp in inputs:
                w = next_leaf(v, inp[1]) if inp[1] in clause else None
                nxt = m if w is None else w
                rho[(m, inp)] = nxt
                if nxt not in seen:
                    seen.add(nxt)
                    order.append(nxt)
                    queue.append(nxt)
    mem = tuple(names[m] for m in order)
    rho_n = {(names[m], i): names[t] for (m, i), t in rho.items()}
    chi_n = {names[m]: o for m, o in chi.items()}
    outputs = tuple(dict.fromkeys(chi_n[m] for m in mem))
    return Transducer(tuple(inputs), outputs, mem, names[start], rho_n, chi_n)


def compact(t: Transducer) -> Transducer:
    """Rename memories to 0..n-1 (in order)."""
    ren = {m: i for i, m in enumerate(t.memories)}
    return Transducer(t.inputs, t.outputs, tuple(range(len(ren))), ren[t.initial],
                      {(ren[m], i): ren[n] for (m, i), n in t.rho.items()},
                      {ren[m]: o for m, o in t.chi.items()})


@dataclass
class GfgVerdict:
    nondeterminism_compliant: bool
    universality_compliant: bool
    eve_witness: Optional[Transducer] = None  # M_E, DNF shape
    adam_witness: Optional[Transducer] = None  # M_A, DNF shape
    nondet_counter: Optional[Transducer] = None  # Adam wins Eve's game on CNF(a)
    univ_counter: Optional[Transducer] = None  # Adam wins Eve's game on dual(DNF(a))
    automaton: Optional[Automaton] = None  # the (possibly encoded) automaton judged
    reference: Optional[Automaton] = None
    conditional: bool = True
    game_sizes: Dict[str, int] = field(default_factory=dict)

    @property
    def is_gfg(self) -> bool:
        return self.nondeterminism_compliant and self.universality_compliant

    def summary(self) -> dict:
        out = {
            "gfg": self.is_gfg,
            "nondeterminism_compliant": self.nondeterminism_compliant,
            "universality_compliant": self.universality_compliant,
            "conditional": self.conditional,
            "game_sizes": dict(sorted(self.game_sizes.items())),
        }
        for key in ("eve_witness", "adam_witness", "nondet_counter", "univ_counter"):
            t = getattr(self, key)
            if t is not None:
                out[key + "_memory"] = len(t)
        return out

    def counter_arenas(self) -> List[Arena]:
        """One-player arenas built from the counter-strategies (all-Adam for
        the nondeterminism, all-Eve for the universality)."""
        out = []
        if self.nondet_counter is not None:
            out.append(counter_arena(self.nondet_counter, ADAM))
        if self.univ_counter is not None:
            out.append(counter_arena(self.univ_counter, EVE))
        return out


def counter_arena(counter: Transducer, owner: int) -> Arena:
    from .products import transducer_to_one_player_game

    return transducer_to_one_player_game(
        counter, owner, letter_of=lambda out: out[0],
        legal=lambda m, out: [state_input(q) for q in sorted(out[1])])


def _solve_root(game):
    sol = solve_parity(game)
    return sol, sol.winner(game.root) == EVE


def is_gfg(a: Automaton, d_ref: Automaton, witnesses: bool = True,
           reference_verified: bool = False) -> GfgVerdict:
    """Decide both letter games; optionally extract witnesses.

    The flags come from the games on ``a`` as given.  Witnesses come from the
    games on its DNF (M_E), CNF (Adam's counter-strategy), and on the dual of
    its DNF (M_A, or Eve's counter-strategy seen as Adam's in the dual); the
    normalized games must agree with the flags.
    """
    a, d_ref = _omega_pair(a, d_ref)
    sizes = {}
    g_e = build_eve_letter_game(a, d_ref)
    _, nondet = _solve_root(g_e)
    g_a = build_adam_letter_game(a, d_ref)
    _, univ = _solve_root(g_a)
    sizes["eve_game"] = len(g_e)
    sizes["adam_game"] = len(g_a)
    verdict = GfgVerdict(nondet, univ, automaton=a, reference=d_ref,
                         conditional=not reference_verified, game_sizes=sizes)
    if not witnesses:
        return verdict
    dnf = normalize(a, "dnf")
    if nondet:
        g = build_eve_letter_game(dnf, d_ref)
        sol, won = _solve_root(g)
        _agree(won, nondet, "DNF")
        verdict.eve_witness = _eve_transducer(g, sol.strategies[EVE], dnf)
        sizes["eve_game_dnf"] = len(g)
    else:
        cnf = normalize(a, "cnf")
        g = build_eve_letter_game(cnf, d_ref)
        sol, won = _solve_root(g)
        _agree(won, nondet, "CNF")
        verdict.nondet_counter = _choice_transducer(g, sol.strategies[ADAM], cnf, "adam")
        sizes["eve_game_cnf"] = len(g)
    dual = dualize(dnf)
    g = build_eve_letter_game(dual, dualize(d_ref))
    sol, won = _solve_root(g)
    _agree(won, univ, "dual DNF")
    sizes["adam_game_dnf"] = len(g)
    if univ:
        verdict.adam_witness = _choice_transducer(g, sol.strategies[EVE], dual, "eve")
    else:
        verdict.univ_counter = _choice_transducer(g, sol.strategies[ADAM], dual, "adam")
    return verdict


def _agree(got, expected, what):
    if got != expected:
        raise AssertionError(f"letter game on the {what} form disagrees with the original form")


def extract_hd_transducers(a: Automaton, d_ref: Automaton, verdict: Optional[GfgVerdict] = None):
    """History-determinism witnesses ``(M_E, M_A)`` for the DNF of ``a``.

    M_E reads letters and states (tagged ``("letter", x)`` / ``("state", q)``)
    and outputs a clause (frozenset of states) after a letter, None otherwise.
    M_A reads ``(letter, clause)`` pairs and outputs a state.
    """
    verdict = verdict or is_gfg(a, d_ref)
    if not verdict.is_gfg:
        raise NotGFGError("automaton is not GFG: "
                          f"nondeterminism compliant={verdict.nondeterminism_compliant}, "
                          f"universality compliant={verdict.universality_compliant}", verdict)
    return verdict.eve_witness, verdict.adam_witness


# -- replays -------------------------------------------------------------------

def replay_eve(a_dnf: Automaton, m_e: Transducer, w: LassoWord) -> bool:
    """Does Eve win the model-checking game of ``w`` when her choices follow M_E?"""
    prio = {q: a_dnf.priority(q) + 2 for q in a_dnf.states}

    def after_letter(q, i, y):
        x = w.letter(i)
        y1 = m_e.step(y, letter_input(x))
        clause = m_e.chi[y1]
        if clause not in fm.dnf_clauses(a_dnf.delta[(q, x)]):
            raise ValueError(f"M_E proposes {sorted(clause)} outside delta({q}, {x})")
        return ("c", i, clause, y1)

    def expand(v):
        if v[0] == "s":
            _, i, q, y = v
            return ADAM, prio[q], None, [after_letter(q, w.next(i), y)]
        _, i, clause, y1 = v
        return ADAM, 0, None, [("s", i, q, m_e.step(y1, state_input(q))) for q in sorted(clause)]

    root = after_letter(a_dnf.initial, 0, m_e.initial)
    g = build_game([root], expand, root)
    return solve_parity(g).winner(g.root) == EVE


def replay_adam(a_dnf: Automaton, m_a: Transducer, w: LassoWord) -> bool:
    """Does Adam win the model-checking game of ``w`` when his choices follow M_A?"""
    prio = {q: a_dnf.priority(q) + 2 for q in a_dnf.states}

    def moves(q, i, x_mem):
        x = w.letter(i)
        out = []
        for clause in fm.dnf_clauses(a_dnf.delta[(q, x)]):
            x2 = m_a.step(x_mem, (x, clause))
            q2 = m_a.chi[x2]
            if q2 not in clause:
                raise ValueError(f"M_A answers {q2} outside clause {sorted(clause)}")
            out.append(("s", i, q2, x2))
        return out

    def expand(v):
        if v[0] == "r":
            return EVE, 0, None, moves(a_dnf.initial, 0, m_a.initial)
        _, i, q, xm = v
        return EVE, prio[q], None, moves(q, w.next(i), xm)

    root = ("r",)
    g = build_game([root], expand, root)
    return solve_parity(g).winner(g.root) == ADAM


def simple_lassos(arena: Arena, limit: int = 200):
    """Words of simple lassos from the root of an arena (DFS order)."""
    out = []
    path = [arena.root]
    pos = {arena.root: 0}

    def dfs():
        if len(out) >= limit:
            return
        v = path[-1]
        for u in arena.succ[v]:
            if u in pos:
                i = pos[u]
                labels = [arena.label(p) for p in path]
                out.append(LassoWord(tuple(labels[:i]), tuple(labels[i:])))
                if len(out) >= limit:
                    return
            else:
                pos[u] = len(path)
                path.append(u)
                dfs()
                path.pop()
                del pos[u]

    dfs()
    return list(dict.fromkeys(out))


@dataclass
class ReplayReport:
    nondeterminism_hd: bool
    universality_hd: bool
    words: int
    failures: List[str] = field(default_factory=list)

    @property
    def is_gfg(self):
        return self.nondeterminism_hd and self.universality_hd


def hd_replay(a: Automaton, verdict: GfgVerdict, max_prefix: int = 3, max_period: int = 3,
              lasso_limit: int = 200) -> ReplayReport:
    """Replay the verdict's transducers without consulting the reference.

    A witness (M_E / M_A) must win every sampled model-checking game it is
    responsible for.  A counter-strategy must produce only words of the right
    polarity along the simple lassos of its one-player arena, and must beat
    the automaton in the product with that arena.
    """
    a = verdict.automaton or a
    dnf = normalize(a, "dnf")
    words = list(lassos(a.alphabet, max_prefix, max_period))
    member = {w: accepts(a, w) for w in words}
    fails = []
    if verdict.eve_witness is not None:
        for w in words:
            if member[w] and not replay_eve(dnf, verdict.eve_witness, w):
                fails.append(f"M_E loses on {w}")
        nondet = not any(f.startswith("M_E") for f in fails)
    else:
        nondet = not _counter_holds(a, verdict.nondet_counter, ADAM, lasso_limit, fails)
    if verdict.adam_witness is not None:
        for w in words:
            if not member[w] and not replay_adam(dnf, verdict.adam_witness, w):
                fails.append(f"M_A loses on {w}")
        univ = not any(f.startswith("M_A") for f in fails)
    else:
        univ = not _counter_holds(a, verdict.univ_counter, EVE, lasso_limit, fails)
    return ReplayReport(nondet, univ, len(words), fails)


def _counter_holds(a, counter, owner, limit, fails) -> bool:
    arena = counter_arena(counter, owner)
    want = owner == ADAM  # Adam's arena stays inside L(a); Eve's stays outside
    for w in simple_lassos(arena, limit):
        if accepts(a, w) != want:
            fails.append(f"counter-strategy path {w} has the wrong polarity")
            return False
    g = synchronized_product(arena, a)
    eve_wins = solve_parity(g).winner(g.root) == EVE
    if eve_wins == (owner == ADAM):
        fails.append("counter-strategy does not beat the automaton in the product")
        return False
    return True


# -- determinization ---------------------------------------------------------

def determinize_gfg(a: Automaton, m_e: Transducer, m_a: Transducer) -> Automaton:
    """Deterministic product of a DNF automaton with its two HD witnesses.

    From (q, x, y) on letter c: y1 = rho_E(y, c), C = chi_E(y1),
    x' = rho_A(x, (c, C)), q' = chi_A(x'), y' = rho_E(y1, q').
    The acceptance kind is kept and read through the first component.
    """
    if a.acceptance.kind == FINITE:
        raise ValueError("encode finite-word automata with finite_word_encoding first")
    for x in a.alphabet:
        if letter_input(x) not in m_e.inputs:
            raise ValueError(f"M_E does not read letter {x!r}")
    ren_a = {m: i for i, m in enumerate(m_a.memories)}
    ren_e = {m: i for i, m in enumerate(m_e.memories)}

    def name(t):
        q, x, y = t
        return f"[{q},{ren_a[x]},{ren_e[y]}]"

    start = (a.initial, m_a.initial, m_e.initial)
    order = [start]
    seen = {start}
    delta = {}
    queue = deque([start])
    while queue:
        t = queue.popleft()
        q, xm, ym = t
        for c in a.alphabet:
            y1 = m_e.step(ym, letter_input(c))
            clause = m_e.chi[y1]
            if not isinstance(clause, frozenset):
                raise ValueError("M_E must output a clause after a letter")
            if clause not in fm.dnf_clauses(a.delta[(q, c)]):
                raise ValueError(f"M_E clause {sorted(clause)} is not a clause of delta({q},{c})")
            if (xm, (c, clause)) not in m_a.rho:
                raise ValueError(f"M_A has no transition on ({c}, {sorted(clause)})")
            x2 = m_a.step(xm, (c, clause))
            q2 = m_a.chi[x2]
            if q2 not in clause:
                raise ValueError(f"M_A picks {q2} outside clause {sorted(clause)}")
            y2 = m_e.step(y1, state_input(q2))
            t2 = (q2, x2, y2)
            delta[(name(t), c)] = Leaf(name(t2))
            if t2 not in seen:
                seen.add(t2)
                order.append(t2)
                queue.append(t2)
    states = [name(t) for t in order]
    first = {name(t): t[0] for t in order}
    acc = a.acceptance
    if acc.kind == PARITY:
        new_acc = Acceptance.parity({s: acc.priority(first[s]) for s in states})
    else:
        new_acc = Acceptance(acc.kind, {s for s in states if first[s] in acc.states})
    return Automaton(a.alphabet, states, name(start), delta, new_acc, f"det({a.name})")


# -- residual languages -------------------------------------------------------

@dataclass
class ResidualReport:
    classes: int
    minimal_size: int
    bound: int
    determinized_size: int

    @property
    def passed(self) -> bool:
        return self.minimal_size <= self.bound

    def summary(self):
        return {"classes": self.classes, "minimal_size": self.minimal_size,
                "bound": self.bound, "determinized_size": self.determinized_size,
                "pass": self.passed}


def residual_check(a: Automaton, m_e: Transducer, m_a: Transducer) -> ResidualReport:
    """Determinize a GFG AFA / AWW through its witnesses and count residual classes.

    For finite words the witnesses are those of ``finite_word_encoding(a)``;
    the product is read back as a DFA and minimized.  For weak automata,
    reachable states of the product are grouped by language equivalence.
    Passes iff the minimal deterministic size is at most |Q(a)|.
    """
    from .constructions import minimize_dfa
    from .oracle import deterministic_equivalent

    kind = a.acceptance.kind
    if kind == FINITE:
        enc = normalize(finite_word_encoding(a), "dnf")
        det = determinize_gfg(enc, m_e, m_a)
        dfa = _decode_finite(det, a.alphabet, enc.alphabet[-1])
        minimal = minimize_dfa(dfa)
        n = len(minimal.states)
        return ResidualReport(n, n, len(a.states), len(det.states))
    if kind != WEAK:
        raise ValueError("residual_check needs finite-word or weak acceptance")
    det = determinize_gfg(normalize(a, "dnf"), m_e, m_a)
    reps = []
    for s in det.states:
        d_s = replace(det, initial=s)
        if not any(deterministic_equivalent(d_s, r) for r in reps):
            reps.append(d_s)
    return ResidualReport(len(reps), len(reps), len(a.states), len(det.states))


def _decode_finite(det: Automaton, alphabet, mark) -> Automaton:
    """DFA over ``alphabet`` from a deterministic encoding over ``alphabet + [mark]``."""
    from .products import LassoWord as _L

    reach = [det.initial]
    seen = {det.initial}
    i = 0
    while i < len(reach):
        s = reach[i]
        i += 1
        for x in alphabet:
            t = det.delta[(s, x)].state
            if t not in seen:
                seen.add(t)
                reach.append(t)
    final = set()
    for s in reach:
        if accepts(replace(det, initial=s), _L((), (mark,))):
            final.add(s)
    delta = {(s, x): det.delta[(s, x)] for s in reach for x in alphabet}
    return Automaton(tuple(alphabet), tuple(reach), det.initial, delta,
                     Acceptance.finite(final), f"dfa({det.name})")
