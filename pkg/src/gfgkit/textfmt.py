"""Line-oriented text format for automata, arenas and games.

Automaton files::

    automaton F2
    alphabet: a b
    states: q0 qa qb r
    initial: q0
    acceptance: buchi { qa qb }
    delta q0 a = q0 | qa | qb
    ...

Acceptance is one of ``finite``, ``weak``, ``buchi``, ``cobuchi`` (state
sets), ``parity { q:n ... }`` or ``labels { q:x ... }``.  ``&`` binds tighter
than ``|``.  Arena files list ``vertex v owner=E|A label=x [priority=n]``,
``edge v -> u`` and ``root v`` lines.  ``#`` starts a comment everywhere.
"""
from __future__ import annotations

import re
from typing import List, Optional, Tuple

from . import formulas as fm
from .automata import (BUCHI, COBUCHI, FINITE, KINDS, LABELS, PARITY, WEAK, Acceptance,
                       Automaton, Transducer, validate)
from .games import Arena, ParityGame

IDENT = r"[^\s|&()#:{}=]+"
_IDENT_RE = re.compile(IDENT)


class ParseError(ValueError):
    def __init__(self, message: str, line: int, column: int = 1):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


def _strip(raw: str) -> str:
    return raw.split("#", 1)[0].rstrip()


def _lines(text: str):
    for no, raw in enumerate(text.splitlines(), start=1):
        line = _strip(raw)
        if line.strip():
            yield no, line


def _col(line: str, frag: str) -> int:
    i = line.find(frag)
    return i + 1 if i >= 0 else 1


# -- conditions -------------------------------------------------------------

_TOKEN = re.compile(rf"\s*(?:(?P<op>[|&()])|(?P<id>{IDENT}))")


def parse_condition(text: str, line: int = 1, offset: int = 0) -> fm.Condition:
    tokens = []
    pos = 0
    while pos < len(text):
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            raise ParseError(f"unexpected character {text[pos:].strip()[0]!r}", line,
                             offset + pos + 1 + (len(text[pos:]) - len(text[pos:].lstrip())))
        tokens.append((m.group("op") or m.group("id"), bool(m.group("id")), offset + m.start(m.lastgroup) + 1))
        pos = m.end()
    k = 0

    def peek():
        return tokens[k] if k < len(tokens) else (None, False, offset + len(text) + 1)

    def expr():
        nonlocal k
        ops = [term()]
        while peek()[0] == "|" and not peek()[1]:
            k += 1
            ops.append(term())
        return fm.disj(ops) if len(ops) > 1 else ops[0]

    def term():
        nonlocal k
        ops = [atom()]
        while peek()[0] == "&" and not peek()[1]:
            k += 1
            ops.append(atom())
        return fm.conj(ops) if len(ops) > 1 else ops[0]

    def atom():
        nonlocal k
        tok, is_id, col = peek()
        if tok is None:
            raise ParseError("unexpected end of condition", line, col)
        if is_id:
            k += 1
            return fm.Leaf(tok)
        if tok == "(":
            k += 1
            inner = expr()
            if peek()[0] != ")" or peek()[1]:
                raise ParseError("expected ')'", line, peek()[2])
            k += 1
            return inner
        raise ParseError(f"unexpected {tok!r}", line, col)

    out = expr()
    if k != len(tokens):
        raise ParseError(f"unexpected {tokens[k][0]!r}", line, tokens[k][2])
    return out


# -- automata -----------------------------------------------------------------

def _parse_block(body: str, kind: str, no: int, line: str):
    m = re.fullmatch(r"\s*\{(.*)\}\s*", body)
    if not m:
        raise ParseError(f"expected '{{ ... }}' after {kind}", no, _col(line, kind) + len(kind))
    items = m.group(1).split()
    if kind in (PARITY, LABELS):
        pairs = {}
        for it in items:
            if it.count(":") != 1:
                raise ParseError(f"expected state:value, got {it!r}", no, _col(line, it))
            q, v = it.split(":")
            if kind == PARITY:
                if not v.isdigit():
                    raise ParseError(f"priority {v!r} is not a non-negative integer", no, _col(line, it))
                v = int(v)
            if q in pairs:
                raise ParseError(f"state {q!r} listed twice", no, _col(line, it))
            pairs[q] = v
        return Acceptance(kind, mapping=pairs)
    return Acceptance(kind, frozenset(items))


def parse_automaton(text: str) -> Automaton:
    """Parse the automaton format; errors carry line and column numbers."""
    name = "A"
    alphabet = states = initial = acc = None
    delta = {}
    where = {}
    header_line = {}
    for no, line in _lines(text):
        head = line.split(None, 1)[0]
        if head == "automaton":
            parts = line.split()
            if len(parts) != 2 or not _IDENT_RE.fullmatch(parts[1]):
                raise ParseError("expected 'automaton <name>'", no, 1)
            name = parts[1]
            continue
        if head == "delta":
            m = re.match(rf"\s*delta\s+({IDENT})\s+({IDENT})\s*=(.*)$", line)
            if not m:
                raise ParseError("expected 'delta <state> <letter> = <condition>'", no, 1)
            q, x, body = m.group(1), m.group(2), m.group(3)
            if (q, x) in delta:
                raise ParseError(f"second delta line for state {q!r} letter {x!r} "
                                 f"(first on line {where[(q, x)]})", no, 1)
            delta[(q, x)] = parse_condition(body, no, m.start(3))
            where[(q, x)] = no
            continue
        if ":" not in line:
            raise ParseError(f"unknown line {line.strip()!r}", no, 1)
        key, _, rest = line.partition(":")
        key = key.strip()
        if key in header_line:
            raise ParseError(f"duplicate {key!r} line", no, 1)
        header_line[key] = no
        if key == "alphabet":
            alphabet = rest.split()
            bad = [x for x in alphabet if not _IDENT_RE.fullmatch(x)]
            if bad or not alphabet or len(set(alphabet)) != len(alphabet):
                raise ParseError("alphabet must be distinct identifiers", no, _col(line, rest.strip() or ":"))
        elif key == "states":
            states = rest.split()
            if not states or len(set(states)) != len(states):
                raise ParseError("states must be distinct identifiers", no, _col(line, rest.strip() or ":"))
        elif key == "initial":
            parts = rest.split()
            if len(parts) != 1:
                raise ParseError("expected one initial state", no, _col(line, ":") + 1)
            initial = parts[0]
        elif key == "acceptance":
            body = rest.strip()
            kind = body.split("{", 1)[0].strip()
            if kind not in KINDS:
                raise ParseError(f"unknown acceptance kind {kind!r}", no, _col(line, body))
            acc = _parse_block(body[len(kind):], kind, no, line)
        else:
            raise ParseError(f"unknown key {key!r}", no, 1)
    for key, val in (("alphabet", alphabet), ("states", states), ("initial", initial), ("acceptance", acc)):
        if val is None:
            raise ParseError(f"missing '{key}:' line", 1, 1)
    sset = set(states)
    if initial not in sset:
        raise ParseError(f"initial state {initial!r} is not declared", header_line["initial"], 1)
    for (q, x), c in delta.items():
        if q not in sset:
            raise ParseError(f"unknown state {q!r}", where[(q, x)], 7)
        if x not in alphabet:
            raise ParseError(f"unknown letter {x!r}", where[(q, x)], 1)
        stray = fm.states_of(c) - sset
        if stray:
            raise ParseError(f"unknown states {sorted(stray)} in condition", where[(q, x)], 1)
    last = max(where.values(), default=1)
    for q in states:
        for x in alphabet:
            if (q, x) not in delta:
                raise ParseError(f"totality: missing delta line for state {q!r} letter {x!r}", last, 1)
    a = Automaton(tuple(alphabet), tuple(states), initial, delta, acc, name)
    problems = validate(a)
    if problems:
        raise ParseError("; ".join(problems), header_line.get("acceptance", 1), 1)
    return a


def _acceptance_text(a: Automaton) -> str:
    acc = a.acceptance
    if acc.kind in (PARITY, LABELS):
        m = acc.as_dict
        return f"{acc.kind} {{ " + " ".join(f"{q}:{m[q]}" for q in a.states) + " }"
    members = [q for q in a.states if q in acc.states]
    return f"{acc.kind} {{ " + " ".join(members) + (" }" if members else "}")


def _check_ident(x, what):
    if not _IDENT_RE.fullmatch(str(x)):
        raise ValueError(f"{what} {x!r} cannot be written in the text format")


def render_automaton(a: Automaton) -> str:
    for x in a.alphabet:
        _check_ident(x, "letter")
    for q in a.states:
        _check_ident(q, "state")
    name = re.sub(r"[\s|&()#:{}=]+", "_", a.name or "").strip("_") or "A"
    lines = [f"automaton {name}", "alphabet: " + " ".join(a.alphabet),
             "states: " + " ".join(a.states), f"initial: {a.initial}",
             f"acceptance: {_acceptance_text(a)}"]
    for q in a.states:
        for x in a.alphabet:
            lines.append(f"delta {q} {x} = {fm.to_text(a.delta[(q, x)])}")
    return "\n".join(lines) + "\n"


def read_automaton(path: str) -> Automaton:
    with open(path, encoding="utf-8") as fh:
        return parse_automaton(fh.read())


# -- arenas and games --------------------------------------------------------

_VERTEX = re.compile(rf"vertex\s+({IDENT})((?:\s+\w+=\S+)*)\s*$")
_EDGE = re.compile(rf"edge\s+({IDENT})\s*->\s*({IDENT})\s*$")
_ROOT = re.compile(rf"root\s+({IDENT})\s*$")


def parse_arena(text: str, game: Optional[bool] = None):
    """Parse an arena; returns a ParityGame when priorities are given."""
    names: List[str] = []
    attrs = {}
    edges: List[Tuple[str, str, int]] = []
    root = None
    root_line = 0
    for no, line in _lines(text):
        s = line.strip()
        if s.split()[0] in ("arena", "game"):
            continue
        m = _VERTEX.match(s)
        if m:
            v = m.group(1)
            if v in attrs:
                raise ParseError(f"vertex {v!r} declared twice", no, _col(line, v))
            kv = dict(p.split("=", 1) for p in m.group(2).split())
            unknown = set(kv) - {"owner", "label", "priority"}
            if unknown:
                raise ParseError(f"unknown attribute {sorted(unknown)[0]!r}", no, _col(line, sorted(unknown)[0]))
            if kv.get("owner") not in ("E", "A"):
                raise ParseError("owner must be E or A", no, _col(line, "owner") if "owner" in kv else len(line))
            if "priority" in kv and not kv["priority"].isdigit():
                raise ParseError("priority must be a non-negative integer", no, _col(line, "priority"))
            names.append(v)
            attrs[v] = (kv["owner"], kv.get("label"), int(kv["priority"]) if "priority" in kv else None, no)
            continue
        m = _EDGE.match(s)
        if m:
            edges.append((m.group(1), m.group(2), no))
            continue
        m = _ROOT.match(s)
        if m:
            if root is not None:
                raise ParseError("second root line", no, 1)
            root, root_line = m.group(1), no
            continue
        raise ParseError(f"unknown line {s!r}", no, 1)
    for u, v, no in edges:
        for x in (u, v):
            if x not in attrs:
                raise ParseError(f"edge mentions undeclared vertex {x!r}", no, 1)
    if root is not None and root not in attrs:
        raise ParseError(f"root {root!r} is not a vertex", root_line, 1)
    out_deg = {v: 0 for v in names}
    for u, _, _ in edges:
        out_deg[u] += 1
    for v in names:
        if not out_deg[v]:
            raise ParseError(f"vertex {v!r} has no successor", attrs[v][3], 1)
    prios = [attrs[v][2] for v in names]
    has_prio = [p is not None for p in prios]
    if any(has_prio) and not all(has_prio):
        missing = names[has_prio.index(False)]
        raise ParseError(f"vertex {missing!r} has no priority", attrs[missing][3], 1)
    labels = [attrs[v][1] for v in names]
    if all(lab is None for lab in labels):
        labels = None
    eve = [v for v in names if attrs[v][0] == "E"]
    pairs = [(u, v) for u, v, _ in edges]
    lab_map = dict(zip(names, labels)) if labels is not None else None
    if all(has_prio) and names and game is not False:
        return ParityGame.build(names, pairs, eve, dict(zip(names, prios)), lab_map, root)
    if game:
        raise ParseError("game needs a priority on every vertex", 1, 1)
    return Arena.build(names, pairs, eve, lab_map, root)


def _vname(v) -> str:
    if isinstance(v, str) and _IDENT_RE.fullmatch(v):
        return v
    if isinstance(v, tuple):
        text = "(" + ",".join(_vname(x) if not isinstance(x, fm.Condition) else
                              fm.to_text(x).replace(" ", "") for x in v) + ")"
    else:
        text = str(v)
    return re.sub(r"[\s|&()#:{}=]", lambda m: {"|": "+", "&": "*", "(": "[", ")": "]"}.get(m.group(), "_"), text)


def render_arena(arena: Arena, name: Optional[str] = None) -> str:
    names = [_vname(v) for v in arena.names]
    if len(set(names)) != len(names):
        names = [f"v{i}" for i in range(len(arena))]
    lines = [f"{'game' if isinstance(arena, ParityGame) else 'arena'} {name or 'G'}"]
    for i in range(len(arena)):
        parts = [f"vertex {names[i]}", f"owner={'E' if arena.eve[i] else 'A'}"]
        lab = arena.label(i)
        if lab is not None:
            parts.append(f"label={lab}")
        if isinstance(arena, ParityGame):
            parts.append(f"priority={arena.priority[i]}")
        lines.append(" ".join(parts))
    for i, j in arena.edges():
        lines.append(f"edge {names[i]} -> {names[j]}")
    if arena.root is not None:
        lines.append(f"root {names[arena.root]}")
    return "\n".join(lines) + "\n"


def read_arena(path: str, game: Optional[bool] = None):
    with open(path, encoding="utf-8") as fh:
        return parse_arena(fh.read(), game)


# -- transducers (dump only) ---------------------------------------------------

def _io_text(x) -> str:
    if x is None:
        return "-"
    if isinstance(x, frozenset):
        return "{" + " ".join(sorted(x)) + "}"
    if isinstance(x, tuple):
        return "(" + ", ".join(_io_text(y) for y in x) + ")"
    return str(x)


def render_transducer(t: Transducer, name: str = "M") -> str:
    ren = {m: f"m{i}" for i, m in enumerate(t.memories)}
    lines = [f"transducer {name}", f"memories: {len(t.memories)}", f"initial: {ren[t.initial]}"]
    for m in t.memories:
        lines.append(f"output {ren[m]} = {_io_text(t.chi[m])}")
    for m in t.memories:
        for i in t.inputs:
            n = t.rho[(m, i)]
            if n != m:
                lines.append(f"step {ren[m]} {_io_text(i)} -> {ren[n]}")
    return "\n".join(lines) + "\n"
