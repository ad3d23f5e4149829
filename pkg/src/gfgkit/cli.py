"""Command-line interface.

Exit codes: 0 success (GFG, verified, pass), 1 negative answer (not GFG,
falsified, discrepancy, fail), 2 usage or parse error, 3 the reference could
not be verified within the budget.
"""
from __future__ import annotations

import argparse
import json
import os
import sys

from . import oracle
from .automata import FINITE, normalize, dualize, validate
from .constructions import acw_to_dcw_pipeline, breakpoint
from .games import EVE, solve_parity
from .gfg import (NotGFGError, _decode_finite, determinize_gfg, finite_word_encoding,
                  is_gfg, residual_check)
from .products import accepts, compose, parse_lasso, synchronized_product
from .textfmt import (ParseError, read_arena, read_automaton, render_arena,
                      render_automaton, render_transducer)

EXIT_OK, EXIT_NO, EXIT_USAGE, EXIT_UNVERIFIED = 0, 1, 2, 3


class Output:
    """Human text or one JSON object per line."""

    def __init__(self, as_json: bool, stream=None):
        self.as_json = as_json
        self.stream = stream or sys.stdout

    def emit(self, human: str = "", **record):
        if self.as_json:
            if record:
                self.stream.write(json.dumps(record, sort_keys=True) + "\n")
        elif human:
            self.stream.write(human if human.endswith("\n") else human + "\n")


def _write_automaton(out: Output, a, path=None, kind="automaton"):
    text = render_automaton(a)
    if path:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
        out.emit(f"wrote {path}", event="written", path=path, states=len(a.states))
    else:
        out.emit(text, event=kind, text=text, states=len(a.states))


def _reference_gate(args, out, a, d) -> bool:
    if getattr(args, "skip_reference_check", False):
        return True
    res = oracle.reference_check(a, d, args.budget)
    out.emit(f"reference: {res.status}" + (f" (witness {res.summary().get('witness')})"
                                            if res.witness is not None else ""),
             event="reference", **res.summary())
    return res.verified


def cmd_check_gfg(args, out):
    a, d = read_automaton(args.automaton), read_automaton(args.reference)
    checked = _reference_gate(args, out, a, d)
    if not checked:
        return EXIT_UNVERIFIED
    v = is_gfg(a, d, reference_verified=not args.skip_reference_check)
    flag = lambda b: "compliant" if b else "NOT compliant"
    out.emit(f"nondeterminism: {flag(v.nondeterminism_compliant)}\n"
             f"universality: {flag(v.universality_compliant)}\n"
             f"verdict: {'GFG' if v.is_gfg else 'not GFG'}"
             + (" (conditional on the unchecked reference)" if v.conditional else ""),
             event="verdict", **v.summary())
    for key, title in (("eve_witness", "M_E"), ("adam_witness", "M_A"),
                       ("nondet_counter", "AdamCounterNondet"), ("univ_counter", "AdamCounterUniv")):
        t = getattr(v, key)
        if t is not None:
            text = render_transducer(t, title)
            out.emit(text, event="transducer", role=key, text=text)
    return EXIT_OK if v.is_gfg else EXIT_NO


def _gfg_or_exit(out, a, d):
    v = is_gfg(a, d)
    if not v.is_gfg:
        out.emit("input is not GFG", event="error", reason="not GFG", **v.summary())
        return None
    return v


def cmd_determinize(args, out):
    a, d = read_automaton(args.automaton), read_automaton(args.reference)
    if not _reference_gate(args, out, a, d):
        return EXIT_UNVERIFIED
    v = _gfg_or_exit(out, a, d)
    if v is None:
        return EXIT_NO
    det = determinize_gfg(normalize(v.automaton, "dnf"), v.eve_witness, v.adam_witness)
    if a.acceptance.kind == FINITE:
        det = _decode_finite(det, a.alphabet, v.automaton.alphabet[-1])
    _write_automaton(out, det, args.output)
    return EXIT_OK


def cmd_breakpoint(args, out):
    from .automata import as_buchi
    a = read_automaton(args.automaton)
    b = as_buchi(a)
    if b is None:
        raise ValueError(f"breakpoint needs Büchi-type acceptance, got {a.acceptance.kind}")
    _write_automaton(out, breakpoint(normalize(b, "dnf")), args.output)
    return EXIT_OK


def cmd_acw_to_dcw(args, out):
    a, d = read_automaton(args.automaton), read_automaton(args.reference)
    if not _reference_gate(args, out, a, d):
        return EXIT_UNVERIFIED
    try:
        res = acw_to_dcw_pipeline(a, d)
    except NotGFGError as err:
        out.emit(f"input is not GFG: {err}", event="error", reason="not GFG")
        return EXIT_NO
    out.emit(f"# pipeline: {json.dumps(res.summary(), sort_keys=True)}", event="pipeline", **res.summary())
    _write_automaton(out, res.result, args.output)
    return EXIT_OK


def cmd_dualize(args, out):
    _write_automaton(out, dualize(read_automaton(args.automaton)), args.output)
    return EXIT_OK


def cmd_normalize(args, out):
    _write_automaton(out, normalize(read_automaton(args.automaton), args.form), args.output)
    return EXIT_OK


def cmd_compose(args, out):
    _write_automaton(out, compose(read_automaton(args.outer), read_automaton(args.inner)), args.output)
    return EXIT_OK


def cmd_product(args, out):
    g = synchronized_product(read_arena(args.arena, game=False), read_automaton(args.automaton))
    text = render_arena(g, "product")
    out.emit(text, event="game", text=text, vertices=len(g))
    return EXIT_OK


def cmd_member(args, out):
    a = read_automaton(args.automaton)
    if a.acceptance.kind == FINITE:
        word = tuple(args.word.split(".")) if "." in args.word else tuple(args.word)
        if word == ("",):
            word = ()
        stray = set(word) - set(a.alphabet)
        if stray:
            raise ValueError(f"letters {sorted(stray)} are not in the alphabet")
    else:
        word = parse_lasso(args.word)
    ok = accepts(a, word)
    out.emit(f"{args.word}: {'accepted' if ok else 'rejected'}", event="member",
             word=args.word, accepted=ok)
    return EXIT_OK


def cmd_solve(args, out):
    g = read_arena(args.game, game=True)
    if not hasattr(g, "priority"):
        raise ValueError("game file needs a priority on every vertex")
    sol = solve_parity(g)
    names = [str(v) for v in g.names]
    eve = [names[v] for v in sorted(sol.eve)]
    adam = [names[v] for v in sorted(sol.adam)]
    strat = {names[v]: names[u] for s in sol.strategies for v, u in sorted(s.choice.items())}
    lines = ["eve: " + " ".join(eve), "adam: " + " ".join(adam)]
    lines += [f"move {v} -> {u}" for v, u in strat.items()]
    if g.root is not None:
        lines.append(f"winner from root: {'Eve' if sol.winner(g.root) == EVE else 'Adam'}")
    record = {"eve": eve, "adam": adam, "strategy": strat}
    if g.root is not None:
        record["root_winner"] = "Eve" if sol.winner(g.root) == EVE else "Adam"
    out.emit("\n".join(lines), event="solution", **record)
    return EXIT_OK


def cmd_equiv(args, out):
    a, b = read_automaton(args.left), read_automaton(args.right)
    res = oracle.equivalence(a, b, args.budget)
    text = f"equivalence: {res.status}"
    if res.witness is not None:
        text += f" (witness {res.summary()['witness']})"
    out.emit(text, event="equivalence", **res.summary())
    return {oracle.VERIFIED: EXIT_OK, oracle.FALSIFIED: EXIT_NO}.get(res.status, EXIT_UNVERIFIED)


def cmd_composition_test(args, out):
    a, d = read_automaton(args.automaton), read_automaton(args.reference)
    verified = _reference_gate(args, out, a, d)
    if not verified and not args.force:
        out.emit("reference not verified; use --force to test anyway", event="error",
                 reason="unverified reference")
        return EXIT_UNVERIFIED
    worst = EXIT_OK
    for variant in args.variant:
        rep = oracle.composition_test(a, d, args.size, args.trials, args.seed, variant,
                                      verified=verified, force=args.force)
        text = f"{variant}: {len(rep.discrepancies)} discrepancies in {args.trials} random trials"
        if rep.discrepancies:
            first = rep.discrepancies[0]
            text += (f"\nfirst discrepancy (trial {first['trial']}): reference winner "
                     f"{first['reference_winner']}, product winner {first['product_winner']}\n"
                     + first["arena"])
            worst = EXIT_NO
        out.emit(text, event="composition", **rep.summary())
    return worst


def cmd_residual_check(args, out):
    a, d = read_automaton(args.automaton), read_automaton(args.reference)
    if not _reference_gate(args, out, a, d):
        return EXIT_UNVERIFIED
    v = _gfg_or_exit(out, a, d)
    if v is None:
        return EXIT_NO
    rep = residual_check(a, v.eve_witness, v.adam_witness)
    out.emit(f"residual classes: {rep.classes}, minimal deterministic size {rep.minimal_size}, "
             f"bound {rep.bound}: {'pass' if rep.passed else 'FAIL'}", event="residual", **rep.summary())
    return EXIT_OK if rep.passed else EXIT_NO


def cmd_validate(args, out):
    a = read_automaton(args.automaton)
    problems = validate(a)
    out.emit("ok" if not problems else "\n".join(problems), event="validate", problems=problems,
             kind=a.kind)
    return EXIT_OK if not problems else EXIT_NO


def cmd_fixtures(args, out):
    from .fixtures import fixtures

    os.makedirs(args.export, exist_ok=True)
    for name, f in fixtures().items():
        if args.name and name not in args.name:
            continue
        for suffix, a in (("", f.automaton), (".ref", f.reference)):
            path = os.path.join(args.export, f"{name}{suffix}.aut")
            with open(path, "w", encoding="utf-8") as fh:
                fh.write(render_automaton(a))
            out.emit(f"wrote {path}", event="written", path=path, fixture=name)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="gfgkit", description="Good-for-games alternating automata toolkit")
    p.add_argument("--json", action="store_true", help="one JSON object per line")
    sub = p.add_subparsers(dest="command", required=True)

    def add(name, func, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.set_defaults(func=func)
        sp.add_argument("--json", action="store_true", default=argparse.SUPPRESS,
                        help="one JSON object per line")
        return sp

    def with_reference(sp):
        sp.add_argument("--automaton", required=True)
        sp.add_argument("--reference", required=True, help="deterministic automaton for the same language")
        sp.add_argument("--skip-reference-check", action="store_true")
        sp.add_argument("--budget", type=int, default=4, help="lasso bound for the reference check")
        return sp

    def with_output(sp):
        sp.add_argument("-o", "--output", help="write the automaton here instead of stdout")
        return sp

    with_reference(add("check-gfg", cmd_check_gfg, "decide GFG via the letter games"))
    with_output(with_reference(add("determinize", cmd_determinize, "determinize a GFG automaton")))
    sp = with_output(add("breakpoint", cmd_breakpoint, "alternating Büchi to nondeterministic Büchi"))
    sp.add_argument("--automaton", required=True)
    with_output(with_reference(add("acw-to-dcw", cmd_acw_to_dcw, "GFG alternating co-Büchi to deterministic")))
    sp = with_output(add("dualize", cmd_dualize, "swap And/Or and complement acceptance"))
    sp.add_argument("--automaton", required=True)
    sp = with_output(add("normalize", cmd_normalize, "rewrite transitions in DNF or CNF"))
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--form", choices=("dnf", "cnf"), default="dnf")
    sp = with_output(add("compose", cmd_compose, "compose a labelled outer automaton with an inner one"))
    sp.add_argument("--outer", required=True)
    sp.add_argument("--inner", required=True)
    sp = add("product", cmd_product, "synchronized product of an arena and an automaton")
    sp.add_argument("--arena", required=True)
    sp.add_argument("--automaton", required=True)
    sp = add("member", cmd_member, "membership of a lasso word u(v)^w (or a finite word)")
    sp.add_argument("--automaton", required=True)
    sp.add_argument("--word", required=True)
    sp = add("solve", cmd_solve, "solve a parity game file")
    sp.add_argument("--game", required=True)
    sp = add("equiv", cmd_equiv, "language equivalence")
    sp.add_argument("--left", required=True)
    sp.add_argument("--right", required=True)
    sp.add_argument("--budget", type=int, default=4)
    sp = with_reference(add("composition-test", cmd_composition_test, "randomized composition test"))
    sp.add_argument("--trials", type=int, default=200)
    sp.add_argument("--seed", type=int, default=0)
    sp.add_argument("--size", type=int, default=8, help="maximum arena size")
    sp.add_argument("--variant", nargs="+", choices=("two-player", "adam", "eve"),
                    default=["two-player", "adam", "eve"])
    sp.add_argument("--force", action="store_true", help="run even if the reference is not verified")
    with_reference(add("residual-check", cmd_residual_check, "residual classes of a GFG AFA/AWW"))
    sp = add("validate", cmd_validate, "report well-formedness problems")
    sp.add_argument("--automaton", required=True)
    sp = add("fixtures", cmd_fixtures, "export the built-in fixtures")
    sp.add_argument("--export", required=True, help="directory for the .aut files")
    sp.add_argument("--name", nargs="*", help="only these fixtures")
    return p


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    out = Output(args.json)
    try:
        return args.func(args, out)
    except (ParseError, ValueError, KeyError, OSError) as err:
        msg = str(err)
        if isinstance(err, KeyError):
            msg = f"unknown item {err}"
        if args.json:
            out.emit(event="error", error=msg)
        sys.stderr.write(f"gfgkit: error: {msg}\n")
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
