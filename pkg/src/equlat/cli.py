"""Command-line surface: file-based lattice calculators, relation demos that
verify their own claims, and the verification suites.

Exit status is 0 when the operation succeeded (and, for checks/demos/verify,
when every check passed); 1 when a check failed; 2 for unusable input.
"""
from __future__ import annotations

import argparse
import ast
import sys
from typing import Callable, Sequence

from . import automatic as am
from . import constructions as cs
from . import decider as dc
from . import tm as tmlab
from . import verify as vf
from .dfa import Dfa, dfa_from_text, dfa_to_text
from .partition import Partition


def _read(path: str) -> str:
    with open(path, "r", encoding="utf-8") as fh:
        return fh.read()


def _emit(text: str, out: str | None) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
        print(f"wrote {out}")
    else:
        sys.stdout.write(text)


def _load_partition(path: str) -> Partition:
    return Partition.from_text(_read(path))


def _load_dfa(path: str) -> Dfa:
    return dfa_from_text(_read(path))


def _load_automatic(path: str) -> am.AutomaticEq:
    return am.AutomaticEq.from_dfa(_load_dfa(path))


# -- partition group ---------------------------------------------------------

def cmd_partition(args) -> int:
    if args.op in ("meet", "join", "leq"):
        if len(args.inputs) != 2:
            print(f"usage: equlat partition {args.op} LEFT RIGHT", file=sys.stderr)
            return 2
        e = _load_partition(args.inputs[0])
        f = _load_partition(args.inputs[1])
        if args.op == "leq":
            print("true" if e.leq(f) else "false")
            return 0
        result = e.meet(f) if args.op == "meet" else e.join(f)
        _emit(result.to_text(), args.out)
        return 0
    e = _load_partition(args.inputs[0])
    if args.op == "complement":
        _emit(e.least_element_complement().to_text(), args.out)
        return 0
    if args.op == "atoms":
        lines = "".join(f"atom: {a.a} {a.b}\n" for a in e.atoms())
        _emit(lines, args.out)
        return 0
    raise AssertionError(args.op)


# -- automatic group ----------------------------------------------------------

def cmd_automatic(args) -> int:
    op = args.op
    if op == "builtin":
        names = sorted(am.corpus())
        if not args.inputs:
            print("\n".join(names))
            return 0
        name = args.inputs[0]
        if name not in am.corpus():
            print(f"unknown builtin {name!r}; have: {', '.join(names)}", file=sys.stderr)
            return 2
        _emit(dfa_to_text(am.corpus()[name].dfa), args.out)
        return 0
    if not args.inputs:
        print("a DFA file is required", file=sys.stderr)
        return 2
    if op == "check":
        d = _load_dfa(args.inputs[0])
        rows = [
            ("format", am.check_format(d)),
            ("reflexivity", am.check_reflexive(d)),
            ("symmetry", am.check_symmetric(d)),
            ("transitivity", am.check_transitive(d)),
        ]
        for name, passed in rows:
            print(f"[{'PASS' if passed else 'FAIL'}] {name}")
        return 0 if all(p for _, p in rows) else 1
    if op == "decide":
        if len(args.inputs) != 3:
            print("usage: equlat automatic decide DFA M N", file=sys.stderr)
            return 2
        rel = _load_automatic(args.inputs[0])
        print("true" if rel.decide(int(args.inputs[1]), int(args.inputs[2])) else "false")
        return 0
    if op == "reps":
        rel = _load_automatic(args.inputs[0])
        print(" ".join(str(r) for r in rel.representatives()))
        return 0
    if op == "minimize":
        _emit(dfa_to_text(am.minimize(_load_dfa(args.inputs[0]))), args.out)
        return 0
    if op in ("meet", "join"):
        if len(args.inputs) != 2:
            print(f"usage: equlat automatic {op} LEFT RIGHT", file=sys.stderr)
            return 2
        a = _load_automatic(args.inputs[0])
        b = _load_automatic(args.inputs[1])
        result = a.meet(b) if op == "meet" else a.join(b)
        _emit(dfa_to_text(result.dfa), args.out)
        return 0
    if op == "coarsen":
        if not args.inputs or not args.blocks:
            print("usage: equlat automatic coarsen DFA --blocks '0 1; 2'", file=sys.stderr)
            return 2
        rel = _load_automatic(args.inputs[0])
        blocks = _parse_blocks(args.blocks)
        _emit(dfa_to_text(rel.coarsen(blocks).dfa), args.out)
        return 0
    raise AssertionError(op)


def _parse_blocks(text: str) -> list[list[int]]:
    """Class grouping syntax: semicolon-separated blocks of class indices,
    e.g. '0 1; 2'."""
    blocks = []
    for chunk in text.split(";"):
        if chunk.strip():
            blocks.append([int(tok) for tok in chunk.split()])
    return blocks


# -- decider group -----------------------------------------------------------

DECIDER_GRAMMAR = """\
decider expressions:
  bottom                     equality only
  top                        everything related
  parity                     same value mod 2
  singular(even|odd|prime)   predicate members grouped, rest singletons
  meet(E1, E2)               conjunction
  complement(E)              least-element complement of E
  approx_even(MACHINE)       even-clock step closure for a zoo machine
  approx_odd(MACHINE)        odd-clock step closure for a zoo machine
  nonhalt(N)                 machines still running after N steps grouped
"""


def parse_decider_expr(text: str) -> dc.DeciderEq:
    try:
        tree = ast.parse(text.strip(), mode="eval").body
    except SyntaxError as exc:
        raise ValueError(f"cannot parse expression: {exc.msg}") from None
    return _build_expr(tree)


def _build_expr(node: ast.expr) -> dc.DeciderEq:
    if isinstance(node, ast.Name):
        simple = {
            "bottom": dc.bottom_decider,
            "top": dc.top_decider,
            "parity": dc.parity_decider,
        }
        if node.id not in simple:
            raise ValueError(f"unknown decider {node.id!r}")
        return simple[node.id]()
    if not isinstance(node, ast.Call) or not isinstance(node.func, ast.Name):
        raise ValueError("expression must be names and calls only")
    name = node.func.id
    args = node.args
    if name == "meet" and len(args) == 2:
        return dc.meet_combinator(_build_expr(args[0]), _build_expr(args[1]))
    if name == "complement" and len(args) == 1:
        return dc.least_element_complement(_build_expr(args[0]))
    if name == "singular" and len(args) == 1 and isinstance(args[0], ast.Name):
        pred = cs.BUILTIN_PREDICATES.get(args[0].id)
        if pred is None:
            raise ValueError(f"unknown predicate {args[0].id!r}")
        return dc.singular_from_predicate(pred, cost_note=f"singular({args[0].id})")
    if name in ("approx_even", "approx_odd") and len(args) == 1 and isinstance(args[0], ast.Name):
        machine = tmlab.load_machine(args[0].id)
        return tmlab.approx_even(machine) if name == "approx_even" else tmlab.approx_odd(machine)
    if name == "nonhalt" and len(args) == 1 and isinstance(args[0], ast.Constant):
        return tmlab.nonhalt_eq(int(args[0].value))
    raise ValueError(f"cannot interpret {ast.dump(node)}")


def cmd_decider(args) -> int:
    rel = parse_decider_expr(args.expr)
    if args.op == "decide":
        if len(args.values) != 2:
            print("usage: equlat decider decide EXPR M N", file=sys.stderr)
            return 2
        print("true" if rel.decide(args.values[0], args.values[1]) else "false")
        return 0
    if args.op == "restrict":
        if len(args.values) != 1:
            print("usage: equlat decider restrict EXPR N", file=sys.stderr)
            return 2
        _emit(rel.restrict(args.values[0]).to_text(), args.out)
        return 0
    if args.op == "check":
        ok = dc.is_equivalence_sampled(rel, args.bound)
        print(f"[{'PASS' if ok else 'FAIL'}] equivalence axioms on {{0..{args.bound - 1}}}")
        print(f"cost note: {rel.cost_note}")
        return 0 if ok else 1
    raise AssertionError(args.op)


# -- tm group ------------------------------------------------------------------

def cmd_tm(args) -> int:
    if args.op == "zoo":
        for name, m in sorted(tmlab.zoo().items()):
            hs = tmlab.halt_step(m, "", 1000)
            verdict = f"halts at step {hs}" if hs is not None else "still running at 1000"
            print(f"{name:12s} {len(m.states)} states; empty input: {verdict}")
        return 0
    if not args.machine:
        print("a machine name or file is required", file=sys.stderr)
        return 2
    machine = tmlab.load_machine(args.machine)
    if args.op == "run":
        traj = tmlab.trajectory(machine, args.input, args.bound)
        final = traj[-1]
        halted = final.state in machine.halting
        print(f"steps: {len(traj) - 1}{' (halted)' if halted else ' (still running)'}")
        print(f"state: {final.state}")
        print(f"tape:  {final.tape}")
        print(f"head:  {final.head}")
        return 0
    if args.op == "probe":
        result = tmlab.halting_probe(machine, args.input, args.bound)
        if isinstance(result, tmlab.HaltsInSteps):
            print(f"halts in {result.steps} steps")
            print(f"chain length {len(result.witness.chain)} (clock/configuration points to the sink)")
            direct = tmlab.halt_step(machine, args.input, args.bound)
            ok = direct == result.steps
            print(f"[{'PASS' if ok else 'FAIL'}] agrees with direct simulation ({direct})")
            return 0 if ok else 1
        print(f"no halt within {result.step_bound} steps "
              f"(searched {result.explored} points, chain bound {result.chain_bound})")
        direct = tmlab.halt_step(machine, args.input, args.bound)
        ok = direct is None
        print(f"[{'PASS' if ok else 'FAIL'}] agrees with direct simulation")
        return 0 if ok else 1
    raise AssertionError(args.op)


# -- family group --------------------------------------------------------------

def _resolve_predicate(spec: str):
    if spec in cs.BUILTIN_PREDICATES:
        return cs.BUILTIN_PREDICATES[spec], spec
    if spec.startswith("bitmask:"):
        path = spec[len("bitmask:"):]
        return cs.bitmask_predicate(_read(path)), f"bitmask file {path}"
    raise ValueError(
        f"unknown predicate {spec!r}; use one of "
        f"{', '.join(sorted(cs.BUILTIN_PREDICATES))} or bitmask:FILE"
    )


def cmd_family(args) -> int:
    pred, pname = _resolve_predicate(args.pred)
    cuts = tuple(int(tok) for tok in args.cuts.split(","))
    spec = cs.SingularFamilySpec(pred, cuts, name=pname)
    if args.k >= len(cuts):
        print(f"--k must be below the number of cuts ({len(cuts)})", file=sys.stderr)
        return 2
    result = cs.truncated_family_meet(spec, args.k)
    if args.restrict:
        _emit(result.restrict(args.restrict).to_text(), args.out)
    else:
        _emit(result.to_text(), args.out)
    return 0


# -- demos ----------------------------------------------------------------------

def demo_join_undecidable(args) -> int:
    print("bounded shadow of an undecidable join:")
    print("the even-clock and odd-clock step closures are cheap to decide,")
    print("but chaining them answers bounded halting.")
    machine = tmlab.load_machine(args.machine)
    result = tmlab.halting_probe(machine, args.input, args.bound)
    direct = tmlab.halt_step(machine, args.input, args.bound)
    if isinstance(result, tmlab.HaltsInSteps):
        print(f"machine {args.machine!r} on {args.input!r}: halts in {result.steps} steps")
        print(f"witness chain has {len(result.witness.chain)} points; "
              f"universe bound {result.universe_bound}, chain bound {result.chain_bound}")
        ok = direct == result.steps
    else:
        print(f"machine {args.machine!r} on {args.input!r}: no halt within {args.bound} steps")
        ok = direct is None
    print(f"[{'PASS' if ok else 'FAIL'}] verdict matches direct simulation")
    return 0 if ok else 1


def demo_meet_growth(args) -> int:
    print("meets of two-class relations need ever more classes:")
    counts = am.family_meet_demo(args.k)
    print("class counts after each meet:", " ".join(str(c) for c in counts))
    ok = counts == list(range(2, args.k + 2))
    print(f"[{'PASS' if ok else 'FAIL'}] counts are 2..{args.k + 1}, growing without bound")
    return 0 if ok else 1


def demo_family_meet(args) -> int:
    pred, pname = _resolve_predicate(args.pred)
    cuts = tuple(int(tok) for tok in args.cuts.split(","))
    spec = cs.SingularFamilySpec(pred, cuts, name=pname)
    if args.k >= len(cuts):
        print(f"--k must be below the number of cuts ({len(cuts)})", file=sys.stderr)
        return 2
    print(f"meet of the singular family for predicate {pname!r}, cuts {cuts}, up to k={args.k}:")
    result = cs.truncated_family_meet(spec, args.k)
    sys.stdout.write(result.to_text())
    expected = cs.closed_form_meet(spec, args.k)
    ok = result == expected
    cut = cuts[args.k]
    ok &= all(result.related(x, cut) == pred(x) for x in range(cut))
    print(f"[{'PASS' if ok else 'FAIL'}] equals the closed form: predicate members "
          f"below cut {cut} plus the upper set")
    return 0 if ok else 1


def demo_nonhalt_meet(args) -> int:
    machines = list(tmlab.zoo().values())
    names = list(tmlab.zoo().keys())
    print(f"meets of 'still running after n steps' relations, n = 1..{args.k}, over the zoo:")
    part = tmlab.nonhalt_family_meet(args.k, machines)
    blocks = [c for c in part.classes() if len(c) >= 2]
    big = set(blocks[0]) if blocks else set()
    print("grouped machines:", " ".join(names[i] for i in sorted(big)) or "(none)")
    expect = {i for i, m in enumerate(machines) if tmlab.halt_step(m, "", args.k) is None}
    ok = big == expect and len(blocks) <= 1
    print(f"[{'PASS' if ok else 'FAIL'}] exactly the machines still running after {args.k} steps")
    return 0 if ok else 1


def demo_atoms(args) -> int:
    members = sorted(int(tok) for tok in args.set.split(","))
    print(f"atoms joining to the singular relation with class {members} on n={args.n}:")
    atoms = cs.star_atoms(members, args.n)
    print("atoms:", " ".join(f"({a.a},{a.b})" for a in atoms))
    result = cs.atoms_to_singular(members, args.n)
    sys.stdout.write(result.to_text())
    expected = Partition.from_classes(
        [members] + [[x] for x in range(args.n) if x not in set(members)]
    )
    ok = result == expected
    print(f"[{'PASS' if ok else 'FAIL'}] join of the atoms is that singular relation")
    return 0 if ok else 1


DEMOS: dict[str, Callable] = {
    "join-undecidable": demo_join_undecidable,
    "automatic-meet-growth": demo_meet_growth,
    "family-meet": demo_family_meet,
    "nonhalt-meet": demo_nonhalt_meet,
    "atoms": demo_atoms,
}


def cmd_verify(args) -> int:
    if args.suite == "tm":
        results = vf.tm_checks(step_bound=args.tm_bound)
    else:
        results = vf.run_suite(args.suite)
    for r in results:
        print(r.line())
    failed = sum(1 for r in results if not r.passed)
    print(f"{len(results) - failed}/{len(results)} checks passed")
    return 0 if failed == 0 else 1


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="equlat",
        description="computable fragments of the lattice of equivalence relations",
    )
    sub = parser.add_subparsers(dest="group", required=True)

    p = sub.add_parser("partition", help="finite partition lattice calculator")
    p.add_argument("op", choices=["meet", "join", "leq", "complement", "atoms"])
    p.add_argument("inputs", nargs="+", help="partition files")
    p.add_argument("--out", help="write the result here")
    p.set_defaults(fn=cmd_partition)

    p = sub.add_parser("automatic", help="automatic relations as DFA files")
    p.add_argument(
        "op",
        choices=["decide", "meet", "join", "coarsen", "check", "reps", "minimize", "builtin"],
    )
    p.add_argument("inputs", nargs="*", help="DFA files (decide also takes M N)")
    p.add_argument("--blocks", help="coarsen grouping, e.g. '0 1; 2'")
    p.add_argument("--out", help="write the result here")
    p.set_defaults(fn=cmd_automatic)

    p = sub.add_parser(
        "decider",
        help="composable decision procedures",
        epilog=DECIDER_GRAMMAR,
        formatter_class=argparse.RawDescriptionHelpFormatter,
    )
    p.add_argument("op", choices=["decide", "restrict", "check"])
    p.add_argument("expr", help="decider expression, e.g. 'meet(parity, singular(even))'")
    p.add_argument("values", nargs="*", type=int, help="M N for decide; N for restrict")
    p.add_argument("--bound", type=int, default=32, help="sample bound for check")
    p.add_argument("--out", help="write the result here")
    p.set_defaults(fn=cmd_decider)

    p = sub.add_parser("tm", help="machine interpreter and bounded halting probe")
    p.add_argument("op", choices=["probe", "run", "zoo"])
    p.add_argument("machine", nargs="?", help="zoo name or machine file")
    p.add_argument("input", nargs="?", default="", help="initial tape contents")
    p.add_argument("--bound", type=int, default=100, help="step bound")
    p.set_defaults(fn=cmd_tm)
    # probe/run need a machine; checked in cmd_tm since zoo does not

    p = sub.add_parser("family", help="truncated singular-family meets")
    p.add_argument("op", choices=["meet"])
    p.add_argument("--pred", required=True, help="even|odd|prime|bitmask:FILE")
    p.add_argument("--cuts", required=True, help="comma-separated increasing cuts")
    p.add_argument("--k", type=int, required=True, help="truncation index")
    p.add_argument("--restrict", type=int, help="emit the restriction to {0..N-1}")
    p.add_argument("--out", help="write the result here")
    p.set_defaults(fn=cmd_family)

    p = sub.add_parser("demo", help="self-verifying demonstrations")
    demo_sub = p.add_subparsers(dest="demo", required=True)
    d = demo_sub.add_parser("join-undecidable")
    d.add_argument("--machine", default="increment")
    d.add_argument("--input", default="11")
    d.add_argument("--bound", type=int, default=50)
    d.set_defaults(fn=demo_join_undecidable)
    d = demo_sub.add_parser("automatic-meet-growth")
    d.add_argument("--k", type=int, default=8)
    d.set_defaults(fn=demo_meet_growth)
    d = demo_sub.add_parser("family-meet")
    d.add_argument("--pred", default="even")
    d.add_argument("--cuts", default="2,4,8")
    d.add_argument("--k", type=int, default=2)
    d.set_defaults(fn=demo_family_meet)
    d = demo_sub.add_parser("nonhalt-meet")
    d.add_argument("--k", type=int, default=10)
    d.set_defaults(fn=demo_nonhalt_meet)
    d = demo_sub.add_parser("atoms")
    d.add_argument("--set", default="1,3,5")
    d.add_argument("--n", type=int, default=8)
    d.set_defaults(fn=demo_atoms)

    p = sub.add_parser("verify", help="run a named verification suite")
    p.add_argument(
        "suite",
        choices=["lattice", "complements", "automatic", "tm", "constructions", "all"],
    )
    p.add_argument("--tm-bound", type=int, default=1000, help="step bound for the tm suite")
    p.set_defaults(fn=cmd_verify)
    return parser


def main(argv: Sequence[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except (ValueError, OSError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


def entrypoint() -> None:  # console script
    sys.exit(main())


if __name__ == "__main__":
    entrypoint()
