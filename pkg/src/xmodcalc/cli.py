"""Command-line entry point: ``xmodcalc {induce,tables,check,convert}``."""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path

from .cat1 import cat1_from_dict, cat1_from_xmod, cat1_to_dict, round_trip_morphism, xmod_from_cat1
from .fpres.todd_coxeter import DEFAULT_MAX_COSETS, CosetLimitExceeded
from .ident import DEFAULT_AUT_BUDGET, automorphism_order, identify
from .induced import induce_subgroups, result_to_dict
from .perm import BudgetExceeded, GroupError
from .tables import format_table, run_table
from .tasks import InputError, TaskOptions, Task
from .xmod import AxiomError, CheckOptions, homotopy_groups, is_crossed, xmod_from_dict, xmod_to_dict

EXIT_OK = 0
EXIT_CHECK = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3


def _options(args) -> TaskOptions:
    return TaskOptions(max_cosets=args.max_cosets, aut_budget=args.aut_budget, checks=args.checks, seed=args.seed)


def _write_json(path: str | None, payload) -> None:
    if path:
        Path(path).write_text(json.dumps(payload, indent=2, sort_keys=True) + "\n")


def _split_gens(text: str) -> list[str]:
    # "(1,2)(3,4);(1,3)" or "x;y^2"
    return [s.strip() for s in text.split(";") if s.strip()]


def cmd_induce(args) -> int:
    try:
        if args.task:
            desc = Task.load(args.task)
        else:
            if not (args.Q and args.P and args.M):
                raise InputError("give --task FILE or all of --Q, --P, --M")
            try:
                q = json.loads(args.Q)
            except json.JSONDecodeError:
                q = args.Q
            desc = Task(q, _split_gens(args.P), _split_gens(args.M))
        desc.options = _options(args) if not args.task else desc.options
        Q, P, M = desc.resolve()
    except (InputError, GroupError, OSError, json.JSONDecodeError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    opts = desc.options
    try:
        r = induce_subgroups(
            Q, P.gens, M.gens,
            max_cosets=opts.max_cosets,
            checks=CheckOptions(mode=opts.checks, seed=opts.seed),
        )
        r.report.label = identify(r.group)
        aut = automorphism_order(r.group, opts.aut_budget) if r.group.order <= opts.aut_budget else None
        pi1, _ = homotopy_groups(r.induced)
    except (CosetLimitExceeded, BudgetExceeded) as exc:
        print(f"budget exceeded: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except AxiomError as exc:
        print(f"check failed: {exc}", file=sys.stderr)
        return EXIT_CHECK
    report = result_to_dict(r)
    report["aut_order"] = aut
    report["pi1_order"] = pi1.order
    print(f"|Q| = {Q.order}, |P| = {P.order}, |M| = {M.order}, [Q:P] = {Q.order // P.order}")
    print(f"induced group: {r.report.label}, order {r.group.order}")
    print(f"pi2 = ker: invariants {r.report.kernel_invariants or '[] (trivial)'}; pi1 = coker: order {pi1.order}")
    print(f"image of boundary: order {r.report.image_order}")
    if aut is not None:
        print(f"|Aut| = {aut}")
    if r.stats is not None and r.presentation is not None:
        st = r.stats
        print(f"presentation: {st.copower_gens} generators, {st.relators_before} relators -> {st.gens_after}, {st.relators_after} after Tietze")
        if len(str(r.presentation)) <= 300:
            print(f"  {r.presentation}")
    for k, v in r.report.to_dict().items():
        if k in ("cm1", "cm2", "morphism", "kernel_central", "image_is_normal_closure", "orders_consistent", "oracles"):
            print(f"  {k}: {v}")
    print("PASS" if r.report.ok else "FAIL")
    _write_json(args.json, report)
    return EXIT_OK if r.report.ok else EXIT_CHECK


def cmd_tables(args) -> int:
    results = run_table(args.which, _options(args), jobs=args.jobs)
    print(format_table(args.which, results))
    _write_json(args.json, [r.to_dict() for r in results])
    return EXIT_OK if all(r.status != "FAIL" for r in results) else EXIT_CHECK


def _load_doc(path: str) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc


def cmd_check(args) -> int:
    checks = CheckOptions(mode=args.checks, seed=args.seed)
    try:
        doc = _load_doc(args.path)
        kind = doc.get("kind", "xmod")
        report: dict = {"kind": kind}
        if kind == "xmod":
            pcm = xmod_from_dict(doc, pre=True, checks=checks)
            ok, witness = is_crossed(pcm)
            if not ok:
                m, n = witness  # type: ignore[misc]
                print(f"FAIL: CM2 fails at m={m}, n={n}")
                report.update(ok=False, witness=[str(m), str(n)])
                _write_json(args.json, report)
                return EXIT_CHECK
            X = xmod_from_dict(doc, checks=checks)
            f = round_trip_morphism(X)
            report.update(ok=True, cm1=X.cm1.method, cm2=X.cm2.method, round_trip=f.is_isomorphism())
            print(f"PASS: crossed module |M|={X.M.order} |P|={X.P.order} (CM1 {X.cm1.method}, CM2 {X.cm2.method})")
            print(f"round trip via cat1: {'isomorphic' if f.is_isomorphism() else 'NOT isomorphic'}")
        elif kind == "cat1":
            C = cat1_from_dict(doc, pre=True)
            ok, witness = C.satisfies_cat2()
            if not ok:
                a, b = witness  # type: ignore[misc]
                print(f"FAIL: CAT2 fails, [{a}, {b}] != 1")
                report.update(ok=False, witness=[str(a), str(b)])
                _write_json(args.json, report)
                return EXIT_CHECK
            C = cat1_from_dict(doc)
            X = xmod_from_cat1(C)
            C2 = cat1_from_xmod(X)
            same = C2.G.order == C.G.order
            report.update(ok=same, xmod_orders=[X.M.order, X.P.order], round_trip_order=C2.G.order)
            print(f"PASS: cat1-group |G|={C.G.order} |R|={C.R.order}; crossed module |M|={X.M.order}")
            print(f"round trip via xmod: |G| {C.G.order} -> {C2.G.order}")
            if not same:
                _write_json(args.json, report)
                return EXIT_CHECK
        else:
            raise InputError(f"unknown document kind {kind!r}")
    except InputError as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    except AxiomError as exc:
        print(f"FAIL: {exc}")
        _write_json(args.json, {"ok": False, "error": str(exc), "witness": [str(w) for w in (exc.witness or ())]})
        return EXIT_CHECK
    except (GroupError, KeyError, ValueError) as exc:
        print(f"input error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    _write_json(args.json, report)
    return EXIT_OK


def cmd_convert(args) -> int:
    try:
        doc = _load_doc(args.path)
        kind = doc.get("kind", "xmod")
        if kind == "xmod":
            out = cat1_to_dict(cat1_from_xmod(xmod_from_dict(doc)))
        elif kind == "cat1":
            C = cat1_from_dict(doc)
            out = xmod_to_dict(xmod_from_cat1(C))
        else:
            raise InputError(f"unknown document kind {kind!r}")
    except (InputError, GroupError, KeyError, ValueError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_INPUT
    text = json.dumps(out, indent=2, sort_keys=True) + "\n"
    if args.output:
        Path(args.output).write_text(text)
    else:
        sys.stdout.write(text)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-cosets", type=int, default=DEFAULT_MAX_COSETS)
    common.add_argument("--aut-budget", type=int, default=DEFAULT_AUT_BUDGET)
    common.add_argument("--checks", choices=["exhaustive", "sampled"], default="exhaustive")
    common.add_argument("--json", metavar="PATH", help="write a JSON report")
    common.add_argument("--seed", type=int, default=0, help="seed for sampled checks")

    p = argparse.ArgumentParser(prog="xmodcalc", description="Induced crossed modules of finite permutation groups.")
    sub = p.add_subparsers(dest="command", required=True)

    pi = sub.add_parser("induce", parents=[common], help="induce M <| P <= Q along the inclusion")
    pi.add_argument("--task", help="JSON task file with Q, P, M and options")
    pi.add_argument("--Q", help='family like "S 4", or JSON such as \'{"degree":4,"gens":["(1,2,3,4)","(1,2)"]}\'')
    pi.add_argument("--P", help="generators of P separated by ';' (cycles or words in x,y,z)")
    pi.add_argument("--M", help="generators of M separated by ';'")
    pi.set_defaults(func=cmd_induce)

    pt = sub.add_parser("tables", parents=[common], help="reproduce a table of induced crossed modules")
    pt.add_argument("which", choices=["1", "2"])
    pt.add_argument("--jobs", type=int, default=1)
    pt.set_defaults(func=cmd_tables)

    pc = sub.add_parser("check", parents=[common], help="check a crossed module or cat1-group JSON document")
    pc.add_argument("path")
    pc.set_defaults(func=cmd_check)

    pv = sub.add_parser("convert", help="convert between crossed module and cat1-group JSON")
    pv.add_argument("path")
    pv.add_argument("-o", "--output")
    pv.set_defaults(func=cmd_convert)
    return p


def main(argv: list[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    return args.func(args)


if __name__ == "__main__":
    raise SystemExit(main())
