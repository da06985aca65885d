"""Batch front door: validate, compute, check, dims over JSON input files.

Input files are either presentations ({"builtin": "virasoro"} or inline
generator/product JSON) or constructions ({"presentation": ..., "semigroup":
{"rank": 1, "group": true}, "phi": [[...]]}).  Exit codes: 0 all checks pass,
1 some check failed, 2 malformed input.  JSON reports are byte-deterministic
for identical inputs (timings appear only in text output); every sweep is
exhaustive over its window, so --seed is accepted only for interface
stability.  VERTEXKERNEL_THREADS > 1 runs independent suites concurrently.
"""

import argparse
import json
import os
import sys
import time
from concurrent.futures import ThreadPoolExecutor

from . import serialize
from .coalgebra import check_coalgebra, check_delta_morphism, primitive_subspace
from .constructions import (BL, PhiMap, SemigroupL, TensorPhiAlgebra,
                            check_bl_bialgebra, check_bl_equals_tensor_phi,
                            check_component_structure,
                            check_group_like_semigroup, check_phi_central,
                            check_tensor_phi_axioms, extend_universal_morphism,
                            induced_vertex_morphism)
from .current import bracket as mode_bracket
from .enveloping import VacuumModule
from .errors import InputError, MorphismError, UnsupportedError
from .report import ValidationReport

SUITES = ("jacobi", "skew", "commutator", "coalgebra", "tensor-phi", "bl",
          "morphism", "all")


def build_parser():
    p = argparse.ArgumentParser(
        prog="vertexkernel",
        description="Exact checks and computations for vertex Lie algebras, "
                    "their enveloping vertex bialgebras and derived constructions.")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--input", required=True, help="presentation or construction JSON file")
        sp.add_argument("--format", choices=("json", "text"), default="text")
        sp.add_argument("--seed", type=int, default=None,
                        help="accepted for interface stability; all sweeps are exhaustive")

    sp = sub.add_parser("validate", help="vertex Lie algebra axioms on the product table")
    common(sp)

    sp = sub.add_parser("compute", help="one exact value: product, bracket, delta or mode")
    sp.add_argument("expression", choices=("product", "bracket", "delta", "mode"))
    sp.add_argument("operands", nargs="+")
    common(sp)

    sp = sub.add_parser("check", help="bounded identity sweeps")
    sp.add_argument("--suite", choices=SUITES, default="all")
    sp.add_argument("--max-weight", type=int, default=None)
    sp.add_argument("--mode-window", type=int, default=None)
    sp.add_argument("--torsion-bound", type=int, default=1)
    common(sp)

    sp = sub.add_parser("dims", help="graded and primitive dimensions")
    sp.add_argument("--max-weight", type=int, default=6)
    sp.add_argument("--torsion-bound", type=int, default=0)
    common(sp)
    return p


def _emit(args, payload, text_lines):
    if args.format == "json":
        print(json.dumps(payload, ensure_ascii=False, sort_keys=True, indent=2))
    else:
        print("\n".join(text_lines))


def _thread_count():
    try:
        return max(1, int(os.environ.get("VERTEXKERNEL_THREADS", "1")))
    except ValueError:
        return 1


def _load(args):
    data = serialize.read_json_file(args.input)
    if serialize.is_construction(data):
        return serialize.load_construction(data)
    return serialize.load_presentation(data), None, None, None


# -- check suites -----------------------------------------------------------------


def _phi_targets(pres, rank, targets):
    if targets is None:
        free = [g for g in pres.generators if not g.torsion]
        if len(free) < rank:
            raise InputError(f"no default phi: {rank} directions but "
                             f"{len(free)} free generators")
        targets = [pres.element(g.name) for g in free[:rank]]
    return PhiMap(pres, targets)


def _suite_jobs(suite, pres, rank, group, targets, mw, win, tb):
    """(name, thunk) pairs; each thunk returns a ValidationReport."""
    vm = VacuumModule(pres)
    jobs = []
    construction = rank is not None
    want = (suite,) if suite != "all" else (
        ("validate", "skew", "commutator", "jacobi", "coalgebra", "morphism")
        if not construction else
        ("validate", "tensor-phi", "bl", "morphism"))

    def need_construction(name):
        if not construction:
            raise InputError(f"suite {name!r} needs a construction input file "
                             "(with a \"semigroup\" field)")

    for name in want:
        if name == "validate":
            jobs.append(("validate", pres.validate))
        elif name == "skew":
            jobs.append(("skew", lambda: vm.check_skew_symmetry(
                max_weight=mw if mw is not None else 5,
                window=win if win is not None else 4, torsion_bound=tb)))
        elif name == "commutator":
            jobs.append(("commutator", lambda: vm.check_commutator(
                max_weight=mw if mw is not None else 3,
                window=win if win is not None else 4, torsion_bound=tb)))
        elif name == "jacobi":
            jobs.append(("jacobi", lambda: vm.check_jacobi(
                max_weight=mw if mw is not None else 2,
                window=win if win is not None else 2, torsion_bound=tb)))
        elif name == "coalgebra":
            def coalgebra_job():
                rep = check_coalgebra(vm, max_weight=mw if mw is not None else 5,
                                      torsion_bound=tb)
                rep.merge(check_delta_morphism(
                    vm, max_weight=mw if mw is not None else 3,
                    window=win if win is not None else 3, torsion_bound=tb))
                return rep
            jobs.append(("coalgebra", coalgebra_job))
        elif name == "tensor-phi":
            need_construction(name)
            def tensor_phi_job():
                phi = _phi_targets(pres, rank, targets)
                rep = check_phi_central(pres, phi)
                if not rep.passed:
                    return rep
                tp = TensorPhiAlgebra(vm, SemigroupL(rank, group), phi)
                rep.merge(check_tensor_phi_axioms(
                    tp, max_weight=mw if mw is not None else 1,
                    window=win if win is not None else 2,
                    alpha_bound=1, torsion_bound=tb))
                rep.merge(check_group_like_semigroup(
                    tp, alpha_bound=3, window=win if win is not None else 4))
                rep.merge(check_component_structure(
                    tp, max_weight=mw if mw is not None else 2, alpha_bound=2,
                    window=win if win is not None else 3, torsion_bound=tb))
                return rep
            jobs.append(("tensor-phi", tensor_phi_job))
        elif name == "bl":
            need_construction(name)
            def bl_job():
                sg = SemigroupL(rank, group)
                rep = check_bl_bialgebra(BL(sg),
                                         max_weight=mw if mw is not None else 3,
                                         alpha_bound=2)
                rep.merge(check_bl_equals_tensor_phi(
                    sg, max_weight=mw if mw is not None else 3, alpha_bound=2,
                    window=win if win is not None else 4))
                return rep
            jobs.append(("bl", bl_job))
        elif name == "morphism":
            if construction:
                def morphism_job():
                    rep = ValidationReport(subject="morphisms")
                    bl = BL(SemigroupL(rank, group))
                    try:
                        _, r1 = extend_universal_morphism(
                            bl, bl, bl.group_like,
                            lambda i: bl.monomial([(bl.names[i], -1)]),
                            max_weight=mw if mw is not None else 2, alpha_bound=1)
                        rep.merge(r1)
                    except MorphismError as exc:
                        rep.add("morphism-extension-exists", False, witness=str(exc))
                    try:
                        emb = {nm: bl.monomial([(nm, -1)]) for nm in bl.names}
                        _, r2 = induced_vertex_morphism(
                            bl.pres, emb, bl,
                            max_weight=mw if mw is not None else 2,
                            window=win if win is not None else 3, torsion_bound=0)
                        rep.merge(r2)
                    except MorphismError as exc:
                        rep.add("morphism-induced-exists", False, witness=str(exc))
                    return rep
            else:
                def morphism_job():
                    rep = ValidationReport(subject="morphisms")
                    try:
                        emb = {g.name: vm.embed(pres.element(g.name))
                               for g in pres.generators}
                        _, r = induced_vertex_morphism(
                            pres, emb, vm, max_weight=mw if mw is not None else 2,
                            window=win if win is not None else 3, torsion_bound=tb)
                        rep.merge(r)
                    except MorphismError as exc:
                        rep.add("morphism-induced-exists", False, witness=str(exc))
                    return rep
            jobs.append(("morphism", morphism_job))
    return jobs


def cmd_check(args):
    pres, rank, group, targets = _load(args)
    jobs = _suite_jobs(args.suite, pres, rank, group, targets,
                       args.max_weight, args.mode_window, args.torsion_bound)

    def run(job):
        t0 = time.perf_counter()
        rep = job[1]()
        return rep, time.perf_counter() - t0

    threads = _thread_count()
    if threads > 1 and len(jobs) > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(run, jobs))
    else:
        results = [run(j) for j in jobs]

    merged = ValidationReport(subject=f"check:{args.suite}")
    for rep, _ in results:
        merged.merge(rep)
    lines = [f"{name}: {elapsed * 1000:.0f} ms"
             for (name, _), (_, elapsed) in zip(jobs, results)]
    lines.append(merged.summary())
    _emit(args, {"command": "check", "suite": args.suite,
                 "passed": merged.passed, "report": merged.to_json()}, lines)
    return 0 if merged.passed else 1


def cmd_validate(args):
    pres, _, _, _ = _load(args)
    t0 = time.perf_counter()
    rep = pres.validate()
    elapsed = time.perf_counter() - t0
    _emit(args, {"command": "validate", "passed": rep.passed,
                 "report": rep.to_json()},
          [rep.summary(), f"elapsed: {elapsed * 1000:.0f} ms"])
    return 0 if rep.passed else 1


def cmd_compute(args):
    pres, _, _, _ = _load(args)
    vm = VacuumModule(pres)
    expr, ops = args.expression, args.operands
    names = {g.name for g in pres.generators}

    def arity(n):
        if len(ops) != n:
            raise InputError(f"{expr} takes {n} operands, got {len(ops)}")

    def as_int(s):
        try:
            return int(s)
        except ValueError:
            raise InputError(f"expected an integer mode index, got {s!r}") from None

    if expr == "product":
        arity(3)
        u = serialize.parse_element(pres, ops[0])
        v = serialize.parse_element(pres, ops[2])
        value = pres.nth_product(u, as_int(ops[1]), v)
        text = pres.format_element(value)
        terms = serialize.element_to_json(value)
    elif expr == "bracket":
        arity(2)
        a, b = serialize.parse_mode(ops[0]), serialize.parse_mode(ops[1])
        for m in (a, b):
            if m.gen not in names:
                raise InputError(f"unknown generator {m.gen!r}")
        value = mode_bracket(pres, a, b)
        text = value.format(serialize.format_mode)
        terms = [{"coeff": str(c), "mode": serialize.mode_to_json(m)}
                 for m, c in value.sorted_items()]
    elif expr == "delta":
        arity(1)
        value = vm.delta(serialize.parse_state(vm, ops[0]))
        text = value.format(
            lambda k: f"{vm.format_word(k[0])} ⊗ {vm.format_word(k[1])}")
        terms = serialize.tensor_to_json(value)
    else:  # mode
        arity(3)
        u = vm.embed(serialize.parse_element(pres, ops[0]))
        v = serialize.parse_state(vm, ops[2])
        value = vm.state_mode(u, as_int(ops[1]), v)
        text = vm.format_state(value)
        terms = serialize.state_to_json(value)

    _emit(args, {"command": "compute", "expression": expr, "operands": list(ops),
                 "passed": True, "value": {"text": text, "terms": terms}},
          [f"{expr} {' '.join(ops)} → {text}"])
    return 0


def cmd_dims(args):
    if args.max_weight < 0 or args.torsion_bound < 0:
        raise InputError("bounds must be nonnegative")
    pres, _, _, _ = _load(args)
    vm = VacuumModule(pres)
    table = []
    for w in range(args.max_weight + 1):
        table.append({"weight": w,
                      "dim": vm.graded_dimension(w, args.torsion_bound),
                      "primitive": len(primitive_subspace(vm, w, args.torsion_bound))})
    lines = ["weight  dim  primitive"]
    lines += [f"{r['weight']:>6}  {r['dim']:>3}  {r['primitive']:>9}" for r in table]
    _emit(args, {"command": "dims", "max_weight": args.max_weight,
                 "torsion_bound": args.torsion_bound, "passed": True,
                 "table": table}, lines)
    return 0


def main(argv=None):
    args = build_parser().parse_args(argv)
    handlers = {"validate": cmd_validate, "compute": cmd_compute,
                "check": cmd_check, "dims": cmd_dims}
    try:
        return handlers[args.command](args)
    except (InputError, UnsupportedError) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2


if __name__ == "__main__":
    sys.exit(main())
