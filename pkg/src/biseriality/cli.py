"""Command line interface: ``biseriality <command> ...``."""

from __future__ import annotations

import argparse
import json
import logging
import random
import sys
from concurrent.futures import ProcessPoolExecutor
from pathlib import Path

from .algebra import AlgebraError, build_algebra, idempotent_subalgebra
from .criteria import (
    Direction,
    Variant,
    certify_obstruction,
    find_obstruction,
    loewy_two_check,
    neighbor_sets,
    subalgebra_criterion,
)
from .fuller import SearchBudgetExceeded, is_biserial_fuller
from .generate import NormalFormConfig, RandomConfig, generate_normal_form_instance, random_presentation
from .instance import Instance, InstanceError, load_instance, print_instance
from .quiver import QuiverError
from .report import Budgets, check_instance, replay_witnesses, to_jsonable

EXIT_OK, EXIT_INPUT, EXIT_DISAGREE, EXIT_BUDGET = 0, 1, 2, 3

log = logging.getLogger("biseriality")


def _emit(obj, out: str | None) -> None:
    text = json.dumps(to_jsonable(obj), indent=2, sort_keys=True)
    if out:
        Path(out).write_text(text + "\n", encoding="utf-8")
    else:
        print(text)


def _budgets(args, inst: Instance) -> Budgets:
    return Budgets.from_options(
        inst.options,
        max_nilpotency=args.max_nilpotency,
        max_rad_dim=args.max_rad_dim,
        local_budget=args.local_budget,
        obstruction_budget=args.obstruction_budget,
    )


def cmd_check(args) -> int:
    inst = load_instance(args.instance)
    report = check_instance(inst, _budgets(args, inst), timings=not args.no_timings)
    _emit(report, args.output)
    if report["disagreements"]:
        return EXIT_DISAGREE
    if args.strict and report["budget_exhausted"]:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_witness(args) -> int:
    inst = load_instance(args.instance)
    if args.verify:
        report = json.loads(Path(args.verify).read_text(encoding="utf-8"))
        if report.get("instance", {}).get("hash") not in (None, inst.digest()):
            log.warning("report was produced for a different instance text")
        result = replay_witnesses(inst, report)
        _emit({"replay": result}, args.output)
        return EXIT_OK if all(result.values()) else EXIT_DISAGREE
    report = check_instance(inst, _budgets(args, inst), timings=False)
    _emit({"instance": report["instance"]["hash"], "witnesses": report["witnesses"]}, args.output)
    if args.strict and report["verdicts"]["witness"] is None:
        return EXIT_BUDGET
    return EXIT_DISAGREE if report["disagreements"] else EXIT_OK


def cmd_subalgebra(args) -> int:
    inst = load_instance(args.instance)
    b = _budgets(args, inst)
    alg = build_algebra(inst.presentation, b.max_nilpotency)
    variant = Variant(args.variant)
    out = {"neighbors": {}, "subalgebras": []}
    for l in alg.quiver.vertices:
        ns = neighbor_sets(alg, l)
        out["neighbors"][l] = {"N": list(ns.neighbors), "J": [list(j) for j in ns.j_sets]}
    rep = subalgebra_criterion(alg, variant, b.max_rad_dim, b.candidate_budget)
    for chk in rep.checks:
        sub = idempotent_subalgebra(alg, chk.vertices)
        out["subalgebras"].append(
            {
                "vertices": list(chk.vertices),
                "dim": chk.dim,
                "biserial": chk.biserial,
                "arrows": {name: str(pth) for name, pth in sub.origins.items()},
            }
        )
    out["variant"], out["biserial"] = variant.value, rep.biserial
    _emit(out, args.output)
    return EXIT_OK


def cmd_d4free(args) -> int:
    inst = load_instance(args.instance)
    b = _budgets(args, inst)
    alg = build_algebra(inst.presentation, b.max_nilpotency)
    out = {"loewy_two": {}}
    for m in (2, 3):
        for colocal in (False, True):
            key = "%s_m%d" % ("colocal" if colocal else "local", m)
            out["loewy_two"][key] = {
                d.value: loewy_two_check(alg, m, d, colocal) for d in Direction
            }
    w = find_obstruction(alg, budget=b.obstruction_budget)
    if w is None:
        out["obstruction"] = None
    else:
        ok, problems = certify_obstruction(alg, w)
        out["obstruction"] = {**w.to_json(), "certified": ok, "problems": problems}
    out["d4_free"] = w is None
    _emit(out, args.output)
    return EXIT_OK


def _generate_one(kind: str, rng: random.Random, p: int):
    if kind == "normal-form":
        pres, *_ = generate_normal_form_instance(rng, NormalFormConfig(p=p))
    else:
        pres, _ = random_presentation(rng, RandomConfig(p=p))
    return pres


def generate_files(directory: Path, count: int, seed: int, kind: str, p: int) -> list[Path]:
    directory.mkdir(parents=True, exist_ok=True)
    rng = random.Random(seed)
    paths = []
    for k in range(count):
        pres = _generate_one(kind, rng, p)
        fp = directory / ("%s-%d-%04d.alg" % (kind, seed, k))
        fp.write_text(print_instance(pres), encoding="utf-8")
        paths.append(fp)
    return paths


def cmd_generate(args) -> int:
    paths = generate_files(Path(args.out), args.count, args.seed, args.kind, args.p)
    print("wrote %d instances to %s" % (len(paths), args.out))
    return EXIT_OK


def _corpus_worker(path: str) -> dict:
    try:
        inst = load_instance(path)
        report = check_instance(inst, timings=False)
        report["replay"] = replay_witnesses(inst, report)
        return report
    except (InstanceError, AlgebraError, QuiverError) as exc:
        return {"instance": {"name": Path(path).stem, "hash": ""}, "error": str(exc)}


def cmd_corpus(args) -> int:
    directory = Path(args.directory)
    if args.count:
        generate_files(directory, args.count, args.seed, args.kind, args.p)
    files = sorted(str(f) for f in directory.glob("*.alg"))
    if args.jobs > 1:
        with ProcessPoolExecutor(max_workers=args.jobs) as pool:
            reports = list(pool.map(_corpus_worker, files, chunksize=4))
    else:
        reports = [_corpus_worker(f) for f in files]
    reports.sort(key=lambda r: (r["instance"]["hash"], r["instance"]["name"]))
    summary = {
        "instances": len(reports),
        "errors": [r["instance"]["name"] for r in reports if "error" in r],
        "disagreements": [r for r in reports if r.get("disagreements")],
        "replay_failures": [r["instance"]["name"] for r in reports if not all(r.get("replay", {}).values())],
        "budget_exhausted": [r["instance"]["name"] for r in reports if r.get("budget_exhausted")],
        "biserial": sum(1 for r in reports if r.get("verdicts", {}).get("fuller")),
    }
    if args.reports:
        _emit(reports, args.reports)
    _emit(summary, args.output)
    if summary["errors"]:
        return EXIT_INPUT
    if summary["disagreements"] or summary["replay_failures"]:
        return EXIT_DISAGREE
    if args.strict and summary["budget_exhausted"]:
        return EXIT_BUDGET
    return EXIT_OK


def cmd_export_dot(args) -> int:
    inst = load_instance(args.instance)
    dot = inst.presentation.quiver.to_dot(inst.name.replace("-", "_") or "Q")
    if args.output:
        Path(args.output).write_text(dot, encoding="utf-8")
    else:
        sys.stdout.write(dot)
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="biseriality", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="command", required=True)

    def instance_cmd(name, fn, help_text):
        sp = sub.add_parser(name, help=help_text)
        sp.add_argument("instance")
        sp.add_argument("-o", "--output")
        sp.add_argument("--strict", action="store_true", help="exit 3 when a budget runs out")
        sp.add_argument("--max-nilpotency", type=int)
        sp.add_argument("--max-rad-dim", type=int)
        sp.add_argument("--local-budget", type=int)
        sp.add_argument("--obstruction-budget", type=int)
        sp.set_defaults(func=fn)
        return sp

    instance_cmd("check", cmd_check, "run every method and print a report").add_argument(
        "--no-timings", action="store_true"
    )
    instance_cmd("witness", cmd_witness, "emit witnesses, or replay them with --verify").add_argument(
        "--verify", metavar="REPORT"
    )
    instance_cmd("subalgebra", cmd_subalgebra, "neighbour sets and eAe verdicts").add_argument(
        "--variant", choices=[v.value for v in Variant], default="full"
    )
    instance_cmd("d4free", cmd_d4free, "obstruction module analysis")
    dot = sub.add_parser("export-dot", help="write the quiver in DOT format")
    dot.add_argument("instance")
    dot.add_argument("-o", "--output")
    dot.set_defaults(func=cmd_export_dot)

    gen = sub.add_parser("generate", help="write random instances")
    gen.add_argument("--kind", choices=["random", "normal-form"], default="random")
    gen.add_argument("--count", type=int, default=10)
    gen.add_argument("--seed", type=int, default=0)
    gen.add_argument("--p", type=int, default=3)
    gen.add_argument("--out", required=True)
    gen.set_defaults(func=cmd_generate)

    cor = sub.add_parser("corpus", help="cross-validate every *.alg file in a directory")
    cor.add_argument("directory")
    cor.add_argument("--count", type=int, default=0, help="first generate this many instances")
    cor.add_argument("--seed", type=int, default=0)
    cor.add_argument("--kind", choices=["random", "normal-form"], default="random")
    cor.add_argument("--p", type=int, default=3)
    cor.add_argument("--jobs", type=int, default=1)
    cor.add_argument("--strict", action="store_true")
    cor.add_argument("--reports", help="write all per-instance reports here")
    cor.add_argument("-o", "--output")
    cor.set_defaults(func=cmd_corpus)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, format="%(message)s")
    try:
        return args.func(args)
    except (InstanceError, AlgebraError, QuiverError) as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT
    except SearchBudgetExceeded as exc:
        print("budget exhausted: %s" % exc, file=sys.stderr)
        return EXIT_BUDGET
    except OSError as exc:
        print("error: %s" % exc, file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
