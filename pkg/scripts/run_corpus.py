"""Cross-validate the decision methods on a random corpus and summarize.

    python scripts/run_corpus.py --count 200 --seed 42 --out results/random.json
"""

from __future__ import annotations

import argparse
import collections
import json
import random
import time
from dataclasses import asdict, dataclass
from pathlib import Path

from biseriality.generate import NormalFormConfig, RandomConfig, generate_normal_form_instance, random_presentation
from biseriality.instance import Instance
from biseriality.report import METHODS, check_instance, replay_witnesses


@dataclass
class ExperimentConfig:
    kind: str = "random"
    count: int = 200
    seed: int = 42
    p: int = 3
    max_vertices: int = 4
    max_arrows: int = 6
    max_nilpotency: int = 4


def draw(rng: random.Random, cfg: ExperimentConfig):
    if cfg.kind == "normal-form":
        cc = NormalFormConfig(p=cfg.p, max_vertices=cfg.max_vertices, max_arrows=cfg.max_arrows, nilpotency_cap=cfg.max_nilpotency)
        return generate_normal_form_instance(rng, cc)[0]
    rc = RandomConfig(p=cfg.p, max_vertices=cfg.max_vertices, max_arrows=cfg.max_arrows, max_nilpotency=cfg.max_nilpotency)
    return random_presentation(rng, rc)[0]


def run(cfg: ExperimentConfig) -> dict:
    rng = random.Random(cfg.seed)
    tally = collections.Counter()
    method_ms = collections.defaultdict(float)
    disagreements, replay_failures = [], []
    t0 = time.perf_counter()
    for k in range(cfg.count):
        inst = Instance(draw(rng, cfg), name="%s-%04d" % (cfg.kind, k))
        report = check_instance(inst)
        for key, ms in report["timings_ms"].items():
            method_ms[key] += ms
        v = report["verdicts"]
        tally["biserial" if v["fuller"] else "not biserial"] += 1
        w = report["witnesses"].get("decide")
        if w is None:
            tally["witness: none"] += 1
        else:
            tally["witness: " + ("bisected" if w["type"] == "bisected" else "kind %d" % w["kind"])] += 1
        if report["disagreements"]:
            disagreements.append({"name": inst.name, "text": inst.text(), "verdicts": {m: v[m] for m in METHODS}})
        if not all(replay_witnesses(inst, report).values()):
            replay_failures.append(inst.name)
    return {
        "config": asdict(cfg),
        "seconds": round(time.perf_counter() - t0, 2),
        "tally": dict(sorted(tally.items())),
        "method_ms": {k: round(v, 1) for k, v in sorted(method_ms.items())},
        "disagreements": disagreements,
        "replay_failures": replay_failures,
    }


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    for name, default in asdict(ExperimentConfig()).items():
        ap.add_argument("--" + name.replace("_", "-"), type=type(default), default=default)
    ap.add_argument("--out", type=Path)
    args = ap.parse_args()
    cfg = ExperimentConfig(**{k: getattr(args, k) for k in asdict(ExperimentConfig())})
    summary = run(cfg)
    text = json.dumps(summary, indent=2)
    if args.out:
        args.out.parent.mkdir(parents=True, exist_ok=True)
        args.out.write_text(text + "\n")
    print(text)


if __name__ == "__main__":
    main()
