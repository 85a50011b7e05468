"""Run every method on one instance and collect a JSON-ready report."""

from __future__ import annotations

import time
from dataclasses import dataclass

import numpy as np

from . import __version__
from .algebra import build_algebra
from .bisected import DEFAULT_LOCAL_BUDGET, BisectedWitness, verify_bisected_witness
from .criteria import (
    DEFAULT_OBSTRUCTION_BUDGET,
    ObstructionWitness,
    Variant,
    certify_obstruction,
    decide_biserial,
    subalgebra_criterion,
)
from .fuller import (
    DEFAULT_CANDIDATE_BUDGET,
    DEFAULT_MAX_RAD_DIM,
    SearchBudgetExceeded,
    is_nakayama,
    is_special_biserial,
)
from .instance import Instance

METHODS = ("fuller", "subalgebra_full", "subalgebra_d4", "decide")


@dataclass
class Budgets:
    max_nilpotency: int = 12
    max_rad_dim: int = DEFAULT_MAX_RAD_DIM
    candidate_budget: int = DEFAULT_CANDIDATE_BUDGET
    local_budget: int = DEFAULT_LOCAL_BUDGET
    obstruction_budget: int = DEFAULT_OBSTRUCTION_BUDGET

    @classmethod
    def from_options(cls, options: dict[str, int], **overrides) -> "Budgets":
        b = cls()
        for key, val in {**options, **{k: v for k, v in overrides.items() if v is not None}}.items():
            if hasattr(b, key):
                setattr(b, key, int(val))
        return b


def _timed(timings: dict, key: str, fn, *args, **kwargs):
    t0 = time.perf_counter()
    try:
        return fn(*args, **kwargs)
    finally:
        timings[key] = round((time.perf_counter() - t0) * 1000.0, 3)


def check_instance(inst: Instance, budgets: Budgets | None = None, timings: bool = True) -> dict:
    """The full report for ``inst``; see the README for the field list."""
    b = budgets or Budgets.from_options(inst.options)
    times: dict[str, float] = {}
    alg = _timed(times, "build", build_algebra, inst.presentation, b.max_nilpotency)
    verdicts: dict[str, bool | None] = {}
    notes: list[str] = []
    if inst.presentation.p == 2:
        notes.append("p = 2: 1 is the only unit, so phi*psi != 1 fails whenever both d coefficients are set")
    witnesses: dict = {}

    def guarded(key, fn):
        try:
            return _timed(times, key, fn)
        except SearchBudgetExceeded as exc:
            notes.append("%s: %s" % (key, exc))
            return None

    dec = guarded(
        "decide",
        lambda: decide_biserial(
            alg, b.local_budget, b.obstruction_budget, b.max_rad_dim, b.candidate_budget
        ),
    )
    if dec is not None:
        verdicts["fuller"] = dec.biserial
        verdicts["decide"] = dec.decided
        notes += dec.notes
        if dec.fuller_certificate is not None:
            witnesses["fuller"] = dec.fuller_certificate.to_json()
        wj = dec.witness_json()
        if wj is not None:
            witnesses["decide"] = wj
        verdicts["witness"] = dec.witness_verdict
    else:
        verdicts["fuller"] = verdicts["decide"] = verdicts["witness"] = None
    for key, variant in (("subalgebra_full", Variant.FULL), ("subalgebra_d4", Variant.D4)):
        rep = guarded(key, lambda v=variant: subalgebra_criterion(alg, v, b.max_rad_dim, b.candidate_budget))
        verdicts[key] = None if rep is None else rep.biserial
    verdicts["nakayama"] = guarded("nakayama", lambda: is_nakayama(alg))
    sb = _timed(times, "special_biserial", is_special_biserial, alg)
    verdicts["special_biserial"] = sb[0]

    known = {m: verdicts[m] for m in METHODS if verdicts[m] is not None}
    disagreements = []
    if len(set(known.values())) > 1:
        disagreements.append({m: known[m] for m in METHODS if m in known})
    if verdicts["witness"] is not None and verdicts["fuller"] is not None and verdicts["witness"] != verdicts["fuller"]:
        disagreements.append({"witness": verdicts["witness"], "fuller": verdicts["fuller"]})
    return {
        "tool": "biseriality",
        "version": __version__,
        "instance": {"name": inst.name, "hash": inst.digest(), "text": inst.text()},
        "p": inst.presentation.p,
        "dims": {
            "algebra": alg.dim,
            "nilpotency": alg.nilpotency,
            "vertices": len(alg.quiver.vertices),
            "arrows": len(alg.quiver.arrows),
            "radical": [s.dim for s in alg.radical_powers],
        },
        "verdicts": verdicts,
        "witnesses": witnesses,
        "timings_ms": times if timings else {},
        "disagreements": disagreements,
        "budget_exhausted": any(v is None for k, v in verdicts.items() if k in METHODS)
        or (verdicts["witness"] is None),
        "notes": notes,
    }


def replay_witnesses(inst: Instance, report: dict, max_nilpotency: int | None = None) -> dict[str, bool]:
    """Re-verify the witnesses stored in a report against the instance text."""
    from .fuller import FullerCertificate, verify_fuller_certificate

    alg = build_algebra(inst.presentation, max_nilpotency or Budgets.from_options(inst.options).max_nilpotency)
    out = {}
    ws = report.get("witnesses", {})
    if "fuller" in ws:
        out["fuller"] = verify_fuller_certificate(alg, FullerCertificate.from_json(ws["fuller"]))
    if "decide" in ws:
        data = ws["decide"]
        if data["type"] == "bisected":
            out["decide"] = verify_bisected_witness(alg, BisectedWitness.from_json(data))[0]
        else:
            out["decide"] = certify_obstruction(alg, ObstructionWitness.from_json(alg, data))[0]
    return out


def to_jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    if isinstance(obj, np.ndarray):
        return obj.tolist()
    return obj
