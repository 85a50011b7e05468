"""Print one line per curated fixture: verdicts, dimensions, witness and time."""

from __future__ import annotations

import argparse
from pathlib import Path

from biseriality.instance import load_instance
from biseriality.report import METHODS, check_instance

ROOT = Path(__file__).resolve().parent.parent


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("directory", nargs="?", type=Path, default=ROOT / "fixtures")
    args = ap.parse_args()
    print("%-14s %4s %2s  %-24s %-18s %8s" % ("instance", "dim", "m", "verdicts", "witness", "ms"))
    for fp in sorted(args.directory.glob("*.alg")):
        r = check_instance(load_instance(fp))
        verdicts = "".join("+" if r["verdicts"][m] else "-" for m in METHODS)
        w = r["witnesses"].get("decide")
        if w is None or w["type"] == "bisected":
            wit = "none" if w is None else "bisected"
        else:
            wit = "kind %d" % w["kind"] + ("" if w.get("i") is None else " (i=%s, j=%s)" % (w["i"], w["j"]))
        total = sum(r["timings_ms"].values())
        print("%-14s %4d %2d  %-24s %-18s %8.1f" % (fp.stem, r["dims"]["algebra"], r["dims"]["nilpotency"], verdicts, wit, total))
    print("verdict columns: " + ", ".join(METHODS))


if __name__ == "__main__":
    main()
