"""Run every verification preset and write one JSON report per preset.

    python3 scripts/run_presets.py --limit 1000000 --out results/
"""

import argparse
import pathlib
import time

from dirichlet_lab import report
from dirichlet_lab.presets import PRESETS, VerifyConfig, run_preset


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--limit", type=int, default=None)
    ap.add_argument("--k", type=int, default=1)
    ap.add_argument("--out", type=pathlib.Path, default=pathlib.Path("results"))
    args = ap.parse_args()

    args.out.mkdir(parents=True, exist_ok=True)
    cfg = VerifyConfig(limit=args.limit, k=args.k)
    for name in PRESETS:
        t0 = time.perf_counter()
        res = run_preset(name, cfg)
        doc = {"preset": name, "verdict": res.verdict,
               "reports": [report.report_to_dict(r) for r in res.reports]}
        (args.out / f"{name}.json").write_text(report.dumps(doc), encoding="utf-8")
        print(f"{name:<20s} {res.verdict:<13s} {time.perf_counter() - t0:6.2f} s")


if __name__ == "__main__":
    main()
