"""Exhaustive search for the smallest Salem number per degree over the Hessian generators.

    python3 scripts/search_hessian.py --max-len 7 --distinct
    python3 scripts/search_hessian.py --eckardt table2 --max-len 6 --out minima.json
"""

from __future__ import annotations

import argparse
import json
import time

from enriques_salem.config import SearchConfig
from enriques_salem.dynamics import table_word


def main() -> None:
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--eckardt", default="none")
    ap.add_argument("--max-len", type=int, default=5)
    ap.add_argument("--distinct", action="store_true")
    ap.add_argument("--workers", type=int, default=1)
    ap.add_argument("--out", help="write the summary as JSON")
    args = ap.parse_args()

    family = "hessian" if args.eckardt == "none" else f"hessian:{args.eckardt}"
    config = SearchConfig(family, max_length=args.max_len, distinct_letters=args.distinct, workers=args.workers)
    t0 = time.perf_counter()
    summary = config.run()
    elapsed = time.perf_counter() - t0

    print(f"{summary.family}: {summary.dedup_classes} classes in {elapsed:.1f}s")
    for d in sorted(summary.minima):
        rep = summary.minima[d]
        n = len(summary.ties[d])
        print(f"  d={d:<3} {rep.display:>9}  {str(rep.word):<26} {table_word(rep.word)}  ({n} tied)")
    if summary.anomalies:
        print(f"  {len(summary.anomalies)} anomalous residuals")
    if args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            json.dump(summary.to_dict(), fh, sort_keys=True, indent=1)


if __name__ == "__main__":
    main()
