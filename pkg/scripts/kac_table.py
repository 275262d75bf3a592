"""Print the factorized Kac determinant for a range of levels.

    python scripts/kac_table.py --ell 3/2 --max-level 8 [--json out.json]
"""

import argparse
import json
import time

from cgalg.partitions import d, e
from cgalg.shapovalov import factor_check


def main():
    ap = argparse.ArgumentParser()
    ap.add_argument("--ell", default="1/2")
    ap.add_argument("--max-level", type=int, default=8)
    ap.add_argument("--json")
    args = ap.parse_args()

    rows = []
    print(f"{'m':>3} {'d':>4} {'e':>4}  factorization")
    for m in range(args.max_level + 1):
        t0 = time.perf_counter()
        fac = factor_check(args.ell, m)
        dt = time.perf_counter() - t0
        print(f"{m:>3} {d(args.ell, m):>4} {e(args.ell, m):>4}  {fac}   [{dt:.2f}s]")
        rows.append({"m": m, **fac.to_json()})
    if args.json:
        with open(args.json, "w", encoding="utf-8") as fh:
            json.dump({"ell": args.ell, "levels": rows}, fh, indent=1, ensure_ascii=False)


if __name__ == "__main__":
    main()
