"""Run the S-map estimate checks over glued toy diagrams and print the tallies."""

import argparse
import sys
import time

from vankampen import smap as SM


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--max-faces", type=int, default=3)
    ap.add_argument("--min-arc", type=int, default=3,
                    help="shortest gluing arc; 2 takes about four minutes at three faces")
    args = ap.parse_args()

    t0 = time.perf_counter()
    pres, weights = SM.toy_presentation()
    res = SM.sweep(pres, weights, args.max_faces, args.min_arc)
    print(f"diagrams={res.diagrams} convenient={res.convenient}")
    for (name, status), count in sorted(res.checks.items()):
        print(f"{name:18s} {status:18s} {count}")
    for v in res.violations:
        print("VIOLATION", v)
    print(f"{time.perf_counter() - t0:.1f}s")
    return 1 if res.violations else 0


if __name__ == "__main__":
    sys.exit(main())
