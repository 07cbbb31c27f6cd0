"""Generate the presentation prefix, check every condition and write the file."""

import argparse
import sys
import time

from vankampen import presgen as P
from vankampen import solver as S


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--n-max", type=int, default=8)
    ap.add_argument("--out", default="presentation.txt")
    ap.add_argument("--decide-index-set", action="store_true",
                    help="settle which first-kind relators are kept (slow past n=4)")
    args = ap.parse_args()

    t0 = time.perf_counter()
    solver = S.family_word_solver if args.decide_index_set else None
    fam = P.generate_family(args.n_max, word_solver=solver,
                            progress=lambda s: print(s, file=sys.stderr))
    with open(args.out, "w", encoding="utf-8") as fh:
        fh.write(P.format_presentation(fam))
    results = P.check_conditions(fam)
    for r in results:
        print(r.line())
    for n, slack in P.weight_floor_ok(fam):
        print(f"floor n={n} slack={slack}")
    print(f"wrote {args.out} in {time.perf_counter() - t0:.1f}s")
    return 0 if all(r.passed for r in results) else 1


if __name__ == "__main__":
    sys.exit(main())
