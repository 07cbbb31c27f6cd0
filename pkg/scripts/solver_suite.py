"""Seeded word and conjugacy questions over a generated presentation file."""

import argparse
import random
import sys

from vankampen import presgen as P
from vankampen import solver as S
from vankampen import words as W


def random_word(rng: random.Random, max_len: int) -> str:
    return W.free_reduce("".join(rng.choice(W.ALPHABET) for _ in range(rng.randint(0, max_len))))


def main() -> int:
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("pres", help="file written by `vankampen gen`")
    ap.add_argument("--count", type=int, default=200)
    ap.add_argument("--max-len", type=int, default=12)
    ap.add_argument("--seed", type=int, default=0)
    ap.add_argument("--jobs", type=int, default=1)
    args = ap.parse_args()

    with open(args.pres, encoding="utf-8") as fh:
        fam = P.parse_presentation(fh.read())
    rng = random.Random(args.seed)
    tasks = []
    for _ in range(args.count):
        if rng.random() < 0.5:
            tasks.append(("word", (random_word(rng, args.max_len),)))
        else:
            tasks.append(("conj", (random_word(rng, args.max_len), random_word(rng, args.max_len))))
    # a conjugate of each kept short relator; later ones run to millions of letters
    for n in fam.kept(below=3):
        r = fam.relators[n].word
        tasks.append(("word", ("a" + r + "A",)))
    lines = S.solve_many(fam, tasks, jobs=args.jobs)
    for (kind, ws), line in zip(tasks, lines):
        shown = " ".join((w[:24] + "..." if len(w) > 24 else w) or "-" for w in ws)
        print(f"{kind} {shown} : {line}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
