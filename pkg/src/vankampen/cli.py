"""Command-line interface.

Exit codes: 0 affirmative or pass, 1 negative or fail, 2 usage or parse
error, 3 undecided within the configured budget.
"""

from __future__ import annotations

import argparse
import os
import sys
from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from . import diagram as D
from . import matching as MT
from . import presgen as P
from . import smap as SM
from . import solver as SV
from . import surface as S
from . import words as W

OK, NEGATIVE, USAGE, UNDECIDED = 0, 1, 2, 3


class UsageError(Exception):
    pass


@dataclass
class RunConfig:
    command: str
    seed: int = 0
    jobs: int = 1
    area_cap: Optional[Fraction] = None
    node_cap: int = 200_000
    depth: int = 3
    node_budget: int = 5000

    def __post_init__(self):
        if self.jobs < 1 or self.node_cap < 1 or self.depth < 1 or self.node_budget < 1:
            raise UsageError("caps and job counts must be positive")
        if self.area_cap is not None and self.area_cap <= 0:
            raise UsageError("--area-cap must be positive")

    def budget(self) -> SV.Budget:
        return SV.Budget(weighted_area_cap=self.area_cap, node_cap=self.node_cap,
                         prune=self.area_cap is None)


def _color(text: str, ok: bool) -> str:
    if "NO_COLOR" in os.environ or not sys.stdout.isatty():
        return text
    return f"\033[{32 if ok else 31}m{text}\033[0m"


def _read(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    with open(path, encoding="utf-8") as fh:
        return fh.read()


def _write(path: Optional[str], text: str):
    if path is None or path == "-":
        sys.stdout.write(text)
    else:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)


def _word(text: str) -> str:
    try:
        return W.parse_word(text)
    except W.WordError as exc:
        raise UsageError(str(exc)) from None


def _load_family(path: str) -> P.PresentationFamily:
    try:
        return P.parse_presentation(_read(path))
    except (P.ParseError, W.WordError) as exc:
        raise UsageError(f"{path}: {exc}") from None


def _load_diagram(path: str) -> D.Diagram:
    try:
        d = D.parse_diagram(_read(path))
    except D.DiagramParseError as exc:
        raise UsageError(f"{path}: {exc}") from None
    rep = S.validate(d.map)
    if not rep:
        raise UsageError(f"{path}: {rep.message}")
    return d


def _target(args):
    """The family or presentation a solve/oracle command runs against."""
    if args.empty:
        return P.EMPTY
    if args.relators is not None:
        rels = [_word(x) for x in args.relators.split(",") if x.strip()]
        return P.Presentation.from_words(rels, assert_isoperimetric=args.assert_isoperimetric)
    if args.pres is None:
        raise UsageError("give a presentation file, --empty or --relators")
    return _load_family(args.pres)


# -- verbs ------------------------------------------------------------------------------------

def cmd_gen(args, cfg: RunConfig) -> int:
    if args.n_max < 1:
        raise UsageError("--n-max must be at least 1")
    progress = (lambda s: print(s, file=sys.stderr)) if args.verbose else None
    try:
        fam = P.generate_family(args.n_max, force_M=args.force_m,
                                word_solver=SV.family_word_solver, progress=progress)
    except P.ConstructionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return NEGATIVE
    _write(args.out, P.format_presentation(fam))
    return OK


def cmd_check(args, cfg: RunConfig) -> int:
    fam = _load_family(args.pres)
    which = P.DEFAULT_CONDITIONS if not args.conditions else [
        c.strip() for c in args.conditions.split(",") if c.strip()]
    unknown = [c for c in which if c not in P.ALL_CONDITIONS]
    if unknown:
        raise UsageError(f"unknown condition(s): {', '.join(unknown)}")
    results = P.check_conditions(fam, args.n, which)
    for r in results:
        print(_color(r.line(), r.passed))
    floor_ok = True
    if args.floor:
        for n, slack in P.weight_floor_ok(fam):
            ok = slack >= 0
            floor_ok &= ok
            print(_color(f"floor n={n} {'PASS' if ok else 'FAIL'} slack={slack}", ok))
    return OK if all(r.passed for r in results) and floor_ok else NEGATIVE


def _verdict_code(v: SV.Verdict) -> int:
    if not v.decided:
        return UNDECIDED
    return OK if v.affirmative else NEGATIVE


def cmd_solve(args, cfg: RunConfig) -> int:
    target = _target(args)
    budget = cfg.budget()
    if args.mode == "word":
        v = SV.solve_word(target, _word(args.word), budget, args.assert_isoperimetric)
    elif args.mode == "conj":
        v = SV.solve_conjugacy(target, _word(args.w1), _word(args.w2), budget,
                               args.assert_isoperimetric)
    else:
        tasks = []
        for no, line in enumerate(_read(args.batch).splitlines(), 1):
            parts = line.split("#", 1)[0].split()
            if not parts:
                continue
            if parts[0] == "word" and len(parts) in (1, 2):
                tasks.append(("word", (_word(parts[1] if len(parts) == 2 else ""),)))
            elif parts[0] == "conj" and len(parts) == 3:
                tasks.append(("conj", (_word(parts[1]), _word(parts[2]))))
            else:
                raise UsageError(f"{args.batch}:{no}: expected 'word W' or 'conj W1 W2'")
        lines = SV.solve_many(target, tasks, budget, args.assert_isoperimetric, cfg.jobs)
        for (kind, ws), line in zip(tasks, lines):
            print(f"{kind} {' '.join(w or '-' for w in ws)} : {line}")
        return OK
    print(v.line())
    if v.certificates and args.cert:
        # two trivial words give two disc certificates: CERT and CERT.2
        for i, d in enumerate(v.certificates, 1):
            _write(args.cert if i == 1 else f"{args.cert}.{i}", D.format_diagram(d))
    return _verdict_code(v)


def cmd_diagram(args, cfg: RunConfig) -> int:
    d = _load_diagram(args.file)
    sub = args.sub
    if sub == "validate":
        rels = None
        if args.pres:
            fam = _load_family(args.pres)
            rels = {n: r.word for n, r in fam.relators.items()}
        rep = D.validate_diagram(d, rels)
        print("valid" if rep else f"invalid: {rep.message}")
        return OK if rep else NEGATIVE
    if sub == "regularize":
        out = D.regularize(d)
        _write(args.out, D.format_diagram(out))
        return OK
    if sub == "move":
        try:
            out, kind = D.apply_diamond(d, args.e1, args.e2)
        except D.MoveError as exc:
            print(f"precondition failed: {exc}", file=sys.stderr)
            return NEGATIVE
        print(f"move {kind}", file=sys.stderr)
        _write(args.out, D.format_diagram(out))
        return OK
    if sub == "reduce":
        res = D.reduce(d, cfg.depth, cfg.node_budget)
        print(f"reduce {res.flag} moves={len(res.moves)}", file=sys.stderr)
        _write(args.out, D.format_diagram(res.diagram))
        return OK if not res.exhausted else UNDECIDED
    if sub == "classify":
        m = d.map
        try:
            if not m.contours and not m.trivial:
                print(S.classify_closed(m).describe())
            else:
                print(D.genus_certificates(d).describe())
        except S.MapError as exc:
            print(f"cannot classify: {exc}")
            return NEGATIVE
        return OK
    if sub == "smap-check":
        if args.toy:
            pres, w = SM.toy_presentation()
        else:
            if not args.pres:
                raise UsageError("smap-check needs --pres or --toy")
            fam = _load_family(args.pres)
            pres = P.Presentation.from_family(fam, sorted(fam.relators))
            w = None
        try:
            sm = SM.derive_smap(d, pres)
        except SM.SMapError as exc:
            print(f"cannot derive an S-map: {exc}")
            return NEGATIVE
        checks = [SM.check_Y(sm), SM.estimate_exceptional(sm).check]
        faces = sm.inner_faces()
        if SM.simple_disc_contour(sm, faces) is not None:
            checks.append(SM.check_Z2(sm, faces))
        weights = w or SM.Weights.from_params(pres.params)
        checks += SM.check_D(sm, None, weights)
        checks.append(SM.isoperimetric_check(sm, weights))
        for c in checks:
            print(c.line())
        return NEGATIVE if any(c.status == "violated" for c in checks) else OK
    raise UsageError(f"unknown diagram command {sub}")


def cmd_match(args, cfg: RunConfig) -> int:
    try:
        inst = MT.parse_instance(args.instance)
    except ValueError as exc:
        raise UsageError(str(exc)) from None
    res = MT.capacitated_assignment(inst) if inst.f is not None else MT.hall_injection(inst)
    print(res.describe(inst))
    return OK if res.ok else NEGATIVE


def cmd_oracle(args, cfg: RunConfig) -> int:
    target = _target(args)
    if isinstance(target, P.PresentationFamily):
        target = P.Presentation.from_family(target, sorted(target.relators))
    res = SV.oracle_word(target, _word(args.word), args.radius, args.max_nodes)
    print(f"{res.answer} steps={res.steps} visited={res.visited}")
    return {"trivial": OK, "nontrivial-within-radius": NEGATIVE}.get(res.answer, UNDECIDED)


# -- parser ---------------------------------------------------------------------------------

class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _positive_fraction(text: str) -> Fraction:
    try:
        return Fraction(text)
    except (ValueError, ZeroDivisionError):
        raise argparse.ArgumentTypeError(f"not a rational number: {text!r}") from None


def _add_target(p):
    p.add_argument("pres", nargs="?", help="presentation file")
    p.add_argument("--empty", action="store_true", help="use the empty presentation")
    p.add_argument("--relators", help="comma-separated foreign relator words")
    p.add_argument("--assert-isoperimetric", action="store_true",
                   help="vouch that the weighted-area bound holds for foreign relators")


def build_parser() -> argparse.ArgumentParser:
    # shared options go on every leaf command so they can follow the verb
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--jobs", type=int, default=1)
    common.add_argument("--area-cap", type=_positive_fraction,
                        help="weighted-area cap; also turns off pruning by boundary length")
    common.add_argument("--node-cap", type=int, default=200_000)
    common.add_argument("--depth", type=int, default=3)
    common.add_argument("--node-budget", type=int, default=5000)
    ap = _Parser(prog="vankampen", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="command", required=True, parser_class=_Parser)

    g = sub.add_parser("gen", parents=[common], help="generate a presentation file")
    g.add_argument("--n-max", type=int, required=True)
    g.add_argument("--out", "-o")
    g.add_argument("--force-m", type=int, help=argparse.SUPPRESS)
    g.add_argument("--verbose", "-v", action="store_true")

    c = sub.add_parser("check", parents=[common], help="check construction conditions")
    c.add_argument("pres")
    c.add_argument("--conditions", help="comma-separated, default all checked ones")
    c.add_argument("--n", type=int, help="only indices up to n")
    c.add_argument("--floor", action="store_true", help="also check the weight floor")

    s = sub.add_parser("solve", help="word and conjugacy problems")
    ssub = s.add_subparsers(dest="mode", required=True, parser_class=_Parser)
    sw = ssub.add_parser("word", parents=[common])
    _add_target(sw)
    sw.add_argument("--word", required=True)
    sw.add_argument("--cert")
    sc = ssub.add_parser("conj", parents=[common])
    _add_target(sc)
    sc.add_argument("--w1", required=True)
    sc.add_argument("--w2", required=True)
    sc.add_argument("--cert")
    sb = ssub.add_parser("batch", parents=[common])
    _add_target(sb)
    sb.add_argument("--batch", required=True, help="file of 'word W' / 'conj W1 W2' lines")

    d = sub.add_parser("diagram", help="diagram operations")
    dsub = d.add_subparsers(dest="sub", required=True, parser_class=_Parser)
    for name in ("validate", "regularize", "move", "reduce", "classify", "smap-check"):
        p = dsub.add_parser(name, parents=[common])
        p.add_argument("file")
        if name in ("regularize", "move", "reduce"):
            p.add_argument("--out", "-o")
        if name == "validate":
            p.add_argument("--pres")
        if name == "move":
            p.add_argument("--e1", type=int, required=True)
            p.add_argument("--e2", type=int, required=True)
        if name == "smap-check":
            p.add_argument("--pres")
            p.add_argument("--toy", action="store_true")

    m = sub.add_parser("match", parents=[common], help="Hall / capacitated assignment on A=..; B=..; R=..; f=..")
    m.add_argument("instance")

    o = sub.add_parser("oracle", parents=[common], help="brute-force triviality search")
    _add_target(o)
    o.add_argument("--word", required=True)
    o.add_argument("--radius", type=int, default=1)
    o.add_argument("--max-nodes", type=int, default=100_000)
    return ap


COMMANDS = {"gen": cmd_gen, "check": cmd_check, "solve": cmd_solve, "diagram": cmd_diagram,
            "match": cmd_match, "oracle": cmd_oracle}


def main(argv: Optional[list[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        cfg = RunConfig(args.command, args.seed, args.jobs, args.area_cap, args.node_cap,
                        args.depth, args.node_budget)
        return COMMANDS[args.command](args, cfg)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return USAGE
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE


if __name__ == "__main__":
    sys.exit(main())
