"""The presentation family: parameters, conditions, relators, index set.

Relators are indexed by n = 1, 2, ...; odd n carry conditions of the first
kind (a pair (w, x)), even n conditions of the second kind (a pair (w, m)).
Every relator is assembled from k = n + 3 positive words u_{n,1}..u_{n,k}
whose lengths are tuned by the integer M_n.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Iterable, Optional

from . import words as W
from .words import GroupWord, Runs

M_CAP = 2 ** 20
WORD_ORDER = "aAbB"
ALL_CONDITIONS = ("C1", "C2", "C3", "C4", "C5", "C6", "C7", "C8", "C9", "C10", "C12")
DEFAULT_CONDITIONS = ("C1", "C2", "C3", "C4", "C5", "C6", "C8", "C9", "C10", "C12")


class ConstructionError(RuntimeError):
    pass


@dataclass(frozen=True)
class ParamSet:
    n: int
    k: int
    kappa: int
    lam: Fraction
    mu: Fraction
    nu: Fraction
    chi: int
    gamma: Fraction
    M: int

    @property
    def u_length(self) -> int:
        return 2 * self.M * (2 * self.M * self.k + 1)


def base_params(n: int, M: int = 0) -> ParamSet:
    """Everything except the search for M."""
    if n < 1:
        raise ValueError("index must be at least 1")
    k = 3 + n
    lam = mu = Fraction(1, 4 * k * (7 * k - 5))
    nu = Fraction(1, 2 * k)
    gamma = lam + (3 + 4 * k) * mu + 2 * nu
    return ParamSet(n, k, 2 * k, lam, mu, nu, 4 - k, gamma, M)


@dataclass(frozen=True)
class ConditionSpec:
    n: int
    kind: int          # 1 or 2
    w: GroupWord
    x: str = ""        # first kind
    m: int = 0         # second kind


def word_at(index: int) -> GroupWord:
    """The index-th word of {a,A,b,B}* in length-lexicographic order."""
    length = 0
    while index >= 4 ** length:
        index -= 4 ** length
        length += 1
    digits = []
    for _ in range(length):
        index, d = divmod(index, 4)
        digits.append(WORD_ORDER[d])
    return "".join(reversed(digits))


def cantor_unpair(t: int) -> tuple[int, int]:
    d = (math.isqrt(8 * t + 1) - 1) // 2
    y = t - d * (d + 1) // 2
    return d - y, y


def enumerate_conditions(n: int) -> ConditionSpec:
    if n < 1:
        raise ValueError("index must be at least 1")
    if n % 2:
        t = (n - 1) // 2
        return ConditionSpec(n, 1, word_at(t // 2), x="ab"[t % 2])
    wi, mi = cantor_unpair(n // 2 - 1)
    return ConditionSpec(n, 2, word_at(wi), m=mi + 1)


def u_pairs(i: int, M: int, k: int) -> list[tuple[str, int]]:
    top = 2 * M * k + 1
    return [p for j in range(2 * M * (i - 1) + 1, 2 * M * i + 1)
            for p in (("a", j), ("b", top - j))]


def build_u(n: int, i: int, params: ParamSet) -> GroupWord:
    if not 1 <= i <= params.k:
        raise ValueError(f"block index {i} outside 1..{params.k}")
    return "".join(c * e for c, e in u_pairs(i, params.M, params.k))


@dataclass(frozen=True)
class Segment:
    block: int      # j in 1..k
    sign: int       # +1 for u_j, -1 for its inverse copy
    start: int
    length: int


@dataclass
class Relator:
    n: int
    word: GroupWord
    kind: int
    spec: Optional[ConditionSpec] = None
    u_segments: tuple[Segment, ...] = ()
    core_positions: tuple[tuple[int, int], ...] = ()

    def __len__(self) -> int:
        return len(self.word)

    def block_at(self) -> list[Optional[tuple[int, int, int]]]:
        """Per position: (block, sign, offset in u_block) or None."""
        out: list = [None] * len(self.word)
        for s in self.u_segments:
            for t in range(s.length):
                q = t if s.sign > 0 else s.length - 1 - t
                out[s.start + t] = (s.block, s.sign, q)
        return out


def relator_length(params: ParamSet, spec: ConditionSpec, v: GroupWord = "ab") -> int:
    k, ul = params.k, params.u_length
    if spec.kind == 1:
        return 2 * k * ul + k * len(spec.w) + 1
    return 2 * k * ul + k * len(v) + spec.m * k * len(spec.w)


def build_relator(n: int, params: ParamSet, spec: ConditionSpec, v: GroupWord = "ab") -> Relator:
    k = params.k
    middle = spec.w if spec.kind == 1 else v
    parts: list[str] = []
    segs: list[Segment] = []
    core: list[tuple[int, int]] = []
    pos = 0
    for j in range(1, k + 1):
        u = build_u(n, j, params)
        for piece, sign in ((u, 1), (middle, 0), (W.inverse(u), -1)):
            if sign:
                segs.append(Segment(j, sign, pos, len(piece)))
            else:
                core.append((pos, len(piece)))
            parts.append(piece)
            pos += len(piece)
    tail = W.inverse(spec.x) if spec.kind == 1 else W.inverse(spec.w * (spec.m * k))
    core.append((pos, len(tail)))
    parts.append(tail)
    return Relator(n, "".join(parts), spec.kind, spec, tuple(segs), tuple(core))


def weight(params: ParamSet, length: int) -> Fraction:
    return (1 - 2 * params.gamma) * length


# -- conditions ---------------------------------------------------------------

@dataclass
class ConditionResult:
    name: str
    passed: bool
    margin: Optional[Fraction] = None
    where: str = ""
    witness: str = ""

    def line(self) -> str:
        parts = [self.name, "PASS" if self.passed else "FAIL"]
        if self.margin is not None:
            parts.append(f"margin={self.margin}")
        if self.where:
            parts.append(f"at={self.where}")
        if self.witness:
            parts.append(f"witness={self.witness}")
        return " ".join(parts)


class _Tracker:
    """Accumulates the minimum margin (or first failure) of one condition."""

    def __init__(self, name: str):
        self.name = name
        self.margin: Optional[Fraction] = None
        self.where = ""
        self.fail: Optional[tuple[str, str]] = None

    def add(self, margin, where: str, witness: str = "", strict: bool = False):
        margin = Fraction(margin)
        bad = margin <= 0 if strict else margin < 0
        if bad and self.fail is None:
            self.fail = (where, witness)
        if self.margin is None or margin < self.margin:
            self.margin, self.where = margin, where

    def fault(self, where: str, witness: str):
        if self.fail is None:
            self.fail = (where, witness)

    def result(self) -> ConditionResult:
        if self.fail is not None:
            return ConditionResult(self.name, False, self.margin, self.fail[0], self.fail[1])
        return ConditionResult(self.name, True, self.margin, self.where)


def _u_runs(params: ParamSet) -> list[Runs]:
    return [Runs.from_pairs(u_pairs(i, params.M, params.k)) for i in range(1, params.k + 1)]


@dataclass
class _Shape:
    """What the M-search and the checker need to know about one index."""
    params: ParamSet
    spec: ConditionSpec
    length: int
    runs: list[Runs]

    @property
    def mu_r(self) -> Fraction:
        return self.params.mu * self.length


def _shape(params: ParamSet, spec: ConditionSpec, v: GroupWord) -> _Shape:
    return _Shape(params, spec, relator_length(params, spec, v), _u_runs(params))


def _c5_pairs(shape: _Shape, earlier: Iterable[_Shape]):
    """Yield (label, |s|, bound, positions) for C5 pairs with shape as second member."""
    for other in list(earlier) + [shape]:
        bound = min(other.mu_r, shape.mu_r)
        for i1, r1 in enumerate(other.runs, 1):
            for i2, r2 in enumerate(shape.runs, 1):
                if other is shape and i1 > i2:
                    continue
                same = other is shape and i1 == i2
                s, pos = W.common_subword_runs(r1, r2, same)
                yield (f"u[{other.params.n},{i1}]~u[{shape.params.n},{i2}]", s, bound, pos)


def _feasible(shape: _Shape, earlier: list[_Shape], first_kind_words: list[GroupWord],
              v: GroupWord) -> bool:
    p = shape.params
    n = p.n
    if 2 * p.k * p.u_length < (1 - p.lam) * shape.length:
        return False
    wt = weight(p, shape.length)
    if wt < n or len(v) >= wt:
        return False
    if any(len(w) >= wt for w in first_kind_words):
        return False
    for r in shape.runs:
        if W.z_subword_runs(r)[0] > shape.mu_r:
            return False
    for _, s, bound, _ in _c5_pairs(shape, earlier):
        if s > bound:
            return False
    return True


def search_M(n: int, floor: int, earlier: list[_Shape], first_kind_words: list[GroupWord],
             v: GroupWord = "ab", cap: int = M_CAP) -> ParamSet:
    """Smallest M with M*k > floor passing C3, C5, C6, C9, C10 and the weight floor."""
    base = base_params(n)
    spec = enumerate_conditions(n)
    M = floor // base.k + 1
    while M <= cap:
        params = base_params(n, M)
        shape = _shape(params, spec, v)
        if _feasible(shape, earlier, first_kind_words, v):
            return params
        M += 1
    raise ConstructionError(f"no M <= {cap} works for index {n}")


@dataclass
class PresentationFamily:
    v: GroupWord
    params: dict[int, ParamSet] = field(default_factory=dict)
    relators: dict[int, Relator] = field(default_factory=dict)
    index_set: dict[int, Optional[bool]] = field(default_factory=dict)

    @property
    def N(self) -> int:
        return max(self.relators, default=0)

    def kept(self, below: Optional[int] = None) -> list[int]:
        return [n for n in sorted(self.relators)
                if (below is None or n < below) and self.index_set.get(n) is not False]

    def weight(self, n: int) -> Fraction:
        return weight(self.params[n], len(self.relators[n]))

    def floor(self, n: int) -> Fraction:
        """Monotone lower bound for the weight (1-2γ_n)|r_n| valid for every n >= 1.

        For generated indices the minimum of the actual weights from n on is
        used; beyond the generated prefix M_n k_n grows by at least one per step,
        |r_n| >= 4P(2P+1) with P = M_n k_n, and 1-2γ_n increases with k.
        """
        N = self.N
        if N == 0:
            return Fraction(n)

        def beyond(m: int) -> Fraction:
            p = self.params[N]
            P = p.M * p.k + (m - N)
            return (1 - 2 * p.gamma) * 4 * P * (2 * P + 1)

        if n > N:
            return max(Fraction(n), beyond(n))
        low = min([self.weight(m) for m in range(n, N + 1)] + [beyond(N + 1)])
        return max(Fraction(n), low)


def generate_family(n_max: int, v: GroupWord = "ab", force_M: Optional[int] = None,
                    word_solver: Optional[Callable] = None,
                    progress: Optional[Callable[[str], None]] = None) -> PresentationFamily:
    """Generate relators 1..n_max; the index set is decided when a solver is given."""
    fam = PresentationFamily(v)
    shapes: list[_Shape] = []
    first_words: list[GroupWord] = []
    floor = 0
    for n in range(1, n_max + 1):
        spec = enumerate_conditions(n)
        if force_M is not None:
            params = base_params(n, force_M)
        else:
            params = search_M(n, floor, shapes, first_words, v)
        floor = params.M * params.k
        shapes.append(_shape(params, spec, v))
        fam.params[n] = params
        fam.relators[n] = build_relator(n, params, spec, v)
        if spec.kind == 1:
            first_words.append(spec.w)
        if progress:
            progress(f"index {n}: k={params.k} M={params.M} |r|={len(fam.relators[n])}")
    for n in range(1, n_max + 1):
        if word_solver is None:
            fam.index_set[n] = True if fam.relators[n].kind == 2 else None
        else:
            decide_index_set(fam, n, word_solver)
    return fam


def decide_index_set(family: PresentationFamily, n: int, word_solver: Callable) -> Optional[bool]:
    """Whether relator n is kept.  ``word_solver(family, indices, w)`` returns
    "trivial", "nontrivial" or "undecided" over the relators with given indices."""
    rel = family.relators[n]
    if rel.kind == 2:
        family.index_set[n] = True
        return True
    earlier = [i for i in range(1, n) if i in family.relators]
    if any(family.index_set.get(i) is None for i in earlier):
        family.index_set[n] = None
        return None
    verdict = word_solver(family, family.kept(below=n), rel.spec.w)
    flag = {"trivial": False, "nontrivial": True}.get(verdict)
    family.index_set[n] = flag
    return flag


def check_conditions(family: PresentationFamily, N: Optional[int] = None,
                     which: Iterable[str] = DEFAULT_CONDITIONS) -> list[ConditionResult]:
    which = list(which)
    unknown = [c for c in which if c not in ALL_CONDITIONS]
    if unknown:
        raise ValueError(f"unknown condition(s): {', '.join(unknown)}")
    N = family.N if N is None else N
    idx = [n for n in sorted(family.relators) if n <= N]
    T = {c: _Tracker(c) for c in which}
    shapes: list[_Shape] = []
    first_words: list[tuple[int, GroupWord]] = []
    for n in idx:
        p = family.params[n]
        rel = family.relators[n]
        L = len(rel)
        blocks = _blocks(rel)
        if "C1" in T:
            T["C1"].add(p.k - 3, f"n={n}")
        if blocks is None:
            for c in ("C2", "C3", "C4", "C5", "C6"):
                if c in T:
                    T[c].fault(f"n={n}", "relator has no u-block structure")
        else:
            if "C2" in T:
                for j, u in enumerate(blocks, 1):
                    if not W.is_reduced(u):
                        T["C2"].fault(f"n={n}", f"u[{n},{j}] not reduced")
                T["C2"].add(0, f"n={n}")
            if "C3" in T:
                T["C3"].add(2 * sum(map(len, blocks)) - (1 - p.lam) * L, f"n={n}")
            if "C4" in T:
                for j, u in enumerate(blocks, 1):
                    T["C4"].add(p.nu * L - len(u), f"n={n},i={j}")
            runs = [W.runs_of(u) for u in blocks]
            shape = _Shape(p, rel.spec, L, runs)
            if "C5" in T:
                for label, s, bound, pos in _c5_pairs(shape, shapes):
                    T["C5"].add(bound - s, label, f"|s|={s}@{pos[0]},{pos[1]}")
            if "C6" in T:
                for j, r in enumerate(runs, 1):
                    s, pos = W.z_subword_runs(r)
                    T["C6"].add(shape.mu_r - s, f"u[{n},{j}]", f"|s|={s}@{pos}")
            shapes.append(shape)
        if "C7" in T and n - 1 in family.params:
            T["C7"].add(family.params[n - 1].chi - p.chi, f"n={n}", strict=True)
        if "C8" in T:
            T["C8"].add(Fraction(1, 2) - p.gamma, f"n={n}", f"gamma={p.gamma}", strict=True)
            lhs = (3 - 3 * p.chi) * p.mu + (1 - p.chi) * p.nu
            T["C8"].add(Fraction(1, 2) - p.gamma - lhs, f"n={n}", f"lhs={lhs}", strict=True)
        wt = weight(p, L)
        if "C9" in T:
            for i, w in first_words:
                T["C9"].add(wt - len(w), f"n={n},i={i}", f"|w_i|={len(w)}", strict=True)
        if "C10" in T:
            T["C10"].add(wt - len(family.v), f"n={n}", strict=True)
        if "C12" in T:
            pw = W.is_proper_power(rel.word)
            if pw:
                T["C12"].fault(f"n={n}", f"root={pw[0]} exponent={pw[1]}")
        if rel.kind == 1 and rel.spec is not None:
            first_words.append((n, rel.spec.w))
    return [T[c].result() for c in which]


def _blocks(rel: Relator) -> Optional[list[GroupWord]]:
    segs = [s for s in rel.u_segments if s.sign > 0]
    if not segs:
        return None
    return [rel.word[s.start:s.start + s.length] for s in sorted(segs, key=lambda s: s.block)]


def weight_floor_ok(family: PresentationFamily) -> list[tuple[int, Fraction]]:
    """(n, (1-2γ_n)|r_n| - n) for every generated index."""
    return [(n, family.weight(n) - n) for n in sorted(family.relators)]


# -- file format ---------------------------------------------------------------

def format_presentation(family: PresentationFamily) -> str:
    lines = ["presentation v1", f"seed-v {family.v}"]
    for n in sorted(family.params):
        p = family.params[n]
        lines.append(f"param {n} k={p.k} M={p.M} lambda={_frac(p.lam)} mu={_frac(p.mu)} "
                     f"nu={_frac(p.nu)} chi={p.chi}")
    for n in sorted(family.relators):
        r = family.relators[n]
        flag = {True: "1", False: "0", None: "?"}[family.index_set.get(n)]
        lines.append(f"relator {n} kind={r.kind} in-I={flag} {r.word}")
    return "\n".join(lines) + "\n"


def _frac(q: Fraction) -> str:
    return f"{q.numerator}/{q.denominator}"


class ParseError(ValueError):
    pass


def parse_presentation(text: str) -> PresentationFamily:
    """Read a presentation file.  u-block structure is recovered when a
    relator matches the construction for its parameter line."""
    lines = [ln for ln in text.splitlines() if ln.strip()]
    if not lines or lines[0].strip() != "presentation v1":
        raise ParseError("missing 'presentation v1' header")
    fam = PresentationFamily("ab")
    raw: dict[int, tuple[int, GroupWord]] = {}
    for no, line in enumerate(lines[1:], 2):
        parts = line.split()
        try:
            if parts[0] == "seed-v":
                fam.v = W.parse_word(parts[1] if len(parts) > 1 else "")
            elif parts[0] == "param":
                n = int(parts[1])
                kv = dict(p.split("=", 1) for p in parts[2:])
                p = base_params(n, int(kv["M"]))
                given = (int(kv["k"]), Fraction(kv["lambda"]), Fraction(kv["mu"]),
                         Fraction(kv["nu"]), int(kv["chi"]))
                if given != (p.k, p.lam, p.mu, p.nu, p.chi):
                    k, lam, mu, nu, chi = given
                    p = ParamSet(n, k, 2 * k, lam, mu, nu, chi,
                                 lam + (3 + 4 * k) * mu + 2 * nu, int(kv["M"]))
                fam.params[n] = p
            elif parts[0] == "relator":
                n = int(parts[1])
                kv = dict(p.split("=", 1) for p in parts[2:4])
                word = W.parse_word(parts[4] if len(parts) > 4 else "")
                kind = int(kv["kind"])
                if kind not in (1, 2):
                    raise ParseError(f"line {no}: kind must be 1 or 2")
                flag = {"1": True, "0": False, "?": None}[kv["in-I"]]
                raw[n] = (kind, word)
                fam.index_set[n] = flag
            else:
                raise ParseError(f"line {no}: unknown record {parts[0]!r}")
        except (KeyError, IndexError, ValueError) as exc:
            if isinstance(exc, ParseError):
                raise
            raise ParseError(f"line {no}: {exc}") from None
    for n, (kind, word) in raw.items():
        rel = Relator(n, word, kind)
        if n in fam.params:
            spec = enumerate_conditions(n)
            p = fam.params[n]
            if spec.kind == kind and relator_length(p, spec, fam.v) == len(word):
                built = build_relator(n, p, spec, fam.v)
                if built.word == word:
                    rel = built
        fam.relators[n] = rel
    return fam


# -- finite subpresentations ------------------------------------------------------

@dataclass
class Presentation:
    """Indexed relators with the weights (1-2γ_i)|r_i| used by the solver.

    ``isoperimetric`` records whether the weighted-area bound is known to hold
    (true for subpresentations of the generated family, asserted by the caller
    otherwise).
    """
    relators: dict[int, Relator] = field(default_factory=dict)
    gammas: dict[int, Fraction] = field(default_factory=dict)
    params: dict[int, ParamSet] = field(default_factory=dict)
    isoperimetric: bool = True

    def word(self, n: int) -> GroupWord:
        return self.relators[n].word

    def weight(self, n: int) -> Fraction:
        return (1 - 2 * self.gammas.get(n, Fraction(0))) * len(self.relators[n])

    def indices(self) -> list[int]:
        return sorted(self.relators)

    @classmethod
    def from_family(cls, family: PresentationFamily, indices: Optional[Iterable[int]] = None):
        idx = family.kept() if indices is None else sorted(indices)
        return cls({n: family.relators[n] for n in idx},
                   {n: family.params[n].gamma for n in idx if n in family.params},
                   {n: family.params[n] for n in idx if n in family.params}, True)

    @classmethod
    def from_words(cls, words: Iterable[GroupWord], gamma: Fraction = Fraction(0),
                   assert_isoperimetric: bool = False):
        rels = {i: Relator(i, w, 0) for i, w in enumerate(words, 1)}
        return cls(rels, {i: Fraction(gamma) for i in rels}, {}, assert_isoperimetric)


EMPTY = Presentation()
