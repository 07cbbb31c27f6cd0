"""Free group words over the two letters a, b.

A word is stored as a plain ``str`` over the symbols ``a``, ``A``, ``b``,
``B`` where the capital letter is the formal inverse.  Relators in the
generated family run to millions of letters, so every routine here works
either with C-level string operations or on syllables (maximal runs of one
symbol).  ``letters`` converts to the ``(generator, sign)`` view when that is
more convenient.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence

GroupWord = str

ALPHABET = "aAbB"
INVERSE = {"a": "A", "A": "a", "b": "B", "B": "b"}
_SWAP = str.maketrans("aAbB", "AaBb")
_RUN = re.compile(r"a+|A+|b+|B+")
_WS = re.compile(r"\s+")


class WordError(ValueError):
    pass


def parse_word(text: str) -> GroupWord:
    """Parse the a/A/b/B text format, ignoring whitespace."""
    w = _WS.sub("", text)
    if w.strip("aAbB"):
        bad = next(c for c in w if c not in ALPHABET)
        raise WordError(f"unexpected symbol {bad!r} in word {text!r}")
    return w


def inverse(w: GroupWord) -> GroupWord:
    return w[::-1].translate(_SWAP)


def letters(w: GroupWord) -> list[tuple[str, int]]:
    return [(c.lower(), 1 if c.islower() else -1) for c in w]


def from_letters(seq: Iterable[tuple[str, int]]) -> GroupWord:
    return "".join(g if s > 0 else g.upper() for g, s in seq)


def power(w: GroupWord, e: int) -> GroupWord:
    return w * e if e >= 0 else inverse(w) * (-e)


# -- syllables ---------------------------------------------------------------

def syllables(w: GroupWord) -> list[tuple[str, int]]:
    """Maximal runs as ``(generator, signed length)``."""
    out = []
    for m in _RUN.finditer(w):
        s = m.group()
        c = s[0]
        out.append((c.lower(), len(s) if c.islower() else -len(s)))
    return out


def _from_syllables(syl: Sequence[tuple[str, int]]) -> GroupWord:
    return "".join(g * e if e > 0 else g.upper() * (-e) for g, e in syl)


def _reduce_syllables(syl: Iterable[tuple[str, int]]) -> list[tuple[str, int]]:
    stack: list[list] = []
    for g, e in syl:
        if stack and stack[-1][0] == g:
            stack[-1][1] += e
            if stack[-1][1] == 0:
                stack.pop()
        else:
            stack.append([g, e])
    return [(g, e) for g, e in stack]


def free_reduce(w: GroupWord) -> GroupWord:
    return _from_syllables(_reduce_syllables(syllables(w)))


def is_reduced(w: GroupWord) -> bool:
    return not any(p in w for p in ("aA", "Aa", "bB", "Bb"))


def is_cyclically_reduced(w: GroupWord) -> bool:
    return is_reduced(w) and not (len(w) > 1 and w[0] == INVERSE[w[-1]])


def cyclic_reduce(w: GroupWord) -> tuple[GroupWord, GroupWord]:
    """Return ``(core, conjugator)`` with w freely equal to c·core·c⁻¹."""
    syl = [list(x) for x in _reduce_syllables(syllables(w))]
    lo, hi = 0, len(syl) - 1
    conj = []
    while lo < hi and syl[lo][0] == syl[hi][0] and (syl[lo][1] > 0) != (syl[hi][1] > 0):
        sign = 1 if syl[lo][1] > 0 else -1
        t = min(abs(syl[lo][1]), abs(syl[hi][1]))
        conj.append((syl[lo][0], sign * t))
        syl[lo][1] -= sign * t
        syl[hi][1] += sign * t
        if syl[lo][1] == 0:
            lo += 1
        if syl[hi][1] == 0:
            hi -= 1
    core = [tuple(x) for x in syl[lo:hi + 1]]
    return _from_syllables(core), _from_syllables(_reduce_syllables(conj))


def primitive_root(w: GroupWord) -> tuple[GroupWord, int]:
    """Shortest r with w = r^e (w nonempty)."""
    i = (w + w).find(w, 1)
    if i < len(w) and len(w) % i == 0:
        return w[:i], len(w) // i
    return w, 1


def is_proper_power(w: GroupWord) -> Optional[tuple[GroupWord, int]]:
    core, _ = cyclic_reduce(w)
    if not core:
        return None
    root, e = primitive_root(core)
    return (root, e) if e >= 2 else None


def concat_reduced(u: GroupWord, v: GroupWord) -> GroupWord:
    """Free reduction of u·v for reduced u, v (cancellation at the junction only)."""
    lo, hi = 0, min(len(u), len(v))
    # largest t with u[-t:] == inverse(v[:t])
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if u[len(u) - mid:] == inverse(v[:mid]):
            lo = mid
        else:
            hi = mid - 1
    return u[:len(u) - lo] + v[lo:]


def cyclic_shifts(w: GroupWord) -> list[GroupWord]:
    return [w[i:] + w[:i] for i in range(len(w))] or [""]


def is_rotation(u: GroupWord, v: GroupWord) -> bool:
    return len(u) == len(v) and (u + u).find(v) >= 0


def conjugate_in_free_group(u: GroupWord, v: GroupWord) -> bool:
    return is_rotation(cyclic_reduce(u)[0], cyclic_reduce(v)[0])


# -- common subwords ---------------------------------------------------------

@dataclass(frozen=True)
class Runs:
    """Run-length view of a word: symbols, lengths and start positions."""
    ch: tuple
    ln: tuple
    st: tuple

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "Runs":
        ch, ln, st = [], [], []
        pos = 0
        for c, n in pairs:
            if ch and ch[-1] == c:
                ln[-1] += n
            else:
                ch.append(c)
                ln.append(n)
                st.append(pos)
            pos += n
        return cls(tuple(ch), tuple(ln), tuple(st))

    def __len__(self) -> int:
        return self.st[-1] + self.ln[-1] if self.ch else 0


def runs_of(w: GroupWord) -> Runs:
    ch, ln, st = [], [], []
    for m in _RUN.finditer(w):
        ch.append(m.group()[0])
        ln.append(m.end() - m.start())
        st.append(m.start())
    return Runs(tuple(ch), tuple(ln), tuple(st))


def _best_single(ru: Runs, rv: Runs, same: bool):
    best = (0, (0, 0))
    for c in ALPHABET:
        iu = [i for i, x in enumerate(ru.ch) if x == c]
        if not iu:
            continue
        if same:
            iu.sort(key=lambda i: (-ru.ln[i], i))
            i1 = iu[0]
            cand = (ru.ln[i1] - 1, (ru.st[i1], ru.st[i1] + 1))
            if len(iu) > 1:
                i2 = iu[1]
                if ru.ln[i2] > cand[0]:
                    cand = (ru.ln[i2], (ru.st[i1], ru.st[i2]))
        else:
            iv = [j for j, x in enumerate(rv.ch) if x == c]
            if not iv:
                continue
            i = max(iu, key=lambda i: (ru.ln[i], -i))
            j = max(iv, key=lambda j: (rv.ln[j], -j))
            p = min(ru.ln[i], rv.ln[j])
            cand = (p, (ru.st[i], rv.st[j]))
        if cand[0] > best[0]:
            best = cand
    return best


def _pareto_queries(points):
    """points: list of (A, B, payload).  Returns f(x) -> (best B, payload) over A >= x."""
    pts = sorted(points, key=lambda p: -p[0])
    xs, top = [], []
    cur = None
    for a, b, pl in pts:
        if cur is None or b > cur[0]:
            cur = (b, pl)
        xs.append(a)
        top.append(cur)
    return xs, top


def _best_pair(ru: Runs, rv: Runs, same: bool):
    """Common subwords made of exactly two (partial) runs."""
    def boundaries(r: Runs):
        out: dict[tuple[str, str], list] = {}
        for i in range(len(r.ch) - 1):
            out.setdefault((r.ch[i], r.ch[i + 1]), []).append(
                (r.ln[i], r.ln[i + 1], i))
        return out

    bu = boundaries(ru)
    bv = bu if same else boundaries(rv)
    best = (0, (0, 0))
    for key, P in bu.items():
        Q = bv.get(key)
        if not Q:
            continue
        if same:
            # two distinct boundaries: second-largest B among points with A >= x
            pts = sorted(P, key=lambda p: -p[0])
            top2: list = []
            for a, b, i in pts:
                top2.append((b, i))
                top2.sort(key=lambda t: -t[0])
                del top2[2:]
                if len(top2) == 2:
                    y = top2[1][0]
                    if a + y > best[0]:
                        i1, i2 = top2[0][1], top2[1][1]
                        best = (a + y, (ru.st[i1 + 1] - a, ru.st[i2 + 1] - a))
            continue
        xs_p, top_p = _pareto_queries(P)
        xs_q, top_q = _pareto_queries(Q)
        for x in sorted({p[0] for p in P} | {q[0] for q in Q}):
            # largest index with A >= x in descending list
            kp = _last_ge(xs_p, x)
            kq = _last_ge(xs_q, x)
            if kp < 0 or kq < 0:
                continue
            (bp, ip), (bq, iq) = top_p[kp], top_q[kq]
            y = min(bp, bq)
            if x + y > best[0]:
                best = (x + y, (ru.st[ip + 1] - x, rv.st[iq + 1] - x))
    return best


def _last_ge(desc: list, x: int) -> int:
    lo, hi = 0, len(desc)
    while lo < hi:
        mid = (lo + hi) // 2
        if desc[mid] >= x:
            lo = mid + 1
        else:
            hi = mid
    return lo - 1


def _best_long(ru: Runs, rv: Runs, same: bool):
    """Common subwords with at least one complete interior run."""
    index: dict[tuple[str, int], list[int]] = {}
    for i, key in enumerate(zip(ru.ch, ru.ln)):
        index.setdefault(key, []).append(i)
    best = (0, (0, 0))
    nu, nv = len(ru.ch), len(rv.ch)
    for j, key in enumerate(zip(rv.ch, rv.ln)):
        for i in index.get(key, ()):
            if same and i == j:
                continue
            if i > 0 and j > 0 and ru.ch[i - 1] == rv.ch[j - 1] and ru.ln[i - 1] == rv.ln[j - 1]:
                continue  # not left-maximal
            t = 0
            total = 0
            while (i + t < nu and j + t < nv and ru.ch[i + t] == rv.ch[j + t]
                   and ru.ln[i + t] == rv.ln[j + t]):
                total += ru.ln[i + t]
                t += 1
            left = 0
            if i > 0 and j > 0 and ru.ch[i - 1] == rv.ch[j - 1]:
                left = min(ru.ln[i - 1], rv.ln[j - 1])
            right = 0
            if i + t < nu and j + t < nv and ru.ch[i + t] == rv.ch[j + t]:
                right = min(ru.ln[i + t], rv.ln[j + t])
            length = left + total + right
            if length > best[0]:
                best = (length, (ru.st[i] - left, rv.st[j] - left))
    return best


def max_common_subword(u: GroupWord, v: GroupWord,
                       distinct_occurrence: bool = False) -> tuple[int, tuple[int, int]]:
    """Longest common subword of u and v with one witnessing position pair.

    With ``distinct_occurrence`` and u == v, the two occurrences must start
    at different positions.
    """
    same = distinct_occurrence and u == v
    ru = runs_of(u)
    rv = ru if same else runs_of(v)
    return common_subword_runs(ru, rv, same)


def common_subword_runs(ru: Runs, rv: Runs, same: bool = False) -> tuple[int, tuple[int, int]]:
    """``max_common_subword`` on run-length data; ``same`` excludes identical positions."""
    cands = [_best_single(ru, rv, same), _best_pair(ru, rv, same),
             _best_long(ru, rv, same)]
    return max(cands, key=lambda c: c[0])


def max_z_subword(u: GroupWord) -> tuple[int, int]:
    """Longest subword of u that is also a subword of a z-concatenation.

    Such subwords are exactly those whose interior runs all have even length.
    Returns ``(length, position)``.
    """
    return z_subword_runs(runs_of(u))


def z_subword_runs(r: Runs) -> tuple[int, int]:
    n = len(r.ch)
    best = (0, 0)
    for i in range(n):
        # an even run is better used as an interior run of a window starting earlier
        if i > 0 and r.ln[i] % 2 == 0:
            continue
        j = i + 1
        total = r.ln[i]
        while j < n and r.ln[j] % 2 == 0:
            total += r.ln[j]
            j += 1
        if j < n:
            total += r.ln[j]
        if total > best[0]:
            best = (total, r.st[i])
    return best


# -- z-concatenations --------------------------------------------------------

Z_WORDS = {1: "aa", 2: "bb"}


@dataclass(frozen=True)
class ZSpec:
    factors: tuple[tuple[int, int], ...]

    def __post_init__(self):
        for idx, e in self.factors:
            if idx not in (1, 2) or e == 0:
                raise WordError(f"bad z factor {(idx, e)}")


def z_word(spec: ZSpec) -> GroupWord:
    return "".join(power(Z_WORDS[i], e) for i, e in spec.factors)


def is_z_concatenation(w: GroupWord) -> Optional[ZSpec]:
    factors = []
    for g, e in syllables(w):
        if e % 2:
            return None
        factors.append((1 if g == "a" else 2, e // 2))
    return ZSpec(tuple(factors))


def build_test_word(n: int) -> GroupWord:
    if n < 1:
        raise WordError("n must be at least 1")
    return "".join("a" * (2 * i) + "b" * (2 * n - 2 * i) for i in range(n + 1))


def commutator(x: GroupWord, y: GroupWord) -> GroupWord:
    return x + y + inverse(x) + inverse(y)


def commutators_to_squares(pairs: Sequence[tuple[GroupWord, GroupWord]]) -> list[GroupWord]:
    """[x,y] = x²·(x⁻¹y)²·(y⁻¹)², applied pairwise."""
    out = []
    for x, y in pairs:
        out += [x, inverse(x) + y, inverse(y)]
    return out
