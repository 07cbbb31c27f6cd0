"""Selected paths, exceptional arcs and the estimating inequalities.

A face labeled by a relator with u-block metadata gets the u-blocks of its
characteristic contour as maximal selected paths.  Every selected polygon
position carries a tag ``(segment, n, j, q)``: the segment ordinal inside the
relator, the relator index, the u-word number and the letter offset inside
u_{n,j}.  Outer faces of a closure are fully selected and have index -1.

All inequalities are evaluated with exact fractions.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Optional

from . import surface as S
from . import words as W
from .diagram import Diagram, char_position, contour_label
from .matching import RelationInstance, capacitated_assignment
from .presgen import ParamSet, Presentation, Relator, Segment
from .surface import CombMap, MapError

OUTER = -1


class SMapError(ValueError):
    pass


@dataclass
class Arc:
    sides: list[int]            # oriented edges along the arc
    faces: tuple[int, int]      # faces on the two sides (may coincide)
    exceptional: bool = False
    index: Optional[int] = None

    def __len__(self) -> int:
        return len(self.sides)

    @property
    def edges(self) -> set[int]:
        return {abs(s) for s in self.sides}


@dataclass
class SMap:
    map: CombMap
    diagram: Diagram
    index: dict[int, int]
    tags: dict[int, list]                 # face -> per-position tag or None
    outer: set[int] = field(default_factory=set)
    arcs: list[Arc] = field(default_factory=list)
    cache: dict = field(default_factory=dict, repr=False, compare=False)

    def submap(self, faces: Iterable[int]) -> CombMap:
        key = ("sub", frozenset(faces))
        if key not in self.cache:
            self.cache[key] = S.submap(self.map, key[1])
        return self.cache[key]

    @property
    def exceptional(self) -> list[Arc]:
        return [a for a in self.arcs if a.exceptional]

    def faces(self) -> list[int]:
        return sorted(self.map.faces)

    def inner_faces(self) -> list[int]:
        return [f for f in sorted(self.map.faces) if f not in self.outer]

    def selected_any(self, f: int) -> bool:
        return f in self.outer or any(t is not None for t in self.tags.get(f, ()))

    def blocks(self, f: int) -> list[tuple[int, int]]:
        """Maximal selected paths of face f as (start position, length), in polygon order."""
        sides = self.map.faces[f]
        L = len(sides)
        if f in self.outer:
            return [(0, L)]
        tags = self.tags.get(f, [None] * L)
        if all(t is None for t in tags):
            return []
        # rotate to start right after an unselected position or a block change
        first = next(i for i in range(L) if _seg(tags[i]) != _seg(tags[i - 1]))
        out = []
        i = 0
        while i < L:
            p = (first + i) % L
            if tags[p] is None:
                i += 1
                continue
            n = 1
            while n < L - i and _seg(tags[(p + n) % L]) == _seg(tags[p]):
                n += 1
            out.append((p, n))
            i += n
        return sorted(out)


def _seg(t):
    return None if t is None else t[0]


# -- derivation --------------------------------------------------------------------------

def relator_tags(rel: Relator) -> list:
    out: list = [None] * len(rel.word)
    for k, seg in enumerate(rel.u_segments):
        for t in range(seg.length):
            q = t if seg.sign > 0 else seg.length - 1 - t
            out[seg.start + t] = (k, rel.n, seg.block, q)
    return out


def derive_smap(d: Diagram, pres: Presentation, with_closure: bool = False) -> SMap:
    m = d.map
    tags: dict[int, list] = {}
    index: dict[int, int] = {}
    for f, sides in m.faces.items():
        lab = d.face_labels.get(f)
        if lab is None:
            raise SMapError(f"face {f} has no relator label")
        rel = pres.relators.get(lab.relator)
        if rel is None:
            raise SMapError(f"face {f} refers to relator {lab.relator} outside the presentation")
        index[f] = lab.relator
        rt = relator_tags(rel)
        tags[f] = [rt[char_position(d, f, i)[0]] for i in range(len(sides))]
    outer: set[int] = set()
    if with_closure:
        for k in range(len(m.contours)):
            w = contour_label(d, contour=k + 1)
            if not w or not W.is_cyclically_reduced(w) or W.is_z_concatenation(w) is None:
                raise SMapError(f"contour {k + 1} label is not a cyclically reduced "
                                "concatenation of a^±2, b^±2")
        m, outer_of = S.closure(m)
        for f in outer_of:
            index[f] = OUTER
            outer.add(f)
    sm = SMap(m, d, index, tags, outer)
    sm.arcs = _selected_arcs(sm)
    return sm


def _tag(sm: SMap, key, i):
    if key[0] != "f":
        return None
    f = key[1]
    if f in sm.outer:
        return (-1, OUTER, 0, 0)
    return sm.tags[f][i]


def _selected_arcs(sm: SMap) -> list[Arc]:
    m = sm.map
    polys = m.polygons()
    sides_of = dict(polys)
    occ = S.occurrences(polys)
    deg = m.degree()

    def selected_edge(e) -> bool:
        return all(_tag(sm, k, i) is not None for k, i, _ in occ[e])

    def step(x: int) -> Optional[int]:
        """The oriented edge continuing the arc through the end of x, or None."""
        v = m.side_end(x)
        if deg[v] != 2:
            return None
        nxt = []
        for key, i, s in occ[abs(x)]:
            d = s * (1 if x > 0 else -1)
            L = len(sides_of[key])
            j = (i + d) % L
            y = sides_of[key][j] * d
            ta, tb = _tag(sm, key, i), _tag(sm, key, j)
            if tb is None or ta[0] != tb[0]:
                return None
            nxt.append(y)
        if nxt[0] != nxt[1] or not selected_edge(abs(nxt[0])):
            return None
        return nxt[0]

    seen: set[int] = set()
    arcs = []
    for e in sorted(occ):
        if e in seen or not selected_edge(e):
            continue
        # walk back to the start of the chain
        x = e
        while True:
            y = step(-x)
            if y is None or abs(y) == e:
                break
            x = -y
        start = x
        chain = [start]
        seen.add(abs(start))
        while True:
            y = step(chain[-1])
            if y is None or abs(y) in seen:
                break
            chain.append(y)
            seen.add(abs(y))
        (ka, ia, _), (kb, ib, _) = occ[abs(chain[0])]
        arc = Arc(chain, (ka[1], kb[1]))
        arc.index = sm.index.get(ka[1])
        arc.exceptional = _is_exceptional(sm, chain, occ)
        arcs.append(arc)
    return arcs


def _is_exceptional(sm: SMap, chain: list[int], occ) -> bool:
    for x in chain:
        a, b = occ[abs(x)]
        ta, tb = _tag(sm, a[0], a[1]), _tag(sm, b[0], b[1])
        if a[0][1] in sm.outer or b[0][1] in sm.outer:
            return False
        if ta[1:] != tb[1:]:
            return False
    return True


def with_exceptional(sm: SMap, chosen: Iterable[int]) -> SMap:
    """A copy of sm in which exactly the arcs with the given positions are exceptional."""
    keep = set(chosen)
    arcs = [Arc(list(a.sides), a.faces, i in keep, a.index) for i, a in enumerate(sm.arcs)]
    return SMap(sm.map, sm.diagram, dict(sm.index), sm.tags, set(sm.outer), arcs)


# -- kappa ---------------------------------------------------------------------------------

def kappa(sm: SMap, f: int) -> tuple[int, int]:
    sides = sm.map.faces[f]
    L = len(sides)
    if f in sm.outer:
        return 0, 0
    blocks = sm.blocks(f)
    if not blocks:
        return 0, 0
    deg = sm.map.degree()
    k = len(blocks)
    kp = 0
    for (p, n), (q, _) in zip(blocks, blocks[1:] + blocks[:1]):
        gap = (q - (p + n)) % L
        if gap:
            kp += 1
            continue
        v = sm.map.side_end(sides[(p + n - 1) % L])
        if deg[v] == 1:
            kp += 1
    return k, kp


def unselected_count(sm: SMap, f: int) -> int:
    if f in sm.outer:
        return 0
    return sum(1 for t in sm.tags[f] if t is None)


# -- reports -----------------------------------------------------------------------------

@dataclass
class Check:
    name: str
    status: str                 # holds | violated | hypothesis-failed
    witness: str = ""

    @property
    def holds(self) -> bool:
        return self.status == "holds"

    def line(self) -> str:
        return f"CHECK {self.name} {self.status}" + (f" {self.witness}" if self.witness else "")


# -- condition Z(2) --------------------------------------------------------------------------

def simple_disc_contour(sm: SMap, faces: Iterable[int]) -> Optional[list[int]]:
    """Contour of the submap on ``faces`` when it is a simple disc, else None."""
    fs = frozenset(faces)
    if not fs:
        return None
    key = ("disc", fs)
    if key not in sm.cache:
        sub = sm.submap(fs)
        c = None
        if len(sub.contours) == 1 and S.euler_characteristic(sub) == 1:
            verts = [sub.side_start(x) for x in sub.contours[0]]
            if len(set(verts)) == len(verts):
                c = sub.contours[0]
        sm.cache[key] = c
    return sm.cache[key]


def _z2_context(sm: SMap, faces: set, contour: list[int]):
    occ = S.occurrences(sm.map.polygons())
    sides_of = dict(sm.map.polygons())
    outside = []
    for x in contour:
        o = None
        for key, i, s in occ[abs(x)]:
            if not (key[0] == "f" and key[1] in faces):
                o = (key, i, s * (1 if x > 0 else -1))
        outside.append(o)
    return outside, sides_of


def z2_extents(sm: SMap, faces: set, contour: list[int]) -> list[int]:
    """ext[s]: longest prefix of the cyclic contour from s that is the image of one
    selected path of a single outside face (capped at the contour length)."""
    L = len(contour)
    outside, sides_of = _z2_context(sm, faces, contour)
    ext = [0] * L
    for s in range(L):
        o = outside[s]
        if o is None or _tag(sm, o[0], o[1]) is None:
            continue
        key, i, rel = o
        seg = _tag(sm, key, i)[0]
        P = len(sides_of[key])
        n = 1
        while n < L:
            o2 = outside[(s + n) % L]
            if o2 is None or o2[0] != key or o2[2] != rel:
                break
            j = (i + rel * n) % P
            if o2[1] != j or _tag(sm, key, j) is None or _tag(sm, key, j)[0] != seg:
                break
            if n >= P:
                break
            n += 1
        ext[s] = n
    return ext


def check_Z2(sm: SMap, faces: Iterable[int]) -> Check:
    key = ("z2", frozenset(faces))
    if key not in sm.cache:
        sm.cache[key] = _check_Z2(sm, set(faces))
    return sm.cache[key]


def _check_Z2(sm: SMap, fs: set) -> Check:
    contour = simple_disc_contour(sm, fs)
    if contour is None:
        return Check("Z2", "hypothesis-failed", "submap is not a simple disc")
    L = len(contour)
    ext = z2_extents(sm, fs, contour)
    for s in range(L):
        a = ext[s]
        b = ext[(s + a) % L] if a < L else 0
        if a + b >= L:
            return Check("Z2", "violated", f"shift={s} split={a}")
    return Check("Z2", "holds")


def _is_selected_image(sm: SMap, faces: set, contour: list[int], s: int, n: int) -> bool:
    """Definition-level test: is the cyclic segment [s, s+n) the image of a selected
    path of some face outside ``faces``?  Tries every outside face, position and direction."""
    L = len(contour)
    seg = [contour[(s + t) % L] for t in range(n)]
    for key, sides in sm.map.polygons():
        if key[0] != "f" or key[1] in faces:
            continue
        P = len(sides)
        if n > P:
            continue
        for i in range(P):
            for d in (1, -1):
                ok = True
                tag0 = _tag(sm, key, i)
                if tag0 is None:
                    break
                for t in range(n):
                    j = (i + d * t) % P
                    tj = _tag(sm, key, j)
                    if tj is None or tj[0] != tag0[0] or sides[j] * d != seg[t]:
                        ok = False
                        break
                if ok:
                    return True
    return False


def check_Z2_brute(sm: SMap, faces: Iterable[int]) -> Check:
    fs = set(faces)
    contour = simple_disc_contour(sm, fs)
    if contour is None:
        return Check("Z2", "hypothesis-failed", "submap is not a simple disc")
    L = len(contour)
    cache: dict = {}

    def part(s, n):
        if n == 0:
            return True
        if (s, n) not in cache:
            cache[(s, n)] = _is_selected_image(sm, fs, contour, s, n)
        return cache[(s, n)]

    for s in range(L):
        for a in range(L + 1):
            if part(s, a) and part((s + a) % L, L - a):
                return Check("Z2", "violated", f"shift={s} split={a}")
    return Check("Z2", "holds")


# -- sub-complexes and components ---------------------------------------------------------

def _cells(sm: SMap, faces: Optional[set]):
    """Vertices, edges and faces of the subcomplex spanned by ``faces`` (all when None)."""
    m = sm.map
    if faces is None:
        fs = set(m.faces)
        es = set(m.edges)
        vs = set(m.vertices)
    else:
        fs = set(faces)
        es = {abs(x) for f in fs for x in m.faces[f]}
        vs = {v for e in es for v in m.edges[e]}
    return vs, es, fs


def _components(sm: SMap, vs: set, es: set, fs: set) -> list[tuple[set, set, set]]:
    m = sm.map
    uf = S._UF()
    for v in vs:
        uf.find(("v", v))
    for e in es:
        t, h = m.edges[e]
        uf.union(("e", e), ("v", t))
        uf.union(("e", e), ("v", h))
    for f in fs:
        for x in m.faces[f]:
            uf.union(("f", f), ("e", abs(x)))
    groups: dict = {}
    for kind, items in (("v", vs), ("e", es), ("f", fs)):
        for c in items:
            r = uf.find((kind, c))
            groups.setdefault(r, (set(), set(), set()))["vef".index(kind)].add(c)
    return sorted(groups.values(), key=lambda g: (sorted(g[0]), sorted(g[1]), sorted(g[2])))


def internal_in(sm: SMap, arc: Arc, faces: Optional[set]) -> bool:
    if faces is None:
        return True
    return arc.faces[0] in faces and arc.faces[1] in faces


def _arc_interior_vertices(sm: SMap, arc: Arc) -> set:
    return {sm.map.side_end(x) for x in arc.sides[:-1]}


def _exc_incident_external(sm: SMap, faces: Optional[set], i: int) -> list[Arc]:
    if faces is None:
        return []
    return [a for a in sm.exceptional if a.index == i and not internal_in(sm, a, faces)
            and (a.faces[0] in faces or a.faces[1] in faces)]


def check_Y(sm: SMap, faces: Optional[Iterable[int]] = None) -> Check:
    """Condition Y for the submap on ``faces`` (the whole map when None) relative to sm."""
    fset = None if faces is None else set(faces)
    vs, es, fs = _cells(sm, fset)
    if fset is not None and not S.is_connected(sm.submap(fset)):
        return Check("Y", "hypothesis-failed", "submap is not connected")
    A = [a for a in sm.exceptional if internal_in(sm, a, fset)]
    for i in sorted({a.index for a in A}):
        Ai = [a for a in A if a.index == i]
        Bi = {f for f in fs if sm.index.get(f) == i}
        rm_e = set().union(*(a.edges for a in Ai))
        rm_v = set().union(*(_arc_interior_vertices(sm, a) for a in Ai))
        comps = _components(sm, vs - rm_v, es - rm_e, fs - Bi)
        ext = _exc_incident_external(sm, fset, i)
        count = 0
        for cv, ce, cf in comps:
            chi = len(cv) - len(ce) + len(cf)
            if chi == 1 or any(a.edges <= ce for a in ext):
                count += 1
        if count > len(Bi):
            return Check("Y", "violated", f"index={i} components={count} faces={len(Bi)}")
    return Check("Y", "holds")


# -- condition D ------------------------------------------------------------------------------

@dataclass(frozen=True)
class Weights:
    lam: dict[int, Fraction]
    mu: dict[int, Fraction]
    nu: dict[int, Fraction]

    @classmethod
    def from_params(cls, params: dict[int, ParamSet]) -> "Weights":
        return cls({n: p.lam for n, p in params.items()}, {n: p.mu for n, p in params.items()},
                   {n: p.nu for n, p in params.items()})

    def gamma(self, sm: SMap, f: int) -> Fraction:
        """λ + (3 + κ + κ')μ + 2ν for face f."""
        i = sm.index[f]
        k, kp = kappa(sm, f)
        return self.lam[i] + (3 + k + kp) * self.mu[i] + 2 * self.nu[i]


def _maximal_selected_incident(sm: SMap, f: int) -> list[Arc]:
    return [a for a in sm.arcs if f in a.faces]


def check_D(sm: SMap, faces: Optional[Iterable[int]], w: Weights) -> list[Check]:
    fset = set(sm.inner_faces()) if faces is None else set(faces)
    out = []
    exc_edges = set().union(*(a.edges for a in sm.exceptional)) if sm.exceptional else set()
    # D1
    res = Check("D1", "holds")
    for f in sorted(fset):
        L = unselected_count(sm, f)
        size = len(sm.map.faces[f])
        if L > w.lam[sm.index[f]] * size:
            res = Check("D1", "violated", f"face={f} unselected={L} bound={w.lam[sm.index[f]] * size}")
            break
    out.append(res)
    # D2
    res = Check("D2", "holds")
    for f in sorted(fset):
        size = len(sm.map.faces[f])
        for a in _maximal_selected_incident(sm, f):
            M = sum(1 for x in a.sides if abs(x) not in exc_edges)
            if M > w.mu[sm.index[f]] * size:
                res = Check("D2", "violated",
                            f"face={f} arc={_fmt_arc(a)} non-exceptional={M}")
                break
        if not res.holds:
            break
    out.append(res)
    # D3
    res = Check("D3", "holds")
    sub_edges = _cells(sm, fset)[1]
    by_index: dict[int, Fraction] = {}
    for f in fset:
        i = sm.index[f]
        val = w.nu[i] * len(sm.map.faces[f])
        by_index[i] = min(by_index.get(i, val), val)
    for P in sorted(sm.map.faces):
        i = sm.index[P]
        if i not in by_index:
            continue
        N, where = _max_exceptional_on_block(sm, P, sub_edges)
        if N > by_index[i]:
            res = Check("D3", "violated", f"face={P} {where} exceptional={N} bound={by_index[i]}")
            break
    out.append(res)
    return out


def _fmt_arc(a: Arc) -> str:
    return ",".join(f"{x:+d}" for x in a.sides)


def _max_exceptional_on_block(sm: SMap, P: int, sub_edges: set) -> tuple[int, str]:
    """Largest total length of exceptional arcs lying on one simple path of the
    submap that is the image of a selected path of face P."""
    sides = sm.map.faces[P]
    exc = sm.exceptional
    best, where = 0, ""
    for start, n in sm.blocks(P):
        pos = [(start + t) % len(sides) for t in range(n)]
        # exceptional arcs on this block, as position intervals
        idx_of = {}
        for t, p in enumerate(pos):
            idx_of.setdefault(abs(sides[p]), []).append(t)
        intervals = []
        for a in exc:
            ts = [idx_of.get(abs(x)) for x in a.sides]
            if any(t is None for t in ts):
                continue
            flat = sorted(t for lst in ts for t in lst)
            lo, hi = flat[0], flat[-1]
            if hi - lo + 1 == len(a):
                intervals.append((lo, hi, len(a)))
        if not intervals:
            continue
        for lo in range(n):
            verts = set()
            for hi in range(lo, n):
                x = sides[pos[hi]]
                if abs(x) not in sub_edges:
                    break
                if hi == lo:
                    verts.add(sm.map.side_start(x))
                v = sm.map.side_end(x)
                if v in verts:
                    break
                verts.add(v)
                N = sum(ln for a, b, ln in intervals if lo <= a and b <= hi)
                if N > best:
                    best, where = N, f"block={start}+{lo}..{hi}"
    return best, where


# -- estimating inequalities ---------------------------------------------------------------------

def is_bad_sphere(sm: SMap) -> bool:
    m = sm.map
    return (not m.contours and len(m.faces) == 2 and S.euler_characteristic(m) == 2
            and all(f in sm.outer for f in m.faces))


@dataclass
class SelectedEstimate:
    check: Check
    arcs: list[Arc]
    E: list[int] = field(default_factory=list)        # arc positions sent to the overflow target
    f: dict[int, int] = field(default_factory=dict)   # arc position -> face
    certified: bool = False


def _selected_arcs_internal(sm: SMap) -> list[Arc]:
    return [a for a in sm.arcs if a.faces[0] in sm.map.faces and a.faces[1] in sm.map.faces]


def estimate_selected(sm: SMap, C: Iterable[int] = (), D: Optional[Iterable[int]] = None) -> SelectedEstimate:
    m = sm.map
    if is_bad_sphere(sm):
        return SelectedEstimate(Check("selected-arcs", "hypothesis-failed",
                                      "elementary sphere with everything selected"), [])
    if not S.is_connected(m):
        return SelectedEstimate(Check("selected-arcs", "hypothesis-failed", "not connected"), [])
    A = _selected_arcs_internal(sm)
    C = set(C)
    D = set(m.faces) if D is None else set(D)
    if not A:
        return SelectedEstimate(Check("selected-arcs", "holds", "A=0"), A, [], {}, True)
    B = {f for a in A for f in a.faces}
    kk = {f: kappa(sm, f) for f in m.faces}
    chi = S.euler_characteristic(m)
    n = len(m.contours)

    def cap3(f):
        return 3 + kk[f][0] + kk[f][1]

    rhs = sum(cap3(f) for f in B) + 2 * len(C - B) - 3 * chi - n
    if len(A) > rhs:
        return SelectedEstimate(Check("selected-arcs", "violated", f"A={len(A)} bound={rhs}"), A)
    e_cap = sum(cap3(f) for f in B - D) + 2 * len(C - (B - D)) - 3 * chi - n
    targets = sorted(D) + ["eps"]
    cap = {f: (1 + kk[f][0] + kk[f][1]) if f in C else cap3(f) for f in D}
    cap["eps"] = max(e_cap, 0)
    R = {(t, f) for t, a in enumerate(A) for f in a.faces if f in D}
    R |= {(t, "eps") for t in range(len(A))}
    res = capacitated_assignment(RelationInstance(list(range(len(A))), targets, R, cap))
    if not res.ok:
        return SelectedEstimate(Check("selected-arcs", "violated",
                                      f"no assignment; deficient={res.deficient}"), A)
    E = sorted(t for t, y in res.assignment.items() if y == "eps")
    f = {t: y for t, y in res.assignment.items() if y != "eps"}
    return SelectedEstimate(Check("selected-arcs", "holds", f"A={len(A)} bound={rhs} E={len(E)}"),
                            A, E, f, True)


@dataclass
class ExceptionalEstimate:
    check: Check
    per_index: dict[int, tuple[int, int, int]]    # i -> (|A_i|, |B_i|, delta_i)
    E: list[Arc] = field(default_factory=list)


def estimate_exceptional(sm: SMap, faces: Optional[Iterable[int]] = None) -> ExceptionalEstimate:
    fset = None if faces is None else set(faces)
    y = check_Y(sm, fset)
    if not y.holds:
        return ExceptionalEstimate(Check("exceptional-arcs", "hypothesis-failed", y.line()), {})
    vs, es, fs = _cells(sm, fset)
    sub = sm.map if fset is None else sm.submap(fset)
    chi = S.euler_characteristic(sub) if fset is not None else len(vs) - len(es) + len(fs)
    A = [a for a in sm.exceptional if internal_in(sm, a, fset)]
    per = {}
    for i in sorted({sm.index[f] for f in fs} | {a.index for a in A}):
        Ai = [a for a in A if a.index == i]
        Bi = [f for f in fs if sm.index[f] == i]
        delta = 1 if _exc_incident_external(sm, fset, i) else 0
        per[i] = (len(Ai), len(Bi), delta)
        if Ai and len(Ai) > 2 * len(Bi) - chi - delta:
            return ExceptionalEstimate(Check("exceptional-arcs", "violated",
                                             f"index={i} A={len(Ai)} B={len(Bi)} chi={chi} delta={delta}"),
                                       per)
    E = []
    for i, (a, b, dl) in per.items():
        excess = a - (2 * b - dl)
        if excess > 0:
            Ai = [x for x in A if x.index == i]
            E += Ai[len(Ai) - excess:]
    if E and len(E) > -chi:
        return ExceptionalEstimate(Check("exceptional-arcs", "violated",
                                         f"E={len(E)} chi={chi}"), per, E)
    return ExceptionalEstimate(Check("exceptional-arcs", "holds", f"chi={chi} E={len(E)}"), per, E)


def isoperimetric_check(sm: SMap, w: Weights) -> Check:
    """Total contour length against the weighted area, under the D/Y/γ hypotheses."""
    m = sm.map
    if not S.is_connected(m):
        return Check("weighted-area", "hypothesis-failed", "not connected")
    n = len(m.contours)
    chi = S.euler_characteristic(m)
    if n + 3 * chi < 0:
        return Check("weighted-area", "hypothesis-failed", f"n+3chi={n + 3 * chi}")
    for c in check_D(sm, None, w):
        if not c.holds:
            return Check("weighted-area", "hypothesis-failed", c.line())
    y = check_Y(sm, None)
    if not y.holds:
        return Check("weighted-area", "hypothesis-failed", y.line())
    gam = {f: w.gamma(sm, f) for f in sm.inner_faces()}
    bad = [f for f, g in gam.items() if g > Fraction(1, 2)]
    if bad:
        return Check("weighted-area", "hypothesis-failed", f"gamma>1/2 on face {bad[0]}")
    lhs = sum(len(c) for c in m.contours)
    rhs = sum((1 - 2 * gam[f]) * len(m.faces[f]) for f in gam)
    if lhs < rhs:
        return Check("weighted-area", "violated", f"contours={lhs} area={rhs}")
    return Check("weighted-area", "holds", f"contours={lhs} area={rhs}")


def simple_disc_submaps(sm: SMap, max_faces: Optional[int] = None) -> list[tuple[int, ...]]:
    faces = sm.inner_faces()
    top = len(faces) if max_faces is None else min(max_faces, len(faces))
    out = []
    for r in range(1, top + 1):
        for sub in itertools.combinations(faces, r):
            if simple_disc_contour(sm, set(sub)) is not None:
                out.append(sub)
    return out


def inductive_check(sm: SMap, phi: Iterable[int], w: Weights) -> Check:
    """If Y, D and the γ bound hold for Φ and Z(2) holds for every proper simple
    disc submap of Φ, then Z(2) must hold for Φ."""
    phi = tuple(sorted(phi))
    if simple_disc_contour(sm, set(phi)) is None:
        return Check("inductive", "hypothesis-failed", "not a simple disc")
    if not check_Y(sm, phi).holds:
        return Check("inductive", "hypothesis-failed", "Y")
    if not all(c.holds for c in check_D(sm, phi, w)):
        return Check("inductive", "hypothesis-failed", "D")
    if any(w.gamma(sm, f) > Fraction(1, 2) for f in phi):
        return Check("inductive", "hypothesis-failed", "gamma")
    for r in range(1, len(phi)):
        for sub in itertools.combinations(phi, r):
            if simple_disc_contour(sm, set(sub)) is not None and not check_Z2(sm, sub).holds:
                return Check("inductive", "hypothesis-failed", f"Z2 fails on {sub}")
    z = check_Z2(sm, phi)
    if not z.holds:
        return Check("inductive", "violated", z.witness)
    return Check("inductive", "holds")


# -- convenient diagrams ---------------------------------------------------------------------

def is_convenient(d: Diagram, pres: Presentation) -> tuple[bool, str]:
    from .diagram import is_weakly_strictly_reduced
    ok, why = is_weakly_strictly_reduced(d)
    if not ok:
        return False, why
    sm = derive_smap(d, pres)
    for a in sm.exceptional:
        f = a.faces[0]
        rel = pres.relators[sm.index[f]]
        j = _arc_block(sm, a)
        if len(a) != _u_len(rel, j):
            return False, f"exceptional arc {_fmt_arc(a)} covers part of u-word {j}"
    return True, ""


def _u_len(rel: Relator, j: int) -> int:
    return next(s.length for s in rel.u_segments if s.block == j)


def _arc_block(sm: SMap, a: Arc) -> int:
    occ = S.occurrences(sm.map.polygons())
    key, i, _ = occ[abs(a.sides[0])][0]
    return _tag(sm, key, i)[2]


def make_convenient(d: Diagram, pres: Presentation, max_moves: int = 10_000) -> Diagram:
    from .diagram import MoveError, apply_diamond
    for f, lab in d.face_labels.items():
        rel = pres.relators.get(lab.relator)
        if rel is None or not rel.u_segments:
            raise SMapError("make_convenient needs relators with u-block metadata")
    cur = d
    for _ in range(max_moves):
        sm = derive_smap(cur, pres)
        move = None
        for a in sm.exceptional:
            j = _arc_block(sm, a)
            if len(a) == _u_len(pres.relators[a.index], j):
                continue
            move = _extension_move(sm, a)
            if move is not None:
                break
        if move is None:
            break
        try:
            cur, _ = apply_diamond(cur, *move)
        except MoveError:
            break
    ok, why = is_convenient(cur, pres)
    if not ok:
        raise SMapError(f"could not make the diagram convenient: {why}")
    return cur


def _extension_move(sm: SMap, a: Arc) -> Optional[tuple[int, int]]:
    """Two co-terminal equally labeled edges continuing arc a on its two sides."""
    m = sm.map
    polys = m.polygons()
    sides_of = dict(polys)
    occ = S.occurrences(polys)
    for x, forward in ((a.sides[-1], True), (-a.sides[0], False)):
        cands = []
        for key, i, s in occ[abs(x)]:
            d = s * (1 if x > 0 else -1)
            L = len(sides_of[key])
            j = (i + d) % L
            tj, ti = _tag(sm, key, j), _tag(sm, key, i)
            if tj is None or tj[0] != ti[0]:
                break
            cands.append(sides_of[key][j] * d)
        if len(cands) == 2 and abs(cands[0]) != abs(cands[1]):
            y1, y2 = cands
            if sm.diagram.letter(y1) == sm.diagram.letter(y2):
                # both leave the arc end; the move wants edges entering it
                return -y1, -y2
    return None


# -- toy family for sweeps ----------------------------------------------------------------------

# blocks end in the letter the core does not use and start with pairwise different
# letters, so both relators are cyclically reduced
TOY_U = {1: ("ba", "aa", "Ba"), 2: ("ab", "bb", "Ab")}
TOY_CORE = {1: "b", 2: "a"}
TOY_TAIL = {1: "A", 2: ""}


def _toy_relator(n: int) -> Relator:
    word, segs = "", []
    for j, u in enumerate(TOY_U[n], 1):
        segs.append(Segment(j, 1, len(word), len(u)))
        word += u + TOY_CORE[n]
        segs.append(Segment(j, -1, len(word), len(u)))
        word += W.inverse(u)
    word += TOY_TAIL[n]
    return Relator(n, word, 1 if TOY_TAIL[n] else 2, None, tuple(segs))


def toy_presentation() -> tuple[Presentation, Weights]:
    """Two small relators with three u-blocks each (|u| = 2).

    μ is zero, so condition D only holds when every selected internal arc
    is exceptional; λ and ν are the least values for which one face alone
    satisfies D1 and D3.
    """
    rels = {n: _toy_relator(n) for n in (1, 2)}
    lam = {1: Fraction(1, 4), 2: Fraction(1, 5)}
    mu = {1: Fraction(0), 2: Fraction(0)}
    nu = {1: Fraction(1, 8), 2: Fraction(2, 15)}
    gam = {n: lam[n] + 2 * nu[n] for n in rels}
    params = {}
    for n, r in rels.items():
        params[n] = ParamSet(n, 3, 6, lam[n], mu[n], nu[n], 1, gam[n], 1)
    return Presentation(rels, gam, params, True), Weights(lam, mu, nu)


def _placements(word: str):
    """(orient, start, polygon word) for every way a face can read ``word``."""
    P = len(word)
    for orient in (1, -1):
        text = word if orient > 0 else W.inverse(word)
        for start in range(P):
            poly = "".join(text[(i - start) % P] for i in range(P))
            yield orient, start, poly


def glued_discs(pres: Presentation, max_faces: int, min_arc: int = 1):
    """Disc diagrams grown by gluing one face at a time along a maximal contour arc.

    Yields (face count, diagram), without repetitions up to isomorphism.
    Every gluing shares one contour segment that cannot be lengthened at
    either end; segments shorter than ``min_arc`` are skipped after the
    second face.
    """
    from .diagram import attach_face, free_canonical_form, one_face_disc
    level = []
    seen = set()
    for n in pres.indices():
        d = one_face_disc(pres.word(n), n)
        k = free_canonical_form(d)
        if k not in seen:
            seen.add(k)
            level.append(d)
            yield 1, d
    for size in range(2, max_faces + 1):
        nxt = []
        for d in level:
            c = d.map.contours[0]
            L = len(c)
            lab = d.read(c)
            for n in pres.indices():
                word = pres.word(n)
                P = len(word)
                for orient, start, poly in _placements(word):
                    for b in range(L):
                        # the new face reads c[a..b] backwards, starting at the end of c[b]
                        if poly[P - 1] == W.INVERSE[lab[(b + 1) % L]]:
                            continue
                        ell = 0
                        while ell < min(L - 1, P - 1) and poly[ell] == W.INVERSE[lab[(b - ell) % L]]:
                            ell += 1
                        if ell == 0 or (size > 2 and ell < min_arc):
                            continue
                        e = attach_face(d, (b - ell + 1) % L, ell, n, word, orient, start)
                        k = free_canonical_form(e)
                        if k in seen:
                            continue
                        seen.add(k)
                        nxt.append(e)
                        yield size, e
        level = nxt


@dataclass
class SweepResult:
    diagrams: int = 0
    convenient: int = 0
    checks: dict = field(default_factory=dict)      # (name, status) -> count
    violations: list = field(default_factory=list)

    def add(self, c: Check, where: str):
        key = (c.name, c.status)
        self.checks[key] = self.checks.get(key, 0) + 1
        if c.status == "violated":
            self.violations.append(f"{where}: {c.line()}")


def sweep(pres: Presentation, w: Weights, max_faces: int = 3, min_arc: int = 2) -> SweepResult:
    """Run the estimating checks on every convenient enumerated disc."""
    out = SweepResult()
    for size, d in glued_discs(pres, max_faces, min_arc):
        out.diagrams += 1
        ok, _ = is_convenient(d, pres)
        if not ok:
            continue
        out.convenient += 1
        sm = derive_smap(d, pres)
        where = f"faces={size} contour={d.read(d.map.contours[0])}"
        out.add(estimate_exceptional(sm).check, where)
        out.add(isoperimetric_check(sm, w), where)
        for phi in simple_disc_submaps(sm):
            out.add(inductive_check(sm, phi, w), where)
    return out
