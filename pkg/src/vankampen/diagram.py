"""Labeled maps over a presentation: diagrams and augmented diagrams.

Edge labels are stored for the positive direction of each edge.  The symbol
``1`` marks a 0-edge.  Faces carry a :class:`FaceLabel` (relator index,
orientation, start offset): reading the face polygon from ``start`` gives
r when ``orient`` is +1 and r⁻¹ when it is -1.  Auxiliary faces (0- and
1-faces of augmented diagrams) have a class in ``face_class`` and no label.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional

from . import surface as S
from . import words as W
from .surface import CombMap, MapError, Report


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class FaceLabel:
    relator: int
    orient: int
    start: int


@dataclass
class Diagram:
    map: CombMap
    labels: dict[int, str] = field(default_factory=dict)
    face_labels: dict[int, FaceLabel] = field(default_factory=dict)
    face_class: dict[int, int] = field(default_factory=dict)

    def copy(self) -> "Diagram":
        return Diagram(self.map.copy(), dict(self.labels), dict(self.face_labels),
                       dict(self.face_class))

    def letter(self, side: int) -> str:
        c = self.labels[abs(side)]
        return c if side > 0 or c == "1" else W.INVERSE[c]

    def read(self, sides: Iterable[int]) -> str:
        return "".join(self.letter(s) for s in sides)

    def fclass(self, f: int) -> int:
        return self.face_class.get(f, 2)

    @property
    def augmented(self) -> bool:
        return bool(self.face_class) or "1" in self.labels.values()


AugmentedDiagram = Diagram


def euler(d: Diagram) -> int:
    return S.euler_characteristic(d.map)


def char_contour(d: Diagram, f: int) -> list[int]:
    """Sides of face f in the order that reads its relator."""
    sides = d.map.faces[f]
    lab = d.face_labels.get(f)
    if lab is None:
        return list(sides)
    L = len(sides)
    rot = [sides[(lab.start + i) % L] for i in range(L)]
    if lab.orient > 0:
        return rot
    return [-s for s in reversed(rot)]


def char_position(d: Diagram, f: int, i: int) -> tuple[int, int]:
    """Polygon position i of face f -> (position in the characteristic contour, direction)."""
    lab = d.face_labels[f]
    L = len(d.map.faces[f])
    if lab.orient > 0:
        return (i - lab.start) % L, 1
    return (lab.start + L - 1 - i) % L, -1


def cancel_ones(w: str) -> str:
    return w.replace("1", "")


def contour_label(d: Diagram, face: Optional[int] = None, contour: Optional[int] = None) -> str:
    """Label of a face's characteristic contour, or of map contour ``contour`` (1-based)."""
    if (face is None) == (contour is None):
        raise ValueError("give exactly one of face= or contour=")
    if face is not None:
        return d.read(char_contour(d, face))
    return d.read(d.map.contours[contour - 1])


def validate_diagram(d: Diagram, relators: Optional[dict] = None) -> Report:
    rep = S.validate(d.map)
    if not rep:
        return rep
    for e in d.map.edges:
        c = d.labels.get(e)
        if c is None or c not in "aAbB1" or len(c) != 1:
            return Report(False, f"edge {e} has no valid label")
    for f, sides in d.map.faces.items():
        cls = d.fclass(f)
        word = d.read(sides)
        if cls == 2:
            lab = d.face_labels.get(f)
            if lab is None:
                return Report(False, f"face {f} has no relator label")
            if "1" in word:
                return Report(False, f"face {f} is a 2-face incident to a 0-edge")
            if not 0 <= lab.start < len(sides) or lab.orient not in (1, -1):
                return Report(False, f"face {f} has an invalid start/orientation")
            if relators is not None:
                if lab.relator not in relators:
                    return Report(False, f"face {f} refers to unknown relator {lab.relator}")
                r = relators[lab.relator]
                r = r.word if hasattr(r, "word") else r
                if contour_label(d, face=f) != r:
                    return Report(False, f"face {f} does not read relator {lab.relator}")
        elif cls == 0:
            if word.strip("1"):
                return Report(False, f"0-face {f} has a non-0 edge")
        elif cls == 1:
            if not _one_face_shape(word):
                return Report(False, f"1-face {f} label {word} is not x 1^k x^-1 1^l")
        else:
            return Report(False, f"face {f} has unknown class {cls}")
    return Report(True, "ok")


def _one_face_shape(word: str) -> bool:
    letters = [(i, c) for i, c in enumerate(word) if c != "1"]
    return len(letters) == 2 and letters[0][1] == W.INVERSE[letters[1][1]]


# -- canonical form -------------------------------------------------------------------

def _canonical_polys(d: Diagram) -> dict:
    out = {}
    for f in d.map.faces:
        lab = d.face_labels.get(f)
        tag = ("f", lab.relator if lab else -1 - d.fclass(f))
        out[("f", f)] = (tag, char_contour(d, f))
    for k, c in enumerate(d.map.contours):
        if c:
            out[("c", k)] = (("c", k), list(c))
    return out


def canonical_form(d: Diagram) -> tuple:
    """A complete invariant of labeled diagrams up to isomorphism.

    Faces are read from their characteristic contours and contours from
    their base points, so a breadth-first walk from a contour (or from each
    face of a closed component) fixes every identification.
    """
    polys = _canonical_polys(d)
    where: dict = {}
    for key, (_, sides) in polys.items():
        for i, s in enumerate(sides):
            where.setdefault(abs(s), []).append((key, i, 1 if s > 0 else -1))
    enc = []
    keys_by_edge = {}
    for key, (_, sides) in polys.items():
        for s in sides:
            keys_by_edge.setdefault(abs(s), set()).add(key)
    # group polygons by component via union of shared edges
    uf = S._UF()
    for key in polys:
        uf.find(key)
    for e, ks in keys_by_edge.items():
        ks = list(ks)
        for k2 in ks[1:]:
            uf.union(ks[0], k2)
    groups: dict = {}
    for key in polys:
        groups.setdefault(uf.find(key), []).append(key)
    for keys in groups.values():
        cons = sorted(k for k in keys if k[0] == "c")
        roots = [cons[0]] if cons else sorted(keys)
        enc.append(min(_bfs_code(d, polys, where, r) for r in roots))
    enc.sort()
    return (tuple(enc), len(d.map.trivial), tuple(sorted(d.map.trivial)))


def _bfs_code(d: Diagram, polys: dict, where: dict, root, free: bool = False,
              root_off: int = 0) -> tuple:
    """Breadth-first encoding from ``root``.  With ``free`` set, each contour is
    read from the position where the walk first reaches it."""
    ordinal = {root: 0}
    off = {root: root_off}
    queue = [root]
    code = []
    qi = 0
    while qi < len(queue):
        key = queue[qi]
        qi += 1
        tag, sides = polys[key]
        o = off[key]
        L = len(sides)
        rot = sides[o:] + sides[:o]
        row = [tag, d.read(rot)]
        for t, s in enumerate(rot):
            i = (t + o) % L
            a, b = where[abs(s)]
            other = b if (a[0], a[1]) == (key, i) else a
            if other[0] not in ordinal:
                ordinal[other[0]] = len(queue)
                off[other[0]] = other[1] if free and other[0][0] == "c" else 0
                queue.append(other[0])
            par = 1 if (1 if s > 0 else -1) == other[2] else 0
            row.append((ordinal[other[0]], (other[1] - off[other[0]]) % len(polys[other[0]][1]), par))
        code.append(tuple(row))
    return tuple(code)


def free_canonical_form(d: Diagram) -> tuple:
    """Like :func:`canonical_form` but blind to where contours are based."""
    polys = _canonical_polys(d)
    where: dict = {}
    for key, (_, sides) in polys.items():
        for i, s in enumerate(sides):
            where.setdefault(abs(s), []).append((key, i, 1 if s > 0 else -1))
    uf = S._UF()
    for key, (_, sides) in polys.items():
        uf.find(key)
        for s in sides:
            uf.union(key, ("e", abs(s)))
    groups: dict = {}
    for key in polys:
        groups.setdefault(uf.find(key), []).append(key)
    enc = []
    for keys in groups.values():
        faces = sorted(k for k in keys if k[0] == "f")
        if faces:
            starts = [(f, 0) for f in faces]
        else:
            starts = [(c, r) for c in sorted(keys) for r in range(len(polys[c][1]))]
        enc.append(min(_bfs_code(d, polys, where, k, True, r) for k, r in starts))
    enc.sort()
    return (tuple(enc), len(d.map.trivial))


def isomorphic(a: Diagram, b: Diagram) -> bool:
    return canonical_form(a) == canonical_form(b)


# -- diamond moves ------------------------------------------------------------------------

def terminal(m: CombMap, e: int) -> int:
    return m.side_end(e)


def _link_sides(m: CombMap, e1: int, e2: int):
    """Walk the link of the common terminal vertex.  Returns (L1, R1, L2, R2)
    as occurrences (poly key, position, sign)."""
    polys = dict(m.polygons())
    attach: dict = {}
    slot_of: dict = {}
    for key, sides in polys.items():
        L = len(sides)
        for i, s in enumerate(sides):
            e = abs(s)
            occ = (key, i, 1 if s > 0 else -1)
            st, en = (("t", e), ("h", e)) if s > 0 else (("h", e), ("t", e))
            for tok, slot in ((st, (key, i, "out")), (en, (key, (i + 1) % L, "in"))):
                attach.setdefault(tok, []).append((slot, occ))
                slot_of[slot] = (tok, len(attach[tok]) - 1)

    def entering(e):
        return ("h", abs(e)) if e > 0 else ("t", abs(e))

    x1, x2 = entering(e1), entering(e2)
    visits = {}
    tok, leave = x1, 0
    arrive_occ = attach[x1][1][1]
    steps = 0
    while True:
        visits[tok] = (arrive_occ, attach[tok][leave][1])
        (key, c, kind), _ = attach[tok][leave]
        other = (key, c, "in" if kind == "out" else "out")
        ntok, idx = slot_of[other]
        arrive_occ = attach[ntok][idx][1]
        tok, leave = ntok, 1 - idx
        steps += 1
        if tok == x1:
            break
        if steps > 4 * len(slot_of) + 4:
            raise MapError("vertex link walk did not close")
    if x2 not in visits:
        raise MoveError("edges do not share a terminal vertex")
    R1, L1 = visits[x1]
    R2, L2 = visits[x2]
    return L1, R1, L2, R2


def apply_diamond(d: Diagram, e1: int, e2: int) -> tuple[Diagram, str]:
    m = d.map
    E1, E2 = abs(e1), abs(e2)
    if E1 not in m.edges or E2 not in m.edges:
        raise MoveError("unknown edge")
    if E1 == E2:
        raise MoveError("the two oriented edges must lie on different edges")
    if terminal(m, e1) != terminal(m, e2):
        raise MoveError("edges do not share a terminal vertex")
    if d.letter(e1) != d.letter(e2):
        raise MoveError("edges carry different labels")
    L1, R1, L2, R2 = _link_sides(m, e1, e2)
    eps = {E1: 1 if e1 > 0 else -1, E2: 1 if e2 > 0 else -1}
    faces = {f: list(s) for f, s in m.faces.items()}
    contours = [list(c) for c in m.contours]

    def put(occ, old_edge, new_edge):
        key, i, s = occ
        rel = s * eps[old_edge]
        target = faces[key[1]] if key[0] == "f" else contours[key[1]]
        target[i] = rel * new_edge

    put(R1, E1, E1)
    put(L2, E2, E1)
    put(R2, E2, E2)
    put(L1, E1, E2)
    names = {}
    for e, (t, h) in m.edges.items():
        if e not in (E1, E2):
            names[("t", e)] = t
            names[("h", e)] = h
    newmap = S.build_map(faces, contours, list(m.trivial), names)
    for k, v in m.trivial.items():
        newmap.trivial[k] = v
    newmap.vertices = sorted(set(newmap.vertices) | set(m.trivial.values()))
    labels = dict(d.labels)
    labels[E1] = d.letter(e1)
    labels[E2] = d.letter(e1)
    out = Diagram(newmap, labels, dict(d.face_labels), dict(d.face_class))
    dv = len(newmap.vertices) - len(m.vertices)
    kind = {0: "proper", 1: "untwisting", 2: "disconnecting"}.get(dv)
    if kind is None:
        raise MapError(f"diamond move changed the vertex count by {dv}")
    return out, kind


def diamond_candidates(d: Diagram) -> list[tuple[int, int]]:
    """All (e1, e2) with e1 != ±e2, common terminal vertex and equal labels, e1 < e2 in order."""
    by_end: dict = {}
    for e in sorted(d.map.edges):
        if d.labels[e] == "1":
            continue
        for s in (e, -e):
            by_end.setdefault((d.map.side_end(s), d.letter(s)), []).append(s)
    out = []
    for key in sorted(by_end, key=str):
        lst = by_end[key]
        for i in range(len(lst)):
            for j in range(i + 1, len(lst)):
                if abs(lst[i]) != abs(lst[j]):
                    out.append((lst[i], lst[j]))
    return out


# -- regularization ----------------------------------------------------------------------

def regularize(ad: Diagram) -> Diagram:
    """Collapse all auxiliary cells of an augmented diagram.

    The result is rebuilt from the 2-faces and the contours with 0-edges
    deleted: two 1-edge sides become one edge when they were glued to each
    other directly or through a band of 1-faces.  Contours consisting only of
    0-edges become trivial components; closed bands of 1-faces disappear.
    """
    rep = validate_diagram(ad)
    if not rep:
        raise MapError(f"invalid augmented diagram: {rep.message}")
    m = ad.map
    polys = m.polygons()
    occ = S.occurrences(polys)

    def is_terminal(key) -> bool:
        return key[0] == "c" or ad.fclass(key[1]) == 2

    band: dict = {}
    for f, sides in m.faces.items():
        if ad.fclass(f) != 1:
            continue
        ones = [i for i, s in enumerate(sides) if ad.labels[abs(s)] != "1"]
        a, b = (("f", f), ones[0]), (("f", f), ones[1])
        band[a] = b
        band[b] = a
    sign_at = {}
    for key, sides in polys:
        for i, s in enumerate(sides):
            sign_at[(key, i)] = 1 if s > 0 else -1

    sides_of = dict(polys)

    def partner(key, i):
        e = abs(sides_of[key][i])
        x, y = occ[e]
        return (y[0], y[1]) if (x[0], x[1]) == (key, i) else (x[0], x[1])

    new_faces: dict[int, list] = {}
    new_contours: list[list] = []
    new_id: dict = {}
    new_sign: dict = {}
    labels: dict[int, str] = {}
    nxt = 1
    terminals = [(key, i) for key, sides in polys if is_terminal(key)
                 for i, s in enumerate(sides) if ad.labels[abs(s)] != "1"]
    for t in terminals:
        if t in new_id:
            continue
        rho = 1
        cur = t
        while True:
            p = partner(*cur)
            rho *= sign_at[cur] * sign_at[p]
            if is_terminal(p[0]):
                break
            q = band[p]
            rho = -rho
            cur = q
        new_id[t] = nxt
        new_sign[t] = 1
        new_id[p] = nxt
        new_sign[p] = rho
        labels[nxt] = ad.letter(sign_at[t] * abs(sides_of[t[0]][t[1]]))
        nxt += 1
    for f, sides in sorted(m.faces.items()):
        if ad.fclass(f) == 2:
            new_faces[f] = [new_sign[(("f", f), i)] * new_id[(("f", f), i)] for i in range(len(sides))]
    trivial = []
    for k, c in enumerate(m.contours):
        seq = [new_sign[(("c", k), i)] * new_id[(("c", k), i)]
               for i, s in enumerate(c) if ad.labels[abs(s)] != "1"]
        if not seq:
            trivial.append(k)
        new_contours.append(seq)
    newmap = S.build_map(new_faces, new_contours, trivial)
    face_labels = {f: ad.face_labels[f] for f in new_faces}
    return Diagram(newmap, labels, face_labels, {})


# -- reducedness ----------------------------------------------------------------------------

def is_weakly_strictly_reduced(d: Diagram) -> tuple[bool, str]:
    pos: dict = {}
    for f in sorted(d.map.faces):
        if d.fclass(f) != 2:
            continue
        for c, s in enumerate(char_contour(d, f)):
            pos.setdefault(abs(s), []).append((f, c, s))
    for e in sorted(pos):
        lst = pos[e]
        for i in range(len(lst)):
            for j in range(i + 1, len(lst)):
                (f1, c1, s1), (f2, c2, s2) = lst[i], lst[j]
                if f1 != f2 and s1 == s2 and c1 == c2 and \
                        d.face_labels[f1].relator == d.face_labels[f2].relator:
                    return False, f"faces {f1},{f2} share edge {e} at position {c1}"
    return True, ""


def strip_spheres(d: Diagram) -> Diagram:
    """Drop closed spherical components with exactly two faces."""
    keep_faces = set(d.map.faces)
    for comp in S.components(d.map):
        if not comp.contours and len(comp.faces) == 2 and S.euler_characteristic(comp) == 2:
            keep_faces -= set(comp.faces)
    if keep_faces == set(d.map.faces):
        return d
    return restrict(d, keep_faces)


def restrict(d: Diagram, keep_faces: set) -> Diagram:
    """Keep whole components containing kept faces or any contour."""
    comps = S.components(d.map)
    faces = {}
    for comp in comps:
        if comp.faces and not (set(comp.faces) & keep_faces):
            continue
        faces.update(comp.faces)
    keep_edges = set()
    for f in faces:
        keep_edges |= {abs(s) for s in d.map.faces[f]}
    for k, c in enumerate(d.map.contours):
        keep_edges |= {abs(s) for s in c}
    names = {}
    for e in keep_edges:
        t, h = d.map.edges[e]
        names[("t", e)], names[("h", e)] = t, h
    newmap = S.build_map(faces, d.map.contours, list(d.map.trivial), names)
    newmap.trivial = dict(d.map.trivial)
    newmap.vertices = sorted({v for e in newmap.edges.values() for v in e} |
                             set(d.map.trivial.values()))
    return Diagram(newmap, {e: d.labels[e] for e in newmap.edges},
                   {f: d.face_labels[f] for f in faces if f in d.face_labels},
                   {f: c for f, c in d.face_class.items() if f in faces})


@dataclass
class ReduceResult:
    diagram: Diagram
    exhausted: bool     # True when the search budget ran out somewhere
    moves: list

    @property
    def flag(self) -> str:
        return "reduced-up-to-budget" if self.exhausted else "clean"


def reduce(d: Diagram, depth: int = 3, node_budget: int = 5000) -> ReduceResult:
    """Greedy search for diamond-move sequences that raise the Euler
    characteristic, then removal of spherical two-face components."""
    moves: list = []
    exhausted = False
    cur = d
    while True:
        found, hit = _improve(cur, depth, node_budget)
        exhausted |= hit
        if found is None:
            break
        cur, seq = found
        moves += seq
    out = strip_spheres(cur)
    return ReduceResult(out, exhausted, moves)


def _improve(d: Diagram, depth: int, budget: int):
    base = euler(d)
    seen = {canonical_form(d)}
    frontier = [(d, [])]
    nodes = 0
    for _ in range(depth):
        nxt = []
        for cur, seq in frontier:
            for e1, e2 in diamond_candidates(cur):
                nodes += 1
                if nodes > budget:
                    return None, True
                new, kind = apply_diamond(cur, e1, e2)
                if euler(new) > base:
                    return (new, seq + [(e1, e2)]), False
                cf = canonical_form(new)
                if cf not in seen:
                    seen.add(cf)
                    nxt.append((new, seq + [(e1, e2)]))
        frontier = nxt
        if not frontier:
            break
    return None, False


# -- certificates ------------------------------------------------------------------------------

@dataclass
class GenusCertificate:
    surface: S.SurfaceClass
    cl_bound: Optional[int]
    sql_bound: Optional[int]
    in_squares: bool
    in_commutators: bool
    trivial: bool

    def describe(self) -> str:
        cl = "-" if self.cl_bound is None else self.cl_bound
        return (f"closure {self.surface.describe()}; cl<={cl} sql<={self.sql_bound}; "
                f"trivial={int(self.trivial)}")


def genus_certificates(d: Diagram) -> GenusCertificate:
    m = d.map
    if len(m.contours) != 1:
        raise MapError("genus certificates need exactly one contour")
    if m.trivial:
        surf = S.surface_class(True, 2)
    else:
        if not S.is_connected(m):
            raise MapError("genus certificates need a connected diagram")
        closed, _ = S.closure(m)
        surf = S.classify_closed(closed)
    if surf.orientable:
        g = surf.genus
        return GenusCertificate(surf, g, 2 * g + 1, True, True, g == 0)
    return GenusCertificate(surf, None, surf.genus, True, False, False)


# -- file format ------------------------------------------------------------------------------

def _fmt_sides(sides: Iterable[int]) -> str:
    return ",".join(f"{s:+d}" for s in sides)


def format_diagram(d: Diagram) -> str:
    m = d.map
    out = ["diagram v1"]
    out += [f"vertex {v}" for v in m.vertices]
    for e, (t, h) in m.edges.items():
        out.append(f"edge {e} {t} {h} label={d.labels[e]}")
    for f, sides in m.faces.items():
        parts = [f"face {f}"]
        lab = d.face_labels.get(f)
        if lab is not None:
            parts.append(f"relator={lab.relator} orient={'+' if lab.orient > 0 else '-'} "
                         f"start={lab.start}")
        elif d.fclass(f) != 2:
            parts.append(f"class={d.fclass(f)}")
        parts.append(f"sides={_fmt_sides(sides)}")
        out.append(" ".join(parts))
    for k, c in enumerate(m.contours):
        if c:
            out.append(f"contour {k + 1} sides={_fmt_sides(c)}")
        else:
            out.append(f"contour {k + 1} at={m.trivial[k]} sides=")
    return "\n".join(out) + "\n"


class DiagramParseError(ValueError):
    pass


def parse_diagram(text: str) -> Diagram:
    lines = [ln.strip() for ln in text.splitlines() if ln.strip() and not ln.startswith("#")]
    if not lines or lines[0] != "diagram v1":
        raise DiagramParseError("missing 'diagram v1' header")
    m = CombMap()
    labels: dict[int, str] = {}
    face_labels: dict[int, FaceLabel] = {}
    face_class: dict[int, int] = {}
    contours: dict[int, tuple[list, Optional[int]]] = {}
    for no, line in enumerate(lines[1:], 2):
        parts = line.split()
        try:
            kv = dict(p.split("=", 1) for p in parts[2:] if "=" in p)
            if parts[0] == "vertex":
                m.vertices.append(int(parts[1]))
            elif parts[0] == "edge":
                e = int(parts[1])
                if e <= 0 or e in m.edges:
                    raise DiagramParseError(f"line {no}: bad or repeated edge id {e}")
                m.edges[e] = (int(parts[2]), int(parts[3]))
                lab = kv.get("label")
                if lab is None or lab not in ("a", "A", "b", "B", "1"):
                    raise DiagramParseError(f"line {no}: edge needs label=a|A|b|B|1")
                labels[e] = lab
            elif parts[0] == "face":
                f = int(parts[1])
                if f in m.faces:
                    raise DiagramParseError(f"line {no}: repeated face id {f}")
                m.faces[f] = _parse_sides(kv.get("sides"), no)
                if "relator" in kv:
                    orient = {"+": 1, "-": -1}[kv["orient"]]
                    face_labels[f] = FaceLabel(int(kv["relator"]), orient, int(kv["start"]))
                elif "class" in kv:
                    face_class[f] = int(kv["class"])
                    if face_class[f] not in (0, 1):
                        raise DiagramParseError(f"line {no}: class must be 0 or 1")
            elif parts[0] == "contour":
                k = int(parts[1])
                if k in contours or k < 1:
                    raise DiagramParseError(f"line {no}: bad or repeated contour number {k}")
                at = int(kv["at"]) if "at" in kv else None
                contours[k] = (_parse_sides(kv.get("sides"), no), at)
            else:
                raise DiagramParseError(f"line {no}: unknown record {parts[0]!r}")
        except DiagramParseError:
            raise
        except (KeyError, IndexError, ValueError) as exc:
            raise DiagramParseError(f"line {no}: {exc}") from None
    if sorted(contours) != list(range(1, len(contours) + 1)):
        raise DiagramParseError("contours must be numbered 1..m")
    for k in range(1, len(contours) + 1):
        sides, at = contours[k]
        m.contours.append(sides)
        if not sides:
            if at is None:
                raise DiagramParseError(f"trivial contour {k} needs at=<vertex>")
            m.trivial[k - 1] = at
    return Diagram(m, labels, face_labels, face_class)


def _parse_sides(text: Optional[str], no: int) -> list[int]:
    if text is None:
        raise DiagramParseError(f"line {no}: missing sides=")
    if not text:
        return []
    out = []
    for t in text.split(","):
        v = int(t)
        if v == 0:
            raise DiagramParseError(f"line {no}: edge id 0 is not allowed")
        out.append(v)
    return out


# -- construction helpers ------------------------------------------------------------------

def from_polygons(face_words: dict[int, tuple[list[int], FaceLabel]], contours: list[list[int]],
                  labels: dict[int, str], face_class: Optional[dict[int, int]] = None,
                  trivial: Optional[list[int]] = None) -> Diagram:
    faces = {f: sides for f, (sides, _) in face_words.items()}
    m = S.build_map(faces, contours, trivial)
    fl = {f: lab for f, (_, lab) in face_words.items() if lab is not None}
    return Diagram(m, {e: labels[e] for e in m.edges}, fl, dict(face_class or {}))


def one_face_disc(word: str, relator: int = 1) -> Diagram:
    """The disc diagram with one face and contour both reading ``word``."""
    if not word:
        raise ValueError("a face needs a nonempty contour")
    sides = list(range(1, len(word) + 1))
    labels = {i + 1: c for i, c in enumerate(word)}
    return from_polygons({1: (sides, FaceLabel(relator, 1, 0))}, [list(sides)], labels)


def attach_face(d: Diagram, a: int, ell: int, relator: int, rel_word: str, orient: int,
                start: int) -> Diagram:
    """Glue a new face to the outside of a one-contour disc along the contour
    segment of length ``ell`` starting at position ``a``.

    The face polygon reads the shared segment backwards and then runs along
    new edges; its characteristic reading is fixed by (orient, start).
    """
    c = d.map.contours[0]
    L = len(c)
    P = len(rel_word)
    if not 1 <= ell < min(L, P) + 1 or ell > L:
        raise MoveError("bad segment length")
    seg = [c[(a + t) % L] for t in range(ell)]
    text = rel_word if orient > 0 else W.inverse(rel_word)
    poly_word = "".join(text[(i - start) % P] for i in range(P))
    if poly_word[:ell] != W.inverse(d.read(seg)):
        raise MoveError("face label does not match the contour segment")
    nxt = max(d.map.edges, default=0) + 1
    new = list(range(nxt, nxt + P - ell))
    poly = [-x for x in reversed(seg)] + new
    labels = dict(d.labels)
    for e, ch in zip(new, poly_word[ell:]):
        labels[e] = ch
    rest = [c[(a + ell + t) % L] for t in range(L - ell)]
    contour = new + rest
    fid = max(d.map.faces, default=0) + 1
    faces = {f: list(s) for f, s in d.map.faces.items()}
    faces[fid] = poly
    m = S.build_map(faces, [contour])
    fl = dict(d.face_labels)
    fl[fid] = FaceLabel(relator, orient, start)
    return Diagram(m, labels, fl, dict(d.face_class))
