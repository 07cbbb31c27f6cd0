"""Combinatorial maps encoded by side pairing.

A map is a set of polygons whose sides are signed edge ids: ``+e`` runs
along edge e from its tail to its head, ``-e`` runs backwards.  Faces are
the map's own polygons; contours are the boundary walks, which become the
"outer" polygons of the closure.  Every edge appears exactly twice among
all faces and contours.  Vertices are the classes of polygon corners glued
through edge ends; a map is a surface exactly when each vertex's corners and
edge ends form one cycle.

Polygon keys are ``("f", face_id)`` for faces and ``("c", k)`` for contours.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Iterable, Optional

PolyKey = tuple


class MapError(ValueError):
    pass


@dataclass
class CombMap:
    edges: dict[int, tuple[int, int]] = field(default_factory=dict)
    faces: dict[int, list[int]] = field(default_factory=dict)
    contours: list[list[int]] = field(default_factory=list)
    vertices: list[int] = field(default_factory=list)
    # contour index -> vertex, for trivial (empty) contours
    trivial: dict[int, int] = field(default_factory=dict)

    def copy(self) -> "CombMap":
        return CombMap(dict(self.edges), {f: list(s) for f, s in self.faces.items()},
                       [list(c) for c in self.contours], list(self.vertices), dict(self.trivial))

    @property
    def n_trivial(self) -> int:
        return len(self.trivial)

    def polygons(self, with_contours: bool = True) -> list[tuple[PolyKey, list[int]]]:
        out = [(("f", f), s) for f, s in sorted(self.faces.items())]
        if with_contours:
            out += [(("c", k), c) for k, c in enumerate(self.contours) if c]
        return out

    def side_start(self, side: int) -> int:
        t, h = self.edges[abs(side)]
        return t if side > 0 else h

    def side_end(self, side: int) -> int:
        t, h = self.edges[abs(side)]
        return h if side > 0 else t

    def degree(self) -> dict[int, int]:
        deg = {v: 0 for v in self.vertices}
        for t, h in self.edges.values():
            deg[t] += 1
            deg[h] += 1
        return deg


def occurrences(polys: Iterable[tuple[PolyKey, list[int]]]) -> dict[int, list[tuple]]:
    """edge -> [(poly key, position, sign), ...]"""
    occ: dict[int, list[tuple]] = defaultdict(list)
    for key, sides in polys:
        for i, s in enumerate(sides):
            occ[abs(s)].append((key, i, 1 if s > 0 else -1))
    return occ


class _UF:
    def __init__(self):
        self.p: dict = {}

    def find(self, x):
        p = self.p
        p.setdefault(x, x)
        root = x
        while p[root] != root:
            root = p[root]
        while p[x] != root:
            p[x], x = root, p[x]
        return root

    def union(self, a, b):
        ra, rb = self.find(a), self.find(b)
        if ra != rb:
            self.p[rb] = ra


class _Ends:
    """Union-find over edge ends ("t", e) / ("h", e), stored as integers."""

    def __init__(self, edges: Iterable[int]):
        self.index = {e: i for i, e in enumerate(edges)}
        self.parent = list(range(2 * len(self.index)))

    def _id(self, tok) -> int:
        return 2 * self.index[tok[1]] + (tok[0] == "h")

    def __contains__(self, tok) -> bool:
        return tok[1] in self.index

    def root(self, x: int) -> int:
        p = self.parent
        r = x
        while p[r] != r:
            r = p[r]
        while p[x] != r:
            p[x], x = r, p[x]
        return r

    def find(self, tok) -> int:
        return self.root(self._id(tok))


def _corner_classes(polys: list[tuple[PolyKey, list[int]]]) -> tuple[_Ends, list]:
    """Vertex classes: the end of each side is glued to the start of the next.
    Also returns the integer end ids of the side starts in polygon order."""
    edges = []
    seen = set()
    order = []
    for _, sides in polys:
        for s in sides:
            e = abs(s)
            if e not in seen:
                seen.add(e)
                edges.append(e)
    uf = _Ends(edges)
    idx = uf.index
    parent = uf.parent
    root = uf.root
    for _, sides in polys:
        L = len(sides)
        for i, s in enumerate(sides):
            start = 2 * idx[abs(s)] + (s < 0)
            order.append(start)
            prev = sides[i - 1] if L else s
            end = 2 * idx[abs(prev)] + (prev > 0)
            a, b = root(start), root(end)
            if a != b:
                parent[b] = a
    return uf, order


def build_map(faces: dict[int, list[int]], contours: list[list[int]],
              trivial_contours: Optional[Iterable[int]] = None,
              vertex_names: Optional[dict] = None) -> CombMap:
    """Assemble a map from polygons, computing vertices from corner gluing.

    ``trivial_contours`` lists the indices of empty contours (trivial
    components).  ``vertex_names`` optionally maps edge-end tokens
    ``("t", e)``/``("h", e)`` to preferred vertex ids.
    """
    m = CombMap(faces={f: list(s) for f, s in faces.items()},
                contours=[list(c) for c in contours])
    polys = m.polygons()
    uf, order = _corner_classes(polys)
    ids: dict = {}
    used: set = set()
    if vertex_names:
        for tok, v in vertex_names.items():
            r = uf.find(tok) if tok in uf else None
            if r is not None and r not in ids and v not in used:
                ids[r] = v
                used.add(v)
    nxt = 1
    root = uf.root
    for x in order:
        r = root(x)
        if r not in ids:
            while nxt in used:
                nxt += 1
            ids[r] = nxt
            used.add(nxt)
    edges = {}
    idx = uf.index
    for key, sides in polys:
        for s in sides:
            e = abs(s)
            i = 2 * idx[e]
            edges[e] = (ids[root(i)], ids[root(i + 1)])
    m.edges = dict(sorted(edges.items()))
    vs = sorted(set(ids.values()))
    triv = {}
    for k in (trivial_contours if trivial_contours is not None else
              [k for k, c in enumerate(m.contours) if not c]):
        while nxt in used:
            nxt += 1
        triv[k] = nxt
        used.add(nxt)
        vs.append(nxt)
    m.trivial = triv
    m.vertices = sorted(vs)
    return m


def rebuild(m: CombMap) -> CombMap:
    """Recompute vertices from the polygons, keeping ids where possible."""
    names = {}
    for e, (t, h) in m.edges.items():
        names.setdefault(("t", e), t)
        names.setdefault(("h", e), h)
    return build_map(m.faces, m.contours, list(m.trivial), names)


# -- validation ------------------------------------------------------------------

@dataclass
class Report:
    ok: bool
    message: str = ""

    def __bool__(self) -> bool:
        return self.ok


def validate(m: CombMap) -> Report:
    polys = m.polygons()
    for f, sides in m.faces.items():
        if not sides:
            return Report(False, f"face {f} has an empty contour")
    for k, c in enumerate(m.contours):
        if not c and k not in m.trivial:
            return Report(False, f"contour {k + 1} is empty but no trivial vertex is given")
        if c and k in m.trivial:
            return Report(False, f"contour {k + 1} is nonempty but marked trivial")
    count: dict[int, int] = defaultdict(int)
    for key, sides in polys:
        for s in sides:
            if abs(s) not in m.edges:
                return Report(False, f"{_name(key)} uses unknown edge {abs(s)}")
            count[abs(s)] += 1
    for e in m.edges:
        if count[e] > 2:
            return Report(False, f"side overused: edge {e} appears {count[e]} times")
        if count[e] < 2:
            return Report(False, f"side unused: edge {e} appears {count[e]} time(s)")
    vset = set(m.vertices)
    for e, (t, h) in m.edges.items():
        if t not in vset or h not in vset:
            return Report(False, f"edge {e} has an undeclared endpoint")
    for key, sides in polys:
        L = len(sides)
        for i, s in enumerate(sides):
            nxt = sides[(i + 1) % L]
            if m.side_end(s) != m.side_start(nxt):
                return Report(False, f"{_name(key)}: sides {i} and {(i + 1) % L} do not connect")
    uf, _ = _corner_classes(polys)
    cls_of_vertex: dict[int, object] = {}
    idx, root = uf.index, uf.root
    for e, (t, h) in m.edges.items():
        i = 2 * idx[e]
        for x, v in ((i, t), (i + 1, h)):
            r = root(x)
            if cls_of_vertex.setdefault(v, r) != r:
                return Report(False, f"vertex {v}: link is not a single cycle")
    triv = set(m.trivial.values())
    for v in m.vertices:
        if v not in cls_of_vertex and v not in triv:
            return Report(False, f"vertex {v} is isolated but not a trivial component")
        if v in cls_of_vertex and v in triv:
            return Report(False, f"vertex {v} is marked trivial but has edges")
    if len(set(m.trivial.values())) != len(m.trivial):
        return Report(False, "two trivial contours share a vertex")
    return Report(True, "ok")


def _name(key: PolyKey) -> str:
    return f"face {key[1]}" if key[0] == "f" else f"contour {key[1] + 1}"


# -- counting, closure, components ---------------------------------------------------

def euler_characteristic(m: CombMap) -> int:
    return len(m.vertices) - len(m.edges) + len(m.faces)


def closure(m: CombMap) -> tuple[CombMap, dict[int, int]]:
    """Close every contour with a new outer face.  Returns (closed map, face -> contour index)."""
    if m.trivial:
        raise MapError("closure is undefined for maps with trivial components")
    base = max(m.faces, default=0)
    faces = {f: list(s) for f, s in m.faces.items()}
    outer = {}
    for k, c in enumerate(m.contours):
        fid = base + 1 + k
        faces[fid] = list(c)
        outer[fid] = k
    closed = CombMap(dict(m.edges), faces, [], list(m.vertices), {})
    return closed, outer


def components(m: CombMap) -> list[CombMap]:
    """Connected components, each with its contours renumbered in original order."""
    uf = _UF()
    polys = m.polygons()
    for key, sides in polys:
        uf.find(key)
        for s in sides:
            uf.union(key, ("e", abs(s)))
    groups: dict = {}
    for key, _ in polys:
        groups.setdefault(uf.find(key), []).append(key)
    out = []
    for r, keys in groups.items():
        faces = {k[1]: list(m.faces[k[1]]) for k in keys if k[0] == "f"}
        cons = [list(m.contours[k[1]]) for k in sorted(k for k in keys if k[0] == "c")]
        es = {abs(s) for k in keys for s in (m.faces[k[1]] if k[0] == "f" else m.contours[k[1]])}
        edges = {e: m.edges[e] for e in sorted(es)}
        vs = sorted({v for e in es for v in m.edges[e]})
        out.append(CombMap(edges, faces, cons, vs, {}))
    for k, v in sorted(m.trivial.items()):
        out.append(CombMap({}, {}, [[]], [v], {0: v}))
    return out


def is_connected(m: CombMap) -> bool:
    polys = m.polygons()
    if len(polys) + len(m.trivial) <= 1 or (not polys and len(m.trivial) <= 1):
        return True
    if m.trivial:
        return False
    # polygons are joined through shared edges
    uf = _UF()
    for k, (_, sides) in enumerate(polys):
        for s in sides:
            uf.union(-1 - k, abs(s))
    return len({uf.find(-1 - k) for k in range(len(polys))}) == 1


def is_closed(m: CombMap) -> bool:
    return not m.contours


# -- orientation ----------------------------------------------------------------------

@dataclass
class Orientation:
    ok: bool
    flips: dict = field(default_factory=dict)
    witness: list = field(default_factory=list)


def orient(m: CombMap) -> Orientation:
    """Choose a direction for every face and contour polygon so that each edge is
    traversed once in each direction, or return a cycle of polygons where this fails."""
    polys = m.polygons()
    occ = occurrences(polys)
    adj: dict = defaultdict(list)
    for e, oc in occ.items():
        (p, _, s1), (q, _, s2) = oc
        adj[p].append((q, s1 * s2, e))
        if p != q:
            adj[q].append((p, s1 * s2, e))
    flips: dict = {}
    parent: dict = {}
    for key, _ in polys:
        if key in flips:
            continue
        flips[key] = 1
        parent[key] = None
        stack = [key]
        while stack:
            p = stack.pop()
            for q, prod, e in adj[p]:
                # consistent iff s1*f_p == -s2*f_q, i.e. f_q == -prod*f_p
                want = -prod * flips[p]
                if q not in flips:
                    flips[q] = want
                    parent[q] = (p, e)
                    stack.append(q)
                elif flips[q] != want:
                    return Orientation(False, witness=_cycle(parent, p, q, e))
    return Orientation(True, flips)


def _cycle(parent, p, q, e) -> list:
    def path(x):
        out = [x]
        while parent.get(x):
            x = parent[x][0]
            out.append(x)
        return out

    a, b = path(p), path(q)
    common = next(x for x in a if x in b)
    cyc = a[:a.index(common) + 1] + list(reversed(b[:b.index(common)]))
    return [_name(k) for k in cyc] + [f"via edge {e}"]


def is_orientable(m: CombMap) -> bool:
    return orient(m).ok


@dataclass(frozen=True)
class SurfaceClass:
    orientable: bool
    euler: int
    name: str
    genus: int  # handles if orientable, cross-caps otherwise

    def describe(self) -> str:
        if self.orientable:
            return f"orientable genus {self.genus} ({self.name})"
        caps = "cross-cap" if self.genus == 1 else "cross-caps"
        return f"non-orientable with {self.genus} {caps} ({self.name})"


def surface_class(orientable: bool, euler: int) -> SurfaceClass:
    if orientable:
        if euler % 2 or euler > 2:
            raise MapError(f"no orientable closed surface has Euler characteristic {euler}")
        g = (2 - euler) // 2
        name = {0: "sphere", 1: "torus"}.get(g, "higher")
    else:
        if euler > 1:
            raise MapError(f"no non-orientable closed surface has Euler characteristic {euler}")
        g = 2 - euler
        name = {1: "projective-plane", 2: "klein-bottle"}.get(g, "higher")
    return SurfaceClass(orientable, euler, name, g)


def classify_closed(m: CombMap) -> SurfaceClass:
    if m.contours or m.trivial:
        raise MapError("classification needs a closed map")
    if not m.faces:
        raise MapError("a closed map needs at least one face")
    if not is_connected(m):
        raise MapError("classification needs a connected map")
    return surface_class(is_orientable(m), euler_characteristic(m))


# -- submaps ------------------------------------------------------------------------

def submap(m: CombMap, face_ids: Iterable[int]) -> CombMap:
    """The submap on the given faces, with its induced contours.

    Contours run parallel to the adjacent inside faces, so on an oriented map
    they follow the orientation of the faces (as for a one-face disc, whose
    contour reads the face label).
    """
    sub = set(face_ids)
    unknown = sub - set(m.faces)
    if unknown:
        raise MapError(f"unknown faces {sorted(unknown)}")
    if not sub:
        return CombMap()
    polys = m.polygons()
    sides_of = dict(polys)
    occ = occurrences(polys)

    def inside(key) -> bool:
        return key[0] == "f" and key[1] in sub

    def partner(key, i):
        e = abs(sides_of[key][i])
        a, b = occ[e]
        return b if (a[0], a[1]) == (key, i) else a

    boundary = []
    for key, sides in polys:
        if inside(key):
            continue
        for i in range(len(sides)):
            if inside(partner(key, i)[0]):
                boundary.append((key, i))
    seen: set = set()
    contours = []
    for start in boundary:
        if start in seen:
            continue
        walk = []
        q, j, d = start[0], start[1], 1
        guard = 0
        while True:
            seen.add((q, j))
            walk.append(d * sides_of[q][j])
            # step to the next boundary side around the end vertex
            L = len(sides_of[q])
            cq, cj, cd = q, (j + d) % L, d
            while True:
                guard += 1
                if guard > 4 * sum(len(s) for _, s in polys) + 8:
                    raise MapError("boundary walk did not close")
                pk, pi, ps = partner(cq, cj)
                if inside(pk):
                    break
                own = 1 if sides_of[cq][cj] > 0 else -1
                nd = cd if own != ps else -cd
                cq, cj, cd = pk, (pi + nd) % len(sides_of[pk]), nd
            q, j, d = cq, cj, cd
            if (q, j) == start:
                if d != 1:
                    raise MapError("boundary walk closed with reversed direction")
                break
        # read the contour along the inside faces rather than the outside ones;
        # a walk starting on an original contour already runs that way
        contours.append(walk if start[0][0] == "c" else [-x for x in reversed(walk)])
    faces = {f: list(m.faces[f]) for f in sorted(sub)}
    names = {}
    for f in sub:
        for s in m.faces[f]:
            t, h = m.edges[abs(s)]
            names[("t", abs(s))] = t
            names[("h", abs(s))] = h
    return build_map(faces, contours, [], names)


def same_map_counts(a: CombMap, b: CombMap) -> bool:
    return (len(a.vertices), len(a.edges), len(a.faces), len(a.contours)) == \
        (len(b.vertices), len(b.edges), len(b.faces), len(b.contours))
