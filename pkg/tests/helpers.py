"""Random fixtures shared by the test modules."""

import random

from vankampen import diagram as D
from vankampen import surface as S


def random_diagram(rng: random.Random, n_edges: int, n_polys: int, n_contours: int = 1,
                   alphabet: str = "ab", connected: bool = True) -> D.Diagram:
    """Glue 2*n_edges random signed sides into polygons; the first n_contours
    polygons become contours, the rest are faces labeled by what they read."""
    # a connected gluing of P polygons needs at least P - 1 edges
    n_polys = min(max(n_polys, n_contours + 1), n_edges + 1)
    while True:
        slots = [e * rng.choice((1, -1)) for e in range(1, n_edges + 1) for _ in range(2)]
        rng.shuffle(slots)
        cuts = sorted(rng.sample(range(1, len(slots)), n_polys - 1))
        bounds = [0] + cuts + [len(slots)]
        polys = [slots[a:b] for a, b in zip(bounds, bounds[1:])]
        contours = polys[:n_contours]
        faces = {f: p for f, p in enumerate(polys[n_contours:], 1)}
        m = S.build_map(faces, contours)
        if connected and not S.is_connected(m):
            continue
        labels = {e: rng.choice(alphabet) for e in m.edges}
        fl = {f: D.FaceLabel(1, 1, 0) for f in faces}
        return D.Diagram(m, labels, fl, {})


def face_labels(d: D.Diagram) -> list:
    return sorted(D.contour_label(d, face=f) for f in d.map.faces)


def map_contour_labels(d: D.Diagram) -> list:
    return [D.contour_label(d, contour=k) for k in range(1, len(d.map.contours) + 1)]


# -- augmentation ----------------------------------------------------------------------

def _poly(d: D.Diagram, key):
    return d.map.faces[key[1]] if key[0] == "f" else d.map.contours[key[1]]


def _rebuild(d: D.Diagram, labels, face_class) -> D.Diagram:
    m = S.build_map(d.map.faces, d.map.contours, list(d.map.trivial))
    return D.Diagram(m, {e: labels[e] for e in m.edges},
                     {f: lab for f, lab in d.face_labels.items() if f in m.faces}, face_class)


def insert_band(d: D.Diagram, e: int) -> D.Diagram:
    """Cut along edge e and fill the slit with a 1-face digon reading x x^-1."""
    d = d.copy()
    occ = S.occurrences(d.map.polygons())[e]
    (key, i, s) = occ[1]
    e2 = max(d.map.edges) + 1
    _poly(d, key)[i] = s * e2
    f = max(list(d.map.faces) + [0]) + 1
    d.map.faces[f] = [e, -e2]
    labels = dict(d.labels)
    labels[e2] = labels[e]
    fc = dict(d.face_class)
    fc[f] = 1
    return _rebuild(d, labels, fc)


def insert_loop(d: D.Diagram, key, i: int) -> D.Diagram:
    """Insert a 0-edge loop at corner i of a contour or auxiliary face, filled by a 0-monogon."""
    d = d.copy()
    z = max(d.map.edges) + 1
    _poly(d, key).insert(i, z)
    f = max(list(d.map.faces) + [0]) + 1
    d.map.faces[f] = [-z]
    labels = dict(d.labels)
    labels[z] = "1"
    fc = dict(d.face_class)
    fc[f] = 0
    return _rebuild(d, labels, fc)


def split_zero_face(d: D.Diagram, f: int, i: int, j: int) -> D.Diagram:
    """Cut a 0-face along a new 0-edge between corners i < j."""
    d = d.copy()
    F = d.map.faces[f]
    x = max(d.map.edges) + 1
    g = max(d.map.faces) + 1
    d.map.faces[f] = F[i:j] + [x]
    d.map.faces[g] = F[j:] + F[:i] + [-x]
    labels = dict(d.labels)
    labels[x] = "1"
    fc = dict(d.face_class)
    fc[g] = 0
    return _rebuild(d, labels, fc)


def random_augmented(rng: random.Random, base: D.Diagram, steps: int) -> D.Diagram:
    d = base
    for _ in range(steps):
        op = rng.random()
        aux = [f for f in d.map.faces if d.fclass(f) != 2]
        if op < 0.4:
            letter_edges = [e for e in d.map.edges if d.labels[e] != "1"]
            d = insert_band(d, rng.choice(letter_edges))
        elif op < 0.8 or not [f for f in aux if d.fclass(f) == 0 and len(d.map.faces[f]) >= 2]:
            keys = [("c", k) for k, c in enumerate(d.map.contours) if c] + [("f", f) for f in aux]
            key = rng.choice(keys)
            d = insert_loop(d, key, rng.randrange(len(_poly(d, key)) + 1))
        else:
            zs = [f for f in aux if d.fclass(f) == 0 and len(d.map.faces[f]) >= 2]
            f = rng.choice(zs)
            L = len(d.map.faces[f])
            i, j = sorted(rng.sample(range(L + 1), 2)) if L >= 2 else (0, 1)
            d = split_zero_face(d, f, i, j)
    return d



def random_disc(rng: random.Random, boundary: int, splits: int, alphabet: str = "ab") -> D.Diagram:
    """A planar disc: a polygon repeatedly cut by chord paths of new edges."""
    faces = {1: list(range(1, boundary + 1))}
    nxt = boundary + 1
    for _ in range(splits):
        f = rng.choice(list(faces))
        F = faces[f]
        i, j = sorted(rng.sample(range(len(F) + 1), 2))
        path = list(range(nxt, nxt + rng.randint(1, 3)))
        nxt += len(path)
        faces[f] = F[i:j] + path
        faces[max(faces) + 1] = F[j:] + F[:i] + [-p for p in reversed(path)]
    m = S.build_map(faces, [list(range(1, boundary + 1))])
    labels = {e: rng.choice(alphabet) for e in m.edges}
    return D.Diagram(m, labels, {f: D.FaceLabel(1, 1, 0) for f in faces}, {})


def random_smap(rng: random.Random, boundary: int, splits: int):
    """An S-map on a random disc with random selected runs."""
    from vankampen import smap as SM
    d = random_disc(rng, boundary, splits)
    tags, seg = {}, 0
    for f, sides in d.map.faces.items():
        L = len(sides)
        row = [None] * L
        if rng.random() < 0.3:
            row = [(seg, 1, 1, q) for q in range(L)]
            seg += 1
        else:
            i = rng.randrange(L)
            while i < L:
                n = rng.randint(1, L - i)
                if rng.random() < 0.6:
                    row[i:i + n] = [(seg, 1, 1, q) for q in range(n)]
                    seg += 1
                i += n
        tags[f] = row
    sm = SM.SMap(d.map, d, {f: 1 for f in d.map.faces}, tags)
    sm.arcs = SM._selected_arcs(sm)
    return sm


# -- property checks shared by unit and acceptance tests -----------------------------------

def closure_class(m):
    return S.classify_closed(S.closure(m)[0])


def random_move(rng: random.Random):
    while True:
        d = random_diagram(rng, rng.randint(2, 7), rng.randint(2, 5), rng.randint(0, 2))
        cands = D.diamond_candidates(d)
        if cands:
            e1, e2 = rng.choice(cands)
            return d, e1, e2


def diamond_violations(d: D.Diagram, e1: int, e2: int) -> list[str]:
    """Everything a diamond move must conserve, and what its kind promises."""
    new, kind = D.apply_diamond(d, e1, e2)
    bad = []
    if not D.validate_diagram(new):
        bad.append("result does not validate")
    if len(new.map.edges) != len(d.map.edges) or len(new.map.faces) != len(d.map.faces):
        bad.append("edge or face count changed")
    if face_labels(new) != face_labels(d):
        bad.append("face labels changed")
    if sorted(map_contour_labels(new)) != sorted(map_contour_labels(d)):
        bad.append("contour labels changed")
    dv = len(new.map.vertices) - len(d.map.vertices)
    if kind != {0: "proper", 1: "untwisting", 2: "disconnecting"}.get(dv):
        bad.append(f"kind {kind} with vertex delta {dv}")
    if D.euler(new) - D.euler(d) != dv:
        bad.append("euler delta differs from vertex delta")
    comps = S.components(new.map)
    if kind == "proper":
        if len(comps) != 1 or closure_class(new.map) != closure_class(d.map):
            bad.append("proper move changed the surface")
        elif not any(D.isomorphic(D.apply_diamond(new, a, b)[0], d)
                     for a, b in D.diamond_candidates(new)):
            bad.append("proper move cannot be undone")
    elif kind == "untwisting":
        if len(comps) != 1 or S.is_orientable(d.map):
            bad.append("untwisting move on an orientable or split result")
    else:
        if len(comps) > 2:
            bad.append("disconnecting move made more than two components")
        if S.is_orientable(d.map) and not S.is_orientable(new.map):
            bad.append("orientability lost")
        if not S.is_orientable(d.map) and len(comps) == 2 and all(S.is_orientable(c) for c in comps):
            bad.append("non-orientable input split into orientable parts")
        if len(comps) == 2:
            cs = [closure_class(c) for c in comps]
            for i in (0, 1):
                if cs[i].name == "sphere" and cs[1 - i] != closure_class(d.map):
                    bad.append("sphere split off but the rest changed")
    return bad


def regularization_case(rng: random.Random):
    base = random_diagram(rng, rng.randint(1, 6), rng.randint(2, 4), rng.randint(1, 2))
    return base, random_augmented(rng, base, rng.randint(1, 6))


def regularization_violations(base: D.Diagram, ad: D.Diagram) -> list[str]:
    bad = []
    if not D.validate_diagram(ad):
        return ["augmented input does not validate"]
    reg = D.regularize(ad)
    if not D.validate_diagram(reg) or reg.augmented:
        bad.append("result is not a valid regular diagram")
    m = len(reg.map.contours)
    if m != len(ad.map.contours):
        bad.append("contour count changed")
    n = len(S.components(reg.map))
    if not -m >= D.euler(reg) - 2 * n >= D.euler(ad) - 2:
        bad.append(f"euler bounds fail: m={m} n={n} chi={D.euler(reg)} chi0={D.euler(ad)}")
    if map_contour_labels(reg) != [D.cancel_ones(w) for w in map_contour_labels(ad)]:
        bad.append("contour labels differ from the cancelled originals")
    if S.is_orientable(ad.map) and not S.is_orientable(reg.map):
        bad.append("orientability lost")
    # these augmentations are reversible, so regularization recovers the base diagram
    if not D.isomorphic(reg, base):
        bad.append("base diagram not recovered")
    return bad
