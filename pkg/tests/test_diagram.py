import random
from pathlib import Path

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers as H
from vankampen import diagram as D
from vankampen import surface as S
from vankampen import words as W

FIX = Path(__file__).parent / "fixtures"
seeds = st.integers(0, 2**32)


def load(name):
    return D.parse_diagram((FIX / name).read_text())


def relabel(d, rng):
    """The same diagram with edge ids permuted, some edges reversed and faces renumbered."""
    edges = list(d.map.edges)
    perm = dict(zip(edges, rng.sample(range(1, 3 * len(edges) + 1), len(edges))))
    flip = {e: rng.choice((1, -1)) for e in edges}

    def side(s):
        e = abs(s)
        return (1 if s > 0 else -1) * flip[e] * perm[e]

    fids = list(d.map.faces)
    fperm = dict(zip(fids, rng.sample(range(1, 3 * len(fids) + 2), len(fids))))
    faces = {fperm[f]: [side(s) for s in sides] for f, sides in d.map.faces.items()}
    contours = [[side(s) for s in c] for c in d.map.contours]
    m = S.build_map(faces, contours, list(d.map.trivial))
    labels = {perm[e]: (c if flip[e] > 0 or c == "1" else W.INVERSE[c]) for e, c in d.labels.items()}
    return D.Diagram(m, labels, {fperm[f]: lab for f, lab in d.face_labels.items()},
                     {fperm[f]: c for f, c in d.face_class.items()})


# -- labels and validation -------------------------------------------------------------

def test_one_face_disc_reads_its_word():
    d = D.one_face_disc("abAB", relator=2)
    assert D.contour_label(d, face=1) == "abAB"
    assert D.contour_label(d, contour=1) == "abAB"
    assert D.validate_diagram(d, {2: "abAB"})
    assert not D.validate_diagram(d, {2: "abAb"})
    assert not D.validate_diagram(d, {1: "abAB"})


def test_start_offset_shifts_the_reading():
    d = D.one_face_disc("aabAB")
    d.face_labels[1] = D.FaceLabel(1, 1, 2)
    assert D.contour_label(d, face=1) == "bABaa"
    d.face_labels[1] = D.FaceLabel(1, -1, 0)
    assert D.contour_label(d, face=1) == W.inverse("aabAB")


def test_contour_label_needs_one_target():
    with pytest.raises(ValueError):
        D.contour_label(D.one_face_disc("ab"))


def test_validate_diagram_rejects_bad_cells():
    d = D.one_face_disc("ab")
    d.labels[1] = "1"
    assert "0-edge" in D.validate_diagram(d).message
    d = D.one_face_disc("ab")
    d.face_class[1] = 1
    assert not D.validate_diagram(d)
    d = D.one_face_disc("aA")
    d.face_class[1] = 1
    assert D.validate_diagram(d)


# -- file format -------------------------------------------------------------------

@settings(max_examples=100, deadline=None)
@given(seeds)
def test_format_parse_roundtrip(seed):
    rng = random.Random(seed)
    d = H.random_augmented(rng, H.random_diagram(rng, rng.randint(1, 6), 3, rng.randint(1, 2)),
                           rng.randint(0, 4))
    text = D.format_diagram(d)
    back = D.parse_diagram(text)
    assert D.format_diagram(back) == text
    assert back.map == d.map


def test_trivial_contour_roundtrip():
    text = "diagram v1\nvertex 4\ncontour 1 at=4 sides=\n"
    d = D.parse_diagram(text)
    assert d.map.trivial == {0: 4} and D.validate_diagram(d)
    assert D.format_diagram(d) == text


@pytest.mark.parametrize("text", [
    "",
    "diagram v2\n",
    "diagram v1\nedge 1 1 1\n",
    "diagram v1\nedge 1 1 1 label=c\n",
    "diagram v1\nedge 1 1 1 label=a\nedge 1 1 1 label=a\n",
    "diagram v1\nface 1 sides=+0\n",
    "diagram v1\ncontour 2 sides=+1\n",
    "diagram v1\ncontour 1 sides=\n",
    "diagram v1\nface 1 class=3 sides=+1\n",
    "diagram v1\nblob\n",
])
def test_parse_errors(text):
    with pytest.raises(D.DiagramParseError):
        D.parse_diagram(text)


# -- canonical forms ----------------------------------------------------------------

@settings(max_examples=150, deadline=None)
@given(seeds)
def test_canonical_form_ignores_naming(seed):
    rng = random.Random(seed)
    d = H.random_diagram(rng, rng.randint(1, 7), rng.randint(2, 4), rng.randint(0, 2))
    e = relabel(d, rng)
    assert D.validate_diagram(e)
    assert D.canonical_form(d) == D.canonical_form(e)
    assert D.free_canonical_form(d) == D.free_canonical_form(e)


@settings(max_examples=100, deadline=None)
@given(seeds)
def test_canonical_form_sees_labels(seed):
    rng = random.Random(seed)
    d = H.random_diagram(rng, rng.randint(1, 7), rng.randint(2, 4), 1)
    e = d.copy()
    x = rng.choice(list(e.labels))
    e.labels[x] = W.INVERSE[e.labels[x]]
    assert D.canonical_form(d) != D.canonical_form(e)


def test_free_form_forgets_base_point():
    a = D.one_face_disc("aab")
    b = a.copy()
    b.map.contours[0] = b.map.contours[0][1:] + b.map.contours[0][:1]
    assert D.canonical_form(a) != D.canonical_form(b)
    assert D.free_canonical_form(a) == D.free_canonical_form(b)


# -- diamond moves --------------------------------------------------------------------

@settings(max_examples=300, deadline=None)
@given(seeds)
def test_diamond_move_properties(seed):
    d, e1, e2 = H.random_move(random.Random(seed))
    assert H.diamond_violations(d, e1, e2) == []


def test_proper_move_on_non_loops():
    # a square face whose two a-edges enter one vertex from distinct tails
    d = D.from_polygons({1: ([1, -2, 3, 4], D.FaceLabel(1, 1, 0))},
                        [[-4, -3, 2, -1]], {1: "a", 2: "a", 3: "b", 4: "b"})
    assert D.validate_diagram(d)
    t1, h1 = d.map.edges[1]
    t2, h2 = d.map.edges[2]
    assert h1 == h2 and len({t1, t2, h1}) == 3
    new, kind = D.apply_diamond(d, 1, 2)
    assert kind == "proper"
    assert H.face_labels(new) == H.face_labels(d)
    assert any(D.isomorphic(D.apply_diamond(new, a, b)[0], d)
               for a, b in D.diamond_candidates(new))


@pytest.mark.parametrize("e1, e2", [(1, 1), (1, -1), (1, 99)])
def test_diamond_rejects_bad_pairs(e1, e2):
    d = D.one_face_disc("aab")
    with pytest.raises(D.MoveError):
        D.apply_diamond(d, e1, e2)


def test_diamond_rejects_different_labels():
    d = H.random_diagram(random.Random(5), 4, 3, 1, alphabet="a")
    d.labels = {e: "a" if e % 2 else "b" for e in d.labels}
    for e1 in list(d.map.edges) + [-e for e in d.map.edges]:
        for e2 in list(d.map.edges) + [-e for e in d.map.edges]:
            if abs(e1) != abs(e2) and d.map.side_end(e1) == d.map.side_end(e2) \
                    and d.letter(e1) != d.letter(e2):
                with pytest.raises(D.MoveError):
                    D.apply_diamond(d, e1, e2)
                return


# -- regularization -----------------------------------------------------------------

@settings(max_examples=200, deadline=None)
@given(seeds)
def test_regularization_contract(seed):
    base, ad = H.regularization_case(random.Random(seed))
    assert H.regularization_violations(base, ad) == []


def test_regular_diagram_is_unchanged():
    d = load("disc_abAB.txt")
    assert D.isomorphic(D.regularize(d), d)


def test_all_zero_contour_becomes_trivial_component():
    ad = D.Diagram(S.build_map({1: [1, 2]}, [[-2, -1]]), {1: "1", 2: "1"}, {}, {1: 0})
    assert D.validate_diagram(ad)
    reg = D.regularize(ad)
    assert reg.map.contours == [[]] and len(reg.map.trivial) == 1
    assert D.validate_diagram(reg) and D.euler(reg) == 1


def test_regularize_golden_pair():
    got = D.format_diagram(D.regularize(load("augmented.txt")))
    assert got == (FIX / "augmented_regularized.txt").read_text()


def test_regularize_rejects_invalid():
    d = load("augmented.txt")
    d.face_class[3] = 1
    with pytest.raises(S.MapError):
        D.regularize(d)


# -- reducedness ------------------------------------------------------------------------

def cancelable_pair():
    # two mirror copies of the face abb glued along their first edge
    return D.from_polygons({1: ([1, 2, 3], D.FaceLabel(1, 1, 0)),
                            2: ([1, 4, 5], D.FaceLabel(1, 1, 0))},
                           [[2, 3, -5, -4]], {1: "a", 2: "b", 3: "b", 4: "b", 5: "b"})


def test_cancelable_pair_detected():
    d = cancelable_pair()
    assert D.validate_diagram(d, {1: "abb"})
    ok, why = D.is_weakly_strictly_reduced(d)
    assert not ok and "faces 1,2" in why
    assert D.is_weakly_strictly_reduced(D.one_face_disc("abb")) == (True, "")


def test_reduce_strips_cancelable_pair():
    d = cancelable_pair()
    res = D.reduce(d)
    assert res.flag == "clean"
    assert not res.diagram.map.faces
    assert H.map_contour_labels(res.diagram) == H.map_contour_labels(d)
    assert D.euler(res.diagram) >= D.euler(d)


def test_reduce_keeps_reduced_diagram():
    d = D.one_face_disc("aab")
    res = D.reduce(d)
    assert res.flag == "clean" and res.moves == []
    assert D.isomorphic(res.diagram, d)


@settings(max_examples=60, deadline=None)
@given(seeds)
def test_reduce_never_lowers_euler(seed):
    rng = random.Random(seed)
    d = H.random_diagram(rng, rng.randint(2, 6), rng.randint(2, 4), 1)
    res = D.reduce(d, depth=2, node_budget=300)
    assert D.euler(res.diagram) >= D.euler(d)
    assert H.map_contour_labels(res.diagram) == H.map_contour_labels(d)


# -- certificates ---------------------------------------------------------------------

def test_torus_certificate():
    c = D.genus_certificates(load("torus.txt"))
    assert c.surface.name == "torus"
    assert (c.cl_bound, c.sql_bound) == (1, 3)
    assert c.in_commutators and not c.trivial


def test_projective_plane_certificate():
    c = D.genus_certificates(load("rp2.txt"))
    assert c.surface.name == "projective-plane"
    assert c.sql_bound == 1 and c.cl_bound is None
    assert c.in_squares and not c.in_commutators


def test_disc_certificate():
    c = D.genus_certificates(load("disc_abAB.txt"))
    assert (c.cl_bound, c.sql_bound, c.trivial) == (0, 1, True)


def test_certificates_need_one_contour():
    d = H.random_diagram(random.Random(1), 4, 4, 2)
    with pytest.raises(S.MapError):
        D.genus_certificates(d)
