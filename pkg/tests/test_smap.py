import itertools
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

import helpers as H
from vankampen import diagram as D
from vankampen.presgen import Presentation
from vankampen import smap as SM
from vankampen import words as W


@pytest.fixture(scope="module")
def toy():
    return SM.toy_presentation()


@pytest.fixture(scope="module")
def corpus(toy):
    return [d for _, d in SM.glued_discs(toy[0], 2, 1)]


def test_toy_relators(toy):
    pres, w = toy
    assert pres.word(1) == "babABaabAABabAbA" and pres.word(2) == "abaBAbbaBBAbaBa"
    for n in pres.indices():
        rel = pres.relators[n]
        assert W.is_cyclically_reduced(rel.word)
        assert not W.is_proper_power(rel.word)
        for seg in rel.u_segments:
            piece = rel.word[seg.start:seg.start + seg.length]
            u = SM.TOY_U[n][seg.block - 1]
            assert piece == (u if seg.sign > 0 else W.inverse(u))
    assert w.mu == {1: 0, 2: 0}


def test_one_face_smap(toy):
    pres, w = toy
    sm = SM.derive_smap(D.one_face_disc(pres.word(1), 1), pres)
    assert sm.blocks(1) == [(0, 2), (3, 2), (5, 2), (8, 2), (10, 2), (13, 2)]
    # three cores and the tail are the unselected runs
    assert SM.kappa(sm, 1) == (6, 4)
    assert SM.unselected_count(sm, 1) == 4
    assert sm.arcs == [] and sm.exceptional == []
    assert [c.status for c in SM.check_D(sm, None, w)] == ["holds"] * 3
    assert SM.check_Y(sm).holds
    assert SM.isoperimetric_check(sm, w).holds
    assert SM.check_Z2(sm, [1]).holds
    assert SM.estimate_selected(sm).check.holds


def test_d1_fails_without_slack(toy):
    pres, _ = toy
    sm = SM.derive_smap(D.one_face_disc(pres.word(1), 1), pres)
    zero = SM.Weights({1: Fraction(0)}, {1: Fraction(0)}, {1: Fraction(0)})
    d1 = SM.check_D(sm, None, zero)[0]
    assert d1.status == "violated" and "unselected=4" in d1.witness


def test_weights_from_params(family4):
    w = SM.Weights.from_params(family4.params)
    assert w.lam[1] == w.mu[1] == Fraction(1, 368)
    assert w.nu[2] == Fraction(1, 10)


def test_closure_needs_square_concatenation(toy):
    pres, _ = toy
    with pytest.raises(SM.SMapError):
        SM.derive_smap(D.one_face_disc(pres.word(1), 1), pres, with_closure=True)


def test_foreign_relator_rejected(toy):
    pres, _ = toy
    with pytest.raises(SM.SMapError):
        SM.derive_smap(D.one_face_disc("ab", 7), pres)


# -- Z(2) against the definition ---------------------------------------------------------

def compare_z2(sm, limit=20):
    seen = 0
    faces = sm.inner_faces()
    for r in range(1, len(faces) + 1):
        for sub in itertools.combinations(faces, r):
            c = SM.simple_disc_contour(sm, set(sub))
            if c is None or len(c) > limit:
                continue
            assert SM.check_Z2(sm, sub).status == SM.check_Z2_brute(sm, sub).status, sub
            seen += 1
    return seen


@settings(max_examples=150, deadline=None)
@given(st.integers(0, 2**32))
def test_z2_matches_brute_force_on_random_smaps(seed):
    rng = random.Random(seed)
    compare_z2(H.random_smap(rng, rng.randint(1, 20), rng.randint(0, 5)))


def test_z2_matches_brute_force_on_toy_corpus(toy, corpus):
    pres, _ = toy
    assert sum(compare_z2(SM.derive_smap(d, pres)) for d in corpus) > 0


def test_z2_on_closed_disc():
    # a square cut by edge 5 into two triangles, closed by an outer face along 1,2,3,4
    m = D.S.build_map({1: [1, 2, 5], 2: [-5, 3, 4]}, [[1, 2, 3, 4]])
    closed, outer = D.S.closure(m)
    d = D.Diagram(closed, {e: "a" for e in closed.edges},
                  {f: D.FaceLabel(1, 1, 0) for f in closed.faces}, {})
    for face2, expected in (([None] * 3, "holds"), ([(0, 1, 1, q) for q in range(3)], "violated")):
        tags = {1: [None] * 3, 2: face2}
        sm = SM.SMap(closed, d, {1: 1, 2: 1, **{f: SM.OUTER for f in outer}}, tags, set(outer))
        sm.arcs = SM._selected_arcs(sm)
        # face 1 is bounded by one outer path (edges 1, 2) and edge 5 of face 2
        assert SM.check_Z2(sm, [1]).status == expected
        assert SM.check_Z2_brute(sm, [1]).status == expected


def test_non_disc_submap_is_a_failed_hypothesis(toy):
    pres, _ = toy
    sm = SM.derive_smap(D.one_face_disc(pres.word(2), 2), pres)
    assert SM.check_Z2(sm, []).status == "hypothesis-failed"


# -- Y, D and the estimates ----------------------------------------------------------------

def test_sabotaged_exceptional_arcs_break_y(toy, corpus):
    pres, _ = toy
    broken = 0
    for d in corpus:
        sm = SM.derive_smap(d, pres)
        if not sm.arcs:
            continue
        forced = SM.with_exceptional(sm, range(len(sm.arcs)))
        y = SM.check_Y(forced)
        if y.status == "violated":
            assert "components=" in y.witness
            assert SM.estimate_exceptional(forced).check.status == "hypothesis-failed"
            broken += 1
    assert broken > 0


def test_with_exceptional_is_a_copy(toy, corpus):
    pres, _ = toy
    sms = (SM.derive_smap(d, pres) for d in corpus)
    sm = next(x for x in sms if x.arcs)
    before = [a.exceptional for a in sm.arcs]
    forced = SM.with_exceptional(sm, [0])
    assert [a.exceptional for a in forced.arcs] == [True] + [False] * (len(sm.arcs) - 1)
    assert [a.exceptional for a in sm.arcs] == before


def test_estimates_hold_on_small_corpus(toy, corpus):
    pres, w = toy
    res = SM.sweep(pres, w, max_faces=2, min_arc=1)
    assert res.diagrams == len(corpus)
    assert res.convenient > 0
    assert res.violations == []
    for d in corpus:
        sm = SM.derive_smap(d, pres)
        assert SM.estimate_selected(sm).check.status != "violated"


def test_selected_estimate_certificate(toy, corpus):
    pres, _ = toy
    for d in corpus:
        sm = SM.derive_smap(d, pres)
        est = SM.estimate_selected(sm)
        if est.certified and est.arcs:
            # every arc goes to one of its own faces or to the overflow set
            for t, a in enumerate(est.arcs):
                assert (t in est.E) != (t in est.f)
                if t in est.f:
                    assert est.f[t] in a.faces
            return
    pytest.fail("no diagram with internal selected arcs")


# -- convenient diagrams --------------------------------------------------------------------

def partial_arc_diagram(pres):
    # a second copy of relator 1 glued along one letter of the first u-block
    d = D.one_face_disc(pres.word(1), 1)
    return D.attach_face(d, 0, 1, 1, pres.word(1), 1, 12)


def test_make_convenient_extends_partial_arc(toy):
    pres, _ = toy
    d = partial_arc_diagram(pres)
    ok, why = SM.is_convenient(d, pres)
    assert not ok and "covers part of u-word 1" in why
    e = SM.make_convenient(d, pres)
    assert SM.is_convenient(e, pres) == (True, "")
    assert D.is_weakly_strictly_reduced(e)[0]
    assert H.map_contour_labels(e) == H.map_contour_labels(d)
    assert [len(a) for a in SM.derive_smap(e, pres).exceptional] == [2]


def test_make_convenient_leaves_convenient_alone(toy, corpus):
    pres, _ = toy
    d = corpus[-1]
    assert SM.is_convenient(d, pres)[0]
    assert D.isomorphic(SM.make_convenient(d, pres), d)


def test_make_convenient_rejects_foreign():
    bare = Presentation.from_words(["abAB"])
    with pytest.raises(SM.SMapError):
        SM.make_convenient(D.one_face_disc("abAB", 1), bare)
