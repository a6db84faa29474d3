import itertools
import random

import pytest

from bbfill.builtins import get_builtin
from bbfill.complex import build_tree_data
from bbfill.presentations import (ConstantsRecord, DanglingRelator, PhiSystem, bound_polynomials,
                                  dicks_leary, extended_presentation, make_indexed_relator, phi_map,
                                  raag_presentation, w_e_word)
from bbfill.raag import embed_to_vertices, raag_normal_form
from bbfill.words import RelatorRef, inverse


def test_relator_counts():
    tri = get_builtin("TRI")
    P = dicks_leary(tri)
    assert len(P.generators) == 6 and len(P) == 18
    assert len(extended_presentation(build_tree_data(tri, "u"))) == 24
    assert len(raag_presentation(tri)) == 3
    octa = get_builtin("OCTA")
    Po = dicks_leary(octa)
    assert len(Po.generators) == 24 and len(Po) == 24 + 8 * 12
    assert len(raag_presentation(octa)) == 12
    path = dicks_leary(get_builtin("PATH"))
    assert all(k.startswith("edge:") for k in path.relators)
    ext = extended_presentation(build_tree_data(get_builtin("PATH")))
    assert sum(k.startswith("ext:") for k in ext.relators) == 4


def test_w_e(tri):
    cx, tree = tri.complex, tri.tree
    a = cx.alphabet
    assert w_e_word(tree, a["v>w"]) == a.parse("u>v v>w v>u")
    assert w_e_word(tree, a["u>w"]) == a.parse("u>w")


@pytest.mark.parametrize("name", ["TRI", "OCTA", "GRID2", "PATH"])
def test_extended_relators_embed_trivially(name):
    from .conftest import ctx_for
    ctx = ctx_for(name)
    for w in ctx.P_A_ext.relators.values():
        assert raag_normal_form(ctx.complex, embed_to_vertices(ctx.complex, w, ctx.q)).trivial


def test_phi_basics(tri):
    cx, phi = tri.complex, tri.phi
    rng = random.Random(0)
    edges = list(cx.directed_edges)
    for _ in range(50):
        u = tuple(rng.choice(edges) * rng.choice((1, -1)) for _ in range(rng.randint(0, 6)))
        v = tuple(rng.choice(edges) * rng.choice((1, -1)) for _ in range(rng.randint(0, 6)))
        n = rng.randint(-4, 4)
        assert phi_map(phi, u + v, n) == phi_map(phi, u, n) + phi_map(phi, v, n)
        assert phi_map(phi, inverse(u), n) == inverse(phi_map(phi, u, n))
        assert phi_map(phi, u, 0) == u
    e = cx.alphabet["v>w"]
    # Φ_{-1}(e) = p_{-1}(q, ιe) p_{-1}(τe, q): no e letters
    img = phi((e,), -1)
    assert e not in img and -e not in img
    assert img == tuple(-x for x in tri.tree.path("u", "v")) + tuple(-x for x in tri.tree.path("w", "u"))
    with pytest.raises(ValueError):
        phi((cx.t,), 1)


def test_indexed_relators(tri):
    cx, phi = tri.complex, tri.phi
    e, f, g = cx.triangle_cycles[0]
    r = make_indexed_relator(phi, "tri", (e, f, g), 0)
    assert r.word == (e, f, g) and r.index == 0
    s = make_indexed_relator(phi, "s", (e,), 0)
    assert s.word == phi((e,), 1) + inverse(w_e_word(tri.tree, e))
    for kind, params in (("edge", (e,)), ("tri", (e, f, g)), ("atri", (e, f, g)), ("s", (e,))):
        for n in range(-4, 5):
            a = make_indexed_relator(phi, kind, params, n)
            b = make_indexed_relator(PhiSystem(build_tree_data(cx, tri.q)), kind, params, n)
            assert a == b and a.index == abs(n)
            assert raag_normal_form(cx, embed_to_vertices(cx, a.word)).trivial
            ref = a.ref(cx)
            assert tri.P_H_inf.resolve(ref) == a.word
    with pytest.raises(ValueError):
        make_indexed_relator(phi, "tri", (e, e, e), 0)
    with pytest.raises(DanglingRelator):
        tri.P_H_inf.resolve(RelatorRef("tri:bogus:1", (e,), 1, 1))


def test_collisions_are_recorded(tri):
    from bbfill.presentations import IndexedPresentation
    cx = tri.complex
    e = cx.alphabet["u>v"]
    P = IndexedPresentation(tri.phi)
    # with q = u, Φ_{-1}(w_e) = ē⁻¹e⁻¹, so s:e:-1 is literally e ē
    a = P.relator("edge", (e,), 0)
    b = P.relator("s", (e,), -1)
    assert a.word == b.word
    assert P.collisions == [(("edge", (e,), 0), ("s", (e,), -1))]


def test_rarea_tri(tri):
    assert (tri.L, tri.K) == (2, 3)
    assert tri.constants.rarea_coefficients == (13, 36, 10)
    rarea, dehn = bound_polynomials(tri.constants, alpha=lambda n: n * n, pi=lambda n: n)
    assert rarea(1) == 59 and dehn(2) == 4 * rarea(2)
    assert ConstantsRecord(1, 0).rarea_bound(0) == 6
