import itertools
import random

from hypothesis import given, settings, strategies as st
import pytest

from bbfill.builtins import get_builtin
from bbfill.complex import flag_from_graph
from bbfill.corpus import corpus
from bbfill.lemmas import fill_tree_edge_cycle
from bbfill.presentations import Presentation, raag_presentation
from bbfill.raag import (SHUFFLE_GUARANTEE, NotNullHomotopic, embed_to_vertices, fill_raag,
                         raag_equal, raag_normal_form, shuffle_reduce, tietze_case_transform,
                         transport_data, transport_to_extended)
from bbfill.rewriting import RotationIndex
from bbfill.words import NullExpression, Term, free_reduce, inverse, verify_expression

from .conftest import ctx_for


def all_words(letters, n):
    for k in range(n + 1):
        yield from itertools.product(letters, repeat=k)


def test_normal_form_matches_product_model_on_path():
    # A(u - v - w) = <v> × F(u, w): faithful model (exp_v, reduced projection to u, w)
    cx = get_builtin("PATH")
    u, v, w = (cx.vid[x] for x in "uvw")

    def model(word):
        return (sum(1 if x == v else -1 if x == -v else 0 for x in word),
                free_reduce(x for x in word if abs(x) != v))

    words = list(all_words((u, -u, v, -v, w, -w), 6))
    nf = {}
    for x in words:
        nf.setdefault(raag_normal_form(cx, x).word, set()).add(model(x))
    # normal form determines the element, and distinct elements get distinct forms
    assert all(len(models) == 1 for models in nf.values())
    assert len({next(iter(m)) for m in nf.values()}) == len(nf)


def test_normal_form_matches_abelian_model_on_triangle():
    cx = get_builtin("TRI")
    gens = [cx.vid[x] for x in "uvw"]
    letters = gens + [-g for g in gens]
    for x in all_words(letters, 4):
        ex = tuple(sum(1 if y == g else -1 if y == -g else 0 for y in x) for g in gens)
        assert raag_normal_form(cx, x).trivial == (ex == (0, 0, 0))


def test_normal_form_examples():
    tri = get_builtin("TRI")
    u, v = tri.vid["u"], tri.vid["v"]
    assert raag_normal_form(tri, (u, v, -u, -v)).trivial
    path = get_builtin("PATH")
    u, w = path.vid["u"], path.vid["w"]
    assert not raag_normal_form(path, (u, w, -u, -w)).trivial
    assert raag_equal(path, (u, path.vid["v"]), (path.vid["v"], u))
    assert shuffle_reduce(path, (u, path.vid["v"], -u)) == (path.vid["v"],)


def test_embed_examples(tri):
    cx = tri.complex
    e = cx.alphabet["u>v"]
    assert embed_to_vertices(cx, (e,)) == (cx.vid["u"], -cx.vid["v"])
    ee = embed_to_vertices(cx, (e, cx.bar[e]))
    assert free_reduce(ee) == ()
    with pytest.raises(ValueError):
        embed_to_vertices(cx, (cx.t,))


def test_fill_raag_examples(tri, path_ctx):
    cx = tri.complex
    u, v = cx.vid["u"], cx.vid["v"]
    E = fill_raag(tri, (u, v, -u, -v))
    assert E.area == 1 and verify_expression(E.target, E, tri.P_A)
    pc = path_ctx.complex
    with pytest.raises(NotNullHomotopic):
        fill_raag(path_ctx, (pc.vid["u"], pc.vid["w"], -pc.vid["u"], -pc.vid["w"]))
    assert fill_raag(tri, ()).area == 0


@pytest.mark.parametrize("name", ["TRI", "OCTA", "GRID2", "PATH"])
def test_fill_raag_corpus(name):
    ctx = ctx_for(name)
    for w in corpus(ctx.P_A, 60, seed=5, max_len=64):
        E = fill_raag(ctx, w)
        assert verify_expression(w, E, ctx.P_A)
        assert SHUFFLE_GUARANTEE.holds(len(w), E)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 2), st.integers(0, 8), st.booleans()), max_size=10),
       st.integers(0, 10**6))
def test_fill_raag_property(picks, seed):
    ctx = ctx_for("OCTA")
    rels = sorted(ctx.P_A.relators.values())
    gens = sorted(ctx.P_A.generators)
    rng = random.Random(seed)
    w = []
    for i, n, s in picks:
        r = rels[(i * 7 + n) % len(rels)]
        x = tuple(rng.choice(gens) * rng.choice((1, -1)) for _ in range(n % 4))
        w.extend(x + (r if s else inverse(r)) + inverse(x))
    w = free_reduce(w)
    E = fill_raag(ctx, w)
    assert verify_expression(w, E, ctx.P_A) and SHUFFLE_GUARANTEE.holds(len(w), E)


def test_tietze_case1_and_2(tri):
    cx = tri.complex
    u, v = cx.vid["u"], cx.vid["v"]
    w = cx.vid["w"]
    E = fill_raag(tri, (u, v, -u, -v, u, w, -u, -w))
    assert tietze_case_transform(E, 1) is E
    key = E.terms[0].relator.key
    # replace a relator by a filling of itself with two extra cancelling terms
    r = tri.P_A.relators[key]
    ref = tri.P_A.ref(key)
    fill = NullExpression((Term((), ref), Term((u,), ref), Term((u,), ref.inverted())), r)
    out = tietze_case_transform(E, 2, {key: fill})
    assert verify_expression(E.target, out, tri.P_A)
    assert out.area == E.area + 2 * sum(t.relator.key == key for t in E.terms)
    with pytest.raises(ValueError):
        tietze_case_transform(E, 2)


def _with_stable(cx, q):
    """P_A plus a generator t and defining relator t q⁻¹."""
    P = Presentation("P_A+t", cx, tuple(cx.vid.values()) + (cx.t,))
    for k, w in raag_presentation(cx).relators.items():
        P.add(k, w)
    P.add("def:t", (cx.t, -cx.vid[q]))
    return P


def test_tietze_case3_then_case4(octa):
    cx, q = octa.complex, octa.q
    P = _with_stable(cx, q)
    index = RotationIndex.of(P)
    t, qq = cx.t, cx.vid[q]
    rng = random.Random(2)
    for w in corpus(octa.P_A, 25, seed=9, max_len=30):
        # sprinkle t for q
        big = tuple(t * (1 if x > 0 else -1) if abs(x) == qq and rng.random() < 0.5 else x for x in w)
        E = fill_raag(octa, w)
        E3 = tietze_case_transform(E, 3, {"word": big, "defs": {t: ((qq,), P.ref("def:t"))}, "index": index})
        assert verify_expression(big, E3, P)
        E4 = tietze_case_transform(E3, 4, {"retract": {t: (qq,)}, "drop": ["def:t"], "presentation": octa.P_A})
        assert all(term.relator.key != "def:t" for term in E4.terms)
        assert all(t not in term.conjugator and -t not in term.conjugator for term in E4.terms)
        assert verify_expression(w, E4, octa.P_A)
        assert E4.area <= E3.area


def test_tietze_case4_drops_defining_terms(tri):
    cx, q = tri.complex, tri.q
    P = _with_stable(cx, q)
    t, qq = cx.t, cx.vid[q]
    E = NullExpression((Term((qq,), P.ref("def:t")),),
                       (qq, t, -qq, -qq))
    assert verify_expression(E.target, E, P)
    out = tietze_case_transform(E, 4, {"retract": {t: (qq,)}, "drop": ["def:t"], "presentation": tri.P_A})
    assert out.area == 0 and out.target == ()


@pytest.mark.parametrize("name", ["TRI", "OCTA", "GRID2"])
def test_transport(name):
    ctx = ctx_for(name)
    data = transport_data(ctx)
    for e in ctx.complex.directed_edges:
        assert fill_tree_edge_cycle(ctx, e, 1).area <= ctx.K
    for w in corpus(ctx.P_H, 25, seed=4):
        E = fill_raag(ctx, embed_to_vertices(ctx.complex, w))
        T = transport_to_extended(ctx, w, E)
        assert verify_expression(w, T, ctx.P_A_ext)
        assert T.area <= data.c1 * E.area + data.c2 * len(w)


def test_transport_edge_pair(tri):
    cx = tri.complex
    e = cx.alphabet["u>v"]
    w = (e, cx.bar[e])
    T = transport_to_extended(tri, w, fill_raag(tri, embed_to_vertices(cx, w)))
    assert verify_expression(w, T, tri.P_A_ext)
    assert T.area <= transport_data(tri).c1 + 2 * transport_data(tri).c2
