import pytest

from bbfill.oracle import (EXACT, UPPER, CappedBall, brute_force_area, check_result,
                           decide_area_at_most_one, enumerate_dehn_sample, null_homotopic_words)
from bbfill.raag import embed_to_vertices, raag_normal_form


def test_ground_truth(tri):
    cx = tri.complex
    e = cx.alphabet["u>v"]
    e_, f, g = cx.triangle_cycles[0]
    for w, area in [((e, cx.bar[e]), 1), ((e_, f, g), 1), ((e_, f, -e_, -f), 2)]:
        res = brute_force_area(tri.P_H, w)
        assert res.area == area and res.exactness == EXACT
        assert check_result(tri.P_H, res)


def test_decide_area_at_most_one(tri):
    e, f, g = tri.complex.triangle_cycles[0]
    assert decide_area_at_most_one(tri.P_H, (e, f, g))
    assert decide_area_at_most_one(tri.P_H, (g, e, f))
    assert not decide_area_at_most_one(tri.P_H, (e, f, -e, -f))
    assert decide_area_at_most_one(tri.P_H, ())
    assert brute_force_area(tri.P_H, ()).area == 0


def test_caps(tri):
    e, f, g = tri.complex.triangle_cycles[0]
    w = (e, f, -e, -f) * 2
    areas = []
    for max_len in (8, 9, 10):
        res = brute_force_area(tri.P_H, w, max_len=max_len)
        assert check_result(tri.P_H, res)
        areas.append(res.area)
    assert all(b is not None and (a is None or b <= a) for a, b in zip(areas, areas[1:]))
    res = brute_force_area(tri.P_H, w, max_area=1)
    assert not res.filled and res.exactness == UPPER


def test_capped_ball_agrees_with_bfs(tri):
    ball = CappedBall(tri.P_H, 4)
    assert ball.complete
    for w in null_homotopic_words(tri.complex, sorted(tri.P_H.generators), 4)[:60]:
        a = ball.area(w)
        b = brute_force_area(tri.P_H, w, max_len=4)
        assert a.area == b.area
        assert check_result(tri.P_H, a)


def test_null_words_are_null(tri):
    cx = tri.complex
    words = null_homotopic_words(cx, sorted(tri.P_H.generators), 4)
    assert () in words
    for w in words:
        assert raag_normal_form(cx, embed_to_vertices(cx, w)).trivial
    assert all(len(w) != 1 for w in words)


def test_enumerate_small(tri):
    s0 = enumerate_dehn_sample(tri, 1)
    assert s0.delta(1) == 0
    s2 = enumerate_dehn_sample(tri, 2)
    assert s2.delta(2) == 1 and s2.complete
    s4 = enumerate_dehn_sample(tri, 4)
    assert [s4.delta(m) for m in range(5)] == sorted(s4.delta(m) for m in range(5))
    with pytest.raises(ValueError):
        enumerate_dehn_sample(tri, 9)
