import random

from hypothesis import given, strategies as st
import pytest

from bbfill.words import (Alphabet, AlphabetError, NullExpression, RelatorRef, Term, TransitionScheme,
                          VerificationError, evaluate_expression, exponent_sum, expression_metrics,
                          free_reduce, freely_equal, inverse, is_freely_reduced, rotation_expression,
                          splice_transitions, verify_expression)

letters = st.integers(1, 5).flatmap(lambda g: st.sampled_from((g, -g)))
words = st.lists(letters, max_size=30).map(tuple)


@pytest.fixture
def ab():
    return Alphabet(["u>v", "v>u", "v>w", "w>u", "u>w", "@t", "a", "b"])


def test_parse_format_roundtrip(ab):
    w = ab.parse("u>v v>u^-1 @t")
    assert ab.format(w) == "u>v v>u^-1 @t"
    assert ab.parse("") == ()
    with pytest.raises(AlphabetError):
        ab.parse("nope")


def test_free_reduce_examples(ab):
    e, f, ebar = ab["u>v"], ab["v>w"], ab["v>u"]
    assert free_reduce((e, -e, f)) == (f,)
    assert free_reduce((e, ebar)) == (e, ebar)


@given(words)
def test_free_reduce_idempotent_and_shorter(w):
    r = free_reduce(w)
    assert free_reduce(r) == r
    assert len(r) <= len(w)
    assert is_freely_reduced(r)


def test_self_inverse_concatenation():
    rng = random.Random(1)
    for _ in range(100):
        w = tuple(rng.choice((1, -1)) * rng.randint(1, 6) for _ in range(rng.randint(0, 64)))
        assert free_reduce(w + inverse(w)) == ()


@given(words, words, words)
def test_freely_equal_is_equivalence(u, v, w):
    assert freely_equal(u, u)
    assert freely_equal(u, v) == freely_equal(v, u)
    if freely_equal(u, v) and freely_equal(v, w):
        assert freely_equal(u, w)
    # a freely equal triple built on purpose
    x = u + v + inverse(v)
    assert freely_equal(x, u) and freely_equal(u, free_reduce(x))


def test_freely_equal_examples(ab):
    e, f = ab["u>v"], ab["v>w"]
    r = (e, f, ab["w>u"])
    x = (ab["a"], ab["b"])
    assert freely_equal((), ())
    assert not freely_equal((e, f), (f, e))
    assert freely_equal(x + r + inverse(x) + x + inverse(r) + inverse(x), ())
    with pytest.raises(AlphabetError):
        freely_equal((99,), (), ab)


@given(words, words, st.integers(1, 5))
def test_exponent_sum_additive(u, v, g):
    assert exponent_sum(u + v, g) == exponent_sum(u, g) + exponent_sum(v, g)
    assert exponent_sum(inverse(u), g) == -exponent_sum(u, g)


def test_exponent_sum_examples(ab):
    t, a, b = ab["@t"], ab["a"], ab["b"]
    assert exponent_sum((t, a, -t, b), t) == 0
    assert exponent_sum((t, t, a, -t), t) == 1


def efg_expr(ab, conj=()):
    r = (ab["u>v"], ab["v>w"], ab["w>u"])
    return r, NullExpression((Term(tuple(conj), RelatorRef("tri", r)),), tuple(conj) + r + inverse(tuple(conj)))


def test_evaluate_and_verify(ab):
    assert evaluate_expression(NullExpression()) == ()
    r, E = efg_expr(ab)
    assert evaluate_expression(E) == r
    assert verify_expression(r, E)
    assert not verify_expression((ab["u>v"], ab["v>u"]), E)


def test_metrics(ab):
    assert expression_metrics(NullExpression()) == (0, 0, 0)
    _, E = efg_expr(ab, conj=(ab["a"],) * 5)
    assert expression_metrics(E) == (1, 5, 0)


@given(st.lists(st.tuples(words, st.sampled_from((1, -1))), max_size=6), st.integers(0, 40))
def test_rotation_and_inversion_keep_area(parts, k):
    r = (1, 2, 3)
    terms = tuple(Term(x, RelatorRef("r", r, s)) for x, s in parts)
    E = NullExpression(terms, ())
    w = evaluate_expression(E)
    E = E.with_target(w)
    assert verify_expression(w, E)
    R = rotation_expression(E, k)
    assert R.area == E.area and verify_expression(R.target, R)
    I = E.inverse()
    assert I.area == E.area and verify_expression(inverse(w), I)


def test_splice_one_stage(ab):
    r, E = efg_expr(ab)
    S = TransitionScheme([r, ()], [E])
    out = splice_transitions(S)
    assert out.terms == E.terms and out.area == S.cost


def test_splice_errors(ab):
    r, E = efg_expr(ab)
    with pytest.raises(ValueError):
        splice_transitions(TransitionScheme([r, r], [E]))
    with pytest.raises(VerificationError):
        splice_transitions(TransitionScheme([(ab["u>v"], ab["v>u"]), ()], [E]))


def test_splice_random_oracle_stages(tri):
    from bbfill.oracle import brute_force_area
    rng = random.Random(3)
    rels = sorted(tri.P_H.relators.values())
    for _ in range(5):
        pieces = [rng.choice(rels) for _ in range(4)]
        stages = [sum(pieces[i:], ()) for i in range(5)]
        fills = []
        for i in range(4):
            res = brute_force_area(tri.P_H, stages[i] + inverse(stages[i + 1]), max_area=2)
            assert res.filled
            fills.append(res.expression)
        out = splice_transitions(TransitionScheme(stages, fills))
        assert out.area == sum(f.area for f in fills)
        assert verify_expression(stages[0], out, tri.P_H)


def test_cancel_inverse_pairs(ab):
    from bbfill.words import cancel_inverse_pairs
    r, E = efg_expr(ab)
    ref = E.terms[0].relator
    x = (ab["a"],)
    terms = (Term(x, ref), Term((), ref), Term((), ref.inverted()), Term(x, ref.inverted())) + E.terms
    F = cancel_inverse_pairs(NullExpression(terms, r))
    assert F.area == 1 and verify_expression(r, F)
