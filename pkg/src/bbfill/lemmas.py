"""Fillings over P_H of the indexed relators of P_H^∞.

Each expander replays a fixed null-scheme on the literal word with a
:class:`Rewriter`; positions inside the current word are tracked by hand and
every step is checked by the relator lookup, so a wrong position fails loudly.
Results are memoised on the context.
"""

from __future__ import annotations

from .complex import (COLLAPSE1, COLLAPSE2, EXPAND1, EXPAND2, NullHomotopy, edge_cycle,
                      tree_power_path)
from .context import Context
from .presentations import IndexedRelator, w_e_word
from .rewriting import Rewriter
from .words import (NullExpression, Term, TransitionScheme, VerificationError, inverse, power,
                    rotation_expression)


def _sign(n: int) -> int:
    return 1 if n > 0 else -1


def _P(ctx: Context, u: str, v: str, n: int):
    return tree_power_path(ctx.tree, u, v, n)


def _memo(ctx: Context, key, build):
    hit = ctx.memo.get(key)
    if hit is None:
        hit = build()
        ctx.memo[key] = hit
    return hit


# small rewriting moves --------------------------------------------------------

def _bar_swap(ctx: Context, rw: Rewriter, i: int, j: int):
    """Letterwise e⁻¹ ↦ ē and e ↦ ē⁻¹ on word[i:j], one e ē relator per letter."""
    bar = ctx.complex.bar
    for p in range(i, j):
        x = rw.word[p]
        rw.replace(p, p + 1, (-bar[x],) if x > 0 else (bar[-x],))


def _collapse_nest(rw: Rewriter, i: int, m: int):
    """Delete x_1…x_m x̄_m…x̄_1 starting at i, innermost pair first."""
    for k in range(m, 0, -1):
        rw.replace(i + k - 1, i + k + 1, ())


def _insert_nest(ctx: Context, rw: Rewriter, i: int, x: int, m: int):
    xb = ctx.complex.bar[x] if x > 0 else -ctx.complex.bar[-x]
    for k in range(m):
        rw.replace(i + k, i + k, (x, xb))


def _swap(rw: Rewriter, i: int, mid: int):
    """x y ⇝ mid ⇝ y x: two triangle relators."""
    x, y = rw.word[i], rw.word[i + 1]
    rw.replace(i, i + 2, (mid,))
    rw.replace(i, i + 1, (y, x))


def _sort_block(rw: Rewriter, start: int, length: int, first: int, mid: int):
    """Bubble every ``first`` letter of word[start:start+length] to the front."""
    while True:
        for p in range(start, start + length - 1):
            if rw.word[p + 1] == first and rw.word[p] != first:
                _swap(rw, p, mid)
                break
        else:
            return


# schemes --------------------------------------------------------------------

def reverse_path_scheme(ctx: Context, v: str, n: int) -> TransitionScheme:
    """p_n(q, v)⁻¹ ⇝ p_n(v, q) at cost |n|·Dist(q, v)."""
    u = inverse(_P(ctx, ctx.q, v, n))
    target = _P(ctx, v, ctx.q, n)
    rw = Rewriter(u + inverse(target), ctx.index_H)
    _bar_swap(ctx, rw, 0, len(u))
    rw.set_word(())
    return TransitionScheme([u, target], [rw.expression()])


def expand_triangle_power(ctx: Context, e: int, f: int, g: int, n: int) -> NullExpression:
    """e^n f^n g^n for a directed triangle cycle e·f·g; area ≤ 3n²."""
    if (e, f, g) not in ctx.complex._tri_set:
        raise ValueError("not a triangle cycle")

    def build():
        m, s = abs(n), _sign(n)
        word = (s * e,) * m + (s * f,) * m + (s * g,) * m
        rw = Rewriter(word, ctx.index_H)
        for j in range(m):
            rw.replace(2 * m + 2 * j, 2 * m + 2 * j + 1, (-s * f, -s * e))
        _sort_block(rw, 2 * m, 2 * m, -s * f, s * g)
        rw.set_word(())
        return rw.expression()

    return _memo(ctx, ("tripow", e, f, g, n), build)


def expand_edge_inverse(ctx: Context, e: int, n: int) -> NullExpression:
    """Φ_n(e ē); area ≤ (2L+1)|n| + 1."""

    def build():
        phi = ctx.phi
        word = phi((e, ctx.complex.bar[e]), n)
        A = len(_P(ctx, ctx.q, ctx.complex.iota(e), n))
        B = len(_P(ctx, ctx.complex.tau(e), ctx.q, n))
        m1 = abs(n + 1)
        rw = Rewriter(word, ctx.index_H)
        _collapse_nest(rw, A + m1, B)
        _collapse_nest(rw, A, m1)
        _collapse_nest(rw, 0, A)
        return rw.expression()

    return _memo(ctx, ("edge", e, n), build)


def expand_phi_triangle(ctx: Context, e: int, f: int, g: int, n: int) -> NullExpression:
    """Φ_n(efg); area ≤ 3n² + (3L+6)|n| + 3."""

    def build():
        cx, q = ctx.complex, ctx.q
        word = ctx.phi((e, f, g), n)
        A = len(_P(ctx, q, cx.iota(e), n))
        Be = len(_P(ctx, cx.tau(e), q, n))
        Bf = len(_P(ctx, cx.tau(f), q, n))
        m1 = abs(n + 1)
        rw = Rewriter(word, ctx.index_H)
        _collapse_nest(rw, A + m1, Be)
        _collapse_nest(rw, A + 2 * m1, Bf)
        rw.splice(A, A + 3 * m1, (), expand_triangle_power(ctx, e, f, g, n + 1))
        _collapse_nest(rw, 0, A)
        return rw.expression()

    return _memo(ctx, ("tri", e, f, g, n), build)


def fill_cycle_power(ctx: Context, cycle, n: int, nh: NullHomotopy) -> NullExpression:
    """W_n(C) = e_1^n … e_l^n by replaying a combinatorial null-homotopy of C;
    area ≤ 3m|n|²."""
    cycle = tuple(cycle)
    if nh.initial != cycle:
        raise VerificationError("homotopy is for a different cycle")
    m, s = abs(n), _sign(n)
    word = tuple(x for e in cycle for x in (s * e,) * m)
    rw = Rewriter(word, ctx.index_H)
    if m == 0:
        return rw.expression()
    for mv in nh.moves:
        i = mv.position * m
        if mv.kind == EXPAND1:
            _insert_nest(ctx, rw, i, s * mv.edges[0], m)
        elif mv.kind == COLLAPSE1:
            _collapse_nest(rw, i, m)
        elif mv.kind == EXPAND2:
            e, f, g = mv.edges
            block = (s * e,) * m + (s * f,) * m + (s * g,) * m
            rw.splice(i, i, block, expand_triangle_power(ctx, e, f, g, n).inverse())
        elif mv.kind == COLLAPSE2:
            rw.splice(i, i + 3 * m, (), expand_triangle_power(ctx, *mv.edges, n))
        else:
            raise VerificationError(f"unknown move {mv.kind}")
    return rw.expression()


def fill_tree_edge_cycle(ctx: Context, e: int, n: int) -> NullExpression:
    """p_n(q, ιe) e^n p_n(τe, q); area ≤ K n²."""
    nh = ctx.cache.homotopies.get(e)
    if nh is None:
        raise KeyError(f"no cached homotopy for edge {e}")
    return _memo(ctx, ("cyc", e, n), lambda: fill_cycle_power(ctx, edge_cycle(ctx.tree, e), n, nh))


def expand_phi_inverse_triangle(ctx: Context, e: int, f: int, g: int, n: int) -> NullExpression:
    """Φ_n(e⁻¹f⁻¹g⁻¹); area ≤ (3K+4)n² + (6L+6)|n| + 5."""

    def build():
        cx, q = ctx.complex, ctx.q
        iota, tau = cx.iota, cx.tau
        word = ctx.phi((-e, -f, -g), n)
        m1, an = abs(n + 1), abs(n)
        rw = Rewriter(word, ctx.index_H)
        # reverse the six tree paths
        o = 0
        for x in (e, f, g):
            l1 = len(_P(ctx, tau(x), q, n))
            l2 = len(_P(ctx, q, iota(x), n))
            _bar_swap(ctx, rw, o, o + l1)
            _bar_swap(ctx, rw, o + l1 + m1, o + l1 + m1 + l2)
            o += l1 + m1 + l2
        Pf = _P(ctx, q, iota(f), n)
        rw.set_word(tuple(rw.word) + Pf + inverse(Pf))
        a = len(Pf)
        # three tree-edge cycles collapse the path pairs to powers
        pos = a + m1
        for x in (g, e, f):
            blk = len(_P(ctx, tau(x), q, n)) + len(_P(ctx, q, iota(x), n))
            cyc = rotation_expression(fill_tree_edge_cycle(ctx, x, n), len(_P(ctx, q, iota(x), n)) + an)
            rw.splice(pos, pos + blk, power((x,), -n), cyc)
            pos += an + m1
        # g^{-n} ⇝ (ef)^n and g^{-n-1} ⇝ (ef)^{n+1}
        p1 = a + m1
        for j in range(an):
            y = rw.word[p1 + 2 * j]
            rw.replace(p1 + 2 * j, p1 + 2 * j + 1, (e, f) if y == -g else (-f, -e))
        p2 = p1 + 2 * an + m1 + an
        for j in range(m1):
            y = rw.word[p2 + 2 * j]
            rw.replace(p2 + 2 * j, p2 + 2 * j + 1, (e, f) if y == -g else (-f, -e))
        # (ef)^k ⇝ e^k f^k
        if an:
            _sort_block(rw, p1, 2 * an, _sign(n) * e, -_sign(n) * g)
        if m1:
            _sort_block(rw, p2, 2 * m1, _sign(n + 1) * e, -_sign(n + 1) * g)
        rw.set_word(Pf + (-e, -f, e, f) + inverse(Pf))
        rw.replace(a, a + 2, (g,))
        rw.replace(a + 1, a + 3, (-g,))
        rw.set_word(())
        return rw.expression()

    return _memo(ctx, ("atri", e, f, g, n), build)


def expand_s_relator(ctx: Context, e: int, n: int) -> NullExpression:
    """Φ_{n+1}(e) Φ_n(w_e)⁻¹; area ≤ 2Kn² + (3L²+2L+2K)|n| + L + K."""

    def build():
        cx, q, phi = ctx.complex, ctx.q, ctx.phi
        iota, tau = cx.iota, cx.tau
        ie = iota(e)
        path1 = ctx.tree.path(q, ie)
        path2 = ctx.tree.path(ie, q)
        m1 = abs(n + 1)
        pieces = [(phi((e,), n + 1), False)]

        def inv_phi_path(path):
            for x in reversed(path):
                pieces.append((inverse(_P(ctx, tau(x), q, n)), True))
                pieces.append((power((x,), -(n + 1)), False))
                pieces.append((inverse(_P(ctx, q, iota(x), n)), False))

        inv_phi_path(path2)
        pieces.append((inverse(phi((e,), n)), False))
        inv_phi_path(path1)
        word = tuple(x for seg, _ in pieces for x in seg)
        if word != phi((e,), n + 1) + inverse(phi(w_e_word(ctx.tree, e), n)):
            raise VerificationError("s-relator layout mismatch")
        rw = Rewriter(word, ctx.index_H)
        o = 0
        for seg, swap in pieces:
            if swap:
                _bar_swap(ctx, rw, o, o + len(seg))
            o += len(seg)
        Pq1 = _P(ctx, q, ie, n + 1)
        back1 = _P(ctx, ie, q, n + 1)
        Pqn = _P(ctx, q, ie, n)
        Ptn = _P(ctx, tau(e), q, n)
        Pt1 = _P(ctx, tau(e), q, n + 1)
        rw.set_word(Pq1 + power((e,), n + 2) + Pt1 + inverse(back1) + inverse(Pqn)
                    + inverse(Ptn) + power((e,), -(n + 1)) + inverse(Pq1))
        F = len(Pq1) + abs(n + 2) + len(Pt1)
        _bar_swap(ctx, rw, F, F + len(back1))
        a1 = len(Pq1) + abs(n + 2)
        cyc1 = rotation_expression(fill_tree_edge_cycle(ctx, e, n + 1), len(Pq1) + m1)
        rw.splice(a1, a1 + len(Pt1) + len(Pq1), power((e,), -(n + 1)), cyc1)
        a2 = a1 + m1
        cyc0 = rotation_expression(fill_tree_edge_cycle(ctx, e, n), len(Pqn)).inverse()
        rw.splice(a2, a2 + len(Pqn) + len(Ptn), power((e,), n), cyc0)
        rw.set_word(())
        return rw.expression()

    return _memo(ctx, ("s", e, n), build)


def expand_indexed_relator(ctx: Context, r: IndexedRelator) -> NullExpression:
    key = r.key(ctx.complex)
    if r.level == 0 and key in ctx.P_H.relators:
        # level-0 edge/tri/atri relators are P_H relators themselves
        return NullExpression((Term((), ctx.P_H.ref(key)),), r.word)
    if r.kind == "edge":
        out = expand_edge_inverse(ctx, r.params[0], r.level)
    elif r.kind == "tri":
        out = expand_phi_triangle(ctx, *r.params, r.level)
    elif r.kind == "atri":
        out = expand_phi_inverse_triangle(ctx, *r.params, r.level)
    elif r.kind == "s":
        out = expand_s_relator(ctx, r.params[0], r.level)
    else:
        raise ValueError(f"unknown relator kind {r.kind!r}")
    if out.target != r.word:
        raise VerificationError("expansion target differs from the relator word")
    return out


# closed-form bounds -------------------------------------------------------------

def bound_edge_inverse(L, K, n):
    return (2 * L + 1) * abs(n) + 1


def bound_triangle_power(L, K, n):
    return 3 * n * n


def bound_phi_triangle(L, K, n):
    return 3 * n * n + (3 * L + 6) * abs(n) + 3


def bound_cycle_power(m, n):
    return 3 * m * n * n


def bound_tree_edge_cycle(L, K, n):
    return K * n * n


def bound_phi_inverse_triangle(L, K, n):
    return (3 * K + 4) * n * n + (6 * L + 6) * abs(n) + 5


def bound_s_relator(L, K, n):
    return 2 * K * n * n + (3 * L * L + 2 * L + 2 * K) * abs(n) + L + K
