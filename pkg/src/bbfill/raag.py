"""Word problem and quadratic filling in the RAAG A, and transport of vertex
fillings to the presentation P_A′ on directed edges plus the stable letter."""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Sequence

from .complex import FlagComplex, edge_cycle, find_null_homotopy, default_max_len
from .context import Context, scaled, DEFAULT_MAX_STATES
from .lemmas import fill_cycle_power, fill_tree_edge_cycle
from .rewriting import Rewriter
from .words import (NullExpression, RelatorRef, Term, VerificationError, Word, free_reduce,
                    inverse, rotation_expression, verify_expression)


class NotNullHomotopic(ValueError):
    pass


@dataclass(frozen=True)
class AreaRadiusGuarantee:
    area_bound: Callable[[int], int]
    radius_bound: Callable[[int], int]
    provenance: str

    def holds(self, n: int, expr: NullExpression) -> bool:
        return expr.area <= self.area_bound(n) and expr.radius <= self.radius_bound(n)


SHUFFLE_GUARANTEE = AreaRadiusGuarantee(lambda n: (n * n + 1) // 2, lambda n: n, "shuffle filler over P_A")


def embed_to_vertices(cx: FlagComplex, w: Sequence[int], q: str | None = None) -> Word:
    """e ↦ ιe (τe)⁻¹ and t ↦ q; vertex letters pass through."""
    out = []
    vid = cx.vid
    for x in w:
        g = abs(x)
        if g in cx.ends:
            u, v = cx.ends[g]
            img = (vid[u], -vid[v])
        elif g == cx.t:
            if q is None:
                raise ValueError("embedding t needs a base vertex")
            img = (vid[q],)
        else:
            img = (g,)
        out.extend(img if x > 0 else inverse(img))
    return tuple(out)


class Commutation:
    """Adjacency of vertex generators: distinct adjacent vertices commute."""

    def __init__(self, cx: FlagComplex):
        self.pairs = set()
        for u, v in cx.edges:
            a, b = cx.vid[u], cx.vid[v]
            self.pairs.add((a, b))
            self.pairs.add((b, a))

    def __call__(self, x: int, y: int) -> bool:
        return (abs(x), abs(y)) in self.pairs


def _commutation(cx) -> Commutation:
    c = getattr(cx, "_commutation", None)
    if c is None:
        c = cx._commutation = Commutation(cx)
    return c


def shuffle_reduce(cx: FlagComplex, w: Sequence[int]) -> Word:
    """A reduced representative: an incoming letter cancels the nearest inverse
    reachable across letters it commutes with."""
    comm = _commutation(cx)
    out: list[int] = []
    for x in w:
        j = len(out) - 1
        while j >= 0:
            y = out[j]
            if y == -x:
                del out[j]
                break
            if not comm(x, y):
                j = -1
                break
            j -= 1
        else:
            j = -1
        if j < 0:
            out.append(x)
    return tuple(out)


@dataclass(frozen=True)
class ShuffleNormalForm:
    word: Word

    def __bool__(self):
        return bool(self.word)

    @property
    def trivial(self) -> bool:
        return not self.word


def raag_normal_form(cx: FlagComplex, w: Sequence[int]) -> ShuffleNormalForm:
    """Lexicographically least word among the shuffles of a reduced representative."""
    comm = _commutation(cx)
    rest = list(shuffle_reduce(cx, w))
    out = []
    while rest:
        best = None
        for i, x in enumerate(rest):
            if all(comm(x, y) for y in rest[:i]) and (best is None or (abs(x), x) < (abs(rest[best]), rest[best])):
                best = i
        out.append(rest.pop(best))
    return ShuffleNormalForm(tuple(out))


def raag_equal(cx: FlagComplex, u: Sequence[int], v: Sequence[int]) -> bool:
    return raag_normal_form(cx, u) == raag_normal_form(cx, v)


def fill_raag(ctx: Context, w: Sequence[int]) -> NullExpression:
    cx = ctx.complex
    comm = _commutation(cx)
    rw = Rewriter(w, ctx.index_A)
    rw.reduce()
    while rw.word:
        word = rw.word
        n = len(word)
        found = None
        for i in range(n):
            x = word[i]
            for j in range(i + 1, n):
                y = word[j]
                if y == -x:
                    found = (i, j)
                    break
                if not comm(x, y):
                    break
            if found:
                break
        if found is None:
            raise NotNullHomotopic("no cancellable pair in a nonempty reduced word")
        i, j = found
        for p in range(i, j - 1):
            a, b = rw.word[p], rw.word[p + 1]
            rw.replace(p, p + 2, (b, a))
        del rw.word[j - 1:j + 1]
        rw.reduce()
    return rw.expression()


# --------------------------------------------------------------------------
# Tietze cases

def tietze_case_transform(expr: NullExpression, case: int, data=None) -> NullExpression:
    """Transform an expression along one elementary Tietze move.

    1: a relator was added, nothing changes.
    2: relators were removed; ``data`` maps each removed key to a filling of
       its word over the remaining relators.
    3: generators b were added with defining relators b·u_b⁻¹; ``data`` is a
       dict with ``word`` (over the larger alphabet), ``defs`` {b: (u_b, ref)}
       and ``index`` (a RotationIndex containing the defining relators); the
       input expression fills ``word`` with every b replaced by u_b.
    4: generators b were removed via the retraction b ↦ u_b; ``data`` is a
       dict with ``retract`` {b: u_b}, ``drop`` (keys of defining relators)
       and ``presentation`` (the smaller presentation, for relator lookup).
    """
    if case == 1:
        return expr
    if data is None:
        raise ValueError(f"Tietze case {case} needs case data")
    if case == 2:
        terms: list = []
        for t in expr.terms:
            fill = data.get(t.relator.key)
            if fill is None:
                terms.append(t)
                continue
            if fill.target != t.relator.word:
                raise VerificationError(f"filling for {t.relator.key} has the wrong target")
            f = fill if t.relator.sign > 0 else fill.inverse()
            terms.extend(f.conjugate(t.conjugator).terms)
        return NullExpression(tuple(terms), expr.target)
    if case == 3:
        word = tuple(data["word"])
        defs = data["defs"]
        rw = Rewriter(word, data["index"])
        p = 0
        while p < len(rw.word):
            x = rw.word[p]
            if abs(x) in defs:
                u = defs[abs(x)][0]
                img = u if x > 0 else inverse(u)
                rw.replace(p, p + 1, img)
                p += len(img)
            else:
                p += 1
        rw.splice(0, len(rw.word), (), expr, check=True)
        return rw.expression()
    if case == 4:
        retract = data["retract"]
        drop = set(data["drop"])
        pres = data["presentation"]

        def rho(w):
            out = []
            for x in w:
                img = retract.get(abs(x))
                if img is None:
                    out.append(x)
                else:
                    out.extend(img if x > 0 else inverse(img))
            return free_reduce(out)

        by_word = {w: k for k, w in pres.relators.items()}
        terms = []
        for t in expr.terms:
            if t.relator.key in drop:
                continue
            rw_ = tuple(rho(t.relator.word))
            key = by_word.get(rw_)
            if key is None:
                raise VerificationError(f"retracted relator {t.relator.key} is not in the target presentation")
            terms.append(Term(rho(t.conjugator), RelatorRef(key, rw_, t.relator.sign, None)))
        return NullExpression(tuple(terms), rho(expr.target))
    raise ValueError(f"unknown Tietze case {case}")


# --------------------------------------------------------------------------
# transport P_A → P_A′

@dataclass
class TransportData:
    """Per-complex bridge fillings over P_A′ (built once, then read-only)."""

    section: dict  # vertex id -> σ(v) = p(v, q)·t
    bridges: dict  # P_A relator key -> filling of σ(r)
    letters: dict  # signed edge letter -> filling of x·c(x)⁻¹
    c1: int = 0
    c2: int = 0
    c3: int = 0
    bridge_radius: int = 0
    letter_radius: int = 0
    stats: dict = field(default_factory=dict)


def _cycle_filling(ctx: Context, cycle: Word) -> NullExpression:
    key = ("cycle1", cycle)
    hit = ctx.memo.get(key)
    if hit is None:
        nh = find_null_homotopy(ctx.complex, cycle, scaled(DEFAULT_MAX_STATES),
                                default_max_len(len(cycle), ctx.tree))
        hit = ctx.memo[key] = fill_cycle_power(ctx, cycle, 1, nh)
    return hit


def _bar(ctx: Context, x: int) -> int:
    b = ctx.complex.bar
    return -b[x] if x > 0 else b[-x]


def _bridge_commutator(ctx: Context, a: int, b: int, section: dict) -> NullExpression:
    """Filling over P_A′ of σ([a, b]) for adjacent vertex generators a, b."""
    cx, tree, q = ctx.complex, ctx.tree, ctx.q
    t = cx.t
    name = cx.alphabet.name
    u, v = name(a), name(b)
    Pu, Pv = tree.path(u, q), tree.path(v, q)
    word = _sigma(section, (a, b, -a, -b))
    rw = Rewriter(word, ctx.index_ext)
    rw.set_word(Pu + (t,) + Pv + inverse(Pu) + (-t,) + inverse(Pv))
    d = cx.eid[(v, u)]
    # P_v P_u⁻¹ ⇝ d: fill P_v P_u⁻¹ d⁻¹, after reversing the inverted path and d⁻¹
    i = len(Pu) + 1
    seg = Pv + inverse(Pu)
    sub = Rewriter(seg + (-d,), ctx.index_H)
    for p in range(len(Pv), len(seg) + 1):
        sub.replace(p, p + 1, (_bar(ctx, sub.word[p]),))
    cyc = tuple(sub.word)
    sub.splice(0, len(cyc), (), _cycle_filling(ctx, cyc))
    rw.splice(i, i + len(seg), (d,), sub.expression())
    # t d t⁻¹ ⇝ w_d
    wd = tree.path(q, v) + (d,) + tree.path(v, q)
    rw.replace(i - 1, i + 2, wd)
    # P_u w_d P_v⁻¹ ≐ p(u,q) p(q,v) d, a closed cycle u → q → v → u
    cyc = Pu + tree.path(q, v) + (d,)
    rw.set_word(cyc)
    rw.splice(0, len(cyc), (), _cycle_filling(ctx, cyc))
    return rw.expression()


def _letter_filling(ctx: Context, e: int) -> NullExpression:
    """Filling over P_H of e·c(e)⁻¹ = e·p(τe,q)·p(ιe,q)⁻¹ for a positive edge e."""
    cx, tree, q = ctx.complex, ctx.tree, ctx.q
    a, b = tree.path(cx.iota(e), q), tree.path(cx.tau(e), q)
    word = (e,) + b + inverse(a)
    rw = Rewriter(word, ctx.index_H)
    for p in range(1 + len(b), len(word)):
        rw.replace(p, p + 1, (_bar(ctx, rw.word[p]),))
    # now e·p(τe,q)·p(q,ιe), a rotation of the tree-edge cycle at n = 1
    pq = tree.path(q, cx.iota(e))
    cyc = rotation_expression(fill_tree_edge_cycle(ctx, e, 1), len(pq))
    rw.splice(0, len(rw.word), (), cyc, check=True)
    return rw.expression()


def _sigma(section: dict, w: Sequence[int]) -> Word:
    out = []
    for x in w:
        img = section[abs(x)]
        out.extend(img if x > 0 else inverse(img))
    return tuple(out)


def transport_data(ctx: Context) -> TransportData:
    hit = ctx.memo.get("transport")
    if hit is not None:
        return hit
    cx, tree, q = ctx.complex, ctx.tree, ctx.q
    section = {cx.vid[v]: tree.path(v, q) + (cx.t,) for v in cx.vertices}
    bridges = {}
    for key, word in ctx.P_A.relators.items():
        a, b = word[0], word[1]
        br = _bridge_commutator(ctx, a, b, section)
        if not verify_expression(br.target, br, ctx.P_A_ext):
            raise VerificationError(f"bridge for {key} does not verify")
        bridges[key] = br
    letters = {}
    for e in cx.directed_edges:
        f = _letter_filling(ctx, e)
        if not verify_expression(f.target, f, ctx.P_H):
            raise VerificationError("per-letter correction does not verify")
        letters[e] = f
        # e⁻¹·c(e) = e⁻¹ (e c(e)⁻¹)⁻¹ e
        letters[-e] = f.inverse().conjugate((-e,)).with_target((-e,) + _c(ctx, e))
    L = ctx.L
    br_area = max((x.area for x in bridges.values()), default=0)
    br_rad = max((x.radius for x in bridges.values()), default=0)
    le_area = max((x.area for x in letters.values()), default=0)
    le_rad = max((x.radius for x in letters.values()), default=0)
    data = TransportData(section, bridges, letters, c1=br_area, c2=le_area,
                         c3=max(L + 1 + br_rad, 2 * L + le_rad),
                         bridge_radius=br_rad, letter_radius=le_rad)
    ctx.memo["transport"] = data
    return data


def _c(ctx: Context, x: int) -> Word:
    """c(x) = σ(embed(x)) freely reduced."""
    cx, tree, q = ctx.complex, ctx.tree, ctx.q
    e = abs(x)
    c = tree.path(cx.iota(e), q) + inverse(tree.path(cx.tau(e), q))
    return c if x > 0 else inverse(c)


def transport_to_extended(ctx: Context, w: Sequence[int], expr: NullExpression) -> NullExpression:
    """Given an expression over P_A for embed(w), return one over P_A′ for w."""
    cx = ctx.complex
    w = tuple(w)
    if any(abs(x) not in cx.ends for x in w):
        raise ValueError("transport expects a word over directed edges")
    data = transport_data(ctx)
    section = data.section
    # σ applied letterwise; σ-images of relators are removed via their bridges
    raw = NullExpression(
        tuple(Term(free_reduce(_sigma(section, t.conjugator)),
                   RelatorRef(t.relator.key, _sigma(section, t.relator.word), t.relator.sign))
              for t in expr.terms),
        _sigma(section, expr.target))
    bridged = tietze_case_transform(
        raw, 2, {k: br for k, br in data.bridges.items()})
    # w ≐ Π Q_{j-1} (x_j c_j⁻¹) Q_{j-1}⁻¹ · Q
    terms: list = []
    Q: list[int] = []
    for x in w:
        terms.extend(data.letters[x].conjugate(free_reduce(Q)).terms)
        Q = list(free_reduce(Q + list(_c(ctx, x))))
    terms.extend(bridged.terms)
    return NullExpression(tuple(terms), w)


def transport_bounds(ctx: Context):
    """(area, radius) bounds for transport: area ≤ c1·area(E) + c2·|w| and
    radius ≤ c3·(max(radius(E), |w|) + L + 1)."""
    d = transport_data(ctx)
    L = ctx.L

    def area(a, n):
        return d.c1 * a + d.c2 * n

    def radius(r, n):
        return d.c3 * (max(r, n) + L + 1)

    return area, radius
