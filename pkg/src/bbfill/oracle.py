"""Brute-force area oracles for tiny words.

A move inserts a cyclic permutation ρ of a relator or its inverse at some
position of a freely reduced word and reduces. This is the same as replacing
a subword u by v with u·v⁻¹ a cyclic permutation of r^{±1}, and the move graph
is symmetric, so breadth-first distance to ∅ is the minimal number of moves
among move sequences whose intermediate words respect the length cap.
"""

from __future__ import annotations

from collections import defaultdict
from dataclasses import dataclass, field
from typing import Sequence

from .context import scaled
from .raag import embed_to_vertices, raag_normal_form
from .rewriting import RotationIndex, join
from .words import NullExpression, Term, Word, cyclic_reduce, free_reduce, inverse, verify_expression

EXACT, UPPER = "exact", "upper-bound-only"
DEFAULT_ORACLE_STATES = 2_000_000


def relator_rotations(presentation) -> list[Word]:
    out = set()
    for r in presentation.relators.values():
        for s in (r, inverse(r)):
            for k in range(len(s)):
                out.add(s[k:] + s[:k])
    return sorted(out, key=lambda w: (len(w), w))


def decide_area_at_most_one(presentation, w: Sequence[int]) -> bool:
    """Exact: area ≤ 1 iff the cyclic reduction of w is empty or a cyclic
    permutation of some r^{±1}."""
    core = cyclic_reduce(free_reduce(w))
    if not core:
        return True
    return core in _rotation_set(presentation)


def _rotation_set(presentation) -> frozenset:
    cached = getattr(presentation, "_rotation_set", None)
    if cached is None:
        cached = frozenset(relator_rotations(presentation))
        presentation._rotation_set = cached
    return cached


@dataclass
class OracleResult:
    word: Word
    area: int | None  # None when nothing was found within the caps
    exactness: str
    caps: dict
    expression: NullExpression | None = None
    explored: int = 0
    closed: bool = False  # the reachable set under the caps was exhausted

    @property
    def filled(self) -> bool:
        return self.area is not None

    @property
    def exact(self) -> bool:
        return self.exactness == EXACT


def _exactness(presentation, w, area) -> str:
    if area is None:
        return UPPER
    if area <= 1:
        return EXACT
    if area == 2 and not decide_area_at_most_one(presentation, w):
        return EXACT
    return UPPER


def _neighbours(W: Word, rots: list, cap: int):
    n = len(W)
    for p in range(n + 1):
        left, right = W[:p], W[p:]
        for rho in rots:
            if n + len(rho) - 2 * min(len(rho), n) > cap:
                continue
            x = join(join(left, rho), right)
            if len(x) <= cap:
                yield x, p, rho


def _expression(index: RotationIndex, steps, target: Word) -> NullExpression:
    """steps: (A, ρ) in order, each meaning W_prev ≐ A ρ A⁻¹ W_next."""
    terms = []
    for A, rho in steps:
        ref, s = index.locate(rho)
        terms.append(Term(free_reduce(A + s), ref))
    return NullExpression(tuple(terms), target)


def brute_force_area(presentation, w: Sequence[int], max_len: int | None = None,
                     max_area: int | None = None, max_states: int | None = None,
                     index: RotationIndex | None = None) -> OracleResult:
    """Layered BFS from w towards ∅ over freely reduced words."""
    w = tuple(w)
    start = free_reduce(w)
    if max_len is None:
        max_len = len(start) + 2
    if max_states is None:
        max_states = scaled(DEFAULT_ORACLE_STATES)
    caps = {"max_len": max_len, "max_area": max_area, "max_states": max_states}
    index = index or RotationIndex.of(presentation)
    if not start:
        return OracleResult(w, 0, EXACT, caps, NullExpression((), w), 1, True)
    if len(start) > max_len:
        return OracleResult(w, None, UPPER, caps)
    rots = relator_rotations(presentation)
    parent: dict = {start: None}
    frontier = [start]
    depth = 0
    while frontier and (max_area is None or depth < max_area):
        depth += 1
        nxt = []
        for W in frontier:
            for x, p, rho in _neighbours(W, rots, max_len):
                if x in parent:
                    continue
                parent[x] = (W, p, rho)
                if not x:
                    steps = []
                    cur = x
                    while parent[cur] is not None:
                        prev, p_, rho_ = parent[cur]
                        # cur ≐ A ρ A⁻¹ prev, so prev ≐ A ρ⁻¹ A⁻¹ cur
                        steps.append((prev[:p_], inverse(rho_)))
                        cur = prev
                    expr = _expression(index, list(reversed(steps)), w)
                    return OracleResult(w, depth, _exactness(presentation, w, depth), caps, expr, len(parent))
                if len(parent) >= max_states:
                    return OracleResult(w, None, UPPER, caps, None, len(parent))
                nxt.append(x)
        frontier = nxt
    return OracleResult(w, None, UPPER, caps, None, len(parent), closed=not frontier)


class CappedBall:
    """BFS from ∅ over every word reachable with all intermediates of length
    ≤ cap; distances are the capped areas of all those words at once."""

    def __init__(self, presentation, cap: int, max_states: int | None = None):
        self.presentation = presentation
        self.cap = cap
        self.index = RotationIndex.of(presentation)
        rots = relator_rotations(presentation)
        limit = scaled(DEFAULT_ORACLE_STATES) if max_states is None else max_states
        self.parent: dict = {(): None}
        self.dist: dict = {(): 0}
        frontier = [()]
        d = 0
        self.complete = True
        while frontier:
            d += 1
            nxt = []
            for W in frontier:
                for x, p, rho in _neighbours(W, rots, cap):
                    if x not in self.dist:
                        self.dist[x] = d
                        self.parent[x] = (W, p, rho)
                        nxt.append(x)
            if len(self.dist) > limit:
                self.complete = False
                break
            frontier = nxt

    def area(self, w: Sequence[int]) -> OracleResult:
        w = tuple(w)
        W = free_reduce(w)
        caps = {"max_len": self.cap}
        d = self.dist.get(W)
        if d is None:
            return OracleResult(w, None, UPPER, caps, None, len(self.dist), self.complete)
        steps = []
        cur = W
        while self.parent[cur] is not None:
            prev, p, rho = self.parent[cur]
            steps.append((prev[:p], rho))  # cur ≐ A ρ A⁻¹ prev
            cur = prev
        expr = _expression(self.index, steps, w)
        return OracleResult(w, d, _exactness(self.presentation, w, d), caps, expr, len(self.dist), self.complete)


def null_homotopic_words(cx, generators: Sequence[int], n: int) -> list[Word]:
    """All freely reduced words of length ≤ n over ``generators`` that are
    trivial in the Bestvina–Brady group, by meeting in the middle on RAAG
    normal forms of the embedding."""
    letters = sorted({g for g in generators} | {-g for g in generators}, key=lambda x: (abs(x), x))
    by_len: list[list[Word]] = [[()]]
    for k in range(1, (n + 1) // 2 + 1):
        by_len.append([u + (x,) for u in by_len[-1] for x in letters if not u or u[-1] != -x])
    nf = {}

    def form(u):
        f = nf.get(u)
        if f is None:
            f = nf[u] = raag_normal_form(cx, embed_to_vertices(cx, u)).word
        return f

    out = []
    for length in range(0, n + 1):
        a, b = (length + 1) // 2, length // 2
        if a >= len(by_len):
            break
        buckets = defaultdict(list)
        for v in by_len[b]:
            buckets[form(inverse(v))].append(v)
        for u in by_len[a]:
            for v in buckets.get(form(u), ()):
                if u and v and u[-1] == -v[0]:
                    continue
                out.append(u + v)
    return sorted(set(out), key=lambda w: (len(w), w))


@dataclass
class DehnSample:
    n: int
    cap: int
    rows: dict = field(default_factory=dict)  # length -> (count, max area, all exact, unfilled)
    results: dict = field(default_factory=dict)  # word -> OracleResult

    def delta(self, m: int) -> int:
        """Max capped area over words of length ≤ m."""
        return max((r[1] for L, r in self.rows.items() if L <= m), default=0)

    @property
    def complete(self) -> bool:
        return all(r[3] == 0 for r in self.rows.values())


def enumerate_dehn_sample(ctx, n: int, cap: int | None = None, presentation=None) -> DehnSample:
    """Max oracle area over null-homotopic reduced words of length ≤ n (n ≤ 8)."""
    if n > 8:
        raise ValueError("enumeration is only meant for n ≤ 8")
    P = presentation or ctx.P_H
    cap = max(n, cap or n)
    ball = CappedBall(P, cap)
    words = null_homotopic_words(ctx.complex, sorted(P.generators), n)
    sample = DehnSample(n, cap)
    for length in range(n + 1):
        sample.rows[length] = (0, 0, True, 0)
    for w in words:
        res = ball.area(w)
        sample.results[w] = res
        count, mx, ex, unf = sample.rows[len(w)]
        if res.filled:
            sample.rows[len(w)] = (count + 1, max(mx, res.area), ex and res.exact, unf)
        else:
            sample.rows[len(w)] = (count + 1, mx, False, unf + 1)
    return sample


def check_result(presentation, res: OracleResult) -> bool:
    """The emitted expression verifies and has exactly the reported area."""
    if not res.filled:
        return res.expression is None
    return res.expression.area == res.area and verify_expression(res.word, res.expression, presentation)
