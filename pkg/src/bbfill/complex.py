"""Flag complexes, spanning trees, tree paths and combinatorial null-homotopies."""

from __future__ import annotations

import hashlib
import heapq
import itertools
import json
from collections import deque
from dataclasses import dataclass, field
from typing import Iterable, Sequence

from .words import STABLE_NAME, Alphabet, Word


class ComplexError(ValueError):
    pass


def edge_name(u: str, v: str) -> str:
    return f"{u}>{v}"


class FlagComplex:
    """A finite flag simplicial complex given by its 1-skeleton.

    Owns the alphabet shared by every word built over it: vertex generators,
    directed-edge generators and the stable letter, in that order.
    """

    def __init__(self, vertices: Iterable[str], edges: Iterable[Sequence[str]], name: str = ""):
        self.name = name
        self.vertices: tuple[str, ...] = tuple(sorted(set(vertices)))
        vset = set(self.vertices)
        und = set()
        for pair in edges:
            u, v = pair
            if u not in vset or v not in vset:
                raise ComplexError(f"edge {u}-{v} has an endpoint that is not a vertex")
            if u == v:
                raise ComplexError(f"loop at {u}")
            und.add(tuple(sorted((u, v))))
        for v in self.vertices:
            if ">" in v or v == STABLE_NAME or not v or any(c.isspace() for c in v):
                raise ComplexError(f"bad vertex name {v!r}")
        self.edges: tuple[tuple[str, str], ...] = tuple(sorted(und))
        self.adj: dict[str, set[str]] = {v: set() for v in self.vertices}
        for u, v in self.edges:
            self.adj[u].add(v)
            self.adj[v].add(u)
        if not self._connected():
            raise ComplexError("1-skeleton is not connected")
        self.triangles: tuple[tuple[str, str, str], ...] = tuple(
            (a, b, c)
            for a, b in self.edges
            for c in sorted(self.adj[a] & self.adj[b])
            if c > b
        )

        self.alphabet = Alphabet(self.vertices)
        directed = sorted(itertools.chain(self.edges, ((v, u) for u, v in self.edges)))
        for u, v in directed:
            self.alphabet.add(edge_name(u, v))
        self.t = self.alphabet.add(STABLE_NAME)
        self.vid = {v: self.alphabet[v] for v in self.vertices}
        self.eid = {(u, v): self.alphabet[edge_name(u, v)] for u, v in directed}
        self.ends = {g: uv for uv, g in self.eid.items()}
        self.bar = {g: self.eid[(v, u)] for g, (u, v) in self.ends.items()}
        self.directed_edges: tuple[int, ...] = tuple(self.eid[uv] for uv in directed)
        self.out_edges = {v: [self.eid[(v, w)] for w in sorted(self.adj[v])] for v in self.vertices}
        # every directed 3-cycle e·f·g, all rotations and both orientations
        cycles = []
        for a, b, c in self.triangles:
            for x, y, z in itertools.permutations((a, b, c)):
                cycles.append((self.eid[(x, y)], self.eid[(y, z)], self.eid[(z, x)]))
        self.triangle_cycles: tuple[tuple[int, int, int], ...] = tuple(sorted(cycles))
        self._tri_set = frozenset(cycles)
        self.cycles_from = {v: [] for v in self.vertices}
        for cyc in self.triangle_cycles:
            self.cycles_from[self.ends[cyc[0]][0]].append(cyc)

    def _connected(self) -> bool:
        if not self.vertices:
            return False
        seen = {self.vertices[0]}
        todo = [self.vertices[0]]
        while todo:
            for w in self.adj[todo.pop()]:
                if w not in seen:
                    seen.add(w)
                    todo.append(w)
        return len(seen) == len(self.vertices)

    def __repr__(self):
        return f"FlagComplex({self.name or '?'}: {len(self.vertices)}v {len(self.edges)}e {len(self.triangles)}t)"

    def iota(self, e: int) -> str:
        return self.ends[e][0]

    def tau(self, e: int) -> str:
        return self.ends[e][1]

    def is_flag(self) -> bool:
        tri = set(self.triangles)
        for a, b, c in itertools.combinations(self.vertices, 3):
            if b in self.adj[a] and c in self.adj[a] and c in self.adj[b] and (a, b, c) not in tri:
                return False
        return True

    def is_cycle(self, edges: Sequence[int]) -> bool:
        if not edges:
            return True
        if any(e not in self.ends for e in edges):
            return False
        n = len(edges)
        return all(self.tau(edges[i]) == self.iota(edges[(i + 1) % n]) for i in range(n))

    def to_json(self, base: str | None = None) -> str:
        obj = {"vertices": list(self.vertices), "edges": [list(e) for e in self.edges]}
        if base is not None:
            obj["base"] = base
        return json.dumps(obj, sort_keys=True)

    def digest(self) -> str:
        return hashlib.sha256(self.to_json().encode()).hexdigest()[:16]


def flag_from_graph(vertices, edges, name: str = "") -> FlagComplex:
    return FlagComplex(vertices, edges, name=name)


def load_complex(text: str, name: str = "") -> tuple[FlagComplex, str | None]:
    obj = json.loads(text)
    return FlagComplex(obj["vertices"], obj["edges"], name=name), obj.get("base")


@dataclass(frozen=True)
class TreeData:
    complex: FlagComplex
    base: str
    parent: dict
    depth: dict
    diameter: int
    tree_edges: frozenset

    def path_vertices(self, u: str, v: str) -> list[str]:
        """Vertices of the tree geodesic from u to v."""
        left, right = [u], [v]
        a, b = u, v
        while self.depth[a] > self.depth[b]:
            a = self.parent[a]
            left.append(a)
        while self.depth[b] > self.depth[a]:
            b = self.parent[b]
            right.append(b)
        while a != b:
            a, b = self.parent[a], self.parent[b]
            left.append(a)
            right.append(b)
        return left + right[-2::-1]

    def dist(self, u: str, v: str) -> int:
        return len(self.path_vertices(u, v)) - 1

    def path(self, u: str, v: str) -> Word:
        vs = self.path_vertices(u, v)
        eid = self.complex.eid
        return tuple(eid[(vs[i], vs[i + 1])] for i in range(len(vs) - 1))


def build_tree_data(cx: FlagComplex, q: str | None = None) -> TreeData:
    """Breadth-first spanning tree rooted at q, neighbours in sorted order."""
    if q is None:
        q = cx.vertices[0]
    if q not in cx.adj:
        raise ComplexError(f"base vertex {q!r} is not a vertex")
    parent = {q: None}
    depth = {q: 0}
    order = deque([q])
    tree = set()
    while order:
        u = order.popleft()
        for w in sorted(cx.adj[u]):
            if w not in parent:
                parent[w] = u
                depth[w] = depth[u] + 1
                tree.add(tuple(sorted((u, w))))
                order.append(w)
    tmp = TreeData(cx, q, parent, depth, 0, frozenset(tree))
    diam = max((tmp.dist(u, v) for u, v in itertools.combinations(cx.vertices, 2)), default=0)
    return TreeData(cx, q, parent, depth, diam, frozenset(tree))


def tree_power_path(tree: TreeData, u: str, v: str, n: int) -> Word:
    """p_n(u, v): each edge of the tree geodesic u→v raised to the n-th power."""
    out = []
    for e in tree.path(u, v):
        out.extend([e] * n if n >= 0 else [-e] * (-n))
    return tuple(out)


# ---------------------------------------------------------------------------
# combinatorial null-homotopies

COLLAPSE1, EXPAND1, COLLAPSE2, EXPAND2 = "1-collapse", "1-expand", "2-collapse", "2-expand"


@dataclass(frozen=True)
class Move:
    kind: str
    position: int
    edges: tuple  # the inserted or removed edges


@dataclass(frozen=True)
class NullHomotopy:
    initial: tuple
    moves: tuple

    @property
    def length(self) -> int:
        return len(self.moves)

    def states(self) -> list[tuple]:
        out = [self.initial]
        cur = self.initial
        for mv in self.moves:
            cur = apply_move(cur, mv)
            out.append(cur)
        return out


class NotFound(Exception):
    def __init__(self, cycle, explored, reason="budget exhausted"):
        super().__init__(f"no null-homotopy found ({reason}, {explored} states)")
        self.cycle = cycle
        self.explored = explored
        self.reason = reason


def apply_move(cycle: tuple, mv: Move) -> tuple:
    k, es = mv.position, mv.edges
    if mv.kind in (EXPAND1, EXPAND2):
        return cycle[:k] + es + cycle[k:]
    if cycle[k:k + len(es)] != es:
        raise ValueError(f"move {mv} does not apply")
    return cycle[:k] + cycle[k + len(es):]


def _moves(cx: FlagComplex, cyc: tuple, cap: int):
    n = len(cyc)
    bar = cx.bar
    for k in range(n - 1):
        if cyc[k + 1] == bar[cyc[k]]:
            yield Move(COLLAPSE1, k, cyc[k:k + 2])
    tc = cx._tri_set
    for k in range(n - 2):
        if cyc[k:k + 3] in tc:
            yield Move(COLLAPSE2, k, cyc[k:k + 3])
    if n + 2 > cap:
        return
    for k in range(n + 1):
        v = cx.iota(cyc[k]) if k < n else (cx.tau(cyc[-1]) if n else None)
        if v is None:
            continue
        for e in cx.out_edges[v]:
            yield Move(EXPAND1, k, (e, bar[e]))
        if n + 3 <= cap:
            for c in cx.cycles_from[v]:
                yield Move(EXPAND2, k, c)


def find_null_homotopy(cx: FlagComplex, cycle: Sequence[int], max_states: int = 10**6,
                       max_len: int | None = None) -> NullHomotopy:
    """Shortest move sequence contracting ``cycle`` to the empty cycle.

    Best-first search with the admissible, consistent heuristic ceil(len/3)
    (a single move changes the length by at most three), so the first time
    the empty cycle is popped its move count is minimal among sequences
    staying under the length cap.
    """
    cycle = tuple(cycle)
    if not cx.is_cycle(cycle):
        raise ComplexError("not a combinatorial cycle")
    if max_len is None:
        max_len = len(cycle) + 6
    if not cycle:
        return NullHomotopy((), ())
    parents = {cycle: None}
    g = {cycle: 0}
    tie = itertools.count()
    heap = [((len(cycle) + 2) // 3, 0, next(tie), cycle)]
    while heap:
        _, d, _, cur = heapq.heappop(heap)
        if d > g[cur]:
            continue
        if not cur:
            moves = []
            while parents[cur] is not None:
                prev, mv = parents[cur]
                moves.append(mv)
                cur = prev
            return NullHomotopy(cycle, tuple(reversed(moves)))
        for mv in _moves(cx, cur, max_len):
            nxt = apply_move(cur, mv)
            nd = d + 1
            if nd < g.get(nxt, 1 << 60):
                if nxt not in g and len(g) >= max_states:
                    raise NotFound(cycle, len(g))
                g[nxt] = nd
                parents[nxt] = (cur, mv)
                heapq.heappush(heap, (nd + (len(nxt) + 2) // 3, -nd, next(tie), nxt))
    raise NotFound(cycle, len(g), reason="search space closed under caps")


def default_max_len(cycle_len: int, tree: TreeData) -> int:
    return cycle_len + 2 * tree.diameter + 6


def edge_cycle(tree: TreeData, e: int) -> tuple:
    """γι(e)·e·γτ(e)."""
    cx = tree.complex
    return tree.path(tree.base, cx.iota(e)) + (e,) + tree.path(cx.tau(e), tree.base)


@dataclass
class NullHomotopyCache:
    tree: TreeData
    homotopies: dict = field(default_factory=dict)

    @property
    def m(self) -> dict:
        return {e: h.length for e, h in self.homotopies.items()}

    @property
    def K(self) -> int:
        return 3 * max((h.length for h in self.homotopies.values()), default=0)


def edge_cycle_homotopy_cache(tree: TreeData, max_states: int = 10**6) -> NullHomotopyCache:
    cache = NullHomotopyCache(tree)
    cx = tree.complex
    done: dict[tuple, NullHomotopy] = {}
    for e in cx.directed_edges:
        cyc = edge_cycle(tree, e)
        if cyc not in done:
            try:
                done[cyc] = find_null_homotopy(cx, cyc, max_states, default_max_len(len(cyc), tree))
            except NotFound as exc:
                raise ComplexError(
                    f"simple-connectivity evidence unavailable for edge {cx.alphabet.name(e)}: {exc}"
                ) from exc
        cache.homotopies[e] = done[cyc]
    return cache


@dataclass
class ConnectivityReport:
    status: str  # "PASS" or "UNKNOWN"
    checked: int
    failures: list  # (cycle, NotFound) pairs
    lengths: dict

    def format(self, cx: FlagComplex) -> str:
        lines = [f"simple-connectivity: {self.status} ({self.checked} fundamental cycles)"]
        for cyc, exc in self.failures:
            lines.append(f"  obstructing cycle: {cx.alphabet.format(cyc)} [{exc.reason}, {exc.explored} states]")
        return "\n".join(lines)


def fundamental_cycles(tree: TreeData) -> list[tuple]:
    cx = tree.complex
    out = []
    for u, v in cx.edges:
        if (u, v) not in tree.tree_edges:
            out.append(edge_cycle(tree, cx.eid[(u, v)]))
    return out


def simple_connectivity_report(tree: TreeData, max_states: int = 10**6) -> ConnectivityReport:
    failures = []
    lengths = {}
    cycles = fundamental_cycles(tree)
    for cyc in cycles:
        try:
            nh = find_null_homotopy(tree.complex, cyc, max_states, default_max_len(len(cyc), tree))
            lengths[cyc] = nh.length
        except NotFound as exc:
            failures.append((cyc, exc))
    return ConnectivityReport("UNKNOWN" if failures else "PASS", len(cycles), failures, lengths)
