"""The four presentations P_A, P_A′, P_H, P_H^∞ and the Φ_n substitution system.

Relator keys are stable strings:

* ``comm:u,v``           commutator [u, v] of the RAAG
* ``edge:e:n``           Φ_n(e ē)
* ``tri:e,f,g:n``        Φ_n(efg)
* ``atri:e,f,g:n``       Φ_n(e⁻¹f⁻¹g⁻¹)
* ``s:e:n``              Φ_{n+1}(e) Φ_n(w_e)⁻¹
* ``ext:e``              t e t⁻¹ w_e⁻¹  (relators of P_A′ involving t)

P_H is exactly the level-0 slice of ``edge``/``tri``/``atri``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Callable, Sequence

from .complex import FlagComplex, TreeData, tree_power_path
from .words import AlphabetError, RelatorRef, Word, inverse

RELATOR_KINDS = ("edge", "tri", "atri", "s")


class DanglingRelator(KeyError):
    pass


class Presentation:
    def __init__(self, label: str, complex: FlagComplex, generators: Sequence[int]):
        self.label = label
        self.complex = complex
        self.alphabet = complex.alphabet
        self.generators = frozenset(generators)
        self.relators: dict[str, Word] = {}
        self._by_word: dict[Word, str] = {}

    def add(self, key: str, word: Word) -> bool:
        word = tuple(word)
        if not word or any(abs(x) not in self.generators for x in word):
            raise AlphabetError(f"relator {key} is not a nonempty word over the generators")
        if word in self._by_word:
            return False
        self.relators[key] = word
        self._by_word[word] = key
        return True

    def ref(self, key: str, sign: int = 1) -> RelatorRef:
        return RelatorRef(key, self.relators[key], sign, None)

    def resolve(self, ref: RelatorRef) -> Word:
        word = self.relators.get(ref.key)
        if word is None or word != ref.word:
            raise DanglingRelator(ref.key)
        return word

    def __len__(self):
        return len(self.relators)

    def __repr__(self):
        return f"Presentation({self.label}: {len(self.generators)} generators, {len(self)} relators)"


def edge_key(cx: FlagComplex, es: Sequence[int]) -> str:
    return ",".join(cx.alphabet.name(e) for e in es)


def raag_presentation(cx: FlagComplex) -> Presentation:
    p = Presentation("P_A", cx, cx.vid.values())
    for u, v in cx.edges:
        a, b = cx.vid[u], cx.vid[v]
        p.add(f"comm:{u},{v}", (a, b, -a, -b))
    return p


def dicks_leary(cx: FlagComplex) -> Presentation:
    p = Presentation("P_H", cx, cx.directed_edges)
    _add_dicks_leary(p, cx)
    return p


def _add_dicks_leary(p: Presentation, cx: FlagComplex):
    for e in cx.directed_edges:
        p.add(f"edge:{cx.alphabet.name(e)}:0", (e, cx.bar[e]))
    for cyc in cx.triangle_cycles:
        p.add(f"tri:{edge_key(cx, cyc)}:0", cyc)
        p.add(f"atri:{edge_key(cx, cyc)}:0", tuple(-x for x in cyc))


def w_e_word(tree: TreeData, e: int) -> Word:
    """w_e = p(q, ιe) · e · p(ιe, q)."""
    cx, q = tree.complex, tree.base
    return tree.path(q, cx.iota(e)) + (e,) + tree.path(cx.iota(e), q)


def extended_presentation(tree: TreeData) -> Presentation:
    cx = tree.complex
    t = cx.t
    p = Presentation("P_A'", cx, tuple(cx.directed_edges) + (t,))
    _add_dicks_leary(p, cx)
    for e in cx.directed_edges:
        p.add(f"ext:{cx.alphabet.name(e)}", (t, e, -t) + inverse(w_e_word(tree, e)))
    return p


class PhiSystem:
    """Φ_n: e ↦ p_n(q, ιe) e^{n+1} p_n(τe, q), extended to words so that it
    commutes with inversion. Images are memoised per (edge, n)."""

    def __init__(self, tree: TreeData):
        self.tree = tree
        self.complex = tree.complex
        self._memo: dict[tuple[int, int], Word] = {}

    def edge_image(self, e: int, n: int) -> Word:
        key = (e, n)
        img = self._memo.get(key)
        if img is None:
            cx, q = self.complex, self.tree.base
            img = (tree_power_path(self.tree, q, cx.iota(e), n)
                   + ((e,) * (n + 1) if n >= -1 else (-e,) * (-n - 1))
                   + tree_power_path(self.tree, cx.tau(e), q, n))
            self._memo[key] = img
        return img

    def __call__(self, w: Sequence[int], n: int) -> Word:
        if n == 0:
            self._check_edges(w)
            return tuple(w)
        out = []
        ends = self.complex.ends
        for x in w:
            if abs(x) not in ends:
                raise ValueError(f"Φ_n is only defined on edge letters, got {self.complex.alphabet.name(x)}")
            img = self.edge_image(abs(x), n)
            out.extend(img if x > 0 else inverse(img))
        return tuple(out)

    def _check_edges(self, w):
        ends = self.complex.ends
        for x in w:
            if abs(x) not in ends:
                raise ValueError(f"Φ_n is only defined on edge letters, got {self.complex.alphabet.name(x)}")


def phi_map(phi: PhiSystem, w: Sequence[int], n: int) -> Word:
    return phi(w, n)


@dataclass(frozen=True)
class IndexedRelator:
    kind: str
    params: tuple  # edge ids
    level: int
    word: Word

    @property
    def index(self) -> int:
        return abs(self.level)

    def key(self, cx: FlagComplex) -> str:
        return f"{self.kind}:{edge_key(cx, self.params)}:{self.level}"

    def ref(self, cx: FlagComplex, sign: int = 1) -> RelatorRef:
        return RelatorRef(self.key(cx), self.word, sign, self.index)


def base_relator_word(cx: FlagComplex, tree: TreeData, kind: str, params: Sequence[int]) -> Word:
    if kind == "edge":
        (e,) = params
        return (e, cx.bar[e])
    if kind in ("tri", "atri"):
        if tuple(params) not in cx._tri_set:
            raise ValueError("parameters are not a directed triangle cycle")
        return tuple(params) if kind == "tri" else tuple(-x for x in params)
    raise ValueError(f"unknown relator kind {kind!r}")


def make_indexed_relator(phi: PhiSystem, kind: str, params: Sequence[int], n: int) -> IndexedRelator:
    cx, tree = phi.complex, phi.tree
    params = tuple(params)
    if any(e not in cx.ends for e in params):
        raise ValueError("parameters must be directed edges")
    if kind == "s":
        if len(params) != 1:
            raise ValueError("s-relators take one edge")
        (e,) = params
        word = phi((e,), n + 1) + inverse(phi(w_e_word(tree, e), n))
    else:
        if kind == "edge" and len(params) != 1:
            raise ValueError("edge relators take one edge")
        word = phi(base_relator_word(cx, tree, kind, params), n)
    return IndexedRelator(kind, params, n, word)


def parse_relator_key(cx: FlagComplex, key: str) -> tuple[str, tuple, int | None]:
    parts = key.split(":")
    kind = parts[0]
    if kind == "comm":
        u, v = parts[1].split(",")
        return kind, (cx.vid[u], cx.vid[v]), None
    params = tuple(cx.alphabet[name] for name in parts[1].split(","))
    level = int(parts[2]) if len(parts) > 2 else None
    return kind, params, level


class IndexedPresentation:
    """P_H^∞: relators are regenerated on demand from their keys."""

    label = "P_H^inf"

    def __init__(self, phi: PhiSystem):
        self.phi = phi
        self.complex = phi.complex
        self._cache: dict[tuple, IndexedRelator] = {}
        self._by_word: dict[Word, tuple] = {}
        self.collisions: list[tuple[tuple, tuple]] = []
        self._by_key: dict[str, IndexedRelator] = {}

    def relator(self, kind: str, params: Sequence[int], n: int) -> IndexedRelator:
        key = (kind, tuple(params), n)
        r = self._cache.get(key)
        if r is None:
            r = make_indexed_relator(self.phi, kind, params, n)
            self._cache[key] = r
            other = self._by_word.setdefault(r.word, key)
            if other != key:
                self.collisions.append((other, key))
        return r

    def resolve(self, ref: RelatorRef) -> Word:
        r = self._by_key.get(ref.key)
        if r is None:
            try:
                kind, params, level = parse_relator_key(self.complex, ref.key)
                r = self.relator(kind, params, level)
            except (ValueError, KeyError, TypeError) as exc:
                raise DanglingRelator(ref.key) from exc
            self._by_key[ref.key] = r
        if r.word != ref.word or ref.index != r.index:
            raise DanglingRelator(ref.key)
        return r.word


@dataclass(frozen=True)
class ConstantsRecord:
    L: int
    K: int

    @property
    def rarea_coefficients(self) -> tuple[int, int, int]:
        L, K = self.L, self.K
        return 3 * K + 4, 6 * L * L + 2 * K + 6, L + K + 5

    def rarea_bound(self, n: int) -> int:
        a, b, c = self.rarea_coefficients
        return a * n * n + b * n + c


def bound_polynomials(constants: ConstantsRecord, alpha: Callable[[int], int] | None = None,
                      pi: Callable[[int], int] | None = None):
    """(rarea_bound, dehn_bound) with dehn_bound(n) = α′(n)·rarea_bound(π′(n))."""
    rarea = constants.rarea_bound
    if alpha is None or pi is None:
        return rarea, None
    return rarea, (lambda n: alpha(n) * rarea(pi(n)))
