"""Literal word rewriting that records a null-expression as it goes.

Every step replaces a subword ``u`` of the current word by ``v``. When
``u v⁻¹`` is (after cyclic reduction) a rotation of a relator or its inverse
the step costs one term whose conjugator is the current prefix. Free
insertions and deletions cost nothing. Splicing the recorded terms gives an
expression for the starting word once the current word reduces to ∅.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .words import (NullExpression, RelatorRef, Term, VerificationError, Word, cyclic_reduce,
                    free_reduce, freely_equal, inverse, join)


class NotARelator(VerificationError):
    pass


class RotationIndex:
    """Look up which relator (with sign and rotation) a cyclic word is."""

    def __init__(self, refs: Iterable[RelatorRef]):
        self.table: dict[Word, tuple[RelatorRef, Word]] = {}
        for ref in refs:
            for sign in (1, -1):
                r = ref.word if sign > 0 else inverse(ref.word)
                signed = RelatorRef(ref.key, ref.word, sign, ref.index)
                for k in range(len(r)):
                    rot = r[k:] + r[:k]
                    # rot = s r s⁻¹ with s = r[:k]⁻¹ or r[k:], keep the shorter
                    s = inverse(r[:k]) if k <= len(r) - k else r[k:]
                    old = self.table.get(rot)
                    if old is None or len(s) < len(old[1]):
                        self.table[rot] = (signed, s)

    @classmethod
    def of(cls, presentation) -> "RotationIndex":
        return cls(presentation.ref(key) for key in presentation.relators)

    def locate(self, x: Sequence[int]) -> tuple[RelatorRef, Word]:
        """(signed relator, s) with x ≐ s·r·s⁻¹."""
        x = free_reduce(x)
        core = cyclic_reduce(x)
        hit = self.table.get(core)
        if hit is None:
            raise NotARelator(f"not a relator rotation: {core}")
        ref, s = hit
        a = x[: (len(x) - len(core)) // 2]
        return ref, join(a, s)

    def add(self, ref: RelatorRef):
        self.table.update(RotationIndex([ref]).table)


class Rewriter:
    def __init__(self, word: Sequence[int], index: RotationIndex):
        self.start: Word = tuple(word)
        self.word: list[int] = list(word)
        self.index = index
        self.terms: list[Term] = []

    def __len__(self):
        return len(self.word)

    @property
    def cost(self) -> int:
        return len(self.terms)

    def expect(self, i: int, seg: Sequence[int]):
        if tuple(self.word[i:i + len(seg)]) != tuple(seg):
            raise VerificationError(f"expected segment at {i} does not match")

    def replace(self, i: int, j: int, v: Sequence[int]):
        """Rewrite word[i:j] as v using one relator."""
        u = tuple(self.word[i:j])
        ref, s = self.index.locate(u + inverse(v))
        self.terms.append(Term(join(self.word[:i], s), ref))
        self.word[i:j] = v

    def splice(self, i: int, j: int, v: Sequence[int], expr: NullExpression, check: bool = False):
        """Rewrite word[i:j] as v given an expression for word[i:j]·v⁻¹."""
        u = tuple(self.word[i:j])
        if check and not freely_equal(expr.target, u + inverse(v)):
            raise VerificationError("spliced expression has the wrong target")
        prefix = tuple(self.word[:i])
        if prefix:
            self.terms.extend(Term(join(prefix, t.conjugator), t.relator) for t in expr.terms)
        else:
            self.terms.extend(expr.terms)
        self.word[i:j] = v

    def set_word(self, new: Sequence[int]):
        """Free move: the new word must be freely equal to the current one."""
        if not freely_equal(self.word, new):
            raise VerificationError("set_word: words are not freely equal")
        self.word = list(new)

    def reduce(self):
        self.word = list(free_reduce(self.word))

    def expression(self) -> NullExpression:
        if free_reduce(self.word):
            raise VerificationError("rewriting did not reach the empty word")
        return NullExpression(tuple(self.terms), self.start)
