"""Words over an interned alphabet, null-expressions and their verification.

A letter is a nonzero int: ``+g`` for generator ``g`` and ``-g`` for its
formal inverse. A word is a tuple of letters. Words are never reduced
implicitly; call :func:`free_reduce` when a reduced word is wanted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from operator import neg
from typing import Iterable, Sequence

Word = tuple  # tuple[int, ...]

VERTEX, EDGE, STABLE = "vertex", "edge", "stable"
STABLE_NAME = "@t"


class AlphabetError(ValueError):
    pass


class VerificationError(AssertionError):
    """Raised when a produced certificate fails to verify."""


class Alphabet:
    """Interned generator names. Ids start at 1 so that letters can be signed."""

    def __init__(self, names: Iterable[str] = ()):
        self.names: list[str] = [""]
        self.ids: dict[str, int] = {}
        for name in names:
            self.add(name)

    def add(self, name: str) -> int:
        if name in self.ids:
            return self.ids[name]
        if not name or any(ch.isspace() for ch in name) or name.endswith("^-1"):
            raise AlphabetError(f"invalid generator name {name!r}")
        self.ids[name] = len(self.names)
        self.names.append(name)
        return self.ids[name]

    def __len__(self):
        return len(self.names) - 1

    def __contains__(self, name):
        return name in self.ids

    def __getitem__(self, name: str) -> int:
        try:
            return self.ids[name]
        except KeyError:
            raise AlphabetError(f"unknown generator {name!r}") from None

    def name(self, letter: int) -> str:
        return self.names[abs(letter)]

    @staticmethod
    def kind(name: str) -> str:
        if name == STABLE_NAME:
            return STABLE
        if ">" in name:
            return EDGE
        return VERTEX

    def letter_kind(self, letter: int) -> str:
        return self.kind(self.names[abs(letter)])

    def parse(self, text: str) -> Word:
        out = []
        for tok in text.split():
            if tok.endswith("^-1"):
                out.append(-self[tok[:-3]])
            else:
                out.append(self[tok])
        return tuple(out)

    def format(self, w: Sequence[int]) -> str:
        return " ".join(self.names[x] if x > 0 else self.names[-x] + "^-1" for x in w)


def inverse(w: Sequence[int]) -> Word:
    return tuple(map(neg, reversed(w)))


def join(prefix: Sequence[int], s: Sequence[int]) -> Word:
    """prefix · s with free cancellation at the junction only."""
    k = 0
    n, m = len(prefix), len(s)
    while k < n and k < m and prefix[n - 1 - k] == -s[k]:
        k += 1
    if not k:
        return (*prefix, *s)
    return (*prefix[: n - k], *s[k:])


def free_reduce(w: Iterable[int]) -> Word:
    stack: list[int] = []
    for x in w:
        if stack and stack[-1] == -x:
            stack.pop()
        else:
            stack.append(x)
    return tuple(stack)


def is_freely_reduced(w: Sequence[int]) -> bool:
    return all(w[i] != -w[i + 1] for i in range(len(w) - 1))


def freely_equal(u: Sequence[int], v: Sequence[int], alphabet: Alphabet | None = None) -> bool:
    if alphabet is not None:
        top = len(alphabet)
        if any(abs(x) > top for x in u) or any(abs(x) > top for x in v):
            raise AlphabetError("letter outside alphabet")
    return free_reduce(tuple(u) + inverse(v)) == ()


def exponent_sum(w: Iterable[int], g: int) -> int:
    return sum(1 if x == g else -1 if x == -g else 0 for x in w)


def power(w: Sequence[int], n: int) -> Word:
    if n >= 0:
        return tuple(w) * n
    return inverse(w) * (-n)


def cyclic_reduce(w: Sequence[int]) -> Word:
    w = free_reduce(w)
    i, j = 0, len(w)
    while j - i >= 2 and w[i] == -w[j - 1]:
        i += 1
        j -= 1
    return w[i:j]


@dataclass(frozen=True)
class RelatorRef:
    """A relator used with a sign. ``key`` names the relator in its presentation;
    ``index`` is the penetration index for indexed relators (None otherwise)."""

    key: str
    word: Word
    sign: int = 1
    index: int | None = None

    def signed_word(self) -> Word:
        return self.word if self.sign > 0 else inverse(self.word)

    def inverted(self) -> "RelatorRef":
        return RelatorRef(self.key, self.word, -self.sign, self.index)


@dataclass(frozen=True)
class Term:
    conjugator: Word
    relator: RelatorRef


@dataclass(frozen=True)
class NullExpression:
    """Product of conjugated relators, claimed freely equal to ``target``."""

    terms: tuple = ()
    target: Word = ()

    @property
    def area(self) -> int:
        return len(self.terms)

    @property
    def radius(self) -> int:
        return max((len(t.conjugator) for t in self.terms), default=0)

    @property
    def penetration(self) -> int:
        return max((t.relator.index or 0 for t in self.terms), default=0)

    def inverse(self) -> "NullExpression":
        return NullExpression(
            tuple(Term(t.conjugator, t.relator.inverted()) for t in reversed(self.terms)),
            inverse(self.target),
        )

    def conjugate(self, x: Sequence[int]) -> "NullExpression":
        """Expression for x·target·x⁻¹; conjugators cancel only at the junction."""
        x = tuple(x)
        xr = free_reduce(x)
        return NullExpression(
            tuple(Term(join(xr, t.conjugator), t.relator) for t in self.terms),
            x + self.target + inverse(x),
        )

    def __add__(self, other: "NullExpression") -> "NullExpression":
        return NullExpression(self.terms + other.terms, self.target + other.target)

    def with_target(self, target: Sequence[int]) -> "NullExpression":
        return NullExpression(self.terms, tuple(target))


EMPTY = NullExpression()


def common_prefix_length(a: Sequence[int], b: Sequence[int]) -> int:
    lo, hi = 0, min(len(a), len(b))
    if a[:hi] == b[:hi]:
        return hi
    # invariant: a[:lo] == b[:lo] and a[:hi] != b[:hi]
    while hi - lo > 1:
        mid = (lo + hi) // 2
        if a[:mid] == b[:mid]:
            lo = mid
        else:
            hi = mid
    return lo


def evaluate_expression(expr: NullExpression, presentation=None) -> Word:
    """Freely reduced value of the product of conjugated relators.

    Consecutive conjugators usually share long prefixes; only the differing
    tails are pushed through the reduction stack.
    """
    if presentation is not None:
        for t in expr.terms:
            presentation.resolve(t.relator)
    stack: list[int] = []

    def push(seq):
        for x in seq:
            if stack and stack[-1] == -x:
                stack.pop()
            else:
                stack.append(x)

    prev: Word = ()
    for t in expr.terms:
        x = t.conjugator
        common = common_prefix_length(prev, x)
        push(inverse(prev[common:]))
        push(x[common:])
        push(t.relator.signed_word())
        prev = x
    push(inverse(prev))
    return tuple(stack)


def verify_expression(w: Sequence[int], expr: NullExpression, presentation=None) -> bool:
    try:
        value = evaluate_expression(expr, presentation)
    except KeyError:
        return False
    return value == free_reduce(w)


def expression_metrics(expr: NullExpression) -> tuple[int, int, int]:
    return expr.area, expr.radius, expr.penetration


def cancel_inverse_pairs(expr: NullExpression) -> NullExpression:
    """Drop adjacent terms x r x⁻¹ · x r⁻¹ x⁻¹; the value is unchanged."""
    out: list[Term] = []
    for t in expr.terms:
        if out:
            p = out[-1]
            if (p.conjugator == t.conjugator and p.relator.key == t.relator.key
                    and p.relator.sign == -t.relator.sign):
                out.pop()
                continue
        out.append(t)
    return NullExpression(tuple(out), expr.target)


def rotation_expression(expr: NullExpression, k: int) -> NullExpression:
    """Given an expression for ``w``, return one for the rotation w[k:] w[:k]
    with the same area."""
    w = expr.target
    k %= max(len(w), 1)
    return expr.conjugate(inverse(w[:k])).with_target(w[k:] + w[:k])


@dataclass
class TransitionScheme:
    """Stages w_0 ⇝ w_1 ⇝ … ⇝ w_n = ∅ with a filling of each w_i w_{i+1}⁻¹."""

    stages: list = field(default_factory=list)
    fillings: list = field(default_factory=list)

    @property
    def cost(self) -> int:
        return sum(f.area for f in self.fillings)


def splice_transitions(scheme: TransitionScheme, check: bool = True) -> NullExpression:
    stages = scheme.stages
    if len(scheme.fillings) != len(stages) - 1:
        raise ValueError("scheme needs one filling per transition")
    if stages and free_reduce(stages[-1]):
        raise ValueError("last stage of a scheme must be the empty word")
    terms: list = []
    for i, filling in enumerate(scheme.fillings):
        step = tuple(stages[i]) + inverse(stages[i + 1])
        if check and not verify_expression(step, filling):
            raise VerificationError(f"stage {i} filling does not verify")
        terms.extend(filling.terms)
    return NullExpression(tuple(terms), tuple(stages[0]) if stages else ())

