"""Pushdown of a P_A′ expression to an indexed P_H^∞ expression.

An X-letter ``(k, a)`` stands for t^k a t^{-k}; ``a`` is a signed edge letter.
"""

from __future__ import annotations

from typing import Sequence

from .context import Context
from .presentations import IndexedRelator, PhiSystem, parse_relator_key
from .words import NullExpression, Term, VerificationError, Word, exponent_sum, free_reduce, inverse

XLetter = tuple  # (height, signed edge letter)
XWord = tuple


def x_free_reduce(xs) -> XWord:
    out: list = []
    for k, a in xs:
        if out and out[-1] == (k, -a):
            out.pop()
        else:
            out.append((k, a))
    return tuple(out)


def x_inverse(xs: XWord) -> XWord:
    return tuple((k, -a) for k, a in reversed(xs))


def expand_xword(xs: XWord, t: int) -> Word:
    out = []
    for k, a in xs:
        s = t if k >= 0 else -t
        out.extend([s] * abs(k))
        out.append(a)
        out.extend([-s] * abs(k))
    return free_reduce(out)


def lambda_rewrite(u: Sequence[int], t: int, check: bool = True) -> XWord:
    """Λ(u) for u of t-exponent sum 0."""
    k = 0
    xs = []
    for x in u:
        if x == t:
            k += 1
        elif x == -t:
            k -= 1
        else:
            xs.append((k, x))
    if k != 0:
        raise ValueError("Λ needs a word of height 0")
    out = x_free_reduce(xs)
    if check and expand_xword(out, t) != free_reduce(u):
        raise VerificationError("expansion of Λ(u) is not freely equal to u")
    return out


def psi_map(xs: XWord, phi: PhiSystem) -> Word:
    out: list[int] = []
    for k, a in xs:
        out.extend(phi((a,), k))
    return tuple(out)


def classify(ctx: Context, key: str, k: int) -> IndexedRelator:
    """The indexed relator that the conjugate t^k r t^{-k} of a P_A′ relator maps to."""
    kind, params, _ = parse_relator_key(ctx.complex, key)
    if kind in ("edge", "tri", "atri"):
        return ctx.P_H_inf.relator(kind, params, k)
    if kind == "ext":
        return ctx.P_H_inf.relator("s", params, k)
    raise VerificationError(f"relator {key} has no indexed image")


def _classified(ctx: Context, key: str, k: int, sign: int):
    memo = ctx.memo.setdefault("classified", {})
    hit = memo.get((key, k, sign))
    if hit is None:
        r = classify(ctx, key, k)
        hit = memo[(key, k, sign)] = (r, r.ref(ctx.complex, sign))
    return hit


def pushdown(ctx: Context, w: Sequence[int], expr: NullExpression) -> NullExpression:
    t = ctx.complex.t
    if t in w or -t in w:
        raise ValueError("pushdown expects a t-free word")
    terms = []
    for term in expr.terms:
        x = term.conjugator
        k = exponent_sum(x, t)
        xbar = lambda_rewrite(x + (-t,) * k if k >= 0 else x + (t,) * -k, t, check=False)
        z = term.relator.signed_word()
        tk = (t,) * k if k >= 0 else (-t,) * -k
        zbar = lambda_rewrite(tk + z + inverse(tk), t, check=False)
        image = psi_map(zbar, ctx.phi)
        r, ref = _classified(ctx, term.relator.key, k, term.relator.sign)
        expected = r.word if term.relator.sign > 0 else inverse(r.word)
        if image != expected:
            raise VerificationError(f"Ψ(Λ(t^k z t^-k)) does not match {r.key(ctx.complex)}")
        terms.append(Term(psi_map(xbar, ctx.phi), ref))
    return NullExpression(tuple(terms), tuple(w))
