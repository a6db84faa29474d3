"""End-to-end filling over the Dicks–Leary presentation and its certificates.

Pipeline: embed → fill_raag → transport_to_extended → pushdown → expand every
indexed relator → splice. Every stage is verified; a failure raises.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Sequence

from .context import Context
from .lemmas import expand_indexed_relator
from .presentations import parse_relator_key
from .pushdown import pushdown
from .raag import (SHUFFLE_GUARANTEE, NotNullHomotopic, embed_to_vertices, fill_raag,
                   raag_normal_form, transport_bounds, transport_data, transport_to_extended)
from .words import (NullExpression, RelatorRef, Term, VerificationError, Word, cancel_inverse_pairs,
                    evaluate_expression, free_reduce, verify_expression)

CERT_MAGIC = "# bbfill certificate v1"


@dataclass(frozen=True)
class Guarantees:
    """α′, π′ and the derived Dehn bound for one complex."""

    L: int
    K: int
    c1: int
    c2: int
    c3: int

    def rarea(self, n: int) -> int:
        L, K = self.L, self.K
        return (3 * K + 4) * n * n + (6 * L * L + 2 * K + 6) * n + L + K + 5

    def alpha(self, n: int) -> int:
        # shuffle area on |embed(w)| = 2n, then transport overhead
        return self.c1 * ((4 * n * n + 1) // 2) + self.c2 * n

    def pi(self, n: int) -> int:
        return self.c3 * (2 * n + self.L + 1)

    def dehn(self, n: int) -> int:
        return self.alpha(n) * self.rarea(self.pi(n))


def guarantees(ctx: Context) -> Guarantees:
    d = transport_data(ctx)
    return Guarantees(ctx.L, ctx.K, d.c1, d.c2, d.c3)


@dataclass(frozen=True)
class StageMetrics:
    area: int
    radius: int
    penetration: int = 0


@dataclass
class FillingCertificate:
    word: Word
    complex_digest: str
    base: str
    guarantees: Guarantees
    raag: NullExpression
    extended: NullExpression
    indexed: NullExpression
    final: NullExpression
    flags: dict = field(default_factory=dict)

    @property
    def n(self) -> int:
        return len(self.word)

    def metrics(self) -> dict[str, StageMetrics]:
        return {
            "raag": StageMetrics(self.raag.area, self.raag.radius),
            "extended": StageMetrics(self.extended.area, self.extended.radius),
            "pushdown": StageMetrics(self.indexed.area, self.indexed.radius, self.indexed.penetration),
            "final": StageMetrics(self.final.area, self.final.radius),
        }

    @property
    def rarea_bound(self) -> int:
        return self.guarantees.rarea(self.indexed.penetration)

    @property
    def dehn_bound(self) -> int:
        return self.guarantees.dehn(self.n)

    @property
    def prop5_holds(self) -> bool:
        return self.final.area <= self.indexed.area * self.rarea_bound <= self.dehn_bound

    @property
    def ok(self) -> bool:
        return all(self.flags.values())


def _expand_term(ctx: Context, term: Term, verified: dict) -> NullExpression:
    key = term.relator.key
    x = verified.get(key)
    if x is None:
        kind, params, level = parse_relator_key(ctx.complex, key)
        r = ctx.P_H_inf.relator(kind, params, level)
        x = expand_indexed_relator(ctx, r)
        if not verify_expression(r.word, x, ctx.P_H):
            raise VerificationError(f"expansion of {key} does not verify")
        if x.area > ctx.constants.rarea_bound(r.index):
            raise VerificationError(f"expansion of {key} exceeds the relational area bound")
        verified[key] = x
    if term.relator.sign < 0:
        x = x.inverse()
    return x.conjugate(term.conjugator)


def fill_bb(ctx: Context, w: Sequence[int]) -> FillingCertificate:
    cx = ctx.complex
    w = tuple(w)
    if any(abs(x) not in cx.ends for x in w):
        raise ValueError("fill_bb expects a word over directed edges")
    v = embed_to_vertices(cx, w)
    if not raag_normal_form(cx, v).trivial:
        raise NotNullHomotopic("word is not null-homotopic in the Bestvina–Brady group")
    flags = {}
    E = fill_raag(ctx, v)
    flags["raag_verified"] = verify_expression(v, E, ctx.P_A)
    flags["raag_guarantee"] = SHUFFLE_GUARANTEE.holds(len(v), E)
    T = transport_to_extended(ctx, w, E)
    flags["extended_verified"] = verify_expression(w, T, ctx.P_A_ext)
    area_b, rad_b = transport_bounds(ctx)
    flags["transport_bounds"] = T.area <= area_b(E.area, len(w)) and T.radius <= rad_b(E.radius, len(w))
    I = pushdown(ctx, w, T)
    flags["pushdown_verified"] = verify_expression(w, I, ctx.P_H_inf)
    flags["pushdown_area_exact"] = I.area == T.area
    flags["pushdown_penetration"] = I.penetration <= T.radius
    verified = ctx.memo.setdefault("verified_expansions", {})
    terms: list = []
    for term in I.terms:
        terms.extend(_expand_term(ctx, term, verified).terms)
    F = cancel_inverse_pairs(NullExpression(tuple(terms), w))
    flags["final_verified"] = verify_expression(w, F, ctx.P_H)
    cert = FillingCertificate(w, cx.digest(), ctx.q, guarantees(ctx), E, T, I, F, flags)
    flags["prop5"] = cert.prop5_holds
    flags["alpha_pi"] = T.area <= cert.guarantees.alpha(len(w)) and T.radius <= cert.guarantees.pi(len(w))
    failed = [k for k, ok in flags.items() if not ok]
    if failed:
        raise VerificationError(f"stage checks failed: {', '.join(failed)}")
    return cert


# certificate text format ------------------------------------------------------

def _fmt(cx, w) -> str:
    return cx.alphabet.format(w) if w else "-"


def _parse(cx, s: str) -> Word:
    return () if s.strip() == "-" else cx.alphabet.parse(s)


def dump_certificate(ctx: Context, cert: FillingCertificate) -> str:
    cx = ctx.complex
    g = cert.guarantees
    lines = [CERT_MAGIC, f"complex\t{cert.complex_digest}", f"base\t{cert.base}",
             f"word\t{_fmt(cx, cert.word)}", f"constants\tL={g.L} K={g.K} c1={g.c1} c2={g.c2} c3={g.c3}"]
    for name, m in cert.metrics().items():
        lines.append(f"stage\t{name}\tarea={m.area} radius={m.radius} penetration={m.penetration}")
    lines.append(f"bounds\trarea={cert.rarea_bound} dehn={cert.dehn_bound}")
    lines.append(f"terms\t{cert.final.area}")
    for t in cert.final.terms:
        lines.append(f"{_fmt(cx, t.conjugator)}\t{t.relator.key}\t{t.relator.sign:+d}")
    return "\n".join(lines) + "\n"


def _kv(s: str) -> dict:
    return {k: int(v) for k, v in (p.split("=") for p in s.split())}


@dataclass
class VerifyReport:
    ok: bool
    reasons: list
    area: int = 0
    radius: int = 0


def verify_certificate(ctx: Context, text: str) -> VerifyReport:
    """Re-check a certificate from its text and the complex alone."""
    cx = ctx.complex
    reasons = []
    lines = text.splitlines()
    if not lines or lines[0] != CERT_MAGIC:
        return VerifyReport(False, ["missing certificate header"])
    header: dict = {}
    stages: dict = {}
    i = 1
    try:
        while i < len(lines):
            parts = lines[i].split("\t")
            i += 1
            if parts[0] == "stage":
                stages[parts[1]] = _kv(parts[2])
            elif parts[0] == "terms":
                header["terms"] = int(parts[1])
                break
            else:
                header[parts[0]] = parts[1]
        word = _parse(cx, header["word"])
        consts = _kv(header["constants"])
        bounds = _kv(header["bounds"])
        terms = []
        for line in lines[i:]:
            conj, key, sign = line.split("\t")
            relw = ctx.P_H.relators.get(key)
            if relw is None:
                return VerifyReport(False, [f"relator {key} is not a P_H relator"])
            terms.append(Term(_parse(cx, conj), RelatorRef(key, relw, int(sign))))
    except (KeyError, ValueError) as exc:
        return VerifyReport(False, [f"malformed certificate: {exc}"])
    if header["complex"] != cx.digest():
        reasons.append("complex digest mismatch")
    if header.get("base") != ctx.q:
        reasons.append("base vertex mismatch")
    if len(terms) != header["terms"]:
        reasons.append("term count mismatch")
    expr = NullExpression(tuple(terms), word)
    if evaluate_expression(expr) != free_reduce(word):
        reasons.append("expression does not evaluate to the word")
    if consts["L"] != ctx.L or consts["K"] != ctx.K:
        reasons.append("constants L, K differ from the recomputed ones")
    g = Guarantees(ctx.L, ctx.K, consts["c1"], consts["c2"], consts["c3"])
    push = stages.get("pushdown", {})
    fin = stages.get("final", {})
    if fin.get("area") != expr.area or fin.get("radius") != expr.radius:
        reasons.append("recorded final metrics differ from the expression")
    rb, db = g.rarea(push.get("penetration", 0)), g.dehn(len(word))
    if bounds.get("rarea") != rb or bounds.get("dehn") != db:
        reasons.append("recorded bounds differ from the recomputed ones")
    if not expr.area <= push.get("area", -1) * rb <= db:
        reasons.append("area inequality fails")
    return VerifyReport(not reasons, reasons, expr.area, expr.radius)
