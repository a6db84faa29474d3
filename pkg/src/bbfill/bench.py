"""Brady word family, benchmark rows, CSV I/O and log-log exponent fits."""

from __future__ import annotations

import csv
import io
import time
from dataclasses import astuple, dataclass, fields
from typing import Iterable, Sequence

import numpy as np

from .pipeline import fill_bb
from .raag import NotNullHomotopic, embed_to_vertices, raag_normal_form
from .words import Word

CSV_COLUMNS = ("k", "word_len", "area", "radius", "penetration", "rarea_bound", "dehn_bound", "millis")

# fixed labels (a, b, c, d) per builtin; validated at runtime by the normal form
DEFAULT_BRADY_LABELS = {
    "GRID2": ("g0_0>g0_1", "g0_0>g1_0", "g1_0>g1_1", "g0_1>g1_1"),
}


def brady_word(cx, k: int, a: int, b: int, c: int, d: int) -> Word:
    """(da)^k (b⁻¹c⁻¹)^k (ad)^k (c⁻¹b⁻¹)^k."""
    for x in (a, b, c, d):
        if x not in cx.ends:
            raise ValueError("brady_word labels must be directed edges")
    w = (d, a) * k + (-b, -c) * k + (a, d) * k + (-c, -b) * k
    if not raag_normal_form(cx, embed_to_vertices(cx, w)).trivial:
        raise NotNullHomotopic("chosen labels do not give a null-homotopic word")
    return w


def default_labels(cx) -> tuple[int, int, int, int]:
    names = DEFAULT_BRADY_LABELS.get(cx.name)
    if names is None:
        raise KeyError(f"no default brady labels for {cx.name or 'this complex'}")
    return tuple(cx.alphabet[n] for n in names)


@dataclass(frozen=True)
class BenchmarkRow:
    k: int
    word_len: int
    area: int
    radius: int
    penetration: int
    rarea_bound: int
    dehn_bound: int
    millis: int

    @property
    def within_bounds(self) -> bool:
        return self.area <= self.dehn_bound


def run_brady_benchmark(ctx, kmax: int, labels=None, timing: bool = False) -> list[BenchmarkRow]:
    """One row per k = 1..kmax. ``millis`` is 0 unless ``timing`` is set so
    that the CSV is reproducible byte for byte."""
    cx = ctx.complex
    labels = labels or default_labels(cx)
    rows = []
    for k in range(1, kmax + 1):
        w = brady_word(cx, k, *labels)
        t0 = time.perf_counter()
        cert = fill_bb(ctx, w)
        ms = int(round((time.perf_counter() - t0) * 1000)) if timing else 0
        rows.append(BenchmarkRow(k, len(w), cert.final.area, cert.final.radius, cert.indexed.penetration,
                                 cert.rarea_bound, cert.dehn_bound, ms))
    return rows


def rows_to_csv(rows: Iterable[BenchmarkRow]) -> str:
    buf = io.StringIO()
    wr = csv.writer(buf, lineterminator="\n")
    wr.writerow(CSV_COLUMNS)
    for r in rows:
        wr.writerow(astuple(r))
    return buf.getvalue()


def rows_from_csv(text: str) -> list[BenchmarkRow]:
    rd = csv.DictReader(io.StringIO(text))
    if tuple(rd.fieldnames or ()) != CSV_COLUMNS:
        raise ValueError(f"unexpected CSV columns {rd.fieldnames}")
    return [BenchmarkRow(**{f.name: int(rec[f.name]) for f in fields(BenchmarkRow)}) for rec in rd]


@dataclass(frozen=True)
class ExponentFit:
    slope: float
    intercept: float
    residual: float  # RMS of log residuals
    points: int

    def note(self) -> str:
        return f"slope {self.slope:.4f} (rms log-residual {self.residual:.2e}, {self.points} points)"


class DegenerateData(ValueError):
    pass


def estimate_exponent(rows: Sequence[BenchmarkRow] | Sequence[tuple[int, int]]) -> ExponentFit:
    """Least-squares slope of log(area) against log(word length).

    Accepts benchmark rows or plain (length, area) pairs; needs at least four
    points with increasing k (or length) and positive values.
    """
    pts = [(r.word_len, r.area) if isinstance(r, BenchmarkRow) else tuple(r) for r in rows]
    if len(pts) < 4:
        raise DegenerateData("need at least four rows")
    if isinstance(rows[0], BenchmarkRow) and any(b.k <= a.k for a, b in zip(rows, rows[1:])):
        raise DegenerateData("rows must have increasing k")
    n = np.array([p[0] for p in pts], dtype=float)
    a = np.array([p[1] for p in pts], dtype=float)
    if np.any(n <= 0) or np.any(a <= 0):
        raise DegenerateData("lengths and areas must be positive")
    x, y = np.log(n), np.log(a)
    if np.ptp(x) == 0:
        raise DegenerateData("all word lengths are equal")
    A = np.vstack([x, np.ones_like(x)]).T
    (slope, intercept), *_ = np.linalg.lstsq(A, y, rcond=None)
    res = y - (slope * x + intercept)
    return ExponentFit(float(slope), float(intercept), float(np.sqrt(np.mean(res * res))), len(pts))
