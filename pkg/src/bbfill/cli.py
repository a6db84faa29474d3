"""The ``bb`` command line."""

from __future__ import annotations

import sys
from pathlib import Path

import click

from .bench import (estimate_exponent, rows_from_csv, rows_to_csv, run_brady_benchmark)
from .builtins import get_builtin
from .complex import ComplexError, build_tree_data, load_complex, simple_connectivity_report
from .context import DEFAULT_MAX_STATES, build_context, scaled
from .oracle import brute_force_area
from .pipeline import CERT_MAGIC, dump_certificate, fill_bb, guarantees, verify_certificate
from .raag import NotNullHomotopic
from .words import AlphabetError, VerificationError


def load_source(source: str):
    """``builtin:NAME`` or a path to a JSON complex file; returns (complex, base)."""
    if source.startswith("builtin:"):
        return get_builtin(source[len("builtin:"):]), None
    text = Path(source).read_text()
    return load_complex(text, name=Path(source).stem)


def _context(source: str, q: str | None, max_states: int | None):
    cx, base = load_source(source)
    try:
        return build_context(cx, q or base, max_states)
    except ComplexError as exc:
        raise click.ClickException(str(exc))


def _read_words(ctx, path: str):
    out = []
    for line in Path(path).read_text().splitlines():
        line = line.split("#", 1)[0].strip()
        if line:
            out.append(ctx.complex.alphabet.parse("" if line == "-" else line))
    return out


complex_opt = click.option("-c", "--complex", "source", required=True, help="complex file or builtin:NAME")
base_opt = click.option("-q", "--base", default=None, help="base vertex of the spanning tree")
states_opt = click.option("--max-states", type=int, default=None, help="null-homotopy search budget")


@click.group()
def main():
    """Dehn-function fillings for Bestvina–Brady groups."""


@main.command()
@complex_opt
@base_opt
@states_opt
def build(source, base, max_states):
    """Build the presentations and report the constants."""
    ctx = _context(source, base, max_states)
    cx = ctx.complex
    g = guarantees(ctx)
    a, b, c = ctx.constants.rarea_coefficients
    click.echo(f"complex {cx.name or source}: {len(cx.vertices)} vertices, {len(cx.edges)} edges, "
               f"{len(cx.triangles)} triangles, digest {cx.digest()}")
    click.echo(f"base vertex q = {ctx.q}")
    click.echo(f"P_A: {len(ctx.P_A)} relators; P_H: {len(ctx.P_H)}; P_A': {len(ctx.P_A_ext)}")
    click.echo(f"L = {ctx.L}  K = {ctx.K}  (max m(e) = {ctx.K // 3})")
    click.echo(f"rarea_bound(n) = {a}n^2 + {b}n + {c}")
    click.echo(f"transport constants c1 = {g.c1}  c2 = {g.c2}  c3 = {g.c3}")
    click.echo(f"alpha'(n) = {g.c1}*ceil((2n)^2/2) + {g.c2}n   pi'(n) = {g.c3}*(2n + {ctx.L + 1})")
    for n in (8, 16, 32, 64):
        click.echo(f"dehn_bound({n}) = {g.dehn(n)}")


@main.command()
@complex_opt
@base_opt
@states_opt
@click.option("-w", "--words", "words_path", required=True, help="file with one word per line")
@click.option("-o", "--out", "out_path", required=True, help="certificate file to write")
def fill(source, base, max_states, words_path, out_path):
    """Fill every word of a file and write certificates."""
    ctx = _context(source, base, max_states)
    try:
        words = _read_words(ctx, words_path)
    except AlphabetError as exc:
        raise click.ClickException(str(exc))
    chunks = []
    failed = 0
    for w in words:
        try:
            cert = fill_bb(ctx, w)
        except (NotNullHomotopic, VerificationError, ValueError) as exc:
            click.echo(f"FAIL {ctx.complex.alphabet.format(w)}: {exc}", err=True)
            failed += 1
            continue
        chunks.append(dump_certificate(ctx, cert))
        click.echo(f"ok n={cert.n} area={cert.final.area} radius={cert.final.radius} "
                   f"penetration={cert.indexed.penetration} dehn_bound={cert.dehn_bound}")
    Path(out_path).write_text("".join(chunks))
    if failed:
        sys.exit(1)


def split_certificates(text: str) -> list[str]:
    parts = text.split(CERT_MAGIC + "\n")
    return [CERT_MAGIC + "\n" + p for p in parts[1:]] if parts[0].strip() == "" else [text]


@main.command()
@complex_opt
@base_opt
@states_opt
@click.option("--cert", "cert_path", required=True)
def verify(source, base, max_states, cert_path):
    """Re-check certificates from the file alone; exit 1 on any failure."""
    ctx = _context(source, base, max_states)
    certs = split_certificates(Path(cert_path).read_text())
    bad = 0
    for i, text in enumerate(certs):
        rep = verify_certificate(ctx, text)
        status = "PASS" if rep.ok else "FAIL"
        click.echo(f"certificate {i}: {status} area={rep.area} radius={rep.radius}"
                   + ("" if rep.ok else " (" + "; ".join(rep.reasons) + ")"))
        bad += not rep.ok
    if bad or not certs:
        sys.exit(1)


@main.command()
@complex_opt
@base_opt
@states_opt
@click.option("-w", "--words", "words_path", required=True)
@click.option("--max-len", type=int, default=None, help="word-length cap (default |w| + 2)")
@click.option("--max-area", type=int, default=None, help="BFS depth cap")
def oracle(source, base, max_states, words_path, max_len, max_area):
    """Brute-force P_H area of tiny words."""
    ctx = _context(source, base, max_states)
    for w in _read_words(ctx, words_path):
        res = brute_force_area(ctx.P_H, w, max_len=max_len, max_area=max_area, index=ctx.index_H)
        area = "not filled" if res.area is None else str(res.area)
        click.echo(f"{ctx.complex.alphabet.format(w) or '-'}\tarea={area}\t{res.exactness}\tstates={res.explored}")


@main.command()
@complex_opt
@base_opt
@states_opt
@click.option("--family", type=click.Choice(["brady"]), default="brady")
@click.option("--kmax", type=int, default=8)
@click.option("--labels", default=None, help="a,b,c,d edge names")
@click.option("--csv", "csv_path", required=True)
@click.option("--timing/--no-timing", default=False, help="record wall time in millis (breaks byte-exact CSVs)")
def bench(source, base, max_states, family, kmax, labels, csv_path, timing):
    """Run the benchmark family and write one CSV row per k."""
    ctx = _context(source, base, max_states)
    lab = None
    if labels:
        lab = tuple(ctx.complex.alphabet[n] for n in labels.split(","))
        if len(lab) != 4:
            raise click.ClickException("--labels needs four edge names")
    try:
        rows = run_brady_benchmark(ctx, kmax, lab, timing=timing)
    except (KeyError, NotNullHomotopic) as exc:
        raise click.ClickException(str(exc))
    Path(csv_path).write_text(rows_to_csv(rows))
    for r in rows:
        click.echo(f"k={r.k} n={r.word_len} area={r.area} dehn_bound={r.dehn_bound}")


@main.command()
@click.option("--csv", "csv_path", required=True)
def exponent(csv_path):
    """Fit the log-log slope of area against word length."""
    rows = rows_from_csv(Path(csv_path).read_text())
    fit = estimate_exponent(rows)
    click.echo(fit.note())


@main.command()
@complex_opt
@base_opt
@states_opt
def check(source, base, max_states):
    """Simple-connectivity evidence; exit 1 when UNKNOWN."""
    cx, b = load_source(source)
    tree = build_tree_data(cx, base or b)
    rep = simple_connectivity_report(tree, max_states or scaled(DEFAULT_MAX_STATES))
    click.echo(rep.format(cx))
    if rep.status != "PASS":
        sys.exit(1)


if __name__ == "__main__":
    main()
