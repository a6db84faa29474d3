"""Named complexes used by the CLI, tests and benchmarks."""

from __future__ import annotations

import re

from .complex import ComplexError, FlagComplex


def tri() -> FlagComplex:
    return FlagComplex("uvw", [("u", "v"), ("v", "w"), ("u", "w")], name="TRI")


def path() -> FlagComplex:
    return FlagComplex("uvw", [("u", "v"), ("v", "w")], name="PATH")


def octa() -> FlagComplex:
    # boundary of the octahedron: all pairs except the three antipodal ones
    vs = ["a", "b", "c", "d", "n", "s"]
    antipodal = {frozenset("ac"), frozenset("bd"), frozenset("ns")}
    edges = [(x, y) for i, x in enumerate(vs) for y in vs[i + 1:] if frozenset((x, y)) not in antipodal]
    return FlagComplex(vs, edges, name="OCTA")


def grid(m: int) -> FlagComplex:
    """Flag triangulation of an m×m square: every unit square is cut by its
    (i, j)–(i+1, j+1) diagonal."""
    if m < 1:
        raise ComplexError("GRID needs m >= 1")
    name = lambda i, j: f"g{i}_{j}"
    vs = [name(i, j) for i in range(m + 1) for j in range(m + 1)]
    edges = []
    for i in range(m + 1):
        for j in range(m + 1):
            if i < m:
                edges.append((name(i, j), name(i + 1, j)))
            if j < m:
                edges.append((name(i, j), name(i, j + 1)))
            if i < m and j < m:
                edges.append((name(i, j), name(i + 1, j + 1)))
    return FlagComplex(vs, edges, name=f"GRID{m}")


def annulus() -> FlagComplex:
    """Inner square abcd, outer square ABCD, strip triangulated; not simply connected."""
    inner, outer = "abcd", "ABCD"
    edges = []
    for i in range(4):
        j = (i + 1) % 4
        edges += [(inner[i], inner[j]), (outer[i], outer[j]), (inner[i], outer[i]), (inner[i], outer[j])]
    return FlagComplex(inner + outer, edges, name="ANNULUS")


SIMPLY_CONNECTED = ("TRI", "PATH", "OCTA", "GRID1", "GRID2", "GRID3")


def builtin_complexes() -> dict[str, FlagComplex]:
    out = {"TRI": tri(), "PATH": path(), "OCTA": octa(), "ANNULUS": annulus()}
    for m in (1, 2, 3):
        out[f"GRID{m}"] = grid(m)
    return out


def get_builtin(name: str) -> FlagComplex:
    key = name.upper()
    mo = re.fullmatch(r"GRID\(?(\d+)\)?", key)
    if mo:
        return grid(int(mo.group(1)))
    table = {"TRI": tri, "PATH": path, "OCTA": octa, "ANNULUS": annulus}
    if key not in table:
        raise ComplexError(f"unknown builtin complex {name!r}")
    return table[key]()
