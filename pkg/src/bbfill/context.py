"""Everything derived once per (complex, base vertex): tree, presentations,
Φ system, homotopy cache and constants. Built once, then read-only."""

from __future__ import annotations

import os
from dataclasses import dataclass, field

from .complex import (ComplexError, FlagComplex, NullHomotopyCache, TreeData, build_tree_data,
                      edge_cycle_homotopy_cache)
from .presentations import (ConstantsRecord, IndexedPresentation, PhiSystem, Presentation,
                            dicks_leary, extended_presentation, raag_presentation)
from .rewriting import RotationIndex

DEFAULT_MAX_STATES = 200_000


def budget_scale() -> float:
    """Multiplier for every search budget, from the BB_BUDGET environment variable."""
    try:
        return max(float(os.environ.get("BB_BUDGET", "1")), 0.0)
    except ValueError:
        return 1.0


def scaled(n: int) -> int:
    return max(1, int(n * budget_scale()))


@dataclass
class Context:
    complex: FlagComplex
    tree: TreeData
    P_A: Presentation
    P_A_ext: Presentation
    P_H: Presentation
    P_H_inf: IndexedPresentation
    phi: PhiSystem
    cache: NullHomotopyCache
    constants: ConstantsRecord
    index_A: RotationIndex
    index_ext: RotationIndex
    index_H: RotationIndex
    memo: dict = field(default_factory=dict)

    @property
    def q(self) -> str:
        return self.tree.base

    @property
    def L(self) -> int:
        return self.constants.L

    @property
    def K(self) -> int:
        return self.constants.K


def build_context(cx: FlagComplex, q: str | None = None, max_states: int | None = None) -> Context:
    tree = build_tree_data(cx, q)
    if max_states is None:
        max_states = scaled(DEFAULT_MAX_STATES)
    cache = edge_cycle_homotopy_cache(tree, max_states)
    P_A = raag_presentation(cx)
    P_ext = extended_presentation(tree)
    P_H = dicks_leary(cx)
    phi = PhiSystem(tree)
    _check_extension_relators(cx, tree.base, P_ext)
    return Context(
        complex=cx, tree=tree, P_A=P_A, P_A_ext=P_ext, P_H=P_H,
        P_H_inf=IndexedPresentation(phi), phi=phi, cache=cache,
        constants=ConstantsRecord(tree.diameter, cache.K),
        index_A=RotationIndex.of(P_A), index_ext=RotationIndex.of(P_ext),
        index_H=RotationIndex.of(P_H),
    )


def _check_extension_relators(cx: FlagComplex, q: str, P_ext: Presentation):
    """Every relator of P_A′ must be trivial in A under e ↦ ιe(τe)⁻¹, t ↦ q."""
    from .raag import embed_to_vertices, raag_normal_form

    for key, word in P_ext.relators.items():
        if not raag_normal_form(cx, embed_to_vertices(cx, word, q)).trivial:
            raise ComplexError(f"relator {key} is not null-homotopic in A")
