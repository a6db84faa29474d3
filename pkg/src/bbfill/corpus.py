"""Random null-homotopic words: reduced products of random conjugates of relators."""

from __future__ import annotations

import random

from .words import Word, free_reduce, inverse


def random_null_word(rng: random.Random, presentation, max_terms: int = 12, max_len: int = 48,
                     max_conj: int = 4) -> Word:
    """A nonempty freely reduced word of length ≤ max_len (rejection sampling)."""
    rels = [presentation.relators[k] for k in sorted(presentation.relators)]
    gens = sorted(presentation.generators)
    while True:
        w: list[int] = []
        for _ in range(rng.randint(1, max_terms)):
            r = rng.choice(rels)
            if rng.random() < 0.5:
                r = inverse(r)
            x = tuple(rng.choice(gens) * rng.choice((1, -1)) for _ in range(rng.randint(0, max_conj)))
            w.extend(x + r + inverse(x))
        w = free_reduce(w)
        if w and len(w) <= max_len:
            return w


def corpus(presentation, count: int, seed: int = 0, **kw) -> list[Word]:
    rng = random.Random(seed)
    return [random_null_word(rng, presentation, **kw) for _ in range(count)]
