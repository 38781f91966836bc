"""Tietze simplification that remembers how eliminated generators were expressed."""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass

from .words import Presentation, Word, canonical, cyclic_reduce, free_reduce, inverse, presentation, substitute


@dataclass(frozen=True)
class TietzeTrace:
    """How the generators of the input and output presentations correspond.

    ``forward[i]`` is a word in the surviving generators equal to original
    generator ``i``; ``backward[k]`` is surviving generator ``k`` written in the
    original generators (always a single letter, since survivors are originals).
    """

    forward: tuple[Word, ...]
    backward: tuple[Word, ...]


def _clean(rels: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for r in rels:
        w = cyclic_reduce(r)
        if not w:
            continue
        key = canonical(w)
        if key not in seen:
            seen.add(key)
            out.append(w)
    return out


def _solve_for(rel: Word, pos: int) -> Word:
    """Given ``rel`` with its generator at ``pos`` occurring once, express that generator."""
    x = rel[pos]
    rotated = rel[pos:] + rel[:pos]  # x * rest = 1
    rest = rotated[1:]
    w = inverse(rest)  # x = rest^-1
    return w if x > 0 else inverse(w)


def tietze_simplify(
    pres: Presentation, max_rounds: int | None = None, exact_candidates: int = 8
) -> tuple[Presentation, TietzeTrace]:
    """Eliminate generators while the total relator length does not grow.

    Each round removes duplicate relators (up to rotation and inversion), then
    considers every generator that occurs exactly once in some relator.  The
    candidates are ranked by an estimate of the resulting total length; the
    best ``exact_candidates`` are substituted for real and the shortest result
    wins; ties go to eliminating the highest-index generator, so the first
    generators survive where possible.  The round is only taken if the
    total length does not increase.
    """
    n = pres.n_gens
    rels = _clean(list(pres.relators))
    alive = list(range(n))
    forward: dict[int, Word] = {i: (i + 1,) for i in range(n)}
    rounds = 0
    while max_rounds is None or rounds < max_rounds:
        total = sum(len(r) for r in rels)
        occurrences = Counter(abs(x) - 1 for r in rels for x in r)
        candidates = []
        for ri, r in enumerate(rels):
            counts = Counter(abs(x) - 1 for x in r)
            for g, c in counts.items():
                if c == 1:
                    estimate = total - len(r) + (occurrences[g] - 1) * (len(r) - 2)
                    candidates.append((estimate, -g, len(r), ri))
        candidates.sort()
        best = None
        for _, neg_g, _, ri in candidates[:exact_candidates]:
            g = -neg_g
            r = rels[ri]
            pos = next(k for k, x in enumerate(r) if abs(x) - 1 == g)
            w = _solve_for(r, pos)
            new_rels = _clean([substitute(s, {g: w}) for k, s in enumerate(rels) if k != ri])
            key = (sum(len(s) for s in new_rels), -g, len(r))
            if best is None or key < best[0]:
                best = (key, g, w, new_rels)
        if best is None or best[0][0] > total:
            break
        _, g, w, rels = best
        alive.remove(g)
        for i in forward:
            forward[i] = substitute(forward[i], {g: w})
        rounds += 1
    renum = {g: k for k, g in enumerate(alive)}

    def relabel(w: Word) -> Word:
        return tuple((renum[abs(x) - 1] + 1) * (1 if x > 0 else -1) for x in w)

    out = presentation(len(alive), [relabel(r) for r in rels], [pres.names[g] for g in alive])
    trace = TietzeTrace(
        forward=tuple(relabel(free_reduce(forward[i])) for i in range(n)),
        backward=tuple((g + 1,) for g in alive),
    )
    return out, trace
