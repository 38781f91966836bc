"""Presentations built from concrete groups: Cayley-graph presentations, copowers, Peiffer relators."""

from __future__ import annotations

from collections.abc import Callable, Sequence
from dataclasses import dataclass
from typing import Hashable

from ..perm import GroupError, Perm, PermGroup
from .todd_coxeter import CosetLimitExceeded, todd_coxeter
from .words import Presentation, Word, canonical, cyclic_reduce, evaluate_word, inverse, presentation


@dataclass(frozen=True)
class GroupPresentation:
    """A presentation of a permutation group on its own generators."""

    group: PermGroup
    pres: Presentation

    def evaluate(self, w: Sequence[int]) -> Perm:
        if not self.group.gens:
            return self.group.identity
        return evaluate_word(w, self.group.gens)


def _cayley_relators(G: PermGroup) -> list[Word]:
    cay = G.cayley
    tree: list[Word | None] = [None] * G.order
    tree[0] = ()
    rels = []
    for i in range(G.order):
        for j in range(len(G.gens)):
            k = cay[j][i]
            w = tree[i] + (j + 1,)  # type: ignore[operator]
            if tree[k] is None:
                tree[k] = w
            else:
                r = cyclic_reduce(w + inverse(tree[k]))  # type: ignore[arg-type]
                if r:
                    rels.append(r)
    return rels


def _complete(n_gens: int, rels: Sequence[Word], order: int) -> bool:
    try:
        return todd_coxeter(presentation(n_gens, rels), 64 * order + 256).n_cosets == order
    except CosetLimitExceeded:
        return False


def presentation_of(G: PermGroup, names: Sequence[str] | None = None) -> GroupPresentation:
    """Presentation on ``G``'s given generators.

    Starts from the Cayley-graph relators (one per non-tree edge of the
    breadth-first spanning tree, i.e. the multiplication-table presentation
    with non-generators eliminated), then drops relators that coset
    enumeration shows to be consequences of the others.
    """
    n = len(G.gens)
    rels = sorted(set(canonical(r) for r in _cayley_relators(G)), key=lambda r: (len(r), r))
    order = G.order
    # shortest prefix that already defines a group of the right order
    lo, hi = 0, len(rels)
    k = 1
    while k < len(rels) and not _complete(n, rels[:k], order):
        lo = k
        k *= 2
    hi = min(k, len(rels))
    while lo + 1 < hi:
        mid = (lo + hi) // 2
        if _complete(n, rels[:mid], order):
            hi = mid
        else:
            lo = mid
    kept = list(rels[:hi])
    for r in sorted(kept, key=lambda r: (-len(r), r)):
        trial = [s for s in kept if s != r]
        if _complete(n, trial, order):
            kept = trial
    pres = presentation(n, kept, names)
    return GroupPresentation(G, pres)


def copower_presentation(pres_m: Presentation, n_copies: int, copy_labels: Sequence[Hashable] | None = None) -> Presentation:
    """Free product of ``n_copies`` copies; generator ``(i, t)`` has index ``i + gamma*t``."""
    if n_copies < 1:
        raise ValueError("need at least one copy")
    gamma = pres_m.n_gens
    labels = list(copy_labels) if copy_labels is not None else list(range(n_copies))
    names = [f"{name}_{labels[t]}" for t in range(n_copies) for name in pres_m.names]
    if n_copies == 1:
        names = list(pres_m.names)
    rels = [shift_word(r, gamma * t) for t in range(n_copies) for r in pres_m.relators]
    return presentation(gamma * n_copies, rels, names)


def shift_word(w: Sequence[int], offset: int) -> Word:
    return tuple(x + offset if x > 0 else x - offset for x in w)


def peiffer_relators(
    gamma: int,
    n_copies: int,
    closure: Sequence[Word],
    delta_prime: Callable[[int, int], Hashable],
    act_on_copy: Callable[[int, int, Hashable], tuple[int, int]],
) -> list[Word]:
    """Peiffer elements ``(n,s)^-1 (m,t)^-1 (n,s) (m,t)^{delta'(n,s)}`` in the copower.

    ``closure`` lists words (in the ``gamma`` generators of one copy) for the
    closure of the generating set under the acting group.  ``delta_prime(k, s)``
    returns the boundary of ``(closure[k], s)`` and ``act_on_copy(k, t, q)``
    returns ``(k2, u)`` with ``(closure[k], t)^q = (closure[k2], u)``.
    Relators equal up to rotation or inversion are kept once.
    """
    seen: set[Word] = set()
    out = []
    words = [[shift_word(w, gamma * t) for t in range(n_copies)] for w in closure]
    for kn in range(len(closure)):
        for s in range(n_copies):
            q = delta_prime(kn, s)
            ns = words[kn][s]
            for km in range(len(closure)):
                for t in range(n_copies):
                    km2, u = act_on_copy(km, t, q)
                    if not 0 <= km2 < len(closure):
                        raise GroupError("action leaves the closure set")
                    mt = words[km][t]
                    r = cyclic_reduce(inverse(ns) + inverse(mt) + ns + words[km2][u])
                    if not r:
                        continue
                    key = canonical(r)
                    if key not in seen:
                        seen.add(key)
                        out.append(r)
    return out


def orbit_closure(
    start: Sequence[Perm],
    acting_gens: Sequence[Perm],
    act: Callable[[Perm, Perm], Perm],
) -> list[Perm]:
    """Closure of ``start`` under ``act(x, g)`` for ``g`` in ``acting_gens``, in discovery order."""
    out: list[Perm] = []
    seen: set[Perm] = set()
    for x in start:
        if x not in seen:
            seen.add(x)
            out.append(x)
    for x in out:
        for g in acting_gens:
            y = act(x, g)
            if y not in seen:
                seen.add(y)
                out.append(y)
    return out
