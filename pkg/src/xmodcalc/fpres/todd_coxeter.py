"""Coset enumeration over the trivial subgroup (HLT strategy with lookahead).

Cosets are defined row by row; each live coset scans every relator, filling
gaps with new definitions, and finally completes its own row.  When the live
coset count reaches ``max_cosets`` a lookahead pass scans all relators at all
cosets without defining anything, in the hope of collapsing the table.
"""

from __future__ import annotations

from collections.abc import Sequence
from dataclasses import dataclass

from ..perm import GroupError, Perm, PermGroup
from .words import Presentation, Word, evaluate_word

DEFAULT_MAX_COSETS = 10**6


class CosetLimitExceeded(GroupError):
    pass


@dataclass(frozen=True)
class CosetTable:
    """Closed coset table of a presentation over the trivial subgroup.

    ``action[j]`` is the permutation of cosets induced by generator ``j``
    (right multiplication), i.e. the right regular representation.
    """

    n_cosets: int
    action: tuple[Perm, ...]

    def evaluate(self, w: Sequence[int]) -> Perm:
        if not self.action:
            return Perm.identity(self.n_cosets)
        return evaluate_word(w, self.action)

    def group(self) -> PermGroup:
        return PermGroup(self.n_cosets, self.action, name="regular")


class _Enumerator:
    def __init__(self, pres: Presentation, max_cosets: int):
        self.ncols = 2 * pres.n_gens
        self.rels = [[self._col(x) for x in r] for r in pres.relators]
        self.max_cosets = max_cosets
        self.table: list[list[int]] = [[-1] * self.ncols]
        self.p = [0]
        self.live = 1

    @staticmethod
    def _col(x: int) -> int:
        return 2 * (abs(x) - 1) + (1 if x < 0 else 0)

    def rep(self, c: int) -> int:
        p = self.p
        r = c
        while p[r] != r:
            r = p[r]
        while p[c] != r:
            p[c], c = r, p[c]
        return r

    def define(self, a: int, x: int) -> None:
        if self.live >= self.max_cosets:
            self.lookahead()
            if self.live >= self.max_cosets:
                raise CosetLimitExceeded(f"coset limit {self.max_cosets} exceeded")
            if self.p[a] != a or self.table[a][x] >= 0:
                return
        b = len(self.table)
        self.table.append([-1] * self.ncols)
        self.p.append(b)
        self.table[a][x] = b
        self.table[b][x ^ 1] = a
        self.live += 1

    def merge(self, k: int, l: int, queue: list[int]) -> None:
        a = self.rep(k)
        b = self.rep(l)
        if a != b:
            lo, hi = (a, b) if a < b else (b, a)
            self.p[hi] = lo
            queue.append(hi)
            self.live -= 1

    def coincidence(self, a: int, b: int) -> None:
        queue: list[int] = []
        self.merge(a, b, queue)
        table = self.table
        i = 0
        while i < len(queue):
            g = queue[i]
            i += 1
            row = table[g]
            for x in range(self.ncols):
                d = row[x]
                if d < 0:
                    continue
                table[d][x ^ 1] = -1
                mu = self.rep(g)
                nu = self.rep(d)
                if table[mu][x] >= 0:
                    self.merge(nu, table[mu][x], queue)
                elif table[nu][x ^ 1] >= 0:
                    self.merge(mu, table[nu][x ^ 1], queue)
                else:
                    table[mu][x] = nu
                    table[nu][x ^ 1] = mu

    def scan(self, a: int, rel: list[int], fill: bool) -> None:
        table = self.table
        while True:
            f, i = a, 0
            b, j = a, len(rel) - 1
            while True:
                while i <= j and table[f][rel[i]] >= 0:
                    f = table[f][rel[i]]
                    i += 1
                if i > j:
                    if f != b:
                        self.coincidence(f, b)
                    return
                while j >= i and table[b][rel[j] ^ 1] >= 0:
                    b = table[b][rel[j] ^ 1]
                    j -= 1
                if j < i:
                    self.coincidence(f, b)
                    return
                if i == j:
                    table[f][rel[i]] = b
                    table[b][rel[i] ^ 1] = f
                    return
                if not fill:
                    return
                self.define(f, rel[i])
                if self.p[a] != a:
                    return
                if self.p[f] != f or self.p[b] != b:
                    break  # a lookahead collapsed part of the scan; restart

    def lookahead(self) -> None:
        c = 0
        while c < len(self.table):
            if self.p[c] == c:
                for rel in self.rels:
                    if self.p[c] != c:
                        break
                    self.scan(c, rel, fill=False)
            c += 1

    def run(self) -> None:
        a = 0
        while a < len(self.table):
            if self.p[a] == a:
                for rel in self.rels:
                    if self.p[a] != a:
                        break
                    self.scan(a, rel, fill=True)
                if self.p[a] == a:
                    for x in range(self.ncols):
                        if self.p[a] != a:
                            break
                        if self.table[a][x] < 0:
                            self.define(a, x)
            a += 1

    def standardized(self) -> list[list[int]]:
        # renumber live cosets breadth-first from coset 0 in column order
        order = [0]
        new = {0: 0}
        for c in order:
            for x in range(self.ncols):
                d = self.rep(self.table[c][x])
                if d not in new:
                    new[d] = len(order)
                    order.append(d)
        return [[new[self.rep(self.table[c][x])] for x in range(self.ncols)] for c in order]


def todd_coxeter(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate cosets of the trivial subgroup; raises when ``max_cosets`` is exceeded."""
    if max_cosets < 1:
        raise ValueError("max_cosets must be positive")
    en = _Enumerator(pres, max_cosets)
    en.run()
    rows = en.standardized()
    n = len(rows)
    action = tuple(Perm(rows[c][2 * j] for c in range(n)) for j in range(pres.n_gens))
    return CosetTable(n, action)


def group_order(pres: Presentation, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    return todd_coxeter(pres, max_cosets).n_cosets


def relators_hold(table: CosetTable, relators: Sequence[Word]) -> bool:
    return all(table.evaluate(r).is_identity() for r in relators)


def prune_relators(pres: Presentation, order: int, slack: int = 20) -> Presentation:
    """Drop relators, longest first, that are consequences of the rest.

    ``order`` is the known finite order of the presented group.  Removing a
    relator gives a group mapping onto the original, so it is redundant
    exactly when enumeration still closes at ``order`` cosets.  Enumerations
    that exceed ``slack * order`` cosets count as "needed".
    """
    rels = pres.relators
    keep = set(range(len(rels)))
    for k in sorted(keep, key=lambda i: -len(rels[i])):
        trial = tuple(rels[i] for i in sorted(keep - {k}))
        try:
            if group_order(Presentation(pres.n_gens, trial, pres.names), slack * order) == order:
                keep.discard(k)
        except CosetLimitExceeded:
            pass
    return Presentation(pres.n_gens, tuple(rels[i] for i in sorted(keep)), pres.names)
