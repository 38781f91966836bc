"""Recognising small groups: named families, fingerprints, isomorphism and automorphism search."""

from __future__ import annotations

import hashlib
import itertools
import json
from collections import Counter
from collections.abc import Iterator
from dataclasses import asdict, dataclass
from functools import lru_cache
from math import gcd

from .perm import (
    BudgetExceeded,
    GroupAction,
    GroupError,
    GroupHom,
    Perm,
    PermGroup,
    abelian_invariants,
    cyclic_group,
    derived_subgroup,
    direct_product,
    generated_subgroup,
    quotient_group,
    semidirect_product,
    symmetric_group,
)

DEFAULT_SEARCH_BUDGET = 10**7
DEFAULT_AUT_BUDGET = 100


# ---------------------------------------------------------------------------
# named families


def _units(n: int) -> list[int]:
    return [a for a in range(1, n) if gcd(a, n) == 1] if n > 1 else [0]


def _affine(n: int, a: int, b: int) -> Perm:
    return Perm((a * x + b) % n for x in range(n))


def holomorph(n: int) -> PermGroup:
    """``x -> ax + b`` on ``Z/n``, order ``n * phi(n)``."""
    if n < 2:
        raise ValueError("holomorph needs n >= 2")
    gens = [_affine(n, 1, 1)]
    unit_gens: list[int] = []
    seen = {1}
    for a in _units(n):
        if a in seen:
            continue
        unit_gens.append(a)
        gens.append(_affine(n, a, 0))
        frontier = list(seen)
        for u in frontier:
            for g in unit_gens:
                v = (u * g) % n
                if v not in seen:
                    seen.add(v)
                    frontier.append(v)
    return PermGroup(n, gens, name=f"H{n}")


def even_part(G: PermGroup, name: str | None = None) -> PermGroup:
    return generated_subgroup(G, (x for x in G.elements if x.sign() == 1), name=name)


def dihedral(order: int) -> PermGroup:
    """``D_2n`` of the given (even) order ``2n``."""
    if order < 2 or order % 2:
        raise ValueError("dihedral order must be even and >= 2")
    n = order // 2
    if n == 1:
        return PermGroup(2, [Perm((1, 0))], name="D2")
    if n == 2:
        return PermGroup(4, [Perm((1, 0, 3, 2)), Perm((2, 3, 0, 1))], name="D4")
    rot = Perm(tuple(range(1, n)) + (0,))
    ref = Perm((-x) % n for x in range(n))
    return PermGroup(n, [rot, ref], name=f"D{order}")


def alternating(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n < 3:
        return PermGroup(max(n, 1), [], name=f"A{n}")
    gens = [Perm.from_cycles([(1, 2, k)], n) for k in range(3, n + 1)]
    return PermGroup(n, gens, name=f"A{n}")


def symmetric(n: int) -> PermGroup:
    if n < 1:
        raise ValueError("n must be positive")
    if n == 1:
        return PermGroup(1, [], name="S1")
    gens = [Perm.from_cycles([(1, 2)], n)]
    if n > 2:
        gens.append(Perm.from_cycles([tuple(range(1, n + 1))], n))
    return PermGroup(n, gens, name=f"S{n}")


def _vectors(d: int, p: int) -> list[tuple[int, ...]]:
    return [v for v in itertools.product(range(p), repeat=d) if any(v)]


def _matrix_perm(A, vecs, index, p) -> Perm:
    # row vectors acted on the right: v -> v A
    d = len(A)
    return Perm(index[tuple(sum(v[i] * A[i][j] for i in range(d)) % p for j in range(d))] for v in vecs)


def matrix_group(kind: str, d: int, p: int) -> PermGroup:
    """``SL(d,p)`` or ``GL(d,p)`` acting on the nonzero vectors of ``F_p^d``."""
    vecs = _vectors(d, p)
    index = {v: i for i, v in enumerate(vecs)}
    gens = []
    for i in range(d):
        for j in range(d):
            if i != j:
                E = [[int(r == c) for c in range(d)] for r in range(d)]
                E[i][j] = 1
                gens.append(_matrix_perm(E, vecs, index, p))
    if kind == "GL" and p > 2:
        w = next(a for a in range(2, p) if all(pow(a, k, p) != 1 for k in range(1, p - 1)))
        D = [[int(r == c) for c in range(d)] for r in range(d)]
        D[0][0] = w
        gens.append(_matrix_perm(D, vecs, index, p))
    G = PermGroup(len(vecs), gens, name=f"{kind}({d},{p})")
    return G


def quaternion() -> PermGroup:
    Q8 = derived_subgroup(matrix_group("SL", 2, 3))
    Q8.name = "Q8"
    return Q8


def abelian_group(invariants) -> PermGroup:
    facs = [cyclic_group(d) for d in invariants if d > 1]
    if not facs:
        return PermGroup(1, [], name="I")
    if len(facs) == 1:
        return facs[0]
    G = direct_product(*facs).group
    G.name = abelian_label(list(invariants))
    return G


def generalized_dihedral(invariants) -> PermGroup:
    """``A x| C2`` with the involution inverting every element of abelian ``A``."""
    A = abelian_group(invariants)
    C2 = cyclic_group(2)
    act = GroupAction(C2, A, [[a.inverse() for a in A.gens]])
    G = semidirect_product(C2, A, act).group
    G.name = "Dih(" + abelian_label(list(invariants)) + ")"
    return G


def metacyclic(p: int, n: int, a: int) -> PermGroup:
    """``<g, h | g^p, h^n, g^-1 h^-1 g h^a>`` as ``h: x -> x+1``, ``g: x -> ax`` on ``Z/n``."""
    if pow(a, p, n) != 1 % n:
        raise ValueError("need a^p = 1 mod n")
    g = _affine(n, a, 0)
    h = _affine(n, 1, 1)
    G = PermGroup(n, [g, h], name=f"C{p}|C{n}")
    if G.order != p * n:
        raise ValueError(f"a={a} does not have order {p} modulo {n}")
    return G


def family(name: str, *params) -> PermGroup:
    """Named groups: ``I, C n, D 2n, A n, S n, H n, H+ n, Q8, SL 2 3, GL 2 3, SL 3 2, Ab [..], Dih [..], CpCn p n a``.

    ``D`` takes the group order, so ``family("D", 8)`` is the symmetry group of a square.
    """
    key = name.replace("_", "").replace(" ", "")
    if key in ("I", "1", "trivial"):
        return PermGroup(1, [], name="I")
    if key == "C":
        G = cyclic_group(int(params[0]))
        return G
    if key == "D":
        return dihedral(int(params[0]))
    if key == "A":
        return alternating(int(params[0]))
    if key == "S":
        return symmetric(int(params[0]))
    if key in ("H", "Hol"):
        return holomorph(int(params[0]))
    if key == "H+":
        n = int(params[0])
        return even_part(holomorph(n), name=f"H{n}+")
    if key == "Q8":
        return quaternion()
    if key in ("SL", "GL"):
        d, p = (int(x) for x in params) if params else (2, 3)
        return matrix_group(key, d, p)
    if key.startswith(("SL(", "GL(")):
        d, p = (int(x) for x in key[3:-1].split(","))
        return matrix_group(key[:2], d, p)
    if key in ("Ab", "abelian"):
        return abelian_group(params[0] if len(params) == 1 and not isinstance(params[0], int) else params)
    if key == "Dih":
        return generalized_dihedral(params[0] if len(params) == 1 and not isinstance(params[0], int) else params)
    if key in ("CpCn", "metacyclic"):
        return metacyclic(*(int(x) for x in params))
    raise ValueError(f"unknown family {name!r}")


def product(*groups: PermGroup) -> PermGroup:
    G = direct_product(*groups).group
    G.name = " x ".join(g.name or "?" for g in groups)
    return G


# ---------------------------------------------------------------------------
# fingerprints


@dataclass(frozen=True)
class Fingerprint:
    order: int
    abelianization: tuple[int, ...]
    centre_order: int
    derived_series: tuple[int, ...]
    element_orders: tuple[tuple[int, int], ...]
    class_sizes: tuple[tuple[int, int], ...]

    def to_json(self) -> str:
        return json.dumps(asdict(self), sort_keys=True, separators=(",", ":"))

    @classmethod
    def from_json(cls, text: str) -> Fingerprint:
        d = json.loads(text)
        return cls(
            d["order"],
            tuple(d["abelianization"]),
            d["centre_order"],
            tuple(d["derived_series"]),
            tuple(tuple(x) for x in d["element_orders"]),
            tuple(tuple(x) for x in d["class_sizes"]),
        )

    def digest(self) -> str:
        return hashlib.sha1(self.to_json().encode()).hexdigest()[:8]

    def short(self) -> str:
        ab = ",".join(map(str, self.abelianization)) or "1"
        ds = ",".join(map(str, self.derived_series))
        return f"[{self.order}; ab {ab}; Z {self.centre_order}; derived {ds}; fp {self.digest()}]"


def derived_series(G: PermGroup, limit: int = 64) -> list[int]:
    out = [G.order]
    H = G
    for _ in range(limit):
        D = derived_subgroup(H)
        if D.order == H.order:
            break
        out.append(D.order)
        H = D
    return out


def _abelianization_invariants(G: PermGroup) -> list[int]:
    if G.order == 1:
        return []
    D = derived_subgroup(G)
    Q, _ = quotient_group(G, D)
    return [d for d in abelian_invariants(Q) if d > 1]


def fingerprint(G: PermGroup) -> Fingerprint:
    cls = G.conjugacy_classes
    return Fingerprint(
        order=G.order,
        abelianization=tuple(_abelianization_invariants(G)),
        centre_order=G.centre.order,
        derived_series=tuple(derived_series(G)),
        element_orders=tuple(sorted(Counter(G.element_orders).items())),
        class_sizes=tuple(sorted(Counter(len(c) for c in cls).items())),
    )


# ---------------------------------------------------------------------------
# isomorphism search


def generating_sequence(G: PermGroup) -> list[int]:
    """Greedy short generating sequence as element indices.

    Each step adds the element that most enlarges the generated subgroup,
    ties broken by enumeration order.
    """
    T = G.table
    chosen: list[int] = []
    current = {0}
    while len(current) < G.order:
        best, best_set = -1, current
        for x in range(G.order):
            if x in current:
                continue
            s = _closure_idx(T, chosen + [x])
            if len(s) > len(best_set):
                best, best_set = x, s
                if len(s) == G.order:
                    break
        chosen.append(best)
        current = best_set
    return chosen


def _closure_idx(T, gens: list[int]) -> set[int]:
    seen = {0}
    order = [0]
    for x in order:
        row = T[x]
        for g in gens:
            y = int(row[g])
            if y not in seen:
                seen.add(y)
                order.append(y)
    return seen


class _Search:
    """Backtracking over images of a generating sequence of ``G`` in ``H``."""

    def __init__(self, G: PermGroup, H: PermGroup, budget: int):
        self.G, self.H = G, H
        self.TG, self.TH = G.table, H.table
        self.gseq = generating_sequence(G) if G.order > 1 else []
        og, oh = G.element_orders, H.element_orders
        cg, ch = G.class_size_of, H.class_size_of
        self.cands = [[y for y in range(H.order) if oh[y] == og[x] and ch[y] == cg[x]] for x in self.gseq]
        self.budget = budget
        self.visited = 0

    def _extend(self, k: int) -> dict[int, int] | None:
        """Close the partial map over the subgroup generated by the first ``k`` generators."""
        TG, TH = self.TG, self.TH
        gs = self.gseq[:k]
        hs = [self.assign[j] for j in range(k)]
        img = {0: 0}
        used = {0}
        queue = [0]
        for x in queue:
            fx = img[x]
            for g, h in zip(gs, hs):
                y = int(TG[x, g])
                fy = int(TH[fx, h])
                if y in img:
                    if img[y] != fy:
                        return None
                else:
                    if fy in used:
                        return None
                    img[y] = fy
                    used.add(fy)
                    queue.append(y)
        return img

    def run(self) -> Iterator[list[int]]:
        G, H = self.G, self.H
        if G.order != H.order:
            return
        if G.order == 1:
            yield [0]
            return
        self.assign: list[int] = [0] * len(self.gseq)

        def rec(k: int) -> Iterator[list[int]]:
            if k == len(self.gseq):
                img = self._extend(k)
                if img is not None and len(img) == G.order:
                    yield [img[i] for i in range(G.order)]
                return
            for y in self.cands[k]:
                self.visited += 1
                if self.visited > self.budget:
                    raise BudgetExceeded(f"isomorphism search exceeded {self.budget} candidates")
                self.assign[k] = y
                if self._extend(k + 1) is not None:
                    yield from rec(k + 1)

        yield from rec(0)


def _as_hom(G: PermGroup, H: PermGroup, img: list[int]) -> GroupHom:
    return GroupHom(G, H, [H.elements[img[G.index_of(g)]] for g in G.gens], name="iso")


def isomorphisms(G: PermGroup, H: PermGroup, max_candidates: int = DEFAULT_SEARCH_BUDGET) -> Iterator[GroupHom]:
    """All isomorphisms ``G -> H`` (lazily)."""
    if G.order != H.order:
        return
    for img in _Search(G, H, max_candidates).run():
        yield _as_hom(G, H, img)


def are_isomorphic(G: PermGroup, H: PermGroup, max_candidates: int = DEFAULT_SEARCH_BUDGET) -> GroupHom | None:
    """A verified isomorphism ``G -> H``, or ``None`` when none exists."""
    if G.order != H.order:
        return None
    if fingerprint(G) != fingerprint(H):
        return None
    for f in isomorphisms(G, H, max_candidates):
        if f.is_bijective():
            return f
    return None


def automorphism_group(G: PermGroup, budget: int = DEFAULT_AUT_BUDGET) -> PermGroup:
    """``Aut(G)`` as a permutation group on the element indices of ``G``."""
    if G.order > budget:
        raise BudgetExceeded(f"|G| = {G.order} exceeds the automorphism budget {budget}")
    auts = [Perm(img) for img in _Search(G, G, DEFAULT_SEARCH_BUDGET).run()]
    S = symmetric_group(G.order)
    A = generated_subgroup(S, [], name="Aut")
    gens: list[Perm] = []
    for a in auts:
        if len(gens) and A.order == len(auts):
            break
        if a.is_identity() or a in A:
            continue
        gens.append(a)
        A = PermGroup(G.order, gens, name="Aut")
    if A.order != len(auts):
        raise GroupError("automorphisms do not close to a group")
    return A


def automorphism_order(G: PermGroup, budget: int = DEFAULT_AUT_BUDGET) -> int:
    if G.order > budget:
        raise BudgetExceeded(f"|G| = {G.order} exceeds the automorphism budget {budget}")
    return sum(1 for _ in _Search(G, G, DEFAULT_SEARCH_BUDGET).run())


# ---------------------------------------------------------------------------
# identification


def abelian_label(invariants: list[int]) -> str:
    inv = [d for d in invariants if d > 1]
    if not inv:
        return "I"
    parts = []
    for d, c in sorted(Counter(inv).items(), key=lambda kv: -kv[0]):
        parts.append(f"C{d}" if c == 1 else f"C{d}^{c}")
    return " x ".join(parts)


def _catalog_descs() -> list[tuple[str, tuple]]:
    descs: list[tuple[str, tuple]] = []
    descs += [(f"S{n}", ("S", n)) for n in (3, 4, 5)]
    descs += [(f"A{n}", ("A", n)) for n in (4, 5)]
    descs += [("SL(2,3)", ("SL", 2, 3)), ("GL(2,3)", ("GL", 2, 3)), ("SL(3,2)", ("SL", 3, 2))]
    descs += [(f"D{2 * n}", ("D", 2 * n)) for n in range(3, 51)]
    descs += [("Q8", ("Q8",))]
    descs += [(f"H{n}+", ("H+", n)) for n in (5, 7, 8, 9)]
    descs += [(f"H{n}", ("H", n)) for n in (5, 7, 8, 9)]
    return descs


@lru_cache(maxsize=None)
def _catalog_group(label: str) -> tuple[PermGroup, Fingerprint]:
    desc = dict(_catalog_descs())[label]
    G = family(*desc)
    return G, fingerprint(G)


@lru_cache(maxsize=None)
def _catalog_orders() -> dict[int, list[str]]:
    by_order: dict[int, list[str]] = {}
    for label, _ in _catalog_descs():
        G, _ = _catalog_group(label)
        by_order.setdefault(G.order, []).append(label)
    return by_order


def catalog_labels() -> list[str]:
    return [label for label, _ in _catalog_descs()]


def catalog_group(label: str) -> PermGroup:
    return _catalog_group(label)[0]


def _named(G: PermGroup, fp: Fingerprint) -> str | None:
    for label in _catalog_orders().get(G.order, []):
        C, cfp = _catalog_group(label)
        if cfp == fp and are_isomorphic(C, G) is not None:
            return label
    return None


def identify(G: PermGroup, max_order: int = 200) -> str:
    """Label from the named catalog (with direct products by abelian or named factors), else a fingerprint."""
    if G.order == 1:
        return "I"
    if G.is_abelian:
        return abelian_label(abelian_invariants(G))
    fp = fingerprint(G)
    if G.order > max_order:
        return fp.short()
    name = _named(G, fp)
    if name:
        return name
    # direct products: a named nonabelian factor times an abelian factor
    orders = _catalog_orders()
    for o in sorted(orders, reverse=True):
        if o >= G.order or G.order % o:
            continue
        rest = G.order // o
        for label in orders[o]:
            C, _ = _catalog_group(label)
            for inv in _abelian_types(rest):
                A = abelian_group(inv)
                P = direct_product(C, A).group
                if fingerprint(P) == fp and are_isomorphic(P, G) is not None:
                    return f"{label} x {abelian_label(inv)}"
    return fp.short()


def _abelian_types(n: int) -> list[list[int]]:
    """Invariant-factor lists of all abelian groups of order ``n``."""
    from .perm import _prime_factors

    per_prime = []
    for p in _prime_factors(n):
        e = 0
        m = n
        while m % p == 0:
            m //= p
            e += 1
        per_prime.append([(p, part) for part in _partitions(e)])
    out = []
    for combo in itertools.product(*per_prime):
        width = max(len(part) for _, part in combo)
        inv = []
        for i in range(width):
            d = 1
            for p, part in combo:
                if i < len(part):
                    d *= p ** part[i]
            inv.append(d)
        out.append(sorted(inv))
    return out


def _partitions(e: int, most: int | None = None) -> list[list[int]]:
    if e == 0:
        return [[]]
    most = e if most is None else most
    out = []
    for k in range(min(e, most), 0, -1):
        for rest in _partitions(e - k, k):
            out.append([k] + rest)
    return out
