"""Finite permutation groups computed by full element enumeration.

Permutations act on the right: ``x^(ab) = (x^a)^b``, so ``a * b`` means
"first ``a``, then ``b``".  Internally points are ``0..n-1``; the text and
list forms used for input/output are 1-based, as in ``(1,2)(3,4)``.
"""

from __future__ import annotations

import re
from collections.abc import Iterable, Iterator, Sequence
from dataclasses import dataclass, field
from functools import cached_property
from math import gcd

import numpy as np

DEFAULT_ELEMENT_BUDGET = 10**6
TABLE_BUDGET = 2048


class GroupError(Exception):
    """Base class for errors raised by this package's group computations."""


class BudgetExceeded(GroupError):
    pass


class NotASubgroup(GroupError):
    pass


class NotNormal(GroupError):
    pass


class HomomorphismError(GroupError):
    pass


class ActionError(GroupError):
    pass


# ---------------------------------------------------------------------------
# permutations


def _perm(it: Iterable[int]) -> Perm:
    return tuple.__new__(Perm, it)


class Perm(tuple):
    """A permutation of ``{0, ..., degree-1}`` stored as its image tuple."""

    __slots__ = ()

    def __new__(cls, images: Iterable[int]) -> Perm:
        p = tuple.__new__(cls, images)
        if sorted(p) != list(range(len(p))):
            raise ValueError(f"not a permutation: {tuple(p)!r}")
        return p

    @classmethod
    def identity(cls, degree: int) -> Perm:
        return _perm(range(degree))

    @classmethod
    def from_images(cls, images: Sequence[int]) -> Perm:
        """Build from a 1-based image list, e.g. ``[2, 1, 3]``."""
        return cls(i - 1 for i in images)

    @classmethod
    def from_cycles(cls, cycles: Iterable[Sequence[int]], degree: int) -> Perm:
        """Build from 1-based cycles.  Cycles are composed left to right."""
        result = cls.identity(degree)
        for cyc in cycles:
            img = list(range(degree))
            pts = [c - 1 for c in cyc]
            if any(not 0 <= x < degree for x in pts) or len(set(pts)) != len(pts):
                raise ValueError(f"bad cycle {tuple(cyc)!r} for degree {degree}")
            for a, b in zip(pts, pts[1:] + pts[:1]):
                img[a] = b
            result = result * _perm(img)
        return result

    @classmethod
    def parse(cls, text: str | Sequence[int], degree: int | None = None) -> Perm:
        """Parse disjoint-cycle text ``"(1,2)(3,4)"`` or an image list ``"[2,1,4,3]"``.

        Sequences of ints are taken as 1-based image lists.
        """
        if not isinstance(text, str):
            p = cls.from_images(list(text))
            return p if degree is None else p.extend(degree)
        s = text.strip()
        if s.startswith("["):
            p = cls.from_images([int(x) for x in s.strip("[]").split(",") if x.strip()])
            return p if degree is None else p.extend(degree)
        if s and not re.fullmatch(r"(\(\s*\d+(\s*,\s*\d+)*\s*\)|\(\s*\))*", s.replace(" ", "")):
            raise ValueError(f"cannot parse permutation {text!r}")
        cycles = [
            [int(x) for x in body.split(",")]
            for body in re.findall(r"\(([^()]*)\)", s)
            if body.strip()
        ]
        largest = max((max(c) for c in cycles), default=1)
        if degree is None:
            degree = largest
        elif largest > degree:
            raise ValueError(f"point {largest} exceeds degree {degree}")
        return cls.from_cycles(cycles, degree)

    @property
    def degree(self) -> int:
        return len(self)

    def extend(self, degree: int) -> Perm:
        if degree < len(self):
            if any(self[i] != i for i in range(degree, len(self))):
                raise ValueError("cannot shrink a permutation that moves high points")
            return _perm(self[:degree])
        return _perm(tuple(self) + tuple(range(len(self), degree)))

    def __mul__(self, other: Perm) -> Perm:  # type: ignore[override]
        return _perm(map(other.__getitem__, self))

    def __rmul__(self, other):  # type: ignore[override]
        return NotImplemented

    def inverse(self) -> Perm:
        inv = [0] * len(self)
        for i, j in enumerate(self):
            inv[j] = i
        return _perm(inv)

    __invert__ = inverse

    def __pow__(self, k: int) -> Perm:
        if k < 0:
            return self.inverse() ** (-k)
        result = Perm.identity(len(self))
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def conj(self, g: Perm) -> Perm:
        """``g^-1 * self * g``."""
        return g.inverse() * self * g

    def is_identity(self) -> bool:
        return all(i == j for i, j in enumerate(self))

    def cycles(self) -> list[tuple[int, ...]]:
        """Non-trivial cycles, 1-based."""
        seen = [False] * len(self)
        out = []
        for i in range(len(self)):
            if seen[i]:
                continue
            cyc = []
            j = i
            while not seen[j]:
                seen[j] = True
                cyc.append(j + 1)
                j = self[j]
            if len(cyc) > 1:
                out.append(tuple(cyc))
        return out

    def order(self) -> int:
        n = 1
        for c in self.cycles():
            n = n * len(c) // gcd(n, len(c))
        return n

    def sign(self) -> int:
        return -1 if sum(len(c) - 1 for c in self.cycles()) % 2 else 1

    def images(self) -> list[int]:
        """1-based image list."""
        return [i + 1 for i in self]

    def __str__(self) -> str:
        cyc = self.cycles()
        if not cyc:
            return "()"
        return "".join("(" + ",".join(map(str, c)) + ")" for c in cyc)

    def __repr__(self) -> str:
        return f"Perm({str(self)!r}, degree={len(self)})"


# ---------------------------------------------------------------------------
# groups


@dataclass
class _Closure:
    elements: list[Perm]
    index: dict[Perm, int]
    # cayley[j][i] = index of elements[i] * gens[j]
    cayley: list[list[int]]


class PermGroup:
    """A finite group generated by permutations of a fixed degree.

    Elements are enumerated breadth-first from the identity on first use; the
    enumeration order is deterministic and everything downstream (transversals,
    kernels, presentations) inherits it.
    """

    def __init__(
        self,
        degree: int,
        gens: Iterable[Perm | str | Sequence[int]] = (),
        *,
        name: str | None = None,
        element_budget: int = DEFAULT_ELEMENT_BUDGET,
    ):
        if degree < 1:
            raise ValueError("degree must be positive")
        self.degree = degree
        perms = []
        for g in gens:
            p = g if isinstance(g, Perm) else Perm.parse(g, degree)
            if len(p) != degree:
                raise ValueError(f"generator {p} has degree {len(p)}, expected {degree}")
            perms.append(p)
        self.gens: tuple[Perm, ...] = tuple(perms)
        self.name = name
        self.element_budget = element_budget
        self._full_symmetric = False

    def __repr__(self) -> str:
        label = f"{self.name}, " if self.name else ""
        return f"<PermGroup {label}degree {self.degree}, {len(self.gens)} gens>"

    @cached_property
    def identity(self) -> Perm:
        return Perm.identity(self.degree)

    @cached_property
    def _closure(self) -> _Closure:
        if self._full_symmetric and self.degree > 8:
            raise BudgetExceeded(f"refusing to enumerate Sym({self.degree})")
        elements = [self.identity]
        index = {self.identity: 0}
        cayley: list[list[int]] = [[] for _ in self.gens]
        i = 0
        while i < len(elements):
            x = elements[i]
            for j, s in enumerate(self.gens):
                y = x * s
                k = index.get(y)
                if k is None:
                    k = len(elements)
                    if k >= self.element_budget:
                        raise BudgetExceeded(
                            f"group exceeds element budget {self.element_budget}"
                        )
                    index[y] = k
                    elements.append(y)
                cayley[j].append(k)
            i += 1
        return _Closure(elements, index, cayley)

    @property
    def elements(self) -> list[Perm]:
        return self._closure.elements

    @property
    def order(self) -> int:
        return len(self._closure.elements)

    def __len__(self) -> int:
        return self.order

    def __iter__(self) -> Iterator[Perm]:
        return iter(self.elements)

    def __contains__(self, g: object) -> bool:
        if self._full_symmetric:
            return isinstance(g, tuple) and len(g) == self.degree
        return g in self._closure.index

    def index_of(self, g: Perm) -> int:
        try:
            return self._closure.index[g]
        except KeyError:
            raise NotASubgroup(f"{g} is not an element of {self!r}") from None

    @property
    def cayley(self) -> list[list[int]]:
        return self._closure.cayley

    @cached_property
    def _words(self) -> list[tuple[int, ...]]:
        # shortest words over gens and inverses; letter +(j+1) is gens[j], -(j+1) its inverse
        letters = []
        for j, s in enumerate(self.gens):
            letters.append((j + 1, s))
            letters.append((-(j + 1), s.inverse()))
        words: list[tuple[int, ...] | None] = [None] * self.order
        words[0] = ()
        queue = [0]
        els = self.elements
        idx = self._closure.index
        for i in queue:
            for letter, s in letters:
                k = idx[els[i] * s]
                if words[k] is None:
                    words[k] = words[i] + (letter,)
                    queue.append(k)
        return words  # type: ignore[return-value]

    def word(self, g: Perm) -> tuple[int, ...]:
        """A shortest word in the generators (signed 1-based letters) equal to ``g``."""
        return self._words[self.index_of(g)]

    def subgroup(self, gens: Iterable[Perm], name: str | None = None) -> PermGroup:
        gens = list(gens)
        H = PermGroup(self.degree, gens, name=name, element_budget=self.element_budget)
        for g in H.gens:
            if g not in self:
                raise NotASubgroup(f"{g} not in {self!r}")
        return H

    def is_trivial(self) -> bool:
        return all(g.is_identity() for g in self.gens)

    @cached_property
    def is_abelian(self) -> bool:
        gs = self.gens
        return all(a * b == b * a for i, a in enumerate(gs) for b in gs[i + 1 :])

    def is_subgroup_of(self, G: PermGroup) -> bool:
        return self.degree == G.degree and all(g in G for g in self.gens)

    def is_normal_in(self, G: PermGroup) -> bool:
        if not self.is_subgroup_of(G):
            return False
        return all(h.conj(g) in self for h in self.gens for g in G.gens)

    def same_elements(self, other: PermGroup) -> bool:
        return (
            self.degree == other.degree
            and self.order == other.order
            and all(g in self for g in other.gens)
        )

    @cached_property
    def centre(self) -> PermGroup:
        z = [x for x in self.elements if all(x * s == s * x for s in self.gens)]
        return generated_subgroup(self, z, name="Z")

    @cached_property
    def inverse_indices(self) -> np.ndarray:
        idx = self._closure.index
        return np.array([idx[x.inverse()] for x in self.elements], dtype=np.int64)

    @cached_property
    def table(self) -> np.ndarray:
        """Multiplication table on element indices: ``table[i, j] = index(e_i * e_j)``."""
        n = self.order
        if n > TABLE_BUDGET:
            raise BudgetExceeded(f"multiplication table for order {n} exceeds {TABLE_BUDGET}")
        E = np.array(self.elements, dtype=np.int64).reshape(n, self.degree)
        base = _distinguishing_base(E)
        codes = _codes(E[:, base], self.degree)
        order = np.argsort(codes)
        sorted_codes = codes[order]
        out = np.empty((n, n), dtype=np.int64)
        for i in range(n):
            prods = E[:, E[i]]  # row j: (e_i * e_j) images
            c = _codes(prods[:, base], self.degree)
            out[i] = order[np.searchsorted(sorted_codes, c)]
        return out

    @cached_property
    def element_orders(self) -> list[int]:
        return [x.order() for x in self.elements]

    @cached_property
    def conjugacy_classes(self) -> list[list[int]]:
        """Conjugacy classes as lists of element indices, in enumeration order."""
        idx = self._closure.index
        els = self.elements
        cls_of = [-1] * self.order
        gens_inv = [(s, s.inverse()) for s in self.gens]
        classes = []
        for i in range(self.order):
            if cls_of[i] >= 0:
                continue
            c = len(classes)
            cls_of[i] = c
            orbit = [i]
            for k in orbit:
                x = els[k]
                for s, si in gens_inv:
                    y = idx[si * x * s]
                    if cls_of[y] < 0:
                        cls_of[y] = c
                        orbit.append(y)
            classes.append(orbit)
        return classes

    @cached_property
    def class_size_of(self) -> list[int]:
        out = [0] * self.order
        for c in self.conjugacy_classes:
            for i in c:
                out[i] = len(c)
        return out


def _distinguishing_base(E: np.ndarray) -> list[int]:
    n, deg = E.shape
    base: list[int] = []
    if n == 1:
        return [0]
    for b in range(deg):
        if len(base) and len({tuple(r) for r in E[:, base]}) == n:
            break
        if len(np.unique(E[:, b])) > 1:
            base.append(b)
    return base


def _codes(rows: np.ndarray, degree: int) -> np.ndarray:
    # mixed-radix code of base images; object dtype avoids int64 overflow on long bases
    if rows.shape[1] * np.log2(max(degree, 2)) < 62:
        weights = degree ** np.arange(rows.shape[1], dtype=np.int64)
        return rows @ weights
    return np.array([hash(r.tobytes()) for r in rows], dtype=np.int64)


def perm_group(degree: int, gens: Iterable[Perm | str | Sequence[int]] = (), name: str | None = None) -> PermGroup:
    return PermGroup(degree, gens, name=name)


def symmetric_group(n: int) -> PermGroup:
    """Sym(n); membership is trivial so it can serve as a hom target for large ``n``."""
    if n == 1:
        gens = []
    elif n == 2:
        gens = [_perm((1, 0))]
    else:
        gens = [_perm((1, 0) + tuple(range(2, n))), _perm(tuple(range(1, n)) + (0,))]
    G = PermGroup(n, gens, name=f"S{n}")
    G._full_symmetric = True
    return G


def enumerate_elements(G: PermGroup, budget: int | None = None) -> list[Perm]:
    if budget is not None and budget != G.element_budget:
        G.element_budget = budget
        G.__dict__.pop("_closure", None)
    return G.elements


def closure_of(degree: int, gens: Sequence[Perm]) -> set[Perm]:
    return set(PermGroup(degree, gens).elements)


def generated_subgroup(G: PermGroup, elements: Iterable[Perm], name: str | None = None) -> PermGroup:
    """Subgroup of ``G`` generated by ``elements``, with a greedily chosen small generating set."""
    gens: list[Perm] = []
    current: set[Perm] = {G.identity}
    for x in elements:
        if x not in current:
            gens.append(x)
            current = closure_of(G.degree, gens)
    H = PermGroup(G.degree, gens, name=name, element_budget=G.element_budget)
    return H


# ---------------------------------------------------------------------------
# homomorphisms


class GroupHom:
    """Homomorphism given by generator images, verified on construction.

    Verification walks the Cayley graph of the source: the images extend to a
    homomorphism iff ``f(x) f(s) = f(x s)`` on every edge ``(x, s)``.
    """

    def __init__(
        self,
        source: PermGroup,
        target: PermGroup,
        gen_images: Sequence[Perm | str],
        name: str | None = None,
    ):
        if len(gen_images) != len(source.gens):
            raise HomomorphismError(
                f"{len(gen_images)} images for {len(source.gens)} generators"
            )
        imgs = []
        for g in gen_images:
            p = g if isinstance(g, Perm) else Perm.parse(g, target.degree)
            if len(p) != target.degree:
                raise HomomorphismError(f"image {p} has wrong degree")
            if p not in target:
                raise HomomorphismError(f"image {p} is not in the target group")
            imgs.append(p)
        self.source = source
        self.target = target
        self.gen_images: tuple[Perm, ...] = tuple(imgs)
        self.name = name
        self._images = self._build()

    def _build(self) -> list[Perm]:
        src = self.source
        els = src.elements
        cay = src.cayley
        img: list[Perm | None] = [None] * len(els)
        img[0] = self.target.identity
        for i in range(len(els)):
            fx = img[i]
            for j, s in enumerate(self.gen_images):
                k = cay[j][i]
                y = fx * s  # type: ignore[operator]
                if img[k] is None:
                    img[k] = y
                elif img[k] != y:
                    raise HomomorphismError(
                        f"assignment does not extend to a homomorphism: "
                        f"f({els[i]}) f({src.gens[j]}) != f({els[k]})"
                    )
        return img  # type: ignore[return-value]

    def __repr__(self) -> str:
        return f"<GroupHom {self.name or ''} {self.source!r} -> {self.target!r}>"

    def __call__(self, g: Perm) -> Perm:
        return self._images[self.source.index_of(g)]

    @property
    def images(self) -> list[Perm]:
        """Images of ``source.elements`` in order."""
        return self._images

    @cached_property
    def _preimages(self) -> dict[Perm, Perm]:
        out: dict[Perm, Perm] = {}
        for x, y in zip(self.source.elements, self._images):
            out.setdefault(y, x)
        return out

    def preimage(self, y: Perm) -> Perm:
        try:
            return self._preimages[y]
        except KeyError:
            raise HomomorphismError(f"{y} is not in the image") from None

    def kernel(self) -> PermGroup:
        e = self.target.identity
        return generated_subgroup(
            self.source,
            (x for x, y in zip(self.source.elements, self._images) if y == e),
            name="ker",
        )

    def image(self) -> PermGroup:
        H = PermGroup(self.target.degree, self.gen_images, name="im")
        H.element_budget = self.target.element_budget
        return H

    def image_size(self) -> int:
        return len(self._preimages)

    def is_injective(self) -> bool:
        return self.image_size() == self.source.order

    def is_surjective(self) -> bool:
        return self.image_size() == self.target.order

    def is_bijective(self) -> bool:
        return self.is_injective() and self.is_surjective()

    def compose(self, other: GroupHom) -> GroupHom:
        """``x -> other(self(x))``."""
        return GroupHom(self.source, other.target, [other(y) for y in self.gen_images])

    def restrict(self, sub: PermGroup) -> GroupHom:
        return GroupHom(sub, self.target, [self(g) for g in sub.gens])


def hom(source: PermGroup, target: PermGroup, gen_images: Sequence[Perm | str]) -> GroupHom:
    return GroupHom(source, target, gen_images)


def identity_hom(G: PermGroup) -> GroupHom:
    return GroupHom(G, G, list(G.gens), name="id")


def inclusion_hom(H: PermGroup, G: PermGroup) -> GroupHom:
    if not H.is_subgroup_of(G):
        raise NotASubgroup("inclusion of a non-subgroup")
    return GroupHom(H, G, list(H.gens), name="incl")


def kernel(f: GroupHom) -> PermGroup:
    return f.kernel()


def image(f: GroupHom) -> PermGroup:
    return f.image()


# ---------------------------------------------------------------------------
# subgroups


def _require_subgroup(S: PermGroup, G: PermGroup, what: str = "S") -> None:
    if not S.is_subgroup_of(G):
        raise NotASubgroup(f"{what} is not a subgroup of G")


def normal_closure(G: PermGroup, S: PermGroup) -> PermGroup:
    """Smallest normal subgroup of ``G`` containing ``S``."""
    _require_subgroup(S, G)
    gens = [s for s in S.gens if not s.is_identity()]
    H = PermGroup(G.degree, gens)
    changed = True
    while changed:
        changed = False
        for h in list(H.gens):
            for g in G.gens:
                c = h.conj(g)
                if c not in H:
                    gens.append(c)
                    H = PermGroup(G.degree, gens)
                    changed = True
    H.name = "normal closure"
    H.element_budget = G.element_budget
    return H


def commutator_subgroup(A: PermGroup, B: PermGroup, G: PermGroup) -> PermGroup:
    """``[A, B]``: normal closure in ``<A, B>`` of the generator commutators."""
    _require_subgroup(A, G, "A")
    _require_subgroup(B, G, "B")
    comms = [a.inverse() * b.inverse() * a * b for a in A.gens for b in B.gens]
    AB = PermGroup(G.degree, A.gens + B.gens)
    C = generated_subgroup(AB, comms)
    C = normal_closure(AB, C)
    C.name = "commutator"
    return C


def derived_subgroup(G: PermGroup) -> PermGroup:
    return commutator_subgroup(G, G, G)


# ---------------------------------------------------------------------------
# cosets


@dataclass(frozen=True)
class Transversal:
    """Right-coset representatives ``H t`` of ``subgroup`` in ``supergroup``."""

    supergroup: PermGroup
    subgroup: PermGroup
    reps: tuple[Perm, ...]
    _coset: dict[Perm, int] = field(repr=False, compare=False, default_factory=dict)

    def __post_init__(self) -> None:
        H = self.subgroup.elements
        coset = self._coset
        if not self.reps or not self.reps[0].is_identity():
            raise ValueError("first representative must be the identity")
        for k, t in enumerate(self.reps):
            if t not in self.supergroup:
                raise NotASubgroup(f"representative {t} not in supergroup")
            for h in H:
                x = h * t
                if x in coset:
                    raise ValueError(f"representatives {k} and {coset[x]} share a coset")
                coset[x] = k
        if len(coset) != self.supergroup.order:
            raise ValueError("representatives do not cover the supergroup")

    def __len__(self) -> int:
        return len(self.reps)

    def coset_of(self, g: Perm) -> int:
        return self._coset[g]

    def rep_of(self, g: Perm) -> Perm:
        return self.reps[self._coset[g]]

    def position(self, t: Perm) -> int:
        k = self._coset.get(t)
        if k is None or self.reps[k] != t:
            raise ValueError(f"{t} is not a listed representative")
        return k


def right_transversal(G: PermGroup, H: PermGroup, reps: Sequence[Perm] | None = None) -> Transversal:
    """Right transversal with identity first; greedy over ``G``'s enumeration unless ``reps`` given."""
    _require_subgroup(H, G, "H")
    if reps is None:
        seen: set[Perm] = set()
        chosen = []
        Hel = H.elements
        for g in G.elements:
            if g in seen:
                continue
            chosen.append(g)
            seen.update(h * g for h in Hel)
        reps = chosen
    return Transversal(G, H, tuple(reps))


def factor_through_transversal(tr: Transversal, t: Perm, q: Perm) -> tuple[Perm, Perm]:
    """Split ``t*q = p*u`` with ``p`` in the subgroup and ``u`` a representative."""
    tr.position(t)
    x = t * q
    u = tr.rep_of(x)
    p = x * u.inverse()
    return p, u


# ---------------------------------------------------------------------------
# quotients, actions, products


def quotient_group(G: PermGroup, N: PermGroup) -> tuple[PermGroup, GroupHom]:
    """``G/N`` acting on the right cosets of ``N``, with the projection."""
    _require_subgroup(N, G, "N")
    if not N.is_normal_in(G):
        raise NotNormal("N is not normal in G")
    tr = right_transversal(G, N)
    n = len(tr)
    gens = []
    for s in G.gens:
        gens.append(_perm(tr.coset_of(t * s) for t in tr.reps))
    Qg = PermGroup(n, gens, name="quotient", element_budget=G.element_budget)
    return Qg, GroupHom(G, Qg, gens, name="proj")


class GroupAction:
    """Right action of ``acting`` on ``acted`` by automorphisms.

    ``gen_images[j]`` lists the images of ``acted.gens`` under acting generator ``j``.
    Each image set must define an automorphism, and the resulting map from
    ``acting`` into the symmetric group on ``acted``'s elements must be a
    homomorphism; both are checked here.
    """

    def __init__(self, acting: PermGroup, acted: PermGroup, gen_images: Sequence[Sequence[Perm]]):
        if len(gen_images) != len(acting.gens):
            raise ActionError("one image list per acting generator is required")
        self.acting = acting
        self.acted = acted
        self.gen_images = tuple(tuple(imgs) for imgs in gen_images)
        perms = []
        for imgs in self.gen_images:
            try:
                aut = GroupHom(acted, acted, list(imgs))
            except HomomorphismError as exc:
                raise ActionError(f"generator images do not define an endomorphism: {exc}") from exc
            if not aut.is_injective():
                raise ActionError("generator images do not define an automorphism")
            idx = acted._closure.index
            perms.append(_perm(idx[y] for y in aut.images))
        self._sym = symmetric_group(acted.order)
        try:
            self._rep = GroupHom(acting, self._sym, perms)
        except HomomorphismError as exc:
            raise ActionError(f"not an action: {exc}") from exc

    def perm(self, p: Perm) -> Perm:
        """The permutation of ``acted.elements`` indices induced by ``p``."""
        return self._rep(p)

    def act(self, m: Perm, p: Perm) -> Perm:
        """``m^p``."""
        return self.acted.elements[self._rep(p)[self.acted.index_of(m)]]

    def automorphism_images(self, p: Perm) -> list[Perm]:
        return [self.act(m, p) for m in self.acted.gens]

    def is_trivial(self) -> bool:
        return all(pm.is_identity() for pm in self._rep.gen_images)

    def restrict(self, sub: PermGroup) -> GroupAction:
        return GroupAction(sub, self.acted, [self.automorphism_images(k) for k in sub.gens])

    @classmethod
    def conjugation(cls, acting: PermGroup, acted: PermGroup) -> GroupAction:
        """``m^p = p^-1 m p``; requires ``acting`` to normalise ``acted``."""
        return cls(acting, acted, [[m.conj(p) for m in acted.gens] for p in acting.gens])

    @classmethod
    def trivial(cls, acting: PermGroup, acted: PermGroup) -> GroupAction:
        return cls(acting, acted, [list(acted.gens) for _ in acting.gens])

    @classmethod
    def via_hom(cls, f: GroupHom, acted: PermGroup, base: GroupAction) -> GroupAction:
        """Pull ``base`` (an action of ``f.target``) back along ``f``."""
        return cls(f.source, acted, [base.automorphism_images(f(p)) for p in f.source.gens])


def displacement_subgroup(M: PermGroup, K: PermGroup, act: GroupAction) -> PermGroup:
    """``[M, K]``: generated by ``m^-1 m^k``; checked to be normal in ``M``."""
    for k in K.gens:
        if k not in act.acting:
            raise ActionError("K is not contained in the acting group")
    disp = (m.inverse() * act.act(m, k) for m in M.elements for k in K.gens)
    D = generated_subgroup(M, disp, name="[M,K]")
    if not D.is_normal_in(M):
        raise ActionError("displacement subgroup is not normal; action not well defined")
    return D


@dataclass
class SemidirectProduct:
    """``R ⋉ M`` acting on ``R``'s points plus one point per element of ``M``.

    ``(r, m)`` sends an ``R``-point ``x`` to ``x^r`` and the ``M``-point of ``y``
    to that of ``y^r m``; the product is ``(r, m)(s, n) = (rs, m^s n)``.
    """

    group: PermGroup
    R: PermGroup
    M: PermGroup
    action: GroupAction
    embed_R: GroupHom
    embed_M: GroupHom
    projection: GroupHom

    def element(self, r: Perm, m: Perm) -> Perm:
        M = self.M
        d = self.R.degree
        pr = self.action.perm(r)
        mi = M.index_of(m)
        tab = M.elements
        idx = M._closure.index
        tail = [d + idx[tab[pr[y]] * tab[mi]] for y in range(M.order)]
        return _perm(tuple(r) + tuple(tail))

    def pair(self, g: Perm) -> tuple[Perm, Perm]:
        d = self.R.degree
        r = _perm(g[:d])
        m = self.M.elements[g[d] - d]  # image of the identity's point
        return r, m


def semidirect_product(R: PermGroup, M: PermGroup, act: GroupAction) -> SemidirectProduct:
    if act.acting is not R and not act.acting.same_elements(R):
        raise ActionError("action is not an action of R")
    if act.acted is not M and not act.acted.same_elements(M):
        raise ActionError("action is not on M")
    d = R.degree
    n = M.order
    deg = d + n
    idx = M._closure.index
    els = M.elements

    def make(r: Perm, m: Perm) -> Perm:
        pr = act.perm(r)
        mi = idx[m]
        return _perm(tuple(r) + tuple(d + idx[els[pr[y]] * els[mi]] for y in range(n)))

    gens_R = [make(r, M.identity) for r in R.gens]
    gens_M = [make(R.identity, m) for m in M.gens]
    G = PermGroup(deg, gens_R + gens_M, name="semidirect", element_budget=max(R.element_budget, M.element_budget))
    embed_R = GroupHom(R, G, gens_R, name="embed_R")
    embed_M = GroupHom(M, G, gens_M, name="embed_M")
    proj = GroupHom(G, R, list(R.gens) + [R.identity] * len(M.gens), name="proj_R")
    return SemidirectProduct(G, R, M, act, embed_R, embed_M, proj)


@dataclass
class DirectProduct:
    group: PermGroup
    factors: tuple[PermGroup, ...]
    embeddings: tuple[GroupHom, ...]
    projections: tuple[GroupHom, ...]


def direct_product(*factors: PermGroup) -> DirectProduct:
    """Direct product on the disjoint union of the factors' points."""
    degs = [F.degree for F in factors]
    total = sum(degs)
    offsets = [sum(degs[:i]) for i in range(len(factors))]

    def lift(i: int, p: Perm) -> Perm:
        img = list(range(total))
        o = offsets[i]
        for a, b in enumerate(p):
            img[o + a] = o + b
        return _perm(img)

    gens = [lift(i, g) for i, F in enumerate(factors) for g in F.gens]
    if not gens:
        gens = []
    G = PermGroup(total, gens, name=" x ".join(F.name or "?" for F in factors))
    embeddings = tuple(GroupHom(F, G, [lift(i, g) for g in F.gens]) for i, F in enumerate(factors))
    projections = []
    for i, F in enumerate(factors):
        o = offsets[i]
        imgs = [_perm(g[o + a] - o for a in range(F.degree)) for g in gens]
        projections.append(GroupHom(G, F, imgs))
    return DirectProduct(G, tuple(factors), embeddings, tuple(projections))


# ---------------------------------------------------------------------------
# abelian invariants


def _prime_factors(n: int) -> list[int]:
    out = []
    p = 2
    while p * p <= n:
        if n % p == 0:
            out.append(p)
            while n % p == 0:
                n //= p
        p += 1
    if n > 1:
        out.append(n)
    return out


def _ilog(n: int, p: int) -> int:
    k = 0
    while n > 1:
        if n % p:
            raise ValueError(f"{n} is not a power of {p}")
        n //= p
        k += 1
    return k


def invariants_from_orders(orders: Iterable[int]) -> list[int]:
    """Invariant factors ``d1 | d2 | ...`` of an abelian group from its element orders.

    For each prime ``p``, ``#{x : x^(p^k) = 1} = p^(sum_i min(k, e_i))`` recovers the
    exponents ``e_i`` of the ``p``-primary part.
    """
    orders = list(orders)
    parts: dict[int, list[int]] = {}
    for p in _prime_factors(len(orders)):
        at_least = []  # at_least[k-1] = #{i : e_i >= k}
        prev = 0
        k = 1
        while True:
            s = _ilog(sum(1 for o in orders if (p**k) % o == 0), p)
            if s == prev:
                break
            at_least.append(s - prev)
            prev = s
            k += 1
        exps = []
        for k, c in enumerate(at_least, start=1):
            nxt = at_least[k] if k < len(at_least) else 0
            exps.extend([k] * (c - nxt))
        parts[p] = sorted(exps, reverse=True)
    width = max((len(v) for v in parts.values()), default=0)
    factors = []
    for i in range(width):
        d = 1
        for p, exps in parts.items():
            if i < len(exps):
                d *= p ** exps[i]
        factors.append(d)
    return sorted(factors)


def abelian_invariants(A: PermGroup) -> list[int]:
    if not A.is_abelian:
        raise GroupError("group is not abelian")
    return invariants_from_orders(A.element_orders)


def abelianization(G: PermGroup) -> tuple[list[int], GroupHom]:
    D = derived_subgroup(G)
    Q, proj = quotient_group(G, D)
    return abelian_invariants(Q), proj


def cyclic_group(n: int) -> PermGroup:
    if n == 1:
        return PermGroup(1, [], name="C1")
    return PermGroup(n, [_perm(tuple(range(1, n)) + (0,))], name=f"C{n}")


# ---------------------------------------------------------------------------
# subgroup lattice (small groups only)


def subgroups(G: PermGroup, limit: int = 512) -> list[PermGroup]:
    """All subgroups of a small group, by joining cyclic subgroups until closed.

    Each subgroup is returned once, ordered by size then discovery.
    """
    els = G.elements
    idx = G._closure.index

    def close(gens: list[Perm]) -> frozenset[int]:
        return frozenset(idx[x] for x in PermGroup(G.degree, gens).elements)

    cyclic: dict[frozenset[int], Perm] = {}
    for x in els:
        key = close([x])
        cyclic.setdefault(key, x)
    found: dict[frozenset[int], list[Perm]] = {k: [g] for k, g in cyclic.items()}
    frontier = list(found)
    while frontier:
        new = []
        for key in frontier:
            for ckey, c in cyclic.items():
                if ckey <= key:
                    continue
                gens = found[key] + [c]
                k2 = close(gens)
                if k2 not in found:
                    found[k2] = gens
                    new.append(k2)
                    if len(found) > limit:
                        raise BudgetExceeded(f"more than {limit} subgroups")
        frontier = new
    out = []
    for key, gens in sorted(found.items(), key=lambda kv: len(kv[0])):
        gens = [g for g in gens if not g.is_identity()]
        out.append(PermGroup(G.degree, gens, element_budget=G.element_budget))
    return out


def subgroup_classes(G: PermGroup, limit: int = 512) -> list[PermGroup]:
    """One representative per conjugacy class of subgroups."""
    idx = G._closure.index
    seen: set[frozenset[int]] = set()
    reps = []
    for H in subgroups(G, limit):
        key = frozenset(idx[x] for x in H.elements)
        if key in seen:
            continue
        reps.append(H)
        for g in G.elements:
            seen.add(frozenset(idx[x.conj(g)] for x in H.elements))
    return reps
