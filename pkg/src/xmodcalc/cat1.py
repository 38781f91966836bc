"""Cat¹-groups and their equivalence with crossed modules.

A pre-cat¹-group is ``(e; t, h)`` with ``e: R -> G`` and ``t, h: G -> R`` such that
``t e = h e = id`` (CAT1).  It is a cat¹-group when also ``[ker t, ker h] = 1``
(CAT2).  The map ``e`` is kept explicitly rather than identifying ``R`` with a
subgroup of ``G``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .perm import (
    GroupAction,
    GroupError,
    GroupHom,
    PermGroup,
    SemidirectProduct,
    commutator_subgroup,
    quotient_group,
    semidirect_product,
)
from .xmod import (
    DEFAULT_CHECKS,
    AxiomError,
    CheckOptions,
    CrossedModule,
    PreCrossedModule,
    XModMorphism,
    group_from_dict,
    group_to_dict,
    perm_list_from_dict,
    perm_list_to_dict,
)


def _check_cat1(G, R, e, t, h) -> None:
    for name, f, src, dst in (("e", e, R, G), ("t", t, G, R), ("h", h, G, R)):
        if not (f.source.same_elements(src) and f.target.same_elements(dst)):
            raise GroupError(f"{name} has the wrong source or target")
    for r in R.gens:
        if t(e(r)) != r:
            raise AxiomError(f"CAT1 fails: t(e({r})) != {r}", (r,))
        if h(e(r)) != r:
            raise AxiomError(f"CAT1 fails: h(e({r})) != {r}", (r,))


def _check_cat2(kt: PermGroup, kh: PermGroup, opts: CheckOptions) -> tuple[str, tuple | None]:
    if opts.mode == "exhaustive" and kt.order * kh.order <= opts.pair_budget:
        method, A, B = "exhaustive", kt.elements, kh.elements
    else:
        # commuting generators make the subgroups commute
        method, A, B = "generators", kt.gens, kh.gens
    for a in A:
        for b in B:
            if a * b != b * a:
                return method, (a, b)
    return method, None


class PreCat1Group:
    """``(e; t, h : G -> R)`` satisfying CAT1."""

    def __init__(self, G: PermGroup, R: PermGroup, e: GroupHom, t: GroupHom, h: GroupHom, *, name: str | None = None, checks: CheckOptions = DEFAULT_CHECKS):
        _check_cat1(G, R, e, t, h)
        self.G, self.R, self.e, self.t, self.h = G, R, e, t, h
        self.name = name
        self.checks = checks

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name or ''} |G|={self.G.order} |R|={self.R.order}>"

    @property
    def kernel_t(self) -> PermGroup:
        return self.t.kernel()

    @property
    def kernel_h(self) -> PermGroup:
        return self.h.kernel()

    def satisfies_cat2(self) -> tuple[bool, tuple | None]:
        _, w = _check_cat2(self.kernel_t, self.kernel_h, self.checks)
        return w is None, w


class Cat1Group(PreCat1Group):
    """A pre-cat¹-group that also satisfies CAT2."""

    def __init__(self, G, R, e, t, h, *, name: str | None = None, checks: CheckOptions = DEFAULT_CHECKS):
        super().__init__(G, R, e, t, h, name=name, checks=checks)
        self.cat2_method, w = _check_cat2(self.kernel_t, self.kernel_h, checks)
        if w is not None:
            raise AxiomError(f"CAT2 fails: [{w[0]}, {w[1]}] != 1; use precat1 for the pre-cat1 structure", w)


def cat1(G, R, e, t, h, **kw) -> Cat1Group:
    return Cat1Group(G, R, e, t, h, **kw)


def precat1(G, R, e, t, h, **kw) -> PreCat1Group:
    return PreCat1Group(G, R, e, t, h, **kw)


def identity_cat1(P: PermGroup) -> Cat1Group:
    """``e = t = h = id_P``."""
    idP = GroupHom(P, P, list(P.gens), name="id")
    return Cat1Group(P, P, idP, idP, idP, name="C_P")


@dataclass
class Cat1FromXMod:
    """The cat¹-group of a crossed module together with its semidirect product data."""

    cat1: PreCat1Group
    product: SemidirectProduct


def cat1_from_xmod_data(X: PreCrossedModule) -> Cat1FromXMod:
    """``P x| M`` with ``t(p,m) = p``, ``h(p,m) = p mu(m)``, ``e(p) = (p,1)``."""
    sd = semidirect_product(X.P, X.M, X.action)
    G = sd.group
    P = X.P
    t = sd.projection
    h = GroupHom(G, P, list(P.gens) + [X.boundary(m) for m in X.M.gens], name="h")
    cls = Cat1Group if isinstance(X, CrossedModule) else PreCat1Group
    C = cls(G, P, sd.embed_R, t, h, name="from xmod", checks=X.checks)
    return Cat1FromXMod(C, sd)


def cat1_from_xmod(X: PreCrossedModule) -> PreCat1Group:
    return cat1_from_xmod_data(X).cat1


def xmod_from_cat1(C: PreCat1Group) -> PreCrossedModule:
    """``h`` restricted to ``ker t``, with ``R`` acting by conjugation through ``e``."""
    S = C.t.kernel()
    S.name = "ker t"
    boundary = GroupHom(S, C.R, [C.h(s) for s in S.gens], name="h|S")
    action = GroupAction(C.R, S, [[s.conj(C.e(r)) for s in S.gens] for r in C.R.gens])
    cls = CrossedModule if isinstance(C, Cat1Group) else PreCrossedModule
    return cls(S, C.R, boundary, action, name="from cat1", checks=C.checks)


def precat1_quotient(C: PreCat1Group) -> tuple[Cat1Group, GroupHom]:
    """Quotient of ``G`` by ``[ker t, ker h]`` with the induced structure maps."""
    N = commutator_subgroup(C.kernel_t, C.kernel_h, C.G)
    Gq, proj = quotient_group(C.G, N)
    e = GroupHom(C.R, Gq, [proj(C.e(r)) for r in C.R.gens], name="e")
    t = GroupHom(Gq, C.R, [C.t(g) for g in C.G.gens], name="t")
    h = GroupHom(Gq, C.R, [C.h(g) for g in C.G.gens], name="h")
    return Cat1Group(Gq, C.R, e, t, h, name="quotient", checks=C.checks), proj


def round_trip_morphism(X: CrossedModule) -> XModMorphism:
    """The natural isomorphism ``X -> xmod(cat1(X))``: ``m -> (1, m)`` over the identity of ``P``."""
    data = cat1_from_xmod_data(X)
    Y = xmod_from_cat1(data.cat1)
    f_M = GroupHom(X.M, Y.M, [data.product.embed_M(m) for m in X.M.gens], name="m->(1,m)")
    f_P = GroupHom(X.P, Y.P, list(X.P.gens), name="id")
    return XModMorphism(X, Y, f_M, f_P)


def groupoid_composition_ok(X: PreCrossedModule) -> bool:
    """``(p,m)`` and ``(p mu(m), n)`` compose to ``(p, mn)``, so ``h(p,m) = t(p mu m, n)``, for all pairs."""
    data = cat1_from_xmod_data(X)
    sd, C = data.product, data.cat1
    for p in X.P.elements:
        for m in X.M.elements:
            g = sd.element(p, m)
            q = p * X.boundary(m)
            for n in X.M.elements:
                k = sd.element(q, n)
                if C.h(g) != C.t(k):
                    return False
                # composite in the groupoid: g * e(q)^-1 * k = (p, mn)
                if g * C.e(q).inverse() * k != sd.element(p, m * n):
                    return False
    return True


# ---------------------------------------------------------------------------
# JSON form


def cat1_to_dict(C: PreCat1Group) -> dict:
    return {
        "kind": "cat1",
        "G": group_to_dict(C.G),
        "R": group_to_dict(C.R),
        "e": perm_list_to_dict(C.e.gen_images),
        "t": perm_list_to_dict(C.t.gen_images),
        "h": perm_list_to_dict(C.h.gen_images),
    }


def cat1_from_dict(d: dict, pre: bool = False) -> PreCat1Group:
    if d.get("kind", "cat1") != "cat1":
        raise ValueError("not a cat1 document")
    G = group_from_dict(d["G"], "G")
    R = group_from_dict(d["R"], "R")
    e = GroupHom(R, G, perm_list_from_dict(d["e"], G.degree), name="e")
    t = GroupHom(G, R, perm_list_from_dict(d["t"], R.degree), name="t")
    h = GroupHom(G, R, perm_list_from_dict(d["h"], R.degree), name="h")
    cls = PreCat1Group if pre else Cat1Group
    return cls(G, R, e, t, h)
