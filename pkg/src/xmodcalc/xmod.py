"""Crossed and pre-crossed modules over permutation groups.

A pre-crossed module is a homomorphism ``boundary: M -> P`` with a right action
of ``P`` on ``M`` such that ``boundary(m^p) = p^-1 boundary(m) p`` (CM1).  It is
crossed when also ``n^boundary(m) = m^-1 n m`` (CM2).

Axiom checks run over all element pairs while the pair count fits in the
budget.  Past the budget they fall back to generator pairs, which is still a
proof: both sides of each axiom are homomorphic in each argument.  The
``"sampled"`` mode checks generator pairs plus random element pairs.
"""

from __future__ import annotations

import random
from dataclasses import dataclass

import numpy as np

from .perm import (
    TABLE_BUDGET,
    GroupAction,
    GroupError,
    GroupHom,
    NotNormal,
    Perm,
    PermGroup,
    generated_subgroup,
    inclusion_hom,
    normal_closure,
    quotient_group,
)

DEFAULT_PAIR_BUDGET = 2**22


class AxiomError(GroupError):
    def __init__(self, message: str, witness: tuple | None = None):
        super().__init__(message)
        self.witness = witness


@dataclass
class CheckResult:
    ok: bool
    method: str
    witness: tuple | None = None

    def __bool__(self) -> bool:
        return self.ok


@dataclass
class CheckOptions:
    mode: str = "exhaustive"  # or "sampled"
    pair_budget: int = DEFAULT_PAIR_BUDGET
    samples: int = 2000
    seed: int = 0


DEFAULT_CHECKS = CheckOptions()


def _pairs(A: PermGroup, B: PermGroup, opts: CheckOptions):
    """Yield the pairs to test and the method name."""
    if opts.mode == "exhaustive" and A.order * B.order <= opts.pair_budget:
        return "exhaustive", None
    rng = random.Random(opts.seed)
    pairs = [(a, b) for a in A.gens for b in B.gens]
    if opts.mode == "sampled":
        ea, eb = A.elements, B.elements
        pairs += [(rng.choice(ea), rng.choice(eb)) for _ in range(opts.samples)]
        return "sampled", pairs
    return "generators", pairs


def check_cm1(M: PermGroup, P: PermGroup, boundary: GroupHom, action: GroupAction, opts: CheckOptions = DEFAULT_CHECKS) -> CheckResult:
    method, pairs = _pairs(M, P, opts)
    if pairs is None:
        mu = boundary.images
        if P.order <= TABLE_BUDGET:
            T = P.table
            inv = P.inverse_indices
            mu_idx = np.array([P.index_of(y) for y in mu])
            for pi, p in enumerate(P.elements):
                perm = np.array(action.perm(p))
                bad = np.nonzero(mu_idx[perm] != T[T[inv[pi], mu_idx], pi])[0]
                if len(bad):
                    return CheckResult(False, method, (M.elements[bad[0]], p))
            return CheckResult(True, method)
        pairs = [(m, p) for p in P.elements for m in M.elements]
    for m, p in pairs:
        if boundary(action.act(m, p)) != boundary(m).conj(p):
            return CheckResult(False, method, (m, p))
    return CheckResult(True, method)


def check_cm2(M: PermGroup, boundary: GroupHom, action: GroupAction, opts: CheckOptions = DEFAULT_CHECKS) -> CheckResult:
    method, pairs = _pairs(M, M, opts)
    if pairs is None and M.order <= TABLE_BUDGET:
        T = M.table
        inv = M.inverse_indices
        for mi, m in enumerate(M.elements):
            lhs = np.array(action.perm(boundary(m)))
            rhs = T[T[inv[mi], :], mi]
            bad = np.nonzero(lhs != rhs)[0]
            if len(bad):
                return CheckResult(False, method, (m, M.elements[bad[0]]))
        return CheckResult(True, method)
    if pairs is None:
        pairs = [(m, n) for m in M.elements for n in M.elements]
    for m, n in pairs:
        if action.act(n, boundary(m)) != n.conj(m):
            return CheckResult(False, method, (m, n))
    return CheckResult(True, method)


class PreCrossedModule:
    """``boundary: M -> P`` with an action of ``P`` on ``M`` satisfying CM1."""

    def __init__(self, M: PermGroup, P: PermGroup, boundary: GroupHom, action: GroupAction, *, name: str | None = None, checks: CheckOptions = DEFAULT_CHECKS):
        if boundary.source is not M or boundary.target is not P:
            if not (boundary.source.same_elements(M) and boundary.target.same_elements(P)):
                raise GroupError("boundary must map M to P")
        if not (action.acting.same_elements(P) and action.acted.same_elements(M)):
            raise GroupError("action must be an action of P on M")
        self.M = M
        self.P = P
        self.boundary = boundary
        self.action = action
        self.name = name
        self.checks = checks
        self.cm1 = check_cm1(M, P, boundary, action, checks)
        if not self.cm1:
            m, p = self.cm1.witness  # type: ignore[misc]
            raise AxiomError(f"CM1 fails at m={m}, p={p}", self.cm1.witness)

    def __repr__(self) -> str:
        return f"<{type(self).__name__} {self.name or ''} |M|={self.M.order} |P|={self.P.order}>"

    def act(self, m: Perm, p: Perm) -> Perm:
        return self.action.act(m, p)

    def peiffer_commutator(self, m: Perm, n: Perm) -> Perm:
        """``<m,n> = m^-1 n^-1 m n^{boundary(m)}``."""
        return m.inverse() * n.inverse() * m * self.act(n, self.boundary(m))


class CrossedModule(PreCrossedModule):
    """A pre-crossed module that also satisfies CM2."""

    def __init__(self, M: PermGroup, P: PermGroup, boundary: GroupHom, action: GroupAction, *, name: str | None = None, checks: CheckOptions = DEFAULT_CHECKS):
        super().__init__(M, P, boundary, action, name=name, checks=checks)
        self.cm2 = check_cm2(M, boundary, action, checks)
        if not self.cm2:
            m, n = self.cm2.witness  # type: ignore[misc]
            raise AxiomError(f"CM2 fails at m={m}, n={n}", self.cm2.witness)

    @classmethod
    def from_precrossed(cls, pcm: PreCrossedModule) -> CrossedModule:
        return cls(pcm.M, pcm.P, pcm.boundary, pcm.action, name=pcm.name, checks=pcm.checks)


def precrossed(M: PermGroup, P: PermGroup, boundary: GroupHom, action: GroupAction, **kw) -> PreCrossedModule:
    return PreCrossedModule(M, P, boundary, action, **kw)


def crossed(M: PermGroup, P: PermGroup, boundary: GroupHom, action: GroupAction, **kw) -> CrossedModule:
    return CrossedModule(M, P, boundary, action, **kw)


def is_crossed(pcm: PreCrossedModule) -> tuple[bool, tuple | None]:
    r = check_cm2(pcm.M, pcm.boundary, pcm.action, pcm.checks)
    return r.ok, r.witness


def peiffer_subgroup(pcm: PreCrossedModule) -> PermGroup:
    """Normal closure in ``M`` of the Peiffer commutators over all element pairs."""
    M = pcm.M
    els = M.elements
    comms: set[Perm] = set()
    if M.order <= TABLE_BUDGET:
        T = M.table
        inv = M.inverse_indices
        for mi, m in enumerate(els):
            act = np.array(pcm.action.perm(pcm.boundary(m)))
            # <m,n> = m^-1 n^-1 m n^{mu m}
            left = T[T[inv[mi], inv], mi]
            vals = T[left, act]
            comms.update(np.unique(vals).tolist())
        C = generated_subgroup(M, (els[i] for i in sorted(comms)))
    else:
        C = generated_subgroup(M, (pcm.peiffer_commutator(m, n) for m in els for n in els))
    C = normal_closure(M, C)
    C.name = "Peiffer"
    return C


def associated_crossed_module(pcm: PreCrossedModule) -> tuple[CrossedModule, GroupHom]:
    """Quotient by the Peiffer subgroup, with the projection ``M -> M/C``."""
    C = peiffer_subgroup(pcm)
    Mbar, proj = quotient_group(pcm.M, C)
    boundary = GroupHom(Mbar, pcm.P, [pcm.boundary(m) for m in pcm.M.gens])
    try:
        action = GroupAction(pcm.P, Mbar, [[proj(pcm.act(m, p)) for m in pcm.M.gens] for p in pcm.P.gens])
    except GroupError as exc:
        raise GroupError(f"action does not descend to the Peiffer quotient: {exc}") from exc
    return CrossedModule(Mbar, pcm.P, boundary, action, name="associated", checks=pcm.checks), proj


# ---------------------------------------------------------------------------
# standard constructions


def xmod_normal(N: PermGroup, P: PermGroup) -> CrossedModule:
    if not N.is_subgroup_of(P) or not N.is_normal_in(P):
        raise NotNormal("N is not a normal subgroup of P")
    return CrossedModule(N, P, inclusion_hom(N, P), GroupAction.conjugation(P, N), name="normal")


def identity_xmod(P: PermGroup) -> CrossedModule:
    return xmod_normal(P, P)


def inner_automorphism_perm(M: PermGroup, m: Perm) -> Perm:
    """Conjugation by ``m`` as a permutation of ``M``'s element indices."""
    mi = m.inverse()
    return Perm(M.index_of(mi * x * m) for x in M.elements)


def xmod_automorphism(M: PermGroup, aut_budget: int = 100) -> CrossedModule:
    from .ident import automorphism_group

    A = automorphism_group(M, budget=aut_budget)
    chi = GroupHom(M, A, [inner_automorphism_perm(M, m) for m in M.gens], name="chi")
    action = GroupAction(A, M, [[M.elements[a[M.index_of(m)]] for m in M.gens] for a in A.gens])
    X = CrossedModule(M, A, chi, action, name="automorphism")
    K = chi.kernel()
    if not K.same_elements(M.centre):
        raise GroupError("kernel of the automorphism boundary differs from the centre")
    return X


def xmod_abelian(M: PermGroup, P: PermGroup, action: GroupAction) -> CrossedModule:
    if not M.is_abelian:
        raise GroupError("M is not abelian")
    zero = GroupHom(M, P, [P.identity] * len(M.gens), name="zero")
    return CrossedModule(M, P, zero, action, name="abelian")


def xmod_central(mu: GroupHom) -> CrossedModule:
    """Central extension ``mu: M ->> P`` with ``P`` acting by conjugation through lifts."""
    M, P = mu.source, mu.target
    if not mu.is_surjective():
        raise GroupError("boundary is not surjective")
    K = mu.kernel()
    if not all(k * m == m * k for k in K.gens for m in M.gens):
        raise GroupError("kernel is not central")
    imgs = []
    for p in P.gens:
        lift = mu.preimage(p)
        imgs.append([m.conj(lift) for m in M.gens])
    return CrossedModule(M, P, mu, GroupAction(P, M, imgs), name="central")


def homotopy_groups(X: CrossedModule) -> tuple[PermGroup, PermGroup]:
    """``(coker boundary, ker boundary)``."""
    im = X.boundary.image()
    N = normal_closure(X.P, im)
    pi1, _ = quotient_group(X.P, N)
    pi2 = X.boundary.kernel()
    if not pi2.is_abelian or not all(k * m == m * k for k in pi2.gens for m in X.M.gens):
        raise GroupError("kernel of the boundary is not central")
    return pi1, pi2


# ---------------------------------------------------------------------------
# morphisms


class XModMorphism:
    """``(f_M, f_P)`` with a commuting boundary square and equivariance."""

    def __init__(self, source: PreCrossedModule, target: PreCrossedModule, f_M: GroupHom, f_P: GroupHom, checks: CheckOptions = DEFAULT_CHECKS):
        self.source = source
        self.target = target
        self.f_M = f_M
        self.f_P = f_P
        for m in source.M.elements:
            if target.boundary(f_M(m)) != f_P(source.boundary(m)):
                raise AxiomError(f"boundary square fails at m={m}", (m,))
        method, pairs = _pairs(source.M, source.P, checks)
        if pairs is None:
            pairs = ((m, p) for p in source.P.elements for m in source.M.elements)
        for m, p in pairs:
            if f_M(source.act(m, p)) != target.act(f_M(m), f_P(p)):
                raise AxiomError(f"equivariance fails at m={m}, p={p}", (m, p))
        self.method = method

    def is_isomorphism(self) -> bool:
        return self.f_M.is_bijective() and self.f_P.is_bijective()


def xmod_morphism(source, target, f_M, f_P, checks: CheckOptions = DEFAULT_CHECKS) -> XModMorphism:
    return XModMorphism(source, target, f_M, f_P, checks)


def identity_morphism(X: PreCrossedModule) -> XModMorphism:
    return XModMorphism(X, X, GroupHom(X.M, X.M, list(X.M.gens)), GroupHom(X.P, X.P, list(X.P.gens)))


def find_xmod_isomorphism(X: CrossedModule, Y: CrossedModule, f_P: GroupHom | None = None, max_candidates: int = 10**6) -> XModMorphism | None:
    """Search for an isomorphism of crossed modules.

    ``f_P`` fixes the base isomorphism when known; otherwise every isomorphism
    ``P -> P'`` is tried.  For each, isomorphisms ``M -> M'`` are enumerated
    until one makes the square commute equivariantly.
    """
    from .ident import isomorphisms

    if X.M.order != Y.M.order or X.P.order != Y.P.order:
        return None
    base = [f_P] if f_P is not None else isomorphisms(X.P, Y.P, max_candidates=max_candidates)
    for fp in base:
        for fm in isomorphisms(X.M, Y.M, max_candidates=max_candidates):
            try:
                return XModMorphism(X, Y, fm, fp)
            except AxiomError:
                continue
    return None


# ---------------------------------------------------------------------------
# JSON form


def perm_list_to_dict(perms) -> list[str]:
    return [str(p) for p in perms]


def perm_list_from_dict(items, degree: int) -> list[Perm]:
    return [Perm.parse(x, degree) for x in items]


def group_to_dict(G: PermGroup) -> dict:
    return {"degree": G.degree, "gens": perm_list_to_dict(G.gens)}


def group_from_dict(d: dict, name: str | None = None) -> PermGroup:
    return PermGroup(int(d["degree"]), perm_list_from_dict(d["gens"], int(d["degree"])), name=name)


def xmod_to_dict(X: PreCrossedModule) -> dict:
    return {
        "kind": "xmod",
        "M": group_to_dict(X.M),
        "P": group_to_dict(X.P),
        "boundary": perm_list_to_dict(X.boundary.gen_images),
        "action": [perm_list_to_dict(row) for row in X.action.gen_images],
    }


def xmod_from_dict(d: dict, pre: bool = False, checks: CheckOptions = DEFAULT_CHECKS) -> PreCrossedModule:
    """Inverse of :func:`xmod_to_dict`; ``pre=True`` only requires CM1."""
    if d.get("kind", "xmod") != "xmod":
        raise ValueError("not a crossed-module document")
    M = group_from_dict(d["M"], "M")
    P = group_from_dict(d["P"], "P")
    boundary = GroupHom(M, P, perm_list_from_dict(d["boundary"], P.degree), name="boundary")
    action = GroupAction(P, M, [perm_list_from_dict(row, M.degree) for row in d["action"]])
    cls = PreCrossedModule if pre else CrossedModule
    return cls(M, P, boundary, action, checks=checks)
