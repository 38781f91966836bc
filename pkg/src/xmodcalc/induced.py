"""Induced crossed modules along a homomorphism ``iota: P -> Q``.

A general ``iota`` factors as a surjection onto its image followed by an
inclusion.  Along a surjection the induced module is ``M/[M, ker iota]``.
Along an inclusion it is computed from a presentation: take one copy of
``M`` per right coset of ``P`` in ``Q``, add the Peiffer relators of the
pre-crossed module on that free product, simplify, and enumerate cosets.
The result is the regular permutation representation of the induced group.

Independent models for special cases (abelian modules with normal image,
normal pairs, reflections in dihedral groups) live here too, so the pipeline
can be checked against them.
"""

from __future__ import annotations

import time
from dataclasses import dataclass, field

from .fpres.constructions import copower_presentation, orbit_closure, peiffer_relators, presentation_of, shift_word
from .fpres.tietze import tietze_simplify
from .fpres.todd_coxeter import DEFAULT_MAX_COSETS, prune_relators, todd_coxeter
from .fpres.words import Presentation, evaluate_word
from .perm import (
    GroupAction,
    GroupError,
    GroupHom,
    NotNormal,
    Perm,
    PermGroup,
    abelian_invariants,
    abelianization,
    cyclic_group,
    direct_product,
    displacement_subgroup,
    factor_through_transversal,
    inclusion_hom,
    normal_closure,
    quotient_group,
    right_transversal,
)
from .xmod import DEFAULT_CHECKS, CheckOptions, CrossedModule, XModMorphism


@dataclass
class VerificationReport:
    cm1: str = ""
    cm2: str = ""
    morphism: bool = False
    kernel_central: bool = False
    image_is_normal_closure: bool = False
    order: int = 0
    kernel_order: int = 0
    image_order: int = 0
    kernel_invariants: list[int] = field(default_factory=list)
    oracles: dict[str, bool] = field(default_factory=dict)
    label: str | None = None
    notes: list[str] = field(default_factory=list)

    @property
    def orders_consistent(self) -> bool:
        return self.order == self.kernel_order * self.image_order

    @property
    def ok(self) -> bool:
        return (
            bool(self.cm1)
            and bool(self.cm2)
            and self.morphism
            and self.kernel_central
            and self.image_is_normal_closure
            and self.orders_consistent
            and all(self.oracles.values())
        )

    def to_dict(self) -> dict:
        return {
            "cm1": self.cm1,
            "cm2": self.cm2,
            "morphism": self.morphism,
            "kernel_central": self.kernel_central,
            "image_is_normal_closure": self.image_is_normal_closure,
            "orders_consistent": self.orders_consistent,
            "order": self.order,
            "kernel_order": self.kernel_order,
            "image_order": self.image_order,
            "kernel_invariants": list(self.kernel_invariants),
            "oracles": dict(self.oracles),
            "label": self.label,
            "notes": list(self.notes),
            "ok": self.ok,
        }


@dataclass
class PipelineStats:
    """Sizes along the presentation pipeline, for reporting."""

    copies: int = 1
    closure_size: int = 0
    copower_gens: int = 0
    relators_before: int = 0
    gens_after: int = 0
    relators_after: int = 0
    pruned: bool = False
    seconds: float = 0.0


@dataclass
class InducedResult:
    source: CrossedModule
    iota: GroupHom
    induced: CrossedModule
    morphism: XModMorphism
    pi2: PermGroup
    report: VerificationReport
    copy_images: dict[tuple[int, int], Perm] | None = None
    transversal: tuple[Perm, ...] | None = None
    stats: PipelineStats | None = None
    presentation: Presentation | None = None

    @property
    def group(self) -> PermGroup:
        return self.induced.M

    @property
    def boundary(self) -> GroupHom:
        return self.induced.boundary


# ---------------------------------------------------------------------------
# the two stages


def _trivial_group() -> PermGroup:
    return PermGroup(1, [], name="I")


def _finish(X: CrossedModule, iota: GroupHom, induced: CrossedModule, f_M: GroupHom, checks: CheckOptions, **extra) -> InducedResult:
    morphism = XModMorphism(X, induced, f_M, iota, checks)
    pi2 = induced.boundary.kernel()
    r = InducedResult(X, iota, induced, morphism, pi2, VerificationReport(), **extra)
    r.report = verify_induced(r, identify_label=False)
    return r


def induce_surjection(X: CrossedModule, iota: GroupHom, checks: CheckOptions = DEFAULT_CHECKS) -> InducedResult:
    """``M/[M, ker iota]`` with boundary and ``Q``-action pushed down."""
    if not iota.is_surjective():
        raise GroupError("iota is not surjective")
    Q = iota.target
    K = iota.kernel()
    D = displacement_subgroup(X.M, K, X.action)
    Mbar, proj = quotient_group(X.M, D)
    boundary = GroupHom(Mbar, Q, [iota(X.boundary(m)) for m in X.M.gens], name="boundary")
    imgs = []
    for q in Q.gens:
        p = iota.preimage(q)
        imgs.append([proj(X.act(m, p)) for m in X.M.gens])
    induced = CrossedModule(Mbar, Q, boundary, GroupAction(Q, Mbar, imgs), name="induced", checks=checks)
    return _finish(X, iota, induced, proj, checks)


# pruning is one enumeration per relator, so it is only done for small outputs
TIDY_MAX_ORDER = 256
TIDY_MAX_RELATORS = 400


def _tidy(pres: Presentation, order: int) -> Presentation:
    """A shorter presentation of the same finite group, for display."""
    if order > TIDY_MAX_ORDER or len(pres.relators) > TIDY_MAX_RELATORS:
        return pres
    for _ in range(3):
        smaller, _ = tietze_simplify(prune_relators(pres, order))
        if smaller.total_length() >= pres.total_length():
            break
        pres = smaller
    return pres


def induce_inclusion(
    X: CrossedModule,
    iota: GroupHom,
    *,
    max_cosets: int = DEFAULT_MAX_COSETS,
    transversal: list[Perm] | None = None,
    checks: CheckOptions = DEFAULT_CHECKS,
) -> InducedResult:
    """Induce along an injective ``iota`` via the copower presentation."""
    if not iota.is_injective():
        raise GroupError("iota is not injective")
    t0 = time.perf_counter()
    M, P, Q = X.M, X.P, iota.target
    iP = iota.image()
    T = right_transversal(Q, iP, transversal)
    reps = T.reps
    n = len(reps)
    gens_M = list(M.gens)
    gamma = len(gens_M)
    stats = PipelineStats(copies=n)

    if M.order == 1 or gamma == 0:
        I = _trivial_group()
        induced = CrossedModule(I, Q, GroupHom(I, Q, []), GroupAction(Q, I, [[] for _ in Q.gens]), name="induced", checks=checks)
        f_M = GroupHom(M, I, [I.identity] * gamma)
        stats.seconds = time.perf_counter() - t0
        return _finish(X, iota, induced, f_M, checks, copy_images={}, transversal=reps, stats=stats)

    base = presentation_of(M).pres
    closure = orbit_closure(gens_M, P.gens, X.act)
    closure_index = {w: k for k, w in enumerate(closure)}
    closure_words = [M.word(w) for w in closure]
    stats.closure_size = len(closure)
    iota_mu = [iota(X.boundary(w)) for w in closure]
    rep_inv = [t.inverse() for t in reps]

    def delta_prime(k: int, s: int) -> Perm:
        return rep_inv[s] * iota_mu[k] * reps[s]

    split_cache: dict[tuple[int, Perm], tuple[Perm, int]] = {}

    def split(t: int, q: Perm) -> tuple[Perm, int]:
        key = (t, q)
        if key not in split_cache:
            ip, u = factor_through_transversal(T, reps[t], q)
            split_cache[key] = (iota.preimage(ip), T.position(u))
        return split_cache[key]

    def act_on_copy(k: int, t: int, q: Perm) -> tuple[int, int]:
        p, u = split(t, q)
        return closure_index[X.act(closure[k], p)], u

    cop = copower_presentation(base, n, copy_labels=range(1, n + 1))
    pf = peiffer_relators(gamma, n, closure_words, delta_prime, act_on_copy)
    full = Presentation(cop.n_gens, cop.relators + tuple(pf), cop.names)
    stats.copower_gens = cop.n_gens
    stats.relators_before = len(full.relators)

    simple, trace = tietze_simplify(full)
    stats.gens_after = simple.n_gens
    stats.relators_after = len(simple.relators)
    table = todd_coxeter(simple, max_cosets)
    FI = table.group()
    FI.name = "induced"
    shown = _tidy(simple, FI.order)
    if shown is not simple:
        stats.pruned = True
        stats.gens_after = shown.n_gens
        stats.relators_after = len(shown.relators)

    copy_images = {}
    for t in range(n):
        for i in range(gamma):
            copy_images[(i, t)] = table.evaluate(trace.forward[i + gamma * t])

    # boundary: delta' on the surviving copower generators
    survivors = [abs(w[0]) - 1 for w in trace.backward]
    bd = []
    for g in survivors:
        t, i = divmod(g, gamma)
        bd.append(rep_inv[t] * iota(X.boundary(gens_M[i])) * reps[t])
    try:
        boundary = GroupHom(FI, Q, bd, name="boundary")
    except GroupError as exc:
        raise GroupError(f"internal: boundary not well defined on the induced group: {exc}") from exc

    cimgs = [copy_images[(i, t)] for t in range(n) for i in range(gamma)]

    def in_copy(w, u: int) -> Perm:
        return evaluate_word(shift_word(w, gamma * u), cimgs) if w else FI.identity

    act_imgs = []
    for q in Q.gens:
        row = []
        for g in survivors:
            t, i = divmod(g, gamma)
            p, u = split(t, q)
            row.append(in_copy(M.word(X.act(gens_M[i], p)), u))
        act_imgs.append(row)
    try:
        action = GroupAction(Q, FI, act_imgs)
    except GroupError as exc:
        raise GroupError(f"internal: Q-action not well defined on the induced group: {exc}") from exc

    induced = CrossedModule(FI, Q, boundary, action, name="induced", checks=checks)
    f_M = GroupHom(M, FI, [copy_images[(i, 0)] for i in range(gamma)], name="iota_*")
    stats.seconds = time.perf_counter() - t0
    return _finish(X, iota, induced, f_M, checks, copy_images=copy_images, transversal=reps, stats=stats, presentation=shown)


def induce(
    X: CrossedModule,
    iota: GroupHom,
    *,
    max_cosets: int = DEFAULT_MAX_COSETS,
    transversal: list[Perm] | None = None,
    checks: CheckOptions = DEFAULT_CHECKS,
    identify_label: bool = False,
) -> InducedResult:
    """Induced crossed ``Q``-module, factoring ``iota`` through its image when needed."""
    if iota.source is not X.P and not iota.source.same_elements(X.P):
        raise GroupError("iota must start at the base group of X")
    if iota.is_injective():
        r = induce_inclusion(X, iota, max_cosets=max_cosets, transversal=transversal, checks=checks)
    elif iota.is_surjective():
        r = induce_surjection(X, iota, checks=checks)
    else:
        image = iota.image()
        iota1 = GroupHom(X.P, image, list(iota.gen_images), name="onto image")
        iota2 = inclusion_hom(image, iota.target)
        r1 = induce_surjection(X, iota1, checks=checks)
        r2 = induce_inclusion(r1.induced, iota2, max_cosets=max_cosets, transversal=transversal, checks=checks)
        f_M = r1.morphism.f_M.compose(r2.morphism.f_M)
        r = _finish(X, iota, r2.induced, f_M, checks, copy_images=r2.copy_images, transversal=r2.transversal, stats=r2.stats, presentation=r2.presentation)
        r.report.notes.append("factored as a surjection followed by an inclusion")
    if identify_label:
        from .ident import identify

        r.report.label = identify(r.group)
    return r


def induce_subgroups(Q: PermGroup, P_gens, M_gens, **kw) -> InducedResult:
    """Convenience: ``M <| P <= Q`` given by generators, with ``M -> P`` the inclusion."""
    P = Q.subgroup(P_gens, name="P")
    M = P.subgroup(M_gens, name="M")
    if not M.is_normal_in(P):
        raise NotNormal("M is not normal in P")
    X = CrossedModule(M, P, inclusion_hom(M, P), GroupAction.conjugation(P, M), name="normal")
    return induce(X, inclusion_hom(P, Q), **kw)


# ---------------------------------------------------------------------------
# verification


def verify_induced(r: InducedResult, identify_label: bool = False, oracles: bool = True) -> VerificationReport:
    """Structural checks on an induced crossed module; failures are recorded, not raised."""
    X, Y = r.source, r.induced
    rep = VerificationReport()
    rep.cm1 = Y.cm1.method if Y.cm1 else ""
    rep.cm2 = Y.cm2.method if Y.cm2 else ""
    rep.morphism = r.morphism.source is X and r.morphism.target is Y
    K = r.pi2
    rep.kernel_central = all(k * m == m * k for k in K.gens for m in Y.M.gens)
    Q = Y.P
    target = normal_closure(Q, PermGroup(Q.degree, [r.iota(X.boundary(m)) for m in X.M.gens]))
    im = Y.boundary.image()
    rep.image_is_normal_closure = im.same_elements(target)
    rep.order = Y.M.order
    rep.kernel_order = K.order
    rep.image_order = im.order
    rep.kernel_invariants = abelian_invariants(K) if K.is_abelian else []
    if oracles and r.iota.is_injective():
        rep.oracles.update(_apply_oracles(r))
    if identify_label:
        from .ident import identify

        rep.label = identify(Y.M)
    return rep


def _apply_oracles(r: InducedResult) -> dict[str, bool]:
    from .ident import are_isomorphic

    out: dict[str, bool] = {}
    X, Q = r.source, r.iota.target
    imu = PermGroup(Q.degree, [r.iota(X.boundary(m)) for m in X.M.gens])
    if X.M.is_abelian and imu.is_normal_in(Q) and r.copy_images is not None and r.transversal is not None:
        D, act, coords = oracle_module_induced(X, r.iota, transversal=list(r.transversal))
        out["module"] = natural_map_agrees(r, D, act, coords)
    iP = r.iota.image()
    if imu.is_normal_in(Q) and iP.is_normal_in(Q) and X.boundary.is_injective():
        pred = oracle_normal_pair(X.M, X.P, r.iota)
        if pred.group is not None and pred.order <= 2000:
            out["normal_pair"] = are_isomorphic(pred.group, r.group) is not None
        else:
            out["normal_pair"] = pred.order == r.group.order
    return out


# ---------------------------------------------------------------------------
# oracles


def oracle_module_induced(
    X: CrossedModule, iota: GroupHom, transversal: list[Perm] | None = None
) -> tuple[PermGroup, GroupAction, dict[tuple[int, int], Perm]]:
    """``M^[Q:P]`` with ``Q`` permuting and twisting coordinates.

    Returns the group, the ``Q``-action, and the embedding of generator ``i``
    into coordinate ``t``.
    """
    M = X.M
    Q = iota.target
    if not M.is_abelian:
        raise GroupError("module oracle needs abelian M")
    imu = PermGroup(Q.degree, [iota(X.boundary(m)) for m in M.gens])
    if not imu.is_normal_in(Q):
        raise NotNormal("iota(mu(M)) is not normal in Q")
    if not iota.is_injective():
        raise GroupError("module oracle needs injective iota")
    T = right_transversal(Q, iota.image(), transversal)
    n = len(T)
    dp = direct_product(*([M] * n))
    coords = {(i, t): dp.embeddings[t](m) for t in range(n) for i, m in enumerate(M.gens)}
    D = dp.group
    imgs = []
    for q in Q.gens:
        row = []
        for t in range(n):
            ip, u = factor_through_transversal(T, T.reps[t], q)
            p = iota.preimage(ip)
            u_pos = T.position(u)
            row.extend(dp.embeddings[u_pos](X.act(m, p)) for m in M.gens)
        imgs.append(row)
    if not D.gens:
        return D, GroupAction(Q, D, [[] for _ in Q.gens]), coords
    return D, GroupAction(Q, D, imgs), coords


def natural_map_agrees(r: InducedResult, D: PermGroup, act: GroupAction, coords: dict) -> bool:
    """Is ``(m_i, t) -> c_(i,t)`` an isomorphism onto the induced group, compatible with ``Q``?"""
    if D.order != r.group.order:
        return False
    if not D.gens:
        return True
    try:
        phi = GroupHom(D, r.group, [r.copy_images[k] for k in sorted(coords, key=lambda k: (k[1], k[0]))])
    except GroupError:
        return False
    if not phi.is_bijective():
        return False
    return all(phi(act.act(d, q)) == r.induced.act(phi(d), q) for d in D.gens for q in r.iota.target.gens)


@dataclass
class NormalPairPrediction:
    order: int
    group: PermGroup | None
    index: int


def abelian_group(invariants: list[int]) -> PermGroup:
    facs = [cyclic_group(d) for d in invariants if d > 1]
    if not facs:
        return _trivial_group()
    return direct_product(*facs).group if len(facs) > 1 else facs[0]


def oracle_normal_pair(M: PermGroup, P: PermGroup, iota: GroupHom | PermGroup) -> NormalPairPrediction:
    """``M x (M^ab (x) I(Q/P))`` as a concrete group.

    The augmentation ideal is free abelian of rank ``[Q:P]-1``, so as a group the
    tensor factor is ``(M^ab)^([Q:P]-1)`` whether or not ``M = P``.
    ``iota`` may be the inclusion ``P -> Q`` or just ``Q`` when ``P <= Q``.
    """
    if isinstance(iota, PermGroup):
        iota = inclusion_hom(P, iota)
    Q = iota.target
    iP = iota.image()
    iM = PermGroup(Q.degree, [iota(m) for m in M.gens])
    if not iP.is_normal_in(Q) or not iM.is_normal_in(Q):
        raise NotNormal("normal-pair oracle needs M and P normal in Q")
    index = Q.order // iP.order
    inv, _ = abelianization(M)
    ab = 1
    for d in inv:
        ab *= d
    order = M.order * ab ** (index - 1)
    A = abelian_group(inv)
    group = direct_product(M, *([A] * (index - 1))).group if index > 1 and A.order > 1 else M
    return NormalPairPrediction(order, group, index)


@dataclass
class DihedralPrediction:
    n: int
    order: int
    boundary_bijective: bool
    kernel_order: int
    cokernel_order: int


def oracle_dihedral_reflection(n: int) -> DihedralPrediction:
    """Reflection ``C2 <= D_2n``: induced group ``D_2n``; iso for odd ``n``, ``C2`` kernel and cokernel for even."""
    if n < 1:
        raise ValueError("n must be positive")
    if n % 2:
        return DihedralPrediction(n, 2 * n, True, 1, 1)
    return DihedralPrediction(n, 2 * n, False, 2, 2)


def peiffer_quotient_order(pcm, max_cosets: int = DEFAULT_MAX_COSETS) -> int:
    """Order of ``M`` modulo the Peiffer relators on the generator closure, by coset enumeration.

    This is the single-copy case of the inclusion pipeline, so it should agree
    with the brute-force Peiffer subgroup of :mod:`xmodcalc.xmod`.
    """
    M, P = pcm.M, pcm.P
    if M.order == 1 or not M.gens:
        return 1
    base = presentation_of(M).pres
    closure = orbit_closure(list(M.gens), P.gens, pcm.act)
    index = {w: k for k, w in enumerate(closure)}
    words = [M.word(w) for w in closure]
    mu = [pcm.boundary(w) for w in closure]
    rels = peiffer_relators(
        len(M.gens),
        1,
        words,
        lambda k, s: mu[k],
        lambda k, t, q: (index[pcm.act(closure[k], q)], 0),
    )
    pres = Presentation(base.n_gens, base.relators + tuple(rels), base.names)
    return todd_coxeter(pres, max_cosets).n_cosets


def result_to_dict(r: InducedResult) -> dict:
    """Machine-readable report of an induced crossed module."""
    G = r.group
    return {
        "order": G.order,
        "degree": G.degree,
        "generators": [str(g) for g in G.gens],
        "boundary": [str(q) for q in r.boundary.gen_images],
        "action": [[str(x) for x in row] for row in r.induced.action.gen_images],
        "iota_star": [str(x) for x in r.morphism.f_M.gen_images],
        "kernel_order": r.report.kernel_order,
        "kernel_invariants": list(r.report.kernel_invariants),
        "image_order": r.report.image_order,
        "label": r.report.label,
        "checks": r.report.to_dict(),
        "pipeline": None if r.stats is None else {k: v for k, v in r.stats.__dict__.items() if k != "seconds"},
    }


def axiom_audit(r: InducedResult) -> dict[str, bool]:
    """Re-check an induced crossed module with exhaustive element-pair checks."""
    from .xmod import CheckOptions, check_cm1, check_cm2

    Y = r.induced
    opts = CheckOptions(mode="exhaustive", pair_budget=10**9)
    K = Y.boundary.kernel()
    Z = Y.M.centre
    Q = Y.P
    target = normal_closure(Q, PermGroup(Q.degree, [r.iota(r.source.boundary(m)) for m in r.source.M.gens]))
    im = Y.boundary.image()
    return {
        "CM1": bool(check_cm1(Y.M, Q, Y.boundary, Y.action, opts)),
        "CM2": bool(check_cm2(Y.M, Y.boundary, Y.action, opts)),
        "ker_central": all(k in Z for k in K.elements),
        "image_normal_closure": im.same_elements(target),
        "orders": Y.M.order == K.order * im.order,
    }
