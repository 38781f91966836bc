from __future__ import annotations

import json

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xmodcalc.ident import family
from xmodcalc.perm import GroupAction, GroupError, GroupHom, NotNormal, PermGroup, cyclic_group, normal_closure, quotient_group
from xmodcalc.xmod import (
    AxiomError,
    CheckOptions,
    CrossedModule,
    PreCrossedModule,
    associated_crossed_module,
    check_cm1,
    check_cm2,
    find_xmod_isomorphism,
    homotopy_groups,
    identity_morphism,
    identity_xmod,
    is_crossed,
    peiffer_subgroup,
    xmod_abelian,
    xmod_automorphism,
    xmod_central,
    xmod_from_dict,
    xmod_morphism,
    xmod_normal,
    xmod_to_dict,
)

SMALL = [("S", 3), ("D", 8), ("Q8",), ("Ab", [2, 2]), ("A", 4), ("C", 4), ("D", 10)]


def zero_boundary(M, P):
    return GroupHom(M, P, [P.identity] * len(M.gens))


def structures(desc, kind):
    """Pre-crossed structures on ``M`` over ``P = M`` for the property tests."""
    M = family(*desc)
    if kind == "identity":
        return PreCrossedModule(M, M, GroupHom(M, M, list(M.gens)), GroupAction.conjugation(M, M))
    if kind == "zero-conj":
        return PreCrossedModule(M, M, zero_boundary(M, M), GroupAction.conjugation(M, M))
    C2 = cyclic_group(2)
    return PreCrossedModule(M, C2, zero_boundary(M, C2), GroupAction(C2, M, [list(M.gens)]))


pcms = st.builds(structures, st.sampled_from(SMALL), st.sampled_from(["identity", "zero-conj", "zero-trivial"]))


class TestAxioms:
    def test_normal_subgroup_is_crossed(self, S4, A4):
        X = xmod_normal(A4, S4)
        assert X.cm1.ok and X.cm2.ok and X.cm1.method == "exhaustive"

    def test_c2_identity(self):
        C2 = cyclic_group(2)
        X = identity_xmod(C2)
        assert X.boundary.is_bijective()

    def test_cm1_witness_for_wrong_action(self, S4):
        V4 = S4.subgroup(["(1,2)(3,4)", "(1,3)(2,4)"])
        trivial = GroupAction(S4, V4, [list(V4.gens) for _ in S4.gens])
        inc = GroupHom(V4, S4, list(V4.gens))
        with pytest.raises(AxiomError) as info:
            PreCrossedModule(V4, S4, inc, trivial)
        m, p = info.value.witness
        assert inc(trivial.act(m, p)) != inc(m).conj(p)

    def test_cm2_witness(self, S3):
        C2 = cyclic_group(2)
        with pytest.raises(AxiomError) as info:
            CrossedModule(S3, C2, zero_boundary(S3, C2), GroupAction(C2, S3, [list(S3.gens)]))
        m, n = info.value.witness
        assert n != n.conj(m)

    def test_not_normal(self, S4):
        with pytest.raises(NotNormal):
            xmod_normal(S4.subgroup(["(1,2)"]), S4)

    @settings(max_examples=25, deadline=None)
    @given(pcms)
    def test_generator_checks_agree_with_exhaustive(self, pcm):
        gen = CheckOptions(pair_budget=1)
        full = check_cm2(pcm.M, pcm.boundary, pcm.action)
        quick = check_cm2(pcm.M, pcm.boundary, pcm.action, gen)
        assert quick.method == "generators" and full.method == "exhaustive"
        assert quick.ok == full.ok
        assert check_cm1(pcm.M, pcm.P, pcm.boundary, pcm.action, gen).ok

    def test_sampled_mode(self, S4, A4):
        X = xmod_normal(A4, S4)
        r = check_cm2(X.M, X.boundary, X.action, CheckOptions(mode="sampled", samples=50, seed=7))
        assert r.ok and r.method == "sampled"

    @settings(max_examples=25, deadline=None)
    @given(pcms)
    def test_peiffer_trivial_iff_crossed(self, pcm):
        ok, witness = is_crossed(pcm)
        assert (peiffer_subgroup(pcm).order == 1) == ok
        if not ok:
            m, n = witness
            assert not pcm.peiffer_commutator(m, n).is_identity()

    @settings(max_examples=25, deadline=None)
    @given(pcms)
    def test_kernel_is_central(self, pcm):
        if not is_crossed(pcm)[0]:
            return
        X = CrossedModule.from_precrossed(pcm)
        Z = X.M.centre
        assert all(k in Z for k in X.boundary.kernel().elements)


class TestPeiffer:
    def test_zero_boundary_trivial_action_gives_derived_subgroup(self, S3):
        C2 = cyclic_group(2)
        pcm = PreCrossedModule(S3, C2, zero_boundary(S3, C2), GroupAction(C2, S3, [list(S3.gens)]))
        assert peiffer_subgroup(pcm).order == 3

    def test_brute_force_definition(self):
        # the Peiffer subgroup is the smallest normal subgroup containing every <m,n>
        Q8 = family("Q8")
        pcm = PreCrossedModule(Q8, Q8, zero_boundary(Q8, Q8), GroupAction.conjugation(Q8, Q8))
        comms = [pcm.peiffer_commutator(m, n) for m in Q8.elements for n in Q8.elements]
        expected = normal_closure(Q8, PermGroup(Q8.degree, comms))
        assert peiffer_subgroup(pcm).same_elements(expected)

    @settings(max_examples=20, deadline=None)
    @given(pcms)
    def test_associated_is_crossed_and_idempotent(self, pcm):
        X, proj = associated_crossed_module(pcm)
        assert proj.is_surjective()
        assert X.M.order == pcm.M.order // peiffer_subgroup(pcm).order
        Y, proj2 = associated_crossed_module(X)
        assert proj2.is_bijective()
        assert find_xmod_isomorphism(X, Y, f_P=GroupHom(X.P, Y.P, list(X.P.gens))) is not None

    def test_full_peiffer_gives_trivial_module(self, S3):
        # zero boundary and conjugation on the perfect group A5 collapses everything
        A5 = family("A", 5)
        pcm = PreCrossedModule(A5, A5, zero_boundary(A5, A5), GroupAction.conjugation(A5, A5))
        X, _ = associated_crossed_module(pcm)
        assert X.M.order == 1


class TestConstructions:
    def test_automorphism_c2(self):
        X = xmod_automorphism(cyclic_group(2))
        assert X.P.order == 1 and X.boundary.kernel().order == 2

    def test_automorphism_s3(self, S3):
        X = xmod_automorphism(S3)
        assert X.boundary.is_injective() and X.P.order == 6 and X.boundary.image().order == 6

    def test_automorphism_c3(self):
        X = xmod_automorphism(cyclic_group(3))
        assert X.P.order == 2 and X.boundary.image().order == 1

    def test_abelian(self, S3):
        C3, C2 = cyclic_group(3), cyclic_group(2)
        X = xmod_abelian(C3, C2, GroupAction(C2, C3, [[C3.gens[0].inverse()]]))
        assert X.boundary.image().order == 1
        with pytest.raises(GroupError):
            xmod_abelian(S3, C2, GroupAction(C2, S3, [list(S3.gens)]))

    def test_central(self, S3):
        C4 = cyclic_group(4)
        Q, proj = quotient_group(C4, C4.subgroup([C4.gens[0] ** 2]))
        X = xmod_central(proj)
        assert X.boundary.kernel().order == 2
        _, sgn = quotient_group(S3, S3.subgroup(["(1,2,3)"]))
        with pytest.raises(GroupError):
            xmod_central(sgn)

    def test_central_identity_is_identity_xmod(self, S4):
        X = xmod_central(GroupHom(S4, S4, list(S4.gens)))
        assert X.boundary.is_bijective()
        assert all(X.act(m, p) == m.conj(p) for m in S4.gens for p in S4.gens)


class TestHomotopy:
    def test_identity(self, S4):
        pi1, pi2 = homotopy_groups(identity_xmod(S4))
        assert pi1.order == 1 and pi2.order == 1

    def test_zero_boundary(self):
        C3, C2 = cyclic_group(3), cyclic_group(2)
        X = xmod_abelian(C3, C2, GroupAction(C2, C3, [[C3.gens[0].inverse()]]))
        pi1, pi2 = homotopy_groups(X)
        assert pi1.order == 2 and pi2.order == 3

    @pytest.mark.parametrize("desc", [("S", 3), ("D", 8), ("Q8",), ("A", 4)])
    def test_order_identities(self, desc):
        X = xmod_automorphism(family(*desc))
        pi1, pi2 = homotopy_groups(X)
        im = X.boundary.image()
        assert pi1.order * normal_closure(X.P, im).order == X.P.order
        assert pi2.order * im.order == X.M.order


class TestMorphisms:
    def test_identity(self, S4, A4):
        f = identity_morphism(xmod_normal(A4, S4))
        assert f.is_isomorphism()

    def test_projection_morphism(self):
        C4 = cyclic_group(4)
        Q, proj = quotient_group(C4, C4.subgroup([C4.gens[0] ** 2]))
        X = xmod_central(proj)
        Y = identity_xmod(Q)
        f = xmod_morphism(X, Y, proj, GroupHom(Q, Q, list(Q.gens)))
        assert not f.is_isomorphism()

    def test_bad_square(self, S4, A4):
        X = xmod_normal(A4, S4)
        collapse = GroupHom(A4, A4, [A4.identity] * len(A4.gens))
        with pytest.raises(AxiomError):
            xmod_morphism(X, X, collapse, GroupHom(S4, S4, list(S4.gens)))

    def test_find_isomorphism(self, S4, A4):
        X = xmod_normal(A4, S4)
        assert find_xmod_isomorphism(X, X) is not None
        assert find_xmod_isomorphism(X, identity_xmod(S4)) is None


class TestJson:
    @pytest.mark.parametrize("which", ["normal", "automorphism", "abelian"])
    def test_round_trip(self, which, S4, A4):
        if which == "normal":
            X = xmod_normal(A4, S4)
        elif which == "automorphism":
            X = xmod_automorphism(family("D", 8))
        else:
            C3, C2 = cyclic_group(3), cyclic_group(2)
            X = xmod_abelian(C3, C2, GroupAction(C2, C3, [[C3.gens[0].inverse()]]))
        d = xmod_to_dict(X)
        again = json.loads(json.dumps(d))
        assert again == d
        Y = xmod_from_dict(again)
        assert xmod_to_dict(Y) == d
        assert Y.M.order == X.M.order and Y.P.order == X.P.order

    def test_pre_crossed_document(self, S3):
        C2 = cyclic_group(2)
        pcm = PreCrossedModule(S3, C2, zero_boundary(S3, C2), GroupAction(C2, S3, [list(S3.gens)]))
        d = xmod_to_dict(pcm)
        assert isinstance(xmod_from_dict(d, pre=True), PreCrossedModule)
        with pytest.raises(AxiomError):
            xmod_from_dict(d)
        with pytest.raises(ValueError):
            xmod_from_dict({**d, "kind": "cat1"})
