from __future__ import annotations

import itertools
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xmodcalc.ident import abelian_group, family
from xmodcalc.perm import (
    ActionError,
    BudgetExceeded,
    GroupAction,
    GroupHom,
    HomomorphismError,
    NotNormal,
    Perm,
    PermGroup,
    abelian_invariants,
    abelianization,
    commutator_subgroup,
    cyclic_group,
    derived_subgroup,
    direct_product,
    displacement_subgroup,
    factor_through_transversal,
    generated_subgroup,
    inclusion_hom,
    invariants_from_orders,
    normal_closure,
    quotient_group,
    right_transversal,
    semidirect_product,
    subgroup_classes,
    subgroups,
    symmetric_group,
)


def perms(degree: int):
    return st.permutations(list(range(degree))).map(Perm)


def brute_closure(gens, degree):
    seen = {Perm.identity(degree)}
    frontier = list(seen)
    while frontier:
        new = []
        for x in frontier:
            for g in gens:
                y = x * g
                if y not in seen:
                    seen.add(y)
                    new.append(y)
        frontier = new
    return seen


class TestPerm:
    def test_composition_is_left_to_right(self):
        a = Perm.parse("(1,2)", 3)
        b = Perm.parse("(2,3)", 3)
        # 1 -> 2 under a, then 2 -> 3 under b
        assert (a * b)[0] == 2
        assert str(a * b) == "(1,3,2)"

    def test_parse_forms_agree(self):
        assert Perm.parse("(1,2)(3,4)", 4) == Perm.parse("[2,1,4,3]", 4) == Perm.parse([2, 1, 4, 3])

    def test_identity_text(self):
        assert str(Perm.identity(3)) == "()"
        assert Perm.parse("()", 3).is_identity()

    def test_bad_text(self):
        with pytest.raises(ValueError):
            Perm.parse("(1,2", 3)
        with pytest.raises(ValueError):
            Perm.parse("(1,5)", 3)

    @given(perms(6), perms(6), perms(6))
    def test_group_laws(self, a, b, c):
        assert (a * b) * c == a * (b * c)
        assert (a * a.inverse()).is_identity()
        assert a.conj(b) == b.inverse() * a * b

    @given(perms(7), st.integers(-5, 12))
    def test_power_and_order(self, a, k):
        assert (a ** a.order()).is_identity()
        expected = Perm.identity(7)
        step = a if k >= 0 else a.inverse()
        for _ in range(abs(k)):
            expected = expected * step
        assert a**k == expected

    @given(perms(6))
    def test_cycles_round_trip(self, a):
        assert Perm.parse(str(a), 6) == a

    @given(perms(5), perms(5))
    def test_sign_is_multiplicative(self, a, b):
        assert (a * b).sign() == a.sign() * b.sign()


class TestGroups:
    @pytest.mark.parametrize(
        "desc,order",
        [(("S", 4), 24), (("A", 4), 12), (("A", 5), 60), (("D", 12), 12), (("C", 7), 7), (("Q8",), 8)],
    )
    def test_orders(self, desc, order):
        assert family(*desc).order == order

    @given(st.lists(perms(5), min_size=1, max_size=3))
    @settings(max_examples=40)
    def test_enumeration_matches_brute_closure(self, gens):
        G = PermGroup(5, gens)
        assert set(G.elements) == brute_closure(gens, 5)

    def test_budget(self):
        G = PermGroup(6, ["(1,2,3,4,5,6)", "(1,2)"], element_budget=100)
        with pytest.raises(BudgetExceeded):
            _ = G.order

    def test_words_evaluate(self, S4):
        for g in S4.elements:
            w = S4.word(g)
            x = S4.identity
            for letter in w:
                s = S4.gens[abs(letter) - 1]
                x = x * (s if letter > 0 else s.inverse())
            assert x == g

    def test_table_matches_products(self, S4):
        T = S4.table
        els = S4.elements
        for i, j in itertools.product(range(24), repeat=2):
            assert els[T[i, j]] == els[i] * els[j]

    def test_centre_and_classes(self, S4):
        assert S4.centre.order == 1
        assert sorted(len(c) for c in S4.conjugacy_classes) == [1, 3, 6, 6, 8]
        D8 = family("D", 8)
        assert D8.centre.order == 2

    def test_normality(self, S4, A4):
        assert A4.is_normal_in(S4)
        assert not PermGroup(4, ["(1,2)"]).is_normal_in(S4)

    def test_normal_closure_of_involution(self, S4):
        N = normal_closure(S4, PermGroup(4, ["(1,2)(3,4)"]))
        assert N.order == 4

    def test_derived_series(self, S4):
        assert derived_subgroup(S4).order == 12
        assert derived_subgroup(derived_subgroup(S4)).order == 4

    def test_commutator_subgroup(self, S4):
        V = PermGroup(4, ["(1,2)(3,4)", "(1,3)(2,4)"])
        assert commutator_subgroup(V, S4, S4).order == 4


class TestHomomorphisms:
    def test_sign_map(self, S4):
        C2 = cyclic_group(2)
        sgn = GroupHom(S4, C2, [C2.gens[0], C2.gens[0]])
        assert sgn.kernel().order == 12
        assert sgn.is_surjective() and not sgn.is_injective()

    def test_rejects_non_hom(self, S4):
        C3 = cyclic_group(3)
        with pytest.raises(HomomorphismError):
            GroupHom(S4, C3, [C3.gens[0], C3.identity])

    def test_preimage_and_compose(self, A4, S4):
        inc = inclusion_hom(A4, S4)
        assert inc.is_injective()
        g = A4.elements[5]
        assert inc.preimage(g) == g
        assert inc.compose(GroupHom(S4, S4, list(S4.gens))).image().order == 12

    @given(st.integers(0, 23))
    def test_conjugation_is_automorphism(self, k):
        S4 = family("S", 4)
        c = S4.elements[k]
        f = GroupHom(S4, S4, [g.conj(c) for g in S4.gens])
        assert f.is_bijective()


class TestCosetsAndQuotients:
    def test_transversal_and_factor(self, S4):
        H = PermGroup(4, ["(1,2,3)", "(1,2)"])
        T = right_transversal(S4, H)
        assert len(T) == 4 and T.reps[0].is_identity()
        for t in T.reps:
            for q in S4.gens:
                p, u = factor_through_transversal(T, t, q)
                assert p in H and u in T.reps and t * q == p * u

    def test_bad_transversal(self, S4):
        H = PermGroup(4, ["(1,2,3)", "(1,2)"])
        with pytest.raises(ValueError):
            right_transversal(S4, H, [Perm.identity(4), Perm.parse("(1,2)", 4)])

    def test_quotient(self, S4):
        V = PermGroup(4, ["(1,2)(3,4)", "(1,3)(2,4)"])
        Q, proj = quotient_group(S4, V)
        assert Q.order == 6 and proj.kernel().order == 4
        with pytest.raises(NotNormal):
            quotient_group(S4, PermGroup(4, ["(1,2)"]))


class TestActionsAndProducts:
    def test_conjugation_action(self, S4, A4):
        act = GroupAction.conjugation(S4, A4)
        for p in S4.gens:
            for m in A4.elements:
                assert act.act(m, p) == m.conj(p)

    def test_non_action_rejected(self):
        C4 = cyclic_group(4)
        C3 = cyclic_group(3)
        # a generator of order 4 cannot act on C3 by an automorphism of order 2 and be trivial on its square
        with pytest.raises(ActionError):
            GroupAction(C3, C4, [[C4.gens[0].inverse()]])

    def test_semidirect_product_law(self):
        C2 = cyclic_group(2)
        C3 = cyclic_group(3)
        act = GroupAction(C2, C3, [[C3.gens[0].inverse()]])
        sd = semidirect_product(C2, C3, act)
        assert sd.group.order == 6 and not sd.group.is_abelian
        for r, s in itertools.product(C2.elements, repeat=2):
            for m, n in itertools.product(C3.elements, repeat=2):
                lhs = sd.element(r, m) * sd.element(s, n)
                assert lhs == sd.element(r * s, act.act(m, s) * n)
                assert sd.pair(lhs) == (r * s, act.act(m, s) * n)

    def test_direct_product(self, S3):
        dp = direct_product(S3, cyclic_group(2))
        assert dp.group.order == 12
        assert all(p.is_surjective() for p in dp.projections)

    def test_displacement(self, S3):
        act = GroupAction.conjugation(S3, S3)
        D = displacement_subgroup(S3, S3, act)
        assert D.order == 3


class TestAbelianInvariants:
    @given(st.lists(st.sampled_from([2, 3, 4, 5, 6, 8, 9]), min_size=1, max_size=3))
    @settings(max_examples=30, deadline=None)
    def test_cyclic_products(self, orders):
        A = direct_product(*(cyclic_group(n) for n in orders)).group
        inv = abelian_invariants(A)
        # invariant factors divide each other and multiply to the order
        prod = 1
        for d in inv:
            prod *= d
        assert prod == A.order
        assert all(b % a == 0 for a, b in zip(inv, inv[1:]))
        # brute force: number of elements of each order is determined by the invariants
        assert sorted(abelian_group(inv).element_orders) == sorted(A.element_orders)

    def test_known(self):
        assert invariants_from_orders([1]) == []
        A = direct_product(cyclic_group(4), cyclic_group(6), cyclic_group(2)).group
        assert abelian_invariants(A) == [2, 2, 12]

    def test_abelianization(self, S4, A4):
        assert abelianization(S4)[0] == [2]
        assert abelianization(A4)[0] == [3]
        assert abelianization(family("Q8"))[0] == [2, 2]


class TestSubgroups:
    @pytest.mark.parametrize("desc,count,classes", [(("S", 4), 30, 11), (("A", 4), 10, 5), (("D", 8), 10, 8), (("Q8",), 6, 6)])
    def test_counts(self, desc, count, classes):
        G = family(*desc)
        assert len(subgroups(G)) == count
        assert len(subgroup_classes(G)) == classes

    def test_brute_force_count_s3(self, S3):
        # every subset closed under products is a subgroup; enumerate via subsets of S3
        els = S3.elements
        found = set()
        for r in range(1, 7):
            for sub in itertools.combinations(els, r):
                s = set(sub)
                if all(a * b in s for a in s for b in s):
                    found.add(frozenset(s))
        assert len(found) == len(subgroups(S3)) == 6

    def test_generated_subgroup(self, S4):
        H = generated_subgroup(S4, [Perm.parse("(1,2)", 4), Perm.parse("(1,2,3)", 4), Perm.identity(4)])
        assert H.order == 6


def test_symmetric_membership_is_cheap():
    S = symmetric_group(50)
    g = Perm(random.Random(1).sample(range(50), 50))
    assert g in S
