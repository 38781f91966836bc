from __future__ import annotations

import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xmodcalc.fpres.constructions import copower_presentation, orbit_closure, peiffer_relators, presentation_of, shift_word
from xmodcalc.fpres.tietze import tietze_simplify
from xmodcalc.fpres.todd_coxeter import CosetLimitExceeded, group_order, prune_relators, relators_hold, todd_coxeter
from xmodcalc.fpres.words import (
    Presentation,
    PresentationError,
    canonical,
    cyclic_reduce,
    evaluate_word,
    format_presentation,
    free_reduce,
    inverse,
    parse_presentation,
    parse_word,
    presentation,
)
from xmodcalc.ident import catalog_group, catalog_labels, family
from xmodcalc.induced import peiffer_quotient_order
from xmodcalc.perm import GroupAction, GroupHom, Perm, cyclic_group
from xmodcalc.xmod import PreCrossedModule, peiffer_subgroup, xmod_normal

letters = st.integers(-3, 3).filter(bool)
words = st.lists(letters, max_size=12).map(tuple)


class TestWords:
    @given(words)
    def test_free_reduce_is_reduced_and_idempotent(self, w):
        r = free_reduce(w)
        assert all(a != -b for a, b in zip(r, r[1:]))
        assert free_reduce(r) == r

    @given(words, words)
    def test_inverse(self, u, v):
        assert free_reduce(u + inverse(u)) == ()
        assert inverse(u + v) == inverse(v) + inverse(u)

    @given(words)
    def test_canonical_is_rotation_and_inversion_invariant(self, w):
        c = cyclic_reduce(w)
        if not c:
            return
        k = len(c) // 2
        assert canonical(c) == canonical(c[k:] + c[:k]) == canonical(inverse(c))

    @given(words, st.lists(st.permutations(range(5)).map(Perm), min_size=3, max_size=3))
    def test_evaluation_respects_reduction(self, w, imgs):
        assert evaluate_word(w, imgs) == evaluate_word(free_reduce(w), imgs)
        assert evaluate_word(w + inverse(w), imgs).is_identity()

    def test_evaluation_is_left_to_right(self):
        a, b = Perm.parse("(1,2)", 3), Perm.parse("(1,3)", 3)
        assert evaluate_word((1, 2), [a, b]) == a * b
        assert evaluate_word((), [a, b]).is_identity()

    @given(words)
    def test_text_round_trip(self, w):
        names = ("x", "y", "z")
        pres = presentation(3, [w] if cyclic_reduce(w) else [], names)
        again = parse_presentation(format_presentation(pres))
        assert [canonical(r) for r in again.relators] == [canonical(r) for r in pres.relators]

    def test_parse(self):
        assert parse_word("x*y^-1*x^2", ["x", "y"]) == (1, -2, 1, 1)
        assert parse_word("(x*y)^2", ["x", "y"]) == (1, 2, 1, 2)
        with pytest.raises(PresentationError):
            presentation(1, [(2,)])

    def test_trivial_relators_dropped(self):
        pres = presentation(1, [(1, -1), (1, 1, 1), (-1, -1, -1)])
        assert pres.relators == ((1, 1, 1),)


class TestToddCoxeter:
    @pytest.mark.parametrize(
        "text,order",
        [
            ("<x | x^3>", 3),
            ("<x,y | x^2, y^3, (x*y)^2>", 6),
            ("<x,y | x^2, y^3, (x*y)^3>", 12),
            ("<x,y | x^2, y^3, (x*y)^4>", 24),
            ("<x,y | x^2, y^3, (x*y)^5>", 60),
            ("<x,y | x^4, x^2*y^-2, y^-1*x*y*x>", 8),
            ("<x,y | x^3, y^3, (x*y)^2>", 12),
        ],
    )
    def test_known_orders(self, text, order):
        assert group_order(parse_presentation(text)) == order

    def test_metacyclic_presentation(self):
        for p, n, a in [(2, 3, 2), (4, 5, 2), (3, 7, 2)]:
            pres = parse_presentation(f"<g,h | g^{p}, h^{n}, g^-1*h^-1*g*h^{a}>")
            table = todd_coxeter(pres)
            assert table.n_cosets == p * n
            assert relators_hold(table, pres.relators)

    def test_free_group_hits_limit(self):
        with pytest.raises(CosetLimitExceeded):
            todd_coxeter(parse_presentation("<x,y | >"), max_cosets=1000)

    def test_regular_representation(self):
        table = todd_coxeter(parse_presentation("<x,y | x^2, y^3, (x*y)^2>"))
        G = table.group()
        assert G.order == G.degree == 6
        # regular: no non-identity element fixes a point
        assert all(g.is_identity() or all(g[i] != i for i in range(6)) for g in G.elements)


class TestPresentationOf:
    @pytest.mark.parametrize("desc", [("C", 3), ("A", 4), ("S", 4), ("Q8",), ("D", 10), ("SL", 2, 3)])
    def test_round_trip(self, desc):
        G = family(*desc)
        gp = presentation_of(G)
        table = todd_coxeter(gp.pres)
        assert table.n_cosets == G.order
        assert all(gp.evaluate(r).is_identity() for r in gp.pres.relators)
        # the map from the coset group back to G is an isomorphism
        phi = GroupHom(table.group(), G, list(G.gens))
        assert phi.is_bijective()

    def test_cyclic_is_single_relator(self):
        gp = presentation_of(cyclic_group(3))
        assert gp.pres.n_gens == 1 and [len(r) for r in gp.pres.relators] == [3]

    def test_catalog_small(self):
        for label in catalog_labels():
            G = catalog_group(label)
            if G.order <= 60:
                assert todd_coxeter(presentation_of(G).pres).n_cosets == G.order, label


class TestCopower:
    def test_single_copy(self):
        pres = parse_presentation("<x,y | x^3, y^3, (x*y)^2>")
        assert copower_presentation(pres, 1).relators == pres.relators

    def test_counts(self):
        c2 = parse_presentation("<x | x^2>")
        cop = copower_presentation(c2, 12)
        assert cop.n_gens == 12 and len(cop.relators) == 12
        a4 = parse_presentation("<x,y | x^3, y^3, (x*y)^2>")
        cop = copower_presentation(a4, 2)
        assert cop.n_gens == 4 and len(cop.relators) == 6

    def test_shift(self):
        assert shift_word((1, -2), 4) == (5, -6)

    def test_trivial_module_gives_no_relators(self):
        assert peiffer_relators(0, 3, [], lambda k, s: None, lambda k, t, q: (k, t)) == []


def test_orbit_closure_under_conjugation(S4):
    A4 = family("A", 4)
    closure = orbit_closure([Perm.parse("(1,2,3)", 4)], S4.gens, lambda m, p: m.conj(p))
    assert len(closure) == 8
    assert all(c in A4 for c in closure)


class TestTietze:
    def test_redundant_generator(self):
        pres = parse_presentation("<x,y | y*x^-1, x^3>")
        simple, trace = tietze_simplify(pres)
        assert simple.n_gens == 1
        assert [canonical(r) for r in simple.relators] == [(1, 1, 1)]
        assert trace.forward[1] == (1,)
        assert trace.backward == ((1,),)

    def test_minimal_unchanged(self):
        pres = parse_presentation("<x | x^3>")
        simple, trace = tietze_simplify(pres)
        assert simple.relators == pres.relators and trace.forward == ((1,),)

    @pytest.mark.parametrize("desc", [("A", 4), ("S", 4), ("D", 12), ("Q8",)])
    def test_trace_soundness(self, desc):
        G = family(*desc)
        base = presentation_of(G).pres
        # pad with redundant generators equal to products of the originals
        n = base.n_gens
        rels = list(base.relators) + [(n + 1, -1, -2), (n + 2, -(n + 1), -1)]
        pres = presentation(n + 2, rels)
        simple, trace = tietze_simplify(pres)
        table = todd_coxeter(simple)
        assert table.n_cosets == G.order
        imgs = [table.evaluate(w) for w in trace.forward]
        # forward images satisfy the original relators, and backward recovers survivors
        assert all(evaluate_word(r, imgs).is_identity() for r in pres.relators)
        for k, w in enumerate(trace.backward):
            assert evaluate_word(w, imgs) == table.action[k]
        phi = GroupHom(table.group(), G, [G.gens[abs(w[0]) - 1] if abs(w[0]) <= n else _extra(G, abs(w[0]) - n) for w in trace.backward])
        assert phi.is_bijective()


def _extra(G, k):
    a, b = G.gens[0], G.gens[1]
    return a * b if k == 1 else a * b * a


def test_a4_in_s4_presentation_has_order_36():
    text = "<x,y,z | x^3, y^3, z^3, (x*y)^2, z*y^-1*z^-1*x^-1, y*z*y*x^-1*z^-1, y^-1*x^2*y^2*x^-1>"
    table = todd_coxeter(parse_presentation(text))
    assert table.n_cosets == 36
    g = table.evaluate(parse_word("y*z*x^2", ["x", "y", "z"]))
    assert g.order() == 3
    G = table.group()
    # it generates a central C3 summand
    assert all(g * h == h * g for h in G.gens)


def test_prune_relators_keeps_the_group():
    pres = parse_presentation("<x,y | x^2, y^3, (x*y)^2, (x*y)^4, x^4, y^-1*x*y*x*y*x>")
    pruned = prune_relators(pres, 6)
    assert len(pruned.relators) < len(pres.relators)
    assert group_order(pruned) == 6


def test_displayed_a4_in_s4_presentation_is_short(S4):
    from xmodcalc.ident import are_isomorphic
    from xmodcalc.induced import induce_subgroups

    A4 = family("A", 4)
    r = induce_subgroups(S4, A4.gens, A4.gens)
    shown = r.presentation
    assert r.stats.pruned and len(shown.relators) <= 10
    table = todd_coxeter(shown)
    assert table.n_cosets == 36
    assert are_isomorphic(table.group(), r.group) is not None


def _zero_pcm(M, P, imgs):
    return PreCrossedModule(M, P, GroupHom(M, P, [P.identity] * len(M.gens)), GroupAction(P, M, imgs))


@settings(max_examples=10, deadline=None)
@given(st.sampled_from([("S", 3), ("Q8",), ("D", 8), ("A", 4), ("D", 10)]), st.randoms(use_true_random=False))
def test_peiffer_quotient_matches_brute_force(desc, rnd):
    M = family(*desc)
    # conjugation by a random element of M, as an action of C2 when it is an involution, else trivial
    c = rnd.choice(M.elements)
    C2 = cyclic_group(2)
    imgs = [[m.conj(c) for m in M.gens]] if (c * c).is_identity() else [list(M.gens)]
    pcm = _zero_pcm(M, C2, imgs)
    assert peiffer_quotient_order(pcm) == M.order // peiffer_subgroup(pcm).order


def test_peiffer_relators_order_independent():
    X = xmod_normal(family("A", 4), family("S", 4))
    pcm = PreCrossedModule(X.M, X.P, X.boundary, X.action)
    base = peiffer_quotient_order(pcm)
    assert base == 12
    rnd = random.Random(3)
    pres = presentation_of(X.M).pres
    closure = orbit_closure(list(X.M.gens), X.P.gens, X.act)
    idx = {w: k for k, w in enumerate(closure)}
    words_ = [X.M.word(w) for w in closure]
    rels = peiffer_relators(len(X.M.gens), 1, words_, lambda k, s: X.boundary(closure[k]), lambda k, t, q: (idx[X.act(closure[k], q)], 0))
    for _ in range(3):
        shuffled = list(rels)
        rnd.shuffle(shuffled)
        assert group_order(Presentation(pres.n_gens, pres.relators + tuple(shuffled), pres.names)) == 12


def test_presentation_dataclass():
    pres = Presentation(1, ((1, 1),), ("x",))
    assert pres.total_length() == 2 and str(pres) == "<x | x^2>"
