"""Groebner engine and ideal toolbox."""

import pytest
from hypothesis import given, settings, strategies as st

from conftest import membership_by_linear_algebra, monomials_of_degree
from singlocus.errors import InternalLimitError, ValidationError
from singlocus.groebner import (GroebnerBasis, Ideal, buchberger_criterion_holds,
                                colon, eliminate, exact_divide,
                                homogeneous_components, ideal_equal, intersect,
                                intersect_many, normal_form,
                                radical_membership, reduced_groebner, saturate,
                                saturate_by_variable, saturate_irrelevant)
from singlocus.polyring import GF, LEX, QQ, GREVLEX, PolyRing


@pytest.fixture
def vars_p(ring_p):
    return ring_p.variables()


class TestReducedBasis:
    def test_already_reduced(self, ring_p, vars_p):
        x, y, z, w = vars_p
        gb = reduced_groebner(Ideal(ring_p, (x, y)))
        assert gb == [y, x] or gb == [x, y]

    def test_row_reduction(self, ring_p, vars_p):
        x, y, z, w = vars_p
        assert set(map(str, reduced_groebner(Ideal(ring_p, (x + y, x - y))))) \
            == {"x", "y"}

    def test_monomial_triple(self, ring_p, vars_p):
        x, y, z, w = vars_p
        gens = (x * y, x * z, y * z)
        gb = reduced_groebner(Ideal(ring_p, gens))
        assert set(gb) == set(gens)

    def test_idempotent_and_verified(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, ((x + y) ** 2 * z, x * w - y * z, y * y * w))
        gb = ideal.groebner()
        again = Ideal(ring_p, gb.polys).groebner()
        assert gb.polys == again.polys
        assert buchberger_criterion_holds(gb)

    def test_inhomogeneous_generators_rejected(self, ring_p, vars_p):
        x, y, z, w = vars_p
        with pytest.raises(ValidationError):
            Ideal(ring_p, (x + x * y,))

    def test_determinism(self, ring_p, vars_p):
        x, y, z, w = vars_p
        gens = (x * y - z * z, y * w - x * x, z * w * w - y * y * x)
        a = Ideal(ring_p, gens).groebner().polys
        b = Ideal(ring_p, gens).groebner().polys
        assert a == b
        assert [p.terms for p in a] == [p.terms for p in b]

    def test_over_rationals(self, ring_q):
        x, y, z, w = ring_q.variables()
        gb = reduced_groebner(Ideal(ring_q, (x + y, x - y)))
        assert set(map(str, gb)) == {"x", "y"}


class TestNormalForm:
    def test_member_reduces_to_zero(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x * y - z * z, y * z))
        gb = ideal.groebner()
        probe = (x * y - z * z) * w + (y * z) * (x + w)
        assert gb.normal_form(probe).is_zero()

    def test_lex_substitution(self):
        ring = PolyRing(("x", "y"), GF(32003))
        x, y = ring.variables()
        gb = Ideal(ring, (x - y,)).groebner(LEX)
        assert gb.normal_form(x * x) == y * y

    def test_monomial_multiple(self, ring_p, vars_p):
        x, y, z, w = vars_p
        gb = Ideal(ring_p, (x, y)).groebner()
        assert gb.normal_form(w * x).is_zero()

    def test_no_term_divisible_by_leads(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x * x - y * z, y * y - x * w))
        gb = ideal.groebner()
        leads = [p.leading_term()[0] for p in gb.polys]
        nf = gb.normal_form((x + y + z) ** 4)
        for e in nf.terms:
            assert not any(all(a >= b for a, b in zip(e, lt)) for lt in leads)

    def test_membership_matches_linear_algebra(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x * y - z * z, z * w))
        gb = ideal.groebner()
        for d in range(1, 5):
            for m in monomials_of_degree(4, d):
                f = ring_p.from_terms({m: 1}) + (x + w) ** d
                assert gb.contains(f) == membership_by_linear_algebra(f, ideal)


class TestIdealEquality:
    def test_permuted_generators(self, ring_p, vars_p):
        x, y, z, w = vars_p
        assert ideal_equal(Ideal(ring_p, (x, y)), Ideal(ring_p, (y, x)))

    def test_different_generating_sets(self, ring_p, vars_p):
        x, y, z, w = vars_p
        assert ideal_equal(Ideal(ring_p, (x, y)), Ideal(ring_p, (x + y, y)))

    def test_strict_containment(self, ring_p, vars_p):
        x, y, z, w = vars_p
        assert not ideal_equal(Ideal(ring_p, (x,)), Ideal(ring_p, (x * x,)))


class TestIntersection:
    def test_principal(self, ring_p, vars_p):
        x, y, z, w = vars_p
        got = intersect(Ideal(ring_p, (x,)), Ideal(ring_p, (y,)))
        assert ideal_equal(got, Ideal(ring_p, (x * y,)))

    def test_two_lines(self, ring_p, vars_p):
        x, y, z, w = vars_p
        got = intersect(Ideal(ring_p, (x, y)), Ideal(ring_p, (z, w)))
        want = Ideal(ring_p, (x * z, x * w, y * z, y * w))
        assert ideal_equal(got, want)
        # brute-force membership both ways
        for g in got.groebner().polys:
            assert membership_by_linear_algebra(g, want)
        for g in want.gens:
            assert membership_by_linear_algebra(g, got)

    def test_three_coordinate_lines(self, ring_p, vars_p):
        x, y, z, w = vars_p
        got = intersect_many([Ideal(ring_p, (x, y)), Ideal(ring_p, (x, z)),
                              Ideal(ring_p, (y, z))])
        assert ideal_equal(got, Ideal(ring_p, (x * y, x * z, y * z)))

    def test_over_rationals(self, ring_q):
        x, y, z, w = ring_q.variables()
        got = intersect(Ideal(ring_q, (x, y)), Ideal(ring_q, (z, w)))
        assert ideal_equal(got, Ideal(ring_q, (x * z, x * w, y * z, y * w)))


class TestColonAndSaturation:
    def test_colon_simple(self, ring_p, vars_p):
        x, y, z, w = vars_p
        got = colon(Ideal(ring_p, (x * y,)), Ideal(ring_p, (x,)))
        assert ideal_equal(got, Ideal(ring_p, (y,)))

    def test_colon_unit(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x * x, y * z))
        got = colon(ideal, Ideal(ring_p, (ring_p.one(),)))
        assert ideal_equal(got, ideal)

    def test_colon_hand_example(self, ring_p, vars_p):
        x, y, z, w = vars_p
        got = colon(Ideal(ring_p, (x * x, x * y)), Ideal(ring_p, (x,)))
        assert ideal_equal(got, Ideal(ring_p, (x, y)))

    def test_saturate_hand_example(self, ring_p, vars_p):
        x, y, z, w = vars_p
        sat, steps = saturate(Ideal(ring_p, (x * x * y, x * x * z)),
                              Ideal(ring_p, (x,)))
        assert ideal_equal(sat, Ideal(ring_p, (y, z)))
        assert steps == 2

    def test_saturate_by_unit(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x * y, z * z))
        sat, steps = saturate(ideal, Ideal(ring_p, (ring_p.one(),)))
        assert ideal_equal(sat, ideal)
        assert steps == 0

    def test_saturation_is_fixed_point(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x * x * y, x * y * y, z * x * x))
        by = Ideal(ring_p, (x, y))
        sat, _ = saturate(ideal, by)
        again = colon(sat, by)
        assert ideal_equal(sat, again)
        # containment I subset of sat
        gb = sat.groebner()
        assert all(gb.contains(g) for g in ideal.gens)

    def test_saturate_irrelevant_acm_curve(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x, y))
        assert ideal_equal(saturate_irrelevant(ideal), ideal)

    def test_saturate_irrelevant_primary(self, ring_p, vars_p):
        x, y, z, w = vars_p
        m2 = Ideal(ring_p, (x, y, z, w)).power(2)
        assert saturate_irrelevant(m2).is_unit()

    def test_variable_saturation_keeps_saturated_ideals(self, ring_p, vars_p):
        x, y, z, w = vars_p
        # (x^2) is saturated even though x-saturation alone would destroy it
        ideal = Ideal(ring_p, (x * x,))
        assert ideal_equal(saturate_irrelevant(ideal), ideal)
        assert saturate_by_variable(ideal, 0).is_unit()

    def test_matches_iterated_colon_by_m(self, ring_p, vars_p):
        x, y, z, w = vars_p
        m = Ideal(ring_p, (x, y, z, w))
        for gens in [(x * x, x * y, y * y * z), (x * z - y * y, w * w * x),
                     (x * x * y - x * y * y,)]:
            ideal = Ideal(ring_p, gens)
            fast = saturate_irrelevant(ideal)
            slow, _ = saturate(ideal, m)
            assert ideal_equal(fast, slow)


class TestRadicalMembership:
    def test_nilpotent_direction(self, ring_p, vars_p):
        x, y, z, w = vars_p
        assert radical_membership(x, Ideal(ring_p, (x * x,)))

    def test_negative(self, ring_p, vars_p):
        x, y, z, w = vars_p
        assert not radical_membership(z, Ideal(ring_p, (x, y)))

    def test_radical_generators_against_jacobian(self):
        from singlocus.arrangement import jacobian_ideal, radical_comb
        from singlocus.corpus import load_arrangement
        arr = load_arrangement("seven_planes")
        J = jacobian_ideal(arr)
        rad = radical_comb(arr)
        for g in rad.groebner().polys:
            assert radical_membership(g, J)
        gbr = rad.groebner()
        for g in J.gens:
            assert gbr.contains(g)


class TestElimination:
    def test_eliminate_nothing(self, ring_p, vars_p):
        x, y, z, w = vars_p
        ideal = Ideal(ring_p, (x * y, z))
        assert ideal_equal(eliminate(ideal, []), ideal)

    def test_eliminate_all(self, ring_p, vars_p):
        x, y, z, w = vars_p
        assert eliminate(Ideal(ring_p, (x, y)), [0, 1, 2, 3]).is_zero()

    def test_hand_example(self, ring_p, vars_p):
        x, y, z, w = vars_p
        # x*(z) and y*(w - z) share the product relation after eliminating x, y
        ideal = Ideal(ring_p, (x * z, (x - y) * w))
        got = eliminate(ideal, [0, 1])
        for g in got.gens:
            assert all(e[0] == 0 and e[1] == 0 for e in g.terms)

    def test_auxiliary_variable_example(self):
        # eliminating t from (t*x, (1-t)*y) leaves exactly (x*y)
        ring = PolyRing(("t", "x", "y"), GF(32003))
        t, x, y = ring.variables()
        ideal = Ideal(ring, (t * x, (ring.one() - t) * y),
                      allow_inhomogeneous=True)
        got = eliminate(ideal, [0])
        assert [str(g) for g in got.gens] == ["x*y"]

    def test_intersection_via_elimination_consistency(self, ring_p, vars_p):
        x, y, z, w = vars_p
        a = Ideal(ring_p, (x, y))
        b = Ideal(ring_p, (y, z))
        inter = intersect(a, b)
        ga, gbb = a.groebner(), b.groebner()
        for g in inter.groebner().polys:
            assert ga.contains(g) and gbb.contains(g)


class TestExactDivision:
    def test_divide(self, ring_p, vars_p):
        x, y, z, w = vars_p
        f = (x + y) * (z * z - w * y)
        assert exact_divide(f, x + y) == z * z - w * y

    def test_inexact_rejected(self, ring_p, vars_p):
        x, y, z, w = vars_p
        with pytest.raises(ValidationError):
            exact_divide(x * x + y, x)


class TestHomogeneousComponents:
    def test_split(self, ring_p, vars_p):
        x, y, z, w = vars_p
        f = x + x * y + z * w + w * w * w
        comps = homogeneous_components(f)
        assert [c.total_degree() for c in comps] == [1, 2, 3]
        total = ring_p.zero()
        for c in comps:
            assert c.is_homogeneous()
            total = total + c
        assert total == f


# ---------------------------------------------------------------------------
# property tests


@st.composite
def small_homogeneous_ideal(draw, ring):
    gens = []
    for _ in range(draw(st.integers(1, 3))):
        d = draw(st.integers(1, 2))
        terms = {}
        for m in monomials_of_degree(4, d):
            if draw(st.booleans()):
                terms[m] = draw(st.integers(-4, 4))
        if terms:
            g = ring.from_terms(terms)
            if not g.is_zero():
                gens.append(g)
    if not gens:
        gens = [ring.variable(0)]
    return Ideal(ring, tuple(gens))


@given(st.data())
@settings(max_examples=25, deadline=None)
def test_intersection_membership_duality(data):
    ring = PolyRing(("x", "y", "z", "w"), GF(32003))
    a = data.draw(small_homogeneous_ideal(ring))
    b = data.draw(small_homogeneous_ideal(ring))
    inter = intersect(a, b)
    ga, gb, gi = a.groebner(), b.groebner(), inter.groebner()
    for d in (1, 2, 3):
        for m in monomials_of_degree(4, d)[::3]:
            f = ring.from_terms({m: 1})
            assert gi.contains(f) == (ga.contains(f) and gb.contains(f))
    for g in gi.polys:
        assert ga.contains(g) and gb.contains(g)


@given(st.data())
@settings(max_examples=20, deadline=None)
def test_buchberger_criterion_property(data):
    ring = PolyRing(("x", "y", "z", "w"), GF(32003))
    ideal = data.draw(small_homogeneous_ideal(ring))
    assert buchberger_criterion_holds(ideal.groebner())
