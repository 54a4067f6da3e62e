"""Group-law module: exact chord-tangent arithmetic and numeric torsion."""

from fractions import Fraction

import mpmath
import pytest

from hesse_lab.ellaw import (
    add,
    base_curve_point,
    contact_pair_vertices_check,
    curve_context,
    curve_point,
    neg,
    nine_torsion_check,
    prop62_check,
    scalar_mul,
    third_intersection,
    three_torsion_table,
    translation_compatibility_check,
    two_torsion_polar_check,
)
from hesse_lab.hesse import hesse_data

CTX = curve_context(1)
PTS = [base_curve_point(CTX, i) for i in range(9)]


def test_context_rejects_singular_and_bad_origin():
    with pytest.raises(ValueError):
        curve_context(-3)
    with pytest.raises(ValueError):
        curve_context(1, origin_index=9)


def test_curve_point_membership_enforced():
    with pytest.raises(ValueError):
        curve_point(CTX, (1, 1, 1))


def test_inflection_line_third_points():
    assert third_intersection(CTX, PTS[0], PTS[1]) == PTS[2]
    assert third_intersection(CTX, PTS[3], PTS[6]) == PTS[0]


def test_base_points_are_inflections():
    for p in PTS:
        assert third_intersection(CTX, p, p) == p


def test_first_addition_row():
    assert add(CTX, PTS[1], PTS[3]) == PTS[4]


def test_origin_is_identity():
    for p in PTS:
        assert add(CTX, p, PTS[0]) == p
        assert add(CTX, PTS[0], p) == p


def test_inverses_and_triple_torsion():
    for p in PTS:
        assert add(CTX, p, neg(CTX, p)) == PTS[0]
        assert scalar_mul(CTX, 3, p) == PTS[0]


GENERIC_CTX = curve_context(-6)
GENERIC = curve_point(GENERIC_CTX, (1, 2, 3))


def test_generic_point_arithmetic_stays_exact():
    ctx = GENERIC_CTX
    q = GENERIC
    double = add(ctx, q, q)
    assert ctx.member.contains(double.point)
    assert double.point != q.point
    assert neg(ctx, neg(ctx, q)) == q
    assert add(ctx, q, neg(ctx, q)).point == ctx.origin


def test_generic_scalar_multiples_consistent():
    ctx = GENERIC_CTX
    q = GENERIC
    six_a = scalar_mul(ctx, 6, q)
    six_b = scalar_mul(ctx, 2, scalar_mul(ctx, 3, q))
    six_c = scalar_mul(ctx, 3, scalar_mul(ctx, 2, q))
    assert six_a == six_b == six_c
    assert scalar_mul(ctx, -2, q) == neg(ctx, scalar_mul(ctx, 2, q))


def test_associativity_mixed_points():
    ctx = GENERIC_CTX
    q = GENERIC
    b1 = base_curve_point(ctx, 1)
    b3 = base_curve_point(ctx, 3)
    assert add(ctx, add(ctx, q, b1), b3) == add(ctx, q, add(ctx, b1, b3))
    assert add(ctx, q, b1) == add(ctx, b1, q)


def test_three_torsion_table_matches_labels():
    for lam in (1, 2):
        report = three_torsion_table(lam)
        assert report.holds
        assert report.table[1][3] == 4
        assert report.table[0][5] == 5
    with pytest.raises(ValueError):
        three_torsion_table(-3)


def test_translation_compatibility():
    report = translation_compatibility_check(1)
    assert report.holds
    # matrix action convention: each generator translates by the inverse
    # of the point singled out under the substitution convention
    assert report.details["assignments"] == {"cycle": 6, "scale": 1}


def test_contact_pair_vertices():
    report = contact_pair_vertices_check()
    assert report.holds
    assert report.details["count"] == 9


# ---------------------------------------------------------------------------
# numeric suites
# ---------------------------------------------------------------------------


def test_two_torsion_polar_samples():
    tol = mpmath.mpf(10) ** -25
    for lam, i in ((1, 0), (0, 0), (1, 3), (2, 7)):
        report = two_torsion_polar_check(lam, i)
        assert report.holds, (lam, i)
        assert len(report.points) == 3
        assert max(report.tangent_residuals) < tol
        assert max(report.doubling_residuals) < tol


def test_nine_torsion_samples():
    tol = mpmath.mpf(10) ** -25
    for lam in (1, 2, Fraction(1, 2)):
        report = nine_torsion_check(lam, 1)
        assert report.holds, lam
        assert len(report.points) == 9
        assert set(report.triple_indices) == {2}
        assert max(report.triple_residuals) < tol
        assert max(report.nine_residuals) < tol
        assert report.chain_residual < tol


def test_nine_torsion_other_cubic():
    report = nine_torsion_check(1, 5)
    assert report.holds
    assert set(report.triple_indices) == {1}


def test_nine_torsion_input_validation():
    with pytest.raises(ValueError):
        nine_torsion_check(1, 0)
    with pytest.raises(ValueError):
        nine_torsion_check(-3, 1)


def test_tangent_section_generic():
    report = prop62_check(1)
    assert report.holds
    assert report.count_on_sextic == 2
    assert report.off_base_points
    assert report.swap_symmetric
    assert report.hessian_param.affine() == Fraction(-109, 3)


def test_tangent_section_fermat_degenerates_to_cusps():
    report = prop62_check(0)
    assert report.holds
    assert report.count_on_sextic == 2
    # at the Fermat member the two residual points collide with cusps
    assert not report.off_base_points
    assert report.hessian_param.is_infinite


def test_numeric_reports_stable_under_more_precision():
    lo = nine_torsion_check(1, 1, precision_bits=128)
    hi = nine_torsion_check(1, 1, precision_bits=256)
    assert lo.holds and hi.holds
    assert max(hi.triple_residuals) < max(lo.triple_residuals)
    assert set(lo.triple_indices) == set(hi.triple_indices)
