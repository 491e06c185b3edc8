"""Tests for the cubic-pencil and weighted-model computations."""

from fractions import Fraction

import pytest

from ldp.fields import QQ, PrimeField
from ldp.pencil import (
    CUSP,
    NODE,
    PENCIL_VARS,
    WEIGHTED_VARS,
    WEIGHTS,
    BadCharacteristicError,
    MultipleSingularPointsError,
    NotSingularMemberError,
    ZeroInputError,
    classify_singular_member,
    cross_ratio_minimal_polynomials,
    pencil_cubic,
    pencil_singular_locus,
    quadratic_discriminant,
    quadratic_factor_double_root,
    singular_parameter_field,
    squarefree_core,
    weighted_member_check,
    weighted_surface_equation,
)
from ldp.poly import ExactPolynomial as Poly


# -- singular locus -----------------------------------------------------------


def test_locus_over_rationals():
    s, t = Poly.gens(QQ, ("s", "t"))
    assert pencil_singular_locus(QQ) == s**3 * t - 11 * s**2 * t**2 - s * t**3


@pytest.mark.parametrize("p", [7, 11, 13])
def test_locus_mod_p_is_reduction(p):
    F = PrimeField(p)
    reduced = pencil_singular_locus(QQ).map_field(F).monic()
    assert pencil_singular_locus(F) == reduced


def test_locus_char5_picks_up_the_double_root():
    F5 = PrimeField(5)
    s, t = Poly.gens(F5, ("s", "t"))
    # over F_5 the quadratic factor degenerates to a square, so the reduced
    # locus drops a degree: s*t*(s + 2t)
    assert pencil_singular_locus(F5) == s * t * (s + 2 * t)


@pytest.mark.parametrize("p", [2, 3])
def test_locus_rejects_bad_characteristics(p):
    with pytest.raises(BadCharacteristicError):
        pencil_singular_locus(PrimeField(p))


def test_double_root_flag():
    assert quadratic_factor_double_root(PrimeField(5)) is True
    assert quadratic_factor_double_root(QQ) is False
    assert quadratic_factor_double_root(PrimeField(7)) is False
    with pytest.raises(BadCharacteristicError):
        quadratic_factor_double_root(PrimeField(2))


# -- base points --------------------------------------------------------------


def test_four_base_points_lie_on_every_member():
    C = pencil_cubic(QQ)
    base = [(1, 1, 1), (1, 1, -1), (1, -1, 1), (-1, 1, 1)]
    for sv in (0, 1, 2, -3):
        for tv in (0, 1, -1, 5):
            if sv == tv == 0:
                continue
            for X, Y, Z in base:
                val = C.evaluate({"s": sv, "t": tv, "X": X, "Y": Y, "Z": Z})
                assert not val


# -- singular member classification --------------------------------------------


def test_cusp_in_characteristic_five():
    rep = classify_singular_member(PrimeField(5), (1, 2))
    assert rep.kind == CUSP


def test_nodes_at_the_conjugate_parameters():
    K = singular_parameter_field()
    theta = K.generator
    for root in (theta, theta.conjugate()):
        rep = classify_singular_member(QQ, (K.one, root))
        assert rep.kind == NODE


def test_degenerate_member_has_several_singular_points():
    with pytest.raises(MultipleSingularPointsError):
        classify_singular_member(QQ, (1, 0))


def test_smooth_member_is_rejected():
    with pytest.raises(NotSingularMemberError):
        classify_singular_member(QQ, (1, 1))


def test_zero_parameter_is_rejected():
    with pytest.raises(ValueError):
        classify_singular_member(QQ, (0, 0))


# -- cross-ratio orbit ----------------------------------------------------------


def test_cross_ratio_quadratics():
    quads = cross_ratio_minimal_polynomials()
    assert quads == sorted(quads)
    assert len(quads) == 3
    # each quadratic is primitive with positive leading coefficient
    for a, b, c in quads:
        assert a > 0
    # all cross-ratios generate the same quadratic field
    cores = {squarefree_core(quadratic_discriminant(q)) for q in quads}
    assert cores == {5}


def test_squarefree_core():
    assert squarefree_core(12) == 3
    assert squarefree_core(-18) == -2
    assert squarefree_core(1) == 1
    assert squarefree_core(15125) == 5
    with pytest.raises(ZeroInputError):
        squarefree_core(0)


# -- weighted model -------------------------------------------------------------


def test_weighted_surface_shape():
    F = weighted_surface_equation()
    assert F.field.p == 5
    assert F.is_weighted_homogeneous(6)
    zero = Poly.zero(F.field, WEIGHTED_VARS, WEIGHTS)
    x, y = (Poly.variable(F.field, WEIGHTED_VARS, v, WEIGHTS) for v in ("x", "y"))
    # restricting to t = 0 leaves the cuspidal normal form y^2 - x^3
    assert F.substitute({"t": zero}) == y**2 - x**3


@pytest.mark.parametrize("i", [2, 3])
def test_weighted_members_pass_all_checks(i):
    rep = weighted_member_check(i)
    assert rep.degree_ok
    assert rep.cusp_support_ok
    assert rep.smooth
    assert rep.all_ok


def test_weighted_member_degree_validation():
    with pytest.raises(ValueError):
        weighted_member_check(4)
