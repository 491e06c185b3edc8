from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings
from hypothesis import strategies as st

from ldp import discrepancy as D
from ldp.graphs import chain, parse_dynkin, parse_graph, star

weights = st.integers(min_value=2, max_value=7)


def sympy_discrepancies(g):
    from ldp.graphs import intersection_matrix

    m = sympy.Matrix(intersection_matrix(g))
    kappa = sympy.Matrix([w - 2 for _, w in g.vertices])
    sol = m.solve(-kappa)
    return [Fraction(str(x)) for x in sol]


def test_du_val_chain_has_zero_discrepancies():
    assert D.discrepancies(chain([2, 2, 2, 2])) == (0, 0, 0, 0)


def test_pinned_discrepancies():
    assert D.discrepancies(chain([3])) == (Fraction(1, 3),)
    assert D.discrepancies(chain([2, 4])) == (Fraction(2, 7), Fraction(4, 7))


@given(st.lists(weights, min_size=1, max_size=6))
@settings(max_examples=40, deadline=None)
def test_chain_discrepancies_match_sympy(ws):
    g = chain(ws)
    assert list(D.discrepancies(g)) == sympy_discrepancies(g)


def test_star_discrepancies_match_sympy():
    g = star(2, ((2,), (3,), (5,)))
    assert list(D.discrepancies(g)) == sympy_discrepancies(g)


def test_log_canonical_star_reaches_one():
    # negative definite but not klt: the center coefficient hits 1
    g = star(2, ((2,), (4,), (4,)))
    e = D.discrepancies(g)
    assert max(e) == 1
    assert not D.is_klt(parse_dynkin("[2;[2],[4],[4]]"))


def test_pair_coefficients_relations():
    g = chain([2, 3, 4])
    a = (1, 0, 1)
    data = D.pair_coefficients(g, a)
    assert data.b == tuple(d + e for d, e in zip(data.d, data.e))
    assert data.f == tuple(1 - b for b in data.b)
    assert data.pairing == sum(x * b for x, b in zip(a, data.b))


def test_pairing_scaled_agrees_with_exact_pairing():
    g = star(3, ((2, 2), (3,), (4,)))
    from ldp.graphs import intersection_matrix

    delta = abs(sympy.Matrix(intersection_matrix(g)).det())
    for a in [(1, 0, 0, 0, 0), (0, 2, 0, 1, 0), (1, 1, 1, 1, 1)]:
        data = D.pair_coefficients(g, a)
        assert D.pairing_scaled(g, a) == data.pairing * delta


def test_selfint_formula():
    g = chain([2, 4])
    a = (1, 0)
    data = D.pair_coefficients(g, a)
    assert D.selfint_kc(g, a) == 2 * (0 - 1) + data.pairing


def test_classify_log_resolution():
    cls = D.classify_incidence(chain([2, 4]), (1, 0))
    assert cls.verdict == D.LOG_RESOLUTION
    assert cls.case == "1a"


def test_classify_tangent_pair():
    cls = D.classify_incidence(chain([4]), (2,))
    assert cls.verdicts == (D.ALMOST_LC_A, D.ALMOST_LC_B)


def test_classify_two_ends():
    cls = D.classify_incidence(chain([3, 2, 3]), (1, 0, 1))
    assert cls.verdict == D.ALMOST_LC_C
    assert cls.case == "1b"


def test_classify_rejects_large_pairing():
    cls = D.classify_incidence(chain([2]), (4,))
    assert cls.verdict == D.REJECTED


def test_classify_zero_incidence():
    with pytest.raises(D.ZeroIncidenceError):
        D.classify_incidence(chain([2, 4]), (0, 0))


def test_classify_index_mismatch():
    with pytest.raises(D.IndexMismatchError):
        D.classify_incidence(chain([2, 4]), (1,))


def test_closed_form_matches_solver_spot_checks():
    cases = [
        (chain([2, 3, 4]), (0, 2, 0)),
        (chain([2, 3, 4]), (1, 0, 1)),
        (star(2, ((2,), (3,), (5,))), (0, 1, 0, 0)),
        (star(3, ((2, 2), (3,), (4,))), (1, 0, 1, 0, 0)),
    ]
    for g, a in cases:
        data = D.pair_coefficients(g, a)
        for v, x in enumerate(a):
            if x:
                assert D.closed_form_f(g, a, v) == data.f[v]


def test_closed_form_rejects_off_support_vertex():
    with pytest.raises(D.UnsupportedConfigurationError):
        D.closed_form_f(chain([2, 4]), (1, 0), 1)


def test_lct_log_resolution_example():
    # chain (3), a=1: d=1/3, e=1/3, lct = (1-1/3)/(1/3) = 2
    assert D.lct_min_resolution(chain([3]), (1,)) == 2


def test_cartier_index_and_ksq():
    t = parse_dynkin("2[2^4]+[2,4]")
    assert D.cartier_index(t) == 7
    assert D.anticanonical_selfint(t) == Fraction(1, 7)
    t = parse_dynkin("2[2^4]+[3]")
    assert D.cartier_index(t) == 3
    assert D.anticanonical_selfint(t) == Fraction(1, 3)


def test_hunt_divisor_pinned():
    t = parse_dynkin("2[2^4]+[2;[2],[3],[5]]")
    comp, vertex, e0 = D.select_hunt_divisor(t)
    assert e0 == Fraction(28, 29)
    assert not comp.is_chain()


def test_hunt_divisor_skips_weight_two_chain_vertices():
    t = parse_dynkin("[2,4]")
    comp, vertex, e0 = D.select_hunt_divisor(t)
    assert e0 == Fraction(4, 7)
    assert dict(comp.vertices)[vertex] == 4


def test_hunt_divisor_du_val_error():
    with pytest.raises(D.AllDuValError):
        D.select_hunt_divisor(parse_dynkin("2[2^4]"))


def test_not_negative_definite_rejected():
    bad = star(2, ((2, 2), (2, 2), (2, 2)))
    with pytest.raises(D.NotNegativeDefiniteError):
        D.discrepancies(bad)
