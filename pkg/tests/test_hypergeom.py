from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from atkinloci.errors import GuardError, ZeroCoefficientError
from atkinloci.hypergeom import (
    HGParams,
    TriangleDatum,
    contiguous_quotient,
    f21_series,
    gauss_cf,
    general_closed_form,
    hypergeometric_ode,
    moments_from_cf,
    triangle_lyapunov,
    triangle_moments,
    triangle_recurrence_closed_form,
)
from atkinloci.pade_ortho import cf_coefficients, recurrence_from_cf
from atkinloci.picard_fuchs import ODESpec, residual, solve_series


def test_triangle_parameters():
    d = TriangleDatum.hecke(5, 1)
    assert (d.N, d.a, d.b) == (3, F(3, 20), F(7, 20))
    d2 = TriangleDatum.hecke(5, 2)
    assert (d2.N, d2.a, d2.b) == (1, F(1, 20), F(9, 20))
    d3 = TriangleDatum.hecke(3, 1)
    assert (d3.a, d3.b) == (F(1, 12), F(5, 12))
    with pytest.raises(ValueError):
        TriangleDatum(2, 2, 1, 1, 1)


def test_f21_examples():
    assert f21_series(HGParams(F(1, 12), F(5, 12)), 2).coeffs == (1, F(5, 144))
    assert f21_series(HGParams(0, F(1, 3)), 5).coeffs == (1, 0, 0, 0, 0)
    assert f21_series(HGParams(F(3, 20), F(7, 20)), 2).coeffs == (1, F(21, 400))


def test_gauss_cf_zero_path():
    with pytest.raises(ZeroCoefficientError) as exc:
        gauss_cf(HGParams(F(1, 3), F(1)), 4)
    assert exc.value.index == 2


@pytest.mark.parametrize("m", [3, 5, 7, 9])
def test_cf_matches_series(m):
    for j in range(1, m // 2 + 1 if m > 3 else 2):
        d = TriangleDatum.hecke(m, j)
        cf = gauss_cf(d.params, 16)
        series = contiguous_quotient(d.params, 17).coeffs
        assert moments_from_cf(cf, 17) == list(series)
        assert cf_coefficients(triangle_moments(d), 16) == cf


@pytest.mark.parametrize("m,j", [(5, 1), (5, 2), (7, 1), (7, 2), (7, 3), (9, 2), (3, 1)])
def test_hecke_closed_form_matches_cf(m, j):
    d = TriangleDatum.hecke(m, j)
    closed = triangle_recurrence_closed_form(d, 8)
    rec = recurrence_from_cf(gauss_cf(d.params, 18))
    assert closed.a0 == rec.a0 == d.b
    assert closed.a == rec.a[:8]
    assert closed.b == rec.b[:8]


def test_closed_form_examples():
    d = TriangleDatum.hecke(5, 1)
    cl = triangle_recurrence_closed_form(d, 2)
    assert cl.a[0] == F(25 * 15 - 40 + 4, 600) == F(113, 200)
    assert cl.b[1] == F(27 * 17 * 1419, 11520000)
    lam = gauss_cf(d.params, 4)
    assert cl.b[1] == lam[3] * lam[4]


def test_general_form_is_gated_and_disagrees():
    d = TriangleDatum.hecke(5, 1)
    with pytest.raises(GuardError):
        general_closed_form(d, 1)
    with pytest.raises(GuardError):
        triangle_recurrence_closed_form(d, 1, form="general")
    assert general_closed_form(d, 1, suspect=True).a[0] != F(113, 200)


def test_lyapunov():
    assert triangle_lyapunov(TriangleDatum.hecke(3, 1)) == F(1, 6)
    assert triangle_lyapunov(TriangleDatum.hecke(5, 1)) == F(1, 10)
    assert triangle_lyapunov(TriangleDatum.hecke(5, 2)) == F(1, 30)


ab = st.builds(F, st.integers(1, 30), st.integers(31, 60))


@given(ab, ab)
def test_ode_solution_is_f21(a, b):
    p = HGParams(a, b)
    ode = ODESpec(*hypergeometric_ode(p))
    y = solve_series(ode, 12)
    assert y == f21_series(p, 12)
    assert not any(residual(ode, y))
