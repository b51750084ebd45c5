import pytest
from hypothesis import given, strategies as st

from atkinloci.errors import GuardError
from atkinloci.exact_arith import FFElem, is_prime
from atkinloci.loci import locus_report
from atkinloci.oracles import (
    cartier_manin,
    delta25_det_poly,
    field_elements,
    legendre_hasse,
    legendre_j,
    nonordinary_fibers_delta25,
    nonordinary_poly_delta25,
    nonresidue,
    roots_poly,
    ss_count,
    ss_elliptic_j,
)
from atkinloci.poly_series import Poly, is_palindromic
from atkinloci.presets import get_preset


def ff(p, *vals, w2=None):
    return {FFElem(v, 0, p, w2 if w2 is not None else nonresidue(p)) for v in vals}


def test_ss_elliptic_examples():
    assert ss_elliptic_j(11) == ff(11, 0, 1)
    assert ss_elliptic_j(13) == ff(13, 5)
    assert ss_elliptic_j(5) == ff(5, 0)


@pytest.mark.parametrize("p", [q for q in range(5, 60) if is_prime(q)])
def test_ss_count_and_galois_stability(p):
    S = ss_elliptic_j(p)
    assert len(S) == ss_count(p)
    poly = roots_poly(S, p, nonresidue(p))
    assert all(c.c1 == 0 for c in poly.coeffs)


def test_legendre_examples():
    z = FFElem(0, 0, 3)
    assert legendre_hasse(3) == Poly([FFElem(1, 0, 3), FFElem(1, 0, 3)], z, "l")
    assert [c.c0 for c in legendre_hasse(5).coeffs] == [1, 4, 1]
    assert [c.c0 for c in legendre_hasse(7).coeffs] == [1, 2, 2, 1]


@pytest.mark.parametrize("p", [q for q in range(3, 200) if is_prime(q)])
def test_legendre_self_reciprocal(p):
    assert is_palindromic(legendre_hasse(p))


@pytest.mark.parametrize("p", [q for q in range(5, 32) if is_prime(q)])
def test_legendre_roots_map_onto_supersingular_set(p):
    w2 = nonresidue(p)
    H = legendre_hasse(p).map_coeffs(lambda c: FFElem(c.c0, 0, p, w2), FFElem(0, 0, p, w2))
    roots = [x for x in field_elements(p, w2) if not H(x)]
    assert len(roots) == H.degree  # H splits over F_{p^2}
    assert all(x and x != 1 for x in roots)
    assert {legendre_j(x) for x in roots} == ss_elliptic_j(p)


def _dickson(p, eta, w2=None):
    z = FFElem(0, 0, p, w2)
    return Poly([-eta * 2 + z, z + 5, z, z - 5, z, z + 1], z, "x")


def test_cartier_manin_examples():
    z = FFElem(0, 0, 7)
    f = Poly([z - 1, z, z, z, z, z + 1], z, "x")
    A = cartier_manin(f, 7)
    # (x^5-1)^3 = x^15 - 3x^10 + 3x^5 - 1: only c_5 survives among c_6, c_5, c_13, c_12
    assert A.entries == ((z, z + 3), (z, z))
    assert not A.is_ordinary() and not (A @ A).det()
    # (p-1)/2 = 1: the entries are coefficients of f itself
    z3 = FFElem(0, 0, 3)
    g = Poly([FFElem(c, 0, 3) for c in (1, 2, 0, 1, 1, 1)], z3, "x")
    B = cartier_manin(g, 3)
    assert B.entries == ((g[2], g[1]), (g[5], g[4]))


def test_cartier_manin_guards():
    z = FFElem(0, 0, 7)
    with pytest.raises(GuardError):
        cartier_manin(Poly([z + 1, z, z, z + 1], z, "x"), 7)
    sq = Poly([z + 1, z + 2, z + 1], z, "x") * Poly([z + 3, z, z, z + 1], z, "x")
    with pytest.raises(GuardError, match="singular"):
        cartier_manin(sq, 7)


@given(st.integers(0, 10), st.integers(0, 10))
def test_cartier_manin_commutes_with_frobenius(a, b):
    p, w2 = 11, nonresidue(11)
    eta = FFElem(a, b, p, w2)
    if eta * eta == 1:
        return
    f = _dickson(p, eta, w2)
    fbar = f.map_coeffs(lambda c: c.frobenius())
    assert cartier_manin(fbar, p) == cartier_manin(f, p).frobenius()


@pytest.mark.parametrize("p", [7, 11, 13, 19])
def test_determinant_polynomial_matches_direct_matrices(p):
    h = delta25_det_poly(p)
    w2 = nonresidue(p)
    for eta in field_elements(p, w2):
        if eta * eta == 1:
            continue
        direct = cartier_manin(_dickson(p, eta, w2), p).det()
        acc = eta * 0
        for c in reversed(h):
            acc = acc * eta + c
        assert direct == acc


@pytest.mark.parametrize("p", [7, 11, 13])
def test_hasse_witt_trace_matches_point_count(p):
    # #C(F_p) = 1 + #{affine points}; #C(F_p) == 1 - tr(A) (mod p)
    squares = {x * x % p for x in range(p)}
    for e in range(p):
        if (e * e - 1) % p == 0:
            continue
        eta = FFElem(e, 0, p)
        f = _dickson(p, eta)
        count = 1
        for x in range(p):
            v = f(FFElem(x, 0, p)).c0
            count += 1 if v == 0 else (2 if v in squares else 0)
        A = cartier_manin(f, p)
        trace = (A.entries[0][0] + A.entries[1][1]).c0
        assert (count - 1 + trace) % p == 0


def test_nonordinary_examples():
    assert nonordinary_fibers_delta25(7) == ff(7, 0, 5)
    assert nonordinary_fibers_delta25(11) == ff(11, 1, 8)
    assert nonordinary_fibers_delta25(13) == ff(13, 0, 1, 9)
    with pytest.raises(GuardError):
        nonordinary_fibers_delta25(5)


@pytest.mark.parametrize("p", [q for q in range(7, 60) if is_prime(q)])
def test_oracle_polynomial_equals_no_p(p):
    rep = locus_report(get_preset("delta-2-5"), p, with_truncation=False, with_combined=False)
    for b in rep.branches:
        assert b.no == nonordinary_poly_delta25(p)


@pytest.mark.parametrize("p", [7, 11, 13, 17, 19, 23, 29, 31])
def test_oracle_roots_equal_roots_of_no_p(p):
    rep = locus_report(get_preset("delta-2-5"), p, with_truncation=False, with_combined=False)
    w2 = nonresidue(p)
    for b in rep.branches:
        lifted = b.no.map_coeffs(lambda c: FFElem(c.c0, c.c1, p, w2), FFElem(0, 0, p, w2))
        assert {x for x in field_elements(p, w2) if not lifted(x)} == nonordinary_fibers_delta25(p)
