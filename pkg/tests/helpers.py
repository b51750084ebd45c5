"""Small independent utilities shared by the test modules."""

from fractions import Fraction

import pytest

from atkinloci.errors import PadeNotExistError, ZeroCoefficientError
from atkinloci.pade_ortho import (
    MomentStream,
    cf_coefficients,
    expand_rational_at_infinity,
    gram_schmidt,
    inner,
    numerators_from_recurrence,
    pade_denominator,
    pade_denominator_euclid,
    pade_numerator,
    polys_from_recurrence,
    recurrence_from_cf,
)
from atkinloci.poly_series import Poly

Z = Fraction(0)
F = Fraction


def det(mat):
    """Determinant by plain Gaussian elimination over Q (no pivot tricks)."""
    a = [list(map(Fraction, row)) for row in mat]
    n, out = len(a), Fraction(1)
    for k in range(n):
        piv = next((i for i in range(k, n) if a[i][k]), None)
        if piv is None:
            return Fraction(0)
        if piv != k:
            a[k], a[piv] = a[piv], a[k]
            out = -out
        out *= a[k][k]
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return out


def hankel_minor(g, m):
    return det([[g[i + j] for j in range(m)] for i in range(m)]) if m else Fraction(1)


def random_stream(rng, length):
    return [Fraction(1)] + [Fraction(rng.randint(-9, 9), rng.randint(1, 9)) for _ in range(length - 1)]


def check_backends(vals, max_m=6):
    """Compare every backend on one stream; returns the orders where all four ran."""
    full = []
    g = MomentStream.of(vals)
    all_regular = True
    for m in range(1, max_m + 1):
        minor = hankel_minor(vals, m)
        if not minor:
            all_regular = False
            with pytest.raises(PadeNotExistError):
                pade_denominator(g, m)
            continue
        T = pade_denominator(g, m)
        Te, Se = pade_denominator_euclid(g, m)
        S = pade_numerator(g, T)
        assert T == Te and S == Se
        # Padé property: S/T reproduces g_0 .. g_{2m-1}
        assert expand_rational_at_infinity(S, T, 2 * m) == vals[:2 * m]
        # orthogonality
        mom = vals[:2 * m + 1] + [F(0)]
        for k in range(m):
            xk = Poly([Z] * k + [F(1)], Z)
            assert inner(T, xk, mom[:2 * m]) == 0
        if not all_regular:
            continue
        ps = gram_schmidt(g, m)
        assert ps[m] == T
        try:
            cf = cf_coefficients(g, 2 * m - 1)
        except ZeroCoefficientError:
            # the Stieltjes fraction also needs the shifted minors
            assert any(not hankel_minor(vals[1:], k) for k in range(1, m + 1))
            continue
        r = recurrence_from_cf(cf)
        assert polys_from_recurrence(r, m)[m] == T
        qs = numerators_from_recurrence(r, m, vals[0])
        assert qs[m] == S
        if m >= 2:
            n1 = inner(ps[m - 1], ps[m - 1], vals)
            n2 = inner(ps[m - 2], ps[m - 2], vals)
            assert r.b_at(m - 1) == n1 / n2
        full.append(m)
    return full
