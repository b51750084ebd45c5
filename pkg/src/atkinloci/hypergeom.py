"""Gauss hypergeometric moment providers for cusped triangle groups.

For ``Delta(n, m, oo)`` with embedding data ``(k_j, r_j)`` the normalized
period is ``2F1(a, b; 1; t)`` with

    N_j = m*n - n*r_j - m*k_j,   a = N_j/(2nm),   b = (N_j + 2n*r_j)/(2nm)

and the moment generating function is ``t * F(a+1, b; 1; t) / F(a, b; 1; t)``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import GuardError, ZeroCoefficientError
from .pade_ortho import CFCoeffs, MomentStream, ThreeTerm
from .poly_series import Poly, Series


@dataclass(frozen=True)
class HGParams:
    a: Fraction
    b: Fraction
    c: Fraction = Fraction(1)

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.c.denominator == 1 and self.c <= 0:
            raise ValueError("c must not be a non-positive integer")

    def shifted_a(self) -> "HGParams":
        return HGParams(self.a + 1, self.b, self.c)


@dataclass(frozen=True)
class TriangleDatum:
    """Embedding index ``j`` of ``Delta(n, m, oo)`` with data ``(k_j, r_j)``."""

    n: int
    m: int
    j: int
    k_j: int
    r_j: int

    def __post_init__(self):
        if self.n < 2 or self.m < 2:
            raise ValueError("need n, m >= 2")
        if Fraction(1, self.n) + Fraction(1, self.m) >= 1:
            raise ValueError(f"Delta({self.n},{self.m},oo) is not hyperbolic")
        if not (0 < abs(self.k_j) <= self.n and 0 < abs(self.r_j) <= self.m):
            raise ValueError("k_j, r_j must be nonzero with k_j <= n and r_j <= m")
        if self.N <= 0:
            raise ValueError(f"N_j = {self.N} must be positive")
        if not (0 < self.a < 1 and 0 < self.b < 1):
            raise ValueError(f"hypergeometric parameters a={self.a}, b={self.b} must lie in (0,1)")

    @classmethod
    def hecke(cls, m: int, j: int) -> "TriangleDatum":
        """``Delta(2, m, oo)`` with ``k_j = 1``, ``r_j = j``."""
        return cls(2, m, j, 1, j)

    @property
    def N(self) -> int:
        return self.m * self.n - self.n * self.r_j - self.m * self.k_j

    @property
    def a(self) -> Fraction:
        return Fraction(self.N, 2 * self.n * self.m)

    @property
    def b(self) -> Fraction:
        return Fraction(self.N + 2 * self.n * self.r_j, 2 * self.n * self.m)

    @property
    def params(self) -> HGParams:
        return HGParams(self.a, self.b, Fraction(1))

    @property
    def euler_char(self) -> Fraction:
        return -(1 - Fraction(1, self.n) - Fraction(1, self.m))

    @property
    def elliptic_lcm(self) -> int:
        return math.lcm(self.n, self.m)


def f21_series(p: HGParams, order: int) -> Series:
    """``sum (a)_i (b)_i / ((c)_i i!) t^i`` through ``t^(order-1)``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    out = [Fraction(1)]
    for i in range(order - 1):
        den = (p.c + i) * (1 + i)
        if den == 0:
            raise ZeroDivisionError(f"c + {i} vanishes")
        out.append(out[-1] * (p.a + i) * (p.b + i) / den)
    return Series(out, Fraction(0))


def gauss_cf(p: HGParams, count: int) -> CFCoeffs:
    """Gauss's continued fraction for ``F(a+1, b; c; z) / F(a, b; c; z)``."""
    a, b, c = p.a, p.b, p.c
    lam = []
    for i in range(1, count + 1):
        if i == 1:
            v = b / c
        elif i % 2 == 0:
            k = i // 2
            v = (a + k) * (c - b + k - 1) / ((c + 2 * k - 2) * (c + 2 * k - 1))
        else:
            k = (i - 1) // 2
            v = (b + k) * (c - a - 1 + k) / ((c + 2 * k - 1) * (c + 2 * k))
        if v == 0:
            raise ZeroCoefficientError(i)
        lam.append(v)
    return CFCoeffs(tuple(lam))


def contiguous_quotient(p: HGParams, order: int) -> Series:
    """``F(a+1, b; c; t) / F(a, b; c; t)`` through ``t^(order-1)``."""
    return f21_series(p.shifted_a(), order) / f21_series(p, order)


def triangle_moments(d: TriangleDatum) -> MomentStream:
    """Lazy moments ``g_n``: the coefficients of ``F(a+1,b;1;t)/F(a,b;1;t)``."""
    params = d.params

    def gen(count):
        return contiguous_quotient(params, count).coeffs

    return MomentStream.lazy(gen, Fraction(0), f"hypergeometric Delta({d.n},{d.m},oo) j={d.j}")


def moments_from_cf(cf: CFCoeffs, order: int, g0=Fraction(1)) -> list:
    """Expand ``g0/(1 - l1 X/(1 - l2 X/...))`` to ``order`` terms (bottom-up)."""
    if order > len(cf) + 1:
        raise ValueError("not enough continued fraction coefficients")
    tail = Series([Fraction(1)] + [Fraction(0)] * (order - 1))
    for k in range(order - 1, 0, -1):
        # tail <- 1 / (1 - lambda_k X * tail)
        lx = tail.shift(1).truncate(order) * cf[k]
        tail = (Series([Fraction(1)] + [Fraction(0)] * (order - 1)) - lx).inverse()
    return [c * g0 for c in tail.coeffs]


def triangle_recurrence_closed_form(d: TriangleDatum, count: int, form: str = "hecke") -> ThreeTerm:
    """Closed-form ``a_k``, ``b_k`` for ``k = 1..count``.

    ``form="hecke"`` evaluates the ``n = 2`` specialization, which agrees with
    the continued fraction.  It has a removable ``k(k-1)`` pole at ``k = 1``,
    so ``b_1`` is taken as ``lambda_1 lambda_2`` from Gauss's fraction.

    ``form="general"`` evaluates the general display in ``(N_j, r_j, m)``
    verbatim.  It is known not to match the continued fraction and is only
    kept so the mismatch stays visible; callers must pass ``suspect=True``
    through :func:`general_closed_form`.
    """
    if form == "general":
        raise GuardError("general closed form is suspect; use general_closed_form(..., suspect=True)")
    if form != "hecke":
        raise ValueError(f"unknown form {form!r}")
    if d.n != 2 or d.k_j != 1 or d.r_j != d.j:
        raise GuardError("closed form available only for Hecke data (n=2, k_j=1, r_j=j)")
    m, j = d.m, d.j
    a_list, b_list = [], []
    lam = gauss_cf(d.params, 2)
    for k in range(1, count + 1):
        a_list.append(Fraction(m * m * (16 * k * k - 1) - 8 * j * m + 4 * j * j,
                               8 * m * m * (4 * k * k - 1)))
        if k == 1:
            b_list.append(lam[1] * lam[2])
        else:
            num = ((4 * m * k - 3 * m + 2 * j) * (4 * m * k - 5 * m + 2 * j)
                   * (4 * m * k + m - 2 * j) * (4 * m * k - m - 2 * j))
            b_list.append(Fraction(num, 4 ** 5 * m ** 4 * k * (k - 1) * (2 * k - 1) ** 2))
    return ThreeTerm(d.b, tuple(a_list), tuple(b_list))


def general_closed_form(d: TriangleDatum, count: int, suspect: bool = False) -> ThreeTerm:
    """The general ``(n, m)`` display, evaluated as printed (seed ``(N_j + n r_j)/(2mn)``)."""
    if not suspect:
        raise GuardError("general closed form disagrees with the continued fraction; pass suspect=True")
    N, r, m = Fraction(d.N), Fraction(d.r_j), Fraction(d.m)
    a_list, b_list = [], []
    for k in range(1, count + 1):
        a_list.append((2 * k * k - (2 * N * N - 2 * N * r / m - r / m)) / (4 * k * k - 1))
        if k == 1:
            b_list.append(Fraction(0))
        else:
            b_list.append((k + N) * (k - N - 1) * (k - N - r / m) * (k + N + r / m - 1)
                          / (k * (k - 1) * (2 * k - 1) ** 2))
    seed = Fraction(d.N + d.n * d.r_j, 2 * d.m * d.n)
    return ThreeTerm(seed, tuple(a_list), tuple(b_list))


def triangle_lyapunov(d: TriangleDatum) -> Fraction:
    """``lambda_j = -2a / (chi * N)`` with ``chi = -(1 - 1/n - 1/m)``, ``N = lcm(n, m)``.

    Only ratios of these values are used downstream.
    """
    lam = -2 * d.a / (d.euler_char * d.elliptic_lcm)
    if not (0 < lam <= 1):
        raise GuardError(f"Lyapunov value {lam} outside (0, 1]")
    return lam


def hypergeometric_ode(p: HGParams, var: str = "t") -> tuple[Poly, Poly, Poly]:
    """Coefficients of ``t(1-t) y'' + (c - (a+b+1) t) y' - ab y``."""
    z = Fraction(0)
    p2 = Poly([z, Fraction(1), Fraction(-1)], z, var)
    p1 = Poly([p.c, -(p.a + p.b + 1)], z, var)
    p0 = Poly([-p.a * p.b], z, var)
    return p2, p1, p0
