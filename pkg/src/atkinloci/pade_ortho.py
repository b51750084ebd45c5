"""Moment functionals, Padé denominators and their orthogonal-polynomial twins.

A moment sequence ``g_0, g_1, ...`` defines the functional ``<x^n, 1> = g_n``
and the generating function ``Phi(x) = sum g_n x^(-n-1)``.  The monic
denominators of the ``[m-1, m]`` Padé approximants of ``Phi`` are the monic
orthogonal polynomials for that functional.  Four independent routes to them
live here (Hankel solve, extended Euclid, Gram-Schmidt, continued fraction
plus three-term recursion) so they can be checked against each other.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Optional, Sequence

from .errors import (
    PadeNotExistError,
    PrecisionError,
    VanishingNormError,
    ZeroCoefficientError,
)
from .exact_arith import zero_like
from .poly_series import Poly, Series


@dataclass(frozen=True)
class MomentStream:
    """Moments ``g_0, g_1, ...`` from an explicit list or a pure generator.

    ``generator(count)`` must return the first ``count`` moments; it is called
    afresh on every request, so it has to be deterministic.
    """

    values: tuple = ()
    generator: Optional[Callable[[int], Sequence]] = field(default=None, compare=False)
    provider: str = "list"
    zero: object = None

    @classmethod
    def of(cls, values, provider: str = "list") -> "MomentStream":
        vals = tuple(values)
        return cls(vals, None, provider, zero_like(vals[0]) if vals else None)

    @classmethod
    def lazy(cls, generator, zero, provider: str) -> "MomentStream":
        return cls((), generator, provider, zero)

    @property
    def available(self) -> Optional[int]:
        """Number of moments on hand, or ``None`` if unbounded."""
        return None if self.generator is not None else len(self.values)

    def require(self, count: int) -> tuple:
        if count <= 0:
            return ()
        if self.generator is not None:
            vals = tuple(self.generator(count))
            if len(vals) < count:
                raise PrecisionError(f"{self.provider} provider returned {len(vals)} of {count} moments")
            return vals[:count]
        if count > len(self.values):
            raise PrecisionError(
                f"{count} moments needed but only {len(self.values)} available ({self.provider})")
        return self.values[:count]

    def __getitem__(self, i: int):
        return self.require(i + 1)[i]

    def domain_zero(self):
        if self.zero is not None:
            return self.zero
        return zero_like(self.require(1)[0])

    def map(self, f: Callable, provider: str | None = None) -> "MomentStream":
        """Apply ``f`` to every moment (e.g. reduction mod p)."""
        src = self
        zero = f(self.domain_zero())
        if self.generator is None:
            return MomentStream(tuple(f(v) for v in self.values), None, provider or self.provider, zero)
        return MomentStream.lazy(lambda n: [f(v) for v in src.require(n)], zero, provider or self.provider)


@dataclass(frozen=True)
class CFCoeffs:
    """``lam[0] = lambda_1``, ``lam[1] = lambda_2``, ..."""

    lam: tuple

    def __len__(self):
        return len(self.lam)

    def __getitem__(self, k: int):
        """1-based access ``lambda_k``."""
        if k < 1 or k > len(self.lam):
            raise PrecisionError(f"lambda_{k} not available (have {len(self.lam)})")
        return self.lam[k - 1]


@dataclass(frozen=True)
class ThreeTerm:
    """``P_{n+1} = (x - a_n) P_n - b_n P_{n-1}``, ``P_1 = x - a0``.

    ``a[0]`` is ``a_1`` and ``b[0]`` is ``b_1``.
    """

    a0: object
    a: tuple
    b: tuple

    def a_at(self, n: int):
        if n == 0:
            return self.a0
        if n > len(self.a):
            raise PrecisionError(f"a_{n} not available")
        return self.a[n - 1]

    def b_at(self, n: int):
        if n < 1 or n > len(self.b):
            raise PrecisionError(f"b_{n} not available")
        return self.b[n - 1]


# ---------------------------------------------------------------------------


def inner(f: Poly, h: Poly, g: Sequence):
    """``<f, h> = sum f_i h_j g_{i+j}``."""
    need = f.degree + h.degree + 1
    if need > len(g):
        raise PrecisionError(f"scalar product needs g_0..g_{need - 1}")
    acc = zero_like(g[0]) if len(g) else 0
    for i, fi in enumerate(f.coeffs):
        if not fi:
            continue
        for j, hj in enumerate(h.coeffs):
            acc = acc + fi * hj * g[i + j]
    return acc


def _x_pow(k, zero, var):
    return Poly([zero] * k + [zero + 1], zero, var)


def gram_schmidt(g: MomentStream, n: int, var: str = "J") -> list[Poly]:
    """Monic orthogonal ``P_0..P_n`` by Gram-Schmidt on ``1, x, x^2, ...``."""
    mom = g.require(2 * n) if n else ()
    zero = g.domain_zero()
    ps = [Poly([zero + 1], zero, var)]
    norms = []
    for k in range(1, n + 1):
        nk = inner(ps[-1], ps[-1], mom)
        if not nk:
            raise VanishingNormError(k - 1)
        norms.append(nk)
        xk = _x_pow(k, zero, var)
        pk = xk
        for i, pi in enumerate(ps):
            c = inner(xk, pi, mom) / norms[i]
            if c:
                pk = pk - pi * c
        ps.append(pk)
    return ps


def _bareiss_solve(mat: list[list], rhs: list):
    """Solve ``mat @ x = rhs`` by fraction-free elimination; ``None`` if singular."""
    n = len(mat)
    aug = [list(row) + [r] for row, r in zip(mat, rhs)]
    one = zero_like(rhs[0]) + 1 if rhs else 1
    prev = one
    for k in range(n):
        piv = next((i for i in range(k, n) if aug[i][k]), None)
        if piv is None:
            return None
        if piv != k:
            aug[k], aug[piv] = aug[piv], aug[k]
        pk = aug[k][k]
        for i in range(k + 1, n):
            aik = aug[i][k]
            for j in range(k + 1, n + 1):
                aug[i][j] = (aug[i][j] * pk - aik * aug[k][j]) / prev
            aug[i][k] = aug[i][k] * 0
        prev = pk
    x = [None] * n
    for i in range(n - 1, -1, -1):
        s = aug[i][n]
        for j in range(i + 1, n):
            s = s - aug[i][j] * x[j]
        x[i] = s / aug[i][i]
    return x


def pade_denominator(g: MomentStream, m: int, var: str = "J") -> Poly:
    """Monic degree-``m`` Padé denominator from the Hankel system.

    Solves ``sum_{k<m} beta_k g_{n+k} = -g_{n+m}`` for ``n = 0..m-1``.
    """
    zero = g.domain_zero()
    if m == 0:
        return Poly([zero + 1], zero, var)
    mom = g.require(2 * m)
    hank = [[mom[i + j] for j in range(m)] for i in range(m)]
    rhs = [-mom[i + m] for i in range(m)]
    beta = _bareiss_solve(hank, rhs)
    if beta is None:
        raise PadeNotExistError(f"Padé approximant does not exist at order {m} (singular Hankel matrix)")
    return Poly(list(beta) + [zero + 1], zero, var)


def pade_denominator_euclid(g: MomentStream, m: int, var: str = "J") -> tuple[Poly, Poly]:
    """Cross-check backend: extended Euclid on ``(x^(2m), sum g_n x^(2m-1-n))``.

    Returns ``(T, S)`` with ``T`` monic of degree ``m`` and ``deg S < m``.
    """
    zero = g.domain_zero()
    one = zero + 1
    if m == 0:
        return Poly([one], zero, var), Poly([], zero, var)
    mom = g.require(2 * m)
    r0 = _x_pow(2 * m, zero, var)
    r1 = Poly([mom[2 * m - 1 - k] for k in range(2 * m)], zero, var)
    s0, s1 = Poly([one], zero, var), Poly([], zero, var)
    t0, t1 = Poly([], zero, var), Poly([one], zero, var)
    while r1.degree >= m:
        q, r = r0.divmod(r1)
        r0, r1 = r1, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if t1.degree != m:
        raise PadeNotExistError(f"Padé approximant does not exist at order {m} (Euclid degree {t1.degree})")
    lc = t1.lc()
    return t1.scale(1 / lc), -s1.scale(1 / lc)


def pade_numerator(g: MomentStream, T: Poly) -> Poly:
    """Numerator ``S`` with ``S/T - Phi = O(x^(-2m-1))``: the polynomial part of ``T * Phi``."""
    m = T.degree
    zero = g.domain_zero()
    if m <= 0:
        return Poly([], zero, T.var)
    mom = g.require(m)
    out = []
    for k in range(m):
        acc = zero
        for i in range(k + 1, m + 1):
            acc = acc + T[i] * mom[i - k - 1]
        out.append(acc)
    return Poly(out, zero, T.var)


def expand_rational_at_infinity(S: Poly, T: Poly, count: int) -> list:
    """First ``count`` coefficients ``c_n`` of ``S/T = sum c_n x^(-n-1)`` (``T`` monic)."""
    m = T.degree
    zero = T.zero
    out = []
    for n in range(count):
        # coefficient of x^(m-1-n) in S equals sum_{i} T_i c_{n-(m-i)}
        acc = S[m - 1 - n] if m - 1 - n >= 0 else zero
        for i in range(m):
            k = n - (m - i)
            if k >= 0:
                acc = acc - T[i] * out[k]
        out.append(acc)
    return out


def cf_coefficients(g: MomentStream, k: int) -> CFCoeffs:
    """``lambda_1..lambda_k`` with ``sum g_n X^n = g_0/(1 - lambda_1 X/(1 - lambda_2 X/...))``.

    Uses ``g_0..g_k``.
    """
    mom = g.require(k + 1)
    g0 = mom[0]
    if not g0:
        raise ZeroCoefficientError(0, "g_0 vanishes")
    f = Series([c / g0 for c in mom], g.domain_zero())
    lam = []
    for i in range(1, k + 1):
        inv = f.inverse()
        # (1 - 1/f) / X
        h = Series([-c for c in inv.coeffs[1:]], f.zero)
        li = h.coeffs[0]
        if not li:
            raise ZeroCoefficientError(i)
        lam.append(li)
        f = h * (1 / li)
    return CFCoeffs(tuple(lam))


def recurrence_from_cf(cf: CFCoeffs) -> ThreeTerm:
    """``a_n = lambda_2n + lambda_(2n+1)``, ``b_n = lambda_(2n-1) lambda_2n``, ``a0 = lambda_1``."""
    lam = cf.lam
    L = len(lam)
    if L == 0:
        raise PrecisionError("need at least lambda_1")
    a = tuple(lam[2 * n - 1] + lam[2 * n] for n in range(1, (L - 1) // 2 + 1))
    b = tuple(lam[2 * n - 2] * lam[2 * n - 1] for n in range(1, L // 2 + 1))
    return ThreeTerm(lam[0], a, b)


def polys_from_recurrence(r: ThreeTerm, n: int, zero=None, var: str = "J") -> list[Poly]:
    """``P_0..P_n`` from the three-term recursion."""
    if zero is None:
        zero = zero_like(r.a0)
    one = zero + 1
    x = Poly([zero, one], zero, var)
    ps = [Poly([one], zero, var)]
    if n == 0:
        return ps
    ps.append(x - r.a0)
    for k in range(1, n):
        ps.append((x - r.a_at(k)) * ps[k] - ps[k - 1] * r.b_at(k))
    return ps


def numerators_from_recurrence(r: ThreeTerm, n: int, g0, var: str = "J") -> list[Poly]:
    """Associated numerators: ``Q_0 = 0``, ``Q_1 = g_0``, same recursion as ``P``."""
    zero = zero_like(g0)
    one = zero + 1
    x = Poly([zero, one], zero, var)
    qs = [Poly([], zero, var)]
    if n == 0:
        return qs
    qs.append(Poly([g0], zero, var))
    for k in range(1, n):
        qs.append((x - r.a_at(k)) * qs[k] - qs[k - 1] * r.b_at(k))
    return qs


def combined_moments(streams: Sequence[MomentStream], weights: Sequence) -> MomentStream:
    """Pointwise ``sum_j w_j g^(j)_n``."""
    if len(streams) != len(weights) or not streams:
        raise ValueError("streams and weights must be nonempty lists of equal length")
    avail = [s.available for s in streams]
    finite = [a for a in avail if a is not None]
    if finite and len(set(finite)) > 1:
        raise ValueError(f"moment streams have unequal lengths {finite}")
    srcs, ws = tuple(streams), tuple(weights)
    zero = srcs[0].domain_zero()

    def gen(count):
        cols = [s.require(count) for s in srcs]
        out = []
        for n in range(count):
            acc = zero
            for w, col in zip(ws, cols):
                acc = acc + col[n] * w
            out.append(acc)
        return out

    if finite:
        return MomentStream(tuple(gen(finite[0])), None, "combined", zero)
    return MomentStream.lazy(gen, zero, "combined")
