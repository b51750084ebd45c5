"""Second-order Picard-Fuchs operators: series solutions, moments, truncation path.

An operator ``L = p2 D^2 + p1 D + p0`` (``D = d/dt``) is turned into a
recursion for the coefficients of its holomorphic solution at ``t = 0``.
Writing ``v = min(val p2 - 2, val p1 - 1, val p0)`` and

    Q_k(n) = p2[k+v+2] n(n-1) + p1[k+v+1] n + p0[k+v]

the coefficient of ``t^(n+v)`` in ``L y`` is ``sum_k Q_k(n-k) y_(n-k)``.  The
point ``t = 0`` is a MUM point when ``Q_0(n)`` is a nonzero multiple of ``n^2``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Callable, Optional

from .errors import DataError, GuardError, NotPIntegralError, PrecisionError
from .exact_arith import (
    PrimeContext,
    QuadElem,
    decode_elem,
    format_quad,
    is_p_integral,
    reduce,
    zero_like,
)
from .pade_ortho import MomentStream
from .poly_series import Poly, Series, series_logderiv_ratio, squarefree_part


def _valuation(f: Poly) -> Optional[int]:
    for i, c in enumerate(f.coeffs):
        if c:
            return i
    return None


@dataclass(frozen=True)
class ODESpec:
    p2: Poly
    p1: Poly
    p0: Poly
    D: int = 0
    S: tuple = ()

    def __post_init__(self):
        if self.p2.is_zero():
            raise GuardError("leading coefficient p2 vanishes")
        self.indicial()  # raises unless t = 0 is a MUM point

    @property
    def shift(self) -> int:
        vals = []
        for f, off in ((self.p2, 2), (self.p1, 1), (self.p0, 0)):
            v = _valuation(f)
            if v is not None:
                vals.append(v - off)
        return min(vals)

    @property
    def zero(self):
        return self.p2.zero

    def q(self, k: int, n):
        v = self.shift
        return self.p2[k + v + 2] * (n * (n - 1)) + self.p1[k + v + 1] * n + self.p0[k + v]

    @property
    def span(self) -> int:
        v = self.shift
        return max(self.p2.degree - v - 2, self.p1.degree - v - 1, self.p0.degree - v)

    def indicial(self) -> tuple:
        """``(c2, c1, c0)`` with ``Q_0(n) = c2 n^2 + c1 n + c0``; must be ``(c, 0, 0)``."""
        v = self.shift
        c2 = self.p2[v + 2]
        c1 = self.p1[v + 1] - self.p2[v + 2]
        c0 = self.p0[v]
        if not c2 or c1 or c0:
            raise GuardError(
                f"t = 0 is not a point of maximal unipotent monodromy (indicial polynomial "
                f"{c2}*n^2 + {c1}*n + {c0})")
        return c2, c1, c0

    @classmethod
    def from_json(cls, obj: dict) -> "ODESpec":
        try:
            D = int(obj.get("D", 0))
            S = tuple(int(s) for s in obj.get("S", ()))
            polys = []
            for key in ("p2", "p1", "p0"):
                entry = obj[key]
                coeffs = entry["coeffs"] if isinstance(entry, dict) else entry
                cs = [decode_elem(c, D) for c in coeffs]
                zero = QuadElem(0, 0, D) if D else Fraction(0)
                polys.append(Poly(cs, zero, "t"))
        except (KeyError, TypeError, ValueError) as exc:
            if isinstance(exc, GuardError):
                raise
            raise DataError(f"malformed ODE description: {exc}") from exc
        return cls(polys[0], polys[1], polys[2], D, S)

    @classmethod
    def load(cls, path) -> "ODESpec":
        try:
            obj = json.loads(Path(path).read_text())
        except (OSError, json.JSONDecodeError) as exc:
            raise DataError(f"cannot read ODE file {path}: {exc}") from exc
        return cls.from_json(obj)

    def to_json(self) -> dict:
        return {"D": self.D, "S": list(self.S),
                "p2": self.p2.to_json(), "p1": self.p1.to_json(), "p0": self.p0.to_json()}


def solve_series(ode: ODESpec, order: int) -> Series:
    """Holomorphic solution ``y = 1 + O(t)`` through ``t^(order-1)``."""
    if order < 1:
        raise ValueError("order must be >= 1")
    span = ode.span
    zero = ode.zero
    y = [zero + 1]
    for n in range(1, order):
        q0 = ode.q(0, n)
        if not q0:
            raise GuardError(f"recursion divides by zero at n = {n}")
        acc = zero
        for k in range(1, min(span, n) + 1):
            acc = acc + ode.q(k, n - k) * y[n - k]
        y.append(-acc / q0)
    return Series(y, zero)


def residual(ode: ODESpec, y: Series) -> list:
    """Coefficients of ``t^(n+v)`` in ``L y`` for ``n < y.order`` (all must vanish)."""
    out = []
    for n in range(y.order):
        acc = ode.zero
        for k in range(0, min(ode.span, n) + 1):
            acc = acc + ode.q(k, n - k) * y.coeffs[n - k]
        out.append(acc)
    return out


# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class CurvePreset:
    """Invariants of a one-parameter family inside a Hilbert modular variety.

    ``field_D`` is the discriminant-defining squarefree integer of the real
    multiplication field (drives the ``j -> j'`` rule and supersingular
    dichotomy).  ``coeff_D`` is the field in which the moments live (0 for Q).
    """

    name: str
    field_D: int
    coeff_D: int
    S: tuple
    chi: Fraction
    lyap: tuple
    N: int
    jprime_rule: str = "identity"
    degree_formula: Optional[Callable[[int, int], int]] = field(default=None, compare=False)
    sources: tuple = ()
    description: str = ""

    @property
    def g(self) -> int:
        return len(self.lyap)

    def jprime(self, j: int, inert: bool) -> int:
        if self.jprime_rule == "identity" or self.g == 1:
            return j
        if self.jprime_rule == "g2":
            return (3 - j) if inert else j
        raise GuardError(f"no j -> j' rule {self.jprime_rule!r} for genus {self.g}")

    def phi_scale(self, j: int) -> Fraction:
        """``-2 / (chi * lambda_j * N)``: factor turning ``y'/y`` into moments."""
        return Fraction(-2) / (self.chi * self.lyap[j - 1] * self.N)


def phi_moments(y: Series, preset: CurvePreset, j: int) -> MomentStream:
    """Moments of ``Phi_j = t - (2 t^2 / (chi lambda_j N)) y'/y``: ``g_0 = 1``."""
    if y.order < 2:
        return MomentStream.of([zero_like(y.zero) + 1], "ode")
    ld = series_logderiv_ratio(y)
    s = preset.phi_scale(j)
    return MomentStream.of([y.zero + 1] + [c * s for c in ld.coeffs], "ode")


def ode_moments(ode: ODESpec, preset: CurvePreset, j: int) -> MomentStream:
    """Lazy moment stream backed by :func:`solve_series`."""

    def gen(count):
        return phi_moments(solve_series(ode, count + 1), preset, j).require(count)

    return MomentStream.lazy(gen, ode.zero, f"ode {preset.name} j={j}")


@dataclass(frozen=True)
class TruncationResult:
    alpha: Poly
    d: int
    beta: Poly
    ph: Poly


def truncation_degree(preset: CurvePreset, j: int, p: int, inert: bool) -> int:
    """Degree of the Dwork factor of ``y_j`` modulo a prime above ``p``.

    The closed value ``(chi/2) N (lambda_j - p lambda_j')`` is used when it is
    an integer.  Otherwise (elliptic points present) the degree is the least
    nonnegative residue of ``(chi/2) N lambda_j`` modulo ``p``.
    """
    jp = preset.jprime(j, inert)
    base = preset.chi / 2 * preset.N
    closed = base * (preset.lyap[j - 1] - p * preset.lyap[jp - 1])
    if closed.denominator == 1 and closed >= 0:
        return int(closed)
    r = base * preset.lyap[j - 1]
    if r.denominator % p == 0:
        raise NotPIntegralError(f"(chi/2)*N*lambda_{j} = {r} is not {p}-integral")
    return r.numerator * pow(r.denominator, -1, p) % p


def truncation_path(y: Series, preset: CurvePreset, j: int, ctx: PrimeContext,
                    branch: int = 0, inert: bool = False) -> TruncationResult:
    """``beta = J^d alpha(1/J)`` and its squarefree part, from ``y mod p``.

    ``y`` must be known through ``t^(p-1)``; coefficients beyond ``d`` and up
    to ``p-1`` must reduce to zero, which checks the degree.
    """
    p = ctx.p
    d = truncation_degree(preset, j, p, inert)
    if d >= p:
        raise GuardError(f"truncation path unavailable: d = {d} >= p = {p}")
    if y.order < p:
        raise PrecisionError(f"series must be known through t^{p - 1}")
    red = []
    for i in range(p):
        c = y.coeffs[i]
        if not is_p_integral(c, p):
            txt = format_quad(c) if isinstance(c, QuadElem) else str(c)
            raise NotPIntegralError(f"series coefficient t^{i} = {txt} is not {p}-integral")
        red.append(reduce(c, ctx, branch))
    zero = ctx.zero()
    alpha = Poly(red[: d + 1], zero, "t")
    if alpha[0] != 1:
        raise GuardError("alpha(0) != 1")
    if any(red[d + 1:]):
        first = next(i for i in range(d + 1, p) if red[i])
        raise GuardError(f"series mod {p} has a nonzero t^{first} term beyond the expected degree {d}")
    beta = Poly(list(reversed([alpha[i] for i in range(d + 1)])), zero, "J")
    return TruncationResult(alpha, d, beta, squarefree_part(beta))
