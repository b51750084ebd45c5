"""Dense univariate polynomials and truncated power series over exact domains.

Coefficients are any of the scalar types in :mod:`atkinloci.exact_arith`
(``Fraction``, ``QuadElem``, ``FFElem``).  Both classes are immutable and
store coefficients lowest degree first.
"""

from __future__ import annotations

from fractions import Fraction
from typing import Callable, Iterable, Sequence

from .errors import GuardError, PrecisionError
from .exact_arith import FFElem, QuadElem, encode_elem, format_ff, format_quad, to_alpha, zero_like

ZERO_DEGREE = -1  # degree reported for the zero polynomial


def _is_zero(c) -> bool:
    return not c


class Poly:
    """Polynomial ``sum coeffs[i] * var**i`` over a field.

    ``zero`` fixes the coefficient domain, which matters for the zero
    polynomial and for scalar promotion.
    """

    __slots__ = ("coeffs", "zero", "var")

    def __init__(self, coeffs: Iterable = (), zero=None, var: str = "J"):
        cs = list(coeffs)
        if zero is None:
            if not cs:
                zero = Fraction(0)
            else:
                zero = zero_like(cs[0])
        cs = [zero + c for c in cs]
        while cs and _is_zero(cs[-1]):
            cs.pop()
        object.__setattr__(self, "coeffs", tuple(cs))
        object.__setattr__(self, "zero", zero)
        object.__setattr__(self, "var", var)

    def __setattr__(self, name, value):
        raise AttributeError("Poly is immutable")

    # -- constructors
    @classmethod
    def constant(cls, c, zero=None, var="J"):
        return cls([c], zero if zero is not None else zero_like(c), var)

    @classmethod
    def x(cls, zero=Fraction(0), var="J"):
        return cls([zero, zero + 1], zero, var)

    @classmethod
    def from_roots(cls, roots, zero, var="J"):
        out = cls([zero + 1], zero, var)
        for r in roots:
            out = out * cls([-r, zero + 1], zero, var)
        return out

    def _like(self, coeffs):
        return Poly(coeffs, self.zero, self.var)

    @property
    def one(self):
        return self.zero + 1

    @property
    def characteristic(self) -> int:
        return self.zero.p if isinstance(self.zero, FFElem) else 0

    # -- basic queries
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def lc(self):
        return self.coeffs[-1] if self.coeffs else self.zero

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else self.zero

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.coeffs == other.coeffs
        if not self.coeffs:
            return other == 0
        return len(self.coeffs) == 1 and self.coeffs[0] == other

    def __hash__(self):
        return hash(self.coeffs)

    # -- arithmetic
    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return self._like([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        return self._like([self[i] + o[i] for i in range(n)])

    __radd__ = __add__

    def __neg__(self):
        return self._like([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self._like([c * other for c in self.coeffs])
        if not self.coeffs or not other.coeffs:
            return self._like([])
        out = [self.zero] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if _is_zero(a):
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] = out[i + j] + a * b
        return self._like(out)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        out, base = self._like([self.one]), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def scale(self, c):
        return self._like([a * c for a in self.coeffs])

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(rem) - len(other.coeffs)
        if dq < 0:
            return self._like([]), self
        inv = 1 / other.lc() if not isinstance(other.lc(), FFElem) else other.lc().inverse()
        quo = [self.zero] * (dq + 1)
        for k in range(dq, -1, -1):
            c = rem[k + len(other.coeffs) - 1] * inv
            quo[k] = c
            if _is_zero(c):
                continue
            for i, b in enumerate(other.coeffs):
                rem[k + i] = rem[k + i] - c * b
        return self._like(quo), self._like(rem[: len(other.coeffs) - 1])

    def __floordiv__(self, other):
        return self.divmod(other)[0]

    def __mod__(self, other):
        return self.divmod(other)[1]

    def exact_div(self, other: "Poly") -> "Poly":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("polynomial division is not exact")
        return q

    def monic(self) -> "Poly":
        if self.is_zero():
            return self
        lc = self.lc()
        if lc == 1:
            return self
        inv = lc.inverse() if isinstance(lc, (FFElem, QuadElem)) else 1 / lc
        return self.scale(inv)

    def derivative(self) -> "Poly":
        return self._like([c * i for i, c in enumerate(self.coeffs)][1:])

    def __call__(self, x):
        acc = self.zero
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def map_coeffs(self, f: Callable, zero=None) -> "Poly":
        cs = [f(c) for c in self.coeffs]
        if zero is None:
            zero = f(self.zero)
        return Poly(cs, zero, self.var)

    def reversed_coeffs(self) -> list:
        return list(reversed(self.coeffs))

    def compose_scale(self, s) -> "Poly":
        """Return ``f(s * var)``."""
        out, pw = [], self.one
        for c in self.coeffs:
            out.append(c * pw)
            pw = pw * s
        return self._like(out)

    # -- rendering
    def __repr__(self):
        return f"Poly({self.format()})"

    def __str__(self):
        return self.format()

    def format(self, alpha: bool = False) -> str:
        return format_poly(self, alpha=alpha)

    def to_json(self, alpha: bool = False) -> dict:
        return {"var": self.var, "coeffs": [encode_elem(c, alpha) for c in self.coeffs]}


def _coeff_text(c, alpha):
    """Return (sign, magnitude text, needs_parens)."""
    if isinstance(c, FFElem):
        txt = format_ff(c)
        return "+", txt, bool(c.c1) and bool(c.c0)
    if isinstance(c, QuadElem) and c.b:
        lead, second = to_alpha(c) if alpha else (c.a, c.b)
        sign = "-" if lead < 0 or (not lead and second < 0) else "+"
        txt = format_quad(-c if sign == "-" else c, alpha=alpha)
        return sign, txt, ("/" in txt) if alpha else bool(lead)
    r = c.a if isinstance(c, QuadElem) else Fraction(c)
    return ("-" if r < 0 else "+"), str(abs(r)), False


def format_poly(f: Poly, alpha: bool = False) -> str:
    """Descending-degree notation, e.g. ``J^2 - 549/600*J + 3213/48000``."""
    if f.is_zero():
        return "0"
    parts = []
    for i in range(f.degree, -1, -1):
        c = f.coeffs[i]
        if _is_zero(c):
            continue
        sign, mag, paren = _coeff_text(c, alpha)
        mono = "" if i == 0 else (f.var if i == 1 else f"{f.var}^{i}")
        if mono and mag == "1" and not paren:
            term = mono
        else:
            m = f"({mag})" if paren and mono else mag
            term = f"{m}*{mono}" if mono else m
        if not parts:
            parts.append(("-" if sign == "-" else "") + term)
        else:
            parts.append(f" {sign} {term}")
    return "".join(parts)


# ---------------------------------------------------------------------------
# gcd / lcm / squarefree


def poly_gcd(f: Poly, g: Poly) -> Poly:
    """Monic gcd by the Euclidean algorithm with monic remainders."""
    a, b = f.monic(), g.monic()
    while not b.is_zero():
        a, b = b, (a % b).monic()
    return a.monic()


def poly_lcm(fs: Sequence[Poly]) -> Poly:
    if not fs:
        raise ValueError("lcm of an empty list")
    out = fs[0].monic()
    for f in fs[1:]:
        if out.is_zero() or f.is_zero():
            return out._like([])
        out = (out * f).exact_div(poly_gcd(out, f)).monic()
    return out


def squarefree_part(f: Poly) -> Poly:
    """``f / gcd(f, f')``, made monic.

    In characteristic p this is only the radical when ``deg f < p``, which is
    enforced.
    """
    p = f.characteristic
    if p and f.degree >= p:
        raise GuardError(f"squarefree extraction needs deg f < p (deg {f.degree}, p = {p})")
    if f.is_zero():
        return f
    return f.exact_div(poly_gcd(f, f.derivative())).monic()


def reciprocal_poly(f: Poly) -> Poly:
    """Raw coefficient reversal ``var^deg f * f(1/var)``."""
    return f._like(f.reversed_coeffs())


def is_palindromic(f: Poly) -> bool:
    return list(f.coeffs) == f.reversed_coeffs()


# ---------------------------------------------------------------------------
# Truncated power series


class Series:
    """Power series known exactly through ``t^(order-1)``."""

    __slots__ = ("coeffs", "zero")

    def __init__(self, coeffs: Sequence, zero=None):
        cs = list(coeffs)
        if zero is None:
            zero = zero_like(cs[0]) if cs else Fraction(0)
        object.__setattr__(self, "coeffs", tuple(zero + c for c in cs))
        object.__setattr__(self, "zero", zero)

    def __setattr__(self, name, value):
        raise AttributeError("Series is immutable")

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __getitem__(self, i):
        if i >= len(self.coeffs):
            raise PrecisionError(f"coefficient {i} requested from a series of order {self.order}")
        return self.coeffs[i]

    def __eq__(self, other):
        return isinstance(other, Series) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"Series({[str(c) for c in self.coeffs]})"

    def truncate(self, order: int) -> "Series":
        if order > self.order:
            raise PrecisionError(f"cannot raise series precision from {self.order} to {order}")
        return Series(self.coeffs[:order], self.zero)

    def __add__(self, other: "Series"):
        n = min(self.order, other.order)
        return Series([self.coeffs[i] + other.coeffs[i] for i in range(n)], self.zero)

    def __sub__(self, other: "Series"):
        n = min(self.order, other.order)
        return Series([self.coeffs[i] - other.coeffs[i] for i in range(n)], self.zero)

    def __mul__(self, other):
        if not isinstance(other, Series):
            return Series([c * other for c in self.coeffs], self.zero)
        n = min(self.order, other.order)
        out = []
        for k in range(n):
            acc = self.zero
            for i in range(k + 1):
                acc = acc + self.coeffs[i] * other.coeffs[k - i]
            out.append(acc)
        return Series(out, self.zero)

    __rmul__ = __mul__

    def inverse(self) -> "Series":
        if not self.coeffs or not self.coeffs[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        c0inv = 1 / self.coeffs[0]
        out = [c0inv]
        for k in range(1, self.order):
            acc = self.zero
            for i in range(1, k + 1):
                acc = acc + self.coeffs[i] * out[k - i]
            out.append(-acc * c0inv)
        return Series(out, self.zero)

    def __truediv__(self, other: "Series") -> "Series":
        """Exact quotient, by solving ``q * other = self`` term by term."""
        if not isinstance(other, Series):
            return Series([c / other for c in self.coeffs], self.zero)
        if not other.coeffs or not other.coeffs[0]:
            raise ZeroDivisionError("series with zero constant term is not invertible")
        n = min(self.order, other.order)
        c0 = other.coeffs[0]
        q = []
        for k in range(n):
            acc = self.coeffs[k]
            for i in range(1, k + 1):
                acc = acc - other.coeffs[i] * q[k - i]
            q.append(acc / c0)
        return Series(q, self.zero)

    def derivative(self) -> "Series":
        return Series([c * i for i, c in enumerate(self.coeffs)][1:], self.zero)

    def shift(self, k: int) -> "Series":
        """Multiply by ``t^k`` (known precision grows by ``k``)."""
        return Series([self.zero] * k + list(self.coeffs), self.zero)

    def map_coeffs(self, f: Callable, zero=None) -> "Series":
        cs = [f(c) for c in self.coeffs]
        return Series(cs, zero if zero is not None else f(self.zero))

    def as_poly(self, var: str = "t") -> Poly:
        return Poly(self.coeffs, self.zero, var)


def series_logderiv_ratio(y: Series) -> Series:
    """``y'/y`` to order ``y.order - 1`` for a series with constant term 1."""
    if y.order < 2:
        raise PrecisionError("logarithmic derivative needs order >= 2")
    if y.coeffs[0] != 1:
        raise ValueError("series must have unit constant term")
    return y.derivative() / y.truncate(y.order - 1)
