"""Exact arithmetic over Q and real quadratic fields, and reduction modulo primes.

Rationals are :class:`fractions.Fraction`.  Elements of Q(sqrt D) are
:class:`QuadElem` values ``a + b*sqrt(D)``; ``D = 0`` is plain Q.  Residues
live in :class:`FFElem`, which models F_p, or F_{p^2} as F_p[w]/(w^2 - D).

Ring of integers notation ``[u, v] = u + v*(1 + sqrt D)/2`` is accepted and
produced only at the I/O boundary (see :func:`from_alpha` / :func:`to_alpha`).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import NamedTuple, Union

from .errors import DataError, NotPIntegralError, RamifiedPrimeError

Rational = Fraction

SPLIT = "split"
INERT = "inert"
RAMIFIED = "ramified"


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n % 2 == 0:
        return n == 2
    return all(n % d for d in range(3, math.isqrt(n) + 1, 2))


def is_squarefree(n: int) -> bool:
    n = abs(n)
    return n > 0 and all(n % (d * d) for d in range(2, math.isqrt(n) + 1))


def as_rational(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        try:
            return Fraction(x.strip())
        except ValueError as exc:
            raise DataError(f"not a rational: {x!r}") from exc
    raise TypeError(f"cannot interpret {x!r} as a rational")


def sqrt_mod(n: int, p: int) -> int:
    """Smallest square root of ``n`` modulo the odd prime ``p`` (Tonelli-Shanks)."""
    n %= p
    if n == 0:
        return 0
    if pow(n, (p - 1) // 2, p) != 1:
        raise ValueError(f"{n} is not a square modulo {p}")
    q, s = p - 1, 0
    while q % 2 == 0:
        q //= 2
        s += 1
    z = 2
    while pow(z, (p - 1) // 2, p) != p - 1:
        z += 1
    m, c, t, r = s, pow(z, q, p), pow(n, q, p), pow(n, (q + 1) // 2, p)
    while t != 1:
        i, t2 = 0, t
        while t2 != 1:
            t2 = t2 * t2 % p
            i += 1
        b = pow(c, 1 << (m - i - 1), p)
        m, c, t, r = i, b * b % p, t * b * b % p, r * b % p
    return min(r, p - r)


# ---------------------------------------------------------------------------
# Q(sqrt D)


class QuadElem:
    """Immutable element ``a + b*sqrt(D)`` of Q(sqrt D), ``D`` squarefree (or 0 for Q)."""

    __slots__ = ("a", "b", "D")

    def __init__(self, a=0, b=0, D: int = 0):
        a, b = as_rational(a), as_rational(b)
        if D == 0:
            if b:
                raise ValueError("b must vanish when D = 0")
        elif D < 0 or not is_squarefree(D) or D == 1:
            raise ValueError(f"D must be a squarefree integer > 1 (or 0), got {D}")
        object.__setattr__(self, "a", a)
        object.__setattr__(self, "b", b)
        object.__setattr__(self, "D", D)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElem is immutable")

    def _coerce(self, other):
        if isinstance(other, QuadElem):
            if other.D == self.D or other.D == 0 and not other.b:
                return other.a, other.b
            if self.D == 0:
                return None
            raise ValueError(f"mixing Q(sqrt {self.D}) and Q(sqrt {other.D})")
        if isinstance(other, (int, Fraction)):
            return Fraction(other), Fraction(0)
        return None

    def _lift(self, other):
        # self has D = 0 and other lives in a genuine quadratic field
        return QuadElem(self.a, 0, other.D)

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, QuadElem):
                return self._lift(other) + other
            return NotImplemented
        return QuadElem(self.a + c[0], self.b + c[1], self.D)

    __radd__ = __add__

    def __neg__(self):
        return QuadElem(-self.a, -self.b, self.D)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, QuadElem):
                return self._lift(other) - other
            return NotImplemented
        return QuadElem(self.a - c[0], self.b - c[1], self.D)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            if isinstance(other, QuadElem):
                return self._lift(other) * other
            return NotImplemented
        a, b = c
        return QuadElem(self.a * a + self.D * self.b * b, self.a * b + self.b * a, self.D)

    __rmul__ = __mul__

    def norm(self) -> Fraction:
        return self.a * self.a - self.D * self.b * self.b

    def conjugate(self) -> "QuadElem":
        return QuadElem(self.a, -self.b, self.D)

    def inverse(self) -> "QuadElem":
        n = self.norm()
        if not n:
            raise ZeroDivisionError("QuadElem division by zero")
        return QuadElem(self.a / n, -self.b / n, self.D)

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                raise ZeroDivisionError("QuadElem division by zero")
            return QuadElem(self.a / other, self.b / other, self.D)
        if isinstance(other, QuadElem):
            if self.D == 0 and other.D:
                return self._lift(other) * other.inverse()
            self._coerce(other)
            return self * other.inverse()
        return NotImplemented

    def __rtruediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.inverse() * other
        return NotImplemented

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = QuadElem(1, 0, self.D), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __bool__(self):
        return bool(self.a) or bool(self.b)

    def __eq__(self, other):
        if isinstance(other, QuadElem):
            if self.b or other.b:
                return self.D == other.D and self.a == other.a and self.b == other.b
            return self.a == other.a
        if isinstance(other, (int, Fraction)):
            return not self.b and self.a == other
        return NotImplemented

    def __hash__(self):
        if not self.b:
            return hash(self.a)
        return hash((self.a, self.b, self.D))

    def is_rational(self) -> bool:
        return not self.b

    def denominators(self) -> tuple[int, int]:
        return self.a.denominator, self.b.denominator

    def __repr__(self):
        return f"QuadElem({str(self.a)!r}, {str(self.b)!r}, D={self.D})"

    def __str__(self):
        return format_quad(self)


def from_alpha(u, v, D: int) -> QuadElem:
    """``[u, v] = u + v*(1 + sqrt D)/2`` as an element of Q(sqrt D)."""
    u, v = as_rational(u), as_rational(v)
    return QuadElem(u + v / 2, v / 2, D)


def to_alpha(x: QuadElem) -> tuple[Fraction, Fraction]:
    """Inverse of :func:`from_alpha`: coordinates in the basis ``1, (1 + sqrt D)/2``."""
    return x.a - x.b, 2 * x.b


def format_quad(x: QuadElem, alpha: bool = False) -> str:
    if not x.b:
        return str(x.a)
    if alpha:
        u, v = to_alpha(x)
        den = math.lcm(u.denominator, v.denominator)
        body = f"[{u * den},{v * den}]"
        return body if den == 1 else f"{body}/{den}"
    den = math.lcm(x.a.denominator, x.b.denominator)
    A, B = x.a * den, x.b * den
    root = f"sqrt{x.D}"
    if A:
        body = f"{A}{'+' if B > 0 else '-'}{'' if abs(B) == 1 else abs(B)}{'*' if abs(B) != 1 else ''}{root}"
    else:
        body = f"{'-' if B < 0 else ''}{'' if abs(B) == 1 else abs(B)}{'*' if abs(B) != 1 else ''}{root}"
    if den == 1:
        return body
    return f"({body})/{den}"


# ---------------------------------------------------------------------------
# Finite fields


class FFElem:
    """Element ``c0 + c1*w`` of F_p (``w2 is None``) or of F_p[w]/(w^2 - w2)."""

    __slots__ = ("c0", "c1", "p", "w2")

    def __init__(self, c0: int, c1: int = 0, p: int = 0, w2: int | None = None):
        if p <= 2:
            raise ValueError("FFElem needs an odd prime p")
        if w2 is None and c1 % p:
            raise ValueError("c1 must vanish in the prime field")
        object.__setattr__(self, "c0", c0 % p)
        object.__setattr__(self, "c1", c1 % p if w2 is not None else 0)
        object.__setattr__(self, "p", p)
        object.__setattr__(self, "w2", None if w2 is None else w2 % p)

    def __setattr__(self, name, value):
        raise AttributeError("FFElem is immutable")

    @property
    def is_prime_field(self) -> bool:
        return self.w2 is None

    def _new(self, c0, c1=0):
        return FFElem(c0, c1, self.p, self.w2)

    def _coerce(self, other):
        if isinstance(other, FFElem):
            if other.p != self.p or (other.w2 != self.w2 and other.w2 is not None and self.w2 is not None):
                raise ValueError("FFElem operands from different fields")
            return other.c0, other.c1
        if isinstance(other, int):
            return other, 0
        if isinstance(other, Fraction):
            return reduce_rational(other, self.p), 0
        return None

    def _field_of(self, other):
        # prime-field elements embed into F_{p^2}
        if isinstance(other, FFElem) and self.w2 is None and other.w2 is not None:
            return other.w2
        return self.w2

    def __add__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FFElem(self.c0 + c[0], self.c1 + c[1], self.p, self._field_of(other))

    __radd__ = __add__

    def __neg__(self):
        return self._new(-self.c0, -self.c1)

    def __sub__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        return FFElem(self.c0 - c[0], self.c1 - c[1], self.p, self._field_of(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        c = self._coerce(other)
        if c is None:
            return NotImplemented
        w2 = self._field_of(other)
        a0, a1 = self.c0, self.c1
        b0, b1 = c
        if w2 is None:
            return FFElem(a0 * b0, 0, self.p)
        return FFElem(a0 * b0 + w2 * a1 * b1, a0 * b1 + a1 * b0, self.p, w2)

    __rmul__ = __mul__

    def norm(self) -> int:
        if self.w2 is None:
            return self.c0
        return (self.c0 * self.c0 - self.w2 * self.c1 * self.c1) % self.p

    def inverse(self) -> "FFElem":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("division by zero in finite field")
        ninv = pow(n, -1, self.p)
        if self.w2 is None:
            return self._new(ninv)
        return self._new(self.c0 * ninv, -self.c1 * ninv)

    def __truediv__(self, other):
        if isinstance(other, int):
            other = self._new(other)
        elif isinstance(other, Fraction):
            other = self._new(reduce_rational(other, self.p))
        if not isinstance(other, FFElem):
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = self._new(1), self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def frobenius(self) -> "FFElem":
        return self ** self.p

    def __bool__(self):
        return bool(self.c0 or self.c1)

    def __eq__(self, other):
        if isinstance(other, FFElem):
            return self.p == other.p and self.c0 == other.c0 and self.c1 == other.c1 and (
                self.w2 == other.w2 or self.c1 == 0)
        if isinstance(other, int):
            return self.c1 == 0 and (self.c0 - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.c0, self.c1, self.p))

    def __lt__(self, other):
        return (self.c1, self.c0) < (other.c1, other.c0)

    def __repr__(self):
        return f"FFElem({self.c0}, {self.c1}, p={self.p}, w2={self.w2})"

    def __str__(self):
        return format_ff(self)


def format_ff(x: FFElem) -> str:
    if not x.c1:
        return str(x.c0)
    if not x.c0:
        return "w" if x.c1 == 1 else f"{x.c1}*w"
    return f"{x.c0}+{'' if x.c1 == 1 else str(x.c1) + '*'}w"


def parse_ff(text: str, p: int, w2: int | None = None) -> FFElem:
    """Parse ``"c0"``, ``"c1*w"`` or ``"c0+c1*w"``."""
    c0 = c1 = 0
    for term in str(text).replace(" ", "").split("+"):
        if not term:
            raise DataError(f"bad finite-field literal {text!r}")
        if term.endswith("w"):
            coeff = term[:-1].rstrip("*")
            if w2 is None:
                raise DataError(f"{text!r} needs a quadratic field")
            if coeff and not coeff.lstrip("-").isdigit():
                raise DataError(f"bad finite-field literal {text!r}")
            c1 += int(coeff) if coeff else 1
        elif term.lstrip("-").isdigit():
            c0 += int(term)
        else:
            raise DataError(f"bad finite-field literal {text!r}")
    return FFElem(c0, c1, p, w2)


def ff_arith(a: FFElem, b: FFElem, op: str) -> FFElem:
    """Apply ``op`` in ``'+-*/'`` to two elements of the same finite field."""
    if a.p != b.p or a.w2 != b.w2:
        raise ValueError("operands live in different fields")
    if op == "+":
        return a + b
    if op == "-":
        return a - b
    if op == "*":
        return a * b
    if op == "/":
        return a / b
    raise ValueError(f"unknown operator {op!r}")


# ---------------------------------------------------------------------------
# Primes and reduction


class Splitting(NamedTuple):
    kind: str
    root: int | None = None

    def __str__(self):
        if self.kind == SPLIT:
            return f"Split({self.root})"
        return self.kind.capitalize()


def splitting_type(D: int, p: int) -> Splitting:
    """Decomposition of the odd prime ``p`` in Q(sqrt D).

    A split prime carries the smaller square root ``r`` of ``D`` modulo ``p``.
    """
    if p == 2:
        raise ValueError("p = 2 is not supported")
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if D % p == 0:
        return Splitting(RAMIFIED)
    if pow(D % p, (p - 1) // 2, p) == 1:
        return Splitting(SPLIT, sqrt_mod(D, p))
    return Splitting(INERT)


@dataclass(frozen=True)
class PrimeContext:
    """A prime ``p`` of good reduction for Q(sqrt D) and its residue fields.

    ``D = 0`` means the coefficients are rational; the residue field is F_p and
    ``splitting`` is ``None``.
    """

    p: int
    D: int = 0
    splitting: Splitting | None = None

    @classmethod
    def make(cls, p: int, D: int = 0) -> "PrimeContext":
        if p == 2 or not is_prime(p):
            raise ValueError(f"p must be an odd prime, got {p}")
        if D == 0:
            return cls(p, 0, None)
        s = splitting_type(D, p)
        if s.kind == RAMIFIED:
            raise RamifiedPrimeError(f"p = {p} is ramified in Q(sqrt {D})")
        return cls(p, D, s)

    @property
    def is_inert(self) -> bool:
        return self.splitting is not None and self.splitting.kind == INERT

    @property
    def is_split(self) -> bool:
        return self.splitting is not None and self.splitting.kind == SPLIT

    @property
    def branches(self) -> tuple[int, ...]:
        return (0, 1) if self.is_split else (0,)

    @property
    def w2(self) -> int | None:
        return self.D % self.p if self.is_inert else None

    def zero(self) -> FFElem:
        return FFElem(0, 0, self.p, self.w2)

    def one(self) -> FFElem:
        return FFElem(1, 0, self.p, self.w2)

    def elem(self, c0: int, c1: int = 0) -> FFElem:
        return FFElem(c0, c1, self.p, self.w2)

    def sqrt_image(self, branch: int = 0) -> FFElem:
        """Image of sqrt(D) in the residue field selected by ``branch``."""
        if self.D == 0:
            raise ValueError("no sqrt(D) over Q")
        if self.is_inert:
            return self.elem(0, 1)
        r = self.splitting.root
        return self.elem(r if branch == 0 else self.p - r)

    def reduce(self, x, branch: int = 0) -> FFElem:
        return reduce(x, self, branch)


def reduce_rational(x, p: int) -> int:
    x = as_rational(x)
    if x.denominator % p == 0:
        raise NotPIntegralError(f"{x} is not {p}-integral")
    return x.numerator * pow(x.denominator, -1, p) % p


def reduce(x, ctx: PrimeContext, branch: int = 0) -> FFElem:
    """Reduce a rational or quadratic-field element at the prime selected by ``branch``."""
    if branch not in ctx.branches:
        raise ValueError(f"branch {branch} not available for {ctx.splitting}")
    if isinstance(x, FFElem):
        return x
    if isinstance(x, QuadElem):
        if x.b and x.D != ctx.D:
            raise ValueError(f"element of Q(sqrt {x.D}) reduced in context D={ctx.D}")
        try:
            a = reduce_rational(x.a, ctx.p)
            b = reduce_rational(x.b, ctx.p)
        except NotPIntegralError:
            raise NotPIntegralError(f"{format_quad(x)} is not {ctx.p}-integral") from None
        if not b:
            return ctx.elem(a)
        return ctx.elem(a) + ctx.sqrt_image(branch) * b
    return ctx.elem(reduce_rational(x, ctx.p))


def is_p_integral(x, p: int) -> bool:
    if isinstance(x, QuadElem):
        return x.a.denominator % p != 0 and x.b.denominator % p != 0
    if isinstance(x, FFElem):
        return True
    return as_rational(x).denominator % p != 0


def conjugate(x):
    """Galois conjugation sqrt(D) -> -sqrt(D); identity on rationals."""
    return x.conjugate() if isinstance(x, QuadElem) else x


# ---------------------------------------------------------------------------
# Text / JSON encodings

Scalar = Union[Fraction, QuadElem, FFElem]


def encode_elem(x, alpha: bool = False):
    """JSON-ready encoding: rationals and residues as strings, quadratic elements as objects."""
    if isinstance(x, FFElem):
        return format_ff(x)
    if isinstance(x, QuadElem):
        if not x.b and x.D == 0:
            return str(x.a)
        if alpha:
            u, v = to_alpha(x)
            return {"alpha": [str(u), str(v)], "D": x.D}
        return {"a": str(x.a), "b": str(x.b), "D": x.D}
    return str(as_rational(x))


def decode_elem(obj, D: int = 0, p: int | None = None, w2: int | None = None):
    """Inverse of :func:`encode_elem`.

    With ``p`` given, strings are read as residues; otherwise as rationals
    (promoted to ``QuadElem`` when ``D`` is nonzero).
    """
    if isinstance(obj, dict):
        d = int(obj.get("D", D))
        if "alpha" in obj:
            u, v = obj["alpha"]
            return from_alpha(u, v, d)
        if "a" in obj:
            return QuadElem(as_rational(str(obj["a"])), as_rational(str(obj.get("b", "0"))), d)
        raise DataError(f"bad quadratic element {obj!r}")
    if p is not None:
        return parse_ff(str(obj), p, w2)
    if isinstance(obj, (int, str)):
        r = as_rational(str(obj))
        return QuadElem(r, 0, D) if D else r
    raise DataError(f"bad element encoding {obj!r}")


def zero_like(x):
    if isinstance(x, FFElem):
        return FFElem(0, 0, x.p, x.w2)
    if isinstance(x, QuadElem):
        return QuadElem(0, 0, x.D)
    return Fraction(0)


def one_like(x):
    return zero_like(x) + 1
