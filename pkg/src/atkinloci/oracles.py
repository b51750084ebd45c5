"""Brute-force verifiers that share no code path with the Padé machinery.

* supersingular j-invariants from the coefficient of ``x^(p-1)`` in
  ``(x^3 + a x + b)^((p-1)/2)``;
* the Legendre Hasse polynomial;
* Cartier-Manin matrices of genus-2 curves ``y^2 = f(x)`` and the
  non-ordinary fibres of ``y^2 = x^5 - 5x^3 + 5x - 2 eta``, ``J = 1/(1 - eta^2)``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import comb, factorial

from .errors import GuardError
from .exact_arith import FFElem, is_prime
from .poly_series import Poly, poly_gcd, squarefree_part


def nonresidue(p: int) -> int:
    """Smallest quadratic non-residue modulo ``p``; models F_{p^2} as F_p[w]/(w^2 - r)."""
    return next(r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1)


def field_elements(p: int, w2: int | None):
    if w2 is None:
        return [FFElem(c, 0, p) for c in range(p)]
    return [FFElem(c0, c1, p, w2) for c1 in range(p) for c0 in range(p)]


def _check_p(p: int, least: int = 3):
    if p < least or not is_prime(p):
        raise GuardError(f"p = {p} must be a prime >= {least}")


# ---------------------------------------------------------------------------
# elliptic curves


def deuring_coefficient(a, b, p: int):
    """Coefficient of ``x^(p-1)`` in ``(x^3 + a x + b)^((p-1)/2)``.

    Multinomial sum over ``i + j + k = m`` with ``3i + j = p - 1``.
    """
    m = (p - 1) // 2
    acc = a * 0
    for i in range(0, (p - 1) // 3 + 1):
        j = p - 1 - 3 * i
        k = m - i - j
        if j < 0 or k < 0:
            continue
        coef = factorial(m) // (factorial(i) * factorial(j) * factorial(k))
        if coef % p:
            acc = acc + (a ** j) * (b ** k) * coef
    return acc


def elliptic_model(j0: FFElem):
    """``(a, b)`` of a short Weierstrass model with j-invariant ``j0``."""
    if j0 == 0:
        return j0 * 0, j0 * 0 + 1
    if j0 == 1728:
        return j0 * 0 + 1, j0 * 0
    k = j0 / (j0 * 0 + 1728 - j0)
    return k * 3, k * 2


def ss_elliptic_j(p: int) -> set:
    """Supersingular j-invariants in F_{p^2} (exhaustive, Deuring criterion)."""
    _check_p(p, 5)
    w2 = nonresidue(p)
    out = set()
    for j0 in field_elements(p, w2):
        a, b = elliptic_model(j0)
        if not deuring_coefficient(a, b, p):
            out.add(j0)
    return out


def ss_count(p: int) -> int:
    return p // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]


def roots_poly(roots, p: int, w2: int | None, var: str = "J") -> Poly:
    zero = FFElem(0, 0, p, w2)
    return Poly.from_roots(sorted(roots), zero, var)


def legendre_hasse(p: int) -> Poly:
    """``H_p(l) = sum_i C(m, i)^2 l^i``, ``m = (p-1)/2``, over F_p."""
    _check_p(p)
    m = (p - 1) // 2
    zero = FFElem(0, 0, p)
    return Poly([FFElem(comb(m, i) ** 2, 0, p) for i in range(m + 1)], zero, "l")


def legendre_j(lam: FFElem) -> FFElem:
    num = (lam * lam - lam + 1) ** 3 * 256
    den = lam * lam * (lam - 1) ** 2
    return num / den


# ---------------------------------------------------------------------------
# Cartier-Manin


@dataclass(frozen=True)
class CMMatrix:
    """``A[i][j] = c_{(i+1)p - (j+1)}`` for ``f^((p-1)/2) = sum c_k x^k``."""

    entries: tuple
    p: int

    def det(self):
        (a, b), (c, d) = self.entries
        return a * d - b * c

    def frobenius(self) -> "CMMatrix":
        return CMMatrix(tuple(tuple(x.frobenius() for x in row) for row in self.entries), self.p)

    def __matmul__(self, other: "CMMatrix") -> "CMMatrix":
        A, B = self.entries, other.entries
        return CMMatrix(tuple(tuple(A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2))
                              for i in range(2)), self.p)

    def semilinear_product(self, e: int) -> "CMMatrix":
        """``A^(p^(e-1)) ... A^(p) A`` for a curve over F_{p^e}."""
        out, cur = self, self
        for _ in range(e - 1):
            cur = cur.frobenius()
            out = cur @ out
        return out

    def is_ordinary(self, e: int = 1) -> bool:
        return bool(self.semilinear_product(e).det())


def _mul_capped(f: list, g: list, cap: int, zero) -> list:
    out = [zero] * min(len(f) + len(g) - 1, cap + 1)
    for i, a in enumerate(f):
        if not a or i > cap:
            continue
        for j, b in enumerate(g):
            if i + j > cap:
                break
            out[i + j] = out[i + j] + a * b
    return out


def cartier_manin(f: Poly, p: int) -> CMMatrix:
    """Cartier-Manin matrix of ``y^2 = f(x)`` with ``deg f`` in ``{5, 6}``."""
    _check_p(p)
    if f.degree not in (5, 6):
        raise GuardError(f"deg f must be 5 or 6, got {f.degree}")
    if f.characteristic != p:
        raise GuardError("f must have coefficients in a field of characteristic p")
    if poly_gcd(f, f.derivative()).degree > 0:
        raise GuardError("singular fibre: f is not squarefree")
    cap = 2 * p
    zero = f.zero
    base, acc, e = list(f.coeffs), [zero + 1], (p - 1) // 2
    while e:
        if e & 1:
            acc = _mul_capped(acc, base, cap, zero)
        base = _mul_capped(base, base, cap, zero)
        e >>= 1

    def c(k):
        return acc[k] if 0 <= k < len(acc) else zero

    return CMMatrix(((c(p - 1), c(p - 2)), (c(2 * p - 1), c(2 * p - 2))), p)


# ---------------------------------------------------------------------------
# the genus-2 family over the Delta(2,5,oo) curve


def _dickson5(p: int) -> list:
    return [0, 5 % p, 0, (-5) % p, 0, 1]


def _int_mul(f, g, p, cap):
    out = [0] * min(len(f) + len(g) - 1, cap + 1)
    for i, a in enumerate(f):
        if a and i <= cap:
            for j, b in enumerate(g):
                if i + j > cap:
                    break
                out[i + j] = (out[i + j] + a * b) % p
    return out


def delta25_det_poly(p: int) -> list:
    """``det A`` as a polynomial in ``eta`` (integer coefficients mod p, low first).

    With ``f = D(x) - 2 eta`` and ``D = x^5 - 5x^3 + 5x``,
    ``f^m = sum_k C(m, k) D^k (-2 eta)^(m-k)``, so every Cartier-Manin entry
    is a polynomial in ``eta`` over F_p.
    """
    m = (p - 1) // 2
    cap = 2 * p
    D = _dickson5(p)
    # entries[e][(i,j)] = coefficient of eta^e
    idx = ((p - 1, p - 2), (2 * p - 1, 2 * p - 2))
    ent = [[[0] * (m + 1) for _ in range(2)] for _ in range(2)]
    Dk = [1]
    for k in range(m + 1):
        scal = comb(m, k) * pow(-2, m - k, p) % p
        for r in range(2):
            for s in range(2):
                kk = idx[r][s]
                if kk < len(Dk):
                    ent[r][s][m - k] = (ent[r][s][m - k] + scal * Dk[kk]) % p
        Dk = _int_mul(Dk, D, p, cap)

    def pmul(a, b):
        return _int_mul(a, b, p, 10 ** 9)

    ad, bc = pmul(ent[0][0], ent[1][1]), pmul(ent[0][1], ent[1][0])
    n = max(len(ad), len(bc))
    det = [((ad[i] if i < len(ad) else 0) - (bc[i] if i < len(bc) else 0)) % p for i in range(n)]
    while det and not det[-1]:
        det.pop()
    return det


def delta25_det_in_s(p: int) -> list:
    """``h`` with ``det A(eta) = h(eta^2)``; the twist ``x -> -x`` makes ``det`` even."""
    det = delta25_det_poly(p)
    if any(det[i] for i in range(1, len(det), 2)):
        raise GuardError("Cartier-Manin determinant is not even in eta")
    return det[0::2]


def infinity_fibre_ordinary(p: int, w2: int | None = None) -> bool:
    zero = FFElem(0, 0, p, w2)
    f = Poly([zero - 1, zero, zero, zero, zero, zero + 1], zero, "x")
    A = cartier_manin(f, p)
    return A.is_ordinary(1 if w2 is None else 2)


def nonordinary_fibers_delta25(p: int) -> set:
    """Non-ordinary fibres ``J0`` in F_{p^2} of ``y^2 = x^5 - 5x^3 + 5x - 2 eta``.

    ``J0 = 0`` is the fibre ``y^2 = x^5 - 1`` at ``eta = oo``.  For ``J0 != 0``
    we need ``eta^2 = s = 1 - 1/J0``.  Both square roots give quadratic twists
    of one another, and ordinarity is twist invariant, so only ``s`` matters:
    ``det A`` is a polynomial ``h(eta^2)`` with F_p coefficients and the fibre
    is non-ordinary iff ``h(s) = 0``.  This stays valid when ``eta`` itself
    lies in F_{p^4}.  (The semilinear product over F_{p^e} has determinant
    equal to the norm of ``det A``, so it is singular iff ``det A`` is.)
    """
    if p in (2, 5):
        raise GuardError("p must avoid 2 and 5")
    _check_p(p, 7)
    w2 = nonresidue(p)
    h = delta25_det_in_s(p)
    one = FFElem(1, 0, p, w2)
    out = set()
    if not infinity_fibre_ordinary(p):
        out.add(one * 0)
    for J0 in field_elements(p, w2):
        if not J0:
            continue
        s = one - one / J0
        acc = one * 0
        for c in reversed(h):
            acc = acc * s + c
        if not acc:
            out.add(J0)
    return out


def nonordinary_poly_delta25(p: int) -> Poly:
    """Monic squarefree polynomial over F_p vanishing exactly at the non-ordinary ``J0``.

    ``R(J) = J^deg(h) * h(1 - 1/J)``, times ``J`` when the ``eta = oo`` fibre
    is non-ordinary, then its radical.
    """
    h = delta25_det_in_s(p)
    zero = FFElem(0, 0, p)
    one = zero + 1
    J = Poly([zero, one], zero, "J")
    Jm1 = Poly([-one, one], zero, "J")
    n = len(h) - 1
    R = Poly([], zero, "J")
    for k, c in enumerate(h):
        if c:
            R = R + (Jm1 ** k) * (J ** (n - k)) * c
    if not infinity_fibre_ordinary(p):
        R = R * J
    return squarefree_part(R.monic())
