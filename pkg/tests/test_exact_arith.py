from fractions import Fraction as F

import pytest
from hypothesis import given, strategies as st

from atkinloci.errors import NotPIntegralError, RamifiedPrimeError
from atkinloci.exact_arith import (
    INERT,
    RAMIFIED,
    SPLIT,
    FFElem,
    PrimeContext,
    QuadElem,
    decode_elem,
    encode_elem,
    ff_arith,
    format_quad,
    from_alpha,
    is_prime,
    parse_ff,
    reduce,
    sqrt_mod,
    splitting_type,
    to_alpha,
)

SMALL_PRIMES = [q for q in range(3, 200) if is_prime(q)]


def test_splitting_examples():
    assert splitting_type(5, 7).kind == INERT
    s = splitting_type(5, 11)
    assert s.kind == SPLIT and str(s) == "Split(4)"
    assert splitting_type(17, 3).kind == INERT
    assert splitting_type(17, 17).kind == RAMIFIED
    assert str(splitting_type(5, 7)) == "Inert"


@given(st.sampled_from(SMALL_PRIMES), st.integers(-60, 60).filter(lambda d: d not in (0, 1)))
def test_splitting_matches_exhaustive_search(p, D):
    roots = [x for x in range(p) if (x * x - D) % p == 0]
    s = splitting_type(D, p)
    if D % p == 0:
        assert s.kind == RAMIFIED
    elif roots:
        assert s.kind == SPLIT and s.root == min(roots)
    else:
        assert s.kind == INERT


@given(st.sampled_from(SMALL_PRIMES), st.integers(1, 10 ** 6))
def test_sqrt_mod(p, n):
    if pow(n % p, (p - 1) // 2, p) == 1:
        r = sqrt_mod(n, p)
        assert r * r % p == n % p


def test_reduce_examples():
    ctx = PrimeContext.make(5, 17)
    assert reduce(QuadElem(F(27, 8), F(-5, 8), 17), ctx) == FFElem(4, 0, 5, ctx.w2)
    assert reduce(F(7, 20), PrimeContext.make(7)) == FFElem(0, 0, 7)
    assert not reduce(F(0), PrimeContext.make(13))
    with pytest.raises(NotPIntegralError, match="7/20"):
        reduce(F(7, 20), PrimeContext.make(5))


def test_ff_examples():
    w = FFElem(0, 1, 3, 17 % 3)
    assert ff_arith(w, w, "*") == FFElem(2, 0, 3, 2)
    assert ff_arith(FFElem(1, 0, 11), FFElem(6, 0, 11), "/") == FFElem(2, 0, 11)
    a, b = FFElem(1, 2, 3, 2), FFElem(1, -2, 3, 2)
    assert a * b == FFElem(2, 0, 3, 2)
    with pytest.raises(ValueError):
        ff_arith(FFElem(1, 0, 5), FFElem(1, 0, 7), "+")


def test_ramified_context_refused():
    with pytest.raises(RamifiedPrimeError):
        PrimeContext.make(5, 5)


def test_split_branches_are_conjugate_images():
    ctx = PrimeContext.make(11, 5)
    assert ctx.branches == (0, 1)
    r0, r1 = ctx.sqrt_image(0), ctx.sqrt_image(1)
    assert r0 == FFElem(4, 0, 11) and r0 + r1 == 0
    x = QuadElem(F(1, 3), F(2, 7), 5)
    assert reduce(x, ctx, 0) == reduce(x.conjugate(), ctx, 1)


quads = st.builds(lambda a, b, c, d: QuadElem(F(a, c), F(b, d), 17),
                  st.integers(-50, 50), st.integers(-50, 50), st.integers(1, 30), st.integers(1, 30))


@given(quads, quads, st.sampled_from([3, 5, 7, 11, 13, 19, 23]))
def test_reduction_is_a_ring_homomorphism(x, y, p):
    ctx = PrimeContext.make(p, 17)
    if not all(c.denominator % p for c in (x.a, x.b, y.a, y.b)):
        return
    for br in ctx.branches:
        rx, ry = reduce(x, ctx, br), reduce(y, ctx, br)
        assert reduce(x + y, ctx, br) == rx + ry
        assert reduce(x * y, ctx, br) == rx * ry
        assert reduce(x - y, ctx, br) == rx - ry


@given(quads, quads)
def test_quadratic_field_axioms(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    if x:
        assert x * x.inverse() == 1
        assert (y / x) * x == y


@given(quads)
def test_alpha_basis_round_trip(x):
    u, v = to_alpha(x)
    assert from_alpha(u, v, 17) == x
    assert decode_elem(encode_elem(x), 17) == x
    assert decode_elem(encode_elem(x, alpha=True), 17) == x


def test_format_quad():
    x = QuadElem(F(27, 8), F(-5, 8), 17)
    assert format_quad(x) == "(27-5*sqrt17)/8"
    assert format_quad(x, alpha=True) == "[16,-5]/4"


@given(st.sampled_from([3, 5, 7, 13]), st.integers(0, 200), st.integers(0, 200))
def test_ff_parse_and_frobenius(p, a, b):
    w2 = next(r for r in range(2, p) if pow(r, (p - 1) // 2, p) == p - 1)
    x = FFElem(a, b, p, w2)
    assert parse_ff(str(x), p, w2) == x
    assert x ** p == x.frobenius()
    assert x.frobenius().frobenius() == x
    if x:
        assert x * x.inverse() == 1
