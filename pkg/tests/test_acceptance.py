"""One test per acceptance criterion; each records a PASS/FAIL/SKIP line."""

import random
import time
from fractions import Fraction as F

import pytest

from atkinloci.cli import main
from atkinloci.exact_arith import FFElem, PrimeContext, QuadElem, is_prime, reduce, splitting_type
from atkinloci.loci import degree_of_ph, locus_report, partial_hasse, reduce_poly
from atkinloci.oracles import (
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
from atkinloci.pade_ortho import pade_denominator
from atkinloci.poly_series import Poly, is_palindromic
from atkinloci.presets import fixtures, get_preset, load_moments, moment_stream, ode_for, poly_from_desc
from atkinloci.presets import DATA

from conftest import record
from helpers import check_backends, random_stream

D25 = get_preset("delta-2-5")
W17 = get_preset("w17")


def fp(p, *desc):
    return Poly([FFElem(c, 0, p) for c in reversed(desc)], FFElem(0, 0, p))


def J(p):
    return fp(p, 1, 0)


def primes(lo, hi):
    return [q for q in range(lo, hi + 1) if is_prime(q)]


def test_criterion_1_delta25_atkin_fixtures():
    t0 = time.perf_counter()
    want = {
        (1, 1): [F(-7, 20), 1],
        (1, 2): [F(3213, 48000), F(-549, 600), 1],
        (2, 1): [F(-9, 20), 1],
        (2, 2): [F(1653, 16000), F(-581, 600), 1],
        (2, 3): [F(-3158883, 128000000), F(3393523, 6400000), F(-184, 125), 1],
    }
    for (j, n), coeffs in want.items():
        got = pade_denominator(moment_stream(D25, j), n)
        assert got == Poly([F(c) for c in coeffs], F(0)), (j, n, str(got))
    dt = time.perf_counter() - t0
    assert dt < 1.0
    record(1, "PASS", f"5 Atkin polynomials exact ({dt:.3f}s)")


def test_criterion_2_delta25_loci():
    t0 = time.perf_counter()
    expected = {
        7: {"ss": J(7) * fp(7, 1, -5), "sp": fp(7, 1)},
        11: {"no": fp(11, 1, -1) * fp(11, 1, -8), "sp": fp(11, 1, -1)},
        13: {"ss": J(13) * fp(13, 1, -1) * fp(13, 1, -9), "sp": fp(13, 1, -1)},
    }
    checked_trunc = 0
    for p, want in expected.items():
        rep = locus_report(D25, p)
        for b in rep.branches:
            for key, poly in want.items():
                assert getattr(b, key) == poly, (p, key, str(getattr(b, key)))
            for j in (1, 2):
                tr = b.truncation[j - 1]
                if degree_of_ph(D25, p, j) < p:
                    assert tr == b.ph[j - 1], (p, j)
                    checked_trunc += 1
            assert b.combined == b.no
    dt = time.perf_counter() - t0
    assert dt < 5.0
    record(2, "PASS", f"p=7,11,13 via Pade, truncation ({checked_trunc} checks) and combined stream ({dt:.2f}s)")


def test_criterion_3_degree_formulas():
    table = {7: (1, 1), 11: (2, 1), 13: (1, 3)}
    for p, (n1, n2) in table.items():
        assert (degree_of_ph(D25, p, 1), degree_of_ph(D25, p, 2)) == (n1, n2)
    count = 0
    for p in primes(3, 99):
        if p == 17:
            continue
        inert = splitting_type(17, p).kind == "inert"
        want = ((p - 3) // 2, (3 * p - 1) // 2) if inert else (3 * (p - 1) // 2, (p - 1) // 2)
        assert (degree_of_ph(W17, p, 1), degree_of_ph(W17, p, 2)) == want
        count += 1
    record(3, "PASS", f"Delta(2,5,oo) table and W17 formulas for {count} primes < 100")


def test_criterion_4_sl2_oracle():
    t0 = time.perf_counter()
    g = moment_stream(get_preset("delta-2-3"), 1)
    ps = primes(5, 47)
    for p in ps:
        S = ss_elliptic_j(p)
        assert len(S) == ss_count(p)
        ph = reduce_poly(pade_denominator(g, len(S)), PrimeContext.make(p))
        assert ph.degree == len(S) and ph.lc() == 1
        phj = ph.compose_scale(1 / FFElem(1728, 0, p)).monic()
        assert phj == roots_poly(S, p, nonresidue(p)), p
    dt = time.perf_counter() - t0
    assert dt < 30.0
    record(4, "PASS", f"{len(ps)} primes 5..47 ({dt:.2f}s)")


def test_criterion_5_delta25_oracle():
    t0 = time.perf_counter()
    ps = [7, 11, 13, 17, 19, 23, 29, 31]
    for p in ps:
        rep = locus_report(D25, p, with_truncation=False, with_combined=False)
        w2 = nonresidue(p)
        oracle_roots = nonordinary_fibers_delta25(p)
        for b in rep.branches:
            lifted = b.no.map_coeffs(lambda c: FFElem(c.c0, c.c1, p, w2), FFElem(0, 0, p, w2))
            roots = {x for x in field_elements(p, w2) if not lifted(x)}
            assert roots == oracle_roots, p
            # the root sets only see F_{p^2}; the polynomial oracle sees every fibre
            assert b.no == nonordinary_poly_delta25(p), p
    dt = time.perf_counter() - t0
    assert dt < 120.0
    record(5, "PASS", f"{len(ps)} primes, root sets over F_p^2 and full polynomials ({dt:.2f}s)")


def test_criterion_6_backend_equivalence():
    rng = random.Random(20240607)
    full = 0
    for _ in range(100):
        full += len(check_backends(random_stream(rng, 12)))
    record(6, "PASS", f"100 random streams, {full} orders compared across all four backends")


def test_criterion_7_w17_tier1(capsys):
    g1 = load_moments(DATA / "w17_phi1.json")
    A11 = pade_denominator(g1, 1)
    want = Poly([-QuadElem(F(27, 8), F(-5, 8), 17), QuadElem(1, 0, 17)], QuadElem(0, 0, 17))
    assert A11 == want
    ctx = PrimeContext.make(5, 17)
    assert ctx.is_inert
    assert reduce_poly(A11, ctx) == Poly([ctx.one(), ctx.one()], ctx.zero())
    A, ph = partial_hasse(W17, 5, 1, ctx, moments=g1)
    assert ph == Poly([ctx.one(), ctx.one()], ctx.zero())
    code = main(["check", "fixtures"])
    out = capsys.readouterr().out
    assert code == 0
    errata = [line for line in out.splitlines() if line.startswith("ERRATUM")]
    assert len(errata) == 2 and "A_1,1" in errata[0] and "A_2,1" in errata[1]
    record(7, "PASS", "A_1,1 reduces to J+1 mod 5; printed A_1,1/A_2,1 reported as erratum")


def test_criterion_8_w17_tier2():
    odes = [ode_for(W17, j) for j in (1, 2)]
    if any(o is None for o in odes):
        record(8, "SKIP", "W17 Picard-Fuchs operators not transcribed; tier 2 not run")
        pytest.skip("W17 Picard-Fuchs operators not available (tier 2)")
    fx = fixtures()["w17"]
    for j, name in ((1, "w17_phi1.json"), (2, "w17_phi2.json")):
        listed = load_moments(DATA / name).values
        assert moment_stream(W17, j).require(len(listed)) == listed
    for item in fx["ph"]:
        p, j = item["p"], item["j"]
        ctx = PrimeContext.make(p, 17)
        want = Poly([ctx.one()], ctx.zero())
        for fac in item["factors"]:
            want = want * poly_from_desc(fac, 17).map_coeffs(lambda c: reduce(c, ctx), ctx.zero())
        assert partial_hasse(W17, p, j, ctx)[1] == want
    for p in primes(3, 99):
        if p == 17:
            continue
        rep = locus_report(W17, p, with_truncation=False, with_combined=False)
        for b in rep.branches:
            assert all(b.palindromes), p
    record(8, "PASS", "W17 moments, ph_{3,j}, ph_{5,j} and palindromes for p < 100")


def test_criterion_9_legendre():
    for p in primes(3, 199):
        assert is_palindromic(legendre_hasse(p)), p
    for p in primes(5, 31):
        w2 = nonresidue(p)
        H = legendre_hasse(p).map_coeffs(lambda c: FFElem(c.c0, 0, p, w2), FFElem(0, 0, p, w2))
        roots = [x for x in field_elements(p, w2) if not H(x)]
        assert {legendre_j(x) for x in roots} == ss_elliptic_j(p), p
    record(9, "PASS", "self-reciprocal for odd p <= 199; roots onto ss_elliptic_j for p <= 31")


def test_criterion_10_integrality_and_degree():
    count = 0
    for p in sorted({7, 11, 13, 17, 19, 23, 29, 31}):
        ctx = PrimeContext.make(p)
        for j in (1, 2):
            n = degree_of_ph(D25, p, j)
            A, ph = partial_hasse(D25, p, j, ctx)
            assert A.degree == n and ph.degree == n and ph.lc() == 1
            count += 1
    tier2 = all(ode_for(W17, j) is not None for j in (1, 2))
    w17_cases = [(3, 1), (5, 1)] + ([(3, 2), (5, 2)] if tier2 else [])
    for p, j in w17_cases:
        ctx = PrimeContext.make(p, 17)
        A, ph = partial_hasse(W17, p, j, ctx)
        n = degree_of_ph(W17, p, j)
        assert ph.degree == n and ph.lc() == 1
        count += 1
    note = "" if tier2 else " (W17 tier-2 loci skipped)"
    record(10, "PASS", f"{count} Atkin polynomials p-integral with monic reductions of degree n_p,j{note}")
