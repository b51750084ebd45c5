"""Partial Hasse polynomials and the non-ordinary / supersingular / superspecial loci.

For each index ``j`` the Atkin polynomial of degree ``n_{p,j}`` (a Padé
denominator of the moment generating function) has ``p``-integral
coefficients, and its reduction at a prime above ``p`` is the partial Hasse
polynomial ``ph_{p,j}``.  The loci are then ``no = lcm_j ph``, ``sp = gcd_j ph``
and, in genus 2, ``ss = no`` (inert ``p``) or ``ss = sp`` (split ``p``).
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional

from .errors import GuardError, NotPIntegralError, PrecisionError, Refusal
from .exact_arith import (
    INERT,
    FFElem,
    PrimeContext,
    QuadElem,
    decode_elem,
    format_quad,
    is_p_integral,
    reduce,
    splitting_type,
)
from .pade_ortho import MomentStream, combined_moments, pade_denominator
from .picard_fuchs import CurvePreset, solve_series, truncation_path
from .poly_series import Poly, is_palindromic, poly_gcd, poly_lcm
from .presets import check_prime, moment_stream, ode_for


def degree_of_ph(preset: CurvePreset, p: int, j: int) -> int:
    if preset.degree_formula is None:
        raise GuardError(f"degree provider required: preset {preset.name} has no degree formula (use --degree)")
    check_prime(preset, p)
    return preset.degree_formula(p, j)


def field_is_inert(preset: CurvePreset, p: int) -> Optional[bool]:
    if not preset.field_D:
        return None
    return splitting_type(preset.field_D, p).kind == INERT


def coeff_context(preset: CurvePreset, p: int) -> PrimeContext:
    return PrimeContext.make(p, preset.coeff_D)


def reduce_poly(A: Poly, ctx: PrimeContext, branch: int = 0) -> Poly:
    for c in A.coeffs:
        if not is_p_integral(c, ctx.p):
            txt = format_quad(c) if isinstance(c, QuadElem) else str(c)
            raise NotPIntegralError(f"coefficient {txt} of the Atkin polynomial is not {ctx.p}-integral")
    return A.map_coeffs(lambda c: reduce(c, ctx, branch), zero=ctx.zero())


def partial_hasse(preset: CurvePreset, p: int, j: int, ctx: PrimeContext, branch: int = 0,
                  degree: int | None = None, moments: MomentStream | None = None) -> tuple[Poly, Poly]:
    """``(A_{j,n}, ph_{p,j})`` with ``n = n_{p,j}`` unless ``degree`` overrides it."""
    n = degree_of_ph(preset, p, j) if degree is None else degree
    g = moments if moments is not None else moment_stream(preset, j)
    A = pade_denominator(g, n)
    ph = reduce_poly(A, ctx, branch)
    if ph.degree != n or ph.lc() != 1:
        raise GuardError(f"reduction of A_{{{j},{n}}} is not monic of degree {n}")
    return A, ph


def assemble_loci(phs: list[Poly], inert: Optional[bool] = None):
    """``(no, sp, ss)``; ``ss`` is ``None`` unless there are exactly two indices."""
    no = poly_lcm(phs)
    sp = phs[0].monic()
    for f in phs[1:]:
        sp = poly_gcd(sp, f)
    ss = None
    if len(phs) == 2 and inert is not None:
        ss = no if inert else sp
    return no, sp, ss


def combined_atkin(preset: CurvePreset, p: int, ctx: PrimeContext, n_p: int, branch: int = 0,
                   streams: list[MomentStream] | None = None) -> Poly:
    """Padé denominator of the Lyapunov-weighted moment stream at order ``n_p``, reduced."""
    if streams is None:
        streams = [moment_stream(preset, j) for j in range(1, preset.g + 1)]
    g = combined_moments(streams, list(preset.lyap))
    return reduce_poly(pade_denominator(g, n_p), ctx, branch)


def palindrome_check(ph: Poly) -> bool:
    return is_palindromic(ph)


def truncation_ph(preset: CurvePreset, p: int, j: int, ctx: PrimeContext, branch: int = 0):
    """``ph`` via the truncation path, or ``None`` when no operator is available."""
    ode = ode_for(preset, j)
    if ode is None:
        return None
    y = solve_series(ode, p)
    return truncation_path(y, preset, j, ctx, branch, bool(field_is_inert(preset, p))).ph


# ---------------------------------------------------------------------------


@dataclass
class BranchReport:
    branch: int
    A: list
    ph: list
    no: Optional[Poly]
    sp: Optional[Poly]
    ss: Optional[Poly]
    palindromes: list
    p_integral: list
    truncation: list = field(default_factory=list)
    combined: Optional[Poly] = None


@dataclass
class LocusReport:
    preset: str
    p: int
    splitting: str
    degrees: list
    branches: list
    w2: Optional[int] = None
    notes: list = field(default_factory=list)

    # -- canonical JSON
    def to_json(self) -> dict:
        def enc(f):
            return None if f is None else f.to_json()

        return {
            "preset": self.preset,
            "p": self.p,
            "splitting": self.splitting,
            "degrees": list(self.degrees),
            "w2": self.w2,
            "notes": list(self.notes),
            "branches": [
                {
                    "branch": b.branch,
                    "A": [enc(a) for a in b.A],
                    "ph": [enc(f) for f in b.ph],
                    "no": enc(b.no),
                    "sp": enc(b.sp),
                    "ss": enc(b.ss),
                    "palindromes": list(b.palindromes),
                    "p_integral": list(b.p_integral),
                    "truncation": [enc(f) for f in b.truncation],
                    "combined": enc(b.combined),
                }
                for b in self.branches
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json(), sort_keys=True, indent=2)

    @classmethod
    def from_json(cls, obj: dict) -> "LocusReport":
        p, w2 = int(obj["p"]), obj.get("w2")

        def dec_ff(f):
            if f is None:
                return None
            return Poly([decode_elem(c, p=p, w2=w2) for c in f["coeffs"]], _ff_zero(p, w2), f.get("var", "J"))

        def dec_k(f):
            cs = [decode_elem(c) for c in f["coeffs"]]
            D = next((c.D for c in cs if isinstance(c, QuadElem)), 0)
            zero = QuadElem(0, 0, D) if D else Fraction(0)
            return Poly(cs, zero, f.get("var", "J"))

        branches = []
        for b in obj["branches"]:
            branches.append(BranchReport(
                branch=int(b["branch"]),
                A=[None if a is None else dec_k(a) for a in b["A"]],
                ph=[dec_ff(f) for f in b["ph"]],
                no=dec_ff(b.get("no")),
                sp=dec_ff(b["sp"]),
                ss=dec_ff(b.get("ss")),
                palindromes=list(b["palindromes"]),
                p_integral=list(b.get("p_integral", [])),
                truncation=[dec_ff(f) for f in b.get("truncation", [])],
                combined=dec_ff(b.get("combined")),
            ))
        return cls(obj["preset"], p, obj["splitting"], list(obj["degrees"]), branches, w2,
                   list(obj.get("notes", [])))

    @classmethod
    def loads(cls, text: str) -> "LocusReport":
        return cls.from_json(json.loads(text))


def _ff_zero(p, w2):
    return FFElem(0, 0, p, w2)


def locus_report(preset: CurvePreset, p: int, degrees: list[int] | None = None,
                 with_truncation: bool = True, with_combined: bool = True,
                 allow_partial: bool = False) -> LocusReport:
    """Full report for ``p``; split primes always carry both residue branches.

    With ``allow_partial`` an index whose moment source is too short is
    reported as missing (and ``no``/``sp``/``ss`` are left empty) instead of
    refusing the whole report.
    """
    check_prime(preset, p)
    ctx = coeff_context(preset, p)
    inert = field_is_inert(preset, p)
    if degrees is None:
        degrees = [degree_of_ph(preset, p, j) for j in range(1, preset.g + 1)]
    streams = [moment_stream(preset, j) for j in range(1, preset.g + 1)]
    fsplit = splitting_type(preset.field_D, p) if preset.field_D else None
    notes: list[str] = []
    branches = []
    for br in ctx.branches:
        As, phs = [], []
        for j in range(1, preset.g + 1):
            try:
                A, ph = partial_hasse(preset, p, j, ctx, br, degrees[j - 1], streams[j - 1])
            except PrecisionError as exc:
                if not allow_partial:
                    raise
                A = ph = None
                notes.append(f"branch {br}, j={j}: {exc}")
            As.append(A)
            phs.append(ph)
        complete = all(f is not None for f in phs)
        no = sp = ss = None
        if complete:
            no, sp, ss = assemble_loci(phs, inert)
        trunc = []
        if with_truncation:
            for j in range(1, preset.g + 1):
                try:
                    trunc.append(truncation_ph(preset, p, j, ctx, br))
                except Refusal as exc:
                    notes.append(f"branch {br}, j={j}: truncation path: {exc}")
                    trunc.append(None)
        comb = None
        if with_combined and complete:
            try:
                comb = combined_atkin(preset, p, ctx, no.degree, br, streams)
            except Refusal as exc:
                notes.append(f"branch {br}: combined stream: {exc}")
        branches.append(BranchReport(
            branch=br, A=As, ph=phs, no=no, sp=sp, ss=ss,
            palindromes=[None if f is None else palindrome_check(f) for f in phs],
            p_integral=[f is not None for f in phs], truncation=trunc, combined=comb))
    return LocusReport(preset.name, p, str(fsplit) if fsplit else "none", list(degrees),
                       branches, ctx.w2, notes)
