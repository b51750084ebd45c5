"""Built-in curve presets, degree formulas and data-file loading."""

from __future__ import annotations

import json
import re
from fractions import Fraction
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Callable

from .errors import BadPrimeError, DataError, GuardError, RamifiedPrimeError
from .exact_arith import QuadElem, as_rational, decode_elem, from_alpha, is_prime, splitting_type
from .hypergeom import TriangleDatum, hypergeometric_ode, triangle_lyapunov, triangle_moments
from .pade_ortho import MomentStream
from .picard_fuchs import CurvePreset, ODESpec, ode_moments
from .poly_series import Poly

DATA = resources.files("atkinloci") / "data"


# ---------------------------------------------------------------------------
# degree formulas n_{p,j}


def _half(x: Fraction) -> int:
    if x.denominator != 1:
        raise GuardError(f"degree formula produced a non-integer {x}")
    return int(x)


def degree_sl2(p: int, j: int) -> int:
    return p // 12 + {1: 0, 5: 1, 7: 1, 11: 2}[p % 12]


def degree_delta25(p: int, j: int) -> int:
    F = Fraction
    if p % 5 in (2, 3):
        eps = 1 if p % 4 == 1 else 0
        d1, d2 = (1, 5) if p % 5 == 2 else (5, 2)
        vals = (F(p - 3, 20) + F(eps, 2) + F(5 - d1, 5),
                F(3 * p - 1, 20) + F(eps, 2) + F(5 - d2, 5))
    else:
        eps = 0 if p % 4 == 1 else 1
        d1, d2 = (5, 5) if p % 5 == 1 else (1, 2)
        # the sign in front of (5 - delta_2)/5 is '+', as for every other term
        vals = (F(3 * (p - 1), 20) + F(eps, 2) + F(5 - d1, 5),
                F(p - 1, 20) + F(eps, 2) + F(5 - d2, 5))
    return _half(vals[j - 1])


def degree_w17(p: int, j: int) -> int:
    inert = splitting_type(17, p).kind == "inert"
    if j == 1:
        return _half(Fraction(p - 3, 2) if inert else Fraction(3 * (p - 1), 2))
    return _half(Fraction(3 * p - 1, 2) if inert else Fraction(p - 1, 2))


DEGREE_RULES: dict[str, Callable[[int, int], int]] = {
    "sl2": degree_sl2,
    "delta-2-5": degree_delta25,
    "w17": degree_w17,
}


# ---------------------------------------------------------------------------
# coefficient text as printed in tables: "a/b", "[u,v]/(2^4*19)", "2+4*sqrt17"

_ALPHA = re.compile(r"^(-?)\[\s*(-?\d+)\s*,\s*(-?\d+)\s*\](?:/\(?([\d^*\s]+)\)?)?$")
_TERM = re.compile(r"[+-]?[^+-]+")


def _parse_surd(s: str, text: str) -> QuadElem:
    # "[-](A+B*sqrtD)[/den]" or "A+B*sqrtD"
    neg = s.startswith("-(")
    body, den = s[1:] if neg else s, "1"
    if body.startswith("("):
        body, _, den = body[1:].partition(")")
        den = den.lstrip("/") or "1"
    a, b, D = 0, 0, None
    for term in _TERM.findall(body):
        if "sqrt" in term:
            k, _, d = term.partition("sqrt")
            k = k.rstrip("*")
            b += int(k + "1") if k in ("", "+", "-") else int(k)
            D = int(d)
        else:
            a += int(term)
    if D is None or not den.isdigit():
        raise DataError(f"bad coefficient {text!r}")
    x = QuadElem(a, b, D) / int(den)
    return -x if neg else x


def _int_expr(text: str) -> int:
    out = 1
    for factor in text.replace(" ", "").split("*"):
        base, _, exp = factor.partition("^")
        out *= int(base) ** (int(exp) if exp else 1)
    return out


def parse_coeff_text(text: str, D: int = 0):
    """Parse the coefficient notations used in the golden fixture tables."""
    s = text.replace(" ", "")
    m = _ALPHA.match(s)
    if m:
        sign, u, v, den = m.groups()
        x = from_alpha(int(u), int(v), D)
        if den:
            x = x / _int_expr(den)
        return -x if sign else x
    if "sqrt" in s:
        return _parse_surd(s, text)
    r = as_rational(s)
    return QuadElem(r, 0, D) if D else r


def poly_from_desc(coeffs, D: int = 0, var: str = "J") -> Poly:
    vals = [parse_coeff_text(c, D) for c in reversed(coeffs)]
    zero = QuadElem(0, 0, D) if D else Fraction(0)
    return Poly(vals, zero, var)


# ---------------------------------------------------------------------------
# registry


def _read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text() if not hasattr(path, "read_text") else path.read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise DataError(f"cannot read {path}: {exc}") from exc


@lru_cache(maxsize=None)
def registry() -> dict:
    return _read_json(DATA / "presets.json")


def preset_names() -> list[str]:
    return sorted(registry())


def _build(name: str, entry: dict) -> CurvePreset:
    rule = entry.get("degree_rule")
    return CurvePreset(
        name=name,
        field_D=int(entry.get("field_D", 0)),
        coeff_D=int(entry.get("coeff_D", 0)),
        S=tuple(int(s) for s in entry.get("S", ())),
        chi=as_rational(str(entry["chi"])),
        lyap=tuple(as_rational(str(x)) for x in entry["lyap"]),
        N=int(entry["N"]),
        jprime_rule=entry.get("jprime_rule", "identity"),
        degree_formula=DEGREE_RULES.get(rule) if rule else None,
        sources=tuple(entry.get("sources", ())),
        description=entry.get("description", ""),
    )


_CUSTOM = re.compile(r"^delta-(\d+)-(\d+):(\d+)$")


def get_preset(name: str, k: int | None = None, r: int | None = None) -> CurvePreset:
    """Look up a shipped preset, or build ``delta-n-m:j`` for one triangle embedding."""
    reg = registry()
    if name in reg:
        return _build(name, reg[name])
    m = _CUSTOM.match(name)
    if m:
        n, mm, j = (int(x) for x in m.groups())
        k = 1 if k is None else k
        r = j if r is None else r
        d = TriangleDatum(n, mm, j, k, r)
        return CurvePreset(
            name=name, field_D=0, coeff_D=0, S=tuple(sorted({2} | _prime_divisors(n * mm))),
            chi=d.euler_char, lyap=(triangle_lyapunov(d),), N=d.elliptic_lcm,
            sources=({"kind": "triangle", "n": n, "m": mm, "k": k, "r": r},),
            description=f"single embedding j={j} of Delta({n},{mm},oo)")
    raise DataError(f"unknown preset {name!r}; known: {', '.join(preset_names())}")


def _prime_divisors(n: int) -> set:
    return {q for q in range(2, n + 1) if n % q == 0 and is_prime(q)}


def triangle_datum(preset: CurvePreset, j: int) -> TriangleDatum | None:
    src = preset.sources[j - 1]
    if src.get("kind") != "triangle":
        return None
    return TriangleDatum(int(src["n"]), int(src["m"]), j, int(src["k"]), int(src["r"]))


def load_moments(path, D: int | None = None) -> MomentStream:
    """Read ``{"D": ..., "g": [...]}``."""
    obj = _read_json(path)
    try:
        d = int(obj.get("D", 0)) if D is None else D
        vals = [decode_elem(x, d) for x in obj["g"]]
    except (KeyError, TypeError) as exc:
        raise DataError(f"malformed moment file {path}: {exc}") from exc
    if not vals:
        raise DataError(f"moment file {path} is empty")
    return MomentStream.of(vals, f"file {Path(str(path)).name}")


def _data_path(name: str):
    p = Path(name)
    return p if p.is_absolute() else DATA / name


def ode_for(preset: CurvePreset, j: int) -> ODESpec | None:
    """The Picard-Fuchs operator for index ``j`` when one is available."""
    td = triangle_datum(preset, j)
    if td is not None:
        p2, p1, p0 = hypergeometric_ode(td.params)
        return ODESpec(p2, p1, p0, 0, preset.S)
    src = preset.sources[j - 1]
    ode_file = src.get("ode")
    if not ode_file:
        return None
    path = _data_path(ode_file)
    if not path.is_file():
        return None
    return ODESpec.load(path)


def moment_stream(preset: CurvePreset, j: int, prefer_ode: bool = True) -> MomentStream:
    if not 1 <= j <= preset.g:
        raise DataError(f"preset {preset.name} has indices 1..{preset.g}, got j={j}")
    td = triangle_datum(preset, j)
    if td is not None:
        return triangle_moments(td)
    if prefer_ode:
        ode = ode_for(preset, j)
        if ode is not None:
            return ode_moments(ode, preset, j)
    src = preset.sources[j - 1]
    if "file" not in src:
        raise DataError(f"no moment source for {preset.name} j={j}")
    return load_moments(_data_path(src["file"]), preset.coeff_D)


def check_prime(preset: CurvePreset, p: int) -> None:
    """Refuse primes that are not odd primes of good reduction for the preset."""
    if p == 2 or not is_prime(p):
        raise BadPrimeError(f"p = {p} must be an odd prime")
    for D in sorted({preset.field_D, preset.coeff_D} - {0}):
        if D % p == 0:
            raise RamifiedPrimeError(f"p = {p} is ramified in Q(sqrt {D})")
    if p in preset.S:
        raise BadPrimeError(f"p = {p} lies in the bad set S = {sorted(preset.S)} of {preset.name}")


def fixtures() -> dict:
    return _read_json(DATA / "fixtures.json")
