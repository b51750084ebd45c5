from fractions import Fraction as F

import pytest

from atkinloci.errors import DataError
from atkinloci.exact_arith import QuadElem
from atkinloci.presets import (
    degree_delta25,
    get_preset,
    load_moments,
    parse_coeff_text,
    preset_names,
)


def q(a, b):
    return QuadElem(F(a), F(b), 17)


def test_coefficient_notations():
    assert parse_coeff_text("-549/600") == F(-549, 600)
    assert parse_coeff_text("[-16,5]/(2^2)", 17) == (F(-16) + 5 * QuadElem(F(1, 2), F(1, 2), 17)) / 4
    assert parse_coeff_text("-(27-5*sqrt17)/8", 17) == -q(F(27, 8), F(-5, 8))
    assert parse_coeff_text("1+2*sqrt17", 17) == q(1, 2)
    assert parse_coeff_text("-3*sqrt17", 17) == q(0, -3)
    assert parse_coeff_text("[-5484,2013]/(2^4*19)", 17).a.denominator in (304, 608)
    with pytest.raises(DataError):
        parse_coeff_text("(1+2)/x", 17)


def test_registry():
    assert {"delta-2-3", "delta-2-5", "w17"} <= set(preset_names())
    d25 = get_preset("delta-2-5")
    assert d25.lyap == (F(1, 10), F(1, 30)) and d25.chi == F(-3, 10) and d25.N == 10
    w = get_preset("w17")
    assert (w.chi, w.lyap, w.N) == (F(-3), (F(1), F(1, 3)), 1)
    with pytest.raises(DataError):
        get_preset("nope")


def test_delta25_degree_formula_is_integral():
    for p in (3, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47):
        assert all(degree_delta25(p, j) >= 0 for j in (1, 2))


def test_moment_file_errors(tmp_path):
    bad = tmp_path / "m.json"
    bad.write_text('{"D": 17}')
    with pytest.raises(DataError):
        load_moments(bad)
    bad.write_text('{"D": 17, "g": []}')
    with pytest.raises(DataError):
        load_moments(bad)
