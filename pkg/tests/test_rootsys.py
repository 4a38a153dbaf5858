from fractions import Fraction

import mpmath
import pytest
from hypothesis import given, strategies as st

from latcount.errors import DescriptorError
from latcount.rootsys import (
    LieType,
    check_outer_inequality,
    gamma_bounds,
    growth_exponent,
    is_two_generic,
    outer_form_row,
    positive_root_count,
    ratio_R,
    table1_schemas,
    twisted_types_upto,
    untwisted_types_upto,
)
from oracles import positive_roots


def mp_gamma(R):
    with mpmath.workdps(50):
        R = mpmath.mpf(R.numerator) / R.denominator
        return (mpmath.sqrt(R * (R + 1)) - R) ** 2 / (4 * R * R)


@pytest.mark.parametrize(
    "text,expected",
    [("A2", 3), ("G2", 6), ("E8", 120), ("F4", 24), ("E6", 36), ("E7", 63), ("B3", 9), ("C5", 25), ("D4", 12)],
)
def test_positive_root_count_examples(text, expected):
    assert positive_root_count(LieType.parse(text)) == expected


def test_root_counts_match_cartan_enumeration():
    for t in untwisted_types_upto(8):
        assert positive_root_count(t) == len(positive_roots(t.family, t.rank)), t


def test_gamma_examples():
    assert growth_exponent(LieType("A", 1)).gamma == pytest.approx(0.0428932, abs=1e-7)
    assert growth_exponent(LieType("A", 2)).gamma == pytest.approx(0.0211694, abs=1e-7)
    g5 = growth_exponent(LieType("A", 5))
    assert g5.gamma == pytest.approx(0.0059831, abs=1e-7)
    assert growth_exponent(LieType("A", 2)).gamma > g5.gamma
    assert g5.to_json() == {
        "type": "A5",
        "phi_plus": 15,
        "rank": 5,
        "R": "3/1",
        "gamma": g5.gamma_str,
    }
    assert g5.gamma_str.startswith("0.0059830641")


def test_gamma_a1_closed_form():
    lo, hi = gamma_bounds(Fraction(1), 30)
    with mpmath.workdps(50):
        exact = (3 - 2 * mpmath.sqrt(2)) / 4
        assert mpmath.mpf(lo.numerator) / lo.denominator <= exact <= mpmath.mpf(hi.numerator) / hi.denominator


def test_gamma_against_mpmath_all_types():
    for t in untwisted_types_upto(25):
        inv = growth_exponent(t)
        ref = mp_gamma(inv.ratio_R)
        with mpmath.workdps(50):
            # 20 significant digits printed, so 12 digits is comfortably met
            assert abs(mpmath.mpf(inv.gamma_str) - ref) <= mpmath.mpf("1e-19") * ref
        assert inv.phi_plus == inv.ratio_R * inv.rank


def test_gamma_monotone_and_max_at_a1():
    invs = sorted((growth_exponent(t) for t in untwisted_types_upto(12)), key=lambda r: r.ratio_R)
    top = growth_exponent(LieType("A", 1)).gamma
    for a, b in zip(invs, invs[1:]):
        if a.ratio_R < b.ratio_R:
            assert a.gamma > b.gamma
        assert a.gamma <= top


@given(st.fractions(min_value=Fraction(1, 50), max_value=50), st.integers(10, 40))
def test_gamma_bounds_enclose(R, digits):
    lo, hi = gamma_bounds(R, digits)
    assert lo <= hi
    assert hi - lo < Fraction(1, 10 ** (digits - 3))
    ref = mp_gamma(R)
    with mpmath.workdps(60):
        assert mpmath.mpf(lo.numerator) / lo.denominator <= ref + mpmath.mpf(10) ** -45
        assert ref - mpmath.mpf(10) ** -45 <= mpmath.mpf(hi.numerator) / hi.denominator


@pytest.mark.parametrize("text", ["A0", "B1", "C1", "D2", "E5", "E9", "F3", "G3", "H3", "2A1", "2D3", "3D5", "2E7"])
def test_invalid_descriptors(text):
    with pytest.raises(DescriptorError):
        LieType.parse(text)


def test_parse_forms():
    assert LieType.parse("²E₆") == LieType("E", 6, "2E6")
    assert LieType.parse("3D4") == LieType("D", 4, "3D4")
    assert LieType.parse("2A3") == LieType("A", 3, "2A")
    assert LieType.parse("a_5") == LieType("A", 5)
    assert str(LieType("D", 7, "2D")) == "2D7"


def test_two_generic():
    assert is_two_generic(LieType("A", 3))
    assert not is_two_generic(LieType("A", 2))
    assert not is_two_generic(LieType("D", 4))
    assert is_two_generic(LieType("C", 4))
    assert not is_two_generic(LieType("E", 6))
    for n in range(1, 1025):
        assert is_two_generic(LieType("A", n)) == ((n + 1) & n == 0)


def test_outer_rows():
    r = outer_form_row(LieType("E", 6, "2E6"))
    assert (r.s, r.ratio_R, str(r.residue_type)) == (26, 6, "F4")
    r = outer_form_row(LieType("A", 3, "2A"))
    assert (r.s, r.ratio_R, str(r.residue_type)) == (5, 2, "C2")
    r = outer_form_row(LieType("D", 5, "2D"))
    assert (r.s, r.ratio_R, str(r.residue_type)) == (9, 4, "B4")
    with pytest.raises(DescriptorError):
        outer_form_row(LieType("A", 3))


@pytest.mark.parametrize(
    "t,witness",
    [(LieType("E", 6, "2E6"), Fraction(37, 4)), (LieType("D", 4, "3D4"), Fraction(19, 4)),
     (LieType("A", 2, "2A"), Fraction(7, 2))],
)
def test_outer_witnesses(t, witness):
    assert check_outer_inequality(outer_form_row(t)) == (True, witness)


def test_outer_ratio_matches_untwisted():
    # the twisted type has the root data of its untwisted form
    for t in twisted_types_upto(25):
        assert outer_form_row(t).ratio_R == ratio_R(t.untwisted)
        assert check_outer_inequality(outer_form_row(t))[0]


def test_table1_schemas_cover_five_rows():
    rows = {outer_form_row(t).schema for t in table1_schemas()}
    assert len(rows) == 5
