import itertools
import math

import pytest
from hypothesis import given, settings, strategies as st

from latcount.arith import omega
from latcount.errors import DomainError, InputError, UnsupportedFieldError
from latcount.quadfields import (
    AbelianGroupShape,
    Form,
    QuadraticField,
    compose,
    conjecture_ratio,
    form_class_group,
    form_power,
    forms_by_discriminant,
    fundamental_discriminant,
    fundamental_discriminants,
    gauss_two_rank,
    identity_form,
    inverse_form,
    is_fundamental,
    is_reduced,
    kronecker_symbol,
    l_rank,
    reduce_form,
    reduced_forms,
    two_rank_from_forms,
)
from oracles import brute_class_number, kronecker_brute


def test_fundamental_discriminant_examples():
    assert fundamental_discriminant(-5).delta == -20
    assert fundamental_discriminant(-1).delta == -4
    assert fundamental_discriminant(21).delta == 21
    for bad in (0, 1, 12, -4):
        with pytest.raises(InputError):
            fundamental_discriminant(bad)


def test_field_invariants():
    assert QuadraticField(-23).signature == (0, 1)
    assert QuadraticField(5).signature == (2, 0)
    assert QuadraticField(-20).abs_disc == 20
    with pytest.raises(InputError):
        QuadraticField(-12)


def test_is_fundamental_definition():
    for d in range(-2000, 2000):
        if d in (0, 1):
            continue
        sqf = lambda n: n != 0 and all(n % (p * p) for p in range(2, math.isqrt(abs(n)) + 1))
        expect = (d % 4 == 1 and sqf(d)) or (d % 4 == 0 and (d // 4) % 4 in (2, 3) and sqf(d // 4))
        assert is_fundamental(d) == expect, d


def test_kronecker_examples():
    assert kronecker_symbol(-4, 3) == -1
    assert kronecker_symbol(-4, 2) == 0
    assert kronecker_symbol(5, 4) == 1


@given(st.sampled_from(fundamental_discriminants(-500, -3) + [5, 8, 12, 13, 21, 24]), st.integers(1, 400))
def test_kronecker_against_euler(delta, n):
    assert kronecker_symbol(delta, n) == kronecker_brute(delta, n)


def test_class_group_examples():
    g = form_class_group(-4)
    assert g.h == 1 and list(g.forms) == [Form(1, 0, 1)]
    g = form_class_group(-20)
    assert g.h == 2 and set(g.forms) == {Form(1, 0, 5), Form(2, 2, 3)}
    assert g.shape.invariant_factors == (2,)
    g = form_class_group(-23)
    assert g.shape.invariant_factors == (3,)
    assert form_power(Form(2, 1, 3), 3) == identity_form(-23)
    assert form_class_group(-84).shape.invariant_factors == (2, 2)
    assert form_class_group(-56).shape.invariant_factors == (4,)
    assert form_class_group(-3299).shape.p_rank(3) == 2
    with pytest.raises(UnsupportedFieldError):
        form_class_group(5)


def test_class_numbers_against_brute_force():
    for d in fundamental_discriminants(-3000, -3):
        assert len(reduced_forms(d)) == brute_class_number(d), d


def test_sweep_matches_single():
    sweep = forms_by_discriminant(3, 800)
    assert set(sweep) == set(fundamental_discriminants(-800, -3))
    for d, fs in sweep.items():
        assert sorted(fs) == sorted(reduced_forms(d))


@pytest.mark.parametrize("delta", [d for d in fundamental_discriminants(-2000, -3) if len(reduced_forms(d)) <= 20][::7])
def test_composition_is_abelian_group(delta):
    forms = reduced_forms(delta)
    S = set(forms)
    e = identity_form(delta)
    for f in forms:
        assert is_reduced(f)
        assert compose(f, e) == f
        assert compose(f, inverse_form(f)) == e
    for f, g in itertools.product(forms, repeat=2):
        fg = compose(f, g)
        assert fg in S
        assert fg == compose(g, f)
    for f, g, h in itertools.product(forms, repeat=3):
        assert compose(compose(f, g), h) == compose(f, compose(g, h))


@settings(max_examples=60)
@given(st.integers(1, 40), st.integers(-60, 60), st.sampled_from([-23, -47, -71, -84, -260, -3299]))
def test_reduction_preserves_discriminant(a, b, delta):
    if (b * b - delta) % (4 * a):
        return
    c = (b * b - delta) // (4 * a)
    if math.gcd(math.gcd(a, b), c) != 1:
        return
    f = reduce_form(Form(a, b, c))
    assert is_reduced(f)
    assert f.b * f.b - 4 * f.a * f.c == delta
    assert f in set(reduced_forms(delta))


def test_gauss_two_rank_examples():
    assert gauss_two_rank(-20) == 1
    assert gauss_two_rank(120) == 1
    assert gauss_two_rank(-4) == 0
    assert gauss_two_rank(5) == 0


def test_two_rank_formula_small_range():
    sweep = forms_by_discriminant(3, 5000)
    for d, fs in sweep.items():
        assert gauss_two_rank(d) == two_rank_from_forms(fs) == omega(d) - 1


def test_l_rank_examples():
    assert l_rank(-23, 3) == 1
    assert l_rank(-4, 3) == 0
    assert l_rank(-84, 2) == 2 == gauss_two_rank(-84)
    with pytest.raises(UnsupportedFieldError):
        l_rank(229, 3)
    with pytest.raises(InputError):
        l_rank(-23, 4)


def test_conjecture_ratio():
    r = conjecture_ratio(-20, 2)
    assert r.rank == 1
    assert r.ratio_sqrt == pytest.approx(math.sqrt(math.log2(math.log2(20))) / math.log2(20))
    assert r.ratio_sqrt == pytest.approx(0.3362, abs=1e-4)
    assert conjecture_ratio(-84, 2).ratio_sqrt == pytest.approx(2 * math.sqrt(math.log2(math.log2(84))) / math.log2(84))
    with pytest.raises(DomainError):
        conjecture_ratio(-4, 3)


def test_abelian_shape_normalises():
    A = AbelianGroupShape.from_cyclic_factors([6, 4])
    assert A.invariant_factors == (2, 12)
    assert A.order == 24
    assert A.primary_parts() == {2: [2, 1], 3: [1]}
    with pytest.raises(InputError):
        AbelianGroupShape((4, 2))
