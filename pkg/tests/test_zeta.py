import math

import mpmath
import pytest
from hypothesis import given, settings, strategies as st

from latcount.errors import DomainError
from latcount.quadfields import QQ, QuadraticField, fundamental_discriminants, kronecker_symbol
from latcount.zeta import dedekind_zeta, dirichlet_L, riemann_zeta


def test_riemann_zeta_two():
    z = riemann_zeta(2, 1e-13)
    assert abs(z.value - math.pi**2 / 6) <= z.error <= 1e-13


@pytest.mark.parametrize("s", range(2, 12))
def test_riemann_against_mpmath(s):
    z = riemann_zeta(s, 1e-14)
    assert abs(z.value - float(mpmath.zeta(s))) <= z.error + 1e-16


def test_gaussian_field_catalan():
    z = dedekind_zeta(QuadraticField(-4), 2, 1e-12)
    ref = float(mpmath.zeta(2) * mpmath.catalan)
    assert abs(z.value - ref) <= z.error <= 1e-12
    assert z.value == pytest.approx(1.5067, abs=1e-4)


def test_rational_marker():
    z = dedekind_zeta(QQ, 3)
    assert abs(z.value - float(mpmath.zeta(3))) <= z.error


@settings(max_examples=40, deadline=None)
@given(st.sampled_from(fundamental_discriminants(-400, -3) + [5, 8, 12, 13, 17, 21, 24, 28]), st.integers(2, 5))
def test_L_against_mpmath_dirichlet(delta, s):
    D = abs(delta)
    chi = [kronecker_symbol(delta, a) if a else 0 for a in range(D)]
    ref = float(mpmath.dirichlet(s, chi))
    L = dirichlet_L(delta, s, 1e-12)
    assert abs(L.value - ref) <= L.error + 1e-15


def test_quadratic_zeta_sandwich_and_longer_truncation():
    z2 = float(mpmath.zeta(2))
    for delta in fundamental_discriminants(-300, -3)[::5] + [5, 13, 28]:
        z = dedekind_zeta(QuadraticField(delta), 2, 1e-10)
        assert 1 <= z.value <= z2 * z2
        # a fixed cutoff ten times longer than the automatic one must agree within the bound
        long = dedekind_zeta(QuadraticField(delta), 2, 1e-10, terms=10 * 2000)
        assert abs(z.value - long.value) <= z.error + long.error


def test_bad_arguments():
    with pytest.raises(DomainError):
        riemann_zeta(1)
    with pytest.raises(DomainError):
        dedekind_zeta(QQ, 2, tol=0)
