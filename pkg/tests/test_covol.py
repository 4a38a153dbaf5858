import math
from fractions import Fraction

import mpmath
import pytest

from latcount.covol import covolume_bounds, delta_exponent, harder_covolume
from latcount.errors import DomainError, InputError, UnsupportedFieldError
from latcount.quadfields import QQ, QuadraticField, fundamental_discriminants


def mp_covolume(l, delta=None):
    """Direct high-precision evaluation with mpmath (zeta_k = zeta * L)."""
    with mpmath.workdps(30):
        if delta is None:
            D, deg, zk = 1, 1, mpmath.zeta
        else:
            D, deg = abs(delta), 2
            from latcount.quadfields import kronecker_symbol

            chi = [kronecker_symbol(delta, a) if a else 0 for a in range(D)]
            zk = lambda s: mpmath.zeta(s) * mpmath.dirichlet(s, chi)
        arch = mpmath.fprod(mpmath.factorial(j) / (2 * mpmath.pi) ** (j + 1) for j in range(1, l)) ** deg
        return float(mpmath.mpf(D) ** (mpmath.mpf((l + 1) * (l - 1)) / 2) * arch * mpmath.fprod(zk(j) for j in range(2, l + 1)))


def test_sl2_z():
    r = harder_covolume(2, QQ, 1e-12)
    assert abs(r.value - 1 / 24) <= 1e-12
    assert r.error_bound <= 1e-12
    assert r.delta_exponent == Fraction(3, 2)


def test_sl3_z():
    r = harder_covolume(3, QQ, 1e-12)
    ref = float(mpmath.zeta(3) / (96 * mpmath.pi**3))
    assert abs(r.value - ref) <= 1e-10
    assert r.value == pytest.approx(4.0384e-4, rel=1e-4)


def test_gaussian_integers():
    r = harder_covolume(2, QuadraticField(-4), 1e-12)
    assert r.value == pytest.approx(7.734e-3, rel=1e-3)
    assert abs(r.value - mp_covolume(2, -4)) <= r.error_bound + 1e-17


@pytest.mark.parametrize("l,delta", [(2, -23), (3, -7), (3, 5), (4, -3), (5, -20), (2, 13)])
def test_against_mpmath(l, delta):
    ref = mp_covolume(l, delta)
    r = harder_covolume(l, QuadraticField(delta), 1e-9 * ref)
    assert abs(r.value - ref) <= r.error_bound + 1e-15 * ref


def test_delta_exponent():
    assert delta_exponent(2) == Fraction(3, 2)
    assert delta_exponent(5) == 12


def test_bounds_instantiation():
    lo, hi = covolume_bounds(2, 1, 1)
    assert lo == pytest.approx(1 / (4 * math.pi**2))
    assert hi == pytest.approx(1 / 24)
    assert lo <= harder_covolume(2, QQ).value <= hi


def test_sandwich_and_growth():
    prev = None
    for delta in sorted(fundamental_discriminants(-400, -3), reverse=True):
        K = QuadraticField(delta)
        for l in (2, 3, 5):
            lo, hi = covolume_bounds(l, K.abs_disc, 2)
            x = harder_covolume(l, K, 1e-9 * lo).value
            assert lo <= x <= hi
        # x / D^delta is trapped between the D-independent constants a and b
        x2 = harder_covolume(2, K, 1e-12 * covolume_bounds(2, K.abs_disc, 2)[1]).value
        if prev is not None:
            pd, px = prev
            lo_ratio = covolume_bounds(2, 1, 2)[0] / covolume_bounds(2, 1, 2)[1]
            assert x2 / px >= lo_ratio * (K.abs_disc / pd) ** 1.5
        prev = (K.abs_disc, x2)


def test_errors():
    with pytest.raises(InputError):
        harder_covolume(1, QQ)
    with pytest.raises(DomainError):
        harder_covolume(2, QQ, 0)
    with pytest.raises(UnsupportedFieldError):
        harder_covolume(2, "Q(sqrt 2)")
    with pytest.raises(UnsupportedFieldError):
        covolume_bounds(2, 5, 3)
