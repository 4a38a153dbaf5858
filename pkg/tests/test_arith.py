import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, strategies as st

from latcount.arith import divisors, factorize, frac_str, is_prime, is_squarefree, log2, omega, prime_power, primes_upto
from latcount.errors import InputError


@given(st.integers(1, 10**7))
def test_factorize_against_sympy(n):
    assert dict(factorize(n)) == sympy.factorint(n)
    assert math.prod(p**e for p, e in factorize(n)) == n


@given(st.integers(-(10**6), 10**6).filter(lambda n: n not in (0,)))
def test_omega_and_squarefree(n):
    f = sympy.factorint(abs(n))
    assert omega(n) == len(f)
    assert is_squarefree(n) == all(e == 1 for e in f.values())


def test_small_helpers():
    assert primes_upto(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]
    assert divisors(12) == [1, 2, 3, 4, 6, 12]
    assert [n for n in range(50) if is_prime(n)] == list(sympy.primerange(0, 50))
    assert prime_power(49) == (7, 2)
    with pytest.raises(InputError):
        prime_power(12)
    assert log2(Fraction(1, 8)) == -3
    assert log2(2**2000) == 2000
    assert frac_str(Fraction(3)) == "3/1"
