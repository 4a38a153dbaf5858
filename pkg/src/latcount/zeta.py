"""Certified evaluation of zeta(s) and Dedekind zeta of quadratic fields.

Both Riemann and Hurwitz zeta are summed directly up to a cutoff and the
tail is replaced by its Euler-Maclaurin expansion (three Bernoulli terms).
For x**-s every even derivative is positive, so the remainder is bounded by
the first omitted term; we use twice that term as the truncation bound.
Floating-point rounding is bounded separately and added to the error.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import DomainError

_EPS = np.finfo(float).eps
# B_2, B_4, B_6 / (2k)!  and the first omitted one, |B_8| / 8!
_BERN = (1.0 / 12.0, -1.0 / 720.0, 1.0 / 30240.0)
_BERN_NEXT = 1.0 / 1209600.0


@dataclass(frozen=True)
class ZetaValue:
    value: float
    error: float

    def __iter__(self):
        yield self.value
        yield self.error


def _rising(s: int, m: int) -> float:
    out = 1.0
    for i in range(m):
        out *= s + i
    return out


def _tail(s: int, x0):
    """Euler-Maclaurin value of sum_{n>=0} (x0+n)^-s and its truncation bound.

    ``x0`` may be a numpy array; both outputs then broadcast.
    """
    val = x0 ** (1 - s) / (s - 1) + 0.5 * x0 ** (-s)
    for k, b in enumerate(_BERN, start=1):
        val = val + b * _rising(s, 2 * k - 1) * x0 ** (-s - 2 * k + 1)
    bound = 2.0 * _BERN_NEXT * _rising(s, 7) * x0 ** (-s - 7)
    return val, bound


def _cutoff(s: int, tol: float, shift: float = 0.0) -> int:
    n = 4
    while 2.0 * _BERN_NEXT * _rising(s, 7) * (n + shift) ** (-s - 7) > tol:
        n *= 2
    return n


def _check_s(s: int) -> None:
    if not isinstance(s, (int, np.integer)) or s < 2:
        raise DomainError(f"zeta needs an integer s >= 2, got {s!r}")


def riemann_zeta(s: int, tol: float = 1e-14, terms: int | None = None) -> ZetaValue:
    """zeta(s) for integer s >= 2 with a certified absolute error bound."""
    _check_s(s)
    if tol <= 0:
        raise DomainError("tol must be positive")
    n = terms if terms is not None else _cutoff(s, tol / 2)
    head = np.arange(1, n, dtype=float) ** (-float(s))
    tail, bound = _tail(s, float(n))
    value = math.fsum(head) + tail
    rounding = 4 * n * _EPS * (math.fsum(head) + abs(tail))
    return ZetaValue(value, float(bound + rounding))


def character_values(delta: int) -> np.ndarray:
    """chi_delta(a) for a = 1..|delta| as a float array."""
    from .quadfields import kronecker_symbol

    D = abs(delta)
    return np.array([kronecker_symbol(delta, a) for a in range(1, D + 1)], dtype=float)


def dirichlet_L(delta: int, s: int, tol: float = 1e-14, terms: int | None = None) -> ZetaValue:
    """L(s, chi_delta) via the Hurwitz decomposition over residues mod |delta|.

    L(s, chi) = D^-s * sum_{a=1}^{D} chi(a) * zeta(s, a/D).
    """
    _check_s(s)
    if tol <= 0:
        raise DomainError("tol must be positive")
    D = abs(delta)
    chi = character_values(delta)
    live = np.nonzero(chi)[0]
    shifts = (live + 1) / D
    # sum of D truncation errors, scaled by D^-s, must stay below tol/2
    n = terms if terms is not None else _cutoff(s, tol / 2 * D ** s / max(len(live), 1))
    k = np.arange(n, dtype=float)[:, None]
    head = ((k + shifts[None, :]) ** (-float(s))).sum(axis=0)
    tail, bound = _tail(s, n + shifts)
    hurwitz = head + tail
    signed = chi[live] * hurwitz
    value = math.fsum(signed) / D ** s
    trunc = float(bound.sum()) / D ** s
    rounding = 4 * (n + len(live)) * _EPS * float(np.abs(hurwitz).sum()) / D ** s
    return ZetaValue(value, float(trunc + rounding))


def dedekind_zeta(field, s: int, tol: float = 1e-12, terms: int | None = None) -> ZetaValue:
    """Dedekind zeta of Q or of a quadratic field at an integer s >= 2.

    For a quadratic field this is zeta(s) * L(s, chi_delta). ``terms``
    overrides the automatically chosen cutoff (used for cross-checks).
    """
    from .quadfields import QuadraticField

    _check_s(s)
    if tol <= 0:
        raise DomainError("tol must be positive")
    z = riemann_zeta(s, tol / 4, terms)
    if not isinstance(field, QuadraticField):
        return z
    L = dirichlet_L(field.delta, s, tol / 4, terms)
    value = z.value * L.value
    error = abs(z.value) * L.error + abs(L.value) * z.error + z.error * L.error
    error += 2 * _EPS * abs(value)
    return ZetaValue(value, float(error))
