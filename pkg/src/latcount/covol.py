"""Covolume of SL_l(O_k) for k = Q or a quadratic field, with the discriminant sandwich."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from .errors import DomainError, FeasibilityError, InputError, UnsupportedFieldError
from .quadfields import QuadraticField, RationalField
from .zeta import dedekind_zeta, riemann_zeta

_EPS = 2.0**-52


@dataclass(frozen=True)
class CovolumeResult:
    l: int
    D: int
    degree: int
    value: float
    error_bound: float
    delta_exponent: Fraction

    def to_json(self, lower: float | None = None, upper: float | None = None) -> dict:
        out = {
            "l": self.l,
            "delta": str(self.delta_exponent),
            "D": self.D,
            "value": repr(self.value),
            "error": repr(self.error_bound),
        }
        if lower is not None:
            out["lower"] = repr(lower)
            out["upper"] = repr(upper)
        return out


def delta_exponent(l: int) -> Fraction:
    return Fraction((l + 1) * (l - 1), 2)


def _field_data(k) -> tuple[int, int]:
    if isinstance(k, RationalField):
        return 1, 1
    if isinstance(k, QuadraticField):
        return k.abs_disc, 2
    raise UnsupportedFieldError(f"unsupported field {k!r}")


def archimedean_factor(l: int, degree: int) -> float:
    """(prod_{j=1}^{l-1} j! / (2 pi)^(j+1)) ** degree."""
    logc = sum(math.lgamma(j + 1) - (j + 1) * math.log(2 * math.pi) for j in range(1, l))
    return math.exp(degree * logc)


def _check_l(l: int) -> None:
    if not isinstance(l, int) or l < 2:
        raise InputError("l must be an integer >= 2")


def harder_covolume(l: int, k, tol: float = 1e-12) -> CovolumeResult:
    """D^delta * archimedean factor * prod_{j=2}^{l} zeta_k(j), with certified error <= tol."""
    _check_l(l)
    if not tol > 0:
        raise DomainError("tol must be positive")
    D, degree = _field_data(k)
    delta = delta_exponent(l)
    scale = float(D) ** float(delta) * archimedean_factor(l, degree)
    # each zeta_k(j) <= zeta(2)^degree, so a per-factor error of tol / (2 l scale zmax) suffices
    zmax = (math.pi**2 / 6) ** degree
    factor_tol = max(tol / (2 * l * scale * zmax ** (l - 1)), 1e-15)
    prod, rel = 1.0, 0.0
    for j in range(2, l + 1):
        z = dedekind_zeta(k, j, factor_tol)
        prod *= z.value
        rel += z.error / z.value
    value = scale * prod
    # first-order propagation, doubled for the cross terms, plus rounding in the scale
    error = value * (2 * rel + 8 * l * _EPS)
    if error > tol:
        raise FeasibilityError(f"cannot certify covolume to {tol:g} (best bound {error:.3g})")
    return CovolumeResult(l, D, degree, value, error, delta)


def covolume_bounds(l: int, D: int, degree: int) -> tuple[float, float]:
    """(a D^delta, b D^delta): zeta_k(j) replaced by 1 and by zeta(j)^degree."""
    _check_l(l)
    if degree not in (1, 2):
        raise UnsupportedFieldError("degree must be 1 or 2")
    if D < 1:
        raise InputError("D must be a positive integer")
    a = archimedean_factor(l, degree) * float(D) ** float(delta_exponent(l))
    b = a
    for j in range(2, l + 1):
        z = riemann_zeta(j, 1e-15)
        b *= (z.value + z.error) ** degree
    # widen by a few ulps so that exact equality cases survive rounding
    return a * (1 - 16 * _EPS), b * (1 + 16 * _EPS)
