"""Root-system combinatorics for simple Lie types.

Only the numbers that drive the growth constants are encoded: the number
of positive roots, the rank, their ratio ``R`` and the growth exponent

    gamma(R) = (sqrt(R(R+1)) - R)^2 / (4 R^2).

Twisted (outer) forms carry the invariants ``s``, ``R`` and the type of the
residual group used in the bad-prime analysis.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from decimal import Decimal, localcontext
from fractions import Fraction
from typing import Optional

from .arith import frac_str
from .errors import DescriptorError

FAMILIES = "ABCDEFG"
TWISTS = ("2A", "2D", "3D4", "6D4", "2E6")

_SUPERSCRIPTS = str.maketrans("²³⁶₀₁₂₃₄₅₆₇₈₉", "236" + "0123456789")


def _check_rank(family: str, rank: int) -> None:
    ok = {
        "A": rank >= 1,
        "B": rank >= 2,
        "C": rank >= 2,
        "D": rank >= 3,
        "E": rank in (6, 7, 8),
        "F": rank == 4,
        "G": rank == 2,
    }
    if family not in ok:
        raise DescriptorError(f"unknown family {family!r}")
    if not ok[family]:
        raise DescriptorError(f"rank {rank} is not valid for family {family}")


def _check_twist(family: str, rank: int, twist: str) -> None:
    if twist == "2A":
        valid = family == "A" and rank >= 2
    elif twist == "2D":
        valid = family == "D" and rank >= 4
    elif twist in ("3D4", "6D4"):
        valid = family == "D" and rank == 4
    elif twist == "2E6":
        valid = family == "E" and rank == 6
    else:
        raise DescriptorError(f"unknown twist label {twist!r}")
    if not valid:
        raise DescriptorError(f"twist {twist} does not apply to {family}{rank}")


@dataclass(frozen=True)
class LieType:
    """A simple Lie type ``family`` + ``rank`` with an optional outer twist.

    ``twist`` is the outer-form label: ``"2A"``, ``"2D"``, ``"3D4"``,
    ``"6D4"`` or ``"2E6"``.
    """

    family: str
    rank: int
    twist: Optional[str] = None

    def __post_init__(self):
        _check_rank(self.family, self.rank)
        if self.twist is not None:
            _check_twist(self.family, self.rank, self.twist)

    @classmethod
    def parse(cls, text: str) -> "LieType":
        """Parse ``"A5"``, ``"E8"``, ``"2A3"``, ``"3D4"``, ``"²E₆"`` and the like."""
        s = text.strip().translate(_SUPERSCRIPTS).replace("_", "")
        m = re.fullmatch(r"([236]?)([A-Ga-g])(\d+)", s)
        if not m:
            raise DescriptorError(f"cannot parse Lie type {text!r}")
        prefix, fam, rank = m.group(1), m.group(2).upper(), int(m.group(3))
        twist = None
        if prefix:
            twist = prefix + fam
            if fam in "DE" and prefix in "36" or fam == "E":
                twist = f"{prefix}{fam}{rank}"
        return cls(fam, rank, twist)

    @classmethod
    def _residue(cls, family: str, rank: int) -> "LieType":
        # residue types of outer forms include B1/C1, below the usual rank floor
        obj = object.__new__(cls)
        object.__setattr__(obj, "family", family)
        object.__setattr__(obj, "rank", rank)
        object.__setattr__(obj, "twist", None)
        return obj

    @property
    def untwisted(self) -> "LieType":
        return LieType._residue(self.family, self.rank)

    def __str__(self) -> str:
        if self.twist is None:
            return f"{self.family}{self.rank}"
        prefix = self.twist[0]
        return f"{prefix}{self.family}{self.rank}"


def positive_root_count(t: LieType) -> int:
    """Number of positive roots of the (untwisted) root system."""
    if t.twist is not None:
        raise DescriptorError("positive_root_count expects an untwisted type")
    n = t.rank
    fam = t.family
    if fam == "A":
        return n * (n + 1) // 2
    if fam in "BC":
        return n * n
    if fam == "D":
        return n * (n - 1)
    return {("G", 2): 6, ("F", 4): 24, ("E", 6): 36, ("E", 7): 63, ("E", 8): 120}[(fam, n)]


def ratio_R(t: LieType) -> Fraction:
    return Fraction(positive_root_count(t.untwisted if t.twist else t), t.rank)


def gamma_bounds(R: Fraction, digits: int = 40) -> tuple[Fraction, Fraction]:
    """Rigorous enclosure [lo, hi] of gamma(R), width about 10**-digits.

    With R = p/q, gamma = (sqrt(p(p+q)) - p)^2 / (4 p^2); the square root is
    bracketed with an integer square root, and gamma is increasing in it.
    """
    R = Fraction(R)
    if R <= 0:
        raise DescriptorError("R must be positive")
    p, q = R.numerator, R.denominator
    S = p * (p + q)
    scale = 10**digits
    lo_root = math.isqrt(S * scale * scale)
    s_lo = Fraction(lo_root, scale)
    s_hi = s_lo if lo_root * lo_root == S * scale * scale else Fraction(lo_root + 1, scale)
    g = lambda s: (s - p) ** 2 / (4 * p * p)
    return g(s_lo), g(s_hi)


def gamma_decimal(R: Fraction, sig: int = 20) -> str:
    """Decimal string of gamma(R) with ``sig`` significant digits."""
    lo, hi = gamma_bounds(R, digits=sig + 25)
    mid = (lo + hi) / 2
    with localcontext() as ctx:
        ctx.prec = sig
        return str(+(Decimal(mid.numerator) / Decimal(mid.denominator)))


@dataclass(frozen=True)
class RootInvariants:
    type: LieType
    phi_plus: int
    rank: int
    ratio_R: Fraction
    gamma: float
    gamma_str: str

    def to_json(self) -> dict:
        return {
            "type": str(self.type),
            "phi_plus": self.phi_plus,
            "rank": self.rank,
            "R": frac_str(self.ratio_R),
            "gamma": self.gamma_str,
        }


def growth_exponent(t: LieType) -> RootInvariants:
    if t.twist is not None:
        raise DescriptorError("growth_exponent expects an untwisted type")
    n_pos = positive_root_count(t)
    R = Fraction(n_pos, t.rank)
    text = gamma_decimal(R)
    return RootInvariants(t, n_pos, t.rank, R, float(Decimal(text)), text)


def gamma_of_R(R) -> float:
    """Float evaluation of the growth exponent for an arbitrary positive R."""
    lo, hi = gamma_bounds(Fraction(R), digits=30)
    return float((lo + hi) / 2)


def is_two_generic(t: LieType) -> bool:
    """Not E6, not D4, and A_n only when n + 1 is a power of two."""
    if t.twist is not None:
        raise DescriptorError("is_two_generic expects an untwisted type")
    if (t.family, t.rank) in (("E", 6), ("D", 4)):
        return False
    if t.family == "A":
        m = t.rank + 1
        return m & (m - 1) == 0
    return True


@dataclass(frozen=True)
class OuterFormRow:
    twisted_type: LieType
    s: int
    ratio_R: Fraction
    residue_type: LieType

    @property
    def schema(self) -> str:
        tw = self.twisted_type.twist
        if tw == "2A":
            return "2A_l odd" if self.twisted_type.rank % 2 else "2A_l even"
        if tw in ("3D4", "6D4"):
            return "3D4, 6D4"
        return {"2D": "2D_l", "2E6": "2E6"}[tw]


def outer_form_row(t: LieType) -> OuterFormRow:
    """The outer-form invariants (s, R, residual type) of a twisted type."""
    if t.twist is None:
        raise DescriptorError(f"{t} is not a twisted type")
    l = t.rank
    if t.twist == "2A":
        R = Fraction(l + 1, 2)
        if l % 2:
            return OuterFormRow(t, (l - 1) * (l + 2) // 2, R, LieType._residue("C", (l + 1) // 2))
        return OuterFormRow(t, l * (l + 3) // 2, R, LieType._residue("B", l // 2))
    if t.twist == "2D":
        return OuterFormRow(t, 2 * l - 1, Fraction(l - 1), LieType._residue("B", l - 1))
    if t.twist in ("3D4", "6D4"):
        return OuterFormRow(t, 7, Fraction(3), LieType("G", 2))
    return OuterFormRow(t, 26, Fraction(6), LieType("F", 4))


def check_outer_inequality(row: OuterFormRow) -> tuple[bool, Fraction]:
    """Return (R(G') + s/(2 l') >= R(G), exact left-hand side)."""
    res = row.residue_type
    lhs = Fraction(positive_root_count(res), res.rank) + Fraction(row.s, 2 * res.rank)
    return lhs >= row.ratio_R, lhs


def table1_schemas() -> list[LieType]:
    """One representative per row schema, each at its smallest valid rank."""
    return [LieType("A", 3, "2A"), LieType("A", 2, "2A"), LieType("D", 4, "2D"),
            LieType("D", 4, "3D4"), LieType("E", 6, "2E6")]


def twisted_types_upto(max_rank: int) -> list[LieType]:
    """Every twisted type with rank <= max_rank, in a fixed order."""
    out = [LieType("A", l, "2A") for l in range(2, max_rank + 1)]
    out += [LieType("D", l, "2D") for l in range(4, max_rank + 1)]
    if max_rank >= 4:
        out += [LieType("D", 4, "3D4"), LieType("D", 4, "6D4")]
    if max_rank >= 6:
        out.append(LieType("E", 6, "2E6"))
    return out


def untwisted_types_upto(max_rank: int) -> list[LieType]:
    out = []
    for fam, lo in (("A", 1), ("B", 2), ("C", 2), ("D", 3)):
        out += [LieType(fam, n) for n in range(lo, max_rank + 1)]
    for fam, n in (("E", 6), ("E", 7), ("E", 8), ("F", 4), ("G", 2)):
        if n <= max_rank:
            out.append(LieType(fam, n))
    return out
