"""Finite groups of Lie type: orders, Borel data, the h functionals and lambda factors."""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from fractions import Fraction


from .arith import is_prime, log2, prime_power
from .errors import DomainError, FeasibilityError, InputError
from .matgroups import derived_subgroup, sl_mod_m, strip_prime, subgroup_classes
from .rootsys import LieType, OuterFormRow, check_outer_inequality, positive_root_count

MAX_BRUTE_ORDER = 2000

# degrees of the basic invariants; sum(d - 1) is the number of positive roots
_EXCEPTIONAL_DEGREES = {
    ("G", 2): (2, 6),
    ("F", 4): (2, 6, 8, 12),
    ("E", 6): (2, 5, 6, 8, 9, 12),
    ("E", 7): (2, 6, 8, 10, 12, 14, 18),
    ("E", 8): (2, 8, 12, 14, 18, 20, 24, 30),
}


def degrees(t: LieType) -> tuple[int, ...]:
    n = t.rank
    if t.family == "A":
        return tuple(range(2, n + 2))
    if t.family in "BC":
        return tuple(range(2, 2 * n + 1, 2))
    if t.family == "D":
        return tuple(range(2, 2 * n - 1, 2)) + (n,)
    return _EXCEPTIONAL_DEGREES[(t.family, n)]


def group_order(t: LieType, q: int) -> int:
    """Order of the simply connected split group of type t over F_q."""
    if t.twist is not None:
        raise InputError("group_order covers untwisted types only")
    prime_power(q)
    out = q ** positive_root_count(t)
    for d in degrees(t):
        out *= q**d - 1
    return out


@dataclass(frozen=True)
class SubgroupProfile:
    index: int
    kdiamond: int

    def __post_init__(self):
        if self.index < 1 or self.kdiamond < 1:
            raise InputError("index and |K^diamond| must be positive")


def borel_data(t: LieType, q: int) -> SubgroupProfile:
    """Index of the Borel subgroup and the order (q-1)^rank of its torus quotient."""
    order = group_order(t, q)
    borel = q ** positive_root_count(t) * (q - 1) ** t.rank
    return SubgroupProfile(order // borel, (q - 1) ** t.rank)


def h_invariant(p: SubgroupProfile) -> float:
    """log [G:K] / log |K^diamond|."""
    if p.kdiamond < 2:
        raise DomainError("h is undefined when |K^diamond| = 1")
    return log2(p.index) / log2(p.kdiamond)


def h_modified(p: SubgroupProfile, lam) -> float:
    """log([G':K] * lambda) / log |K^diamond|; equals h_invariant at lambda = 1."""
    if p.kdiamond < 2:
        raise DomainError("h is undefined when |K^diamond| = 1")
    if lam <= 0:
        raise DomainError("lambda must be positive")
    if lam == 1:
        return h_invariant(p)
    return (log2(p.index) + log2(lam)) / log2(p.kdiamond)


# ------------------------------------------------------------ brute force


@dataclass
class HCandidate:
    order: int
    kdiamond: int
    conjugates: int
    h: float


@dataclass
class MinHResult:
    q: int
    min_h: float
    witness_order: int
    witness_kdiamond: int
    h_borel: float
    subgroups: int
    classes: int
    candidates: list = field(repr=False, default_factory=list)

    def to_json(self) -> dict:
        return {
            "q": self.q,
            "min_h": repr(self.min_h),
            "witness_order": self.witness_order,
            "witness_kdiamond": self.witness_kdiamond,
            "h_borel": repr(self.h_borel),
            "subgroups": self.subgroups,
            "classes": self.classes,
        }


def min_h_bruteforce(q: int, t: LieType | None = None) -> MinHResult:
    """Minimum of h(K) over all subgroups K of SL_2(F_q) with |K^diamond| >= 2."""
    t = t or LieType("A", 1)
    if (t.family, t.rank, t.twist) != ("A", 1, None):
        raise InputError("brute-force min-h is implemented for type A1 only")
    if not is_prime(q):
        raise InputError("brute-force min-h needs a prime q")
    order = group_order(t, q)
    if order > MAX_BRUTE_ORDER:
        raise FeasibilityError(f"|SL_2(F_{q})| = {order} exceeds {MAX_BRUTE_ORDER}")
    G = sl_mod_m(2, q)
    table, inv, e = G.mul_table(), G.inverse(), G.identity
    classes = subgroup_classes(G)
    cands = []
    for c in classes:
        k_order = c.order
        derived = derived_subgroup(table, inv, e, c.rep)
        kd = strip_prime(k_order // int(derived.sum()), q)
        if kd < 2:
            continue
        h = h_invariant(SubgroupProfile(order // k_order, kd))
        cands.append(HCandidate(k_order, kd, c.size, h))
    cands.sort(key=lambda c: (c.h, -c.order))
    best = cands[0]
    return MinHResult(
        q=q,
        min_h=best.h,
        witness_order=best.order,
        witness_kdiamond=best.kdiamond,
        h_borel=h_invariant(borel_data(t, q)),
        subgroups=sum(c.size for c in classes),
        classes=len(classes),
        candidates=cands,
    )


# ------------------------------------------------------------ lambda factors


def lambda_example(p: int) -> Fraction:
    """Bad-prime factor for SL_3 over a quaternion order at a ramified odd prime p.

    The reductive quotient is a norm-one torus (dim 1, p+1 points) times the
    restriction of scalars of SL_3 from F_{p^2} (dim 16); the quasi-split
    comparison group is SL_6 (dim 35).
    """
    if p == 2 or not is_prime(p):
        raise InputError("lambda_example needs an odd prime")
    dim_small, dim_big = 17, 35
    small_points = (p + 1) * group_order(LieType("A", 2), p * p)
    big_points = group_order(LieType("A", 5), p)
    return Fraction(p ** ((dim_small + dim_big) // 2), small_points) * Fraction(big_points, p**dim_big)


@dataclass(frozen=True)
class TypeIIIBound:
    row: OuterFormRow
    q: int
    bound: Fraction  # R(G') + s/(2 l')
    h_model: float  # h_G of the model K: index q^#Phi'_+, |K^diamond| = q^l', lambda = q^(s/2)
    ok: bool


def type_iii_bound(row: OuterFormRow, q: int) -> TypeIIIBound:
    """Lower bound for h_G at a place where G is an outer form, with lambda >= q^(s/2)."""
    prime_power(q)
    ok, bound = check_outer_inequality(row)
    res = row.residue_type
    lq = math.log2(q)
    # logs of q-powers are exact multiples of log q, so the model h equals the bound
    h = (positive_root_count(res) * lq + row.s / 2 * lq) / (res.rank * lq)
    return TypeIIIBound(row, q, bound, h, ok)


def lambda_type_iii_check(row: OuterFormRow, q: int) -> bool:
    return type_iii_bound(row, q).ok
