"""Exact subgroup counting in finite abelian groups.

Two independent algorithms:

* ``subgroup_count`` sums, for each p-primary part of type lambda, the
  number of subgroups of every type mu <= lambda (a product of Gaussian
  binomials over the conjugate partitions), then multiplies across primes.
* ``index_profile`` / ``subgroup_count_by_index`` enumerate the sublattices
  of Z^r containing the relation lattice diag(d_1, ..., d_r), one per upper
  triangular Hermite normal form, and bucket them by determinant.
"""

from __future__ import annotations

from collections import Counter
from functools import lru_cache

import mpmath

from .arith import log2
from .quadfields import AbelianGroupShape

__all__ = [
    "AbelianGroupShape",
    "gaussian_binomial",
    "subgroup_count",
    "subgroup_count_by_index",
    "index_profile",
    "hnf_sublattices",
    "elementary_subgroup_count",
    "bounds_check",
    "abelian_groups_of_order",
]


@lru_cache(maxsize=None)
def gaussian_binomial(n: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^n."""
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def _conjugate(part) -> list[int]:
    if not part:
        return []
    return [sum(1 for x in part if x >= i) for i in range(1, max(part) + 1)]


def _subpartitions(part):
    """All partitions mu with mu_i <= part_i (part is decreasing)."""
    if not part:
        yield ()
        return

    def rec(i, cap):
        if i == len(part):
            yield ()
            return
        for x in range(min(cap, part[i]), -1, -1):
            if x == 0:
                yield ()
                continue
            for rest in rec(i + 1, x):
                yield (x,) + rest

    yield from rec(0, part[0])


def subgroups_of_type(lam, mu, p: int) -> int:
    """Number of subgroups of type mu in the abelian p-group of type lam."""
    lc = _conjugate(list(lam))
    mc = _conjugate(list(mu))
    total = 1
    for i in range(len(lc)):
        li = lc[i]
        mi = mc[i] if i < len(mc) else 0
        mnext = mc[i + 1] if i + 1 < len(mc) else 0
        total *= p ** (mnext * (li - mi)) * gaussian_binomial(li - mnext, mi - mnext, p)
    return total


def p_group_subgroup_count(lam, p: int) -> int:
    lam = tuple(sorted(lam, reverse=True))
    return sum(subgroups_of_type(lam, mu, p) for mu in _subpartitions(lam))


def subgroup_count(A: AbelianGroupShape) -> int:
    """Total number of subgroups of A."""
    out = 1
    for p, lam in A.primary_parts().items():
        out *= p_group_subgroup_count(lam, p)
    return out


def _sublattices(d, target=None):
    """Yield (diagonal, rows) for every HNF sublattice of Z^r containing diag(d).

    Rows are built bottom-up; for row i we pick h_ii | d_i and then the
    off-diagonal entries one column at a time, keeping only choices for which
    d_i e_i stays inside the lattice spanned by the rows already fixed.
    With ``target`` set, the product of diagonal entries must equal it.
    """
    r = len(d)
    rows = [None] * r

    def place(i, det):
        if i < 0:
            if target is None or det == target:
                yield det, tuple(rows)
            return
        for hii in _divisors_of(d[i]):
            nd = det * hii
            if target is not None and target % nd:
                continue
            q = d[i] // hii
            row = [0] * r
            row[i] = hii
            carry = [0] * r
            yield from fill(i, i + 1, row, carry, q, nd)

    def fill(i, j, row, carry, q, det):
        if j == len(d):
            rows[i] = tuple(row)
            yield from place(i - 1, det)
            return
        hjj = rows[j][j]
        for x in range(hjj):
            val = q * x + carry[j]
            if val % hjj:
                continue
            t = val // hjj
            new_carry = carry[:]
            below = rows[j]
            for k in range(j + 1, r):
                new_carry[k] -= t * below[k]
            row[j] = x
            yield from fill(i, j + 1, row, new_carry, q, det)
        row[j] = 0

    yield from place(r - 1, 1)


@lru_cache(maxsize=4096)
def _divisors_of(n: int) -> tuple[int, ...]:
    return tuple(k for k in range(1, n + 1) if n % k == 0)


def hnf_sublattices(A: AbelianGroupShape, index: int | None = None):
    """Yield the HNF basis (tuple of rows) of each subgroup, optionally of a fixed index."""
    for _, rows in _sublattices(A.invariant_factors, index):
        yield rows


def index_profile(A: AbelianGroupShape) -> dict[int, int]:
    """{index: number of subgroups of that index} from HNF enumeration."""
    counts = Counter(det for det, _ in _sublattices(A.invariant_factors))
    return dict(sorted(counts.items()))


def subgroup_count_by_index(A: AbelianGroupShape, j: int) -> int:
    if j < 1 or A.order % j:
        return 0
    return sum(1 for _ in _sublattices(A.invariant_factors, j))


def elementary_subgroup_count(l: int, r: int) -> int:
    """Number of subgroups of (Z/l)^r."""
    return sum(gaussian_binomial(r, i, l) for i in range(r + 1))


def _le_power_bound(count: int, n: int) -> bool:
    """count <= n ** log2(n), exactly."""
    if n & (n - 1) == 0:
        a = n.bit_length() - 1
        return count <= 1 << (a * a)
    lhs, rhs = log2(count), log2(n) ** 2
    if abs(lhs - rhs) > 1e-9 * max(1.0, rhs):
        return lhs < rhs
    with mpmath.workdps(60):
        return mpmath.log(count, 2) <= mpmath.log(n, 2) ** 2


def bounds_check(A: AbelianGroupShape, l: int, count: int | None = None) -> bool:
    """l**floor(r^2/4) <= #subgroups(A) <= |A|**log2|A| with r the l-rank of A."""
    r = A.p_rank(l)
    if count is None:
        count = subgroup_count(A)
    return l ** (r * r // 4) <= count and _le_power_bound(count, A.order)


def abelian_groups_of_order(n: int) -> list[AbelianGroupShape]:
    """Every abelian group of order n up to isomorphism."""
    from .arith import factorize

    choices = [[(p, part) for part in _partitions(e)] for p, e in (factorize(n) if n > 1 else ())]
    out = []

    def rec(i, parts):
        if i == len(choices):
            out.append(AbelianGroupShape.from_primary_parts(dict(parts)))
            return
        for p, part in choices[i]:
            rec(i + 1, parts + [(p, list(part))])

    rec(0, [])
    return out


def _partitions(n, cap=None):
    cap = n if cap is None else cap
    if n == 0:
        yield ()
        return
    for k in range(min(n, cap), 0, -1):
        for rest in _partitions(n - k, k):
            yield (k,) + rest
