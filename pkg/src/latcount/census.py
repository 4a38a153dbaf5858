"""Congruence-subgroup census of SL_2(Z), lower-bound counts and the class-group probe.

A congruence subgroup of SL_2(Z) of level m is the preimage of a subgroup
of SL_2(Z/m) that contains no kernel of reduction to a proper divisor of m,
with the same index.  The census therefore enumerates, for every level m,
the low-index subgroups of SL_2(Z/m) and keeps those of exact level m.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass

import numpy as np

from .abcount import elementary_subgroup_count, subgroup_count, subgroup_count_by_index
from .arith import divisors, is_prime, log2
from .covol import archimedean_factor, harder_covolume
from .errors import DomainError, FeasibilityError, InputError
from .finlie import borel_data
from .lowindex import low_index_subgroups
from .matgroups import FiniteMatrixGroup, sl_mod_m
from .quadfields import AbelianGroupShape, QuadraticField, fundamental_discriminants, l_rank
from .rootsys import LieType, growth_exponent

MAX_CENSUS = 12


@dataclass(frozen=True)
class CensusRecord:
    n: int
    c_n: int
    ratio: float | None  # None for n < 4, where log log n <= 0

    def csv_row(self) -> str:
        return f"{self.n},{self.c_n},{'' if self.ratio is None else repr(self.ratio)}"


def glnp_ratio(n: int, c: int) -> float:
    """log c / ((log n)^2 / log log n), base-2 logs."""
    if n < 4:
        raise DomainError("n must be >= 4")
    if c < 1:
        raise DomainError("c must be >= 1")
    ln = log2(n)
    return log2(c) * math.log2(ln) / (ln * ln)


def kernel_mask(G: FiniteMatrixGroup, d: int) -> np.ndarray:
    """Kernel of SL_n(Z/m) -> SL_n(Z/d) as a mask."""
    ident = np.eye(G.n, dtype=np.int64).reshape(-1) % d
    code = int(ident @ (d ** np.arange(G.n * G.n, dtype=np.int64)))
    return G.reduce_mod(d) == code


def level_of(H: np.ndarray, G: FiniteMatrixGroup) -> int:
    """Smallest d | m with Ker(SL(Z/m) -> SL(Z/d)) inside H."""
    for d in divisors(G.m):
        if d == G.m or H[kernel_mask(G, d)].all():
            return d
    return G.m


def exact_level_profile(m: int, n_max: int) -> dict[int, int]:
    """{index: count} of subgroups of SL_2(Z/m) with level exactly m and index <= n_max."""
    if m == 1:
        return {1: 1}
    G = sl_mod_m(2, m)
    kernels = [kernel_mask(G, d) for d in divisors(m) if d < m]
    counts = Counter()
    for S in low_index_subgroups(G, n_max):
        if not any(S.mask[k].all() for k in kernels):
            counts[S.index] += 1
    return dict(sorted(counts.items()))


def _profile_task(args):
    return exact_level_profile(*args)


def level_profiles(n_max: int, level_max: int, workers: int = 1) -> dict[int, dict[int, int]]:
    tasks = [(m, n_max) for m in range(1, level_max + 1)]
    if workers > 1:
        with ProcessPoolExecutor(workers) as ex:
            results = list(ex.map(_profile_task, tasks))
    else:
        results = [_profile_task(t) for t in tasks]
    return {m: r for (m, _), r in zip(tasks, results)}


def congruence_count(n_max: int, level_max: int | None = None, workers: int = 1) -> list[CensusRecord]:
    """c_n(SL_2(Z)) for n = 1..n_max; levels scanned up to level_max (default n_max)."""
    if not 1 <= n_max <= MAX_CENSUS:
        raise FeasibilityError(f"n_max must lie in 1..{MAX_CENSUS}")
    level_max = n_max if level_max is None else level_max
    if level_max < 1 or level_max > 2 * MAX_CENSUS:
        raise FeasibilityError(f"level_max must lie in 1..{2 * MAX_CENSUS}")
    per_index = Counter()
    for prof in level_profiles(n_max, level_max, workers).values():
        per_index.update(prof)
    out, running = [], 0
    for n in range(1, n_max + 1):
        running += per_index.get(n, 0)
        out.append(CensusRecord(n, running, glnp_ratio(n, running) if n >= 4 else None))
    return out


# ------------------------------------------------------------ lower bound


def lower_bound_sites(t: LieType, S, index_cap: int | None = None) -> int:
    """Subgroups of prod_{p in S} (Z/(p-1))^rank whose preimage has index <= index_cap."""
    S = list(S)
    if len(set(S)) != len(S) or not all(is_prime(p) for p in S):
        raise InputError("S must be a list of distinct primes")
    if t.twist is not None:
        raise InputError("untwisted types only")
    cyclic = [p - 1 for p in S for _ in range(t.rank)]
    A = AbelianGroupShape.from_cyclic_factors(cyclic)
    if index_cap is None:
        return subgroup_count(A)
    base = math.prod(borel_data(t, p).index for p in S)
    return sum(subgroup_count_by_index(A, j) for j in divisors(A.order) if base * j <= index_cap)


# ------------------------------------------------------------ probe


@dataclass(frozen=True)
class ProbeResult:
    delta: int
    l: int
    rank_l: int
    N: int
    x: float  # covolume of SL_l(O_k)
    x_norm: float  # x with the archimedean constant divided out
    ratio: float
    gamma_target: float

    def csv_row(self) -> str:
        return f"{self.delta},{self.rank_l},{self.N},{self.x!r},{self.ratio!r},{self.gamma_target!r}"


def probe_class_growth(delta: int, l: int, tol: float = 1e-9) -> ProbeResult:
    """Subgroups of Cl_l(k) against the covolume of SL_l(O_k).

    The raw covolume can be below 2 for small discriminants, so the ratio
    log N / ((log x')^2 / log log x') uses x' = D^delta * prod zeta_k(j),
    the covolume with its D-independent archimedean constant divided out.
    """
    if not is_prime(l) or l == 2:
        raise InputError("l must be an odd prime")
    k = QuadraticField(delta)
    if delta >= 0:
        raise InputError("probe needs a negative fundamental discriminant")
    r = l_rank(k, l)
    N = elementary_subgroup_count(l, r)
    a = archimedean_factor(l, 2)
    cov = harder_covolume(l, k, tol * a * float(k.abs_disc) ** ((l * l - 1) / 2))
    x_norm = cov.value / a
    lx = math.log2(x_norm)
    ratio = log2(N) * math.log2(lx) / (lx * lx)
    gamma = float(growth_exponent(LieType("A", l - 1)).gamma)
    return ProbeResult(delta, l, r, N, cov.value, x_norm, ratio, gamma)


def probe_scan(l: int, dmax: int, dmin: int = -3, tol: float = 1e-9) -> list[ProbeResult]:
    """Probe every fundamental discriminant in [-dmax, dmin], nearest to zero first."""
    if dmax < 3:
        raise InputError("dmax must be >= 3")
    ds = sorted(fundamental_discriminants(-dmax, dmin), reverse=True)
    return [probe_class_growth(d, l, tol) for d in ds]


def first_rank_at_least(l: int, rank: int, dmax: int) -> ProbeResult | None:
    for d in sorted(fundamental_discriminants(-dmax, -3), reverse=True):
        if l_rank(d, l) >= rank:
            return probe_class_growth(d, l)
    return None
