"""Explicit matrix groups SL_n(Z/m) and brute-force subgroup machinery.

Elements are stored as an (N, n, n) integer array; a matrix is identified by
its mixed-radix code ``sum entry_k * m**k`` and mapped back to a row index
through a dense lookup table.  Subsets of the group are boolean masks.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .arith import factorize
from .errors import FeasibilityError, InputError

MAX_ELEMENTS = 10**6
MAX_TABLE = 2500


def sl_order(n: int, m: int) -> int:
    """|SL_n(Z/m)| via CRT and Hensel lifting from |SL_n(F_p)|."""
    if m == 1:
        return 1
    out = 1
    for p, e in factorize(m):
        base = p ** (n * (n - 1) // 2)
        for i in range(2, n + 1):
            base *= p**i - 1
        out *= p ** ((e - 1) * (n * n - 1)) * base
    return out


def standard_generators(n: int, m: int) -> list[np.ndarray]:
    """Two matrices generating SL_n(Z), hence SL_n(Z/m)."""
    if n == 2:
        S = np.array([[0, -1], [1, 0]]) % m
        T = np.array([[1, 1], [0, 1]]) % m
        return [S, T]
    E = np.eye(n, dtype=np.int64)
    E[0, 1] = 1
    P = np.roll(np.eye(n, dtype=np.int64), 1, axis=0)
    if round(np.linalg.det(P)) != 1:
        P[0] = -P[0]
    return [E % m, P % m]


@dataclass
class FiniteMatrixGroup:
    """SL_n(Z/m), either fully materialized or as generators only."""

    n: int
    m: int
    order: int
    generators: list = field(repr=False)
    elements: np.ndarray | None = field(default=None, repr=False)
    _lookup: np.ndarray | None = field(default=None, repr=False)
    _table: np.ndarray | None = field(default=None, repr=False)
    _inverse: np.ndarray | None = field(default=None, repr=False)

    @property
    def materialized(self) -> bool:
        return self.elements is not None

    def _require(self):
        if self.elements is None:
            raise FeasibilityError(f"SL_{self.n}(Z/{self.m}) is too large to materialize")

    def codes(self, mats: np.ndarray) -> np.ndarray:
        flat = mats.reshape(mats.shape[0], -1) % self.m
        w = self.m ** np.arange(self.n * self.n, dtype=np.int64)
        return flat @ w

    def index_of(self, mats: np.ndarray) -> np.ndarray:
        self._require()
        return self._lookup[self.codes(mats)]

    @property
    def identity(self) -> int:
        return int(self.index_of(np.eye(self.n, dtype=np.int64)[None])[0])

    @property
    def generator_indices(self) -> list[int]:
        return [int(self.index_of(g[None])[0]) for g in self.generators]

    def right_action(self, g: np.ndarray) -> np.ndarray:
        """Permutation x -> x*g of element indices."""
        self._require()
        return self.index_of(self.elements @ g % self.m)

    def mul_table(self) -> np.ndarray:
        if self._table is None:
            self._require()
            if self.order > MAX_TABLE:
                raise FeasibilityError(f"multiplication table of order {self.order} exceeds {MAX_TABLE}")
            prod = np.einsum("aij,bjk->abik", self.elements, self.elements) % self.m
            self._table = self._lookup[self.codes(prod.reshape(-1, self.n, self.n))].reshape(self.order, self.order)
        return self._table

    def inverse(self) -> np.ndarray:
        if self._inverse is None:
            T = self.mul_table()
            e = self.identity
            self._inverse = np.argmax(T == e, axis=1)
        return self._inverse

    def reduce_mod(self, d: int) -> np.ndarray:
        """Codes of the images of all elements in SL_n(Z/d) (d | m)."""
        self._require()
        flat = self.elements.reshape(self.order, -1) % d
        return flat @ (d ** np.arange(self.n * self.n, dtype=np.int64))


def sl_mod_m(n: int, m: int, materialize: bool = True) -> FiniteMatrixGroup:
    """SL_n(Z/m); falls back to generators-only above MAX_ELEMENTS."""
    if n not in (2, 3):
        raise InputError("only n in {2, 3} is supported")
    if m < 2:
        raise InputError("modulus must be >= 2")
    order = sl_order(n, m)
    gens = standard_generators(n, m)
    G = FiniteMatrixGroup(n, m, order, gens)
    if not materialize or order > MAX_ELEMENTS or m ** (n * n) > 5 * 10**7:
        return G
    seen = np.zeros(m ** (n * n), dtype=bool)
    w = m ** np.arange(n * n, dtype=np.int64)
    eye = np.eye(n, dtype=np.int64)[None]
    frontier = eye
    seen[(eye.reshape(1, -1) @ w)] = True
    chunks = [eye]
    while len(frontier):
        nxt = np.concatenate([frontier @ g % m for g in gens])
        c = nxt.reshape(len(nxt), -1) @ w
        c, first = np.unique(c, return_index=True)
        fresh = ~seen[c]
        seen[c[fresh]] = True
        frontier = nxt[first[fresh]]
        chunks.append(frontier)
    elements = np.concatenate(chunks)
    if len(elements) != order:
        raise AssertionError(f"generated {len(elements)} elements, expected {order}")
    lookup = np.full(m ** (n * n), -1, dtype=np.int64)
    lookup[elements.reshape(order, -1) @ w] = np.arange(order)
    G.elements = elements
    G._lookup = lookup
    return G


# ------------------------------------------------------------ subgroups


def subgroup_generated(table: np.ndarray, identity: int, gens) -> np.ndarray:
    """Boolean mask of the subgroup generated by ``gens``.

    Long generator lists are thinned greedily first: a generator already in
    the subgroup built so far is dropped.
    """
    gens = [int(g) for g in gens]
    if len(gens) > 8:
        mask = subgroup_generated(table, identity, [])
        kept = []
        for g in gens:
            if not mask[g]:
                kept.append(g)
                mask = subgroup_generated(table, identity, kept)
        return mask
    mask = np.zeros(table.shape[0], dtype=bool)
    mask[identity] = True
    if not gens:
        return mask
    g_arr = np.asarray(gens, dtype=np.int64)
    frontier = np.array([identity])
    while len(frontier):
        prod = table[frontier[:, None], g_arr[None, :]].ravel()
        prod = np.unique(prod[~mask[prod]])
        mask[prod] = True
        frontier = prod
    return mask


def mask_key(mask: np.ndarray) -> bytes:
    return np.packbits(mask).tobytes()


@dataclass
class SubgroupClass:
    rep: np.ndarray  # boolean mask of a representative
    gens: list
    size: int  # number of conjugates

    @property
    def order(self) -> int:
        return int(self.rep.sum())


def element_orders(table: np.ndarray, identity: int) -> np.ndarray:
    N = table.shape[0]
    orders = np.ones(N, dtype=np.int64)
    cur = np.arange(N)
    done = cur == identity
    k = 1
    while not done.all():
        cur = table[cur, np.arange(N)]
        k += 1
        hit = (cur == identity) & ~done
        orders[hit] = k
        done |= hit
    return orders


def subgroup_classes(G: FiniteMatrixGroup) -> list[SubgroupClass]:
    """All subgroups of G, grouped into conjugacy classes.

    Starting from the cyclic subgroups of prime-power order, each class
    representative H is joined with every such cyclic subgroup C; any
    subgroup K = <H', C'> is conjugate to <H, C''> with H the representative
    of H', so iterating to a fixed point reaches every class.  Each new class
    is expanded to all its conjugates so membership tests stay exact.
    """
    table = G.mul_table()
    inv = G.inverse()
    e = G.identity
    N = G.order
    conj = table[table[inv[:, None], np.arange(N)[None, :]], np.arange(N)[:, None]]
    # conj[g, x] = g^-1 x g
    orders = element_orders(table, e)
    cyclic = {}
    for x in range(N):
        o = int(orders[x])
        if o == 1 or len(factorize(o)) != 1:
            continue
        mask = subgroup_generated(table, e, [x])
        cyclic.setdefault(mask_key(mask), (mask, x))
    cyclic_list = list(cyclic.values())

    known: set[bytes] = set()
    classes: list[SubgroupClass] = []

    def register(mask, gens):
        key = mask_key(mask)
        if key in known:
            return None
        conjugates = mask[conj]  # row g: mask of g H g^-1 ... as membership of g^-1 x g
        keys = {np.packbits(row).tobytes() for row in conjugates}
        known.update(keys)
        cls = SubgroupClass(mask, list(gens), len(keys))
        classes.append(cls)
        return cls

    trivial = np.zeros(N, dtype=bool)
    trivial[e] = True
    queue = [register(trivial, [])]
    for mask, x in cyclic_list:
        c = register(mask, [x])
        if c is not None:
            queue.append(c)
    while queue:
        H = queue.pop(0)
        for cmask, x in cyclic_list:
            if H.rep[x]:
                continue
            K = subgroup_generated(table, e, H.gens + [x])
            c = register(K, H.gens + [x])
            if c is not None:
                queue.append(c)
    classes.sort(key=lambda c: (-c.order, c.size))
    return classes


def derived_subgroup(table: np.ndarray, inv: np.ndarray, identity: int, mask: np.ndarray) -> np.ndarray:
    k = np.nonzero(mask)[0]
    ab = table[k[:, None], k[None, :]]
    ab_inv = table[inv[k][:, None], inv[k][None, :]]
    comm = np.unique(table[ab, ab_inv])
    return subgroup_generated(table, identity, comm)


def strip_prime(n: int, p: int) -> int:
    while n % p == 0:
        n //= p
    return n
