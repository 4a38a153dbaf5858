"""Low-index subgroups of a finite matrix group via coset-table backtracking.

The group is presented on its two standard generators.  Partial coset
tables are filled in row-major order, a new coset always receiving the next
free label, so each subgroup of index <= bound is produced by exactly one
standard table.  Relator scanning prunes branches early; every complete
table is then tested for factoring through the finite group by checking the
induced permutation action along the whole Cayley graph.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import FeasibilityError, InputError
from .matgroups import FiniteMatrixGroup

MAX_GROUP = 10**6
MAX_BOUND = 24

# generator symbols: 0 = a, 1 = a^-1, 2 = b, 3 = b^-1
_INV = (1, 0, 3, 2)


def _word(text: str) -> tuple[int, ...]:
    code = {"a": 0, "A": 1, "b": 2, "B": 3}
    return tuple(code[ch] for ch in text)


def default_relators(G: FiniteMatrixGroup) -> list[tuple[int, ...]]:
    """Relators valid in G, used only for pruning."""
    gens = G.generators
    rels = []
    for sym, g in ((0, gens[0]), (2, gens[1])):
        o = _matrix_order(g, G.m)
        rels.append((sym,) * o)
    if G.n == 2:
        # S^2 is central and equals (S T)^3
        rels.append(_word("aabAAB"))
        rels.append(_word("ababab") + _word("AA"))
    return rels


def _matrix_order(g: np.ndarray, m: int) -> int:
    eye = np.eye(g.shape[0], dtype=np.int64)
    x, k = g % m, 1
    while not np.array_equal(x, eye):
        x = x @ g % m
        k += 1
    return k


class _CayleyCheck:
    """Tests whether generator permutations extend to an action of G."""

    def __init__(self, G: FiniteMatrixGroup):
        ra = [G.right_action(g) for g in G.generators]
        e = G.identity
        N = G.order
        seen = np.zeros(N, dtype=bool)
        seen[e] = True
        frontier = np.array([e])
        layers = []  # BFS layers as (nodes, parent, generator used)
        while len(frontier):
            new_nodes, new_par, new_via = [], [], []
            for k, perm in enumerate(ra):
                img = perm[frontier]
                fresh = ~seen[img]
                img, src = img[fresh], frontier[fresh]
                img, first = np.unique(img, return_index=True)
                seen[img] = True
                new_nodes.append(img)
                new_par.append(src[first])
                new_via.append(np.full(len(img), k))
            nodes = np.concatenate(new_nodes)
            if not len(nodes):
                break
            layers.append((nodes, np.concatenate(new_par), np.concatenate(new_via)))
            frontier = nodes
        self.N, self.e, self.ra, self.layers = N, e, ra, layers

    def images(self, perms: list[np.ndarray]) -> np.ndarray | None:
        """Row g = permutation image of g, or None when the action is not a homomorphism."""
        k = len(perms[0])
        pi = np.empty((self.N, k), dtype=np.int64)
        pi[self.e] = np.arange(k)
        for nodes, par, vv in self.layers:
            for j, p in enumerate(perms):
                sel = vv == j
                pi[nodes[sel]] = p[pi[par[sel]]]
        for j, p in enumerate(perms):
            if not np.array_equal(pi[self.ra[j]], p[pi]):
                return None
        return pi


@dataclass
class LowIndexSubgroup:
    index: int
    mask: np.ndarray  # stabilizer of coset 0 as a boolean mask over G
    table: tuple  # standard coset table, rows (a, a^-1, b, b^-1)

    @property
    def order(self) -> int:
        return int(self.mask.sum())


def _scan(T, n, rels) -> bool:
    """Close the table under relator deductions; False on a contradiction."""
    changed = True
    while changed:
        changed = False
        for c in range(n):
            for r in rels:
                L = len(r)
                f, i = c, 0
                while i < L and T[f][r[i]] >= 0:
                    f = T[f][r[i]]
                    i += 1
                if i == L:
                    if f != c:
                        return False
                    continue
                b, j = c, L - 1
                while j >= i and T[b][_INV[r[j]]] >= 0:
                    b = T[b][_INV[r[j]]]
                    j -= 1
                if j < i:
                    if f != b:
                        return False
                elif j == i:
                    x = r[i]
                    T[f][x] = b
                    T[b][_INV[x]] = f
                    changed = True
    return True


def enumerate_tables(bound: int, rels):
    """Yield every complete standard coset table with at most ``bound`` cosets."""
    T0 = [[-1] * 4 for _ in range(bound)]
    stack = [(T0, 1)]
    while stack:
        T, n = stack.pop()
        if not _scan(T, n, rels):
            continue
        spot = None
        for c in range(n):
            for x in range(4):
                if T[c][x] < 0:
                    spot = (c, x)
                    break
            if spot:
                break
        if spot is None:
            yield tuple(tuple(row) for row in T[:n])
            continue
        c, x = spot
        ix = _INV[x]
        branches = []
        for d in range(n):
            if T[d][ix] < 0:
                U = [row[:] for row in T]
                U[c][x] = d
                U[d][ix] = c
                branches.append((U, n))
        if n < bound:
            U = [row[:] for row in T]
            U[c][x] = n
            U[n][ix] = c
            branches.append((U, n + 1))
        # reversed so that the stack pops branches in natural order
        stack.extend(reversed(branches))


def low_index_subgroups(G: FiniteMatrixGroup, bound: int, relators=None) -> list[LowIndexSubgroup]:
    """All subgroups of G of index <= bound, each exactly once."""
    if bound < 1:
        raise InputError("bound must be >= 1")
    if bound > MAX_BOUND or G.order > MAX_GROUP:
        raise FeasibilityError(f"low-index search needs bound <= {MAX_BOUND} and |G| <= {MAX_GROUP}")
    if not G.materialized:
        raise FeasibilityError("group is not materialized")
    rels = default_relators(G) if relators is None else relators
    check = _CayleyCheck(G)
    out = []
    for table in enumerate_tables(min(bound, G.order), rels):
        arr = np.array(table, dtype=np.int64)
        pi = check.images([arr[:, 0], arr[:, 2]])
        if pi is None:
            continue
        out.append(LowIndexSubgroup(len(table), pi[:, 0] == 0, table))
    out.sort(key=lambda s: (s.index, s.table))
    return out
