"""Finite complete lattices stored as dense join/meet tables over indices 0..n-1."""

from __future__ import annotations

from itertools import product
from typing import Iterable, Optional, Sequence

from .errors import NotALattice, NotAPartialOrder


class FiniteLattice:
    """A finite lattice on the elements ``0..size-1``.

    ``leq[i][j]`` is the (transitively closed) order. Binary join and meet
    tables are precomputed; n-ary joins fold them. Instances are treated as
    immutable once built, so they may be shared freely.
    """

    __slots__ = ("size", "leq", "join_table", "meet_table", "bottom", "top", "names", "_index")

    def __init__(self, size, leq, join_table, meet_table, names=None):
        self.size = size
        self.leq = leq
        self.join_table = join_table
        self.meet_table = meet_table
        self.bottom = next(i for i in range(size) if all(leq[i][j] for j in range(size)))
        self.top = next(i for i in range(size) if all(leq[j][i] for j in range(size)))
        if names is None:
            names = [str(i) for i in range(size)]
        self.names = tuple(names)
        self._index = {n: i for i, n in enumerate(self.names)}

    def __repr__(self):
        return f"FiniteLattice(size={self.size}, names={list(self.names)})"

    def __eq__(self, other):
        return (
            isinstance(other, FiniteLattice)
            and self.size == other.size
            and self.leq == other.leq
            and self.names == other.names
        )

    def __hash__(self):
        return hash((self.size, self.names))

    def elements(self):
        return range(self.size)

    def index(self, name_or_index):
        if isinstance(name_or_index, int):
            if not 0 <= name_or_index < self.size:
                raise IndexError(f"element {name_or_index} out of range 0..{self.size - 1}")
            return name_or_index
        return self._index[name_or_index]

    def le(self, a, b):
        return self.leq[a][b]

    def join2(self, a, b):
        return self.join_table[a][b]

    def meet2(self, a, b):
        return self.meet_table[a][b]

    def join(self, elems: Iterable[int]) -> int:
        out = self.bottom
        jt = self.join_table
        for e in elems:
            if not 0 <= e < self.size:
                raise IndexError(f"element {e} out of range 0..{self.size - 1}")
            out = jt[out][e]
        return out

    def meet(self, elems: Iterable[int]) -> int:
        out = self.top
        mt = self.meet_table
        for e in elems:
            if not 0 <= e < self.size:
                raise IndexError(f"element {e} out of range 0..{self.size - 1}")
            out = mt[out][e]
        return out

    def covers(self):
        """Hasse diagram edges ``(i, j)`` with ``i`` covered by ``j``."""
        n = self.size
        out = []
        for i, j in product(range(n), repeat=2):
            if i == j or not self.leq[i][j]:
                continue
            if any(k != i and k != j and self.leq[i][k] and self.leq[k][j] for k in range(n)):
                continue
            out.append((i, j))
        return out

    def distributivity_witness(self):
        """First triple ``(a, b, c)`` with ``a & (b | c) != (a & b) | (a & c)``, or None."""
        j, m = self.join_table, self.meet_table
        for a, b, c in product(range(self.size), repeat=3):
            if m[a][j[b][c]] != j[m[a][b]][m[a][c]]:
                return (a, b, c)
        return None

    def is_distributive(self):
        return self.distributivity_witness() is None

    def sublattice_order(self, subset: Sequence[int], names=None) -> "FiniteLattice":
        """Lattice on ``subset`` with the induced order (it must be a lattice)."""
        pairs = [(i, k) for i, a in enumerate(subset) for k, b in enumerate(subset) if self.leq[a][b]]
        if names is None:
            names = [self.names[a] for a in subset]
        return lattice_from_order(len(subset), pairs, names=names)


def _closure(n, pairs):
    leq = [[i == j for j in range(n)] for i in range(n)]
    for i, j in pairs:
        if not (0 <= i < n and 0 <= j < n):
            raise IndexError(f"order pair {(i, j)} out of range 0..{n - 1}")
        leq[i][j] = True
    for k in range(n):
        row_k = leq[k]
        for i in range(n):
            if leq[i][k]:
                row_i = leq[i]
                for j in range(n):
                    if row_k[j]:
                        row_i[j] = True
    return leq


def _least(candidates, leq):
    for c in candidates:
        if all(leq[c][d] for d in candidates):
            return c
    return None


def lattice_from_order(size: int, leq_pairs: Iterable[tuple], names: Optional[Sequence[str]] = None) -> FiniteLattice:
    """Build a lattice from any generating relation of its order.

    The reflexive-transitive closure of ``leq_pairs`` is taken first; a cycle
    raises :class:`NotAPartialOrder` and a pair without a least upper or
    greatest lower bound raises :class:`NotALattice`.
    """
    if size < 1:
        raise ValueError("a lattice needs at least one element")
    leq = _closure(size, leq_pairs)
    for i in range(size):
        for j in range(i + 1, size):
            if leq[i][j] and leq[j][i]:
                raise NotAPartialOrder((i, j))
    geq = [[leq[j][i] for j in range(size)] for i in range(size)]
    join = [[0] * size for _ in range(size)]
    meet = [[0] * size for _ in range(size)]
    for a in range(size):
        for b in range(a, size):
            ub = [c for c in range(size) if leq[a][c] and leq[b][c]]
            lub = _least(ub, leq)
            if lub is None:
                raise NotALattice((a, b), "least upper bound")
            lb = [c for c in range(size) if leq[c][a] and leq[c][b]]
            glb = _least(lb, geq)
            if glb is None:
                raise NotALattice((a, b), "greatest lower bound")
            join[a][b] = join[b][a] = lub
            meet[a][b] = meet[b][a] = glb
    leq_t = tuple(tuple(r) for r in leq)
    return FiniteLattice(
        size,
        leq_t,
        tuple(tuple(r) for r in join),
        tuple(tuple(r) for r in meet),
        names=names,
    )


def chain(n: int, names=None) -> FiniteLattice:
    """The n-element chain ``0 < 1 < ... < n-1``."""
    return lattice_from_order(n, [(i, i + 1) for i in range(n - 1)], names=names)


def diamond() -> FiniteLattice:
    """The Boolean square ``bot < x, y < top``."""
    return lattice_from_order(4, [(0, 1), (0, 2), (1, 3), (2, 3)], names=["bot", "x", "y", "top"])


def powerset_lattice(items: Sequence[str]) -> FiniteLattice:
    """Subsets of ``items`` encoded as bitmasks (element ``k`` is the set of bits of ``k``)."""
    n = len(items)
    size = 1 << n
    pairs = [(s, s | (1 << i)) for s in range(size) for i in range(n) if not s & (1 << i)]
    return lattice_from_order(size, pairs, names=[subset_name(items, s) for s in range(size)])


def subset_name(items, mask):
    return "{" + ",".join(items[i] for i in range(len(items)) if mask >> i & 1) + "}"
