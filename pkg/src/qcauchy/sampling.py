"""Random Q-categories and distributors, made valid by closing random matrices upward."""

from __future__ import annotations

import random
from itertools import product
from typing import List, Optional, Sequence

from .qcat import Distributor, QCategory, QFunctor, graph, is_left_adjoint_dist, left_adjoint_right_adjoint
from .quantaloid import Quantaloid


def close_category(Q: Quantaloid, types: Sequence[str], hom: List[List[int]]) -> List[List[int]]:
    """Least matrix above ``hom`` satisfying the unit and composition inequalities."""
    n = len(types)
    h = [list(r) for r in hom]
    for x in range(n):
        h[x][x] = Q.hom[(types[x], types[x])].join_table[h[x][x]][Q.unit(types[x])]
    changed = True
    while changed:
        changed = False
        for z, y, x in product(range(n), repeat=3):
            L = Q.hom[(types[x], types[z])]
            c = Q.comp(types[x], types[y], types[z], h[z][y], h[y][x])
            j = L.join_table[h[z][x]][c]
            if j != h[z][x]:
                h[z][x] = j
                changed = True
    return h


def close_distributor(A: QCategory, B: QCategory, m: List[List[int]]) -> List[List[int]]:
    Q = B.base
    ta, tb = A.types, B.types
    out = [list(r) for r in m]
    changed = True
    while changed:
        changed = False
        for b, a in product(B.objects(), A.objects()):
            L = Q.hom[(ta[a], tb[b])]
            acc = out[b][a]
            for b2 in B.objects():
                acc = L.join_table[acc][Q.comp(ta[a], tb[b2], tb[b], B.hom[b][b2], out[b2][a])]
            for a2 in A.objects():
                acc = L.join_table[acc][Q.comp(ta[a], ta[a2], tb[b], out[b][a2], A.hom[a2][a])]
            if acc != out[b][a]:
                out[b][a] = acc
                changed = True
    return out


def _pick(rng, L, density):
    return rng.randrange(L.size) if rng.random() < density else L.bottom


def random_category(Q: Quantaloid, n: int, rng: random.Random, density: float = 0.5,
                    types: Optional[Sequence[str]] = None) -> QCategory:
    """Random category on ``n`` objects; an explicit ``types`` list overrides ``n``."""
    types = list(types) if types is not None else [rng.choice(Q.objects) for _ in range(n)]
    n = len(types)
    raw = [[_pick(rng, Q.hom[(types[x], types[y])], density) for x in range(n)] for y in range(n)]
    return QCategory(Q, types, close_category(Q, types, raw))


def random_distributor(A: QCategory, B: QCategory, rng: random.Random, density: float = 0.5) -> Distributor:
    Q = B.base
    raw = [[_pick(rng, Q.hom[(A.types[a], B.types[b])], density) for a in A.objects()] for b in B.objects()]
    return Distributor(A, B, close_distributor(A, B, raw))


def random_functor(A: QCategory, B: QCategory, rng: random.Random, tries: int = 20) -> Optional[QFunctor]:
    from .qcat import validate_functor

    for _ in range(tries):
        m = []
        for x in A.objects():
            options = [y for y in B.objects() if B.types[y] == A.types[x]]
            if not options:
                return None
            m.append(rng.choice(options))
        F = QFunctor(A, B, m, check=False)
        if not validate_functor(F):
            return F
    return None


def random_left_adjoint(A: QCategory, B: QCategory, rng: random.Random, tries: int = 60) -> Optional[Distributor]:
    """A left adjoint ``A -/-> B`` found by rejection sampling, falling back to graphs of functors."""
    for k in range(tries):
        Phi = random_distributor(A, B, rng, density=rng.choice([0.2, 0.4, 0.7]))
        if left_adjoint_right_adjoint(Phi) is not None:
            return Phi
    F = random_functor(A, B, rng)
    if F is not None:
        G = graph(F)
        assert is_left_adjoint_dist(G, left_adjoint_right_adjoint(G))
        return G
    return None
