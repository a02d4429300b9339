"""Decision procedures for (strong) Cauchy-bilaterality, with replayable witnesses.

For an object X a *family* is a finite list of pairs ``(f_i: X -> X_i, g_i: X_i -> X)``.
Writing ``p_i = g_i . f_i`` and ``c_i = (g_i & f_i°) . (g_i° & f_i)``, both in
``hom(X, X)``, a family *covers* when ``1_X <= join p_i`` and *concludes* when
``1_X <= join c_i``.  In the plain mode the family must also be pairwise
compatible: ``f_k . p_j <= f_k`` and ``p_j . g_k <= g_k`` for all j, k.

Two routes are provided and cross-checked in the test suite:

* ``"sweep"`` (default): a family violating the implication has its
  conclusion join below some ``u`` with ``1_X </= u``; so it suffices, for each
  maximal such ``u``, to look at the pairs with ``c_i <= u`` and ask whether a
  compatible subfamily of them covers.  Compatible subfamilies live inside
  maximal cliques of the compatibility graph (Bron-Kerbosch).
* ``"exhaustive"``: enumerate compatible subfamilies of the candidate pool in
  lexicographic order, pruning at covering families, and test each one.  Capped
  by ``max_pairs``.

Witnesses are minimised by pair count, then lexicographically over the
canonical pool order (object, f index, g index).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations
from typing import Dict, List, Optional, Tuple

from .errors import NoInvolution, SearchCapExceeded
from .quantaloid import MorphismRef, Quantaloid

PLAIN = "cauchy-bilateral"
STRONG = "strongly-cauchy-bilateral"
DEFAULT_MAX_PAIRS = 24


@dataclass(frozen=True)
class Witness:
    obj: str
    pairs: Tuple[Tuple[MorphismRef, MorphismRef], ...]

    def describe(self, Q: Quantaloid) -> str:
        inner = ", ".join(f"({Q.describe(f)}, {Q.describe(g)})" for f, g in self.pairs)
        return f"X={self.obj}: {{{inner}}}"


@dataclass
class BilateralityReport:
    holds: bool
    mode: str
    witness: Optional[Witness] = None
    pool_sizes: Dict[str, int] = field(default_factory=dict)
    method: str = "sweep"
    minimal: bool = True


@dataclass(frozen=True)
class _Pair:
    obj: str
    f: int
    g: int
    p: int
    c: int


def _pool(Q: Quantaloid, x: str, mode: str) -> List[_Pair]:
    Lxx = Q.hom[(x, x)]
    out = []
    for xi in Q.objects:
        t_fg = Q.compose_table[(x, xi, x)]
        t_fgf = Q.compose_table[(x, x, xi)]
        t_gfg = Q.compose_table[(xi, x, x)]
        Lf, Lg = Q.hom[(x, xi)], Q.hom[(xi, x)]
        inv_f, inv_g = Q.involution[(x, xi)], Q.involution[(xi, x)]
        for f in Lf.elements():
            for g in Lg.elements():
                p = t_fg[g][f]
                if p == Lxx.bottom:
                    continue  # never needed in a minimal covering family
                if mode == PLAIN:
                    if not Lf.leq[t_fgf[f][p]][f] or not Lg.leq[t_gfg[p][g]][g]:
                        continue
                c = t_fg[Lg.meet_table[g][inv_f[f]]][Lf.meet_table[inv_g[g]][f]]
                out.append(_Pair(xi, f, g, p, c))
    return out


def _compatible(Q: Quantaloid, x: str, a: _Pair, b: _Pair) -> bool:
    # f_b . p_a <= f_b, f_a . p_b <= f_a, p_a . g_b <= g_b, p_b . g_a <= g_a
    def ok(u: _Pair, v: _Pair):
        Lf, Lg = Q.hom[(x, v.obj)], Q.hom[(v.obj, x)]
        if not Lf.leq[Q.comp(x, x, v.obj, v.f, u.p)][v.f]:
            return False
        return Lg.leq[Q.comp(v.obj, x, x, u.p, v.g)][v.g]

    return ok(a, b) and ok(b, a)


def _adjacency(Q, x, pool, mode):
    n = len(pool)
    if mode == STRONG:
        return [set(range(n)) - {i} for i in range(n)]
    adj = [set() for _ in range(n)]
    for i in range(n):
        for j in range(i + 1, n):
            if _compatible(Q, x, pool[i], pool[j]):
                adj[i].add(j)
                adj[j].add(i)
    return adj


def maximal_cliques(adj: List[set], vertices: set):
    """Bron-Kerbosch with pivoting, restricted to ``vertices``; yields sorted tuples."""
    out = []

    def expand(r, p, xs):
        if not p and not xs:
            out.append(tuple(sorted(r)))
            return
        pivot = max(p | xs, key=lambda v: len(adj[v] & p))
        for v in sorted(p - adj[pivot]):
            expand(r | {v}, p & adj[v], xs & adj[v])
            p = p - {v}
            xs = xs | {v}

    expand(set(), set(vertices), set())
    return out


def _covers(L, unit, vals):
    return L.leq[unit][L.join(vals)]


def _min_cover(L, unit, pool, candidates, budget):
    """Smallest lexicographically-first covering subsets across candidate cliques.

    Returns ``(indices, exact)``; ``exact`` is False when the combination budget
    forced a greedy reduction instead.
    """
    cliques = sorted(set(candidates))
    spent = 0
    longest = max(len(k) for k in cliques)
    for size in range(0, longest + 1):
        best = None
        for k in cliques:
            if len(k) < size:
                continue
            for combo in combinations(k, size):
                spent += 1
                if spent > budget:
                    return _greedy(L, unit, pool, cliques), False
                if _covers(L, unit, [pool[i].p for i in combo]):
                    if best is None or combo < best:
                        best = combo
                    break
        if best is not None:
            return best, True
    raise AssertionError("candidate cliques must cover")


def _greedy(L, unit, pool, cliques):
    for k in cliques:
        if _covers(L, unit, [pool[i].p for i in k]):
            keep = list(k)
            for i in list(k):
                trial = [j for j in keep if j != i]
                if _covers(L, unit, [pool[j].p for j in trial]):
                    keep = trial
            return tuple(keep)
    raise AssertionError("candidate cliques must cover")


def _sweep_object(Q, x, pool, mode, max_pairs):
    L = Q.hom[(x, x)]
    unit = Q.unit(x)
    non_above = [u for u in L.elements() if not L.leq[unit][u]]
    maximal_u = [u for u in non_above
                 if not any(v != u and L.leq[u][v] for v in non_above)]
    adj = _adjacency(Q, x, pool, mode)
    violating = []
    for u in maximal_u:
        vs = {i for i, pr in enumerate(pool) if L.leq[pr.c][u]}
        if not vs or not _covers(L, unit, [pool[i].p for i in vs]):
            continue
        for k in maximal_cliques(adj, vs):
            if _covers(L, unit, [pool[i].p for i in k]):
                violating.append(k)
    if not violating:
        return None, True
    return _min_cover(L, unit, pool, violating, budget=1 << max_pairs)


def _exhaustive_object(Q, x, pool, mode, max_pairs):
    if len(pool) > max_pairs:
        raise SearchCapExceeded(f"object {x}", len(pool), max_pairs)
    L = Q.hom[(x, x)]
    unit = Q.unit(x)
    adj = _adjacency(Q, x, pool, mode)
    best = None

    def dfs(chosen, start, join_p, join_c):
        nonlocal best
        if L.leq[unit][join_p]:
            if not L.leq[unit][join_c]:
                key = (len(chosen), tuple(chosen))
                if best is None or key < best:
                    best = key
            return
        for i in range(start, len(pool)):
            if all(i in adj[j] for j in chosen):
                pr = pool[i]
                chosen.append(i)
                dfs(chosen, i + 1, L.join_table[join_p][pr.p], L.join_table[join_c][pr.c])
                chosen.pop()

    dfs([], 0, L.bottom, L.bottom)
    return (None if best is None else best[1]), True


def _check(Q: Quantaloid, mode: str, method: str, max_pairs: int) -> BilateralityReport:
    if not Q.involutive:
        raise NoInvolution()
    if method not in ("sweep", "exhaustive"):
        raise ValueError(f"unknown method {method!r}")
    search = _sweep_object if method == "sweep" else _exhaustive_object
    sizes = {}
    best = None
    minimal = True
    for x in Q.objects:
        pool = _pool(Q, x, mode)
        sizes[x] = len(pool)
        found, exact = search(Q, x, pool, mode, max_pairs)
        if found is None:
            continue
        key = (len(found), Q.objects.index(x), tuple(found))
        if best is None or key < best[0]:
            best = (key, x, [pool[i] for i in found])
            minimal = exact
    if best is None:
        return BilateralityReport(True, mode, None, sizes, method)
    _, x, pairs = best
    w = Witness(x, tuple((MorphismRef(x, pr.obj, pr.f), MorphismRef(pr.obj, x, pr.g)) for pr in pairs))
    return BilateralityReport(False, mode, w, sizes, method, minimal)


def check_cauchy_bilateral(Q: Quantaloid, max_pairs: int = DEFAULT_MAX_PAIRS,
                           method: str = "sweep") -> BilateralityReport:
    """Decide the compatible-family bilaterality condition on every object."""
    return _check(Q, PLAIN, method, max_pairs)


def check_strong_cauchy_bilateral(Q: Quantaloid, max_pairs: int = DEFAULT_MAX_PAIRS,
                                  method: str = "sweep") -> BilateralityReport:
    """Same as :func:`check_cauchy_bilateral` without the compatibility premises."""
    return _check(Q, STRONG, method, max_pairs)


# replay through the public morphism API


def family_compatible(Q: Quantaloid, pairs) -> bool:
    for fj, gj in pairs:
        pj = Q.compose(gj, fj)
        for fk, gk in pairs:
            if not Q.leq(Q.compose(fk, pj), fk):
                return False
            if not Q.leq(Q.compose(pj, gk), gk):
                return False
    return True


def family_covers(Q: Quantaloid, x: str, pairs) -> bool:
    return Q.leq(Q.identity(x), Q.join([Q.compose(g, f) for f, g in pairs], x, x))


def family_concludes(Q: Quantaloid, x: str, pairs) -> bool:
    terms = []
    for f, g in pairs:
        left = Q.meet([g, Q.involute(f)])
        right = Q.meet([Q.involute(g), f])
        terms.append(Q.compose(left, right))
    return Q.leq(Q.identity(x), Q.join(terms, x, x))


def premise_holds(Q: Quantaloid, x: str, pairs, mode: str = PLAIN) -> bool:
    if mode == PLAIN and not family_compatible(Q, pairs):
        return False
    return family_covers(Q, x, pairs)


def replay(Q: Quantaloid, report: BilateralityReport) -> bool:
    """True when a failing report's witness satisfies the premise and breaks the conclusion."""
    if report.holds or report.witness is None:
        return False
    w = report.witness
    return premise_holds(Q, w.obj, w.pairs, report.mode) and not family_concludes(Q, w.obj, w.pairs)
