"""Cauchy completion, symmetric completion, the comparison functor L and related checks."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from math import prod
from typing import Dict, List, Optional, Sequence, Tuple

from .bilateral import PLAIN, check_cauchy_bilateral, premise_holds
from .errors import NotBilateral, NotLeftAdjoint, NotSymmetric, PremiseViolated, SearchCapExceeded
from .qcat import (
    Distributor,
    QCategory,
    QFunctor,
    cograph,
    compose_distributors,
    counit_functor,
    distributor_meet,
    graph,
    involute_distributor,
    is_symmetric,
    is_symmetric_left_adjoint_dist,
    left_adjoint_right_adjoint,
    presheaf,
    symmetrise,
    symmetrise_distributor,
    unit_category,
)
from .quantaloid import MorphismRef, Quantaloid

DEFAULT_MAX_PRESHEAVES = 20000


@dataclass
class CompletionResult:
    completion: QCategory
    yoneda: QFunctor
    presheaves: List[Distributor]
    adjoints: List[Distributor]
    embedding: Optional[QFunctor] = None  # symmetric completion into the Cauchy completion

    def key(self, k) -> Tuple[str, Tuple[int, ...]]:
        p = self.presheaves[k]
        return p.src.types[0], p.column()

    def keys(self):
        return [self.key(k) for k in range(len(self.presheaves))]


@dataclass
class WitnessCategory:
    category: QCategory
    presheaf: Distributor
    family: Tuple[Tuple[MorphismRef, MorphismRef], ...]
    right_adjoint: Distributor
    symmetrised: Distributor
    symmetric_left_adjoint: bool
    note: str = "hom(j, i) = f_j . g_i v delta_ij (type-correct index placement)"


@dataclass
class LReport:
    functor: QFunctor
    domain: CompletionResult
    codomain: QCategory
    cauchy: CompletionResult
    injective: bool
    surjective: bool
    fully_faithful: bool
    fixpoint_identity: bool
    missing: List[int] = field(default_factory=list)

    @property
    def isomorphism(self) -> bool:
        return self.injective and self.surjective and self.fully_faithful


@dataclass
class SquaresReport:
    passed: bool
    symmetric_checked: int = 0
    complete_checked: int = 0
    failures: List[str] = field(default_factory=list)


# enumeration


def enumerate_presheaves(A: QCategory, X: str, cap: int = DEFAULT_MAX_PRESHEAVES) -> List[Distributor]:
    """All presheaves ``*_X -/-> A`` in lexicographic order of their columns."""
    Q = A.base
    t = A.types
    lats = [Q.hom[(X, t[a])] for a in A.objects()]
    total = prod(L.size for L in lats)
    if total > cap:
        raise SearchCapExceeded(f"presheaves of type {X}", total, cap)
    unit = unit_category(Q, X)
    n = len(t)
    out = []
    col = [0] * n

    # assign entries in order; each new entry is checked against every earlier one in both directions
    def fits(k, v):
        if not lats[k].leq[Q.comp(X, t[k], t[k], A.hom[k][k], v)][v]:
            return False
        for a in range(k):
            if not lats[a].leq[Q.comp(X, t[k], t[a], A.hom[a][k], v)][col[a]]:
                return False
            if not lats[k].leq[Q.comp(X, t[a], t[k], A.hom[k][a], col[a])][v]:
                return False
        return True

    def extend(k):
        if k == n:
            out.append(Distributor(unit, A, [[c] for c in col], check=False))
            return
        for v in range(lats[k].size):
            if fits(k, v):
                col[k] = v
                extend(k + 1)

    extend(0)
    return out


def left_adjoint_presheaves(A: QCategory, cap: int = DEFAULT_MAX_PRESHEAVES
                            ) -> List[Tuple[Distributor, Distributor]]:
    """Pairs ``(phi, phi*)`` over every type, in canonical order."""
    out = []
    for X in A.base.objects:
        for phi in enumerate_presheaves(A, X, cap):
            star = left_adjoint_right_adjoint(phi)
            if star is not None:
                out.append((phi, star))
    return out


def _column_name(A: QCategory, phi: Distributor) -> str:
    X = phi.src.types[0]
    Q = A.base
    entries = ",".join(Q.hom[(X, A.types[a])].names[e] for a, e in enumerate(phi.column()))
    return f"{X}:[{entries}]"


def _hom_from_presheaves(A: QCategory, items) -> List[List[int]]:
    """``hom(psi, phi)`` is the single entry of ``psi* (x) phi``."""
    return [[compose_distributors(star_psi, phi).matrix[0][0] for phi, _ in items] for _, star_psi in items]


def _representable_index(A: QCategory, keys: Dict, a: int) -> int:
    return keys[(A.types[a], tuple(A.hom[b][a] for b in A.objects()))]


def cauchy_completion(A: QCategory, cap: int = DEFAULT_MAX_PRESHEAVES) -> CompletionResult:
    items = left_adjoint_presheaves(A, cap)
    hom = _hom_from_presheaves(A, items)
    provenance = [{"type": phi.src.types[0], "presheaf": list(phi.column())} for phi, _ in items]
    cc = QCategory(A.base, [phi.src.types[0] for phi, _ in items], hom,
                   names=[_column_name(A, phi) for phi, _ in items], provenance=provenance)
    keys = {(phi.src.types[0], phi.column()): k for k, (phi, _) in enumerate(items)}
    yoneda = QFunctor(A, cc, [_representable_index(A, keys, a) for a in A.objects()])
    return CompletionResult(cc, yoneda, [p for p, _ in items], [s for _, s in items])


def cc_functor_image(F: QFunctor, phi: Distributor) -> Distributor:
    """``B(-, F-) (x) phi`` for a left adjoint presheaf ``phi`` on the source of ``F``."""
    if left_adjoint_right_adjoint(phi) is None:
        raise NotLeftAdjoint("presheaf is not a left adjoint")
    return compose_distributors(graph(F), phi)


def is_representable(A: QCategory, phi: Distributor) -> Optional[int]:
    X = phi.src.types[0]
    col = phi.column()
    for a in A.objects():
        if A.types[a] == X and all(A.hom[b][a] == col[b] for b in A.objects()):
            return a
    return None


def is_cauchy_complete(A: QCategory, cap: int = DEFAULT_MAX_PRESHEAVES) -> bool:
    return all(is_representable(A, phi) is not None for phi, _ in left_adjoint_presheaves(A, cap))


def _symmetric_items(A, cap):
    return [(phi, star) for phi, star in left_adjoint_presheaves(A, cap)
            if star == involute_distributor(phi)]


def symmetric_completion(A: QCategory, cap: int = DEFAULT_MAX_PRESHEAVES,
                         cauchy: Optional[CompletionResult] = None) -> CompletionResult:
    """Full subcategory of the Cauchy completion on the presheaves ``phi`` with ``phi -| phi°``."""
    if not is_symmetric(A):
        raise NotSymmetric("input")
    cc = cauchy if cauchy is not None else cauchy_completion(A, cap)
    chosen = [i for i, (phi, star) in enumerate(zip(cc.presheaves, cc.adjoints))
              if star == involute_distributor(phi)]
    hom = [[cc.completion.hom[j][i] for i in chosen] for j in chosen]
    sc = QCategory(A.base, [cc.completion.types[i] for i in chosen], hom,
                   names=[cc.completion.names[i] for i in chosen],
                   provenance=[cc.completion.provenance[i] for i in chosen])
    back = {i: k for k, i in enumerate(chosen)}
    yoneda = QFunctor(A, sc, [back[cc.yoneda(a)] for a in A.objects()])
    embedding = QFunctor(sc, cc.completion, chosen)
    return CompletionResult(sc, yoneda, [cc.presheaves[i] for i in chosen], [cc.adjoints[i] for i in chosen],
                            embedding)


def is_symmetrically_complete(A: QCategory, cap: int = DEFAULT_MAX_PRESHEAVES) -> bool:
    if not is_symmetric(A):
        raise NotSymmetric("input")
    return all(is_representable(A, phi) is not None for phi, _ in _symmetric_items(A, cap))


# the comparison functor


def symmetrise_presheaf_simple(psi: Distributor, star: Distributor) -> Distributor:
    """``psi_s(a) = psi(a) & psi*(a)°``, the one-column shortcut of :func:`symmetrise_distributor`."""
    Q, A = psi.base, psi.dst
    X = psi.src.types[0]
    col = [Q.hom[(X, A.types[a])].meet_table[psi.matrix[a][0]][Q.inv(A.types[a], X, star.matrix[0][a])]
           for a in A.objects()]
    return presheaf(symmetrise(A), X, col, check=False)


def L_functor(A: QCategory, cap: int = DEFAULT_MAX_PRESHEAVES) -> LReport:
    """``phi -> A(-, S-) (x) phi`` from the symmetric completion of ``A_s`` to the symmetrised completion."""
    As = symmetrise(A)
    S = counit_functor(A, As)
    g, cg = graph(S), cograph(S)
    dom = symmetric_completion(As, cap)
    cc = cauchy_completion(A, cap)
    cod = symmetrise(cc.completion)
    position = {k: i for i, k in enumerate(cc.keys())}
    mapping, fix_ok = [], True
    for phi in dom.presheaves:
        img = compose_distributors(g, phi)
        mapping.append(position[(phi.src.types[0], img.column())])
        star = left_adjoint_right_adjoint(img)
        back = distributor_meet(compose_distributors(cg, img),
                                involute_distributor(compose_distributors(star, g)))
        if back.matrix != phi.matrix:
            fix_ok = False
    F = QFunctor(dom.completion, cod, mapping, check=False)
    ff = all(cod.hom[mapping[j]][mapping[i]] == dom.completion.hom[j][i]
             for j, i in product(dom.completion.objects(), repeat=2))
    hit = set(mapping)
    missing = [k for k in cod.objects() if k not in hit]
    return LReport(F, dom, cod, cc, len(hit) == len(mapping), not missing, ff, fix_ok, missing)


def all_symmetrisations_symmetric(A: QCategory, cap: int = DEFAULT_MAX_PRESHEAVES) -> bool:
    """Whether ``psi_s`` is a symmetric left adjoint for every left adjoint presheaf ``psi`` on ``A``."""
    return all(is_symmetric_left_adjoint_dist(symmetrise_distributor(psi))
               for psi, _ in left_adjoint_presheaves(A, cap))


# bilaterality harness


def witness_category(Q: Quantaloid, X: str, pairs) -> WitnessCategory:
    """Category on the index set of a compatible covering family, with its presheaf ``i -> f_i``."""
    pairs = tuple(pairs)
    if not premise_holds(Q, X, pairs, PLAIN):
        raise PremiseViolated("family is not compatible and covering")
    types = [f.dst for f, _ in pairs]
    n = len(pairs)
    hom = []
    for j in range(n):
        row = []
        for i in range(n):
            xi, xj = types[i], types[j]
            e = Q.comp(xi, X, xj, pairs[j][0].elem, pairs[i][1].elem)
            if i == j:
                e = Q.hom[(xi, xj)].join_table[e][Q.unit(xi)]
            row.append(e)
        hom.append(row)
    A = QCategory(Q, types, hom, names=[f"i{k}" for k in range(n)])
    psi = presheaf(A, X, [f.elem for f, _ in pairs])
    star = left_adjoint_right_adjoint(psi)
    if star is None:
        raise PremiseViolated("presheaf built from the family is not a left adjoint")
    s = symmetrise_distributor(psi)
    return WitnessCategory(A, psi, pairs, star, s, is_symmetric_left_adjoint_dist(s))


def verify_corollary_squares(Q: Quantaloid, samples: Sequence[QCategory],
                             cap: int = DEFAULT_MAX_PRESHEAVES, max_pairs: int = 24) -> SquaresReport:
    report = check_cauchy_bilateral(Q, max_pairs=max_pairs)
    if not report.holds:
        raise NotBilateral(report)
    out = SquaresReport(True)
    for k, A in enumerate(samples):
        if is_symmetric(A):
            out.symmetric_checked += 1
            cc = cauchy_completion(A, cap)
            if not is_symmetric(cc.completion):
                out.failures.append(f"sample {k}: Cauchy completion of a symmetric category is not symmetric")
            sc = symmetric_completion(A, cap, cauchy=cc)
            if sc.keys() != cc.keys():
                out.failures.append(f"sample {k}: symmetric completion differs from Cauchy completion")
        if is_cauchy_complete(A, cap):
            out.complete_checked += 1
            if not is_cauchy_complete(symmetrise(A), cap):
                out.failures.append(f"sample {k}: symmetrisation of a Cauchy complete category is not complete")
    out.passed = not out.failures
    return out
