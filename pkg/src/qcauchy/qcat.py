"""Categories, functors and distributors enriched in a finite quantaloid.

Conventions: ``A.hom[y][x]`` is the hom-arrow ``A(y, x): t x -> t y``; a
distributor ``Phi: A -/-> B`` stores ``Phi.matrix[b][a]: t a -> t b``.  A
presheaf on ``A`` is a distributor out of :func:`unit_category`.
"""

from __future__ import annotations

from itertools import product
from typing import List, Optional, Sequence

from .errors import InvalidCategory, NoInvolution, NotLeftAdjoint, NotSymmetric, TypeMismatch
from .quantaloid import MorphismRef, Quantaloid, Violation


class QCategory:
    def __init__(self, base: Quantaloid, types: Sequence[str], hom: Sequence[Sequence[int]],
                 names: Optional[Sequence[str]] = None, check: bool = True, provenance=None):
        self.base = base
        self.types = tuple(types)
        self.hom = tuple(tuple(r) for r in hom)
        self.names = tuple(names) if names is not None else tuple(str(i) for i in range(len(self.types)))
        self.provenance = provenance
        if check:
            report = validate_category(self)
            if report:
                raise InvalidCategory(report)

    def __len__(self):
        return len(self.types)

    def __repr__(self):
        return f"QCategory(objects={list(self.names)}, types={list(self.types)})"

    def __eq__(self, other):
        return (isinstance(other, QCategory) and self.base == other.base
                and self.types == other.types and self.hom == other.hom)

    def __hash__(self):
        return hash((self.types, self.hom))

    def objects(self):
        return range(len(self.types))

    def hom_ref(self, y, x) -> MorphismRef:
        return MorphismRef(self.types[x], self.types[y], self.hom[y][x])

    def hom_name(self, y, x) -> str:
        return self.base.hom[(self.types[x], self.types[y])].names[self.hom[y][x]]


class QFunctor:
    def __init__(self, src: QCategory, dst: QCategory, mapping: Sequence[int], check: bool = True):
        self.src = src
        self.dst = dst
        self.mapping = tuple(mapping)
        if check:
            report = validate_functor(self)
            if report:
                raise InvalidCategory(report, "functor")

    def __call__(self, x):
        return self.mapping[x]

    def __repr__(self):
        return f"QFunctor({list(self.mapping)})"


class Distributor:
    def __init__(self, src: QCategory, dst: QCategory, matrix: Sequence[Sequence[int]], check: bool = True):
        self.src = src
        self.dst = dst
        self.matrix = tuple(tuple(r) for r in matrix)
        if check:
            report = validate_distributor(self)
            if report:
                raise InvalidCategory(report, "distributor")

    def __eq__(self, other):
        return (isinstance(other, Distributor) and self.matrix == other.matrix
                and self.src == other.src and self.dst == other.dst)

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"Distributor({[list(r) for r in self.matrix]})"

    @property
    def base(self):
        return self.dst.base

    def column(self, a=0):
        """Entries ``Phi(-, a)``; for a presheaf this is the whole of it."""
        return tuple(r[a] for r in self.matrix)

    def names(self):
        Q, A, B = self.base, self.src, self.dst
        return [[Q.hom[(A.types[a], B.types[b])].names[e] for a, e in enumerate(row)]
                for b, row in enumerate(self.matrix)]


Presheaf = Distributor


# construction and validation


def unit_category(Q: Quantaloid, X: str) -> QCategory:
    """One object ``*`` of type ``X`` with hom the identity of ``X``."""
    return QCategory(Q, [X], [[Q.unit(X)]], names=["*"])


def presheaf(A: QCategory, X: str, column: Sequence[int], check: bool = True) -> Distributor:
    return Distributor(unit_category(A.base, X), A, [[c] for c in column], check=check)


def validate_category(A: QCategory) -> List[Violation]:
    Q, t, h = A.base, A.types, A.hom
    out = []
    n = len(t)
    if len(h) != n or any(len(r) != n for r in h):
        return [Violation("shape", {"hom": "matrix is not square over the objects"})]
    for y, x in product(range(n), repeat=2):
        if not 0 <= h[y][x] < Q.hom[(t[x], t[y])].size:
            return [Violation("shape", {"entry": (y, x)})]
    for x in range(n):
        L = Q.hom[(t[x], t[x])]
        if not L.leq[Q.unit(t[x])][h[x][x]]:
            out.append(Violation("unit", {"object": A.names[x], "hom": L.names[h[x][x]]}))
    for z, y, x in product(range(n), repeat=3):
        c = Q.comp(t[x], t[y], t[z], h[z][y], h[y][x])
        if not Q.hom[(t[x], t[z])].leq[c][h[z][x]]:
            out.append(Violation("composition", {"z": A.names[z], "y": A.names[y], "x": A.names[x]}))
    return out


def validate_functor(F: QFunctor) -> List[Violation]:
    A, B = F.src, F.dst
    Q = A.base
    out = []
    if len(F.mapping) != len(A):
        return [Violation("shape", {"mapping": "wrong length"})]
    for x in A.objects():
        if A.types[x] != B.types[F.mapping[x]]:
            out.append(Violation("type", {"object": A.names[x]}))
    if out:
        return out
    for y, x in product(A.objects(), repeat=2):
        L = Q.hom[(A.types[x], A.types[y])]
        if not L.leq[A.hom[y][x]][B.hom[F.mapping[y]][F.mapping[x]]]:
            out.append(Violation("monotone", {"y": A.names[y], "x": A.names[x]}))
    return out


def validate_distributor(Phi: Distributor) -> List[Violation]:
    A, B, m = Phi.src, Phi.dst, Phi.matrix
    Q = B.base
    ta, tb = A.types, B.types
    if len(m) != len(B) or any(len(r) != len(A) for r in m):
        return [Violation("shape", {"matrix": f"expected {len(B)}x{len(A)}"})]
    for b, a in product(B.objects(), A.objects()):
        if not 0 <= m[b][a] < Q.hom[(ta[a], tb[b])].size:
            return [Violation("shape", {"entry": (b, a)})]
    out = []
    for b2, b, a in product(B.objects(), B.objects(), A.objects()):
        c = Q.comp(ta[a], tb[b], tb[b2], B.hom[b2][b], m[b][a])
        if not Q.hom[(ta[a], tb[b2])].leq[c][m[b2][a]]:
            out.append(Violation("left action", {"b'": B.names[b2], "b": B.names[b], "a": A.names[a]}))
    for b, a, a2 in product(B.objects(), A.objects(), A.objects()):
        c = Q.comp(ta[a2], ta[a], tb[b], m[b][a], A.hom[a][a2])
        if not Q.hom[(ta[a2], tb[b])].leq[c][m[b][a2]]:
            out.append(Violation("right action", {"b": B.names[b], "a": A.names[a], "a'": A.names[a2]}))
    return out


# symmetry


def is_symmetric(A: QCategory) -> bool:
    Q = A.base
    if not Q.involutive:
        raise NoInvolution()
    t, h = A.types, A.hom
    return all(h[x][y] == Q.inv(t[x], t[y], h[y][x]) for y, x in product(A.objects(), repeat=2))


def symmetrise(A: QCategory) -> QCategory:
    """Same objects, hom replaced by ``A(y, x) & A(x, y)°``."""
    Q = A.base
    if not Q.involutive:
        raise NoInvolution()
    t, h = A.types, A.hom
    hom = [[Q.hom[(t[x], t[y])].meet_table[h[y][x]][Q.inv(t[y], t[x], h[x][y])] for x in A.objects()]
           for y in A.objects()]
    return QCategory(Q, t, hom, names=A.names, provenance=A.provenance)


def counit_functor(A: QCategory, As: Optional[QCategory] = None) -> QFunctor:
    """The identity-on-objects functor from the symmetrisation back to ``A``."""
    As = As if As is not None else symmetrise(A)
    return QFunctor(As, A, list(A.objects()))


def identity_functor(A: QCategory) -> QFunctor:
    return QFunctor(A, A, list(A.objects()), check=False)


def compose_functors(G: QFunctor, F: QFunctor) -> QFunctor:
    if F.dst != G.src:
        raise TypeMismatch("functors are not composable")
    return QFunctor(F.src, G.dst, [G.mapping[F.mapping[x]] for x in F.src.objects()], check=False)


def functor_leq(F: QFunctor, G: QFunctor) -> bool:
    """``F <= G`` iff ``1 <= B(Fx, Gx)`` for every object x."""
    if F.src != G.src or F.dst != G.dst:
        raise TypeMismatch("functors are not parallel")
    B, Q = F.dst, F.dst.base
    for x in F.src.objects():
        tx = F.src.types[x]
        if not Q.hom[(tx, tx)].leq[Q.unit(tx)][B.hom[F.mapping[x]][G.mapping[x]]]:
            return False
    return True


# distributor algebra


def identity_distributor(A: QCategory) -> Distributor:
    return Distributor(A, A, A.hom, check=False)


def compose_distributors(Psi: Distributor, Phi: Distributor) -> Distributor:
    """``(Psi (x) Phi)(c, a) = join_b Psi(c, b) . Phi(b, a)``."""
    if Psi.src != Phi.dst:
        raise TypeMismatch("middle categories differ")
    A, B, C = Phi.src, Phi.dst, Psi.dst
    Q = C.base
    ta, tb, tc = A.types, B.types, C.types
    out = []
    for c in C.objects():
        row = []
        for a in A.objects():
            L = Q.hom[(ta[a], tc[c])]
            acc = L.bottom
            for b in B.objects():
                acc = L.join_table[acc][Q.comp(ta[a], tb[b], tc[c], Psi.matrix[c][b], Phi.matrix[b][a])]
            row.append(acc)
        out.append(row)
    return Distributor(A, C, out, check=False)


def tensor(*ds: Distributor) -> Distributor:
    """Composite of a chain written left to right as in ``Xi (x) Psi (x) Phi``."""
    out = ds[-1]
    for d in reversed(ds[:-1]):
        out = compose_distributors(d, out)
    return out


def _parallel(Phi, Psi):
    if Phi.src != Psi.src or Phi.dst != Psi.dst:
        raise TypeMismatch("distributors are not parallel")


def distributor_leq(Phi: Distributor, Psi: Distributor) -> bool:
    _parallel(Phi, Psi)
    Q, A, B = Phi.base, Phi.src, Phi.dst
    return all(Q.hom[(A.types[a], B.types[b])].leq[Phi.matrix[b][a]][Psi.matrix[b][a]]
               for b, a in product(B.objects(), A.objects()))


def distributor_meet(Phi: Distributor, Psi: Distributor) -> Distributor:
    _parallel(Phi, Psi)
    Q, A, B = Phi.base, Phi.src, Phi.dst
    m = [[Q.hom[(A.types[a], B.types[b])].meet_table[Phi.matrix[b][a]][Psi.matrix[b][a]] for a in A.objects()]
         for b in B.objects()]
    return Distributor(A, B, m, check=False)


def distributor_join(Phi: Distributor, Psi: Distributor) -> Distributor:
    _parallel(Phi, Psi)
    Q, A, B = Phi.base, Phi.src, Phi.dst
    m = [[Q.hom[(A.types[a], B.types[b])].join_table[Phi.matrix[b][a]][Psi.matrix[b][a]] for a in A.objects()]
         for b in B.objects()]
    return Distributor(A, B, m, check=False)


def graph(F: QFunctor) -> Distributor:
    """``B(-, F-): A -/-> B``."""
    B = F.dst
    return Distributor(F.src, B, [[B.hom[y][F.mapping[x]] for x in F.src.objects()] for y in B.objects()],
                       check=False)


def cograph(F: QFunctor) -> Distributor:
    """``B(F-, -): B -/-> A``, right adjoint to :func:`graph`."""
    B = F.dst
    return Distributor(B, F.src, [[B.hom[F.mapping[x]][y] for y in B.objects()] for x in F.src.objects()],
                       check=False)


def involute_distributor(Phi: Distributor) -> Distributor:
    """``Phi°(a, b) = Phi(b, a)°`` for a distributor between symmetric categories."""
    Q, A, B = Phi.base, Phi.src, Phi.dst
    if not Q.involutive:
        raise NoInvolution()
    for cat, label in ((A, "source"), (B, "target")):
        if not is_symmetric(cat):
            raise NotSymmetric(label)
    m = [[Q.inv(A.types[a], B.types[b], Phi.matrix[b][a]) for b in B.objects()] for a in A.objects()]
    return Distributor(B, A, m, check=False)


def right_adjoint_candidate_dist(Phi: Distributor) -> Distributor:
    """Greatest ``Psi: B -/-> A`` with ``Phi (x) Psi <= B``.

    ``Psi(a, b) = meet_{b'} [Phi(b', a), B(b', b)]`` where ``[g, h]`` is the right residual.
    """
    from .quantaloid import right_residual_elem

    Q, A, B = Phi.base, Phi.src, Phi.dst
    ta, tb = A.types, B.types
    m = []
    for a in A.objects():
        row = []
        for b in B.objects():
            L = Q.hom[(tb[b], ta[a])]
            acc = L.top
            for b2 in B.objects():
                r = right_residual_elem(Q, tb[b], ta[a], tb[b2], Phi.matrix[b2][a], B.hom[b2][b])
                acc = L.meet_table[acc][r]
            row.append(acc)
        m.append(row)
    return Distributor(B, A, m, check=False)


def is_left_adjoint_dist(Phi: Distributor, Psi: Distributor) -> bool:
    """``Phi -| Psi``: ``A <= Psi (x) Phi`` and ``Phi (x) Psi <= B``."""
    if Psi.src != Phi.dst or Psi.dst != Phi.src:
        raise TypeMismatch("not a candidate adjoint pair")
    unit = distributor_leq(identity_distributor(Phi.src), compose_distributors(Psi, Phi))
    return unit and distributor_leq(compose_distributors(Phi, Psi), identity_distributor(Phi.dst))


def left_adjoint_right_adjoint(Phi: Distributor) -> Optional[Distributor]:
    """The right adjoint of ``Phi`` if it is a left adjoint, else None."""
    cand = right_adjoint_candidate_dist(Phi)
    return cand if is_left_adjoint_dist(Phi, cand) else None


def symmetrise_distributor(Psi: Distributor) -> Distributor:
    """Symmetric part of a left adjoint ``Psi: A -/-> B``, a distributor ``A_s -/-> B_s``.

    Computed as ``(B(S-, -) (x) Psi (x) A(-, S-)) & (A(S-, -) (x) Psi* (x) B(-, S-))°``
    with ``S`` the counit functors of the symmetrisations.
    """
    star = left_adjoint_right_adjoint(Psi)
    if star is None:
        raise NotLeftAdjoint("distributor is not a left adjoint")
    A, B = Psi.src, Psi.dst
    As, Bs = symmetrise(A), symmetrise(B)
    SA, SB = counit_functor(A, As), counit_functor(B, Bs)
    first = tensor(cograph(SB), Psi, graph(SA))
    second = tensor(cograph(SA), star, graph(SB))
    return distributor_meet(first, involute_distributor(second))


def is_symmetric_left_adjoint_dist(Phi: Distributor) -> bool:
    """``Phi -| Phi°`` for a distributor between symmetric categories."""
    return is_left_adjoint_dist(Phi, involute_distributor(Phi))
