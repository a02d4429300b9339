"""Builders for the concrete quantales and quantaloids used as examples."""

from __future__ import annotations

from itertools import product
from typing import Optional, Sequence

from ..errors import NotAGroupoid, NotCommutative, NotDistributive
from ..lattice import FiniteLattice, lattice_from_order, powerset_lattice
from ..quantaloid import Quantaloid
from .categories import FiniteCategory

OBJ = "*"


def one_object_quantale(lattice: FiniteLattice, mult, unit: int, involution: Optional[Sequence[int]] = None,
                        name="Q", obj=OBJ) -> Quantaloid:
    """Quantale on ``lattice`` with ``mult[g][f] = g.f``.  ``involution=None`` means none."""
    inv = None if involution is None else {(obj, obj): list(involution)}
    return Quantaloid([obj], {(obj, obj): lattice}, {(obj, obj, obj): mult}, {obj: unit}, inv, name=name)


def _bits(mask):
    k = 0
    while mask:
        if mask & 1:
            yield k
        mask >>= 1
        k += 1


def free_quantaloid(C: FiniteCategory, canonical_involution: bool = False, name=None) -> Quantaloid:
    """Subsets of each ``C(X, Y)`` with pointwise composition; joins are unions.

    With ``canonical_involution`` the involution sends ``S`` to ``{s^-1 : s in S}``,
    which needs ``C`` to be a groupoid.
    """
    if canonical_involution and not C.is_groupoid:
        raise NotAGroupoid(f"{C.name} has no inverse map")
    homs = {(x, y): C.hom(x, y) for x, y in product(C.objects, repeat=2)}
    pos = {k: {m: i for i, m in enumerate(v)} for k, v in homs.items()}
    lattices = {k: powerset_lattice(v) for k, v in homs.items()}
    compose = {}
    for x, y, z in product(C.objects, repeat=3):
        fs, gs = homs[(x, y)], homs[(y, z)]
        target = pos[(x, z)]
        # composite of singletons, then unions
        single = [[1 << target[C.compose(g, f)] for f in fs] for g in gs]
        table = []
        for gm in range(1 << len(gs)):
            row = []
            for fm in range(1 << len(fs)):
                acc = 0
                for gi in _bits(gm):
                    for fi in _bits(fm):
                        acc |= single[gi][fi]
                row.append(acc)
            table.append(row)
        compose[(x, y, z)] = table
    identity = {x: 1 << pos[(x, x)][C.identities[x]] for x in C.objects}
    involution = None
    if canonical_involution:
        involution = {}
        for x, y in product(C.objects, repeat=2):
            back = pos[(y, x)]
            involution[(x, y)] = [
                sum(1 << back[C.inverse[homs[(x, y)][i]]] for i in _bits(m))
                for m in range(1 << len(homs[(x, y)]))
            ]
    return Quantaloid(list(C.objects), lattices, compose, identity, involution,
                      name=name or f"Q({C.name})")


def group_quantale(G: FiniteCategory, name=None) -> Quantaloid:
    """Subsets of a commutative group with pointwise product and the trivial involution."""
    if len(G.objects) != 1 or not G.is_groupoid:
        raise NotAGroupoid(f"{G.name} is not a one-object group")
    for a, b in product(G.morphisms, repeat=2):
        if G.compose(a, b) != G.compose(b, a):
            raise NotCommutative(f"{a}.{b} != {b}.{a} in {G.name}")
    Q = free_quantaloid(G, canonical_involution=False)
    obj = G.objects[0]
    size = Q.hom[(obj, obj)].size
    return Quantaloid(Q.objects, Q.hom, Q.compose_table, Q.identity_elem,
                      {(obj, obj): list(range(size))}, name=name or f"Q({G.name}) trivial")


def interval_quantale(N: int) -> Quantaloid:
    """Truncation of the non-negative reals under addition, with ``N`` standing for infinity.

    Element ``k`` is the number ``k``; the order is reversed (``x <= y`` iff ``x >= y``
    numerically), so joins are numeric minima and the unit ``0`` is the top.
    """
    if N < 1:
        raise ValueError("N must be at least 1")
    names = [str(k) for k in range(N)] + ["∞(cap)"]
    L = lattice_from_order(N + 1, [(k + 1, k) for k in range(N)], names=names)
    mult = [[min(x + y, N) for y in range(N + 1)] for x in range(N + 1)]
    return one_object_quantale(L, mult, 0, list(range(N + 1)), name=f"interval({N})")


def locale_quantale(L: FiniteLattice, name="locale") -> Quantaloid:
    """A finite distributive lattice as a quantale under meet, unit top, trivial involution."""
    if not L.is_distributive():
        raise NotDistributive(f"witness {L.distributivity_witness()}")
    return one_object_quantale(L, L.meet_table, L.top, list(L.elements()), name=name)


E7_NAMES = ["0", "1", "⊤", "a", "b"]
_E7_PRODUCTS = {
    ("⊤", "⊤"): "⊤", ("⊤", "a"): "⊤", ("⊤", "b"): "⊤",
    ("a", "a"): "b", ("a", "b"): "a", ("b", "b"): "b",
}


def e7_lattice() -> FiniteLattice:
    """``0 < b < 1 < ⊤`` and ``0 < a < ⊤`` with ``a`` incomparable to ``b`` and ``1``."""
    i = {n: k for k, n in enumerate(E7_NAMES)}
    pairs = [(i["0"], i["b"]), (i["b"], i["1"]), (i["1"], i["⊤"]), (i["0"], i["a"]), (i["a"], i["⊤"])]
    return lattice_from_order(5, pairs, names=E7_NAMES)


def e7_product(x: str, y: str) -> str:
    if "0" in (x, y):
        return "0"
    if x == "1":
        return y
    if y == "1":
        return x
    return _E7_PRODUCTS.get((x, y)) or _E7_PRODUCTS[(y, x)]


def example_e7_quantale(identity_involution: bool = True) -> Quantaloid:
    """Five-element commutative quantale: unit 1, ``a.⊤ = ⊤``, ``a.a = b``, ``a.b = a``."""
    L = e7_lattice()
    mult = [[L.index(e7_product(g, f)) for f in E7_NAMES] for g in E7_NAMES]
    inv = list(range(5)) if identity_involution else None
    return one_object_quantale(L, mult, L.index("1"), inv, name="e7")


def rel_quantaloid(sets: Sequence[Sequence], names: Optional[Sequence[str]] = None) -> Quantaloid:
    """Finite sets and relations; the involute of a relation is its opposite.

    ``sets`` may also be a list of sizes, in which case set ``k`` is ``0..n-1``.
    """
    if not sets:
        raise ValueError("need at least one set")
    sets = [list(range(s)) if isinstance(s, int) else list(s) for s in sets]
    names = list(names) if names else [f"A{k}" for k in range(len(sets))]
    sets_by = dict(zip(names, sets))
    cells, pos = {}, {}
    for a, b in product(names, repeat=2):
        cells[(a, b)] = [(x, y) for x in sets_by[a] for y in sets_by[b]]
        pos[(a, b)] = {c: i for i, c in enumerate(cells[(a, b)])}
    hom = {k: powerset_lattice([f"({x},{y})" for x, y in v]) for k, v in cells.items()}
    compose = {}
    for a, b, c in product(names, repeat=3):
        R, S = cells[(a, b)], cells[(b, c)]
        tgt = pos[(a, c)]
        single = [[(1 << tgt[(r[0], s[1])]) if r[1] == s[0] else 0 for r in R] for s in S]
        table = []
        for sm in range(1 << len(S)):
            row = []
            for rm in range(1 << len(R)):
                acc = 0
                for si in _bits(sm):
                    for ri in _bits(rm):
                        acc |= single[si][ri]
                row.append(acc)
            table.append(row)
        compose[(a, b, c)] = table
    identity = {a: sum(1 << pos[(a, a)][(x, x)] for x in sets_by[a]) for a in names}
    involution = {}
    for a, b in product(names, repeat=2):
        back = pos[(b, a)]
        involution[(a, b)] = [
            sum(1 << back[(cells[(a, b)][i][1], cells[(a, b)][i][0])] for i in _bits(m))
            for m in range(1 << len(cells[(a, b)]))
        ]
    return Quantaloid(names, hom, compose, identity, involution,
                      name="Rel(" + ",".join(str(len(s)) for s in sets) + ")")
