"""Small ordinary categories given by full composition tables."""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Optional, Sequence, Tuple

from ..errors import InvalidCategoryTable


class FiniteCategory:
    """Objects, named morphisms with domain/codomain, and a total composition table.

    ``comp[(g, f)]`` is ``g . f`` and is defined exactly when ``cod f == dom g``.
    ``inverse`` is optional; when present the category is a groupoid.
    """

    def __init__(
        self,
        objects: Sequence[str],
        morphisms: Sequence[Tuple[str, str, str]],
        comp: Dict[Tuple[str, str], str],
        identities: Dict[str, str],
        inverse: Optional[Dict[str, str]] = None,
        name: str = "C",
    ):
        self.objects = tuple(objects)
        self.morphisms = tuple(m for m, _, _ in morphisms)
        self.dom = {m: d for m, d, _ in morphisms}
        self.cod = {m: c for m, _, c in morphisms}
        self.comp = dict(comp)
        self.identities = dict(identities)
        self.inverse = None if inverse is None else dict(inverse)
        self.name = name
        self._validate()

    def __repr__(self):
        return f"FiniteCategory({self.name!r}, objects={list(self.objects)}, morphisms={len(self.morphisms)})"

    def hom(self, x, y) -> List[str]:
        return [m for m in self.morphisms if self.dom[m] == x and self.cod[m] == y]

    def into(self, y) -> List[str]:
        return [m for m in self.morphisms if self.cod[m] == y]

    def compose(self, g, f) -> str:
        return self.comp[(g, f)]

    @property
    def is_groupoid(self):
        return self.inverse is not None

    def _validate(self):
        if len(set(self.morphisms)) != len(self.morphisms):
            raise InvalidCategoryTable("duplicate morphism names")
        for m in self.morphisms:
            if self.dom[m] not in self.objects or self.cod[m] not in self.objects:
                raise InvalidCategoryTable(f"morphism {m} has an unknown endpoint")
        for x in self.objects:
            i = self.identities.get(x)
            if i is None or self.dom[i] != x or self.cod[i] != x:
                raise InvalidCategoryTable(f"bad identity for {x}")
        for g, f in product(self.morphisms, repeat=2):
            if self.cod[f] != self.dom[g]:
                continue
            h = self.comp.get((g, f))
            if h is None:
                raise InvalidCategoryTable(f"missing composite {g} . {f}")
            if self.dom[h] != self.dom[f] or self.cod[h] != self.cod[g]:
                raise InvalidCategoryTable(f"composite {g} . {f} = {h} has the wrong type")
        for f in self.morphisms:
            if self.comp[(self.identities[self.cod[f]], f)] != f or self.comp[(f, self.identities[self.dom[f]])] != f:
                raise InvalidCategoryTable(f"unit law fails at {f}")
        for h, g, f in product(self.morphisms, repeat=3):
            if self.cod[f] != self.dom[g] or self.cod[g] != self.dom[h]:
                continue
            if self.comp[(h, self.comp[(g, f)])] != self.comp[(self.comp[(h, g)], f)]:
                raise InvalidCategoryTable(f"associativity fails at {h}, {g}, {f}")
        if self.inverse is not None:
            for m in self.morphisms:
                n = self.inverse.get(m)
                if n is None or self.comp.get((m, n)) != self.identities[self.cod[m]] \
                        or self.comp.get((n, m)) != self.identities[self.dom[m]]:
                    raise InvalidCategoryTable(f"{m} has no valid inverse")


def group_category(elements: Sequence[str], mult: Dict[Tuple[str, str], str], name="G", obj="*") -> FiniteCategory:
    """One-object groupoid of a finite group; ``mult[(a, b)]`` is ``a.b``."""
    unit = next(e for e in elements if all(mult[(e, x)] == x and mult[(x, e)] == x for x in elements))
    inverse = {}
    for a in elements:
        inv = [b for b in elements if mult[(a, b)] == unit]
        if not inv:
            raise InvalidCategoryTable(f"{a} has no inverse")
        inverse[a] = inv[0]
    return FiniteCategory([obj], [(e, obj, obj) for e in elements], dict(mult), {obj: unit}, inverse, name=name)


def monoid_category(elements, mult, name="M", obj="*") -> FiniteCategory:
    unit = next(e for e in elements if all(mult[(e, x)] == x and mult[(x, e)] == x for x in elements))
    return FiniteCategory([obj], [(e, obj, obj) for e in elements], dict(mult), {obj: unit}, None, name=name)


def cyclic_group_names(n: int) -> List[str]:
    if n == 2:
        return ["1", "σ"]
    if n == 3:
        return ["1", "a", "b"]
    return ["1"] + [f"g{k}" for k in range(1, n)]


def cyclic_group(n: int) -> FiniteCategory:
    """Z/n as a one-object groupoid; Z/3 is ``{1, a, b}`` with ``a.a = b`` and Z/2 is ``{1, σ}``."""
    if n < 1:
        raise ValueError("group order must be positive")
    names = cyclic_group_names(n)
    mult = {(names[i], names[j]): names[(i + j) % n] for i in range(n) for j in range(n)}
    return group_category(names, mult, name=f"Z{n}")


def poset_category(elements: Sequence[str], leq_pairs, name="P") -> FiniteCategory:
    """Thin category of a finite poset; the morphism ``x->y`` exists iff ``x <= y``."""
    n = len(elements)
    idx = {e: i for i, e in enumerate(elements)}
    leq = [[i == j for j in range(n)] for i in range(n)]
    for a, b in leq_pairs:
        leq[idx[a]][idx[b]] = True
    for k, i, j in product(range(n), repeat=3):
        if leq[i][k] and leq[k][j]:
            leq[i][j] = True
    for i, j in product(range(n), repeat=2):
        if i != j and leq[i][j] and leq[j][i]:
            raise InvalidCategoryTable(f"not antisymmetric at {elements[i]}, {elements[j]}")

    def mname(i, j):
        return f"1_{elements[i]}" if i == j else f"{elements[i]}->{elements[j]}"

    morphisms, comp = [], {}
    for i, j in product(range(n), repeat=2):
        if leq[i][j]:
            morphisms.append((mname(i, j), elements[i], elements[j]))
    for i, j, k in product(range(n), repeat=3):
        if leq[i][j] and leq[j][k]:
            comp[(mname(j, k), mname(i, j))] = mname(i, k)
    ids = {e: mname(i, i) for i, e in enumerate(elements)}
    return FiniteCategory(elements, morphisms, comp, ids, None, name=name)


def arrow_category() -> FiniteCategory:
    """Two objects ``u, v`` and a single non-identity arrow ``u->v``."""
    return poset_category(["u", "v"], [("u", "v")], name="arrow")


def trivial_category() -> FiniteCategory:
    return FiniteCategory(["*"], [("1", "*", "*")], {("1", "1"): "1"}, {"*": "1"}, {"1": "1"}, name="1")
