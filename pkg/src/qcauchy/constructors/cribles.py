"""Quantaloids of cribles on a finite category, Grothendieck topologies and closed-crible quotients.

A crible ``R: D -> C`` is a set of spans ``(f, g)`` with a common domain,
``cod f = C`` and ``cod g = D``, closed under ``(f, g) -> (f.h, g.h)``.  It is
an element of ``hom(D, C)`` in the quantaloid.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, FrozenSet, Iterable, List, Mapping, Sequence, Tuple

from ..errors import NotAGroupoid, TopologyAxiomViolated
from ..lattice import lattice_from_order
from ..quantaloid import Quantaloid, Violation
from .categories import FiniteCategory

Span = Tuple[str, str]
Crible = FrozenSet[Span]
Sieve = FrozenSet[str]


def spans(C: FiniteCategory, D, target) -> List[Span]:
    """All spans ``D -> target``: ``(f, g)`` with ``cod f = target``, ``cod g = D``."""
    return [(f, g) for f in C.into(target) for g in C.into(D) if C.dom[f] == C.dom[g]]


def close_crible(C: FiniteCategory, gens: Iterable[Span]) -> Crible:
    out = set()
    for f, g in gens:
        for h in C.into(C.dom[f]):
            out.add((C.compose(f, h), C.compose(g, h)))
    return frozenset(out)


def is_crible(C: FiniteCategory, R: Iterable[Span]) -> bool:
    R = frozenset(R)
    return close_crible(C, R) == R


def _down_sets(principal: Sequence[FrozenSet]) -> List[FrozenSet]:
    seen = {frozenset()}
    frontier = [frozenset()]
    while frontier:
        nxt = []
        for s in frontier:
            for p in principal:
                u = s | p
                if u not in seen:
                    seen.add(u)
                    nxt.append(u)
        frontier = nxt
    return sorted(seen, key=lambda s: (len(s), sorted(s)))


def all_cribles(C: FiniteCategory, D, target) -> List[Crible]:
    return _down_sets(sorted({close_crible(C, [s]) for s in spans(C, D, target)}, key=sorted))


def crible_name(R: Crible) -> str:
    return "{" + ";".join(f"({f},{g})" for f, g in sorted(R)) + "}"


def compose_cribles(C: FiniteCategory, R: Crible, S: Crible) -> Crible:
    """``R . S`` for ``S: E -> D`` and ``R: D -> C``: spans ``(f, g)`` with some ``(f, h) in R``, ``(h, g) in S``."""
    by_h: Dict[str, List[str]] = {}
    for h, g in S:
        by_h.setdefault(h, []).append(g)
    return frozenset((f, g) for f, h in R for g in by_h.get(h, ()))


def identity_crible(C: FiniteCategory, X) -> Crible:
    return frozenset((f, f) for f in C.into(X))


def reverse_crible(R: Crible) -> Crible:
    return frozenset((g, f) for f, g in R)


@dataclass
class CribleStructure:
    """The elements of each hom as explicit cribles, aligned with a quantaloid's indices."""

    category: FiniteCategory
    quantaloid: Quantaloid
    elements: Dict[Tuple[str, str], List[Crible]]

    def index(self, D, target, R: Crible) -> int:
        return self.elements[(D, target)].index(frozenset(R))

    def crible(self, D, target, k: int) -> Crible:
        return self.elements[(D, target)][k]


def _assemble(C: FiniteCategory, elements, closure=None, name="R") -> CribleStructure:
    """Quantaloid on the given cribles with composition (and identity) pushed through ``closure``."""
    close = closure or (lambda D, target, R: R)
    objs = list(C.objects)
    pos = {k: {R: i for i, R in enumerate(v)} for k, v in elements.items()}
    hom = {}
    for k, v in elements.items():
        pairs = [(i, j) for i, R in enumerate(v) for j, S in enumerate(v) if R <= S]
        hom[k] = lattice_from_order(len(v), pairs, names=[crible_name(R) for R in v])
    compose = {}
    for x, y, z in product(objs, repeat=3):
        compose[(x, y, z)] = [[pos[(x, z)][close(x, z, compose_cribles(C, g, f))] for f in elements[(x, y)]]
                              for g in elements[(y, z)]]
    identity = {x: pos[(x, x)][close(x, x, identity_crible(C, x))] for x in objs}
    involution = {(x, y): [pos[(y, x)][reverse_crible(R)] for R in elements[(x, y)]]
                  for x, y in product(objs, repeat=2)}
    Q = Quantaloid(objs, hom, compose, identity, involution, name=name)
    return CribleStructure(C, Q, elements)


def crible_structure(C: FiniteCategory) -> CribleStructure:
    elements = {(x, y): all_cribles(C, x, y) for x, y in product(C.objects, repeat=2)}
    return _assemble(C, elements, name=f"R({C.name})")


def crible_quantaloid(C: FiniteCategory) -> Quantaloid:
    return crible_structure(C).quantaloid


# sieves and topologies


def maximal_sieve(C: FiniteCategory, X) -> Sieve:
    return frozenset(C.into(X))


def close_sieve(C: FiniteCategory, gens: Iterable[str]) -> Sieve:
    return frozenset(C.compose(f, h) for f in gens for h in C.into(C.dom[f]))


def all_sieves(C: FiniteCategory, X) -> List[Sieve]:
    return _down_sets(sorted({close_sieve(C, [f]) for f in C.into(X)}, key=sorted))


def pullback_sieve(C: FiniteCategory, S: Sieve, h: str) -> Sieve:
    """``h*S = {g | h.g in S}`` on ``dom h``."""
    return frozenset(g for g in C.into(C.dom[h]) if C.compose(h, g) in S)


@dataclass
class GrothendieckTopology:
    category: FiniteCategory
    covers: Dict[str, FrozenSet[Sieve]]

    def covering(self, X) -> List[Sieve]:
        return sorted(self.covers[X], key=lambda s: (len(s), sorted(s)))


def make_topology(C: FiniteCategory, covers: Mapping[str, Iterable[Iterable[str]]]) -> GrothendieckTopology:
    return GrothendieckTopology(C, {x: frozenset(frozenset(s) for s in covers.get(x, ())) for x in C.objects})


def minimal_topology(C: FiniteCategory) -> GrothendieckTopology:
    return GrothendieckTopology(C, {x: frozenset([maximal_sieve(C, x)]) for x in C.objects})


def generate_topology(C: FiniteCategory, covers: Mapping[str, Iterable[Iterable[str]]]) -> GrothendieckTopology:
    """Smallest topology in which each given sieve (closed first) covers."""
    J = {x: {maximal_sieve(C, x)} | {close_sieve(C, s) for s in covers.get(x, ())} for x in C.objects}
    sieves = {x: all_sieves(C, x) for x in C.objects}
    changed = True
    while changed:
        changed = False
        for x in C.objects:
            for S in list(J[x]):
                for h in C.into(x):
                    P = pullback_sieve(C, S, h)
                    if P not in J[C.dom[h]]:
                        J[C.dom[h]].add(P)
                        changed = True
            for R in sieves[x]:
                if R in J[x]:
                    continue
                if any(all(pullback_sieve(C, R, h) in J[C.dom[h]] for h in S) for S in J[x]):
                    J[x].add(R)
                    changed = True
    return GrothendieckTopology(C, {x: frozenset(v) for x, v in J.items()})


def validate_topology(T: GrothendieckTopology) -> List[Violation]:
    C = T.category
    out = []
    for x in C.objects:
        for S in T.covering(x):
            if any(f not in C.cod or C.cod[f] != x for f in S) or close_sieve(C, S) != S:
                out.append(Violation("sieve", {"object": x, "sieve": sorted(S)}))
        if maximal_sieve(C, x) not in T.covers[x]:
            out.append(Violation("maximality", {"object": x}))
    if out:
        return out
    for x in C.objects:
        for S in T.covering(x):
            for h in C.into(x):
                P = pullback_sieve(C, S, h)
                if P not in T.covers[C.dom[h]]:
                    out.append(Violation("stability", {"object": x, "sieve": sorted(S), "along": h}))
    for x in C.objects:
        for R in all_sieves(C, x):
            if R in T.covers[x]:
                continue
            for S in T.covering(x):
                if all(pullback_sieve(C, R, h) in T.covers[C.dom[h]] for h in S):
                    out.append(Violation("transitivity", {"object": x, "sieve": sorted(R), "via": sorted(S)}))
                    break
    return out


def check_topology(T: GrothendieckTopology) -> GrothendieckTopology:
    report = validate_topology(T)
    if report:
        raise TopologyAxiomViolated(report[0].law, report[0].detail)
    return T


def nucleus_on(T: GrothendieckTopology, D, target, R: Iterable[Span]) -> Crible:
    """``j(R)`` on ``hom(D, target)``: spans ``(f, g)`` such that some covering sieve ``S`` on
    ``dom f`` has ``(f.s, g.s) in R`` for all ``s in S``."""
    C = T.category
    R = frozenset(R)
    out = set()
    for f, g in spans(C, D, target):
        for S in T.covers[C.dom[f]]:
            if all((C.compose(f, s), C.compose(g, s)) in R for s in S):
                out.add((f, g))
                break
    return frozenset(out)


def nucleus_from_topology(T: GrothendieckTopology):
    """The closure operator as a function ``(D, target, R) -> j(R)``."""
    check_topology(T)
    return lambda D, target, R: nucleus_on(T, D, target, R)


def nucleus_violations(T: GrothendieckTopology) -> List[Violation]:
    """Closure-operator, meet-preservation and laxity checks for ``j`` on every hom."""
    C = T.category
    j = lambda D, t, R: nucleus_on(T, D, t, R)  # noqa: E731
    cribles = {(x, y): all_cribles(C, x, y) for x, y in product(C.objects, repeat=2)}
    out = []
    for (x, y), rs in cribles.items():
        for R in rs:
            jR = j(x, y, R)
            if not R <= jR:
                out.append(Violation("inflationary", {"hom": (x, y), "crible": crible_name(R)}))
            if j(x, y, jR) != jR:
                out.append(Violation("idempotent", {"hom": (x, y), "crible": crible_name(R)}))
            if jR not in rs:
                out.append(Violation("closure is a crible", {"hom": (x, y), "crible": crible_name(R)}))
        for R, S in product(rs, repeat=2):
            if R <= S and not j(x, y, R) <= j(x, y, S):
                out.append(Violation("monotone", {"hom": (x, y)}))
            if j(x, y, R & S) != j(x, y, R) & j(x, y, S):
                out.append(Violation("meets", {"hom": (x, y), "pair": (crible_name(R), crible_name(S))}))
    for x, y, z in product(C.objects, repeat=3):
        for S in cribles[(x, y)]:
            for R in cribles[(y, z)]:
                lhs = compose_cribles(C, j(y, z, R), j(x, y, S))
                if not lhs <= j(x, z, compose_cribles(C, R, S)):
                    out.append(Violation("lax functor", {"objects": (x, y, z)}))
    return out


def quotient_structure(C: FiniteCategory, T: GrothendieckTopology) -> CribleStructure:
    close = nucleus_from_topology(T)
    elements = {(x, y): [R for R in all_cribles(C, x, y) if close(x, y, R) == R]
                for x, y in product(C.objects, repeat=2)}
    return _assemble(C, elements, closure=close, name=f"R({C.name},J)")


def quotient_quantaloid(C: FiniteCategory, T: GrothendieckTopology) -> Quantaloid:
    return quotient_structure(C, T).quantaloid


# groupoids: cribles versus subsets


def crible_to_subset(C: FiniteCategory, R: Iterable[Span]) -> FrozenSet[str]:
    """``{f . g^-1 | (f, g) in R}`` for a crible on a groupoid."""
    if not C.is_groupoid:
        raise NotAGroupoid(C.name)
    return frozenset(C.compose(f, C.inverse[g]) for f, g in R)


def subset_to_crible(C: FiniteCategory, S: Iterable[str]) -> Crible:
    """Smallest crible containing the spans ``(s, 1_X)``."""
    if not C.is_groupoid:
        raise NotAGroupoid(C.name)
    return close_crible(C, [(s, C.identities[C.dom[s]]) for s in S])
