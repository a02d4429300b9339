"""Finite quantaloids, optionally involutive.

A quantaloid here is a finite category whose hom-sets are finite lattices and
whose composition preserves joins in each variable.  Morphisms are addressed
either by raw element indices (fast paths used by the algorithms) or by
:class:`MorphismRef` values (the public surface).
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Dict, Iterable, List, Optional, Sequence, Tuple

from .errors import InvalidQuantaloid, NoInvolution, TypeMismatch
from .lattice import FiniteLattice


@dataclass(frozen=True, order=True)
class MorphismRef:
    src: str
    dst: str
    elem: int


@dataclass(frozen=True)
class Violation:
    law: str
    detail: dict

    def __str__(self):
        inner = ", ".join(f"{k}={v}" for k, v in self.detail.items())
        return f"{self.law}: {inner}"


class Quantaloid:
    """Objects, hom lattices, composition tables, identities and an optional involution.

    ``compose[(X, Y, Z)][g][f]`` is the element of ``hom(X, Z)`` obtained from
    ``g`` in ``hom(Y, Z)`` and ``f`` in ``hom(X, Y)``.  ``involution[(X, Y)]``
    maps each element of ``hom(X, Y)`` to an element of ``hom(Y, X)``.
    """

    def __init__(
        self,
        objects: Sequence[str],
        hom: Dict[Tuple[str, str], FiniteLattice],
        compose: Dict[Tuple[str, str, str], Sequence[Sequence[int]]],
        identity: Dict[str, int],
        involution: Optional[Dict[Tuple[str, str], Sequence[int]]] = None,
        name: str = "Q",
        check: bool = True,
    ):
        self.objects = tuple(objects)
        self.hom = dict(hom)
        self.compose_table = {k: tuple(tuple(r) for r in v) for k, v in compose.items()}
        self.identity_elem = dict(identity)
        self.involution = None if involution is None else {k: tuple(v) for k, v in involution.items()}
        self.name = name
        if check:
            report = validate_quantaloid(self)
            if report:
                raise InvalidQuantaloid(report)

    def __repr__(self):
        sizes = {f"{x}->{y}": l.size for (x, y), l in self.hom.items()}
        return f"Quantaloid({self.name!r}, objects={list(self.objects)}, hom sizes={sizes})"

    def __eq__(self, other):
        if self is other:
            return True
        return (isinstance(other, Quantaloid) and self.objects == other.objects
                and self.identity_elem == other.identity_elem and self.hom == other.hom
                and self.involution == other.involution and self.compose_table == other.compose_table)

    def __hash__(self):
        return hash((self.objects, tuple(sorted(self.identity_elem.items()))))

    @property
    def involutive(self) -> bool:
        return self.involution is not None

    def lattice(self, x, y) -> FiniteLattice:
        return self.hom[(x, y)]

    # raw element paths

    def comp(self, x, y, z, g, f) -> int:
        return self.compose_table[(x, y, z)][g][f]

    def unit(self, x) -> int:
        return self.identity_elem[x]

    def inv(self, x, y, e) -> int:
        if self.involution is None:
            raise NoInvolution()
        return self.involution[(x, y)][e]

    # MorphismRef paths

    def ref(self, x, y, elem) -> MorphismRef:
        return MorphismRef(x, y, self.hom[(x, y)].index(elem))

    def morphisms(self, x, y) -> List[MorphismRef]:
        return [MorphismRef(x, y, e) for e in self.hom[(x, y)].elements()]

    def identity(self, x) -> MorphismRef:
        return MorphismRef(x, x, self.identity_elem[x])

    def bottom(self, x, y) -> MorphismRef:
        return MorphismRef(x, y, self.hom[(x, y)].bottom)

    def top(self, x, y) -> MorphismRef:
        return MorphismRef(x, y, self.hom[(x, y)].top)

    def compose(self, g: MorphismRef, f: MorphismRef) -> MorphismRef:
        if f.dst != g.src:
            raise TypeMismatch(f"cannot compose {g} after {f}: {f.dst} != {g.src}")
        return MorphismRef(f.src, g.dst, self.compose_table[(f.src, f.dst, g.dst)][g.elem][f.elem])

    def involute(self, f: MorphismRef) -> MorphismRef:
        return MorphismRef(f.dst, f.src, self.inv(f.src, f.dst, f.elem))

    def leq(self, f: MorphismRef, g: MorphismRef) -> bool:
        _same_type(f, g)
        return self.hom[(f.src, f.dst)].leq[f.elem][g.elem]

    def join(self, fs: Iterable[MorphismRef], src=None, dst=None) -> MorphismRef:
        fs = list(fs)
        if src is None:
            if not fs:
                raise TypeMismatch("empty join needs an explicit type")
            src, dst = fs[0].src, fs[0].dst
        for f in fs:
            if (f.src, f.dst) != (src, dst):
                raise TypeMismatch(f"{f} is not of type {src}->{dst}")
        return MorphismRef(src, dst, self.hom[(src, dst)].join(f.elem for f in fs))

    def meet(self, fs: Iterable[MorphismRef], src=None, dst=None) -> MorphismRef:
        fs = list(fs)
        if src is None:
            if not fs:
                raise TypeMismatch("empty meet needs an explicit type")
            src, dst = fs[0].src, fs[0].dst
        for f in fs:
            if (f.src, f.dst) != (src, dst):
                raise TypeMismatch(f"{f} is not of type {src}->{dst}")
        return MorphismRef(src, dst, self.hom[(src, dst)].meet(f.elem for f in fs))

    def elem_name(self, f: MorphismRef) -> str:
        return self.hom[(f.src, f.dst)].names[f.elem]

    def describe(self, f: MorphismRef) -> str:
        if len(self.objects) == 1:
            return self.elem_name(f)
        return f"{self.elem_name(f)}:{f.src}->{f.dst}"


def _same_type(f, g):
    if (f.src, f.dst) != (g.src, g.dst):
        raise TypeMismatch(f"{f} and {g} are not parallel")


def validate_quantaloid(Q: Quantaloid) -> List[Violation]:
    """Every violated quantaloid (and involution) law, each with a counterexample.

    Join preservation is checked on binary joins and the bottom element, which
    suffices for finite lattices.  At most one counterexample per law and
    object tuple is reported.
    """
    out: List[Violation] = []
    objs = Q.objects
    for x, y in product(objs, repeat=2):
        if (x, y) not in Q.hom:
            out.append(Violation("shape", {"missing hom": f"{x}->{y}"}))
    for x, y, z in product(objs, repeat=3):
        if (x, y, z) not in Q.compose_table:
            out.append(Violation("shape", {"missing composition": f"{x}->{y}->{z}"}))
            continue
        t = Q.compose_table[(x, y, z)]
        if len(t) != Q.hom[(y, z)].size or any(len(r) != Q.hom[(x, y)].size for r in t):
            out.append(Violation("shape", {"bad table size": f"{x}->{y}->{z}"}))
    for x in objs:
        if x not in Q.identity_elem:
            out.append(Violation("shape", {"missing identity": x}))
    if Q.involution is not None:
        for x, y in product(objs, repeat=2):
            m = Q.involution.get((x, y))
            if m is None or len(m) != Q.hom[(x, y)].size:
                out.append(Violation("shape", {"bad involution map": f"{x}->{y}"}))
    if out:
        return out

    for x, y in product(objs, repeat=2):
        L = Q.hom[(x, y)]
        ix, iy = Q.unit(x), Q.unit(y)
        for f in L.elements():
            if Q.comp(x, y, y, iy, f) != f:
                out.append(Violation("left unit", {"f": _nm(Q, x, y, f), "type": f"{x}->{y}"}))
                break
        for f in L.elements():
            if Q.comp(x, x, y, f, ix) != f:
                out.append(Violation("right unit", {"f": _nm(Q, x, y, f), "type": f"{x}->{y}"}))
                break

    for x, y, z, w in product(objs, repeat=4):
        t_xyz = Q.compose_table[(x, y, z)]
        t_xzw = Q.compose_table[(x, z, w)]
        t_yzw = Q.compose_table[(y, z, w)]
        t_xyw = Q.compose_table[(x, y, w)]
        found = None
        for h in range(Q.hom[(z, w)].size):
            row_yzw = t_yzw[h]
            row_xzw = t_xzw[h]
            for g in range(Q.hom[(y, z)].size):
                row_xyz = t_xyz[g]
                row_xyw = t_xyw[row_yzw[g]]
                for f in range(Q.hom[(x, y)].size):
                    if row_xzw[row_xyz[f]] != row_xyw[f]:
                        found = (h, g, f)
                        break
                if found:
                    break
            if found:
                break
        if found:
            h, g, f = found
            out.append(Violation("associativity", {
                "h": _nm(Q, z, w, h), "g": _nm(Q, y, z, g), "f": _nm(Q, x, y, f),
                "path": f"{x}->{y}->{z}->{w}",
            }))

    for x, y, z in product(objs, repeat=3):
        t = Q.compose_table[(x, y, z)]
        Lf, Lg, Lh = Q.hom[(x, y)], Q.hom[(y, z)], Q.hom[(x, z)]
        bad = _join_preservation(t, Lf, Lg, Lh)
        if bad:
            law, data = bad
            out.append(Violation(law, {k: _nm(Q, *tp, v) for k, (tp, v) in
                                       _label(data, x, y, z).items()} | {"path": f"{x}->{y}->{z}"}))

    if Q.involution is not None:
        out.extend(_involution_violations(Q))
    return out


def _label(data, x, y, z):
    out = {}
    for k, v in data.items():
        tp = (y, z) if k.startswith("g") else (x, y)
        out[k] = (tp, v)
    return out


def _join_preservation(t, Lf, Lg, Lh):
    for g in Lg.elements():
        row = t[g]
        if row[Lf.bottom] != Lh.bottom:
            return "bottom preservation (left)", {"g": g}
        for f1 in Lf.elements():
            for f2 in range(f1 + 1, Lf.size):
                if row[Lf.join_table[f1][f2]] != Lh.join_table[row[f1]][row[f2]]:
                    return "join preservation (left)", {"g": g, "f1": f1, "f2": f2}
    for f in Lf.elements():
        if t[Lg.bottom][f] != Lh.bottom:
            return "bottom preservation (right)", {"f": f}
        for g1 in Lg.elements():
            for g2 in range(g1 + 1, Lg.size):
                if t[Lg.join_table[g1][g2]][f] != Lh.join_table[t[g1][f]][t[g2][f]]:
                    return "join preservation (right)", {"g1": g1, "g2": g2, "f": f}
    return None


def _involution_violations(Q):
    out = []
    objs = Q.objects
    for x, y in product(objs, repeat=2):
        L = Q.hom[(x, y)]
        Lo = Q.hom[(y, x)]
        m = Q.involution[(x, y)]
        for f in L.elements():
            if Q.involution[(y, x)][m[f]] != f:
                out.append(Violation("involution idempotence", {"f": _nm(Q, x, y, f), "type": f"{x}->{y}"}))
                break
        for f, g in product(L.elements(), repeat=2):
            if L.leq[f][g] and not Lo.leq[m[f]][m[g]]:
                out.append(Violation("involution monotonicity", {
                    "f": _nm(Q, x, y, f), "g": _nm(Q, x, y, g), "type": f"{x}->{y}"}))
                break
    for x, y, z in product(objs, repeat=3):
        found = None
        for g in Q.hom[(y, z)].elements():
            for f in Q.hom[(x, y)].elements():
                lhs = Q.involution[(x, z)][Q.comp(x, y, z, g, f)]
                rhs = Q.comp(z, y, x, Q.involution[(x, y)][f], Q.involution[(y, z)][g])
                if lhs != rhs:
                    found = (g, f)
                    break
            if found:
                break
        if found:
            g, f = found
            out.append(Violation("involution reverses composition", {
                "g": _nm(Q, y, z, g), "f": _nm(Q, x, y, f), "path": f"{x}->{y}->{z}"}))
    return out


def _nm(Q, x, y, e):
    return Q.hom[(x, y)].names[e]


# residuation and adjoints


def right_residual(Q: Quantaloid, g: MorphismRef, h: MorphismRef) -> MorphismRef:
    """Greatest ``k: X->Y`` with ``g . k <= h`` for ``g: Y->Z`` and ``h: X->Z``."""
    if g.dst != h.dst:
        raise TypeMismatch(f"right residual needs a common codomain: {g}, {h}")
    x, y, z = h.src, g.src, g.dst
    return MorphismRef(x, y, right_residual_elem(Q, x, y, z, g.elem, h.elem))


def right_residual_elem(Q, x, y, z, g, h) -> int:
    t = Q.compose_table[(x, y, z)][g]
    Lh = Q.hom[(x, z)].leq
    L = Q.hom[(x, y)]
    return L.join(k for k in L.elements() if Lh[t[k]][h])


def left_residual(Q: Quantaloid, f: MorphismRef, h: MorphismRef) -> MorphismRef:
    """Greatest ``k: Y->Z`` with ``k . f <= h`` for ``f: X->Y`` and ``h: X->Z``."""
    if f.src != h.src:
        raise TypeMismatch(f"left residual needs a common domain: {f}, {h}")
    x, y, z = f.src, f.dst, h.dst
    return MorphismRef(y, z, left_residual_elem(Q, x, y, z, f.elem, h.elem))


def left_residual_elem(Q, x, y, z, f, h) -> int:
    t = Q.compose_table[(x, y, z)]
    Lh = Q.hom[(x, z)].leq
    L = Q.hom[(y, z)]
    return L.join(k for k in L.elements() if Lh[t[k][f]][h])


def is_left_adjoint(Q: Quantaloid, f: MorphismRef, g: MorphismRef) -> bool:
    """``f -| g``: ``1 <= g . f`` and ``f . g <= 1``."""
    if (f.src, f.dst) != (g.dst, g.src):
        raise TypeMismatch(f"{g} cannot be adjoint to {f}")
    x, y = f.src, f.dst
    unit_ok = Q.hom[(x, x)].leq[Q.unit(x)][Q.comp(x, y, x, g.elem, f.elem)]
    counit_ok = Q.hom[(y, y)].leq[Q.comp(y, x, y, f.elem, g.elem)][Q.unit(y)]
    return unit_ok and counit_ok


def right_adjoint_candidate(Q: Quantaloid, f: MorphismRef) -> MorphismRef:
    """Greatest ``g`` with ``f . g <= 1``; ``f`` is a left adjoint iff also ``1 <= g . f``."""
    return right_residual(Q, f, Q.identity(f.dst))


def is_symmetric_left_adjoint(Q: Quantaloid, f: MorphismRef) -> bool:
    if not Q.involutive:
        raise NoInvolution()
    return is_left_adjoint(Q, f, Q.involute(f))


# global predicates


def modularity_witness(Q: Quantaloid):
    """First ``(g, f, h)`` breaking ``g.f & h <= g.(f & g°.h)``, or None."""
    if not Q.involutive:
        raise NoInvolution()
    for z, y, x in product(Q.objects, repeat=3):
        Lf, Lg, Lh = Q.hom[(z, y)], Q.hom[(y, x)], Q.hom[(z, x)]
        gf = Q.compose_table[(z, y, x)]
        gh = Q.compose_table[(z, x, y)]
        ginv = Q.involution[(y, x)]
        for g in Lg.elements():
            go = ginv[g]
            for f in Lf.elements():
                lhs_base = gf[g][f]
                for h in Lh.elements():
                    lhs = Lh.meet_table[lhs_base][h]
                    rhs = gf[g][Lf.meet_table[f][gh[go][h]]]
                    if not Lh.leq[lhs][rhs]:
                        return (MorphismRef(y, x, g), MorphismRef(z, y, f), MorphismRef(z, x, h))
    return None


def is_modular(Q: Quantaloid) -> bool:
    return modularity_witness(Q) is None


def modular_law_holds_at(Q: Quantaloid, g: MorphismRef, f: MorphismRef, h: MorphismRef) -> bool:
    """Replay one instance of the modular law."""
    gf = Q.compose(g, f)
    lhs = Q.meet([gf, h])
    rhs = Q.compose(g, Q.meet([f, Q.compose(Q.involute(g), h)]))
    return Q.leq(lhs, rhs)


def is_locally_localic(Q: Quantaloid) -> bool:
    return all(L.is_distributive() for L in Q.hom.values())


def is_integral(Q: Quantaloid) -> bool:
    return all(Q.unit(x) == Q.hom[(x, x)].top for x in Q.objects)


def split_idempotents(Q: Quantaloid, keep_involution: bool = True) -> Quantaloid:
    """Quantaloid whose objects are idempotents ``(X, e)``.

    ``hom((X, e), (Y, f))`` holds the ``g`` with ``f.g = g = g.e``.  When ``Q`` is
    involutive and ``keep_involution`` is set, only idempotents with ``e° = e``
    become objects, so the involution restricts.
    """
    use_inv = keep_involution and Q.involutive
    idem = []
    for x in Q.objects:
        for e in Q.hom[(x, x)].elements():
            if Q.comp(x, x, x, e, e) != e:
                continue
            if use_inv and Q.inv(x, x, e) != e:
                continue
            idem.append((x, e))
    names = [f"{x}|{Q.hom[(x, x)].names[e]}" for x, e in idem]
    by_name = dict(zip(names, idem))
    hom, embed = {}, {}
    for a, b in product(names, repeat=2):
        (x, e), (y, f) = by_name[a], by_name[b]
        sub = [g for g in Q.hom[(x, y)].elements()
               if Q.comp(x, y, y, f, g) == g and Q.comp(x, x, y, g, e) == g]
        hom[(a, b)] = Q.hom[(x, y)].sublattice_order(sub)
        embed[(a, b)] = sub
    index = {k: {g: i for i, g in enumerate(v)} for k, v in embed.items()}
    compose = {}
    for a, b, c in product(names, repeat=3):
        (x, _), (y, _), (z, _) = by_name[a], by_name[b], by_name[c]
        compose[(a, b, c)] = [[index[(a, c)][Q.comp(x, y, z, g, f)] for f in embed[(a, b)]]
                              for g in embed[(b, c)]]
    identity = {a: index[(a, a)][by_name[a][1]] for a in names}
    involution = None
    if use_inv:
        involution = {}
        for a, b in product(names, repeat=2):
            (x, _), (y, _) = by_name[a], by_name[b]
            involution[(a, b)] = [index[(b, a)][Q.inv(x, y, g)] for g in embed[(a, b)]]
    return Quantaloid(names, hom, compose, identity, involution, name=f"split({Q.name})")
