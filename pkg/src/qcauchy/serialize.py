"""Canonical JSON for quantaloids, Q-categories and finite sites.

Output is deterministic: object keys are sorted and arrays of scalars are
written on one line, so ``dumps(load(dumps(x))) == dumps(x)``.
"""

from __future__ import annotations

import json
from itertools import product
from pathlib import Path
from typing import Any, Optional, Tuple

from .constructors.categories import FiniteCategory
from .constructors.cribles import GrothendieckTopology, make_topology
from .lattice import lattice_from_order
from .qcat import QCategory
from .quantaloid import Quantaloid

SEP = "->"


class FormatError(ValueError):
    """Input parses as JSON but does not describe the expected structure."""


def dumps(obj: Any) -> str:
    return _render(obj, 0) + "\n"


def _render(obj, level):
    pad, inner = "  " * level, "  " * (level + 1)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [f"{inner}{json.dumps(k, ensure_ascii=False)}: {_render(obj[k], level + 1)}" for k in sorted(obj)]
        return "{\n" + ",\n".join(items) + "\n" + pad + "}"
    if isinstance(obj, (list, tuple)):
        if not obj:
            return "[]"
        if all(not isinstance(v, (dict, list, tuple)) for v in obj):
            return "[" + ", ".join(json.dumps(v, ensure_ascii=False) for v in obj) + "]"
        return "[\n" + ",\n".join(inner + _render(v, level + 1) for v in obj) + "\n" + pad + "]"
    return json.dumps(obj, ensure_ascii=False)


def _key(*parts):
    return SEP.join(parts)


def _split(key, n):
    parts = key.split(SEP)
    if len(parts) != n:
        raise FormatError(f"bad key {key!r}")
    return tuple(parts)


# quantaloids


def quantaloid_to_dict(Q: Quantaloid) -> dict:
    homs, compose, involution = {}, {}, {}
    for (x, y), L in Q.hom.items():
        homs[_key(x, y)] = {"elements": list(L.names), "leq": [list(p) for p in L.covers()]}
    for (x, y, z), t in Q.compose_table.items():
        compose[_key(x, y, z)] = [list(r) for r in t]
    out = {
        "name": Q.name,
        "objects": list(Q.objects),
        "homs": homs,
        "compose": compose,
        "identity": {x: Q.hom[(x, x)].names[e] for x, e in Q.identity_elem.items()},
    }
    if Q.involutive:
        for (x, y), m in Q.involution.items():
            involution[_key(x, y)] = list(m)
        out["involution"] = involution
    return out


def quantaloid_from_dict(d: dict, check: bool = True) -> Quantaloid:
    try:
        objects = list(d["objects"])
        if any(SEP in o for o in objects):
            raise FormatError(f"object names may not contain {SEP!r}")
        hom = {}
        for k, v in d["homs"].items():
            names = list(v["elements"])
            hom[_split(k, 2)] = lattice_from_order(len(names), [tuple(p) for p in v["leq"]], names=names)
        compose = {_split(k, 3): [list(r) for r in v] for k, v in d["compose"].items()}
        identity = {x: hom[(x, x)].index(e) for x, e in d["identity"].items()}
        inv = d.get("involution")
        involution = None if inv is None else {_split(k, 2): list(v) for k, v in inv.items()}
    except (KeyError, TypeError, AttributeError) as e:
        raise FormatError(f"malformed quantaloid: {e}") from e
    for x, y in product(objects, repeat=2):
        if (x, y) not in hom:
            raise FormatError(f"missing hom {x}{SEP}{y}")
    for x, y, z in product(objects, repeat=3):
        if (x, y, z) not in compose:
            raise FormatError(f"missing composition table {_key(x, y, z)}")
    for x in objects:
        if x not in identity:
            raise FormatError(f"missing identity for {x}")
    return Quantaloid(objects, hom, compose, identity, involution, name=d.get("name", "Q"), check=check)


# categories


def category_to_dict(A: QCategory, quantaloid_ref: Optional[str] = None) -> dict:
    out = {
        "quantaloid": quantaloid_ref if quantaloid_ref is not None else quantaloid_to_dict(A.base),
        "objects": [{"name": n, "type": t} for n, t in zip(A.names, A.types)],
        "hom": [[A.hom_name(y, x) for x in A.objects()] for y in A.objects()],
    }
    if A.provenance is not None:
        # presheaf entries are element indices in hom(type, t a) of the source category
        prov = [{"object": n, "type": p["type"], "presheaf": list(p["presheaf"])}
                for n, p in zip(A.names, A.provenance)]
        out["provenance"] = prov
    return out


def category_from_dict(d: dict, base_dir: Optional[Path] = None, check: bool = True,
                       check_base: bool = True) -> QCategory:
    try:
        qd = d["quantaloid"]
        if isinstance(qd, str):
            path = Path(qd)
            if not path.is_absolute() and base_dir is not None:
                path = base_dir / path
            Q = quantaloid_from_dict(json.loads(path.read_text(encoding="utf-8")), check=check_base)
        else:
            Q = quantaloid_from_dict(qd, check=check_base)
        names = [o["name"] for o in d["objects"]]
        types = [o["type"] for o in d["objects"]]
        for t in types:
            if t not in Q.objects:
                raise FormatError(f"unknown type {t!r}")
        rows = d["hom"]
        if len(rows) != len(types) or any(len(r) != len(types) for r in rows):
            raise FormatError("hom must be a square matrix over the objects")
        hom = [[Q.hom[(types[x], types[y])].index(rows[y][x]) for x in range(len(types))] for y in range(len(types))]
        prov = d.get("provenance")
        provenance = None if prov is None else [{"type": p["type"], "presheaf": list(p["presheaf"])} for p in prov]
    except (KeyError, TypeError, AttributeError, IndexError) as e:
        raise FormatError(f"malformed category: {e}") from e
    except ValueError as e:
        if isinstance(e, FormatError):
            raise
        raise FormatError(f"malformed category: {e}") from e
    return QCategory(Q, types, hom, names=names, check=check, provenance=provenance)


# finite categories and sites


def finite_category_to_dict(C: FiniteCategory) -> dict:
    out = {
        "name": C.name,
        "objects": list(C.objects),
        "morphisms": [{"name": m, "dom": C.dom[m], "cod": C.cod[m]} for m in C.morphisms],
        "compose": [[g, f, h] for (g, f), h in sorted(C.comp.items())],
        "identities": dict(C.identities),
    }
    if C.inverse is not None:
        out["inverse"] = dict(C.inverse)
    return out


def finite_category_from_dict(d: dict) -> FiniteCategory:
    try:
        morphisms = [(m["name"], m["dom"], m["cod"]) for m in d["morphisms"]]
        comp = {(g, f): h for g, f, h in d["compose"]}
        return FiniteCategory(d["objects"], morphisms, comp, d["identities"], d.get("inverse"),
                              name=d.get("name", "C"))
    except (KeyError, TypeError, ValueError) as e:
        raise FormatError(f"malformed finite category: {e}") from e


def site_to_dict(T: GrothendieckTopology) -> dict:
    return {
        "category": finite_category_to_dict(T.category),
        "topology": {x: [sorted(S) for S in T.covering(x)] for x in T.category.objects},
    }


def site_from_dict(d: dict) -> Tuple[FiniteCategory, GrothendieckTopology]:
    C = finite_category_from_dict(d.get("category", d))
    try:
        T = make_topology(C, d["topology"])
    except (KeyError, TypeError, AttributeError) as e:
        raise FormatError(f"malformed topology: {e}") from e
    return C, T


# files


def load_json(path) -> dict:
    return json.loads(Path(path).read_text(encoding="utf-8"))


def write_text(path, text: str):
    Path(path).write_text(text, encoding="utf-8")


def detect_kind(d: dict) -> str:
    if not isinstance(d, dict):
        raise FormatError("top-level JSON value must be an object")
    if "homs" in d:
        return "quantaloid"
    if "topology" in d:
        return "site"
    if "hom" in d and "quantaloid" in d:
        return "category"
    if "morphisms" in d:
        return "finite-category"
    raise FormatError("cannot tell what this file describes")
