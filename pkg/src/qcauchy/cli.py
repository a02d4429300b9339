"""Command-line driver.

Exit codes: 0 the property holds (or the command succeeded), 1 it fails,
2 the input could not be used (parse error, wrong type, cap exceeded).
"""

from __future__ import annotations

import argparse
import json
import sys
import time
from itertools import product
from pathlib import Path

from . import __version__
from .bilateral import DEFAULT_MAX_PAIRS, check_cauchy_bilateral, check_strong_cauchy_bilateral, replay
from .completion import (
    DEFAULT_MAX_PRESHEAVES,
    L_functor,
    cauchy_completion,
    is_cauchy_complete,
    symmetric_completion,
    witness_category,
)
from .constructors.categories import FiniteCategory, arrow_category, cyclic_group, trivial_category
from .constructors.cribles import crible_quantaloid, generate_topology, minimal_topology, quotient_quantaloid
from .constructors.metric import path_metric_category
from .constructors.quantales import (
    example_e7_quantale,
    free_quantaloid,
    group_quantale,
    interval_quantale,
    locale_quantale,
    rel_quantaloid,
)
from .errors import NoInvolution, QCauchyError
from .lattice import chain, diamond, powerset_lattice
from .qcat import QCategory, is_symmetric, symmetrise, unit_category, validate_category
from .quantaloid import Quantaloid, is_integral, is_locally_localic, modularity_witness, split_idempotents, \
    validate_quantaloid
from .serialize import (
    FormatError,
    category_from_dict,
    category_to_dict,
    detect_kind,
    dumps,
    finite_category_from_dict,
    load_json,
    quantaloid_from_dict,
    quantaloid_to_dict,
    site_from_dict,
    write_text,
)

NAMES = {
    "bilateral": "Cauchy-bilateral (compatible-family condition)",
    "strong": "strongly Cauchy-bilateral (covering-family condition)",
    "modular": "modular law gf & h <= g(f & g°h)",
    "localic": "locally localic (every hom lattice distributive)",
    "integral": "integral (each identity is the top of its endo-hom)",
    "involution": "involution laws (f°° = f, monotone, (gf)° = f°g°)",
}


class Report:
    def __init__(self, command: str, args: argparse.Namespace):
        self.data = {"command": command, "verdicts": {}, "witnesses": {}, "details": {},
                     "caps": {"max_pairs": args.max_pairs, "max_presheaves": args.max_presheaves}}
        self.lines = []
        self.start = time.perf_counter()
        self.args = args

    def verdict(self, name, value):
        self.data["verdicts"][name] = value
        self.lines.append(f"{name}: {str(value).lower()}")

    def detail(self, key, value, text=None):
        self.data["details"][key] = value
        self.lines.append(text if text is not None else f"{key}: {value}")

    def witness(self, key, value, text):
        self.data["witnesses"][key] = value
        self.lines.append(text)

    def emit(self, out=None):
        out = out if out is not None else sys.stdout
        if self.args.timing:
            self.data["timing_seconds"] = round(time.perf_counter() - self.start, 6)
        if self.args.json:
            out.write(json.dumps(self.data, ensure_ascii=False, sort_keys=True, indent=2) + "\n")
        else:
            out.write(f"$ {self.data['command']}\n")
            for line in self.lines:
                out.write(line + "\n")
            if self.args.timing:
                out.write(f"time: {self.data['timing_seconds']}s\n")


# loading


def _load_quantaloid(path, check=True) -> Quantaloid:
    d = load_json(path)
    if detect_kind(d) != "quantaloid":
        raise FormatError(f"{path} does not describe a quantaloid")
    return quantaloid_from_dict(d, check=check)


def _load_category(path) -> QCategory:
    d = load_json(path)
    if detect_kind(d) != "category":
        raise FormatError(f"{path} does not describe a Q-category")
    return category_from_dict(d, base_dir=Path(path).parent)


def _finite_category(desc: str) -> FiniteCategory:
    if desc == "trivial":
        return trivial_category()
    if desc == "arrow":
        return arrow_category()
    if desc.upper().startswith("Z") and desc[1:].isdigit():
        return cyclic_group(int(desc[1:]))
    return finite_category_from_dict(load_json(desc))


def _lattice(desc: str):
    kind, _, arg = desc.partition(":")
    if kind == "chain":
        return chain(int(arg or 2))
    if kind == "diamond":
        return diamond()
    if kind == "powerset":
        return powerset_lattice([str(k) for k in range(int(arg or 1))])
    raise FormatError(f"unknown lattice {desc!r}; use chain:N, diamond or powerset:K")


def _site(desc: str):
    if desc == "arrow-cover":
        C = arrow_category()
        return C, generate_topology(C, {"v": [["u->v"]]})
    if desc.endswith("-minimal"):
        C = _finite_category(desc[: -len("-minimal")])
        return C, minimal_topology(C)
    return site_from_dict(load_json(desc))


# commands


def cmd_validate(args) -> int:
    rep = Report(f"validate {args.path}", args)
    d = load_json(args.path)
    kind = detect_kind(d)
    rep.detail("kind", kind)
    if kind == "quantaloid":
        Q = quantaloid_from_dict(d, check=False)
        violations = validate_quantaloid(Q)
    elif kind == "category":
        A = category_from_dict(d, base_dir=Path(args.path).parent, check=False)
        violations = validate_category(A)
    elif kind == "site":
        from .constructors.cribles import validate_topology

        _, T = site_from_dict(d)
        violations = validate_topology(T)
    else:
        finite_category_from_dict(d)
        violations = []
    rep.verdict("valid", not violations)
    for v in violations:
        rep.lines.append(f"  violation: {v}")
    rep.data["witnesses"]["violations"] = [{"law": v.law, "detail": str(v.detail)} for v in violations]
    rep.emit()
    return 0 if not violations else 1


def _gen_object(args):
    k = args.kind
    if k == "interval":
        return interval_quantale(3 if args.n is None else args.n)
    if k == "e7":
        return example_e7_quantale()
    if k == "group":
        return group_quantale(_finite_category(args.category or "Z3"))
    if k == "free-cat":
        return free_quantaloid(_finite_category(args.category or "Z2"), canonical_involution=args.canonical_involution)
    if k == "locale":
        return locale_quantale(_lattice(args.lattice or "chain:2"))
    if k == "rel":
        sizes = [int(s) for s in (args.sets or "1").split(",")]
        return rel_quantaloid(sizes)
    if k == "crible":
        return crible_quantaloid(_finite_category(args.category or "Z2"))
    if k == "site-quotient":
        C, T = _site(args.site or "arrow-cover")
        return quotient_quantaloid(C, T)
    if k == "split-idempotents":
        if not args.quantaloid:
            raise FormatError("split-idempotents needs --quantaloid")
        return split_idempotents(_load_quantaloid(args.quantaloid))
    if k == "unit":
        if not args.quantaloid:
            raise FormatError("unit needs --quantaloid")
        Q = _load_quantaloid(args.quantaloid)
        return unit_category(Q, args.object or Q.objects[0])
    if k == "path-metric":
        n = 3 if args.n is None else args.n
        pts = [p for p in (args.points or "0,1").split(",") if p != ""]
        edges = []
        for e in (args.edges if args.edges is not None else "0-1").split(","):
            if e:
                a, _, b = e.partition("-")
                if a not in pts or b not in pts:
                    raise FormatError(f"edge {e!r} uses an unknown point")
                edges.append((a, b))
        return path_metric_category(pts, edges, n)
    raise FormatError(f"unknown kind {k!r}")


def cmd_gen(args) -> int:
    obj = _gen_object(args)
    text = dumps(category_to_dict(obj) if isinstance(obj, QCategory) else quantaloid_to_dict(obj))
    if args.out:
        write_text(args.out, text)
        rep = Report(f"gen {args.kind}", args)
        rep.detail("written", args.out)
        rep.emit()
    else:
        sys.stdout.write(text)
    return 0


def _describe_pairs(Q, w):
    return [[Q.describe(f), Q.describe(g)] for f, g in w.pairs]


def cmd_check(args) -> int:
    Q = _load_quantaloid(args.path)
    kind = args.property
    rep = Report(f"check {kind} {args.path}", args)
    name = NAMES[kind]
    if kind == "involution":
        ok = Q.involutive and not validate_quantaloid(Q)
        rep.verdict(name, ok)
        if not Q.involutive:
            rep.detail("reason", "no involution present")
    elif kind in ("bilateral", "strong"):
        fn = check_cauchy_bilateral if kind == "bilateral" else check_strong_cauchy_bilateral
        r = fn(Q, max_pairs=args.max_pairs, method=args.method)
        ok = r.holds
        rep.verdict(name, ok)
        rep.detail("pool_sizes", r.pool_sizes)
        if not ok:
            pairs = _describe_pairs(Q, r.witness)
            rep.witness("family", {"object": r.witness.obj, "pairs": pairs, "replays": replay(Q, r),
                                   "minimal": r.minimal},
                        f"witness at X={r.witness.obj}: " + ", ".join(f"({f}, {g})" for f, g in pairs)
                        + f"  [replay: {str(replay(Q, r)).lower()}]")
    elif kind == "modular":
        w = modularity_witness(Q)
        ok = w is None
        rep.verdict(name, ok)
        if w is not None:
            g, f, h = (Q.describe(m) for m in w)
            rep.witness("triple", {"g": g, "f": f, "h": h}, f"witness: g={g}, f={f}, h={h}")
    elif kind == "localic":
        ok = is_locally_localic(Q)
        rep.verdict(name, ok)
        if not ok:
            for (x, y), L in sorted(Q.hom.items()):
                t = L.distributivity_witness()
                if t is not None:
                    a, b, c = (L.names[e] for e in t)
                    rep.witness("triple", {"hom": f"{x}->{y}", "a": a, "b": b, "c": c},
                                f"witness in hom({x},{y}): a={a}, b={b}, c={c}")
                    break
    else:
        ok = is_integral(Q)
        rep.verdict(name, ok)
        if not ok:
            x = next(x for x in Q.objects if Q.unit(x) != Q.hom[(x, x)].top)
            L = Q.hom[(x, x)]
            rep.witness("object", x, f"witness: 1_{x} = {L.names[Q.unit(x)]} but top = {L.names[L.top]}")
    rep.emit()
    return 0 if ok else 1


def _category_summary(rep, C: QCategory, args, prefix="result"):
    rep.detail(f"{prefix}_objects", len(C))
    sym = is_symmetric(C) if C.base.involutive else None
    rep.verdict(f"{prefix} is symmetric", sym if sym is not None else "n/a")
    rep.verdict(f"{prefix} is Cauchy complete", is_cauchy_complete(C, args.max_presheaves))


def cmd_complete(args) -> int:
    A = _load_category(args.path)
    rep = Report(f"complete {args.mode} {args.path}", args)
    if args.mode == "cauchy":
        out = cauchy_completion(A, args.max_presheaves).completion
    elif args.mode == "symmetric":
        out = symmetric_completion(A, args.max_presheaves).completion
    else:
        out = symmetrise(A)
    _category_summary(rep, out, args)
    rep.detail("objects", list(out.names), "objects: " + ", ".join(out.names))
    if args.out:
        write_text(args.out, dumps(category_to_dict(out)))
        rep.detail("written", args.out)
    rep.emit()
    return 0


def cmd_compare_L(args) -> int:
    A = _load_category(args.path)
    rep = Report(f"compare-L {args.path}", args)
    r = L_functor(A, args.max_presheaves)
    rep.detail("domain_objects", len(r.domain.completion))
    rep.detail("codomain_objects", len(r.codomain))
    rep.verdict("injective on objects", r.injective)
    rep.verdict("surjective on objects", r.surjective)
    rep.verdict("fully faithful", r.fully_faithful)
    rep.verdict("phi = (A(S-,-) (x) L phi) & ((L phi)* (x) A(-,S-))° for every phi", r.fixpoint_identity)
    rep.verdict("L is an isomorphism", r.isomorphism)
    if r.missing:
        missing = [r.codomain.names[k] for k in r.missing]
        rep.witness("missing", missing, "not in the image: " + ", ".join(missing))
    rep.emit()
    return 0 if r.isomorphism else 1


def _asymmetry(C: QCategory):
    Q = C.base
    for y, x in product(C.objects(), repeat=2):
        if C.hom[y][x] != Q.inv(C.types[x], C.types[y], C.hom[x][y]):
            return y, x
    return None


def cmd_counterexample(args) -> int:
    Q = _load_quantaloid(args.path)
    if not Q.involutive:
        raise NoInvolution()
    rep = Report(f"counterexample {args.path}", args)
    r = check_cauchy_bilateral(Q, max_pairs=args.max_pairs, method=args.method)
    rep.verdict(NAMES["bilateral"], r.holds)
    if r.holds:
        rep.detail("result", "no counterexample exists over a Cauchy-bilateral base")
        rep.emit()
        return 1
    pairs = _describe_pairs(Q, r.witness)
    rep.witness("family", {"object": r.witness.obj, "pairs": pairs},
                f"witness at X={r.witness.obj}: " + ", ".join(f"({f}, {g})" for f, g in pairs))
    w = witness_category(Q, r.witness.obj, r.witness.pairs)
    rep.detail("witness_category", w.note, f"witness category: {w.note}")
    rep.verdict("psi_s is a symmetric left adjoint", w.symmetric_left_adjoint)
    # symmetric categories whose completion may fail to be symmetric
    candidates = [(f"unit category *_{x}", unit_category(Q, x)) for x in Q.objects]
    As = symmetrise(w.category)
    candidates.append(("symmetrised witness category", As))
    if is_symmetric(w.category):
        candidates.insert(0, ("witness category", w.category))
    found = None
    for label, A in candidates:
        cc = cauchy_completion(A, args.max_presheaves).completion
        bad = _asymmetry(cc)
        if bad is not None:
            found = (label, A, cc, bad)
            break
    artifact = w.category
    if found:
        label, A, cc, (y, x) = found
        artifact = A
        tx, ty = cc.types[x], cc.types[y]
        lhs = cc.hom_name(y, x)
        rhs = Q.hom[(ty, tx)].names[cc.hom[x][y]]
        rep.witness("symmetric_category", {"source": label, "completion_objects": list(cc.names),
                                           "hom": [cc.names[y], cc.names[x], lhs],
                                           "reverse_hom": [cc.names[x], cc.names[y], rhs]},
                    f"symmetric category: {label}; its Cauchy completion has {len(cc)} objects and "
                    f"hom({cc.names[y]}, {cc.names[x]}) = {lhs} while hom({cc.names[x]}, {cc.names[y]}) = {rhs}")
    else:
        rep.detail("symmetric_category", None, "symmetric category: none among the tried candidates")
    if args.out:
        write_text(args.out, dumps(category_to_dict(artifact)))
        rep.detail("written", args.out)
    rep.emit()
    return 0


# parser


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcauchy", description="Finite quantaloids, enriched categories and completions.")
    p.add_argument("--version", action="version", version=__version__)
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="machine-readable report")
    common.add_argument("--timing", action="store_true", help="append wall-clock time to the report")
    common.add_argument("--max-pairs", type=int, default=DEFAULT_MAX_PAIRS)
    common.add_argument("--max-presheaves", type=int, default=DEFAULT_MAX_PRESHEAVES)
    common.add_argument("--method", choices=["sweep", "exhaustive"], default="sweep")
    sub = p.add_subparsers(dest="command", required=True)

    s = sub.add_parser("validate", parents=[common], help="validate a quantaloid, category or site file")
    s.add_argument("path")
    s.set_defaults(func=cmd_validate)

    s = sub.add_parser("gen", parents=[common], help="write a generated structure as canonical JSON")
    s.add_argument("kind", choices=["free-cat", "group", "locale", "interval", "e7", "rel", "crible",
                                    "site-quotient", "path-metric", "split-idempotents", "unit"])
    s.add_argument("-o", "--out")
    s.add_argument("--n", type=int, help="interval cap / path-metric cap")
    s.add_argument("--category", help="trivial, arrow, Zn or a finite-category JSON file")
    s.add_argument("--canonical-involution", action="store_true")
    s.add_argument("--lattice", help="chain:N, diamond or powerset:K")
    s.add_argument("--sets", help="comma-separated set sizes, e.g. 1,2")
    s.add_argument("--site", help="arrow-cover, <category>-minimal or a site JSON file")
    s.add_argument("--quantaloid", help="quantaloid JSON file")
    s.add_argument("--object", help="object of the base for the unit category")
    s.add_argument("--points", help="comma-separated point names")
    s.add_argument("--edges", help="comma-separated edges a-b")
    s.set_defaults(func=cmd_gen)

    s = sub.add_parser("check", parents=[common], help="decide a property of a quantaloid")
    s.add_argument("property", choices=sorted(NAMES))
    s.add_argument("path")
    s.set_defaults(func=cmd_check)

    s = sub.add_parser("complete", parents=[common], help="complete or symmetrise a category")
    s.add_argument("mode", choices=["cauchy", "symmetric", "symmetrise"])
    s.add_argument("path")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_complete)

    s = sub.add_parser("compare-L", parents=[common], help="compare the two symmetric completions")
    s.add_argument("path")
    s.set_defaults(func=cmd_compare_L)

    s = sub.add_parser("counterexample", parents=[common], help="build a witness when the base is not bilateral")
    s.add_argument("path")
    s.add_argument("-o", "--out")
    s.set_defaults(func=cmd_counterexample)
    return p


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (OSError, ValueError, QCauchyError) as e:
        sys.stderr.write(f"error: {type(e).__name__}: {e}\n")
        return 2


if __name__ == "__main__":
    sys.exit(main())
