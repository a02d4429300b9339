from itertools import permutations, product

import pytest

from qcauchy.bilateral import check_cauchy_bilateral, check_strong_cauchy_bilateral
from qcauchy.completion import is_cauchy_complete
from qcauchy.constructors.categories import (
    FiniteCategory,
    arrow_category,
    cyclic_group,
    group_category,
    monoid_category,
    poset_category,
    trivial_category,
)
from qcauchy.constructors.cribles import (
    close_crible,
    crible_quantaloid,
    crible_structure,
    crible_to_subset,
    generate_topology,
    is_crible,
    make_topology,
    minimal_topology,
    nucleus_from_topology,
    nucleus_on,
    nucleus_violations,
    quotient_quantaloid,
    quotient_structure,
    reverse_crible,
    compose_cribles,
    subset_to_crible,
    validate_topology,
    check_topology,
)
from qcauchy.constructors.metric import path_metric_category, pm2, shortest_paths
from qcauchy.constructors.quantales import (
    example_e7_quantale,
    free_quantaloid,
    group_quantale,
    interval_quantale,
    locale_quantale,
    rel_quantaloid,
)
from qcauchy.errors import NotAGroupoid, NotCommutative, NotDistributive, TopologyAxiomViolated
from qcauchy.lattice import chain, diamond, lattice_from_order, powerset_lattice
from qcauchy.qcat import is_symmetric
from qcauchy.quantaloid import is_locally_localic, is_modular, split_idempotents, validate_quantaloid


def codiscrete_groupoid(objs=("p", "q")):
    """Exactly one arrow between any two objects."""
    morphisms = [(f"{x}{y}", x, y) for x, y in product(objs, repeat=2)]
    comp = {(f"{y}{z}", f"{x}{y}"): f"{x}{z}" for x, y, z in product(objs, repeat=3)}
    inverse = {f"{x}{y}": f"{y}{x}" for x, y in product(objs, repeat=2)}
    return FiniteCategory(list(objs), morphisms, comp, {x: f"{x}{x}" for x in objs}, inverse, name="codiscrete")


def symmetric_group3():
    perms = list(permutations(range(3)))
    names = ["".join(map(str, p)) for p in perms]
    mult = {(names[i], names[j]): "".join(str(perms[i][perms[j][k]]) for k in range(3))
            for i in range(6) for j in range(6)}
    return group_category(names, mult, name="S3")


GROUPOIDS = [trivial_category(), cyclic_group(2), cyclic_group(3), cyclic_group(4), codiscrete_groupoid()]


# quantales


def test_free_z2():
    Q = free_quantaloid(cyclic_group(2), canonical_involution=True)
    assert Q.hom[("*", "*")].names == ("{}", "{1}", "{σ}", "{1,σ}")
    assert validate_quantaloid(Q) == []
    assert check_strong_cauchy_bilateral(Q).holds


def test_free_quantaloid_joins_are_unions():
    Q = free_quantaloid(codiscrete_groupoid(), canonical_involution=True)
    assert validate_quantaloid(Q) == []
    L = Q.hom[("p", "q")]
    assert L == powerset_lattice(["pq"])
    assert check_strong_cauchy_bilateral(Q).holds


def test_free_quantaloid_needs_inverses_for_involution():
    with pytest.raises(NotAGroupoid):
        free_quantaloid(arrow_category(), canonical_involution=True)
    assert validate_quantaloid(free_quantaloid(arrow_category())) == []


def test_group_quantale_checks():
    with pytest.raises(NotCommutative):
        group_quantale(symmetric_group3())
    with pytest.raises(NotAGroupoid):
        group_quantale(monoid_category(["1", "e"], {("1", "1"): "1", ("1", "e"): "e", ("e", "1"): "e",
                                                    ("e", "e"): "e"}))
    assert check_cauchy_bilateral(group_quantale(cyclic_group(1))).holds
    assert check_cauchy_bilateral(group_quantale(cyclic_group(2))).holds
    rep = check_cauchy_bilateral(group_quantale(cyclic_group(3)))
    assert not rep.holds and len(rep.witness.pairs) == 1


def test_interval_quantale_basics():
    Q = interval_quantale(3)
    r = lambda k: Q.ref("*", "*", k)  # noqa: E731
    assert Q.compose(r(2), r(2)) == r(3)
    assert Q.join([r(1), r(2)]) == r(1)
    assert Q.identity("*") == Q.top("*", "*") == r(0)
    assert Q.hom[("*", "*")].names[-1] == "∞(cap)"
    assert check_strong_cauchy_bilateral(Q).holds
    with pytest.raises(ValueError):
        interval_quantale(0)


def test_locale_quantales():
    for L in (chain(2), diamond(), powerset_lattice(["x", "y"])):
        Q = locale_quantale(L)
        assert check_strong_cauchy_bilateral(Q).holds
        S = split_idempotents(Q)
        assert validate_quantaloid(S) == []
        assert check_strong_cauchy_bilateral(S).holds
    m3 = lattice_from_order(5, [(0, 1), (0, 2), (0, 3), (1, 4), (2, 4), (3, 4)])
    with pytest.raises(NotDistributive):
        locale_quantale(m3)


def test_e7_basics():
    Q = example_e7_quantale()
    r = lambda k: Q.ref("*", "*", k)  # noqa: E731
    assert Q.compose(r("a"), r("b")) == r("a")
    assert Q.compose(r("b"), r("b")) == r("b")
    assert check_cauchy_bilateral(Q).holds and not check_strong_cauchy_bilateral(Q).holds


def e7_closure_oracle():
    """Products forced by the three defining ones, 0 absorbing, unit 1, commutativity and join-distributivity."""
    L = example_e7_quantale().hom[("*", "*")]
    n = L.names
    known = {("a", "⊤"): "⊤", ("a", "a"): "b", ("a", "b"): "a"}
    for x in n:
        known[("0", x)] = "0"
        known[("1", x)] = x
    known = {**known, **{(y, x): v for (x, y), v in known.items()}}
    # b = a.a and ⊤ = 1 v a, so everything else follows by associativity and distributivity
    ix = {v: k for k, v in enumerate(n)}
    changed = True
    while changed:
        changed = False
        for x, y in product(n, repeat=2):
            if (x, y) in known:
                continue
            cand = None
            if x == "b" and ("a", y) in known and ("a", known[("a", y)]) in known:
                cand = known[("a", known[("a", y)])]
            elif x == "⊤" and ("1", y) in known and ("a", y) in known:
                cand = n[L.join2(ix[known[("1", y)]], ix[known[("a", y)]])]
            if cand is not None:
                known[(x, y)] = known[(y, x)] = cand
                changed = True
    return known


def test_e7_products_by_closure():
    Q = example_e7_quantale()
    known = e7_closure_oracle()
    assert len(known) == 25
    for (x, y), v in known.items():
        assert Q.compose(Q.ref("*", "*", x), Q.ref("*", "*", y)) == Q.ref("*", "*", v)


# path metrics


def test_path_metric_examples():
    A = pm2()
    assert A.hom_name(1, 0) == "1" and A.hom_name(0, 1) == "∞(cap)"
    assert not is_symmetric(A) and is_cauchy_complete(A)
    E = path_metric_category(["x", "y", "z"], [], 3)
    assert E.hom == ((0, 3, 3), (3, 0, 3), (3, 3, 0))


def test_shortest_paths_cap():
    d = shortest_paths(5, [(0, 1), (1, 2), (2, 3), (3, 4)], 3)
    assert d[0][:5] == [0, 1, 2, 3, 3]
    assert d[4][0] == 3


def test_path_metrics_are_cauchy_complete():
    for R in ([(0, 1), (1, 2)], [(0, 1), (1, 0)], [(0, 1), (1, 2), (2, 0)]):
        assert is_cauchy_complete(path_metric_category(range(3), R, 3))


# cribles


def test_trivial_category_cribles():
    Q = crible_quantaloid(trivial_category())
    assert Q.hom[("*", "*")].names == ("{}", "{(1,1)}")
    assert validate_quantaloid(Q) == []


def test_non_closed_span_set_rejected():
    C = cyclic_group(2)
    R = {("σ", "σ")}
    assert not is_crible(C, R)
    assert close_crible(C, R) == {("σ", "σ"), ("1", "1")}
    assert is_crible(arrow_category(), {("u->v", "u->v")})


@pytest.mark.parametrize("C", GROUPOIDS, ids=lambda C: C.name)
def test_cribles_match_subsets_on_groupoids(C):
    S = crible_structure(C)
    Q = S.quantaloid
    F = free_quantaloid(C, canonical_involution=True)
    assert validate_quantaloid(Q) == []
    for x, y in product(C.objects, repeat=2):
        cribles = S.elements[(x, y)]
        assert len(cribles) == F.hom[(x, y)].size
        for R in cribles:
            assert subset_to_crible(C, crible_to_subset(C, R)) == R
            assert crible_to_subset(C, reverse_crible(R)) == {C.inverse[s] for s in crible_to_subset(C, R)}
        for sub in _subsets(C.hom(x, y)):
            assert crible_to_subset(C, subset_to_crible(C, sub)) == sub
        for R1, R2 in product(cribles, repeat=2):
            assert crible_to_subset(C, R1 | R2) == crible_to_subset(C, R1) | crible_to_subset(C, R2)
    for x, y, z in product(C.objects, repeat=3):
        for R, T in product(S.elements[(y, z)], S.elements[(x, y)]):
            lhs = crible_to_subset(C, compose_cribles(C, R, T))
            rhs = {C.compose(g, f) for g in crible_to_subset(C, R) for f in crible_to_subset(C, T)}
            assert lhs == rhs
    assert check_strong_cauchy_bilateral(Q).holds


def _subsets(items):
    items = list(items)
    return [frozenset(i for k, i in enumerate(items) if m >> k & 1) for m in range(1 << len(items))]


def test_crible_maps_need_groupoid():
    with pytest.raises(NotAGroupoid):
        crible_to_subset(arrow_category(), set())
    with pytest.raises(NotAGroupoid):
        subset_to_crible(arrow_category(), set())


# topologies and nuclei


def test_minimal_topology_quotient_is_crible_quantaloid():
    for C in (cyclic_group(2), arrow_category(), trivial_category()):
        T = minimal_topology(C)
        assert validate_topology(T) == []
        assert nucleus_violations(T) == []
        assert quotient_quantaloid(C, T) == crible_quantaloid(C)
        j = nucleus_from_topology(T)
        for x, y in product(C.objects, repeat=2):
            for R in crible_structure(C).elements[(x, y)]:
                assert j(x, y, R) == R
    assert check_strong_cauchy_bilateral(quotient_quantaloid(cyclic_group(2), minimal_topology(cyclic_group(2)))).holds


def arrow_site():
    C = arrow_category()
    return C, generate_topology(C, {"v": [["u->v"]]})


def test_arrow_site_nucleus():
    C, T = arrow_site()
    assert validate_topology(T) == [] and nucleus_violations(T) == []
    assert set(T.covers["v"]) == {frozenset(["1_v", "u->v"]), frozenset(["u->v"])}
    R = close_crible(C, [("u->v", "u->v")])
    assert nucleus_on(T, "v", "v", R) == {("u->v", "u->v"), ("1_v", "1_v")}
    # the empty crible stays closed: no covering sieve is empty
    assert nucleus_on(T, "v", "v", frozenset()) == frozenset()


def test_arrow_site_quotient():
    C, T = arrow_site()
    S = quotient_structure(C, T)
    Q = S.quantaloid
    assert validate_quantaloid(Q) == []
    assert all(Q.hom[k].size == 2 for k in Q.hom)
    assert check_strong_cauchy_bilateral(Q).holds
    assert is_modular(Q) and is_locally_localic(Q)


def test_stability_violation():
    C = poset_category(["a", "b", "c"], [("a", "b"), ("b", "c")])
    # {a->c} covers c, but its pullback {a->b} along b->c does not cover b
    bad = make_topology(C, {"a": [["1_a"]], "b": [["1_b", "a->b"]], "c": [["1_c", "a->c", "b->c"], ["a->c"]]})
    report = validate_topology(bad)
    assert report[0].law == "stability"
    assert report[0].detail == {"object": "c", "sieve": ["a->c"], "along": "b->c"}
    with pytest.raises(TopologyAxiomViolated) as err:
        check_topology(bad)
    assert err.value.axiom == "stability"
    with pytest.raises(TopologyAxiomViolated):
        nucleus_from_topology(bad)


def test_maximality_violation():
    C = arrow_category()
    with pytest.raises(TopologyAxiomViolated) as err:
        check_topology(make_topology(C, {"u": [["1_u"]]}))
    assert err.value.axiom == "maximality"


def test_generated_topologies_on_small_posets():
    C = poset_category(["a", "b", "c"], [("a", "c"), ("b", "c")])
    for cover in (["a->c"], ["a->c", "b->c"], ["b->c"]):
        T = generate_topology(C, {"c": [cover]})
        assert validate_topology(T) == [] and nucleus_violations(T) == []
        Q = quotient_quantaloid(C, T)
        assert validate_quantaloid(Q) == []


# relations


def test_rel_quantaloid():
    Q = rel_quantaloid([1, 1])
    assert all(L.size == 2 for L in Q.hom.values())
    Q = rel_quantaloid([1, 2])
    assert Q.hom[("A0", "A1")].size == 4 and Q.hom[("A1", "A1")].size == 16
    assert is_modular(Q) and is_locally_localic(Q)
    assert check_strong_cauchy_bilateral(Q).holds
    with pytest.raises(ValueError):
        rel_quantaloid([])


@pytest.mark.parametrize("sizes", [[1], [2], [1, 1], [1, 2], [0, 1]])
def test_localic_modular_instances_are_strong(sizes):
    Q = rel_quantaloid(sizes)
    if is_modular(Q) and is_locally_localic(Q):
        assert check_strong_cauchy_bilateral(Q).holds
