from itertools import permutations

import pytest

from devissage.finite_groups import (
    FiniteGroup,
    GroupClass,
    GroupError,
    LimitExceeded,
    alternating,
    automorphism_count,
    builtin_groups,
    class_membership,
    cyclic,
    direct_product,
    extend_homomorphism,
    from_permutations,
    identify,
    parse_class_spec,
    parse_group_spec,
    series,
    sylow_subgroup,
)

CLASSES = [GroupClass("prime-to", 2), GroupClass("prime-to", 3), GroupClass("solvable"),
           GroupClass("ell", 2), GroupClass("ell", 3)]


@pytest.fixture(scope="module")
def small():
    return builtin_groups(12)


def perm_closure(gens):
    """Set closure of permutation tuples, independent of the Cayley machinery."""
    ident = tuple(range(len(gens[0])))
    seen = {ident}
    frontier = [ident]
    while frontier:
        nxt = []
        for p in frontier:
            for g in gens:
                q = tuple(g[x] for x in p)
                if q not in seen:
                    seen.add(q)
                    nxt.append(q)
        frontier = nxt
    return seen


def brute_force_automorphisms(G):
    count = 0
    for perm in permutations(range(1, G.order)):
        f = (0,) + perm
        if all(f[G.mul(a, b)] == G.mul(f[a], f[b]) for a in G.elements for b in G.elements):
            count += 1
    return count


def test_from_permutations_examples():
    S3 = from_permutations(["(1 2)", "(1 2 3)"])
    assert S3.order == 6 and not S3.is_abelian()
    V = from_permutations(["(1 2)(3 4)", "(1 3)(2 4)"])
    assert V.order == 4 and V.is_abelian()
    D4 = from_permutations(["(1 2 3 4)", "(1 3)"])
    assert D4.order == len(perm_closure([(1, 2, 3, 0), (2, 1, 0, 3)])) == 8
    assert D4.labels[0] == (0, 1, 2, 3)


def test_from_permutations_limit():
    with pytest.raises(LimitExceeded):
        from_permutations(["(1 2)", "(1 2 3 4 5)"], limit=100)


def test_validate_rejects_non_group():
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1], [1, 1]], [1]).validate()
    with pytest.raises(GroupError):
        FiniteGroup([[0, 1, 2], [1, 2, 0], [2, 0, 1]], []).validate()  # generators do not generate


def test_builtins_are_groups():
    for spec, G in builtin_groups(48).items():
        G.validate()
        assert G.name == spec


@pytest.mark.parametrize("spec, order", [("C6", 6), ("S3", 6), ("A4", 12), ("D4", 8), ("Q8", 8),
                                         ("C2xC3", 6), ("perm:(1 2),(1 2 3)", 6), ("S4", 24), ("A5", 60)])
def test_group_spec_dsl(spec, order):
    assert parse_group_spec(spec).order == order


def test_group_spec_errors():
    for bad in ("X3", "S6", "Q4", "C2y"):
        with pytest.raises(GroupError):
            parse_group_spec(bad)


def test_series_examples(small):
    S3 = small["S3"]
    derived = series(S3, "derived")
    assert [len(t) for t in derived] == [6, 3, 1]
    lower = series(S3, "lower_central")
    assert [len(t) for t in lower] == [6, 3]  # stable at A_3
    assert all(S3.is_normal(t) for t in derived + lower)
    assert [len(t) for t in series(small["C6"], "derived")] == [6, 1]


def test_class_membership_examples(small):
    S3, C6 = small["S3"], small["C6"]
    assert class_membership(S3, GroupClass("solvable"))
    assert not class_membership(S3, GroupClass("nilpotent"))
    assert class_membership(C6, GroupClass("prime-to", 5))
    assert not class_membership(C6, GroupClass("prime-to", 3))
    assert not class_membership(small["A4"], GroupClass("ell", 2))
    assert not class_membership(parse_group_spec("A5"), GroupClass("solvable"))


def test_class_spec_parsing():
    assert parse_class_spec("sol") == GroupClass("solvable")
    assert parse_class_spec("nil") == GroupClass("nilpotent")
    assert parse_class_spec("ell:2") == parse_class_spec("ell(2)") == GroupClass("ell", 2)
    assert parse_class_spec("prime-to:3") == GroupClass("prime-to", 3)
    with pytest.raises(GroupError):
        parse_class_spec("ell:4")
    with pytest.raises(GroupError):
        parse_class_spec("abelian")


def test_sylow_examples(small):
    assert len(sylow_subgroup(small["C6"], 2)) == 2
    P = sylow_subgroup(small["C12"], 2)
    assert len(P) == 4 and any(small["C12"].element_order(x) == 4 for x in P)
    S3 = small["S3"]
    assert sylow_subgroup(S3, 3) == series(S3, "derived")[1]
    assert sylow_subgroup(S3, 5) == frozenset([0])


def test_sylow_orders_on_corpus():
    for spec, G in builtin_groups(24).items():
        for ell in (2, 3, 5):
            P = sylow_subgroup(G, ell)
            part = 1
            while G.order % (part * ell) == 0:
                part *= ell
            assert len(P) == part, (spec, ell)
            assert G.subgroup(P) == P


@pytest.mark.parametrize("spec, expected", [("C2", 1), ("S3", 6), ("C2xC2", 6), ("C5", 4), ("Q8", 24),
                                            ("D4", 8)])
def test_automorphism_count(spec, expected):
    G = parse_group_spec(spec)
    assert automorphism_count(G) == expected
    if G.order <= 6:
        assert brute_force_automorphisms(G) == expected


def test_automorphism_limit():
    with pytest.raises(LimitExceeded):
        automorphism_count(parse_group_spec("S4"), limit=10)


def test_extend_homomorphism_rejects_bad_images(small):
    S3 = small["S3"]
    C2 = small["C2"]
    assert extend_homomorphism(S3, C2, [1, 0]) is not None  # sign map
    assert extend_homomorphism(S3, C2, [0, 1]) is None


def test_identify():
    assert identify(parse_group_spec("perm:(1 2),(1 2 3)")) == "S3"
    assert identify(parse_group_spec("D2")) == "C2xC2"
    assert identify(parse_group_spec("C2xC3")) == "C6"


def _subgroup_groups(G):
    return [G.subgroup_group(H)[0] for H in G.all_subgroups()]


def _quotient_groups(G):
    return [G.quotient(N)[0] for N in G.normal_subgroups()]


@pytest.mark.parametrize("c", CLASSES, ids=str)
def test_closure_properties_of_compliant_classes(c, small):
    members = [G for G in small.values() if class_membership(G, c)]
    assert any(G.order > 1 for G in members)
    for G in members:
        assert all(class_membership(H, c) for H in _subgroup_groups(G))
        assert all(class_membership(Q, c) for Q in _quotient_groups(G))
    for G in members[:8]:
        for H in members[:8]:
            if G.order * H.order <= 48:
                assert class_membership(direct_product(G, H), c)
    # extensions: N and G/N in c forces G in c
    for G in builtin_groups(24).values():
        for N in G.normal_subgroups():
            sub, _ = G.subgroup_group(N)
            Q, _ = G.quotient(N)
            if class_membership(sub, c) and class_membership(Q, c):
                assert class_membership(G, c)


def test_nilpotent_not_extension_closed(small):
    S3 = small["S3"]
    A3 = series(S3, "derived")[1]
    nil = GroupClass("nilpotent")
    assert class_membership(S3.subgroup_group(A3)[0], nil)
    assert class_membership(S3.quotient(A3)[0], nil)
    assert not class_membership(S3, nil)
    assert not nil.extension_closed


def test_quotient_ordering_and_projection(small):
    S3 = small["S3"]
    A3 = series(S3, "derived")[1]
    Q, proj = S3.quotient(A3)
    assert Q.order == 2 and proj[0] == 0
    assert all(proj[S3.mul(a, b)] == Q.mul(proj[a], proj[b]) for a in S3.elements for b in S3.elements)
    with pytest.raises(GroupError):
        S3.quotient(S3.subgroup([1]))


def test_normal_subgroup_counts():
    expected = {"S3": 3, "S4": 4, "A4": 3, "Q8": 6, "D4": 6, "C12": 6, "C2xC2": 5}
    for spec, count in expected.items():
        assert len(parse_group_spec(spec).normal_subgroups()) == count, spec


def test_alternating_small():
    assert alternating(2).order == 1 and alternating(3).order == 3
    assert cyclic(1).order == 1
