import random

import pytest

from devissage.completion import (
    class_kernel,
    class_kernel_oracle,
    crt_lift_generators,
    induced_map,
    max_class_quotient,
    nilpotent_quotient_matches_product,
    nilpotent_sylow_decomposition,
    verify_completion_exactness,
    verify_right_exactness,
)
from devissage.finite_groups import (
    GroupClass,
    GroupError,
    builtin_groups,
    class_membership,
    homomorphisms,
    identify,
    parse_group_spec,
    series,
    sylow_subgroup,
)

SOL, NIL = GroupClass("solvable"), GroupClass("nilpotent")
ELL2, ELL3 = GroupClass("ell", 2), GroupClass("ell", 3)
SEVEN = [SOL, NIL, ELL2, ELL3, GroupClass("prime-to", 2), GroupClass("prime-to", 3), GroupClass("prime-to", 5)]


def G_(spec):
    return parse_group_spec(spec)


def _A3(S3):
    return series(S3, "derived")[1]


def test_max_class_quotient_examples():
    S3 = G_("S3")
    q = max_class_quotient(S3, NIL)
    assert q.quotient.order == 2 and q.kernel == _A3(S3)
    assert max_class_quotient(S3, SOL).quotient.order == 6
    assert max_class_quotient(S3, SOL).kernel == frozenset([0])
    assert max_class_quotient(G_("A4"), ELL2).quotient.order == 1
    q = max_class_quotient(S3, GroupClass("prime-to", 3))
    assert q.quotient.order == 2 and q.kernel == _A3(S3)


def test_ell_quotient_of_cyclic_groups():
    # the maximal ell-quotient of C_n is the ell-part of n
    for n in range(1, 25):
        for ell in (2, 3, 5):
            part = 1
            while n % (part * ell) == 0:
                part *= ell
            assert max_class_quotient(G_(f"C{n}"), GroupClass("ell", ell)).quotient.order == part


@pytest.mark.parametrize("spec", ["S3", "A4", "S4", "D6", "C2xS3", "Q8", "C12", "C3xS3", "C2xA4"])
@pytest.mark.parametrize("c", SEVEN, ids=str)
def test_quotient_invariants(spec, c):
    G = G_(spec)
    q = max_class_quotient(G, c)
    assert class_membership(q.quotient, c)
    assert q.kernel == class_kernel_oracle(G, c)
    assert all(q.projection[G.mul(a, b)] == q.quotient.mul(q.projection[a], q.projection[b])
               for a in G.elements for b in G.elements)
    assert set(q.projection) == set(q.quotient.elements)
    assert frozenset(x for x in G.elements if q.projection[x] == 0) == q.kernel


def test_functoriality_sampled():
    rng = random.Random(0)
    groups = builtin_groups(12)
    specs = sorted(groups)
    checked = 0
    while checked < 40:
        G, H = groups[rng.choice(specs)], groups[rng.choice(specs)]
        homs = list(homomorphisms(G, H))
        phi = rng.choice(homs)
        for c in SEVEN:
            m = induced_map(phi, max_class_quotient(G, c), max_class_quotient(H, c))
            assert m is not None
            qg, qh = max_class_quotient(G, c).quotient, max_class_quotient(H, c).quotient
            assert all(m[qg.mul(a, b)] == qh.mul(m[a], m[b]) for a in qg.elements for b in qg.elements)
        checked += 1


def test_nilpotent_is_product_of_ell_quotients():
    for spec, G in builtin_groups(24).items():
        assert nilpotent_quotient_matches_product(G), spec


def test_sylow_decomposition_examples():
    dec = nilpotent_sylow_decomposition(G_("C6"))
    assert [(p, len(P)) for p, P in dec.factors] == [(2, 2), (3, 3)] and dec.verify()
    dec = nilpotent_sylow_decomposition(G_("C12"))
    assert [(p, len(P)) for p, P in dec.factors] == [(2, 4), (3, 3)] and dec.verify()
    dec = nilpotent_sylow_decomposition(G_("D4"))
    assert [(p, len(P)) for p, P in dec.factors] == [(2, 8)] and dec.verify()
    with pytest.raises(GroupError):
        nilpotent_sylow_decomposition(G_("S3"))


def test_crt_lift_examples():
    C6 = G_("C6")
    x = crt_lift_generators(C6, {2: [3], 3: [2]})
    assert len(x) == 1 and C6.element_order(x[0]) == 6
    G = G_("C2xC2xC3")
    P2, P3 = sylow_subgroup(G, 2), sylow_subgroup(G, 3)
    two = sorted(P2 - {0})[:2]
    if G.subgroup(two) != P2:
        two = [sorted(P2 - {0})[0], sorted(P2 - {0})[2]]
    three = [min(P3 - {0})] * 2
    lifted = crt_lift_generators(G, {2: two, 3: three})
    assert len(lifted) == 2 and G.subgroup(lifted) == G.full()
    dec = nilpotent_sylow_decomposition(G)
    for j, x in enumerate(lifted):
        assert dec.components[x] == (two[j], three[j])
    D4 = G_("D4")
    assert crt_lift_generators(D4, {2: list(D4.generators)}) == D4.generators


def test_crt_lift_errors():
    C6 = G_("C6")
    with pytest.raises(GroupError):
        crt_lift_generators(C6, {2: [0], 3: [2]})
    with pytest.raises(GroupError):
        crt_lift_generators(C6, {2: [3, 3], 3: [2]})
    with pytest.raises(GroupError):
        crt_lift_generators(C6, {2: [3]})


def test_completion_exactness_examples():
    S3 = G_("S3")
    assert verify_completion_exactness(S3, _A3(S3), SOL).exact
    C6 = G_("C6")
    C3 = C6.subgroup([2])
    rep = verify_completion_exactness(C6, C3, ELL2)
    assert rep.exact and rep.orders == {"N^c": 1, "G^c": 2, "G/N": 2}
    rep = verify_completion_exactness(S3, _A3(S3), NIL)
    assert not rep.exact and rep.injective is False
    assert rep.orders == {"N^c": 3, "G^c": 2, "G/N": 2}


def test_completion_exactness_hypothesis_reported():
    S3 = G_("S3")
    rep = verify_completion_exactness(S3, frozenset([0]), ELL2)
    assert not rep.hypothesis_ok and not rep.exact and "hypothesis" in rep.reason


def test_right_exactness_examples():
    S3 = G_("S3")
    rep = verify_right_exactness(S3, _A3(S3), NIL)
    assert rep.exact and rep.orders == {"N^c": 3, "G^c": 2, "(G/N)^c": 2}
    C4 = G_("C4")
    assert verify_right_exactness(C4, C4.subgroup([2]), ELL2).exact
    A4 = G_("A4")
    V4 = sylow_subgroup(A4, 2)
    rep = verify_right_exactness(A4, V4, SOL)
    assert rep.exact and rep.orders["(G/N)^c"] == 3


def test_quotient_dict_and_identify():
    q = max_class_quotient(G_("S4"), GroupClass("prime-to", 2))
    assert q.quotient.order == 1
    q = max_class_quotient(G_("S4"), GroupClass("prime-to", 3))
    assert identify(q.quotient) == "C2"  # 3-elements generate A4
    d = max_class_quotient(G_("S3"), NIL).as_dict()
    assert d["kernel_order"] == 3 and d["cayley_table"] == [[0, 1], [1, 0]]


def test_fast_path_independent_of_oracle_definition():
    # fast paths never consult the normal-subgroup lattice
    G = G_("C2xA4")
    for c in SEVEN:
        assert class_kernel(G, c) == class_kernel_oracle(G, c)
