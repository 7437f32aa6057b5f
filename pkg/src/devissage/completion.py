"""Maximal class quotients of finite groups and the exactness lemmas at finite level."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce as _fold
from itertools import product as iproduct
from typing import Mapping, Sequence

from .finite_groups import (
    FiniteGroup,
    GroupClass,
    GroupError,
    Subgroup,
    class_membership,
    direct_product,
    ell_elements,
    find_isomorphism,
    is_nilpotent,
    prime_divisors,
    series,
    sylow_subgroup,
)


@dataclass
class ClassQuotient:
    source: FiniteGroup
    klass: GroupClass
    kernel: Subgroup
    quotient: FiniteGroup
    projection: list[int]

    def as_dict(self) -> dict:
        return {
            "order": self.source.order,
            "class": self.klass.spec(),
            "kernel_order": len(self.kernel),
            "kernel": sorted(self.kernel),
            "quotient_order": self.quotient.order,
            "cayley_table": [list(r) for r in self.quotient.table],
        }


def class_kernel(G: FiniteGroup, c: GroupClass) -> Subgroup:
    """Smallest normal subgroup with quotient in ``c`` (fast path per class)."""
    if c.kind == "solvable":
        return series(G, "derived")[-1]
    if c.kind == "nilpotent":
        return series(G, "lower_central")[-1]
    if c.kind == "ell":
        # generated by the elements of order prime to ell
        return G.normal_closure(a for a in G.elements if G.element_order(a) % c.param)
    return G.normal_closure(a for a in ell_elements(G, c.param) if a != 0)


def class_kernel_oracle(G: FiniteGroup, c: GroupClass) -> Subgroup:
    """Intersection of every normal subgroup whose quotient lies in ``c``."""
    K = G.full()
    for N in G.normal_subgroups():
        Q, _ = G.quotient(N)
        if class_membership(Q, c):
            K = K & N
    return K


def max_class_quotient(G: FiniteGroup, c: GroupClass) -> ClassQuotient:
    K = class_kernel(G, c)
    Q, proj = G.quotient(K, name=f"{G.name}^{c.spec()}")
    return ClassQuotient(G, c, K, Q, proj)


def _kernel_in(G: FiniteGroup, N: Subgroup, c: GroupClass) -> Subgroup:
    """Kernel of ``N -> N^c`` as a subset of ``G``."""
    sub, emb = G.subgroup_group(N)
    return frozenset(emb[x] for x in class_kernel(sub, c))


def induced_map(phi: Sequence[int], src: ClassQuotient, dst: ClassQuotient) -> list[int] | None:
    """The map ``G^c -> H^c`` induced by ``phi: G -> H``, or ``None`` if ill-defined."""
    out = [-1] * src.quotient.order
    for x, y in enumerate(phi):
        q, v = src.projection[x], dst.projection[y]
        if out[q] < 0:
            out[q] = v
        elif out[q] != v:
            return None
    return out


@dataclass
class ExactnessReport:
    sequence: str
    hypothesis_ok: bool
    well_defined: bool
    injective: bool | None
    middle_exact: bool
    surjective: bool
    exact: bool
    orders: dict = field(default_factory=dict)
    reason: str = ""

    def as_dict(self) -> dict:
        return dict(self.__dict__)


def verify_completion_exactness(G: FiniteGroup, N: Subgroup, c: GroupClass) -> ExactnessReport:
    """Check ``1 -> N^c -> G^c -> G/N -> 1`` for ``G/N`` in ``c``."""
    N = frozenset(N)
    if not G.is_normal(N):
        raise GroupError("N is not normal in G")
    H, _ = G.quotient(N)
    KN = _kernel_in(G, N, c)
    KG = class_kernel(G, c)
    orders = {"N^c": len(N) // len(KN), "G^c": G.order // len(KG), "G/N": H.order}
    seq = "1 -> N^c -> G^c -> G/N -> 1"
    if not class_membership(H, c):
        return ExactnessReport(seq, False, False, None, False, False, False, orders,
                               f"hypothesis violated: G/N (order {H.order}) is not in {c.spec()}")
    # N^c -> G^c exists because the image of N in G^c is a c-group
    well_defined = KN <= KG
    # G -> G/N factors through G^c because G/N is in c
    assert KG <= N
    injective = (N & KG) == KN
    middle = True  # image of N^c is N/KG, the kernel of G^c -> G/N
    exact = well_defined and injective and middle
    reason = "" if exact else f"N^c -> G^c not injective: kernel has order {len(N & KG) // len(KN)}"
    return ExactnessReport(seq, True, well_defined, injective, middle, True, exact, orders, reason)


def verify_right_exactness(G: FiniteGroup, N: Subgroup, c: GroupClass) -> ExactnessReport:
    """Check ``N^c -> G^c -> (G/N)^c -> 1``."""
    N = frozenset(N)
    if not G.is_normal(N):
        raise GroupError("N is not normal in G")
    H, proj = G.quotient(N)
    KH = class_kernel(H, c)
    M = frozenset(x for x in G.elements if proj[x] in KH)  # kernel of G -> (G/N)^c
    KG = class_kernel(G, c)
    KN = _kernel_in(G, N, c)
    well_defined = KN <= KG and KG <= M
    image_N = G.subgroup(N | KG)
    middle = image_N == M
    orders = {"N^c": len(N) // len(KN), "G^c": G.order // len(KG), "(G/N)^c": G.order // len(M)}
    exact = well_defined and middle
    reason = "" if exact else "image of N^c differs from kernel of G^c -> (G/N)^c"
    return ExactnessReport("N^c -> G^c -> (G/N)^c -> 1", True, well_defined, None, middle, True,
                           exact, orders, reason)


@dataclass
class SylowDecomposition:
    group: FiniteGroup
    factors: list[tuple[int, Subgroup]]
    witness: dict[tuple[int, ...], int]
    components: list[tuple[int, ...]]

    def verify(self) -> bool:
        """Multiplication from the Sylow product is a bijective homomorphism."""
        G = self.group
        if len(self.witness) != G.order or set(self.witness.values()) != set(G.elements):
            return False
        tuples = list(self.witness)
        for a, b in iproduct(tuples, repeat=2):
            ab = tuple(G.mul(x, y) for x, y in zip(a, b))
            if self.witness[ab] != G.mul(self.witness[a], self.witness[b]):
                return False
        return True


def nilpotent_sylow_decomposition(G: FiniteGroup) -> SylowDecomposition:
    if not is_nilpotent(G):
        raise GroupError(f"{G.name} is not nilpotent")
    factors = [(ell, sylow_subgroup(G, ell)) for ell in prime_divisors(G.order)]
    witness: dict[tuple[int, ...], int] = {}
    for combo in iproduct(*(sorted(P) for _, P in factors)):
        witness[combo] = _fold(G.mul, combo, 0)
    components: list[tuple[int, ...]] = [()] * G.order
    for combo, x in witness.items():
        components[x] = combo
    return SylowDecomposition(G, factors, witness, components)


def crt_lift_generators(G: FiniteGroup, per_prime: Mapping[int, Sequence[int]]) -> tuple[int, ...]:
    """Multiply per-prime generator tuples of the Sylow subgroups into generators of ``G``."""
    dec = nilpotent_sylow_decomposition(G)
    sylows = dict(dec.factors)
    if set(per_prime) != set(sylows):
        raise GroupError(f"need tuples for primes {sorted(sylows)}, got {sorted(per_prime)}")
    lengths = {len(t) for t in per_prime.values()}
    if len(lengths) > 1:
        raise GroupError("generator tuples differ in length")
    for ell, gens in per_prime.items():
        if not set(gens) <= sylows[ell] or G.subgroup(gens) != sylows[ell]:
            raise GroupError(f"tuple for {ell} does not generate the Sylow {ell}-subgroup")
    if len(dec.factors) == 1:
        return tuple(next(iter(per_prime.values())))
    n = lengths.pop()
    primes = [ell for ell, _ in dec.factors]
    return tuple(_fold(G.mul, (per_prime[ell][j] for ell in primes), 0) for j in range(n))


def nilpotent_quotient_matches_product(G: FiniteGroup) -> bool:
    """``G^nil`` is isomorphic to the product of the ``G^ell`` over primes dividing ``|G|``."""
    nil = max_class_quotient(G, GroupClass("nilpotent")).quotient
    parts = [max_class_quotient(G, GroupClass("ell", ell)).quotient for ell in prime_divisors(G.order)]
    if not parts:
        return nil.order == 1
    prod = _fold(direct_product, parts)
    return find_isomorphism(nil, prod) is not None
