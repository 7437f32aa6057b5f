"""Explicit finite groups stored as Cayley tables.

Element 0 is always the identity.  Subgroups are frozensets of element
indices.  Products in permutation groups compose left to right: ``(p*q)(x) =
q(p(x))``.
"""
from __future__ import annotations

import re
from collections import deque
from dataclasses import dataclass
from functools import cached_property
from itertools import product as iproduct
from typing import Callable, Hashable, Iterable, Iterator, Sequence

from sympy import factorint, isprime

DEFAULT_ORDER_LIMIT = 200

Subgroup = frozenset


class GroupError(ValueError):
    pass


class LimitExceeded(GroupError):
    pass


class FiniteGroup:
    def __init__(self, table: Sequence[Sequence[int]], generators: Sequence[int] = (),
                 labels: Sequence[Hashable] | None = None, name: str | None = None):
        self.table = tuple(tuple(row) for row in table)
        self.order = len(self.table)
        self.generators = tuple(generators)
        self.labels = tuple(labels) if labels is not None else None
        self.name = name
        if self.order == 0 or self.table[0] != tuple(range(self.order)):
            raise GroupError("element 0 must be the identity")
        try:
            self._inv = [row.index(0) for row in self.table]
        except ValueError:
            raise GroupError("some element has no inverse") from None

    def __repr__(self) -> str:
        return f"FiniteGroup({self.name or '?'}, order={self.order})"

    def __len__(self) -> int:
        return self.order

    @property
    def elements(self) -> range:
        return range(self.order)

    def mul(self, a: int, b: int) -> int:
        return self.table[a][b]

    def inv(self, a: int) -> int:
        return self._inv[a]

    def conj(self, a: int, by: int) -> int:
        """``by * a * by^-1``."""
        return self.table[self.table[by][a]][self._inv[by]]

    def comm(self, a: int, b: int) -> int:
        t = self.table
        return t[t[t[a][b]][self._inv[a]]][self._inv[b]]

    def power(self, a: int, n: int) -> int:
        if n < 0:
            a, n = self._inv[a], -n
        x = 0
        for _ in range(n):
            x = self.table[x][a]
        return x

    def element_order(self, a: int) -> int:
        return self._orders[a]

    @cached_property
    def _orders(self) -> tuple[int, ...]:
        out = []
        for a in self.elements:
            x, k = a, 1
            while x != 0:
                x = self.table[x][a]
                k += 1
            out.append(k)
        return tuple(out)

    def _renamed(self, name: str) -> FiniteGroup:
        return FiniteGroup(self.table, self.generators, self.labels, name)

    def is_abelian(self) -> bool:
        t = self.table
        return all(t[a][b] == t[b][a] for a in self.elements for b in range(a))

    def validate(self, sample: int = 64) -> None:
        """Check the group axioms; associativity exhaustively up to ``sample`` elements."""
        n = self.order
        full = set(range(n))
        for i, row in enumerate(self.table):
            if set(row) != full:
                raise GroupError(f"row {i} is not a permutation")
        for j in range(n):
            if {self.table[i][j] for i in range(n)} != full:
                raise GroupError(f"column {j} is not a permutation")
        t = self.table
        if n <= sample:
            triples: Iterable = iproduct(range(n), repeat=3)
        else:
            step = max(1, n // sample)
            idx = range(0, n, step)
            triples = iproduct(idx, range(n), idx)
        for a, b, c in triples:
            if t[t[a][b]][c] != t[a][t[b][c]]:
                raise GroupError(f"associativity fails at {(a, b, c)}")
        if self.subgroup(self.generators) != frozenset(self.elements):
            raise GroupError("generators do not generate the group")

    # subgroups

    def subgroup(self, gens: Iterable[int]) -> Subgroup:
        gens = [g for g in set(gens) if g != 0]
        seen = {0}
        queue = deque([0])
        t = self.table
        while queue:
            x = queue.popleft()
            for g in gens:
                y = t[x][g]
                if y not in seen:
                    seen.add(y)
                    queue.append(y)
        return frozenset(seen)

    def normal_closure(self, elems: Iterable[int]) -> Subgroup:
        elems = set(elems)
        while True:
            H = self.subgroup(elems)
            conj = {self.conj(h, g) for h in H for g in self.generators}
            if conj <= H:
                return H
            elems = set(H) | conj

    def is_normal(self, H: Subgroup) -> bool:
        return all(self.conj(h, g) in H for h in H for g in self.generators)

    def commutator_subgroup(self, H: Iterable[int], K: Iterable[int]) -> Subgroup:
        K = list(K)
        return self.subgroup(self.comm(h, k) for h in H for k in K)

    def full(self) -> Subgroup:
        return frozenset(self.elements)

    @cached_property
    def conjugacy_classes(self) -> tuple[frozenset, ...]:
        seen: set[int] = set()
        out = []
        for a in self.elements:
            if a in seen:
                continue
            cls = frozenset(self.conj(a, g) for g in self.elements)
            seen |= cls
            out.append(cls)
        return tuple(out)

    def normal_subgroups(self) -> list[Subgroup]:
        """All normal subgroups: joins of normal closures of conjugacy classes."""
        atoms = {self.normal_closure(c) for c in self.conjugacy_classes}
        found = set(atoms) | {frozenset([0])}
        frontier = list(found)
        while frontier:
            nxt = []
            for N in frontier:
                for A in atoms:
                    if A <= N:
                        continue
                    J = self.subgroup(N | A)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def all_subgroups(self) -> list[Subgroup]:
        cyclic = {self.subgroup([a]) for a in self.elements}
        found = set(cyclic)
        frontier = list(found)
        while frontier:
            nxt = []
            for H in frontier:
                for C in cyclic:
                    if C <= H:
                        continue
                    J = self.subgroup(H | C)
                    if J not in found:
                        found.add(J)
                        nxt.append(J)
            frontier = nxt
        return sorted(found, key=lambda s: (len(s), sorted(s)))

    def generating_set(self, H: Iterable[int]) -> tuple[int, ...]:
        """Greedy small generating set of ``H`` (smallest indices first)."""
        H = frozenset(H)
        gens: list[int] = []
        cur = frozenset([0])
        for a in sorted(H):
            if a not in cur:
                gens.append(a)
                cur = self.subgroup(gens)
                if cur == H:
                    break
        return tuple(gens)

    def subgroup_group(self, H: Iterable[int], name: str | None = None) -> tuple[FiniteGroup, list[int]]:
        """``H`` as a group in its own right plus the embedding (sub index -> index)."""
        elems = sorted(H)
        pos = {e: i for i, e in enumerate(elems)}
        table = [[pos[self.table[a][b]] for b in elems] for a in elems]
        gens = [pos[g] for g in self.generating_set(elems)]
        labels = [self.labels[e] for e in elems] if self.labels is not None else None
        return FiniteGroup(table, gens, labels, name), elems

    def cosets(self, N: Subgroup) -> tuple[list[frozenset], list[int]]:
        """Cosets of a normal subgroup ordered by minimal element, and element -> coset."""
        proj = [-1] * self.order
        cosets = []
        for a in self.elements:
            if proj[a] >= 0:
                continue
            c = frozenset(self.table[a][n] for n in N)
            for x in c:
                proj[x] = len(cosets)
            cosets.append(c)
        return cosets, proj

    def quotient(self, N: Subgroup, name: str | None = None) -> tuple[FiniteGroup, list[int]]:
        if not self.is_normal(N):
            raise GroupError("quotient by a non-normal subgroup")
        cosets, proj = self.cosets(N)
        reps = [min(c) for c in cosets]
        table = [[proj[self.table[a][b]] for b in reps] for a in reps]
        gens: list[int] = []
        for g in self.generators:
            q = proj[g]
            if q != 0 and q not in gens:
                gens.append(q)
        return FiniteGroup(table, gens, None, name), proj


# constructors

def _closure(gens: Sequence[Hashable], mul: Callable, identity: Hashable, limit: int,
             name: str | None = None) -> FiniteGroup:
    elements = [identity]
    index = {identity: 0}
    queue = deque([identity])
    while queue:
        x = queue.popleft()
        for g in gens:
            y = mul(x, g)
            if y not in index:
                if len(elements) >= limit:
                    raise LimitExceeded(f"closure exceeds order limit {limit}")
                index[y] = len(elements)
                elements.append(y)
                queue.append(y)
    table = [[index[mul(a, b)] for b in elements] for a in elements]
    gen_idx = []
    for g in gens:
        i = index[g]
        if i != 0 and i not in gen_idx:
            gen_idx.append(i)
    return FiniteGroup(table, gen_idx, elements, name)


def _compose(p: tuple[int, ...], q: tuple[int, ...]) -> tuple[int, ...]:
    return tuple(q[x] for x in p)


_CYCLE = re.compile(r"\(([^()]*)\)")


def parse_permutation(text: str, degree: int | None = None) -> tuple[int, ...]:
    """Parse 1-based cycle notation like ``(1 2)(3 4)``; ``()`` is the identity."""
    cycles = [[int(x) for x in c.replace(",", " ").split()] for c in _CYCLE.findall(text)]
    if not cycles and text.strip() not in ("", "()"):
        raise GroupError(f"cannot parse permutation {text!r}")
    m = max([x for c in cycles for x in c] + [degree or 0, 1])
    img = list(range(m))
    for c in cycles:
        if len(set(c)) != len(c) or min(c, default=1) < 1:
            raise GroupError(f"bad cycle {c}")
        for a, b in zip(c, c[1:] + c[:1]):
            img[a - 1] = b - 1
    return tuple(img)


def from_permutations(perms: Sequence[Sequence[int] | str], limit: int = DEFAULT_ORDER_LIMIT,
                      name: str | None = None) -> FiniteGroup:
    """Group generated by permutations (0-based image tuples or cycle strings)."""
    parsed = [parse_permutation(p) if isinstance(p, str) else tuple(p) for p in perms]
    degree = max([len(p) for p in parsed] + [1])
    padded = [p + tuple(range(len(p), degree)) for p in parsed]
    for p in padded:
        if sorted(p) != list(range(degree)):
            raise GroupError(f"not a permutation: {p}")
    return _closure(padded, _compose, tuple(range(degree)), limit, name)


def cyclic(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("C_n needs n >= 1")
    table = [[(a + b) % n for b in range(n)] for a in range(n)]
    return FiniteGroup(table, [1] if n > 1 else [], list(range(n)), f"C{n}")


def symmetric(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("S_n needs n >= 1")
    if n == 1:
        return cyclic(1)._renamed("S1")
    gens = ["(1 2)", "(" + " ".join(str(i) for i in range(1, n + 1)) + ")"]
    return from_permutations(gens, limit=10**6, name=f"S{n}")


def alternating(n: int) -> FiniteGroup:
    if n < 1:
        raise GroupError("A_n needs n >= 1")
    if n < 3:
        return cyclic(1)._renamed(f"A{n}")
    gens = [f"({i} {i + 1} {i + 2})" for i in range(1, n - 1)]
    return from_permutations(gens, limit=10**6, name=f"A{n}")


def dihedral(n: int) -> FiniteGroup:
    """Dihedral group of order ``2n``; elements ``(k, f)`` = rotation^k reflection^f."""
    if n < 1:
        raise GroupError("D_n needs n >= 1")

    def mul(x, y):
        (k1, f1), (k2, f2) = x, y
        return ((k1 + (-k2 if f1 else k2)) % n, f1 ^ f2)

    gens = [(1 % n, 0), (0, 1)] if n > 1 else [(0, 1)]
    return _closure(gens, mul, (0, 0), 10**6, f"D{n}")


def quaternion() -> FiniteGroup:
    return from_permutations(["(1 2 3 4)(5 6 7 8)", "(1 5 3 7)(2 8 4 6)"], name="Q8")


def direct_product(G: FiniteGroup, H: FiniteGroup, name: str | None = None) -> FiniteGroup:
    m = H.order
    table = [[G.table[a // m][b // m] * m + H.table[a % m][b % m] for b in range(G.order * m)]
             for a in range(G.order * m)]
    gens = [g * m for g in G.generators] + list(H.generators)
    gl = G.labels or list(range(G.order))
    hl = H.labels or list(range(H.order))
    labels = [(gl[a // m], hl[a % m]) for a in range(G.order * m)]
    return FiniteGroup(table, gens, labels, name or f"{G.name}x{H.name}")


_ATOM = re.compile(r"^([CSADQ])(\d+)$")


def parse_group_spec(spec: str, limit: int = DEFAULT_ORDER_LIMIT) -> FiniteGroup:
    """``C6``, ``S3``, ``A4``, ``D4`` (order 8), ``Q8``, ``C2xC3``, ``perm:(1 2),(1 2 3)``."""
    spec = spec.strip()
    if spec.startswith("perm:"):
        body = spec[5:]
        perms = [p.strip() for p in re.split(r",(?=\s*\()", body) if p.strip()]
        return from_permutations(perms, limit=limit, name=spec)
    parts = spec.split("x")
    groups = []
    for part in parts:
        m = _ATOM.match(part.strip())
        if not m:
            raise GroupError(f"cannot parse group spec {spec!r}")
        kind, n = m.group(1), int(m.group(2))
        if kind == "C":
            G = cyclic(n)
        elif kind == "S":
            if n > 5:
                raise GroupError("S_n only for n <= 5")
            G = symmetric(n)
        elif kind == "A":
            if n > 5:
                raise GroupError("A_n only for n <= 5")
            G = alternating(n)
        elif kind == "D":
            G = dihedral(n)
        else:
            if n != 8:
                raise GroupError("only Q8 is built in")
            G = quaternion()
        groups.append(G)
    out = groups[0]
    for H in groups[1:]:
        out = direct_product(out, H)
    if out.order > limit:
        raise LimitExceeded(f"{spec} has order {out.order} > limit {limit}")
    return out._renamed(spec)


_EXTRA_SPECS = [
    "S3", "S4", "A4", "A5", "Q8",
    "C2xC2", "C2xC4", "C2xC2xC2", "C2xC6", "C3xC3", "C2xS3", "C3xS3", "C4xC4",
    "C2xD4", "C2xQ8", "C2xA4", "C2xC2xC3", "C2xC2xC2xC2", "C3xQ8", "C3xD4",
    "C2xC2xC4", "C2xD8",
]


def builtin_specs(max_order: int = 24) -> list[str]:
    specs = [f"C{n}" for n in range(1, max_order + 1)]
    specs += [s for s in _EXTRA_SPECS if parse_group_spec(s, limit=10**4).order <= max_order]
    specs += [f"D{n}" for n in range(3, max_order // 2 + 1)]
    return specs


def builtin_groups(max_order: int = 24) -> dict[str, FiniteGroup]:
    return {s: parse_group_spec(s, limit=10**4) for s in builtin_specs(max_order)}


# structure

def series(G: FiniteGroup, kind: str) -> list[Subgroup]:
    """Derived or lower central series, strictly descending, ending at its stable term."""
    if kind not in ("derived", "lower_central"):
        raise GroupError(f"unknown series {kind!r}")
    terms = [G.full()]
    while True:
        cur = terms[-1]
        nxt = G.commutator_subgroup(cur, cur) if kind == "derived" else G.commutator_subgroup(G.full(), cur)
        if nxt == cur:
            return terms
        terms.append(nxt)


def is_solvable(G: FiniteGroup) -> bool:
    return len(series(G, "derived")[-1]) == 1


def is_nilpotent(G: FiniteGroup) -> bool:
    return len(series(G, "lower_central")[-1]) == 1


def is_prime_power(n: int, ell: int) -> bool:
    while n % ell == 0:
        n //= ell
    return n == 1


@dataclass(frozen=True)
class GroupClass:
    kind: str  # "prime-to", "solvable", "nilpotent", "ell"
    param: int | None = None

    def __post_init__(self):
        if self.kind not in ("prime-to", "solvable", "nilpotent", "ell"):
            raise GroupError(f"unknown class {self.kind!r}")
        if self.kind in ("prime-to", "ell"):
            if self.param is None or not isprime(self.param):
                raise GroupError(f"{self.kind} needs a prime parameter, got {self.param}")
        elif self.param is not None:
            raise GroupError(f"{self.kind} takes no parameter")

    @property
    def extension_closed(self) -> bool:
        """Whether the class is closed under extensions (nilpotent groups are not)."""
        return self.kind != "nilpotent"

    def spec(self) -> str:
        short = {"solvable": "sol", "nilpotent": "nil"}
        return short.get(self.kind) or f"{self.kind}:{self.param}"

    def __str__(self) -> str:
        return self.spec()

    def contains(self, G: FiniteGroup) -> bool:
        return class_membership(G, self)


_CLASS_ALIASES = {"sol": "solvable", "solvable": "solvable", "nil": "nilpotent", "nilpotent": "nilpotent",
                  "ell": "ell", "prime-to": "prime-to", "primeto": "prime-to", "p'": "prime-to"}


def parse_class_spec(spec: str) -> GroupClass:
    """``sol``, ``nil``, ``ell:2``, ``prime-to:3`` (also ``ell(2)``, ``prime-to(3)``)."""
    m = re.match(r"^\s*([a-z'\-]+)\s*(?:[:(]\s*(\d+)\s*\)?)?\s*$", spec)
    if not m or m.group(1) not in _CLASS_ALIASES:
        raise GroupError(f"cannot parse class spec {spec!r}")
    param = int(m.group(2)) if m.group(2) else None
    return GroupClass(_CLASS_ALIASES[m.group(1)], param)


def parse_class_specs(spec: str) -> list[GroupClass]:
    """Comma- or plus-separated conjunction, e.g. ``sol,prime-to:5``."""
    return [parse_class_spec(s) for s in re.split(r"[,+]", spec) if s.strip()]


def class_membership(G: FiniteGroup, c: GroupClass) -> bool:
    if c.kind == "prime-to":
        return G.order % c.param != 0
    if c.kind == "ell":
        return is_prime_power(G.order, c.param)
    if c.kind == "solvable":
        return is_solvable(G)
    return is_nilpotent(G)


def prime_divisors(n: int) -> list[int]:
    return sorted(factorint(n)) if n > 1 else []


def sylow_subgroup(G: FiniteGroup, ell: int) -> Subgroup:
    """A Sylow ``ell``-subgroup, grown one factor of ``ell`` at a time inside normalizers."""
    target = 1
    n = G.order
    while n % ell == 0:
        n //= ell
        target *= ell
    P = frozenset([0])
    while len(P) < target:
        normalizer = [x for x in G.elements if all(G.conj(p, x) in P for p in P)]
        for x in normalizer:
            if x in P:
                continue
            # x P has order ell in N(P)/P
            if G.power(x, ell) in P:
                P = G.subgroup(P | {x})
                break
        else:
            raise GroupError("Sylow growth failed")  # impossible by Sylow's theorem
    return P


def ell_elements(G: FiniteGroup, ell: int) -> frozenset:
    return frozenset(a for a in G.elements if is_prime_power(G.element_order(a), ell))


# homomorphisms

def extend_homomorphism(G: FiniteGroup, H: FiniteGroup, images: Sequence[int]) -> list[int] | None:
    """Extend generator images to a homomorphism ``G -> H``, or ``None`` if inconsistent."""
    phi = [-1] * G.order
    phi[0] = 0
    queue = deque([0])
    gens = G.generators
    while queue:
        x = queue.popleft()
        for g, img in zip(gens, images):
            y = G.table[x][g]
            v = H.table[phi[x]][img]
            if phi[y] < 0:
                phi[y] = v
                queue.append(y)
            elif phi[y] != v:
                return None
    return phi


def homomorphisms(G: FiniteGroup, H: FiniteGroup) -> Iterator[list[int]]:
    choices = [[h for h in H.elements if G.element_order(g) % H.element_order(h) == 0]
               for g in G.generators]
    for imgs in iproduct(*choices):
        phi = extend_homomorphism(G, H, imgs)
        if phi is not None:
            yield phi


def endomorphisms(G: FiniteGroup) -> Iterator[list[int]]:
    return homomorphisms(G, G)


def automorphism_count(G: FiniteGroup, limit: int = DEFAULT_ORDER_LIMIT) -> int:
    """Number of automorphisms, by backtracking over generator images of equal order."""
    if G.order > limit:
        raise LimitExceeded(f"order {G.order} exceeds limit {limit}")
    gens = G.generators
    choices = [[h for h in G.elements if G.element_order(h) == G.element_order(g)] for g in gens]
    count = 0

    def rec(i: int, imgs: list[int]) -> None:
        nonlocal count
        if i == len(gens):
            if len(G.subgroup(imgs)) != G.order:
                return
            if extend_homomorphism(G, G, imgs) is not None:
                count += 1
            return
        for h in choices[i]:
            imgs.append(h)
            rec(i + 1, imgs)
            imgs.pop()

    rec(0, [])
    return count


def find_isomorphism(G: FiniteGroup, H: FiniteGroup) -> list[int] | None:
    if G.order != H.order or sorted(G._orders) != sorted(H._orders):
        return None
    choices = [[h for h in H.elements if H.element_order(h) == G.element_order(g)] for g in G.generators]
    for imgs in iproduct(*choices):
        if len(H.subgroup(imgs)) != H.order:
            continue
        phi = extend_homomorphism(G, H, imgs)
        if phi is not None:
            return phi
    return None


def is_isomorphic(G: FiniteGroup, H: FiniteGroup) -> bool:
    return find_isomorphism(G, H) is not None


def image_of(phi: Sequence[int]) -> frozenset:
    return frozenset(phi)


def kernel_of(phi: Sequence[int]) -> frozenset:
    return frozenset(i for i, v in enumerate(phi) if v == 0)


def group_dict(G: FiniteGroup) -> dict:
    return {"name": G.name, "order": G.order, "generators": list(G.generators),
            "cayley_table": [list(r) for r in G.table]}


def identify(G: FiniteGroup, max_order: int = 48) -> str | None:
    """Name of an isomorphic builtin group, if one exists."""
    if G.order > max_order:
        return None
    for spec in builtin_specs(max(G.order, 1)):
        H = parse_group_spec(spec, limit=10**4)
        if H.order == G.order and find_isomorphism(G, H) is not None:
            return spec
    return None
