"""Homomorphism and epimorphism counts from curve groups onto finite groups."""
from __future__ import annotations

import json
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import asdict, dataclass, field
from pathlib import Path
from typing import Iterator, Sequence

from .finite_groups import (
    FiniteGroup,
    GroupClass,
    GroupError,
    automorphism_count,
    class_membership,
    parse_class_specs,
    parse_group_spec,
)
from .presentations import FpPresentation, punctured_curve_group, surface_group
from .subgroups import evaluate, mu_n_kernel_basis
from .words import Word

DEFAULT_BUDGET = 10**7


class BudgetExceeded(RuntimeError):
    pass


class ClassViolation(ValueError):
    pass


def search_budget() -> int:
    return int(os.environ.get("DEVISSAGE_BUDGET", DEFAULT_BUDGET))


def _check_budget(P: FpPresentation, size: int, budget: int | None) -> None:
    budget = search_budget() if budget is None else budget
    space = size ** P.rank
    if space > budget:
        raise BudgetExceeded(f"search space {size}^{P.rank} = {space} exceeds budget {budget}")


def _relators_by_depth(P: FpPresentation) -> list[list[tuple[tuple[int, int], ...]]]:
    """Relators bucketed by the largest generator they mention."""
    buckets: list[list] = [[] for _ in range(P.rank)]
    for r in P.relators:
        buckets[max(k for k, _ in r.letters)].append(r.letters)
    return buckets


def _iter_tuples(P: FpPresentation, G: FiniteGroup, allowed: Sequence[int],
                 first: Sequence[int] | None = None) -> Iterator[tuple[int, ...]]:
    buckets = _relators_by_depth(P)
    t, inv = G.table, [G.inv(x) for x in G.elements]
    rank = P.rank
    imgs = [0] * rank

    def ok(depth: int) -> bool:
        for letters in buckets[depth]:
            x = 0
            for k, s in letters:
                x = t[x][imgs[k] if s == 1 else inv[imgs[k]]]
            if x:
                return False
        return True

    def rec(depth: int) -> Iterator[tuple[int, ...]]:
        if depth == rank:
            yield tuple(imgs)
            return
        for a in (first if depth == 0 and first is not None else allowed):
            imgs[depth] = a
            if ok(depth):
                yield from rec(depth + 1)

    if rank == 0:
        yield ()
        return
    yield from rec(0)


def iter_homs(P: FpPresentation, G: FiniteGroup, allowed: Sequence[int] | None = None,
              budget: int | None = None) -> Iterator[tuple[int, ...]]:
    """Generator-image tuples satisfying every relator, in lexicographic order."""
    allowed = list(G.elements) if allowed is None else sorted(allowed)
    _check_budget(P, len(allowed), budget)
    return _iter_tuples(P, G, allowed)


def count_homs(P: FpPresentation, G: FiniteGroup, allowed: Sequence[int] | None = None,
               budget: int | None = None) -> int:
    return sum(1 for _ in iter_homs(P, G, allowed, budget))


def _is_epi(G: FiniteGroup, imgs: Sequence[int]) -> bool:
    return len(G.subgroup(imgs)) == G.order


def iter_epis(P: FpPresentation, G: FiniteGroup, budget: int | None = None) -> Iterator[tuple[int, ...]]:
    return (h for h in iter_homs(P, G, budget=budget) if _is_epi(G, h))


def _slice_counts(P: FpPresentation, G: FiniteGroup, first: list[int]) -> tuple[int, int]:
    homs = epis = 0
    for h in _iter_tuples(P, G, list(G.elements), first):
        homs += 1
        epis += _is_epi(G, h)
    return homs, epis


def count_homs_and_epis(P: FpPresentation, G: FiniteGroup, budget: int | None = None,
                        jobs: int = 1) -> tuple[int, int]:
    """``(|Hom(P, G)|, |Epi(P, G)|)``; the search splits on the first generator's image."""
    _check_budget(P, G.order, budget)
    if jobs <= 1 or P.rank == 0 or G.order ** P.rank < 50_000:
        return _slice_counts(P, G, list(G.elements) if P.rank else [])
    slices = [list(G.elements)[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as ex:
        parts = list(ex.map(_slice_counts, [P] * jobs, [G] * jobs, slices))
    return sum(p[0] for p in parts), sum(p[1] for p in parts)


def count_epis(P: FpPresentation, G: FiniteGroup, budget: int | None = None, jobs: int = 1) -> int:
    return count_homs_and_epis(P, G, budget, jobs)[1]


def subgroup_mobius(G: FiniteGroup) -> list[tuple[frozenset, int]]:
    """Nonzero Moebius values ``mu(H, G)`` over the subgroup lattice."""
    subs = sorted(G.all_subgroups(), key=len, reverse=True)
    mu: dict[frozenset, int] = {}
    for H in subs:
        if len(H) == G.order:
            mu[H] = 1
        else:
            mu[H] = -sum(m for K, m in mu.items() if len(K) > len(H) and H < K)
    return [(H, m) for H, m in mu.items() if m]


def count_epis_lattice(P: FpPresentation, G: FiniteGroup, budget: int | None = None) -> int:
    """``sum_H mu(H, G) |Hom(P, H)|`` over the subgroup lattice."""
    return sum(m * count_homs(P, G, sorted(H), budget) for H, m in subgroup_mobius(G))


def curve_group(g: int, n: int) -> FpPresentation:
    return punctured_curve_group(g, n) if n >= 1 else surface_group(g)


@dataclass
class CoverCensus:
    genus: int
    punctures: int
    group: str
    klass: str
    group_order: int
    hom_count: int
    epi_count: int
    aut_count: int
    cover_count: int
    elapsed: float = 0.0
    cached: bool = field(default=False)

    def as_dict(self) -> dict:
        d = asdict(self)
        d["class"] = d.pop("klass")
        return d


_AUT_CACHE: dict[str, int] = {}


def cached_automorphism_count(spec: str, G: FiniteGroup) -> int:
    if spec not in _AUT_CACHE:
        _AUT_CACHE[spec] = automorphism_count(G, limit=max(G.order, 1))
    return _AUT_CACHE[spec]


def _cache_key(g: int, n: int, group: str, klass: str) -> list:
    return [g, n, group, klass]


def _cache_lookup(path: Path, key: list) -> dict | None:
    if not path.exists():
        return None
    with path.open() as fh:
        for line in fh:
            line = line.strip()
            if not line:
                continue
            rec = json.loads(line)
            if rec.get("key") == key:
                return rec["census"]
    return None


def count_connected_covers(g: int, n: int, group: str | FiniteGroup, klass: str | Sequence[GroupClass] = "sol",
                           budget: int | None = None, jobs: int = 1,
                           cache: str | os.PathLike | None = None) -> CoverCensus:
    """Connected Galois covers with group ``G`` of a genus-``g`` curve minus ``n`` points.

    Every class in ``klass`` must contain ``G``; the count is ``|Epi| / |Aut(G)|``.
    """
    if isinstance(group, FiniteGroup):
        G, spec = group, group.name or "?"
    else:
        G, spec = parse_group_spec(group), group
    classes = parse_class_specs(klass) if isinstance(klass, str) else list(klass)
    class_spec = ",".join(c.spec() for c in classes)
    for c in classes:
        if not class_membership(G, c):
            raise ClassViolation(_violation_reason(G, spec, c))
    key = _cache_key(g, n, spec, class_spec)
    if cache is not None:
        hit = _cache_lookup(Path(cache), key)
        if hit is not None:
            hit = dict(hit)
            hit["klass"] = hit.pop("class")
            hit["cached"] = True
            return CoverCensus(**hit)
    start = time.perf_counter()
    P = curve_group(g, n)
    homs, epis = count_homs_and_epis(P, G, budget, jobs)
    aut = cached_automorphism_count(spec, G)
    if epis % aut:
        raise GroupError(f"Aut(G) of order {aut} does not divide {epis} epimorphisms")
    census = CoverCensus(g, n, spec, class_spec, G.order, homs, epis, aut, epis // aut,
                         round(time.perf_counter() - start, 6))
    if cache is not None:
        with Path(cache).open("a") as fh:
            fh.write(json.dumps({"key": key, "census": census.as_dict()}) + "\n")
    return census


def _violation_reason(G: FiniteGroup, spec: str, c: GroupClass) -> str:
    if c.kind == "prime-to":
        return (f"{spec} has order {G.order} divisible by {c.param}: such covers are wildly ramified "
                f"and need not be finite in number")
    return f"{spec} is not in class {c.spec()}"


def ramification_generation_check(P: FpPresentation, G: FiniteGroup, images: Sequence[int]) -> tuple[bool, dict]:
    """Do the images of the ramification words generate the image of the map?"""
    for r in P.relators:
        if evaluate(G, images, r) != 0:
            raise GroupError(f"relator {r} is not killed by the map")
    image = G.subgroup(images)
    ram = [evaluate(G, images, w) for _, w in P.ramification_words]
    generated = G.subgroup(ram)
    return generated == image, {"generated_order": len(generated), "image_order": len(image)}


@dataclass
class TransferReport:
    N: int
    epi: bool
    induced_defined: bool
    kernel_order: int | None
    generated_order: int | None
    ok: bool
    reason: str = ""

    def as_dict(self) -> dict:
        return asdict(self)


def mu_n_transfer_check(N: int, G: FiniteGroup, images: Sequence[int]) -> TransferReport:
    """Images of the ``mu_N`` kernel basis generate the kernel of the induced map to ``C_N``.

    ``images`` are the images of ``gamma_0`` and ``gamma_1``; the reference map
    ``F_2 -> C_N`` sends ``gamma_0 -> 1`` and ``gamma_1 -> 0``.
    """
    if len(images) != 2:
        raise GroupError("need images of gamma_0 and gamma_1")
    a, b = images
    image = G.subgroup(images)
    # induced psi: image -> C_N, consistent iff ker(h) lies in ker(F_2 -> C_N)
    psi = {0: 0}
    queue = [0]
    while queue:
        x = queue.pop()
        for gen, step in ((a, 1), (b, 0)):
            y = G.mul(x, gen)
            v = (psi[x] + step) % N
            if y not in psi:
                psi[y] = v
                queue.append(y)
            elif psi[y] != v:
                return TransferReport(N, len(image) == G.order, False, None, None, False,
                                      "the map to C_N does not factor through the image")
    kernel = frozenset(x for x, v in psi.items() if v == 0)
    basis = mu_n_kernel_basis(N)
    generated = G.subgroup(evaluate(G, images, w) for w in basis.words())
    ok = generated == kernel
    return TransferReport(N, len(image) == G.order, True, len(kernel), len(generated), ok,
                          "" if ok else "basis images generate a proper subgroup of the kernel")
