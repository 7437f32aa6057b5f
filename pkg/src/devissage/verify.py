"""Named check suites run by ``devissage verify``."""
from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Callable

from .completion import nilpotent_sylow_decomposition, verify_completion_exactness, verify_right_exactness
from .finite_groups import (
    FiniteGroup,
    GroupClass,
    builtin_groups,
    endomorphisms,
    is_nilpotent,
)
from .presentations import FpPresentation
from .subgroups import ChiKernel, expand, kernel_coset_table, mu_n_kernel_basis, schreier_generators
from .words import Word


@dataclass
class CaseResult:
    case: str
    passed: bool
    detail: str = ""

    def as_dict(self) -> dict:
        return {"case": self.case, "pass": self.passed, "detail": self.detail}


def random_reduced_word(rng: random.Random, rank: int, length: int) -> Word:
    letters: list[tuple[int, int]] = []
    while len(letters) < length:
        k, s = rng.randrange(rank), rng.choice((1, -1))
        if letters and letters[-1] == (k, -s):
            continue
        letters.append((k, s))
    return Word(rank, tuple(letters))


def random_chi_kernel_word(ck: ChiKernel, rng: random.Random, max_len: int = 20) -> Word:
    """Either a rejection-sampled even word or a product of conjugated basis words."""
    basis = ck.basis().words()
    while True:
        if rng.random() < 0.5:
            w = random_reduced_word(rng, ck.rank, rng.randint(0, max_len))
        else:
            w = Word.identity(ck.rank)
            for _ in range(rng.randint(1, 3)):
                b = rng.choice(basis) ** rng.choice((1, -1))
                t = random_reduced_word(rng, ck.rank, rng.randint(0, 3))
                w = w * t * b * ~t
        if len(w) <= max_len and ck.chi(w) == 0:
            return w


def random_kernel_cases(count: int, seed: int, small: dict[str, FiniteGroup]):
    rng = random.Random(seed)
    specs = sorted(small)
    for _ in range(count):
        r = rng.choice((2, 3))
        spec = rng.choice(specs)
        G = small[spec]
        images = [rng.randrange(G.order) for _ in range(r)]
        yield r, spec, G, images


def suite_ns_rank(count: int = 50, seed: int = 0, **_) -> list[CaseResult]:
    small = {s: G for s, G in builtin_groups(6).items()}
    out = []
    for r, spec, G, images in random_kernel_cases(count, seed, small):
        T = kernel_coset_table(FpPresentation(r), G, images)
        got = schreier_generators(T).rank
        want = T.index * (r - 1) + 1
        out.append(CaseResult(f"F{r}->{spec} {images}", got == want, f"index {T.index}: {got} vs {want}"))
    return out


def suite_mu_n(max: int = 8, **_) -> list[CaseResult]:
    out = []
    for N in range(1, max + 1):
        b = mu_n_kernel_basis(N)
        s = schreier_generators(b.table)
        ok = b.word_set() == s.word_set() and b.rank == N + 1
        out.append(CaseResult(f"N={N}", ok, f"rank {b.rank}"))
    return out


def suite_chi(max_g: int = 2, max_n: int = 2, words: int = 1000, seed: int = 0,
              max: int | None = None, count: int | None = None, **_) -> list[CaseResult]:
    if max is not None:
        max_g = max_n = max
    if count is not None:
        words = count
    rng = random.Random(seed)
    out = []
    for g in range(1, max_g + 1):
        for n in range(0, max_n + 1):
            ck = ChiKernel(g, n)
            b = ck.basis()
            same = b.word_set() == schreier_generators(b.table).word_set()
            sound = True
            for _ in range(words):
                w = random_chi_kernel_word(ck, rng)
                if expand(ck.rewrite(w), b, ck.rank) != w:
                    sound = False
                    break
            ok = same and sound and b.rank == 4 * g + 2 * n + 1
            out.append(CaseResult(f"g={g},n={n}", ok, f"rank {b.rank}, schreier match {same}, rewrite {sound}"))
    return out


COMPLIANT = [GroupClass("solvable"), GroupClass("ell", 2), GroupClass("ell", 3),
             GroupClass("prime-to", 2), GroupClass("prime-to", 3), GroupClass("prime-to", 5)]


def exactness_triples(max_order: int = 24):
    for spec, G in builtin_groups(max_order).items():
        for N in G.normal_subgroups():
            H, _ = G.quotient(N)
            for c in COMPLIANT + [GroupClass("nilpotent")]:
                yield spec, G, N, H, c


def suite_exactness(max: int = 12, **_) -> list[CaseResult]:
    out = []
    for spec, G, N, H, c in exactness_triples(max):
        if c.extension_closed and c.contains(H):
            rep = verify_completion_exactness(G, N, c)
            out.append(CaseResult(f"exact {spec}/{len(N)} {c}", rep.exact, rep.reason))
        rrep = verify_right_exactness(G, N, c)
        out.append(CaseResult(f"right {spec}/{len(N)} {c}", rrep.exact, rrep.reason))
    return out


def suite_sylow(max: int = 48, **_) -> list[CaseResult]:
    out = []
    for spec, G in builtin_groups(max).items():
        if is_nilpotent(G):
            dec = nilpotent_sylow_decomposition(G)
            out.append(CaseResult(spec, dec.verify(), "x".join(str(len(P)) for _, P in dec.factors)))
    return out


def hopf_check(G: FiniteGroup) -> tuple[int, bool]:
    """Count surjective endomorphisms; report whether each has trivial kernel."""
    surj = 0
    for phi in endomorphisms(G):
        if len(G.subgroup(phi[g] for g in G.generators)) != G.order:
            continue
        surj += 1
        if sum(1 for v in phi if v == 0) != 1:
            return surj, False
    return surj, True


def suite_hopf(max: int = 24, **_) -> list[CaseResult]:
    out = []
    for spec, G in builtin_groups(max).items():
        surj, ok = hopf_check(G)
        out.append(CaseResult(spec, ok, f"{surj} surjective endomorphisms, all bijective" if ok else ""))
    return out


SUITES: dict[str, Callable[..., list[CaseResult]]] = {
    "ns-rank": suite_ns_rank,
    "mu-n": suite_mu_n,
    "chi": suite_chi,
    "exactness": suite_exactness,
    "sylow": suite_sylow,
    "hopf": suite_hopf,
}
