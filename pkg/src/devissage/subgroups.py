"""Coset tables, Schreier bases and the explicit kernel computations.

Column ``2k`` of a coset table is generator ``k``; column ``2k + 1`` its inverse.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Sequence

from .finite_groups import FiniteGroup, GroupError, cyclic
from .presentations import FpPresentation, PresentationError
from .words import Word, WordError, invert, product

DEFAULT_MAX_COSETS = 10**6


class CosetLimitExceeded(RuntimeError):
    """Enumeration hit ``max_cosets``; the index is unknown, not infinite."""


@dataclass
class CosetTable:
    presentation: FpPresentation
    action: list[list[int]]
    transversal: list[Word]

    @property
    def index(self) -> int:
        return len(self.action)

    def act(self, coset: int, w: Word) -> int:
        for k, s in w.letters:
            coset = self.action[coset][2 * k + (s == -1)]
        return coset

    def contains(self, w: Word) -> bool:
        return self.act(0, w) == 0

    def validate(self) -> None:
        P = self.presentation
        n = self.index
        for k in range(P.rank):
            col = [row[2 * k] for row in self.action]
            if sorted(col) != list(range(n)):
                raise GroupError(f"generator {k} does not act as a permutation")
            for c in range(n):
                if self.action[col[c]][2 * k + 1] != c:
                    raise GroupError(f"inverse column of generator {k} inconsistent at coset {c}")
        for r in P.relators:
            for c in range(n):
                if self.act(c, r) != c:
                    raise GroupError(f"relator {r} moves coset {c}")
        if self.transversal[0]:
            raise GroupError("transversal[0] must be the empty word")
        reps = {t.letters for t in self.transversal}
        for c, t in enumerate(self.transversal):
            if self.act(0, t) != c:
                raise GroupError(f"transversal word {t} does not reach coset {c}")
            for m in range(len(t.letters)):
                if t.letters[:m] not in reps:
                    raise GroupError("transversal is not prefix-closed")


def _bfs_transversal(action: list[list[int]], rank: int) -> tuple[list[int], list[Word]]:
    """BFS from coset 0; returns the new coset order and prefix-closed words.

    Positive generators alone reach every coset of a finite permutation action,
    so inverse letters only enter the transversal if they are needed.
    """
    order = [0]
    words = {0: ()}
    for cols in ([2 * k for k in range(rank)], list(range(2 * rank))):
        queue = deque(order)
        while queue:
            c = queue.popleft()
            for col in cols:
                d = action[c][col]
                if d not in words:
                    words[d] = words[c] + ((col // 2, -1 if col % 2 else 1),)
                    order.append(d)
                    queue.append(d)
        if len(order) == len(action):
            break
    if len(order) != len(action):
        raise GroupError("coset graph is not connected")
    return order, [Word(rank, words[c]) for c in order]


def _standardize(P: FpPresentation, action: list[list[int]]) -> CosetTable:
    order, trans = _bfs_transversal(action, P.rank)
    pos = {c: i for i, c in enumerate(order)}
    new_action = [[pos[action[c][col]] for col in range(2 * P.rank)] for c in order]
    return CosetTable(P, new_action, trans)


def evaluate(G: FiniteGroup, images: Sequence[int], w: Word) -> int:
    x = 0
    for k, s in w.letters:
        x = G.mul(x, images[k] if s == 1 else G.inv(images[k]))
    return x


def kernel_coset_table(P: FpPresentation, G: FiniteGroup, images: Sequence[int]) -> CosetTable:
    """Coset table of the kernel of ``P -> G`` given by generator images."""
    if len(images) != P.rank:
        raise PresentationError(f"need {P.rank} generator images, got {len(images)}")
    for r in P.relators:
        if evaluate(G, images, r) != 0:
            raise GroupError(f"relator {r} is not killed by the map")
    # cosets are the elements of the image, discovered breadth first
    elems = [0]
    pos = {0: 0}
    queue = deque([0])
    cols = [(k, 1) for k in range(P.rank)] + [(k, -1) for k in range(P.rank)]
    while queue:
        x = queue.popleft()
        for k, s in cols:
            y = G.mul(x, images[k] if s == 1 else G.inv(images[k]))
            if y not in pos:
                pos[y] = len(elems)
                elems.append(y)
                queue.append(y)
    action = [[pos[G.mul(x, images[col // 2] if col % 2 == 0 else G.inv(images[col // 2]))]
               for col in range(2 * P.rank)] for x in elems]
    return _standardize(P, action)


class _HLT:
    """Todd-Coxeter coset enumeration, HLT strategy with coincidence handling."""

    def __init__(self, P: FpPresentation, subgroup_words: Sequence[Word], max_cosets: int):
        self.P = P
        self.ncols = 2 * P.rank
        self.max_cosets = max_cosets
        self.table: list[list[int | None]] = [[None] * self.ncols]
        self.parent = [0]
        self.defined = 1
        self.relators = [self._cols(r) for r in P.relators]
        self.subgroup = [self._cols(w) for w in subgroup_words]

    @staticmethod
    def _cols(w: Word) -> list[int]:
        return [2 * k + (s == -1) for k, s in w.letters]

    def find(self, c: int) -> int:
        root = c
        while self.parent[root] != root:
            root = self.parent[root]
        while self.parent[c] != root:
            self.parent[c], c = root, self.parent[c]
        return root

    def live(self, c: int) -> bool:
        return self.parent[c] == c

    def define(self, c: int, x: int) -> None:
        if self.defined >= self.max_cosets:
            raise CosetLimitExceeded(f"coset enumeration exceeded {self.max_cosets} cosets")
        n = len(self.table)
        self.table.append([None] * self.ncols)
        self.parent.append(n)
        self.defined += 1
        self.table[c][x] = n
        self.table[n][x ^ 1] = c

    def scan_and_fill(self, c: int, word: list[int]) -> None:
        if not word:
            return
        t = self.table
        f, b = c, c
        i, j = 0, len(word) - 1
        while True:
            while i <= j and t[f][word[i]] is not None:
                f = t[f][word[i]]
                i += 1
            if i > j:
                if f != b:
                    self.coincidence(f, b)
                return
            while j >= i and t[b][word[j] ^ 1] is not None:
                b = t[b][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(f, b)
                return
            if i == j:
                t[f][word[i]] = b
                t[b][word[i] ^ 1] = f
                return
            self.define(f, word[i])

    def _merge(self, k: int, l: int, queue: list[int]) -> None:
        k, l = self.find(k), self.find(l)
        if k == l:
            return
        m, n = min(k, l), max(k, l)
        self.parent[n] = m
        queue.append(n)

    def coincidence(self, a: int, b: int) -> None:
        t = self.table
        queue: list[int] = []
        self._merge(a, b, queue)
        i = 0
        while i < len(queue):
            e = queue[i]
            i += 1
            for x in range(self.ncols):
                f = t[e][x]
                if f is None:
                    continue
                t[f][x ^ 1] = None
                e1, f1 = self.find(e), self.find(f)
                if t[e1][x] is not None:
                    self._merge(f1, t[e1][x], queue)
                elif t[f1][x ^ 1] is not None:
                    self._merge(e1, t[f1][x ^ 1], queue)
                else:
                    t[e1][x] = f1
                    t[f1][x ^ 1] = e1

    def run(self) -> list[list[int]]:
        for w in self.subgroup:
            self.scan_and_fill(0, w)
        c = 0
        while c < len(self.table):
            for r in self.relators:
                if not self.live(c):
                    break
                self.scan_and_fill(c, r)
            if self.live(c):
                for x in range(self.ncols):
                    if self.table[c][x] is None:
                        self.define(c, x)
            c += 1
        live = [c for c in range(len(self.table)) if self.live(c)]
        pos = {c: i for i, c in enumerate(live)}
        return [[pos[self.find(self.table[c][x])] for x in range(self.ncols)] for c in live]


def todd_coxeter(P: FpPresentation, subgroup_words: Sequence[Word],
                 max_cosets: int = DEFAULT_MAX_COSETS) -> CosetTable:
    """Enumerate cosets of the subgroup generated by ``subgroup_words``.

    Raises :class:`CosetLimitExceeded` when ``max_cosets`` is reached.
    """
    for w in subgroup_words:
        if w.rank != P.rank:
            raise WordError("subgroup word over the wrong alphabet")
    if P.rank == 0:
        return CosetTable(P, [[]], [Word.identity(0)])
    action = _HLT(P, subgroup_words, max_cosets).run()
    return _standardize(P, action)


# Schreier bases

@dataclass
class SubgroupBasis:
    table: CosetTable
    generators: list[tuple[str, Word]]
    kind: str  # "schreier" | "explicit_mu_N" | "explicit_chi"

    @property
    def rank(self) -> int:
        return len(self.generators)

    def words(self) -> list[Word]:
        return [w for _, w in self.generators]

    def word_set(self) -> frozenset:
        return frozenset(w.letters for _, w in self.generators)

    def label_map(self) -> dict[str, Word]:
        return dict(self.generators)

    def expected_free_rank(self) -> int:
        """``i(r - 1) + 1`` for an index-``i`` subgroup of a free group of rank ``r``."""
        return self.table.index * (self.table.presentation.rank - 1) + 1

    def as_dict(self) -> dict:
        return {"basis": [{"label": lab, "word": str(w)} for lab, w in self.generators],
                "rank": self.rank, "index": self.table.index, "check": self.expected_free_rank()}


def _schreier_edges(T: CosetTable):
    rank = T.presentation.rank
    for c, t in enumerate(T.transversal):
        for k in range(rank):
            d = T.action[c][2 * k]
            w = Word(rank, t.letters + ((k, 1),) + invert(T.transversal[d]).letters)
            yield c, k, w


def schreier_generators(T: CosetTable) -> SubgroupBasis:
    """Nontrivial ``t x rep(t x)^-1`` over transversal words ``t`` and generators ``x``."""
    gens = [(f"s{c}_{k}", w) for c, k, w in _schreier_edges(T) if w]
    return SubgroupBasis(T, gens, "schreier")


def schreier_rewrite(T: CosetTable, w: Word) -> list[tuple[str, int]]:
    """Reidemeister-Schreier rewriting of a subgroup element into Schreier generators."""
    nontrivial = {(c, k) for c, k, s in _schreier_edges(T) if s}
    c = 0
    out = []
    for k, s in w.letters:
        if s == 1:
            if (c, k) in nontrivial:
                out.append((f"s{c}_{k}", 1))
            c = T.action[c][2 * k]
        else:
            c = T.action[c][2 * k + 1]
            if (c, k) in nontrivial:
                out.append((f"s{c}_{k}", -1))
    if c != 0:
        raise GroupError(f"word {w} is not in the subgroup")
    return out


def expand(factors: Sequence[tuple[str, int]], basis: SubgroupBasis | dict[str, Word], rank: int) -> Word:
    lookup = basis.label_map() if isinstance(basis, SubgroupBasis) else basis
    return product((lookup[lab] if s == 1 else invert(lookup[lab]) for lab, s in factors), rank)


def reidemeister_schreier(T: CosetTable) -> FpPresentation:
    """Presentation of the subgroup on its Schreier generators."""
    basis = schreier_generators(T)
    labels = [lab for lab, _ in basis.generators]
    idx = {lab: i for i, lab in enumerate(labels)}
    r = len(labels)
    rels = []
    for t in T.transversal:
        for rel in T.presentation.relators:
            conj = Word(T.presentation.rank, t.letters + rel.letters + invert(t).letters)
            fac = schreier_rewrite(T, conj)
            rels.append(Word(r, tuple((idx[lab], s) for lab, s in fac)))
    return FpPresentation(r, tuple(rels), names=tuple(labels))


# the mu_N kernel

def mu_n_table(N: int) -> CosetTable:
    """Kernel of ``F_2 -> C_N``, ``gamma_0 -> 1``, ``gamma_1 -> 0``."""
    if N < 1:
        raise GroupError("N must be positive")
    F2 = FpPresentation(2, names=("gamma0", "gamma1"))
    return kernel_coset_table(F2, cyclic(N), [1 % N, 0])


def mu_n_kernel_basis(N: int) -> SubgroupBasis:
    """``gamma_0^N`` and ``gamma_0^i gamma_1 gamma_0^-i`` for ``0 <= i < N``."""
    T = mu_n_table(N)
    g0, g1 = Word.generator(2, 0), Word.generator(2, 1)
    gens = [("g0^N", g0 ** N)]
    gens += [(f"c{i}", g0 ** i * g1 * g0 ** -i) for i in range(N)]
    return SubgroupBasis(T, gens, "explicit_mu_N")


# the hyperelliptic (chi) kernel

def _lab(*idx: int) -> str:
    return "g" + ("".join(map(str, idx)) if all(i < 10 for i in idx) else "_".join(map(str, idx)))


class ChiKernel:
    """Kernel of ``chi: F_{2g+1+n} -> Z/2`` with ``y_i -> 1`` exactly for ``i <= 2g + 1``.

    Generators ``y_1 .. y_{2g+1+n}`` are alphabet indices ``0 .. 2g+n``.
    """

    def __init__(self, g: int, n: int):
        if g < 1:
            raise GroupError("the hyperelliptic kernel needs genus >= 1")
        if n < 0:
            raise GroupError("n must be nonnegative")
        self.g, self.n = g, n
        self.branch = 2 * g + 1
        self.rank = 2 * g + 1 + n

    def y(self, i: int) -> Word:
        return Word.generator(self.rank, i - 1)

    def chi(self, w: Word) -> int:
        return sum(1 for k, _ in w.letters if k < self.branch) % 2

    def table(self) -> CosetTable:
        P = FpPresentation(self.rank, names=tuple(f"y{i}" for i in range(1, self.rank + 1)))
        images = [1] * self.branch + [0] * self.n
        return kernel_coset_table(P, cyclic(2), images)

    def basis(self) -> SubgroupBasis:
        y1 = self.y(1)
        gens = [(_lab(1, i), y1 * self.y(i)) for i in range(1, self.branch + 1)]
        gens += [(_lab(j, 1), self.y(j) * ~y1) for j in range(2, self.branch + 1)]
        gens += [(f"y{i}", self.y(i)) for i in range(self.branch + 1, self.rank + 1)]
        gens += [(f"c{i}", y1 * self.y(i) * ~y1) for i in range(self.branch + 1, self.rank + 1)]
        return SubgroupBasis(self.table(), gens, "explicit_chi")

    # rewriting, following the induction on word length

    def _left(self, i: int) -> list[tuple[str, int]]:
        # y_i y_1^-1
        return [] if i == 1 else [(_lab(i, 1), 1)]

    def _pair(self, i: int, si: int, j: int, sj: int) -> list[tuple[str, int]]:
        # y_i^si y_j^sj with both indices branch generators
        head = self._left(i) if si == 1 else [(_lab(1, i), -1)]
        tail = [(_lab(1, j), 1)] if sj == 1 else [(lab, -1) for lab, _ in self._left(j)]
        return head + tail

    def rewrite(self, w: Word | Sequence[tuple[int, int]]) -> list[tuple[str, int]]:
        letters = list(w.letters if isinstance(w, Word) else w)
        if sum(1 for k, _ in letters if k < self.branch) % 2:
            raise GroupError("word is not in the kernel of chi")
        s = [(k + 1, sign) for k, sign in letters]  # 1-based y indices
        out: list[tuple[str, int]] = []
        pos = 0
        while pos < len(s):
            i, si = s[pos]
            if i > self.branch:
                out.append((f"y{i}", si))
                pos += 1
                continue
            j, sj = s[pos + 1]
            if j <= self.branch:
                out += self._pair(i, si, j, sj)
                pos += 2
            else:
                # y_i^si y_j^sj s' = (y_i^si y_1^-1)(y_1 y_j^sj y_1^-1)(y_1 s')
                out += self._left(i) if si == 1 else [(_lab(1, i), -1)]
                out.append((f"c{j}", sj))
                pos += 1
                s[pos] = (1, 1)
        return out

    def quotient(self, fill_r1_sheet: bool = False) -> FpPresentation:
        """Ker(chi) modulo the normal closure of ``g11`` and ``g_j1 g_1j``."""
        labels = [lab for lab, _ in self.basis().generators]
        idx = {lab: k for k, lab in enumerate(labels)}
        r = len(labels)
        rels = [Word(r, ((idx[_lab(1, 1)], 1),))]
        rels += [Word(r, ((idx[_lab(j, 1)], 1), (idx[_lab(1, j)], 1))) for j in range(2, self.branch + 1)]
        if fill_r1_sheet:
            if self.n < 1:
                raise GroupError("filling the r_1 sheet needs n >= 1")
            rels.append(Word(r, ((idx[f"y{self.branch + 1}"], 1),)))
        return FpPresentation(r, tuple(rels), names=tuple(labels))


def chi_kernel_basis(g: int, n: int) -> SubgroupBasis:
    return ChiKernel(g, n).basis()


def rewrite_in_chi_basis(w: Word, g: int, n: int) -> list[tuple[str, int]]:
    return ChiKernel(g, n).rewrite(w)


def hyperelliptic_quotient(g: int, n: int, fill_r1_sheet: bool = False) -> FpPresentation:
    return ChiKernel(g, n).quotient(fill_r1_sheet)
