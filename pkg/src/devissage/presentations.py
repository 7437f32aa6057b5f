"""Finitely presented groups modelling fundamental groups of curves."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

from sympy import Matrix, ZZ
from sympy.matrices.normalforms import invariant_factors

from .words import Word, WordError, commutator, exponent_vector, invert, product, substitute


class PresentationError(ValueError):
    pass


@dataclass(frozen=True)
class FpPresentation:
    rank: int
    relators: tuple[Word, ...] = ()
    ramification_words: tuple[tuple[str, Word], ...] = ()
    names: tuple[str, ...] | None = None

    def __post_init__(self):
        rels = []
        for r in self.relators:
            if r.rank != self.rank:
                raise PresentationError(f"relator over alphabet {r.rank}, expected {self.rank}")
            if r:
                rels.append(r)
        object.__setattr__(self, "relators", tuple(rels))
        labels = [lab for lab, _ in self.ramification_words]
        if len(set(labels)) != len(labels):
            raise PresentationError(f"duplicate ramification labels: {labels}")
        for lab, w in self.ramification_words:
            if w.rank != self.rank:
                raise PresentationError(f"ramification word {lab!r} over wrong alphabet")
        object.__setattr__(self, "ramification_words", tuple(self.ramification_words))
        if self.names is not None:
            if len(self.names) != self.rank:
                raise PresentationError("names must match rank")
            object.__setattr__(self, "names", tuple(self.names))

    @property
    def is_free(self) -> bool:
        return not self.relators

    def generators(self) -> list[Word]:
        return [Word.generator(self.rank, k) for k in range(self.rank)]

    def ramification(self, label: str) -> Word:
        for lab, w in self.ramification_words:
            if lab == label:
                return w
        raise PresentationError(f"unknown ramification label {label!r}")

    def word(self, text: str) -> Word:
        return Word.parse(text, self.rank)


@dataclass(frozen=True)
class AbelianInvariants:
    free_rank: int
    torsion: tuple[int, ...] = field(default=())

    def __post_init__(self):
        t = tuple(int(x) for x in self.torsion)
        if any(x < 2 for x in t):
            raise ValueError(f"torsion entries must be >= 2: {t}")
        if any(b % a for a, b in zip(t, t[1:])):
            raise ValueError(f"torsion must be a divisibility chain: {t}")
        object.__setattr__(self, "torsion", t)

    def as_dict(self) -> dict:
        return {"free_rank": self.free_rank, "torsion": list(self.torsion)}


def _gen(rank: int, k: int) -> Word:
    return Word.generator(rank, k)


def surface_group(g: int) -> FpPresentation:
    """``<a1, b1, ..., ag, bg | [a1, b1] ... [ag, bg]>``."""
    if g < 0:
        raise PresentationError("genus must be nonnegative")
    r = 2 * g
    rel = product((commutator(_gen(r, 2 * i), _gen(r, 2 * i + 1)) for i in range(g)), r)
    names = tuple(n for i in range(1, g + 1) for n in (f"a{i}", f"b{i}"))
    return FpPresentation(r, (rel,) if g else (), names=names)


def punctured_curve_group(g: int, n: int) -> FpPresentation:
    """Free group of rank ``2g + n - 1`` on ``x_i, y_i, e_1..e_{n-1}``.

    The boundary relation ``prod [x_i, y_i] * e_1 ... e_n = 1`` is solved for
    ``e_n``, which is kept as the derived ramification word of puncture n.
    """
    if g < 0:
        raise PresentationError("genus must be nonnegative")
    if n < 1:
        raise PresentationError("need at least one puncture; use surface_group for n = 0")
    r = 2 * g + n - 1
    names = tuple(s for i in range(1, g + 1) for s in (f"x{i}", f"y{i}"))
    names += tuple(f"e{j}" for j in range(1, n))
    boundary = product((commutator(_gen(r, 2 * i), _gen(r, 2 * i + 1)) for i in range(g)), r)
    ram = [(f"e{j}", _gen(r, 2 * g + j - 1)) for j in range(1, n)]
    last = invert(product([boundary] + [w for _, w in ram], r))
    ram.append((f"e{n}", last))
    return FpPresentation(r, (), tuple(ram), names)


def fill_puncture(P: FpPresentation, label: str) -> FpPresentation:
    """Quotient by the normal closure of the ramification word ``label``."""
    w = P.ramification(label)
    ram = tuple((lab, v) for lab, v in P.ramification_words if lab != label)
    return FpPresentation(P.rank, P.relators + (w,), ram, P.names)


def fill_all(P: FpPresentation) -> FpPresentation:
    for lab, _ in P.ramification_words:
        P = fill_puncture(P, lab)
    return P


def relation_matrix(P: FpPresentation) -> list[list[int]]:
    return [exponent_vector(r) for r in P.relators]


def abelianization(P: FpPresentation) -> AbelianInvariants:
    rows = relation_matrix(P)
    if P.rank == 0:
        return AbelianInvariants(0, ())
    if not rows:
        return AbelianInvariants(P.rank, ())
    factors = [abs(int(d)) for d in invariant_factors(Matrix(rows), domain=ZZ)]
    nonzero = [d for d in factors if d != 0]
    return AbelianInvariants(P.rank - len(nonzero), tuple(sorted(d for d in nonzero if d > 1)))


def cyclic_reduce(w: Word) -> Word:
    letters = list(w.letters)
    while len(letters) >= 2 and letters[0][0] == letters[-1][0] and letters[0][1] == -letters[-1][1]:
        letters = letters[1:-1]
    return Word(w.rank, tuple(letters))


def _find_eliminable(relators: Sequence[Word]) -> tuple[int, int] | None:
    order = sorted(range(len(relators)), key=lambda i: (len(relators[i]), i))
    for i in order:
        counts: dict[int, int] = {}
        for k, _ in relators[i].letters:
            counts[k] = counts.get(k, 0) + 1
        singles = [k for k, c in counts.items() if c == 1]
        if singles:
            return i, min(singles)
    return None


def _drop_generator(rank: int, k: int, words: Iterable[Word], value: Word) -> list[Word]:
    """Substitute ``value`` (free of generator k) for k and renumber the alphabet."""
    new_rank = rank - 1
    shift = [Word.generator(new_rank, j if j < k else j - 1) if j != k else Word.identity(new_rank)
             for j in range(rank)]
    images = shift[:]
    images[k] = substitute(value, shift, new_rank)
    return [substitute(w, images, new_rank) for w in words]


def tietze_eliminate(P: FpPresentation) -> FpPresentation:
    """Eliminate generators that occur exactly once in some relator, until none do.

    Relators are cyclically reduced and deduplicated along the way; ramification
    words are rewritten through each elimination.
    """
    rank = P.rank
    names = list(P.names) if P.names is not None else None
    rels = [cyclic_reduce(r) for r in P.relators]
    ram_labels = [lab for lab, _ in P.ramification_words]
    ram = [w for _, w in P.ramification_words]
    while True:
        rels = _dedupe([r for r in rels if r])
        hit = _find_eliminable(rels)
        if hit is None:
            break
        i, k = hit
        r = rels[i]
        pos = next(p for p, (j, _) in enumerate(r.letters) if j == k)
        sign = r.letters[pos][1]
        u = Word(rank, r.letters[:pos])
        v = Word(rank, r.letters[pos + 1:])
        # u k^s v = 1  =>  k^s = u^-1 v^-1
        ks = invert(v * u)
        value = ks if sign == 1 else invert(ks)
        others = rels[:i] + rels[i + 1:]
        rewritten = _drop_generator(rank, k, others + ram, value)
        rels = [cyclic_reduce(w) for w in rewritten[: len(others)]]
        ram = rewritten[len(others):]
        rank -= 1
        if names is not None:
            del names[k]
    return FpPresentation(rank, tuple(rels), tuple(zip(ram_labels, ram)), tuple(names) if names is not None else None)


def _dedupe(words: list[Word]) -> list[Word]:
    seen = set()
    out = []
    for w in words:
        key = w.letters
        if key in seen or invert(w).letters in seen:
            continue
        seen.add(key)
        out.append(w)
    return out


# text file format

def parse_presentation(text: str) -> FpPresentation:
    rank = None
    names = None
    rels: list[str] = []
    ram: list[tuple[str, str]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, _, rest = line.partition(":")
        key = key.strip().lower()
        rest = rest.strip()
        if key == "gens":
            rank = int(rest)
        elif key == "names":
            names = tuple(rest.split())
        elif key == "rel":
            rels.append(rest)
        elif key == "ram":
            label, _, word = rest.partition(" ")
            if not label:
                raise PresentationError(f"line {lineno}: ram needs a label")
            ram.append((label, word))
        else:
            raise PresentationError(f"line {lineno}: unknown key {key!r}")
    if rank is None:
        raise PresentationError("missing 'gens:' line")
    try:
        return FpPresentation(
            rank,
            tuple(Word.parse(r, rank) for r in rels),
            tuple((lab, Word.parse(w, rank)) for lab, w in ram),
            names,
        )
    except WordError as exc:
        raise PresentationError(str(exc)) from exc


def format_presentation(P: FpPresentation) -> str:
    lines = [f"gens: {P.rank}"]
    if P.names is not None:
        lines.append("names: " + " ".join(P.names))
    lines += [f"rel: {r}" for r in P.relators]
    lines += [f"ram: {lab} {w}".rstrip() for lab, w in P.ramification_words]
    return "\n".join(lines) + "\n"


def presentation_dict(P: FpPresentation) -> dict:
    return {
        "rank": P.rank,
        "names": list(P.names) if P.names is not None else None,
        "relators": [str(r) for r in P.relators],
        "ramification_words": [{"label": lab, "word": str(w)} for lab, w in P.ramification_words],
    }
