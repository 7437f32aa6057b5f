"""Free-group words over a fixed finite alphabet.

A word is a tuple of ``(index, sign)`` letters with ``sign`` in ``{1, -1}``,
always stored freely reduced.  The text form uses ``a``..``z`` with upper
case for inverses when the alphabet has at most 26 letters, and ``g0 G0 g1``
style tokens otherwise.
"""
from __future__ import annotations

import re
from dataclasses import dataclass
from string import ascii_lowercase
from typing import Iterable, Sequence

Letter = tuple[int, int]

_NUMERIC = re.compile(r"^([gG])(\d+)$")


class WordError(ValueError):
    pass


def _free_reduce(letters: Iterable[Letter], rank: int) -> tuple[Letter, ...]:
    stack: list[Letter] = []
    for k, s in letters:
        if not 0 <= k < rank:
            raise WordError(f"generator index {k} outside alphabet of size {rank}")
        if s not in (1, -1):
            raise WordError(f"bad sign {s!r}")
        if stack and stack[-1][0] == k and stack[-1][1] == -s:
            stack.pop()
        else:
            stack.append((k, s))
    return tuple(stack)


@dataclass(frozen=True)
class Word:
    rank: int
    letters: tuple[Letter, ...] = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _free_reduce(self.letters, self.rank))

    @classmethod
    def identity(cls, rank: int) -> Word:
        return cls(rank, ())

    @classmethod
    def generator(cls, rank: int, k: int, power: int = 1) -> Word:
        sign = 1 if power >= 0 else -1
        return cls(rank, ((k, sign),) * abs(power))

    @classmethod
    def parse(cls, text: str, rank: int) -> Word:
        return cls(rank, parse_letters(text, rank))

    def __len__(self) -> int:
        return len(self.letters)

    def __iter__(self):
        return iter(self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def __mul__(self, other: Word) -> Word:
        return multiply(self, other)

    def __invert__(self) -> Word:
        return invert(self)

    def __pow__(self, n: int) -> Word:
        base = self if n >= 0 else invert(self)
        return Word(self.rank, base.letters * abs(n))

    def __str__(self) -> str:
        return format_word(self)

    def is_identity(self) -> bool:
        return not self.letters


def reduce(letters: Sequence[Letter], rank: int) -> Word:
    """Freely reduce a raw letter sequence (single left-to-right stack pass)."""
    return Word(rank, tuple(letters))


def _check_same(u: Word, v: Word) -> None:
    if u.rank != v.rank:
        raise WordError(f"alphabet mismatch: {u.rank} vs {v.rank}")


def multiply(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word(u.rank, u.letters + v.letters)


def invert(u: Word) -> Word:
    return Word(u.rank, tuple((k, -s) for k, s in reversed(u.letters)))


def conjugate(u: Word, by: Word) -> Word:
    """Return ``by * u * by^-1``."""
    _check_same(u, by)
    return Word(u.rank, by.letters + u.letters + invert(by).letters)


def commutator(u: Word, v: Word) -> Word:
    _check_same(u, v)
    return Word(u.rank, u.letters + v.letters + invert(u).letters + invert(v).letters)


def exponent_sum(u: Word, gen: int) -> int:
    if not 0 <= gen < u.rank:
        raise WordError(f"generator index {gen} outside alphabet of size {u.rank}")
    return sum(s for k, s in u.letters if k == gen)


def exponent_vector(u: Word) -> list[int]:
    vec = [0] * u.rank
    for k, s in u.letters:
        vec[k] += s
    return vec


def product(words: Iterable[Word], rank: int) -> Word:
    letters: list[Letter] = []
    for w in words:
        if w.rank != rank:
            raise WordError(f"alphabet mismatch: {w.rank} vs {rank}")
        letters.extend(w.letters)
    return Word(rank, tuple(letters))


def substitute(u: Word, images: Sequence[Word], rank: int) -> Word:
    """Apply the free-group homomorphism sending generator k to ``images[k]``."""
    letters: list[Letter] = []
    for k, s in u.letters:
        img = images[k] if s == 1 else invert(images[k])
        letters.extend(img.letters)
    return Word(rank, tuple(letters))


# text format

def _token_letter(tok: str, rank: int) -> Letter:
    m = _NUMERIC.match(tok)
    if m:
        return int(m.group(2)), 1 if m.group(1) == "g" else -1
    if len(tok) == 1 and tok.isalpha() and tok.isascii():
        if rank > 26:
            raise WordError(f"letter {tok!r} is ambiguous for alphabet of size {rank}; use g<k>")
        return ord(tok.lower()) - ord("a"), 1 if tok.islower() else -1
    raise WordError(f"cannot parse letter {tok!r}")


def parse_letters(text: str, rank: int) -> list[Letter]:
    letters: list[Letter] = []
    for tok in text.split():
        if tok in ("1", "ε"):
            continue
        if len(tok) > 1 and not _NUMERIC.match(tok) and tok.isalpha():
            # unspaced run such as "abAB"
            letters.extend(_token_letter(c, rank) for c in tok)
        else:
            letters.append(_token_letter(tok, rank))
    for k, _ in letters:
        if not 0 <= k < rank:
            raise WordError(f"generator index {k} outside alphabet of size {rank}")
    return letters


def format_letter(letter: Letter, rank: int) -> str:
    k, s = letter
    if rank <= 26:
        c = ascii_lowercase[k]
        return c if s == 1 else c.upper()
    return f"g{k}" if s == 1 else f"G{k}"


def format_word(u: Word) -> str:
    return " ".join(format_letter(x, u.rank) for x in u.letters)
