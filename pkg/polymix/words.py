"""
Free-group words over s1 ... s_{n-1}: normalization, the enantiomorph and duality maps, the tau
convention, and the text grammar shared by every file format.
"""

import re
from collections.abc import Iterable, Sequence

from polymix.models import Letter, RankMismatchError, Word


class WordSyntaxError(ValueError):
    """Exception raised when word text cannot be parsed."""

    pass


class WordIndexError(ValueError):
    """Exception raised for a generator index or tau index pair outside the rank."""

    pass


def normalize(letters: Iterable[Letter], rank: int) -> Word:
    reduced: list[Letter] = []
    for index, exponent in letters:
        if not 1 <= index < rank:
            raise WordIndexError(f"Generator s{index} is out of range for rank {rank}")
        if exponent not in (1, -1):
            raise WordIndexError(f"Exponent must be +1 or -1, got {exponent}")
        if reduced and reduced[-1] == (index, -exponent):
            reduced.pop()
        else:
            reduced.append((index, exponent))
    return Word(rank=rank, letters=tuple(reduced))


def _check_ranks(words: Sequence[Word]) -> int:
    ranks = {w.rank for w in words}
    if len(ranks) != 1:
        raise RankMismatchError(f"Cannot combine words of ranks {sorted(ranks)}")
    return ranks.pop()


def multiply(*words: Word) -> Word:
    rank = _check_ranks(words)
    return normalize((letter for w in words for letter in w.letters), rank)


def inverse(w: Word) -> Word:
    return Word(rank=w.rank, letters=tuple((i, -e) for i, e in reversed(w.letters)))


def power(w: Word, k: int) -> Word:
    base = w if k >= 0 else inverse(w)
    return normalize(base.letters * abs(k), w.rank)


def generator(index: int, rank: int) -> Word:
    return normalize([(index, 1)], rank)


def enantiomorph(w: Word) -> Word:
    """
    The mirror-image map: s1 -> s1^-1, s2 -> s1^2 s2, every other generator fixed.
    """
    letters: list[Letter] = []
    for index, exponent in w.letters:
        if index == 1:
            letters.append((1, -exponent))
        elif index == 2 and exponent == 1:
            letters.extend([(1, 1), (1, 1), (2, 1)])
        elif index == 2:
            letters.extend([(2, -1), (1, -1), (1, -1)])
        else:
            letters.append((index, exponent))
    return normalize(letters, w.rank)


def dual_word(w: Word) -> Word:
    # s_i^e -> s_{n-i}^{-e}, letter order kept
    return normalize(((w.rank - i, -e) for i, e in w.letters), w.rank)


def tau(i: int, j: int, rank: int) -> Word:
    """
    s_i s_{i+1} ... s_j, with tau(0, j) and tau(i, n) both the empty word.
    """
    if not 0 <= i <= j <= rank:
        raise WordIndexError(f"tau({i}, {j}) is undefined for rank {rank}")
    if i == 0 or j == rank:
        return Word.identity(rank)
    return normalize(((k, 1) for k in range(i, j + 1)), rank)


def cyclically_reduce(w: Word) -> Word:
    letters = list(w.letters)
    while len(letters) > 1 and letters[0] == (letters[-1][0], -letters[-1][1]):
        letters = letters[1:-1]
    return Word(rank=w.rank, letters=tuple(letters))


def canonical_relator(w: Word) -> Word:
    """
    Representative of w up to cyclic rotation and inversion, so relator lists can be compared as
    sets: the least rotation (by letter tuple) of the cyclic reduction of w or of w^-1.
    """
    reduced = cyclically_reduce(w)
    candidates = []
    for base in (reduced.letters, inverse(reduced).letters):
        candidates.extend(base[k:] + base[:k] for k in range(max(len(base), 1)))
    return Word(rank=w.rank, letters=min(candidates))


_TOKEN = re.compile(r"\s*(?:(s)(\d+)|(\^)|(-?\d+)|(\()|(\))|(e\b))")


def _tokenize(text: str) -> list[tuple[str, str]]:
    tokens: list[tuple[str, str]] = []
    position = 0
    text = text.rstrip()
    while position < len(text):
        match = _TOKEN.match(text, position)
        if match is None:
            raise WordSyntaxError(f"Unexpected character {text[position:].strip()[:1]!r} at offset {position} in {text!r}")
        generator_mark, index, caret, number, open_paren, close_paren, identity = match.groups()
        if generator_mark:
            tokens.append(("gen", index))
        elif caret:
            tokens.append(("^", caret))
        elif number is not None:
            tokens.append(("int", number))
        elif open_paren:
            tokens.append(("(", open_paren))
        elif close_paren:
            tokens.append((")", close_paren))
        elif identity:
            tokens.append(("e", identity))
        position = match.end()
    return tokens


class _Parser:
    def __init__(self, tokens: list[tuple[str, str]], rank: int, text: str):
        self.tokens = tokens
        self.position = 0
        self.rank = rank
        self.text = text

    def peek(self) -> str | None:
        return self.tokens[self.position][0] if self.position < len(self.tokens) else None

    def take(self, kind: str) -> str:
        if self.peek() != kind:
            raise WordSyntaxError(f"Expected {kind!r} in {self.text!r}")
        value = self.tokens[self.position][1]
        self.position += 1
        return value

    def product(self) -> list[Letter]:
        letters: list[Letter] = []
        while self.peek() in ("gen", "(", "e"):
            letters.extend(self.factor())
        return letters

    def factor(self) -> list[Letter]:
        kind = self.peek()
        if kind == "gen":
            index = int(self.take("gen"))
            if not 1 <= index < self.rank:
                raise WordIndexError(f"Generator s{index} is out of range for rank {self.rank}")
            atom: list[Letter] = [(index, 1)]
        elif kind == "e":
            self.take("e")
            atom = []
        else:
            self.take("(")
            atom = self.product()
            self.take(")")
        if self.peek() != "^":
            return atom
        self.take("^")
        exponent = int(self.take("int"))
        if exponent < 0:
            atom = [(i, -e) for i, e in reversed(atom)]
        return atom * abs(exponent)


def parse_word(text: str, rank: int) -> Word:
    """
    Parse e.g. `(s1 s2^-1 s1^-1 s2)^1 (s2 s1 s2^-1 s1^-1)^2`; `e` is the empty word.
    """
    parser = _Parser(_tokenize(text), rank, text)
    letters = parser.product()
    if parser.position != len(parser.tokens):
        raise WordSyntaxError(f"Trailing input in {text!r}")
    return normalize(letters, rank)


def format_word(w: Word) -> str:
    return str(w)
