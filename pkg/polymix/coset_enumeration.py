"""
Todd-Coxeter coset enumeration, relator-based (HLT) strategy.

Generators s1 ... s_{n-1} and their inverses are table columns: s_i is column 2(i-1), s_i^-1 is
column 2(i-1)+1, so the inverse of column x is always x ^ 1. Undefined entries are -1.

The finished table is compacted and renumbered breadth-first from coset 0 (the subgroup itself),
visiting columns in order, so equal inputs always produce the same numbering.
"""

import logging
from collections import deque
from collections.abc import Sequence
from typing import Optional

import numpy as np

from polymix.models import Presentation, RankMismatchError, Word
from polymix.settings import settings

logger = logging.getLogger("polymix")

UNDEFINED = -1


class EnumerationOverflow(Exception):
    """Exception raised when an enumeration or closure needs more elements than the allowed limit."""

    pass


def column(index: int, exponent: int) -> int:
    return 2 * (index - 1) + (0 if exponent == 1 else 1)


def word_columns(w: Word) -> list[int]:
    return [column(i, e) for i, e in w.letters]


class CosetTable:
    """
    A complete, compacted coset table. Row k holds the images of coset k under every column.
    """

    def __init__(self, rank: int, table: np.ndarray):
        self.rank = rank
        self.table = table

    @property
    def index(self) -> int:
        return int(self.table.shape[0])

    def follow(self, coset: int, columns: Sequence[int]) -> int:
        for col in columns:
            coset = int(self.table[coset, col])
        return coset


class _Enumeration:
    """Mutable working state of one HLT run."""

    def __init__(self, ncols: int, limit: int):
        self.ncols = ncols
        self.limit = limit
        self.table: list[list[int]] = [[UNDEFINED] * ncols]
        self.parent: list[int] = [0]
        self.live = 1
        self.defined = 1

    def define(self, alpha: int, col: int) -> None:
        if self.live >= self.limit:
            raise EnumerationOverflow(f"Coset enumeration exceeded {self.limit} live cosets")
        beta = len(self.table)
        self.table.append([UNDEFINED] * self.ncols)
        self.parent.append(beta)
        self.table[alpha][col] = beta
        self.table[beta][col ^ 1] = alpha
        self.live += 1
        self.defined += 1

    def rep(self, k: int) -> int:
        parent = self.parent
        root = k
        while parent[root] != root:
            root = parent[root]
        while parent[k] != root:
            parent[k], k = root, parent[k]
        return root

    def merge(self, k: int, lam: int, queue: deque[int]) -> None:
        phi, psi = self.rep(k), self.rep(lam)
        if phi != psi:
            keep, drop = min(phi, psi), max(phi, psi)
            self.parent[drop] = keep
            self.live -= 1
            queue.append(drop)

    def coincidence(self, alpha: int, beta: int) -> None:
        table = self.table
        queue: deque[int] = deque()
        self.merge(alpha, beta, queue)
        while queue:
            gamma = queue.popleft()
            for col in range(self.ncols):
                delta = table[gamma][col]
                if delta == UNDEFINED:
                    continue
                table[delta][col ^ 1] = UNDEFINED
                mu, nu = self.rep(gamma), self.rep(delta)
                if table[mu][col] != UNDEFINED:
                    self.merge(nu, table[mu][col], queue)
                elif table[nu][col ^ 1] != UNDEFINED:
                    self.merge(mu, table[nu][col ^ 1], queue)
                else:
                    table[mu][col] = nu
                    table[nu][col ^ 1] = mu

    def scan_and_fill(self, alpha: int, word: Sequence[int]) -> None:
        table = self.table
        forward, i = alpha, 0
        backward, j = alpha, len(word) - 1
        while True:
            while i <= j and table[forward][word[i]] != UNDEFINED:
                forward = table[forward][word[i]]
                i += 1
            if i > j:
                if forward != backward:
                    self.coincidence(forward, backward)
                return
            while j >= i and table[backward][word[j] ^ 1] != UNDEFINED:
                backward = table[backward][word[j] ^ 1]
                j -= 1
            if j < i:
                self.coincidence(forward, backward)
                return
            if j == i:
                # deduction
                table[forward][word[i]] = backward
                table[backward][word[i] ^ 1] = forward
                return
            self.define(forward, word[i])

    def compact(self) -> np.ndarray:
        order = [0]
        renumber = {0: 0}
        position = 0
        while position < len(order):
            coset = order[position]
            position += 1
            for col in range(self.ncols):
                target = self.table[coset][col]
                assert target != UNDEFINED, f"Coset {coset} has no image under column {col}"
                target = self.rep(target)
                if target not in renumber:
                    renumber[target] = len(order)
                    order.append(target)
        assert len(order) == self.live, f"Reached {len(order)} of {self.live} live cosets"
        compacted = np.empty((len(order), self.ncols), dtype=np.int64)
        for new, old in enumerate(order):
            compacted[new] = [renumber[self.rep(t)] for t in self.table[old]]
        return compacted


def enumerate_cosets(presentation: Presentation, subgroup_gens: Sequence[Word], limit: Optional[int] = None) -> CosetTable:
    """
    Enumerate the cosets of <subgroup_gens> in the group presented by `presentation`, implicit
    rotation-group relators included.

    Raises EnumerationOverflow once more than `limit` cosets are simultaneously live; an infinite
    group, or one too large for the limit, always surfaces this way.
    """
    limit = settings.COSET_LIMIT if limit is None else limit
    if limit < 1:
        raise ValueError("Coset limit must be positive")
    for w in subgroup_gens:
        if w.rank != presentation.rank:
            raise RankMismatchError(f"Subgroup generator {w} has rank {w.rank}, presentation has rank {presentation.rank}")

    ncols = 2 * (presentation.rank - 1)
    relators = [word_columns(r) for r in presentation.all_relators() if not r.is_identity()]
    # every column needs to be scanned against its inverse for the table to close
    relators += [[2 * k, 2 * k + 1] for k in range(presentation.rank - 1)]
    enumeration = _Enumeration(ncols, limit)

    for w in subgroup_gens:
        if not w.is_identity():
            enumeration.scan_and_fill(0, word_columns(w))

    alpha = 0
    while alpha < len(enumeration.table):
        if enumeration.rep(alpha) == alpha:
            for relator in relators:
                enumeration.scan_and_fill(alpha, relator)
                if enumeration.rep(alpha) != alpha:
                    break
            if enumeration.rep(alpha) == alpha:
                for col in range(ncols):
                    if enumeration.table[alpha][col] == UNDEFINED:
                        enumeration.define(alpha, col)
        alpha += 1

    table = enumeration.compact()
    logger.debug(
        f"Enumerated {presentation.label or 'presentation'}: index {table.shape[0]}, {enumeration.defined} cosets defined"
    )
    return CosetTable(presentation.rank, table)
