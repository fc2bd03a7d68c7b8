"""
Finite groups realized by their regular right action.

A ConcreteGroup of order N is an N x 2(n-1) integer table: row x, column of generator g holds the
element x.g. The identity is element 0 and every element carries a word from a breadth-first
spanning tree, so products reduce to following columns.
"""

import logging
from collections import deque
from collections.abc import Sequence
from typing import Optional

import numpy as np

from polymix.coset_enumeration import column, enumerate_cosets, word_columns
from polymix.models import Presentation, RankMismatchError, Word

logger = logging.getLogger("polymix")


class SubgroupParentMismatchError(ValueError):
    """Exception raised when subgroups of different groups are intersected."""

    pass


class ConcreteGroup:
    def __init__(self, rank: int, table: np.ndarray, source: Optional[Presentation] = None):
        assert table.shape[1] == 2 * (rank - 1), f"Table has {table.shape[1]} columns, rank {rank} needs {2 * (rank - 1)}"
        self.rank = rank
        self.table = table
        self.source = source
        self._words: Optional[list[list[int]]] = None

    @property
    def order(self) -> int:
        return int(self.table.shape[0])

    @property
    def identity(self) -> int:
        return 0

    def generator(self, index: int) -> int:
        return int(self.table[0, column(index, 1)])

    @property
    def generators(self) -> list[int]:
        return [self.generator(i) for i in range(1, self.rank)]

    def follow(self, x: int, columns: Sequence[int]) -> int:
        for col in columns:
            x = int(self.table[x, col])
        return x

    def evaluate(self, w: Word) -> int:
        if w.rank != self.rank:
            raise RankMismatchError(f"Cannot evaluate a rank {w.rank} word in a rank {self.rank} group")
        return self.follow(0, word_columns(w))

    def element_columns(self, x: int) -> list[int]:
        """Columns of the spanning-tree word of x."""
        if self._words is None:
            self._words = self._spanning_tree()
        return self._words[x]

    def element_word(self, x: int) -> Word:
        letters = tuple((col // 2 + 1, 1 if col % 2 == 0 else -1) for col in self.element_columns(x))
        return Word(rank=self.rank, letters=letters)

    def _spanning_tree(self) -> list[list[int]]:
        words: list[Optional[list[int]]] = [None] * self.order
        words[0] = []
        queue = deque([0])
        rows = self.table.tolist()
        while queue:
            x = queue.popleft()
            for col, y in enumerate(rows[x]):
                if words[y] is None:
                    words[y] = words[x] + [col]  # type: ignore[operator]
                    queue.append(y)
        assert all(w is not None for w in words), "Generators do not reach every element"
        return words  # type: ignore[return-value]

    def multiply(self, x: int, y: int) -> int:
        return self.follow(x, self.element_columns(y))

    def inverse(self, x: int) -> int:
        return self.follow(0, [col ^ 1 for col in reversed(self.element_columns(x))])

    def right_multiplication(self, x: int) -> np.ndarray:
        """The permutation y -> y.x of all elements, as an index array."""
        perm = np.arange(self.order, dtype=np.int64)
        for col in self.element_columns(x):
            perm = self.table[perm, col]
        return perm

    def regenerate(self, words: Sequence[Word], source: Optional[Presentation] = None) -> "ConcreteGroup":
        """
        The same group with new distinguished generators, the evaluations of `words`. Element ids are
        kept; the new generators must generate the whole group.
        """
        if len(words) != self.rank - 1:
            raise RankMismatchError(f"Expected {self.rank - 1} generator words, got {len(words)}")
        columns = []
        for w in words:
            h = self.evaluate(w)
            columns.append(self.right_multiplication(h))
            columns.append(self.right_multiplication(self.inverse(h)))
        regenerated = ConcreteGroup(self.rank, np.stack(columns, axis=1), source=source)
        assert subgroup_closure(self, [self.evaluate(w) for w in words]).order == self.order, "New generators are not generating"
        return regenerated


class Subgroup:
    def __init__(self, parent: ConcreteGroup, mask: np.ndarray, generators: Sequence[int] = ()):
        self.parent = parent
        self.mask = mask
        self.generators = tuple(generators)

    @property
    def order(self) -> int:
        return int(self.mask.sum())

    def elements(self) -> np.ndarray:
        return np.flatnonzero(self.mask)

    def __contains__(self, x: int) -> bool:
        return bool(self.mask[x])


def realize(presentation: Presentation, limit: Optional[int] = None) -> ConcreteGroup:
    coset_table = enumerate_cosets(presentation, [], limit)
    group = ConcreteGroup(presentation.rank, coset_table.table, source=presentation)
    for relator in presentation.all_relators():
        assert group.evaluate(relator) == group.identity, f"Relator {relator} is not satisfied"
    logger.debug(f"Realized {presentation.label or 'presentation'} with order {group.order}")
    return group


def evaluate(group: ConcreteGroup, w: Word) -> int:
    return group.evaluate(w)


def element_order(group: ConcreteGroup, x: int) -> int:
    perm = group.right_multiplication(x)
    k, y = 1, int(perm[0])
    while y != group.identity:
        y = int(perm[y])
        k += 1
    return k


def subgroup_closure(group: ConcreteGroup, gens: Sequence[int]) -> Subgroup:
    mask = np.zeros(group.order, dtype=bool)
    mask[group.identity] = True
    perms = [group.right_multiplication(g) for g in gens]
    frontier = np.array([group.identity], dtype=np.int64)
    while frontier.size and perms:
        reached = np.unique(np.concatenate([perm[frontier] for perm in perms]))
        frontier = reached[~mask[reached]]
        mask[frontier] = True
    subgroup = Subgroup(group, mask, gens)
    assert group.order % subgroup.order == 0, f"Subgroup order {subgroup.order} does not divide {group.order}"
    return subgroup


def subgroup_intersection(a: Subgroup, b: Subgroup) -> Subgroup:
    if a.parent is not b.parent:
        raise SubgroupParentMismatchError("Cannot intersect subgroups of different groups")
    mask = a.mask & b.mask
    # greedy generating set; its closure must give the set back exactly
    gens: list[int] = []
    covered = subgroup_closure(a.parent, gens).mask
    for x in np.flatnonzero(mask):
        if not covered[x]:
            gens.append(int(x))
            covered = subgroup_closure(a.parent, gens).mask
    assert np.array_equal(covered, mask), "Intersection is not closed"
    return Subgroup(a.parent, mask, gens)


def hom_graph_extends(domain: ConcreteGroup, images: Sequence[int], target: ConcreteGroup) -> tuple[bool, int]:
    """
    Does s_i -> images[i] extend to a homomorphism domain -> target?

    Walks the Cayley graph of `domain`, assigning each element the image forced by the path that
    reached it; the assignment extends iff no element is forced to two different images. The
    second value is the order of the subgroup of `target` generated by the images.
    """
    if len(images) != domain.rank - 1:
        raise RankMismatchError(f"Expected {domain.rank - 1} images, got {len(images)}")
    image_steps = [target.right_multiplication(t).tolist() for t in images]
    steps = [domain.table[:, column(i, 1)].tolist() for i in range(1, domain.rank)]
    image_of = [-1] * domain.order
    image_of[domain.identity] = target.identity
    queue = deque([domain.identity])
    extends = True
    while queue and extends:
        x = queue.popleft()
        for step, image_step in zip(steps, image_steps):
            y, forced = step[x], image_step[image_of[x]]
            if image_of[y] == -1:
                image_of[y] = forced
                queue.append(y)
            elif image_of[y] != forced:
                extends = False
                break
    image_order = subgroup_closure(target, images).order
    return extends, image_order
