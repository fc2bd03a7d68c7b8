"""
Rotation systems: a finite rotation group with its distinguished generators, read as a polytope.
"""

import itertools
import logging
from collections.abc import Iterable
from typing import Optional

from polymix.catalog import dual_presentation, mirror_presentation
from polymix.groups import ConcreteGroup, Subgroup, element_order, hom_graph_extends, realize, subgroup_closure
from polymix.models import ClassificationReport, Presentation, RankMismatchError, SchlafliType, SelfDuality, Word
from polymix.words import dual_word, enantiomorph, generator, tau

logger = logging.getLogger("polymix")

IndexPair = tuple[tuple[int, ...], tuple[int, ...]]


class RotationSystem:
    """
    A ConcreteGroup whose generators are the abstract rotations s1 ... s_{n-1}.

    `source` is a presentation this group realizes, when one is known; mixes have none. `factors`
    holds the two systems a mix was built from.
    """

    def __init__(self, group: ConcreteGroup, label: str = "", factors: tuple["RotationSystem", ...] = ()):
        self.group = group
        self.label = label or (group.source.label if group.source else "")
        self.factors = factors
        self._standard_subgroups: dict[frozenset[int], Subgroup] = {}

    @staticmethod
    def from_presentation(presentation: Presentation, limit: Optional[int] = None) -> "RotationSystem":
        return RotationSystem(realize(presentation, limit), label=presentation.label)

    @property
    def rank(self) -> int:
        return self.group.rank

    @property
    def order(self) -> int:
        return self.group.order

    @property
    def source(self) -> Optional[Presentation]:
        return self.group.source

    def evaluate(self, w: Word) -> int:
        return self.group.evaluate(w)

    def rotation(self, index: int) -> int:
        return self.group.generator(index)

    def dual(self) -> "RotationSystem":
        """
        The dual: the same group with s_i replaced by s_{n-i}^-1. A word w evaluates to what
        dual_word(w) did before, so this realizes dual_presentation(source).
        """
        n = self.rank
        words = [dual_word(generator(i, n)) for i in range(1, n)]
        source = dual_presentation(self.source) if self.source else None
        return RotationSystem(self.group.regenerate(words, source), label=f"dual({self.label})")

    def mirror(self) -> "RotationSystem":
        """
        The enantiomorphic system, generators s1^-1, s1^2 s2, s3, ...; realizes
        mirror_presentation(source).
        """
        n = self.rank
        words = [enantiomorph(generator(i, n)) for i in range(1, n)]
        source = mirror_presentation(self.source) if self.source else None
        return RotationSystem(self.group.regenerate(words, source), label=f"mirror({self.label})")


def schlafli_type(system: RotationSystem) -> SchlafliType:
    return SchlafliType(entries=tuple(element_order(system.group, g) for g in system.group.generators))


def standard_generators(rank: int, indices: Iterable[int]) -> list[Word]:
    """The words tau(i, j), 1 <= i <= j <= n-1, with i-1 and j both in `indices`."""
    index_set = set(indices)
    return [tau(i, j, rank) for i in range(1, rank) for j in range(i, rank) if i - 1 in index_set and j in index_set]


def standard_subgroup(system: RotationSystem, indices: Iterable[int]) -> Subgroup:
    key = frozenset(indices)
    if not key <= set(range(system.rank)):
        raise ValueError(f"Index set {sorted(key)} is not contained in 0..{system.rank - 1}")
    if key not in system._standard_subgroups:
        gens = [system.evaluate(w) for w in standard_generators(system.rank, key)]
        system._standard_subgroups[key] = subgroup_closure(system.group, gens)
    return system._standard_subgroups[key]


def index_pairs(rank: int) -> list[IndexPair]:
    """
    Unordered pairs I != J of subsets of {0, ..., n-1}, neither containing the other, in the order
    the intersection property is checked: larger |I| + |J| first, then lexicographic with I < J.
    """
    subsets = [subset for size in range(rank + 1) for subset in itertools.combinations(range(rank), size)]
    pairs = [
        (a, b) if a < b else (b, a)
        for a, b in itertools.combinations(subsets, 2)
        if not (set(a) <= set(b) or set(b) <= set(a))
    ]
    return sorted(pairs, key=lambda pair: (-(len(pair[0]) + len(pair[1])), pair))


def check_intersection_property(system: RotationSystem) -> tuple[bool, Optional[IndexPair]]:
    for left, right in index_pairs(system.rank):
        a = standard_subgroup(system, left)
        b = standard_subgroup(system, right)
        meet = standard_subgroup(system, set(left) & set(right))
        # the meet is always contained in the intersection, so comparing orders suffices
        intersection_order = int((a.mask & b.mask).sum())
        if intersection_order != meet.order:
            logger.info(
                f"Intersection property fails for {system.label} at I={left}, J={right}: {intersection_order} != {meet.order}"
            )
            return False, (left, right)
    return True, None


def is_directly_regular(system: RotationSystem) -> bool:
    n = system.rank
    images = [system.evaluate(enantiomorph(generator(i, n))) for i in range(1, n)]
    extends, _ = hom_graph_extends(system.group, images, system.group)
    return extends


def covers(p: RotationSystem, q: RotationSystem) -> bool:
    if p.rank != q.rank:
        raise RankMismatchError(f"Cannot compare systems of rank {p.rank} and {q.rank}")
    extends, _ = hom_graph_extends(p.group, q.group.generators, q.group)
    return extends


def classify_self_duality(system: RotationSystem) -> SelfDuality:
    """
    Proper when s_i -> dual_word(s_i) is an automorphism, improper when only the mirrored
    assignment s_i -> enantiomorph(dual_word(s_i)) is. Improper collapses to proper for directly
    regular systems.
    """
    if not schlafli_type(system).is_palindromic():
        return "not_self_dual"
    n = system.rank
    dual_images = [system.evaluate(dual_word(generator(i, n))) for i in range(1, n)]
    if hom_graph_extends(system.group, dual_images, system.group)[0]:
        return "properly_self_dual"
    mirrored_images = [system.evaluate(enantiomorph(dual_word(generator(i, n)))) for i in range(1, n)]
    if hom_graph_extends(system.group, mirrored_images, system.group)[0]:
        return "properly_self_dual" if is_directly_regular(system) else "improperly_self_dual"
    return "not_self_dual"


def classify(system: RotationSystem) -> ClassificationReport:
    holds, witness = check_intersection_property(system)
    report = ClassificationReport(
        order=system.order,
        type=list(schlafli_type(system).entries),
        polytopal="yes" if holds else "no",
        witness=(list(witness[0]), list(witness[1])) if witness else None,
        regularity="directly_regular" if is_directly_regular(system) else "chiral",
        self_duality=classify_self_duality(system),
        criteria_fired=["intersection-property"],
    )
    logger.info(f"Classified {system.label}: order {report.order}, {report.regularity}, {report.self_duality}")
    return report
