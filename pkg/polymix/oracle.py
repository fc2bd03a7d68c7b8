"""
Brute-force combinatorial checks on the pre-polytope of a rotation system.

The i-faces are the left cosets x.Gamma_{I_i}, I_i = {0, ..., n-1} minus {i}; an i-face and a j-face
are incident when the cosets meet. A least face (rank -1) and a greatest face (rank n) are adjoined.
The axioms are then checked directly on this poset, with no reference to the intersection property.

Faces are (rank, id) pairs. Face id 0 of every rank is the base face, the coset of the identity.
The group is transitive on the faces of each rank, so a section only needs checking with its lower
face at a base face (or, for the least face, with its upper face at a base face).
"""

import itertools
import logging
from collections import defaultdict
from typing import Optional

import networkx as nx
import numpy as np

from polymix.models import OracleReport
from polymix.rotation import RotationSystem, check_intersection_property, standard_generators
from polymix.settings import settings

logger = logging.getLogger("polymix")

Face = tuple[int, int]
Flag = tuple[Face, ...]


class OracleBudgetExceeded(Exception):
    """Exception raised when a system is too large for the brute-force oracle."""

    pass


class FacePoset:
    def __init__(self, rank: int, labels: list[np.ndarray]):
        self.rank = rank
        # labels[i][x]: id of the i-face containing group element x
        self.labels = labels
        self.counts = [int(label.max()) + 1 for label in labels]
        self._above: dict[Face, dict[int, frozenset[int]]] = defaultdict(dict)
        self._below: dict[Face, dict[int, frozenset[int]]] = defaultdict(dict)
        for i, j in itertools.combinations(range(rank), 2):
            above: dict[int, set[int]] = defaultdict(set)
            below: dict[int, set[int]] = defaultdict(set)
            for a, b in np.unique(np.stack([labels[i], labels[j]], axis=1), axis=0).tolist():
                above[a].add(b)
                below[b].add(a)
            for a, faces in above.items():
                self._above[(i, a)][j] = frozenset(faces)
            for b, faces in below.items():
                self._below[(j, b)][i] = frozenset(faces)

    @property
    def bottom(self) -> Face:
        return (-1, 0)

    @property
    def top(self) -> Face:
        return (self.rank, 0)

    def faces(self, rank: int) -> frozenset[int]:
        if rank in (-1, self.rank):
            return frozenset([0])
        return frozenset(range(self.counts[rank]))

    def above(self, face: Face, rank: int) -> frozenset[int]:
        """Ids of the rank-`rank` faces incident with and above `face`."""
        if face[0] == -1 or rank == self.rank:
            return self.faces(rank)
        return self._above[face].get(rank, frozenset())

    def below(self, face: Face, rank: int) -> frozenset[int]:
        if face[0] == self.rank or rank == -1:
            return self.faces(rank)
        return self._below[face].get(rank, frozenset())

    def between(self, lo: Face, hi: Face, rank: int) -> frozenset[int]:
        return self.above(lo, rank) & self.below(hi, rank)

    def chains(self, lo: Face, hi: Face) -> list[Flag]:
        """Maximal chains from lo to hi, both included, every pair of members incident."""
        chains: list[Flag] = []

        def extend(chain: Flag) -> None:
            last_rank = chain[-1][0]
            if last_rank + 1 == hi[0]:
                chains.append(chain + (hi,))
                return
            candidates = self.below(hi, last_rank + 1)
            for face in chain:
                candidates = candidates & self.above(face, last_rank + 1)
            for f in sorted(candidates):
                extend(chain + ((last_rank + 1, f),))

        extend((lo,))
        return chains

    def flags(self) -> list[Flag]:
        return self.chains(self.bottom, self.top)

    def representative_sections(self, min_gap: int) -> list[tuple[Face, Face]]:
        """
        One (lo, hi) pair from every orbit of sections with rank(hi) - rank(lo) >= min_gap.
        """
        sections = []
        for lo_rank in range(-1, self.rank):
            for hi_rank in range(lo_rank + min_gap, self.rank + 1):
                if lo_rank >= 0:
                    lo = (lo_rank, 0)
                    sections.extend((lo, (hi_rank, h)) for h in sorted(self.above(lo, hi_rank)))
                else:
                    sections.append((self.bottom, (hi_rank, 0)))
        return sections


def build_pre_polytope(system: RotationSystem, budget: Optional[int] = None) -> FacePoset:
    budget = settings.ORACLE_BUDGET if budget is None else budget
    if system.order > budget:
        raise OracleBudgetExceeded(f"{system.label} has order {system.order}, the oracle budget is {budget}")
    n = system.rank
    labels = []
    for i in range(n):
        indices = set(range(n)) - {i}
        gens = [system.evaluate(w) for w in standard_generators(n, indices)]
        graph = nx.Graph()
        graph.add_nodes_from(range(system.order))
        for h in gens:
            graph.add_edges_from(enumerate(system.group.right_multiplication(h).tolist()))
        label = np.empty(system.order, dtype=np.int64)
        components = sorted(nx.connected_components(graph), key=min)
        for face_id, component in enumerate(components):
            label[list(component)] = face_id
        labels.append(label)
    poset = FacePoset(n, labels)
    logger.debug(f"Built pre-polytope of {system.label}: face counts {poset.counts}")
    return poset


def find_diamond_failure(poset: FacePoset) -> Optional[tuple[Face, Face]]:
    for lo, hi in poset.representative_sections(2):
        if hi[0] - lo[0] != 2:
            continue
        if len(poset.between(lo, hi, lo[0] + 1)) != 2:
            return lo, hi
    return None


def check_diamond(poset: FacePoset) -> bool:
    return find_diamond_failure(poset) is None


def _flags_connected(flags: list[Flag]) -> bool:
    if not flags:
        return False
    graph = nx.Graph()
    graph.add_nodes_from(flags)
    length = len(flags[0])
    for position in range(1, length - 1):
        buckets: dict[Flag, list[Flag]] = defaultdict(list)
        for flag in flags:
            buckets[flag[:position] + flag[position + 1 :]].append(flag)
        for bucket in buckets.values():
            graph.add_edges_from(zip(bucket, bucket[1:]))
    return nx.is_connected(graph)


def find_disconnected_section(poset: FacePoset) -> Optional[tuple[Face, Face]]:
    for lo, hi in poset.representative_sections(3):
        if not _flags_connected(poset.chains(lo, hi)):
            return lo, hi
    return None


def check_flag_connectivity(poset: FacePoset, strong: bool) -> bool:
    if strong:
        return find_disconnected_section(poset) is None
    return _flags_connected(poset.flags())


def combinatorial_verdict(poset: FacePoset) -> bool:
    return check_diamond(poset) and check_flag_connectivity(poset, strong=True)


def _describe(face: Face) -> str:
    return f"{face[0]}-face {face[1]}"


def oracle_report(system: RotationSystem, budget: Optional[int] = None) -> OracleReport:
    poset = build_pre_polytope(system, budget)
    diamond_failure = find_diamond_failure(poset)
    section_failure = find_disconnected_section(poset)
    failure = None
    if diamond_failure:
        lo, hi = diamond_failure
        failure = f"diamond condition fails between {_describe(lo)} and {_describe(hi)}"
    elif section_failure:
        lo, hi = section_failure
        failure = f"section between {_describe(lo)} and {_describe(hi)} is not flag-connected"
    holds, _ = check_intersection_property(system)
    report = OracleReport(
        label=system.label,
        order=system.order,
        face_counts=poset.counts,
        flags=len(poset.flags()),
        diamond=diamond_failure is None,
        weakly_connected=check_flag_connectivity(poset, strong=False),
        strongly_connected=section_failure is None,
        intersection_property=holds,
        failure=failure,
    )
    if not report.agrees:
        logger.error(f"Oracle and intersection property disagree on {system.label}")
    return report
