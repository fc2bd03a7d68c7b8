"""
Mixing and comixing rotation groups.

The mix of P and Q is the subgroup of Gamma(P) x Gamma(Q) generated by the pairs (s_i, s_i'); it is
built by closure and realized by its own regular action, so it is again a RotationSystem. The comix
is presented by the union of both relator lists. Their orders multiply to |P| |Q|, which is checked
rather than assumed.
"""

import logging
import math
from collections import deque
from typing import Literal, Optional

import numpy as np

from polymix.coset_enumeration import EnumerationOverflow
from polymix.groups import ConcreteGroup, realize
from polymix.models import MixReport, MixVariant, Presentation, RankMismatchError, SchlafliType, Verdict
from polymix.rotation import (
    IndexPair,
    RotationSystem,
    check_intersection_property,
    classify_self_duality,
    is_directly_regular,
    schlafli_type,
    standard_subgroup,
)
from polymix.settings import settings
from polymix.validators import is_prime, pairwise_coprime_entries

logger = logging.getLogger("polymix")


class MixResult:
    def __init__(
        self,
        system: RotationSystem,
        factors: tuple[RotationSystem, RotationSystem],
        comix_order: int,
        first: np.ndarray,
        second: np.ndarray,
        variant: Optional[MixVariant] = None,
    ):
        self.system = system
        self.factors = factors
        self.comix_order = comix_order
        # first[x], second[x]: the coordinates of mix element x in each factor
        self.first = first
        self.second = second
        self.variant = variant

    @property
    def order(self) -> int:
        return self.system.order


def _check_ranks(p: RotationSystem | Presentation, q: RotationSystem | Presentation) -> None:
    if p.rank != q.rank:
        raise RankMismatchError(f"Cannot mix systems of rank {p.rank} and {q.rank}")


def direct_product_closure(p: ConcreteGroup, q: ConcreteGroup, limit: int) -> tuple[ConcreteGroup, np.ndarray, np.ndarray]:
    """
    Breadth-first closure of the paired generators inside p x q. Returns the closure as a
    ConcreteGroup plus the two coordinate projections.
    """
    p_rows, q_rows = p.table.tolist(), q.table.tolist()
    ncols = p.table.shape[1]
    pairs = [(p.identity, q.identity)]
    ids = {pairs[0]: 0}
    rows: list[list[int]] = []
    queue = deque([0])
    while queue:
        x = queue.popleft()
        a, b = pairs[x]
        row = []
        for col in range(ncols):
            pair = (p_rows[a][col], q_rows[b][col])
            y = ids.get(pair)
            if y is None:
                if len(pairs) >= limit:
                    raise EnumerationOverflow(f"Mix closure exceeded {limit} elements")
                y = len(pairs)
                ids[pair] = y
                pairs.append(pair)
                queue.append(y)
            row.append(y)
        rows.append(row)
    coordinates = np.array(pairs, dtype=np.int64)
    group = ConcreteGroup(p.rank, np.array(rows, dtype=np.int64))
    return group, coordinates[:, 0], coordinates[:, 1]


def comix(p: Presentation, q: Presentation, limit: Optional[int] = None) -> tuple[Presentation, int]:
    _check_ranks(p, q)
    presentation = Presentation(
        rank=p.rank,
        relators=p.relators + q.relators,
        label=f"({p.label})[]({q.label})",
        experimental=p.experimental or q.experimental,
    )
    return presentation, realize(presentation, limit).order


def comix_order(p: RotationSystem, q: RotationSystem, mix_order: Optional[int] = None, limit: Optional[int] = None) -> int:
    """
    |P [] Q| from the concatenated presentation when both systems have one, otherwise from the size
    identity, which then needs the mix order.
    """
    if p.source is not None and q.source is not None:
        return comix(p.source, q.source, limit)[1]
    if mix_order is None:
        mix_order = mix(p, q, limit).order
    return p.order * q.order // mix_order


def mix(p: RotationSystem, q: RotationSystem, limit: Optional[int] = None, variant: Optional[MixVariant] = None) -> MixResult:
    _check_ranks(p, q)
    limit = settings.COSET_LIMIT if limit is None else limit
    group, first, second = direct_product_closure(p.group, q.group, limit)
    system = RotationSystem(group, label=f"({p.label})<>({q.label})", factors=(p, q))
    result = MixResult(system, (p, q), comix_order(p, q, group.order, limit), first, second, variant)
    logger.info(f"Mixed {p.label} and {q.label}: order {result.order}, comix order {result.comix_order}")
    return result


def verify_size_identity(p: RotationSystem, q: RotationSystem, limit: Optional[int] = None) -> bool:
    """
    |P<>Q| . |P[]Q| = |P| . |Q|, and a trivial comix leaves the full direct product as the mix.
    Only meaningful when both systems have presentations; otherwise the comix order is itself
    derived from this identity.
    """
    result = mix(p, q, limit)
    product = p.order * q.order
    holds = result.order * result.comix_order == product
    if result.comix_order == 1:
        holds = holds and result.order == product
    if not holds:
        logger.warning(f"Size identity fails for {p.label}, {q.label}: {result.order} * {result.comix_order} != {product}")
    return holds


def self_dual_mix(p: RotationSystem, variant: MixVariant = "proper", limit: Optional[int] = None) -> MixResult:
    """
    P mixed with its dual (proper) or with its mirrored dual (improper).
    """
    partner = p.dual() if variant == "proper" else p.dual().mirror()
    return mix(p, partner, limit, variant=variant)


def mix_polytopality(result: MixResult) -> tuple[Verdict, str, Optional[IndexPair]]:
    """
    Polytopality of a mix and the rule that decided it. Rank three and coprime types are settled
    without any subgroup work.
    """
    p, q = result.factors
    if p.rank == 3:
        return "yes", "rank-three-mix", None
    coprime = pairwise_coprime_entries(schlafli_type(p).entries, schlafli_type(q).entries)
    if coprime and result.order == p.order * q.order:
        return "yes", "coprime-types", None
    holds, witness = check_intersection_property(result.system)
    return ("yes" if holds else "no"), "intersection-property", witness


def even_rank_obstruction_for_type(schlafli: SchlafliType) -> bool:
    n = schlafli.rank
    if n % 2 or n < 4:
        return False
    m = n // 2
    entries = schlafli.entries
    return math.gcd(entries[m - 2], entries[m]) == 1 and entries[m - 1] >= 3


def even_rank_obstruction(p: RotationSystem) -> bool:
    """
    True when the type forces P<>P^dual to fail the intersection property: even rank n = 2m,
    p_{m-1} and p_{m+1} coprime, and p_m at least 3.
    """
    return even_rank_obstruction_for_type(schlafli_type(p))


def four_polytopality_criterion(
    facet: RotationSystem,
    vertex_figure: RotationSystem,
    p: Optional[RotationSystem] = None,
    limit: Optional[int] = None,
) -> Literal["polytopal", "inconclusive"]:
    """
    For a rank four P with facets K of type {p, q} and vertex figures L: P<>P^dual is polytopal if q
    is prime and q^2 does not divide |K<>L^dual|. Never concludes the opposite.
    """
    if facet.rank != 3 or vertex_figure.rank != 3:
        raise RankMismatchError("Facet and vertex figure must have rank 3")
    if p is not None and p.rank != 4:
        raise RankMismatchError(f"Expected a rank 4 system, got rank {p.rank}")
    q = schlafli_type(facet).entries[1]
    if not is_prime(q):
        return "inconclusive"
    order = mix(facet, vertex_figure.dual(), limit).order
    if order % (q * q) == 0:
        return "inconclusive"
    return "polytopal"


def mix_chirality_by_covering(p: RotationSystem, q: RotationSystem, limit: Optional[int] = None) -> bool:
    """
    True when P<>Q is certainly chiral: a directly regular P<>Q would cover P<>mirror(P), so its order
    would be a multiple of |P<>mirror(P)|.
    """
    mirror_mix_order = mix(p, p.mirror(), limit).order
    mixed_order = mix(p, q, limit).order
    return mixed_order % mirror_mix_order != 0


def face_vector(system: RotationSystem) -> tuple[list[int], int]:
    """Faces of each rank 0 .. n-1, as indices of the standard subgroups, and the flag count."""
    n = system.rank
    counts = [system.order // standard_subgroup(system, set(range(n)) - {i}).order for i in range(n)]
    return counts, 2 * system.order


def factor_meets_contain(result: MixResult, left: tuple[int, ...], right: tuple[int, ...]) -> bool:
    """
    Does the intersection of the mix subgroups for `left` and `right` project into the factor
    subgroups for their meet?
    """
    p, q = result.factors
    system = result.system
    meet = set(left) & set(right)
    elements = np.flatnonzero(standard_subgroup(system, left).mask & standard_subgroup(system, right).mask)
    in_p = standard_subgroup(p, meet).mask[result.first[elements]]
    in_q = standard_subgroup(q, meet).mask[result.second[elements]]
    return bool(in_p.all() and in_q.all())


def mix_report(result: MixResult) -> MixReport:
    p, q = result.factors
    verdict, tag, witness = mix_polytopality(result)
    size_identity_ok = result.order * result.comix_order == p.order * q.order
    system = result.system
    return MixReport(
        order=result.order,
        type=list(schlafli_type(system).entries),
        polytopal=verdict,
        witness=(list(witness[0]), list(witness[1])) if witness else None,
        regularity="directly_regular" if is_directly_regular(system) else "chiral",
        self_duality=classify_self_duality(system),
        criteria_fired=[tag],
        factors=[p.label, q.label],
        comix_order=result.comix_order,
        size_identity_ok=size_identity_ok,
        variant=result.variant,
    )
