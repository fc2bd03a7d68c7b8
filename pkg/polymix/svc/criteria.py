"""
Sufficient conditions for P<>P^dual to be chiral, given a chiral P.

Every criterion is one-directional: it either fires (the mix is chiral) or says nothing. The direct
automorphism test on the mix is always run as well, and a fired criterion that disagrees with it
marks the report inconsistent.
"""

import logging
import math
from typing import Optional

from polymix.catalog import universal_rotation
from polymix.coset_enumeration import EnumerationOverflow
from polymix.models import CriteriaReport
from polymix.rotation import RotationSystem, is_directly_regular, schlafli_type
from polymix.settings import settings
from polymix.svc.mixer import MixResult, comix, comix_order, mix
from polymix.validators import lcm_all

logger = logging.getLogger("polymix")


class NotChiralError(ValueError):
    """Exception raised when chirality criteria are requested for a directly regular system."""

    pass


def lcm_bound(entries: tuple[int, ...]) -> int:
    """l = lcm(l_1/p_1, ..., l_{n-1}/p_{n-1}) with l_i = lcm(p_i, p_{n-i})."""
    n = len(entries) + 1
    return lcm_all(math.lcm(entries[i - 1], entries[n - i - 1]) // entries[i - 1] for i in range(1, n))


class _CriteriaRun:
    """Lazily computed orders shared between criteria, so each enumeration happens at most once."""

    def __init__(self, system: RotationSystem, limit: Optional[int], universal_limit: int):
        self.system = system
        self.limit = limit
        self.universal_limit = universal_limit
        self.dual = system.dual()
        self.mirror = system.mirror()
        self.dual_mix: MixResult = mix(system, self.dual, limit)
        self._mirror_mix: Optional[MixResult] = None
        self.comix_dual = comix_order(system, self.dual, self.dual_mix.order, limit)
        if system.source is not None:
            self.comix_mirror = comix_order(system, self.mirror, limit=limit)
        else:
            self.comix_mirror = system.order * system.order // self.mirror_mix.order

    @property
    def mirror_mix(self) -> MixResult:
        if self._mirror_mix is None:
            self._mirror_mix = mix(self.system, self.mirror, self.limit)
        return self._mirror_mix

    def mirror_ratio_squared(self) -> tuple[int, int]:
        # (|P<>mirror(P)| / |P|)^2 as an exact fraction
        return self.mirror_mix.order**2, self.system.order**2

    def universal_comix_order(self) -> int:
        entries = schlafli_type(self.system)
        _, order = comix(universal_rotation(entries), universal_rotation(entries.reversed()), self.universal_limit)
        return order

    def double_mix_comix_order(self) -> int:
        # (P<>mirror(P)) [] (P^dual<>mirror(P)^dual), through the size identity
        left = self.mirror_mix.system
        right = mix(self.dual, self.mirror.dual(), self.limit).system
        return left.order * right.order // mix(left, right, self.limit).order


def chirality_criteria(
    system: RotationSystem,
    exhaustive: bool = True,
    limit: Optional[int] = None,
    universal_limit: Optional[int] = None,
) -> CriteriaReport:
    """
    Evaluate every applicable criterion, cheapest first. With exhaustive=False evaluation stops at
    the first criterion that fires.
    """
    if is_directly_regular(system):
        raise NotChiralError(f"{system.label} is directly regular; chirality criteria need a chiral system")
    universal_limit = settings.UNIVERSAL_LIMIT if universal_limit is None else universal_limit
    run = _CriteriaRun(system, limit, universal_limit)
    entries = schlafli_type(system).entries
    n = system.rank
    bound = lcm_bound(entries)

    def fires_polyhedral() -> Optional[bool]:
        if n != 3:
            return None
        p, q = entries
        return run.comix_mirror * p * q < math.lcm(p, q) ** 2 * run.comix_dual

    def fires_odd_rank() -> Optional[bool]:
        if n % 2 == 0:
            return None
        if any(math.gcd(entries[i - 1], entries[n - i - 1]) != 1 for i in range(1, n)):
            return None
        return run.comix_mirror < lcm_all(entries)

    def fires_universal() -> Optional[bool]:
        try:
            universal = run.universal_comix_order()
        except EnumerationOverflow:
            logger.warning(f"Universal comix for type {list(entries)} exceeds {universal_limit} cosets; skipped")
            return None
        numerator, denominator = run.mirror_ratio_squared()
        return numerator > universal * denominator

    def fires_double_mix() -> Optional[bool]:
        try:
            double = run.double_mix_comix_order()
        except EnumerationOverflow:
            logger.warning(f"Four-fold mix for {system.label} exceeds the coset limit; skipped")
            return None
        numerator, denominator = run.mirror_ratio_squared()
        return numerator > double * denominator

    criteria = [
        ("comix-dual-exceeds-mirror", lambda: run.comix_dual > run.comix_mirror),
        ("schlafli-lcm-bound", lambda: run.comix_mirror < bound * run.comix_dual),
        ("polyhedral-lcm-bound", fires_polyhedral),
        ("odd-rank-coprime", fires_odd_rank),
        ("universal-comix-bound", fires_universal),
        ("mirror-mix-comix-bound", fires_double_mix),
        ("mirror-cover-divisibility", lambda: run.dual_mix.order % run.mirror_mix.order != 0),
    ]

    fired: list[str] = []
    evaluated: list[str] = []
    skipped: list[str] = []
    for tag, criterion in criteria:
        outcome = criterion()
        if outcome is None:
            skipped.append(tag)
            continue
        evaluated.append(tag)
        if outcome:
            fired.append(tag)
            logger.info(f"Criterion {tag} fires for {system.label}")
            if not exhaustive:
                break

    mix_directly_regular = is_directly_regular(run.dual_mix.system)
    consistent = not (fired and mix_directly_regular)
    if not consistent:
        logger.error(f"Criteria {fired} fired for {system.label} but the mix with its dual is directly regular")
    return CriteriaReport(
        label=system.label,
        order=system.order,
        type=list(entries),
        criteria_fired=fired,
        evaluated=evaluated,
        skipped=skipped,
        comix_dual_order=run.comix_dual,
        comix_mirror_order=run.comix_mirror,
        lcm_bound=bound,
        mirror_mix_order=run._mirror_mix.order if run._mirror_mix is not None else None,
        mix_order=run.dual_mix.order,
        mix_directly_regular=mix_directly_regular,
        consistent=consistent,
    )
