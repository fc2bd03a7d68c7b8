"""
Reproduction of the worked torus-map family: for chiral {3,6}_(b,c) with m = b^2 + bc + c^2 prime,
every order, flag count, face vector and classification is recomputed and compared with its
closed form in m.
"""

import logging
from collections.abc import Iterable
from typing import Optional

from polymix.catalog import dual_presentation, lookup, torus_map
from polymix.models import ReproductionCheck, ReproductionReport, ReproductionRow, TorusMapParams
from polymix.rotation import RotationSystem, covers
from polymix.svc.mixer import (
    comix,
    face_vector,
    four_polytopality_criterion,
    mix,
    mix_chirality_by_covering,
    mix_report,
    self_dual_mix,
)
from polymix.validators import is_prime

logger = logging.getLogger("polymix")

DEFAULT_PAIRS = [(1, 2), (1, 3), (2, 3)]


class _RowChecks:
    def __init__(self) -> None:
        self.checks: list[ReproductionCheck] = []

    def expect(self, tag: str, expected: object, actual: object) -> None:
        ok = expected == actual
        self.checks.append(ReproductionCheck(tag=tag, expected=str(expected), actual=str(actual), ok=ok))
        if not ok:
            logger.warning(f"Check {tag} failed: expected {expected}, got {actual}")


def skip_reason(b: int, c: int) -> Optional[str]:
    m = b * b + b * c + c * c
    if b == c:
        return "b = c, map not chiral"
    if b * c == 0:
        return "bc = 0, map not chiral"
    if m < 5 or not is_prime(m):
        return f"m = {m} is not a prime >= 5"
    return None


def reproduce_row(b: int, c: int, limit: Optional[int] = None) -> ReproductionRow:
    params = TorusMapParams(kind="{3,6}", b=b, c=c)
    m = params.m
    reason = skip_reason(b, c)
    if reason:
        logger.info(f"Skipping (b, c) = ({b}, {c}): {reason}")
        return ReproductionRow(b=b, c=c, m=m, status="skipped", reason=reason)

    row = _RowChecks()
    presentation = torus_map(params)
    p = RotationSystem.from_presentation(presentation, limit)
    row.expect("torus-order", 6 * m, p.order)
    row.expect("mirror-mix-order", 6 * m * m, mix(p, p.mirror(), limit).order)
    row.expect("dual-comix-order", 3, comix(presentation, dual_presentation(presentation), limit)[1])

    proper = self_dual_mix(p, "proper", limit)
    proper_faces, proper_flags = face_vector(proper.system)
    row.expect("dual-mix-order", 12 * m * m, proper.order)
    row.expect("dual-mix-flags", 24 * m * m, proper_flags)
    row.expect("dual-mix-faces", [2 * m * m, 6 * m * m, 2 * m * m], proper_faces)
    proper_report = mix_report(proper)
    row.expect("dual-mix-type", [6, 6], proper_report.type)
    row.expect(
        "dual-mix-classification",
        ("yes", "chiral", "properly_self_dual"),
        (proper_report.polytopal, proper_report.regularity, proper_report.self_duality),
    )

    improper = self_dual_mix(p, "improper", limit)
    improper_faces, improper_flags = face_vector(improper.system)
    row.expect("improper-mix-counts", (proper.order, proper_flags, proper_faces), (improper.order, improper_flags, improper_faces))
    improper_report = mix_report(improper)
    row.expect(
        "improper-mix-classification",
        ("chiral", "improperly_self_dual"),
        (improper_report.regularity, improper_report.self_duality),
    )

    facet = RotationSystem.from_presentation(torus_map(TorusMapParams(kind="{6,3}", b=b, c=c)), limit)
    vertex_figure = RotationSystem.from_presentation(lookup("{3,3}"), limit)
    facet_mix = mix(facet, vertex_figure, limit)
    facet_faces, _ = face_vector(facet_mix.system)
    row.expect("facet-mix-order", 24 * m, facet_mix.order)
    row.expect("facet-faces", [8 * m, 12 * m, 4 * m], facet_faces)
    row.expect("facet-euler", 0, facet_faces[0] - facet_faces[1] + facet_faces[2])
    row.expect("facet-chirality", True, mix_chirality_by_covering(facet, vertex_figure, limit))

    # a map and its mirror image are isomorphic, so either orientation of {6,3}_(2b,2c) identifies
    identified = False
    for bb, cc in ((2 * b, 2 * c), (2 * c, 2 * b)):
        target = RotationSystem.from_presentation(torus_map(TorusMapParams(kind="{6,3}", b=bb, c=cc)), limit)
        if target.order == facet_mix.order and covers(facet_mix.system, target) and covers(target, facet_mix.system):
            identified = True
            break
    row.expect("facet-identification", True, identified)
    row.expect("four-polytopality", "polytopal", four_polytopality_criterion(facet, vertex_figure, limit=limit))

    status = "pass" if all(check.ok for check in row.checks) else "fail"
    logger.info(f"Row (b, c) = ({b}, {c}), m = {m}: {status}")
    return ReproductionRow(b=b, c=c, m=m, status=status, checks=row.checks)


def reproduce_torus_family(pairs: Iterable[tuple[int, int]] = DEFAULT_PAIRS, limit: Optional[int] = None) -> ReproductionReport:
    return ReproductionReport(rows=[reproduce_row(b, c, limit) for b, c in pairs])
