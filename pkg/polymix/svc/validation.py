"""
Validation of torus map presentations against a direct geometric construction.

The {4,4}_(b,c) translation relator is not taken on trust: an entry stays experimental until its
realized group has exactly half as many elements as the lattice-quotient map has flags, and, for the
chiral maps, until it classifies as improperly self-dual.
"""

import logging
from typing import Optional

from polymix.catalog import torus_lattice_flags, torus_map
from polymix.models import Presentation, TorusMapParams
from polymix.rotation import RotationSystem, classify_self_duality

logger = logging.getLogger("polymix")


class ExperimentalEntryError(Exception):
    """Exception raised when a torus map presentation disagrees with the lattice construction."""

    pass


def validate_torus_map(params: TorusMapParams, limit: Optional[int] = None) -> Presentation:
    presentation = torus_map(params)
    system = RotationSystem.from_presentation(presentation, limit)

    lattice_flags = torus_lattice_flags(params)
    if 2 * system.order != lattice_flags:
        raise ExperimentalEntryError(
            f"{params.name}: presentation has order {system.order} but the lattice map has {lattice_flags} flags"
        )

    if params.kind == "{4,4}":
        chiral = params.b != params.c and params.b * params.c != 0
        expected = "improperly_self_dual" if chiral else "properly_self_dual"
        actual = classify_self_duality(system)
        if actual != expected:
            raise ExperimentalEntryError(f"{params.name}: expected {expected}, classified as {actual}")

    logger.info(f"Validated {params.name}: order {system.order}, {lattice_flags} lattice flags")
    return presentation.model_copy(update={"experimental": False})
