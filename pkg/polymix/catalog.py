"""
Named presentations: universal rotation groups [p1,...,p_{n-1}]+, the three torus map families, and
the presentation-level dual and mirror operators.

Catalog names are `{3,3,3}` for universal groups and `{3,6}(1,2)`, `{6,3}(1,2)`, `{4,4}(1,2)` for
torus maps.
"""

import logging
import re

from polymix.models import CatalogEntry, Presentation, SchlafliType, TorusMapParams, Word
from polymix.words import dual_word, enantiomorph, generator, parse_word, power

logger = logging.getLogger("polymix")


class UnknownCatalogEntryError(ValueError):
    """Exception raised when a catalog name does not match any family."""

    pass


_UNIVERSAL_NAME = re.compile(r"\{(\d+(?:,\d+)*)\}")
_TORUS_NAME = re.compile(r"\{(3,6|6,3|4,4)\}\((\d+),(\d+)\)")

# shown by `polymix catalog`; any name matching the patterns above also resolves
CATALOG_NAMES = [
    "{3,3}",
    "{3,4}",
    "{4,3}",
    "{3,5}",
    "{5,3}",
    "{2,2,2}",
    "{3,3,3}",
    "{4,3,3}",
    "{3,3,4}",
    "{3,6}(1,1)",
    "{3,6}(1,2)",
    "{3,6}(2,1)",
    "{3,6}(1,3)",
    "{3,6}(2,3)",
    "{6,3}(1,2)",
    "{6,3}(2,1)",
    "{4,4}(1,2)",
    "{4,4}(1,3)",
    "{4,4}(2,3)",
]


def universal_rotation(schlafli: SchlafliType) -> Presentation:
    rank = schlafli.rank
    relators = tuple(power(generator(i, rank), p) for i, p in enumerate(schlafli.entries, start=1))
    return Presentation(
        rank=rank,
        relators=relators,
        label=str(schlafli),
        provenance="universal rotation group " + "[" + ",".join(str(p) for p in schlafli.entries) + "]+",
    )


def _translation_relator_3_6(b: int, c: int) -> Word:
    return parse_word(f"(s1 s2^-1 s1^-1 s2)^{b} (s2 s1 s2^-1 s1^-1)^{c}", 3)


def _translation_relator_4_4(b: int, c: int) -> Word:
    # s1 s2^-1 and s2^-1 s1 are the two unit translations of the square tiling
    return parse_word(f"(s1 s2^-1)^{b} (s2^-1 s1)^{c}", 3)


def torus_map(params: TorusMapParams) -> Presentation:
    b, c = params.b, params.c
    if params.kind == "{3,6}":
        return Presentation(
            rank=3,
            relators=(parse_word("s1^3", 3), parse_word("s2^6", 3), _translation_relator_3_6(b, c)),
            label=params.name,
            provenance=f"chiral torus map family {{3,6}}_(b,c), m = {params.m}",
        )
    if params.kind == "{6,3}":
        primal = torus_map(TorusMapParams(kind="{3,6}", b=b, c=c))
        return dual_presentation(primal).model_copy(
            update={"label": params.name, "provenance": f"dual of {primal.label}, m = {params.m}"}
        )
    return Presentation(
        rank=3,
        relators=(parse_word("s1^4", 3), parse_word("s2^4", 3), _translation_relator_4_4(b, c)),
        label=params.name,
        provenance=f"torus map family {{4,4}}_(b,c), m = {params.m}",
        experimental=True,
    )


def dual_presentation(presentation: Presentation) -> Presentation:
    return Presentation(
        rank=presentation.rank,
        relators=tuple(dual_word(r) for r in presentation.relators),
        label=f"dual({presentation.label})",
        provenance=presentation.provenance,
        experimental=presentation.experimental,
    )


def mirror_presentation(presentation: Presentation) -> Presentation:
    return Presentation(
        rank=presentation.rank,
        relators=tuple(enantiomorph(r) for r in presentation.relators),
        label=f"mirror({presentation.label})",
        provenance=presentation.provenance,
        experimental=presentation.experimental,
    )


def parse_catalog_name(name: str) -> SchlafliType | TorusMapParams:
    compact = re.sub(r"\s+", "", name)
    match = _TORUS_NAME.fullmatch(compact)
    if match:
        kind, b, c = match.groups()
        return TorusMapParams(kind="{" + kind + "}", b=int(b), c=int(c))  # type: ignore[arg-type]
    match = _UNIVERSAL_NAME.fullmatch(compact)
    if match:
        return SchlafliType(entries=tuple(int(p) for p in match.group(1).split(",")))
    raise UnknownCatalogEntryError(f"Unknown catalog entry {name!r}")


def lookup(name: str) -> Presentation:
    parsed = parse_catalog_name(name)
    if isinstance(parsed, TorusMapParams):
        return torus_map(parsed)
    return universal_rotation(parsed)


def catalog_names() -> list[str]:
    return list(CATALOG_NAMES)


def catalog_entries() -> list[CatalogEntry]:
    entries = []
    for name in CATALOG_NAMES:
        presentation = lookup(name)
        entries.append(
            CatalogEntry(
                name=name,
                rank=presentation.rank,
                provenance=presentation.provenance,
                experimental=presentation.experimental,
            )
        )
    return entries


def _lattice_key(v: tuple[int, int], u: tuple[int, int], w: tuple[int, int], det: int) -> tuple[int, int]:
    # coordinates of v in the basis (u, w), scaled by det and reduced mod det
    return ((v[0] * w[1] - v[1] * w[0]) % det, (u[0] * v[1] - u[1] * v[0]) % det)


def torus_lattice_flags(params: TorusMapParams) -> int:
    """
    Count the flags of a torus map by building it directly as a tiling of the plane modulo the
    lattice spanned by (b, c) and its rotation. Independent of any presentation.

    {3,6} uses Eisenstein coordinates (unit vectors (1,0) and (0,1) at 60 degrees); {6,3} is its dual
    and has the same flags.
    """
    b, c = params.b, params.c
    if params.kind == "{4,4}":
        u, w = (b, c), (-c, b)
    else:
        u, w = (b, c), (-c, b + c)
    det = u[0] * w[1] - u[1] * w[0]

    def key(x: int, y: int) -> tuple[int, int]:
        return _lattice_key((x, y), u, w, det)

    flags: set[tuple] = set()
    for x in range(det):
        for y in range(det):
            if params.kind == "{4,4}":
                cells = [
                    (
                        ("square", key(x, y)),
                        [
                            ((x, y), (1, 0), (x + 1, y)),
                            ((x + 1, y), (0, 1), (x + 1, y + 1)),
                            ((x, y + 1), (1, 0), (x + 1, y + 1)),
                            ((x, y), (0, 1), (x, y + 1)),
                        ],
                    )
                ]
            else:
                cells = [
                    (
                        ("up", key(x, y)),
                        [
                            ((x, y), (1, 0), (x + 1, y)),
                            ((x, y), (0, 1), (x, y + 1)),
                            ((x + 1, y), (-1, 1), (x, y + 1)),
                        ],
                    ),
                    (
                        ("down", key(x, y)),
                        [
                            ((x, y + 1), (1, 0), (x + 1, y + 1)),
                            ((x + 1, y), (0, 1), (x + 1, y + 1)),
                            ((x + 1, y), (-1, 1), (x, y + 1)),
                        ],
                    ),
                ]
            for face, edges in cells:
                for start, direction, end in edges:
                    edge = (key(*start), direction)
                    flags.add((face, key(*start), edge))
                    flags.add((face, key(*end), edge))
    logger.debug(f"Lattice construction of {params.name}: {len(flags)} flags")
    return len(flags)
