"""
Presentation text files.

    rank 3
    name {3,6}(1,2)
    # comment lines and blank lines are ignored
    s1^3
    s2^6
    (s1 s2^-1 s1^-1 s2)^1 (s2 s1 s2^-1 s1^-1)^2

After `rank` and `name`, optional `provenance <text>` and `experimental` header lines may follow.
Every other line is one relator in the word grammar. The implicit rotation-group relators are never
written.
"""

import logging
from pathlib import Path

from pydantic import ValidationError

from polymix.models import Presentation
from polymix.words import WordIndexError, WordSyntaxError, format_word, parse_word

logger = logging.getLogger("polymix")


class PresentationFormatError(ValueError):
    """Exception raised for a malformed presentation file."""

    pass


def parse_presentation(text: str) -> Presentation:
    lines = [
        (number, line.strip())
        for number, line in enumerate(text.splitlines(), start=1)
        if line.strip() and not line.strip().startswith("#")
    ]
    if len(lines) < 2:
        raise PresentationFormatError("A presentation needs a 'rank' line and a 'name' line")

    (rank_number, rank_line), (name_number, name_line) = lines[0], lines[1]
    keyword, _, value = rank_line.partition(" ")
    if keyword != "rank" or not value.strip().isdigit():
        raise PresentationFormatError(f"Line {rank_number}: expected 'rank <n>', got {rank_line!r}")
    rank = int(value)
    if rank < 2:
        raise PresentationFormatError(f"Line {rank_number}: rank must be at least 2")
    keyword, _, label = name_line.partition(" ")
    if keyword != "name":
        raise PresentationFormatError(f"Line {name_number}: expected 'name <label>', got {name_line!r}")

    provenance = ""
    experimental = False
    relators = []
    for number, line in lines[2:]:
        keyword, _, value = line.partition(" ")
        if keyword == "provenance" and not relators:
            provenance = value.strip()
            continue
        if keyword == "experimental" and not relators:
            experimental = True
            continue
        try:
            relators.append(parse_word(line, rank))
        except (WordSyntaxError, WordIndexError) as e:
            raise PresentationFormatError(f"Line {number}: {e}") from e

    try:
        return Presentation(rank=rank, relators=tuple(relators), label=label.strip(), provenance=provenance, experimental=experimental)
    except ValidationError as e:
        raise PresentationFormatError(str(e)) from e


def format_presentation(presentation: Presentation) -> str:
    lines = [f"rank {presentation.rank}", f"name {presentation.label}"]
    if presentation.provenance:
        lines.append(f"provenance {presentation.provenance}")
    if presentation.experimental:
        lines.append("experimental")
    lines.extend(format_word(r) for r in presentation.relators)
    return "\n".join(lines) + "\n"


def read_presentation(path: Path) -> Presentation:
    presentation = parse_presentation(path.read_text())
    logger.debug(f"Read presentation {presentation.label!r} from {path}")
    return presentation


def write_presentation(presentation: Presentation, path: Path) -> None:
    path.write_text(format_presentation(presentation))
    logger.info(f"Wrote presentation {presentation.label!r} to {path}")
