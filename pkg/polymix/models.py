"""
Models shared by every layer: words, presentations, Schläfli types, torus map parameters, and the
reports the CLI prints. They validate on construction and are json-serializable, so a report can be
emitted and read back without any hand-written (de)serialization.
"""

from pathlib import Path
from typing import Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, computed_field, field_validator, model_validator

# (generator index, exponent), exponent is +1 or -1
Letter = tuple[int, int]

Verdict = Literal["yes", "no", "unknown"]
Regularity = Literal["directly_regular", "chiral"]
SelfDuality = Literal["not_self_dual", "properly_self_dual", "improperly_self_dual"]
MixVariant = Literal["proper", "improper"]


class RankMismatchError(ValueError):
    """Exception raised when words, presentations or rotation systems of different rank are combined."""

    pass


class Word(BaseModel):
    """
    A freely reduced word in the generators s1 ... s_{rank-1} of the free group underlying W+.

    Powers are always expanded, so `s1^3` is stored as three (1, 1) letters.
    """

    model_config = ConfigDict(frozen=True)

    rank: int
    letters: tuple[Letter, ...] = ()

    @field_validator("rank")
    @classmethod
    def rank_must_be_valid(cls, v: int) -> int:
        if v < 2:
            raise ValueError("Rank must be at least 2")
        return v

    @model_validator(mode="after")
    def letters_must_be_reduced(self) -> "Word":
        for index, exponent in self.letters:
            if not 1 <= index < self.rank:
                raise ValueError(f"Generator s{index} is out of range for rank {self.rank}")
            if exponent not in (1, -1):
                raise ValueError(f"Exponent must be +1 or -1, got {exponent}")
        for (i, e), (j, f) in zip(self.letters, self.letters[1:]):
            if i == j and e == -f:
                raise ValueError("Word is not freely reduced")
        return self

    @staticmethod
    def identity(rank: int) -> "Word":
        return Word(rank=rank)

    @property
    def length(self) -> int:
        return len(self.letters)

    def is_identity(self) -> bool:
        return not self.letters

    def __str__(self) -> str:
        if not self.letters:
            return "e"
        parts: list[str] = []
        run_letter, run_length = self.letters[0], 0
        for letter in self.letters:
            if letter == run_letter:
                run_length += 1
                continue
            parts.append(_format_run(run_letter, run_length))
            run_letter, run_length = letter, 1
        parts.append(_format_run(run_letter, run_length))
        return " ".join(parts)


def _format_run(letter: Letter, length: int) -> str:
    index, exponent = letter
    power = exponent * length
    return f"s{index}" if power == 1 else f"s{index}^{power}"


class Presentation(BaseModel):
    """
    A rank plus explicit relators. The W+ relators (s_i ... s_j)^2, 1 <= i < j <= rank-1, are always
    implied and never stored.
    """

    model_config = ConfigDict(frozen=True)

    rank: int
    relators: tuple[Word, ...] = ()
    label: str = ""
    provenance: str = ""
    experimental: bool = False

    @model_validator(mode="after")
    def relator_ranks_must_match(self) -> "Presentation":
        for relator in self.relators:
            if relator.rank != self.rank:
                raise RankMismatchError(f"Relator {relator} has rank {relator.rank}, presentation has rank {self.rank}")
        return self

    def implicit_relators(self) -> tuple[Word, ...]:
        relators = []
        for i in range(1, self.rank):
            for j in range(i + 1, self.rank):
                block = tuple((k, 1) for k in range(i, j + 1))
                relators.append(Word(rank=self.rank, letters=block + block))
        return tuple(relators)

    def all_relators(self) -> tuple[Word, ...]:
        return self.implicit_relators() + self.relators

    def relator_set(self) -> frozenset[Word]:
        """Explicit relators up to cyclic rotation and inversion, trivial ones dropped."""
        from polymix.words import canonical_relator

        canonical = (canonical_relator(r) for r in self.relators)
        return frozenset(r for r in canonical if not r.is_identity())


class SchlafliType(BaseModel):
    model_config = ConfigDict(frozen=True)

    entries: tuple[int, ...]

    @field_validator("entries")
    @classmethod
    def entries_must_be_valid(cls, v: tuple[int, ...]) -> tuple[int, ...]:
        if not v:
            raise ValueError("A Schläfli type needs at least one entry")
        if any(p < 2 for p in v):
            raise ValueError(f"Every entry of a Schläfli type must be at least 2, got {list(v)}")
        return v

    @property
    def rank(self) -> int:
        return len(self.entries) + 1

    def reversed(self) -> "SchlafliType":
        return SchlafliType(entries=tuple(reversed(self.entries)))

    def is_palindromic(self) -> bool:
        return self.entries == tuple(reversed(self.entries))

    def __str__(self) -> str:
        return "{" + ",".join(str(p) for p in self.entries) + "}"


class TorusMapParams(BaseModel):
    model_config = ConfigDict(frozen=True)

    kind: Literal["{4,4}", "{3,6}", "{6,3}"]
    b: int = Field(ge=0)
    c: int = Field(ge=0)

    @model_validator(mode="after")
    def params_must_not_vanish(self) -> "TorusMapParams":
        if self.b == 0 and self.c == 0:
            raise ValueError("(b, c) must not be (0, 0)")
        return self

    @computed_field  # type: ignore[prop-decorator]
    @property
    def m(self) -> int:
        if self.kind == "{4,4}":
            return self.b * self.b + self.c * self.c
        return self.b * self.b + self.b * self.c + self.c * self.c

    @property
    def name(self) -> str:
        return f"{self.kind}({self.b},{self.c})"


class ClassificationReport(BaseModel):
    order: int
    type: list[int]
    polytopal: Verdict
    # failing (I, J) pair of the intersection property
    witness: Optional[tuple[list[int], list[int]]] = None
    regularity: Regularity
    self_duality: SelfDuality
    criteria_fired: list[str] = []

    @model_validator(mode="after")
    def witness_required_when_not_polytopal(self) -> "ClassificationReport":
        if self.polytopal == "no" and self.witness is None:
            raise ValueError("A 'no' polytopality verdict needs a witness")
        return self


class MixReport(ClassificationReport):
    factors: list[str]
    comix_order: int
    size_identity_ok: bool
    variant: Optional[MixVariant] = None


class CriteriaReport(BaseModel):
    label: str
    order: int
    type: list[int]
    criteria_fired: list[str]
    evaluated: list[str]
    skipped: list[str] = []
    comix_dual_order: int
    comix_mirror_order: int
    lcm_bound: int
    mirror_mix_order: Optional[int] = None
    mix_order: int
    mix_directly_regular: bool
    consistent: bool


class OracleReport(BaseModel):
    label: str
    order: int
    face_counts: list[int]
    flags: int
    diamond: bool
    weakly_connected: bool
    strongly_connected: bool
    intersection_property: bool
    failure: Optional[str] = None

    @computed_field  # type: ignore[prop-decorator]
    @property
    def agrees(self) -> bool:
        return self.intersection_property == (self.diamond and self.strongly_connected)


class ReproductionCheck(BaseModel):
    tag: str
    expected: str
    actual: str
    ok: bool


class ReproductionRow(BaseModel):
    b: int
    c: int
    m: int
    status: Literal["pass", "fail", "skipped"]
    reason: Optional[str] = None
    checks: list[ReproductionCheck] = []


class ReproductionReport(BaseModel):
    rows: list[ReproductionRow]

    @computed_field  # type: ignore[prop-decorator]
    @property
    def passed(self) -> bool:
        return all(row.status != "fail" for row in self.rows)


class CatalogEntry(BaseModel):
    name: str
    rank: int
    provenance: str
    experimental: bool = False


class CatalogListing(BaseModel):
    entries: list[CatalogEntry]


class JobConfig(BaseModel):
    """
    One CLI invocation, fully resolved: which command, on which inputs, under which limits.
    """

    command: Literal["catalog", "emit", "classify", "mix", "selfdual", "criteria", "oracle", "reproduce", "validate"]
    inputs: list[str] = []
    coset_limit: int
    oracle_budget: int
    output_format: Literal["json", "table"] = "table"
    name: Optional[str] = None
    out: Optional[Path] = None
    variant: MixVariant = "proper"
    pairs: list[tuple[int, int]] = []
    exhaustive: bool = False

    @field_validator("coset_limit", "oracle_budget")
    @classmethod
    def limits_must_be_positive(cls, v: int) -> int:
        if v < 1:
            raise ValueError("Limits must be positive")
        return v

    @model_validator(mode="after")
    def inputs_must_match_command(self) -> "JobConfig":
        expected = {"classify": 1, "mix": 2, "selfdual": 1, "criteria": 1, "oracle": 1}.get(self.command, 0)
        if len(self.inputs) != expected:
            raise ValueError(f"Command '{self.command}' takes {expected} presentation(s), got {len(self.inputs)}")
        if self.command in ("emit", "validate") and not self.name:
            raise ValueError(f"Command '{self.command}' needs a catalog name")
        return self
