"""
Tests for the Pydantic models in polymix/models.py, focusing on validation rules.
"""

import pytest
from pydantic import ValidationError

from polymix.models import (
    ClassificationReport,
    JobConfig,
    OracleReport,
    Presentation,
    ReproductionReport,
    ReproductionRow,
    SchlafliType,
    TorusMapParams,
    Word,
)
from polymix.words import parse_word


def test_word_rank_validation():
    """Rank must be at least 2."""
    with pytest.raises(ValidationError) as exc_info:
        Word(rank=1)

    error_details = exc_info.value.errors()
    assert any("Rank must be at least 2" in str(err["msg"]) for err in error_details)


@pytest.mark.parametrize(
    "letters, message",
    [
        (((3, 1),), "out of range"),
        (((1, 2),), "Exponent must be +1 or -1"),
        (((1, 1), (1, -1)), "not freely reduced"),
    ],
)
def test_word_letter_validation(letters, message):
    with pytest.raises(ValidationError) as exc_info:
        Word(rank=3, letters=letters)

    assert any(message in str(err["msg"]) for err in exc_info.value.errors())


@pytest.mark.parametrize(
    "letters, expected",
    [
        ((), "e"),
        (((1, 1), (1, 1), (1, 1)), "s1^3"),
        (((2, -1),), "s2^-1"),
        (((1, 1), (2, -1), (2, -1), (1, 1)), "s1 s2^-2 s1"),
    ],
)
def test_word_str(letters, expected):
    assert str(Word(rank=3, letters=letters)) == expected


def test_word_is_hashable_and_frozen():
    word = Word(rank=3, letters=((1, 1),))
    assert {word: 1}[Word(rank=3, letters=((1, 1),))] == 1
    with pytest.raises(ValidationError):
        word.rank = 4  # type: ignore[misc]


def test_presentation_implicit_relators():
    """Rank 4 implies (s1 s2)^2, (s1 s2 s3)^2 and (s2 s3)^2."""
    presentation = Presentation(rank=4)
    implicit = [str(r) for r in presentation.implicit_relators()]
    assert implicit == ["s1 s2 s1 s2", "s1 s2 s3 s1 s2 s3", "s2 s3 s2 s3"]
    assert presentation.all_relators() == presentation.implicit_relators()


def test_presentation_rejects_mixed_ranks():
    with pytest.raises(ValidationError):
        Presentation(rank=4, relators=(parse_word("s1^3", 3),))


def test_presentation_relator_set_ignores_rotation_inversion_and_trivial_relators():
    first = Presentation(rank=3, relators=(parse_word("s1 s2^2", 3), parse_word("s1 s1^-1", 3)))
    second = Presentation(rank=3, relators=(parse_word("s2^-2 s1^-1", 3),))
    assert first.relator_set() == second.relator_set()
    assert len(first.relator_set()) == 1


def test_schlafli_type():
    schlafli = SchlafliType(entries=(4, 3, 3))
    assert schlafli.rank == 4
    assert schlafli.reversed() == SchlafliType(entries=(3, 3, 4))
    assert not schlafli.is_palindromic()
    assert SchlafliType(entries=(3, 6, 3)).is_palindromic()
    assert str(schlafli) == "{4,3,3}"


@pytest.mark.parametrize("entries", [(), (1, 3), (3, 0)])
def test_schlafli_type_validation(entries):
    with pytest.raises(ValidationError):
        SchlafliType(entries=entries)


@pytest.mark.parametrize(
    "kind, b, c, m",
    [
        ("{3,6}", 1, 2, 7),
        ("{6,3}", 2, 3, 19),
        ("{4,4}", 1, 2, 5),
        ("{4,4}", 2, 3, 13),
        ("{3,6}", 1, 0, 1),
    ],
)
def test_torus_map_params_m(kind, b, c, m):
    params = TorusMapParams(kind=kind, b=b, c=c)
    assert params.m == m
    assert params.name == f"{kind}({b},{c})"


@pytest.mark.parametrize(
    "kind, b, c",
    [
        ("{3,6}", 0, 0),  # vanishing translation
        ("{3,6}", -1, 2),
        ("{5,5}", 1, 2),  # not a torus family
    ],
)
def test_torus_map_params_validation(kind, b, c):
    with pytest.raises(ValidationError):
        TorusMapParams(kind=kind, b=b, c=c)


def test_classification_report_requires_witness_for_no():
    fields = dict(order=10, type=[3, 3], regularity="chiral", self_duality="not_self_dual")
    with pytest.raises(ValidationError) as exc_info:
        ClassificationReport(polytopal="no", **fields)

    assert any("needs a witness" in str(err["msg"]) for err in exc_info.value.errors())
    report = ClassificationReport(polytopal="no", witness=([0, 1], [1, 2]), **fields)
    assert report.witness == ([0, 1], [1, 2])


@pytest.mark.parametrize(
    "intersection_property, diamond, strongly_connected, agrees",
    [
        (True, True, True, True),
        (False, True, False, True),
        (False, False, True, True),
        (True, False, True, False),
        (False, True, True, False),
    ],
)
def test_oracle_report_agrees(intersection_property, diamond, strongly_connected, agrees):
    report = OracleReport(
        label="x",
        order=1,
        face_counts=[1, 1],
        flags=2,
        diamond=diamond,
        weakly_connected=True,
        strongly_connected=strongly_connected,
        intersection_property=intersection_property,
    )
    assert report.agrees is agrees
    assert report.model_dump()["agrees"] is agrees


def test_reproduction_report_passed_ignores_skipped_rows():
    rows = [
        ReproductionRow(b=1, c=2, m=7, status="pass"),
        ReproductionRow(b=1, c=1, m=3, status="skipped", reason="b = c"),
    ]
    assert ReproductionReport(rows=rows).passed
    rows.append(ReproductionRow(b=1, c=3, m=13, status="fail"))
    assert not ReproductionReport(rows=rows).passed


def test_job_config_round_trips_through_json():
    config = JobConfig(command="mix", inputs=["{3,3}", "{3,3}"], coset_limit=100, oracle_budget=10, output_format="json")
    assert JobConfig.model_validate_json(config.model_dump_json()) == config


@pytest.mark.parametrize(
    "fields, message",
    [
        # wrong number of presentations
        (dict(command="mix", inputs=["{3,3}"]), "takes 2 presentation(s)"),
        (dict(command="classify", inputs=[]), "takes 1 presentation(s)"),
        (dict(command="catalog", inputs=["{3,3}"]), "takes 0 presentation(s)"),
        # emit and validate need a name
        (dict(command="emit"), "needs a catalog name"),
        (dict(command="validate", name=""), "needs a catalog name"),
        # limits
        (dict(command="catalog", coset_limit=0), "Limits must be positive"),
        (dict(command="catalog", oracle_budget=-5), "Limits must be positive"),
    ],
)
def test_job_config_validation(fields, message):
    values = dict(coset_limit=1000, oracle_budget=100)
    values.update(fields)
    with pytest.raises(ValidationError) as exc_info:
        JobConfig(**values)

    assert any(message in str(err["msg"]) for err in exc_info.value.errors())
