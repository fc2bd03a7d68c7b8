import pytest

from polymix.catalog import lookup
from polymix.models import RankMismatchError
from polymix.rotation import (
    RotationSystem,
    check_intersection_property,
    classify,
    classify_self_duality,
    covers,
    index_pairs,
    is_directly_regular,
    schlafli_type,
    standard_generators,
    standard_subgroup,
)
from polymix.words import parse_word


def test_from_presentation(torus_1_2):
    assert torus_1_2.order == 42
    assert torus_1_2.rank == 3
    assert torus_1_2.label == "{3,6}(1,2)"
    assert torus_1_2.source == lookup("{3,6}(1,2)")
    assert torus_1_2.rotation(1) == torus_1_2.group.generator(1)


@pytest.mark.parametrize(
    "name, entries",
    [
        ("{3,3}", (3, 3)),
        ("{3,6}(1,2)", (3, 6)),
        ("{6,3}(2,1)", (6, 3)),
        ("{4,3,3}", (4, 3, 3)),
        ("{2,2,2}", (2, 2, 2)),
    ],
)
def test_schlafli_type(realized, name, entries):
    assert schlafli_type(realized(name)).entries == entries


def test_dual_swaps_type_and_realizes_dual_presentation(torus_1_2):
    dual = torus_1_2.dual()
    assert dual.label == "dual({3,6}(1,2))"
    assert dual.order == 42
    assert schlafli_type(dual).entries == (6, 3)
    assert dual.source is not None
    for relator in dual.source.all_relators():
        assert dual.evaluate(relator) == dual.group.identity


def test_mirror_realizes_mirror_presentation(torus_1_2):
    mirror = torus_1_2.mirror()
    assert schlafli_type(mirror).entries == (3, 6)
    assert mirror.source is not None
    for relator in mirror.source.all_relators():
        assert mirror.evaluate(relator) == mirror.group.identity


def test_dual_and_mirror_are_involutions(torus_1_2):
    assert torus_1_2.dual().dual().group.generators == torus_1_2.group.generators
    assert torus_1_2.mirror().mirror().group.generators == torus_1_2.group.generators


def test_standard_generators():
    words = standard_generators(4, {0, 1, 3})
    # i-1 and j in the index set: tau(1,1), tau(1,3), tau(2,3)
    assert words == [parse_word("s1", 4), parse_word("s1 s2 s3", 4), parse_word("s2 s3", 4)]
    assert standard_generators(4, {0, 1, 2, 3})[0] == parse_word("s1", 4)


@pytest.mark.parametrize(
    "indices, order",
    [
        # vertex stabilizer <s2>, face stabilizer <s1>, edge stabilizer <s1 s2>
        ({1, 2}, 6),
        ({0, 1}, 3),
        ({0, 2}, 2),
        ({0, 1, 2}, 42),
        ({1}, 1),
        (set(), 1),
    ],
)
def test_standard_subgroup_orders(torus_1_2, indices, order):
    assert standard_subgroup(torus_1_2, indices).order == order


def test_standard_subgroup_is_cached(torus_1_2):
    assert standard_subgroup(torus_1_2, [1, 2]) is standard_subgroup(torus_1_2, {2, 1})


def test_standard_subgroup_rejects_bad_indices(torus_1_2):
    with pytest.raises(ValueError):
        standard_subgroup(torus_1_2, {0, 3})


def test_index_pairs_order():
    pairs = index_pairs(3)
    assert pairs[:6] == [
        ((0, 1), (0, 2)),
        ((0, 1), (1, 2)),
        ((0, 2), (1, 2)),
        ((0,), (1, 2)),
        ((0, 1), (2,)),
        ((0, 2), (1,)),
    ]
    # no pair is nested, so the empty set never appears
    assert all(not (set(a) <= set(b) or set(b) <= set(a)) for a, b in pairs)
    assert all(a < b for a, b in pairs)


def test_index_pairs_rank_4_starts_with_largest_pairs():
    pairs = index_pairs(4)
    assert pairs[0] == ((0, 1, 2), (0, 1, 3))
    assert ((0, 1, 2), (1, 2, 3)) in pairs
    sizes = [len(a) + len(b) for a, b in pairs]
    assert sizes == sorted(sizes, reverse=True)


@pytest.mark.parametrize("name", ["{3,3}", "{3,6}(1,2)", "{4,3,3}", "{3,3,3}"])
def test_intersection_property_holds_for_polytopes(realized, name):
    assert check_intersection_property(realized(name)) == (True, None)


@pytest.mark.parametrize(
    "name, expected",
    [
        ("{3,3}", True),
        ("{3,3,3}", True),
        ("{3,6}(1,1)", True),
        ("{3,6}(1,2)", False),
        ("{3,6}(2,3)", False),
        ("{6,3}(1,2)", False),
    ],
)
def test_is_directly_regular(realized, name, expected):
    assert is_directly_regular(realized(name)) is expected


@pytest.mark.parametrize(
    "name, expected",
    [
        ("{3,3}", "properly_self_dual"),
        ("{3,3,3}", "properly_self_dual"),
        ("{4,3,3}", "not_self_dual"),
        ("{3,6}(1,2)", "not_self_dual"),
        ("{2,2,2}", "properly_self_dual"),
    ],
)
def test_classify_self_duality(realized, name, expected):
    assert classify_self_duality(realized(name)) == expected


def test_covers(realized, torus_1_2):
    assert covers(torus_1_2, torus_1_2)
    # (2,4) = 2 (1,2) spans a sublattice
    assert covers(realized("{3,6}(2,4)"), torus_1_2)
    assert not covers(torus_1_2, realized("{3,6}(2,4)"))
    assert not covers(torus_1_2, realized("{3,6}(1,3)"))
    # a chiral system and its mirror image do not cover each other
    assert not covers(torus_1_2, torus_1_2.mirror())


def test_covers_rejects_rank_mismatch(torus_1_2, realized):
    with pytest.raises(RankMismatchError):
        covers(torus_1_2, realized("{3,3,3}"))


def test_classify(torus_1_2):
    report = classify(torus_1_2)
    assert report.order == 42
    assert report.type == [3, 6]
    assert report.polytopal == "yes"
    assert report.witness is None
    assert report.regularity == "chiral"
    assert report.self_duality == "not_self_dual"
    assert report.criteria_fired == ["intersection-property"]


def test_classify_regular_system():
    system = RotationSystem.from_presentation(lookup("{3,3}"))
    assert classify(system).regularity == "directly_regular"
