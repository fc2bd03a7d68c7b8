import math

import pytest

from polymix.catalog import dual_presentation, lookup
from polymix.coset_enumeration import EnumerationOverflow
from polymix.models import RankMismatchError, SchlafliType
from polymix.rotation import covers, index_pairs, schlafli_type
from polymix.svc.mixer import (
    comix,
    comix_order,
    even_rank_obstruction,
    even_rank_obstruction_for_type,
    face_vector,
    factor_meets_contain,
    four_polytopality_criterion,
    mix,
    mix_chirality_by_covering,
    mix_polytopality,
    mix_report,
    self_dual_mix,
    verify_size_identity,
)


def test_mix_with_dual(torus_1_2):
    result = mix(torus_1_2, torus_1_2.dual())
    assert result.order == 588
    assert result.comix_order == 3
    assert result.system.label == "({3,6}(1,2))<>(dual({3,6}(1,2)))"
    assert result.factors[0] is torus_1_2
    assert result.system.source is None


def test_mix_with_mirror(torus_1_2):
    result = mix(torus_1_2, torus_1_2.mirror())
    assert result.order == 294
    assert result.comix_order == 6


def test_mix_projections_are_homomorphic(torus_1_2):
    """Coordinates of x.s_i are the coordinates of x moved by s_i in each factor."""
    p, q = torus_1_2, torus_1_2.dual()
    result = mix(p, q)
    table = result.system.group.table
    for col in range(table.shape[1]):
        assert (p.group.table[result.first, col] == result.first[table[:, col]]).all()
        assert (q.group.table[result.second, col] == result.second[table[:, col]]).all()


def test_comix_of_presentations(torus_1_2):
    presentation, order = comix(lookup("{3,6}(1,2)"), dual_presentation(lookup("{3,6}(1,2)")))
    assert order == 3
    assert presentation.label == "({3,6}(1,2))[](dual({3,6}(1,2)))"
    assert len(presentation.relators) == 6


def test_comix_order_without_presentation(torus_1_2):
    mixed = mix(torus_1_2, torus_1_2.mirror()).system
    # mixing with a factor leaves the mix unchanged, so the comix is the factor itself
    assert comix_order(mixed, torus_1_2) == torus_1_2.order


def test_facet_mix(realized):
    result = mix(realized("{6,3}(1,2)"), realized("{3,3}"))
    assert result.order == 168
    assert face_vector(result.system) == ([56, 84, 28], 336)


@pytest.mark.parametrize(
    "first, second",
    [
        ("{3,3}", "{3,3}"),
        ("{3,3}", "{3,4}"),
        ("{3,4}", "{4,3}"),
        ("{3,5}", "{5,3}"),
        ("{3,3}", "{3,5}"),
        ("{3,6}(1,2)", "{3,6}(1,3)"),
        ("{3,6}(1,2)", "{6,3}(1,2)"),
        ("{3,6}(1,2)", "{3,6}(2,1)"),
        ("{3,6}(2,3)", "{3,6}(1,2)"),
        ("{6,3}(1,2)", "{3,3}"),
        ("{3,3,3}", "{2,2,2}"),
        ("{3,3,3}", "{4,3,3}"),
    ],
)
def test_size_identity(realized, first, second):
    """|P<>Q| |P[]Q| = |P| |Q| with the comix taken from the joint presentation."""
    assert verify_size_identity(realized(first), realized(second))


@pytest.mark.parametrize(
    "first, second",
    [
        ("{3,3}", "{3,4}"),
        ("{3,6}(1,2)", "{6,3}(2,1)"),
        ("{4,3,3}", "{3,3,3}"),
    ],
)
def test_mix_type_is_entrywise_lcm(realized, first, second):
    p, q = realized(first), realized(second)
    expected = tuple(math.lcm(a, b) for a, b in zip(schlafli_type(p).entries, schlafli_type(q).entries))
    assert schlafli_type(mix(p, q).system).entries == expected


def test_mix_is_commutative(realized):
    p, q = realized("{3,6}(1,2)"), realized("{3,6}(1,3)")
    assert mix(p, q).order == mix(q, p).order
    assert mix(p, q).comix_order == mix(q, p).comix_order


def test_mix_rejects_rank_mismatch(realized):
    with pytest.raises(RankMismatchError):
        mix(realized("{3,3}"), realized("{3,3,3}"))


def test_mix_overflow(torus_1_2):
    with pytest.raises(EnumerationOverflow):
        mix(torus_1_2, torus_1_2.dual(), limit=100)


def test_proper_self_dual_mix(torus_1_2):
    result = self_dual_mix(torus_1_2, "proper")
    report = mix_report(result)
    assert report.order == 588
    assert report.type == [6, 6]
    assert report.polytopal == "yes"
    assert report.criteria_fired == ["rank-three-mix"]
    assert report.regularity == "chiral"
    assert report.self_duality == "properly_self_dual"
    assert report.comix_order == 3
    assert report.size_identity_ok
    assert report.variant == "proper"
    assert report.factors == ["{3,6}(1,2)", "dual({3,6}(1,2))"]


def test_improper_self_dual_mix(torus_1_2):
    result = self_dual_mix(torus_1_2, "improper")
    report = mix_report(result)
    assert report.order == 588
    assert report.regularity == "chiral"
    assert report.self_duality == "improperly_self_dual"
    assert report.variant == "improper"
    assert face_vector(result.system) == ([98, 294, 98], 1176)


@pytest.mark.parametrize(
    "name, faces, flags",
    [
        ("{3,3}", [4, 6, 4], 24),
        ("{3,6}(1,2)", [7, 21, 14], 84),
        ("{4,3,3}", [16, 32, 24, 8], 384),
        ("{3,3,3}", [5, 10, 10, 5], 120),
    ],
)
def test_face_vector(realized, name, faces, flags):
    assert face_vector(realized(name)) == (faces, flags)


def test_face_vector_of_dual_mix(torus_1_2):
    assert face_vector(self_dual_mix(torus_1_2).system) == ([98, 294, 98], 1176)


def test_coprime_mix_is_polytopal_without_subgroup_checks(realized):
    result = mix(realized("{3,3,3}"), realized("{2,2,2}"))
    assert result.order == 480
    assert result.comix_order == 1
    assert mix_polytopality(result) == ("yes", "coprime-types", None)


def test_rank_four_mix_falls_back_to_intersection_property(realized):
    result = mix(realized("{3,3,3}"), realized("{4,3,3}"))
    verdict, tag, _ = mix_polytopality(result)
    assert tag == "intersection-property"
    assert verdict in ("yes", "no")


def test_factor_meets_contain_mix_intersections(torus_1_2, realized):
    result = self_dual_mix(torus_1_2)
    assert all(factor_meets_contain(result, left, right) for left, right in index_pairs(3))
    result = mix(realized("{3,3,3}"), realized("{2,2,2}"))
    assert all(factor_meets_contain(result, left, right) for left, right in index_pairs(4))


@pytest.mark.parametrize(
    "entries, expected",
    [
        ((4, 3, 3), True),
        ((3, 3, 4), True),
        ((3, 3, 3), False),  # gcd(3, 3) = 3
        ((4, 2, 3), False),  # middle entry below 3
        ((3, 4, 3), False),
        ((3, 4, 3, 5, 3), True),
        ((3, 6), False),  # odd rank
        ((3, 3, 3, 3), False),
    ],
)
def test_even_rank_obstruction_for_type(entries, expected):
    assert even_rank_obstruction_for_type(SchlafliType(entries=entries)) is expected


def test_even_rank_obstruction(realized):
    assert even_rank_obstruction(realized("{4,3,3}"))
    assert not even_rank_obstruction(realized("{3,3,3}"))


@pytest.mark.parametrize(
    "facet, vertex_figure, expected",
    [
        ("{6,3}(1,2)", "{3,3}", "polytopal"),
        ("{6,3}(2,1)", "{3,3}", "polytopal"),
        # q = 4 is not prime
        ("{3,4}", "{4,3}", "inconclusive"),
        # |{4,3}<>{3,3}| = 288 is divisible by 9
        ("{4,3}", "{3,3}", "inconclusive"),
    ],
)
def test_four_polytopality_criterion(realized, facet, vertex_figure, expected):
    assert four_polytopality_criterion(realized(facet), realized(vertex_figure)) == expected


def test_four_polytopality_criterion_ranks(realized):
    with pytest.raises(RankMismatchError):
        four_polytopality_criterion(realized("{3,3,3}"), realized("{3,3}"))
    with pytest.raises(RankMismatchError):
        four_polytopality_criterion(realized("{4,3}"), realized("{3,3}"), p=realized("{3,3}"))


def test_mix_chirality_by_covering(realized):
    assert mix_chirality_by_covering(realized("{6,3}(1,2)"), realized("{3,3}"))
    # the mirror mix divides itself, so no conclusion
    p = realized("{3,6}(1,2)")
    assert not mix_chirality_by_covering(p, p.mirror())


@pytest.mark.parametrize("name", ["{3,3}", "{3,6}(1,2)", "{4,3,3}"])
def test_mix_and_comix_with_itself(realized, name):
    """P<>P is the diagonal and P[]P just repeats the relators."""
    p = realized(name)
    assert mix(p, p).order == p.order
    assert comix(p.source, p.source)[1] == p.order


def test_mix_covers_both_factors(torus_1_2, realized):
    q = realized("{3,6}(1,3)")
    result = mix(torus_1_2, q)
    assert covers(result.system, torus_1_2)
    assert covers(result.system, q)


def test_facet_comix(realized):
    _, order = comix(lookup("{6,3}(1,2)"), lookup("{3,3}"))
    assert order == 3


def test_self_dual_mix_of_self_dual_input_is_diagonal(tetrahedron):
    result = self_dual_mix(tetrahedron, "proper")
    assert result.order == 12
    assert mix_report(result).self_duality == "properly_self_dual"


def test_no_obstruction_in_odd_rank(torus_1_2):
    assert not even_rank_obstruction(torus_1_2)
