"""Ideals, closures, star subgroups, quotient braces, the ideal commutator."""

from __future__ import annotations

import pytest

import skewbrace as sb
from skewbrace import errors
from skewbrace.groups import make_set


def two_element_subgroup(g: sb.GroupTable) -> sb.ElementSet:
    x = next(e for e in range(1, g.order) if g.mul[e][e] == 0)
    return sb.subgroup_closure(g, {x})


def test_pq_c3_is_ideal():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    c3 = make_set({0, 1, 2}, 6)
    assert sb.is_left_ideal(brace, c3)
    assert sb.is_ideal(brace, c3)
    assert sb.is_subbrace(brace, c3)


def test_trivial_brace_left_ideals_are_subgroups(groups):
    brace = sb.build_trivial(groups["S3"])
    s = two_element_subgroup(groups["S3"])
    assert sb.is_left_ideal(brace, s)
    assert sb.is_subbrace(brace, s)
    assert not sb.is_ideal(brace, s)


def test_almost_trivial_left_ideals_are_normal_subgroups(groups):
    brace = sb.build_almost_trivial(groups["S3"])
    s = two_element_subgroup(groups["S3"])
    assert not sb.is_left_ideal(brace, s)
    c3 = sb.subgroup_closure(groups["S3"], {next(x for x in range(1, 6) if len(sb.subgroup_closure(groups['S3'], {x})) == 3)})
    assert sb.is_left_ideal(brace, c3)
    assert sb.is_ideal(brace, c3)


def test_left_ideal_implies_subbrace(catalog):
    for name, brace in catalog:
        if brace.order > 64 or brace.backing != "table":
            continue
        for s in sb.groups.all_subgroups(brace.dot_group):
            if sb.is_left_ideal(brace, s):
                assert sb.is_subbrace(brace, s), name


def test_coset_agreement_everywhere(catalog):
    for name, brace in catalog:
        if brace.order > 64 or brace.backing != "table":
            continue
        for s in sb.groups.all_subgroups(brace.dot_group):
            if not sb.is_left_ideal(brace, s):
                continue
            for a in brace.elements():
                assert sb.coset_agreement(brace, s, a), (name, a)


def test_coset_agreement_rejects_non_left_ideal(groups):
    brace = sb.build_almost_trivial(groups["S3"])
    s = two_element_subgroup(groups["S3"])
    with pytest.raises(errors.NotALeftIdeal):
        sb.coset_agreement(brace, s, 1)


def test_star_subgroup_pq_values():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    whole = sb.groups.full_set(6)
    c3 = make_set({0, 1, 2}, 6)
    assert sb.star_subgroup(brace, whole, whole).sorted() == [0, 1, 2]
    assert sb.star_subgroup(brace, c3, whole).sorted() == [0]
    assert sb.star_subgroup(brace, whole, c3).sorted() == [0, 1, 2]


def test_star_subgroup_trivial(groups):
    brace = sb.build_trivial(groups["S3"])
    whole = sb.groups.full_set(6)
    assert sb.star_subgroup(brace, whole, whole).sorted() == [0]


def test_ideal_closure_empty():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    assert sb.ideal_closure(brace, set()).sorted() == [0]


def test_ideal_closure_transposition_normal_closure(groups):
    g = groups["S3"]
    brace = sb.build_trivial(g)
    x = next(e for e in range(1, 6) if g.mul[e][e] == 0)
    assert sb.ideal_closure(brace, {x}).sorted() == list(range(6))


def test_ideal_closure_pq():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    assert sb.ideal_closure(brace, {1}).sorted() == [0, 1, 2]


def test_ideal_closure_is_an_ideal(catalog):
    for name, brace in catalog:
        if brace.order > 21 or brace.backing != "table":
            continue
        for seed in range(brace.order):
            closed = sb.ideal_closure(brace, {seed})
            assert sb.is_ideal(brace, closed), name


def test_huq_commutator_pq():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    whole = sb.groups.full_set(6)
    assert sb.huq_commutator(brace, whole, whole).sorted() == [0, 1, 2]


def test_huq_commutator_with_trivial_ideal():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    one = make_set({0}, 6)
    c3 = make_set({0, 1, 2}, 6)
    assert sb.huq_commutator(brace, one, c3).sorted() == [0]


def test_huq_commutator_trivial_brace_abelian(groups):
    brace = sb.build_trivial(groups["C6"])
    whole = sb.groups.full_set(6)
    assert sb.huq_commutator(brace, whole, whole).sorted() == [0]


def test_huq_commutator_rejects_non_ideal(groups):
    brace = sb.build_trivial(groups["S3"])
    with pytest.raises(errors.NotAnIdeal):
        sb.huq_commutator(brace, two_element_subgroup(groups["S3"]), sb.groups.full_set(6))


def test_huq_commutator_symmetry_across_ideal_pairs(catalog):
    """Both presentations and the swap agree; checked inside the call."""
    for name, brace in catalog:
        if brace.order > 10 or brace.backing != "table":
            continue
        ideals = sb.enumerate_ideals(brace)
        for i in ideals:
            for j in ideals:
                left = sb.huq_commutator(brace, i, j)
                right = sb.huq_commutator(brace, j, i)
                assert left.members == right.members, name


def test_quotient_brace_pq_by_socle():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    q, proj = sb.quotient_brace(brace, make_set({0, 1, 2}, 6))
    assert q.order == 2
    assert q.dot_group.mul == q.circ_group.mul  # a trivial brace
    assert proj[0] == 0


def test_quotient_brace_by_trivial_and_whole():
    brace = sb.make_pq_brace(3, 2, 2, "i")
    q, _ = sb.quotient_brace(brace, make_set({0}, 6))
    assert q.dot_group.mul == brace.dot_group.mul
    assert q.circ_group.mul == brace.circ_group.mul
    q2, _ = sb.quotient_brace(brace, sb.groups.full_set(6))
    assert q2.order == 1


def test_quotient_brace_rejects_non_ideal(groups):
    brace = sb.build_trivial(groups["S3"])
    with pytest.raises(errors.NotAnIdeal):
        sb.quotient_brace(brace, two_element_subgroup(groups["S3"]))


def test_quotient_projection_is_brace_homomorphism(catalog):
    for name, brace in catalog:
        if brace.order > 21 or brace.backing != "table":
            continue
        for ideal in sb.enumerate_ideals(brace):
            q, proj = sb.quotient_brace(brace, ideal)
            for a in brace.elements():
                for b in brace.elements():
                    assert proj[brace.dot(a, b)] == q.dot(proj[a], proj[b]), name
                    assert proj[brace.circ(a, b)] == q.circ(proj[a], proj[b]), name
                    assert proj[brace.star(a, b)] == q.star(proj[a], proj[b]), name
