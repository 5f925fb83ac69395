"""Formula-backed braces: construction guards, closed forms against the
generic definitions, and the subspace fast paths against full tables."""

from __future__ import annotations

import random

import pytest

import skewbrace as sb
from skewbrace import errors, series
from skewbrace.formula import PairSpace, span_of_units
from tests.conftest import I2, UNI2, bc16, bc81

SINGULAR = ((1, 1), (1, 1))
LOWER = ((1, 0), (1, 1))


def test_construction_rejects_composite_p():
    with pytest.raises(errors.BadPrime):
        sb.make_bc_brace(4, 2, 2, (I2, I2), (I2, I2))


def test_construction_rejects_singular_matrix():
    with pytest.raises(errors.NotInvertible):
        sb.make_bc_brace(2, 2, 2, (I2, SINGULAR), (I2, I2))


def test_construction_rejects_non_commuting_family():
    with pytest.raises(errors.NonCommutingFamily):
        sb.make_bc_brace(2, 2, 2, (UNI2, LOWER), (I2, I2))


def test_construction_rejects_condition_violation():
    # ker(phi) = <f2> but Im(psi_{e2} - id) = <f1>
    phi = (UNI2, I2)
    psi = (I2, UNI2)
    with pytest.raises(errors.ConditionViolated):
        sb.make_bc_brace(2, 2, 2, phi, psi)


def test_wrong_matrix_counts():
    with pytest.raises(errors.BadParameters):
        sb.make_bc_brace(2, 2, 2, (I2,), (I2, I2))


def test_construction_rejects_matrix_order_not_dividing_p():
    # 1x1 entry 2 over F_3 has order 2, so c -> phi_c is not a homomorphism
    with pytest.raises(errors.BadParameters):
        sb.make_bc_brace(3, 1, 1, (((2,),),), (((1,),),))
    # the 4-dim unipotent block squares to id + N^2 over F_2; this is exactly
    # why this construction needs p >= 5
    j4 = ((1, 1, 0, 0), (0, 1, 1, 0), (0, 0, 1, 1), (0, 0, 0, 1))
    i4 = tuple(tuple(1 if i == j else 0 for j in range(4)) for i in range(4))
    with pytest.raises(errors.BadParameters):
        sb.make_bc_brace(2, 4, 1, (j4,), (i4,) * 4)
    with pytest.raises(errors.BadParameters):
        sb.make_bc_brace(3, 4, 1, (j4,), (i4,) * 4)


def bc8_wide():
    """d_b = 2, d_c = 1: nontrivial phi, identity psi."""
    one = ((1,),)
    return sb.make_bc_brace(2, 2, 1, (UNI2,), (one, one))


def bc8_tall():
    """d_b = 1, d_c = 2: identity phi, nontrivial psi."""
    one = ((1,),)
    return sb.make_bc_brace(2, 1, 2, (one, one), (UNI2,))


@pytest.mark.parametrize("make", [bc8_wide, bc8_tall])
def test_asymmetric_dims_match_tables(make):
    brace = make()
    assert brace.order == 8
    table = sb.materialize_table_brace(brace)
    for a in range(8):
        for b in range(8):
            assert brace.dot(a, b) == table.dot(a, b)
            assert brace.circ(a, b) == table.circ(a, b)
            assert brace.star(a, b) == table.star(a, b)
            assert brace.comm_circ(a, b) == table.comm_circ(a, b)
    for fn in (
        sb.left_series,
        sb.right_series,
        sb.smoktunowicz_series,
        sb.socle_series,
        sb.annihilator_series,
        sb.gamma_series,
    ):
        fast, slow = fn(brace), fn(table)
        assert [t.sorted() for t in fast.terms] == [t.sorted() for t in slow.terms]
        assert fast.reaches_terminal == slow.reaches_terminal


def test_identity_actions_give_trivial_brace():
    brace = sb.make_bc_brace(3, 1, 1, (((1,),),), (((1,),),))
    table = sb.materialize_table_brace(brace)
    assert table.dot_group.mul == table.circ_group.mul
    assert table.order == 9


def test_encode_decode_roundtrip():
    brace = bc81()
    for i in range(brace.order):
        b, c = brace.decode(i)
        assert brace.encode(b, c) == i


def test_counterexample_matrices_read_off():
    brace = sb.make_counterexample_F(5)
    e1, e2 = (1, 0, 0, 0), (0, 1, 0, 0)
    e4 = (0, 0, 0, 1)
    phi_e4 = brace.phi(e4)
    assert tuple(row[0] for row in phi_e4) == e1  # phi_e4(e1) = e1
    col2 = tuple(row[1] for row in phi_e4)
    assert col2 == (1, 1, 0, 0)  # phi_e4(e2) = e1 + e2
    psi_e3 = brace.psi((0, 0, 1, 0))
    image = tuple((row[1] - (1 if i == 1 else 0)) % 5 for i, row in enumerate(psi_e3))
    assert image == e1  # (psi_e3 - id)(e2) = e1
    del e2


def test_counterexample_star_value():
    brace = sb.make_counterexample_F(5)
    zero = (0, 0, 0, 0)
    val = brace.vstar(((0, 0, 1, 0), zero), (zero, (0, 1, 0, 0)))
    assert val == (zero, (1, 0, 0, 0))


def test_counterexample_rejects_small_or_composite_p():
    with pytest.raises(errors.BadPrime):
        sb.make_counterexample_F(3)
    with pytest.raises(errors.BadPrime):
        sb.make_counterexample_F(6)


def test_counterexample_kernels():
    brace = sb.make_counterexample_F(5)
    assert brace.ker_phi() == span_of_units(5, 4, (1, 2, 3))
    assert brace.ker_psi() == span_of_units(5, 4, (1, 2, 4))


@pytest.mark.parametrize("make", [bc16, bc81])
def test_ops_match_materialized_tables(make):
    brace = make()
    table = sb.materialize_table_brace(brace)
    n = brace.order
    for a in range(n):
        assert brace.inv(a) == table.inv(a)
        assert brace.bar(a) == table.bar(a)
        for b in range(n):
            assert brace.dot(a, b) == table.dot(a, b)
            assert brace.circ(a, b) == table.circ(a, b)
            assert brace.star(a, b) == table.star(a, b)
            assert brace.lam(a, b) == table.lam(a, b)
            assert brace.comm_dot(a, b) == table.comm_dot(a, b)
            assert brace.comm_circ(a, b) == table.comm_circ(a, b)


@pytest.mark.parametrize("make", [bc16, bc81])
def test_series_match_materialized_tables(make):
    brace = make()
    table = sb.materialize_table_brace(brace)
    chain_fns = [
        sb.left_series,
        sb.right_series,
        sb.smoktunowicz_series,
        sb.socle_series,
        sb.annihilator_series,
        sb.gamma_series,
        series.zeta_dot_series,
        series.zeta_circ_series,
        series.gamma_dot_series,
        series.gamma_circ_series,
    ]
    for fn in chain_fns:
        fast = fn(brace)
        slow = fn(table)
        assert [t.sorted() for t in fast.terms] == [t.sorted() for t in slow.terms], fn.__name__
        assert fast.reaches_terminal == slow.reaches_terminal
        assert fast.stabilized_at == slow.stabilized_at


@pytest.mark.parametrize("make", [bc16, bc81])
def test_ideal_predicates_match_tables(make):
    brace = make()
    table = sb.materialize_table_brace(brace)
    seen = set()
    for fn in (sb.left_series, sb.right_series, sb.socle_series, sb.annihilator_series, sb.gamma_series):
        for term in fn(brace).terms:
            if term.members in seen:
                continue
            seen.add(term.members)
            plain = sb.groups.make_set(term.members, table.order)
            assert sb.is_left_ideal(brace, term) == sb.is_left_ideal(table, plain)
            assert sb.is_ideal(brace, term) == sb.is_ideal(table, plain)
            assert sb.is_subbrace(brace, term) == sb.is_subbrace(table, plain)


def test_star_closed_form_matches_generic_definition(f5):
    """a^-1 . (a o b) . b^-1 computed with raw ops, against the closed form."""
    rng = random.Random(sb.DEFAULT_SEED)
    for brace in (bc16(), f5):
        n = brace.order
        for _ in range(10_000):
            a, b = rng.randrange(n), rng.randrange(n)
            lam_generic = brace.dot(brace.inv(a), brace.circ(a, b))
            assert brace.lam(a, b) == lam_generic
            assert brace.star(a, b) == brace.dot(lam_generic, brace.inv(b))


def test_commutator_closed_form_matches_generic(f5):
    rng = random.Random(sb.DEFAULT_SEED + 1)
    for brace in (bc81(), f5):
        n = brace.order
        for _ in range(10_000):
            a, b = rng.randrange(n), rng.randrange(n)
            dd = brace.dot(brace.dot(a, b), brace.dot(brace.inv(a), brace.inv(b)))
            assert brace.comm_dot(a, b) == dd
            cc = brace.circ(brace.circ(a, b), brace.circ(brace.bar(a), brace.bar(b)))
            assert brace.comm_circ(a, b) == cc


def test_f5_right_series_subspaces(f5):
    right = sb.right_series(f5)
    assert right.at(2).pair == PairSpace(
        span_of_units(5, 4, (1, 2, 3)), span_of_units(5, 4, (1, 2))
    )
    assert len(right.at(2)) == 3125
    assert right.at(3).pair == PairSpace(
        span_of_units(5, 4, ()), span_of_units(5, 4, (1, 2))
    )
    assert len(right.at(3)) == 25
    assert right.reaches_terminal  # A^(4) = 1 here


def test_f5_left_series_subspaces(f5):
    left = sb.left_series(f5)
    expected = [
        (4, 4),
        (3, 2),
        (2, 1),
        (1, 0),
        (0, 0),
    ]
    got = [(t.pair.b.rank, t.pair.c.rank) for t in left.terms]
    assert got == expected


def test_f5_annihilator_series_exact(f5):
    """Computed exactly; the expected containments happen to be equalities."""
    ann = sb.annihilator_series(f5)
    ranks = [(t.pair.b.rank, t.pair.c.rank) for t in ann.terms]
    assert ranks == [(0, 0), (1, 1), (2, 2), (3, 3), (4, 4)]
    assert ann.terminal_class() == 4


def test_f5_gamma_series(f5):
    gamma = sb.gamma_series(f5)
    ranks = [(t.pair.b.rank, t.pair.c.rank) for t in gamma.terms]
    assert ranks == [(4, 4), (3, 2), (2, 2), (1, 1), (0, 0)]
    assert gamma.terminal_class() == 5


def test_f5_smoktunowicz_series(f5):
    """Reaches the identity, squeezed between the one-sided chains."""
    smok = sb.smoktunowicz_series(f5)
    ranks = [(t.pair.b.rank, t.pair.c.rank) for t in smok.terms]
    assert ranks == [(4, 4), (3, 2), (2, 2), (1, 1), (0, 1), (0, 0)]
    assert smok.reaches_terminal
    left, right = sb.left_series(f5), sb.right_series(f5)
    for i in range(1, len(smok) + 1):
        assert smok.at(i).pair.contains_pair(left.at(i).pair)
        assert smok.at(i).pair.contains_pair(right.at(i).pair)


def test_f5_socle_series(f5):
    soc = sb.socle_series(f5)
    ranks = [(t.pair.b.rank, t.pair.c.rank) for t in soc.terms]
    assert ranks == [(0, 0), (1, 3), (2, 3), (3, 3), (4, 4)]


def test_f7_same_shape():
    brace = sb.make_counterexample_F(7)
    right = sb.right_series(brace)
    assert [t.pair.b.rank for t in right.terms] == [4, 3, 0, 0]
    assert [t.pair.c.rank for t in right.terms] == [4, 2, 2, 0]


def test_identity_psi_kills_second_star_component():
    brace = sb.make_bc_brace(2, 2, 2, (I2, UNI2), (I2, I2))
    zero = (0, 0)
    for a in range(brace.order):
        for b in range(brace.order):
            assert brace.vstar(brace.decode(a), brace.decode(b))[1] == zero


def test_quotients_of_formula_braces_are_refused(f5):
    with pytest.raises(errors.QuotientTooLarge):
        sb.quotient_brace(f5, sb.annihilator_series(f5).at(1))
    with pytest.raises(errors.QuotientTooLarge):
        sb.socle_quotient_tower(f5)
