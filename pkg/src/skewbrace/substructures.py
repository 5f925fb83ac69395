"""Sub-skew braces, left ideals, ideals, closures, quotients, and the
Huq-style commutator of ideals."""

from __future__ import annotations

from typing import Iterable

from . import errors, formula
from .braces import SkewBrace, TableBrace, table_brace_trusted
from .formula import BCBrace, PairSpace
from .groups import (
    ElementSet,
    GroupTable,
    make_set,
    quotient_group,
    subgroup_closure,
)

PAIRWISE_CAP = 1_000_000  # largest |X| * |Y| swept without product structure


def _as_members(s: ElementSet | Iterable[int]) -> frozenset[int]:
    if isinstance(s, ElementSet):
        return s.members
    return frozenset(s)


def _pair_of(brace: SkewBrace, s: ElementSet) -> PairSpace | None:
    if isinstance(brace, BCBrace) and isinstance(s, ElementSet) and isinstance(s.pair, PairSpace):
        return s.pair
    return None


def dot_subgroup_closure(brace: SkewBrace, gens: Iterable[int]) -> ElementSet:
    """Closure under the dot product, via the table when one is present."""
    if isinstance(brace, TableBrace):
        return subgroup_closure(brace.dot_group, gens)
    seen = {0}
    gen_list = sorted(set(gens) | {0})
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for h in gen_list:
                y = brace.dot(x, h)
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return make_set(seen, brace.order)


def _is_dot_subgroup(brace: SkewBrace, members: frozenset[int]) -> bool:
    if 0 not in members:
        return False
    if len(members) ** 2 > PAIRWISE_CAP:
        raise errors.TooLarge("subgroup check needs product structure at this size")
    return all(brace.dot(a, b) in members for a in members for b in members)


def is_subbrace(brace: SkewBrace, s: ElementSet) -> bool:
    pair = _pair_of(brace, s)
    if pair is not None:
        return formula.bc_is_subbrace(brace, pair)
    members = _as_members(s)
    if not _is_dot_subgroup(brace, members):
        return False
    return all(brace.circ(a, b) in members for a in members for b in members)


def is_left_ideal(brace: SkewBrace, s: ElementSet) -> bool:
    """Dot subgroup stable under every lambda_a.

    Table braces quantify a over the whole carrier; formula braces over a
    generating set, which suffices because lambda is a homomorphism on (A, o).
    """
    pair = _pair_of(brace, s)
    if pair is not None:
        return formula.bc_is_left_ideal(brace, pair)
    members = _as_members(s)
    if not _is_dot_subgroup(brace, members):
        return False
    quantifier = brace.elements() if brace.backing == "table" else brace.generators()
    return all(brace.lam(a, x) in members for a in quantifier for x in members)


def is_ideal(brace: SkewBrace, s: ElementSet) -> bool:
    pair = _pair_of(brace, s)
    if pair is not None:
        return formula.bc_is_ideal(brace, pair)
    if not is_left_ideal(brace, s):
        return False
    members = _as_members(s)
    quantifier = brace.elements() if brace.backing == "table" else brace.generators()
    return all(
        brace.conj_dot(a, x) in members and brace.conj_circ(a, x) in members
        for a in quantifier
        for x in members
    )


def coset_agreement(brace: SkewBrace, ideal: ElementSet, a: int) -> bool:
    """Check a.I = aoI as sets; true for every left ideal."""
    if not is_left_ideal(brace, ideal):
        raise errors.NotALeftIdeal("coset agreement asked of a non-left-ideal")
    members = ideal.members
    left = {brace.dot(a, x) for x in members}
    right = {brace.circ(a, x) for x in members}
    return left == right


def star_subgroup(brace: SkewBrace, x: ElementSet, y: ElementSet) -> ElementSet:
    """Subgroup of (A, .) generated by {a * b : a in X, b in Y}."""
    px, py = _pair_of(brace, x), _pair_of(brace, y)
    if px is not None and py is not None:
        pair = formula.star_subgroup_pair(brace, px, py)
        return brace.pair_to_set(pair)
    xm, ym = _as_members(x), _as_members(y)
    if len(xm) * len(ym) > PAIRWISE_CAP:
        raise errors.TooLarge("star subgroup needs product structure at this size")
    values = {brace.star(a, b) for a in xm for b in ym}
    return dot_subgroup_closure(brace, values)


def generating_set(brace: SkewBrace) -> tuple[int, ...]:
    return brace.generators()


def ideal_closure(brace: SkewBrace, seed: Iterable[int] | ElementSet) -> ElementSet:
    """Least ideal containing the seed set.

    Alternates dot-subgroup closure with one round of lambda images and both
    conjugations over a generating set, until nothing new appears.
    """
    if isinstance(brace, BCBrace):
        raise errors.TooLarge("ideal closure is only materialized for table braces")
    current = dot_subgroup_closure(brace, _as_members(seed))
    gens = brace.generators()
    while True:
        grown = set(current.members)
        for a in gens:
            for x in current.members:
                grown.add(brace.lam(a, x))
                grown.add(brace.conj_dot(a, x))
                grown.add(brace.conj_circ(a, x))
        if grown == current.members:
            return current
        current = dot_subgroup_closure(brace, grown)


def huq_commutator(brace: SkewBrace, i: ElementSet, j: ElementSet) -> ElementSet:
    """Ideal generated by [I,J], [I,J]_o, and I*J.

    Also evaluates the alternative presentation via [I,J], I*J, J*I and the
    swapped arguments, asserting that all three agree.
    """
    if not is_ideal(brace, i) or not is_ideal(brace, j):
        raise errors.NotAnIdeal("commutator of non-ideals")
    main = _huq_once(brace, i, j)
    alt_gens = set()
    for x in i.members:
        for y in j.members:
            alt_gens.add(brace.comm_dot(x, y))
            alt_gens.add(brace.star(x, y))
            alt_gens.add(brace.star(y, x))
    alt = ideal_closure(brace, alt_gens)
    swapped = _huq_once(brace, j, i)
    if not (main == alt == swapped):
        raise AssertionError("commutator presentations disagree")
    return main


def _huq_once(brace: SkewBrace, i: ElementSet, j: ElementSet) -> ElementSet:
    gens = set()
    for x in i.members:
        for y in j.members:
            gens.add(brace.comm_dot(x, y))
            gens.add(brace.comm_circ(x, y))
            gens.add(brace.star(x, y))
    return ideal_closure(brace, gens)


QUOTIENT_CAP = 4096


def quotient_brace(brace: SkewBrace, ideal: ElementSet) -> tuple[TableBrace, tuple[int, ...]]:
    """Quotient brace on minimal coset representatives plus the projection.

    Only table braces are materialized; series that conceptually need
    quotients of formula braces use lifted predicates instead.
    """
    if not isinstance(brace, TableBrace):
        raise errors.QuotientTooLarge("quotients of formula braces are not materialized")
    if not is_ideal(brace, ideal):
        raise errors.NotAnIdeal("quotient by a non-ideal")
    if brace.order // max(len(ideal), 1) > QUOTIENT_CAP:
        raise errors.QuotientTooLarge(f"quotient order exceeds {QUOTIENT_CAP}")
    dot_q, proj = quotient_group(brace.dot_group, ideal)
    # The circ cosets coincide with the dot cosets, so reuse the projection.
    rep_by_class: list[int | None] = [None] * dot_q.order
    for x in brace.elements():
        q = proj[x]
        if rep_by_class[q] is None:
            rep_by_class[q] = x
    reps = [r for r in rep_by_class if r is not None]
    circ_rows = tuple(
        tuple(proj[brace.circ(a, b)] for b in reps) for a in reps
    )
    circ_q = GroupTable.from_trusted(circ_rows)
    return table_brace_trusted(dot_q, circ_q), proj


def product_of_ideals(brace: SkewBrace, i: ElementSet, j: ElementSet) -> ElementSet:
    """The setwise product IJ (equal to the subgroup generated by I and J)."""
    members = {brace.dot(a, b) for a in i.members for b in j.members}
    return make_set(members, brace.order)
