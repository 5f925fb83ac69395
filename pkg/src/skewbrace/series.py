"""The six series of a skew brace plus the quotient-based socle variant.

Descending chains stop when a term repeats or hits {1}; ascending chains use
lifted elementwise predicates so no quotient is ever materialized. Formula
braces route through the product-subspace machinery in `formula`.
"""

from __future__ import annotations

from . import errors, formula
from .braces import SkewBrace, TableBrace
from .formula import BCBrace
from .groups import (
    ElementSet,
    SeriesChain,
    full_set,
    lower_central_series,
    make_set,
    trivial_set,
    upper_central_series,
)
from .substructures import (
    dot_subgroup_closure,
    huq_commutator,
    is_ideal,
    quotient_brace,
    star_subgroup,
)


def _descending(kind: str, brace: SkewBrace, step) -> SeriesChain:
    terms = [full_set(brace.order)]
    if terms[0].is_trivial:
        return SeriesChain(kind, tuple(terms), 1, 1, True)
    for _ in range(brace.order + 1):
        nxt = step(terms)
        terms.append(nxt)
        if nxt == terms[-2] or nxt.is_trivial:
            break
    else:
        raise AssertionError(f"{kind} series failed to stabilize")
    return _wrap(kind, terms, 1, terminal_full=False)


def _wrap(kind: str, terms: list[ElementSet], start: int, terminal_full: bool) -> SeriesChain:
    last = terms[-1]
    first_stable = len(terms) - 1
    while first_stable > 0 and terms[first_stable - 1] == last:
        first_stable -= 1
    reached = last.is_full if terminal_full else last.is_trivial
    return SeriesChain(kind, tuple(terms), start, start + first_stable, reached)


def left_series(brace: SkewBrace) -> SeriesChain:
    """A^1 = A, A^{n+1} = A * A^n."""
    cached = brace._cache.get("left_series")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(brace, "left", formula.bc_left_chain(brace), 1, False)
    else:
        whole = full_set(brace.order)
        chain = _descending(
            "left", brace, lambda terms: star_subgroup(brace, whole, terms[-1])
        )
    brace._cache["left_series"] = chain
    return chain


def right_series(brace: SkewBrace) -> SeriesChain:
    """A^(1) = A, A^(n+1) = A^(n) * A."""
    cached = brace._cache.get("right_series")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(brace, "right", formula.bc_right_chain(brace), 1, False)
    else:
        whole = full_set(brace.order)
        chain = _descending(
            "right", brace, lambda terms: star_subgroup(brace, terms[-1], whole)
        )
    brace._cache["right_series"] = chain
    return chain


def smoktunowicz_series(brace: SkewBrace) -> SeriesChain:
    """A^[1] = A, A^[n+1] generated by the union of A^[i] * A^[n+1-i].

    Because each term looks at every earlier one, a plateau is confirmed by
    two additional equal terms before the chain is declared stable.
    """
    cached = brace._cache.get("smoktunowicz_series")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(
            brace, "smoktunowicz", formula.bc_smoktunowicz_chain(brace), 1, False
        )
        brace._cache["smoktunowicz_series"] = chain
        return chain
    terms = [full_set(brace.order)]
    if not terms[0].is_trivial:
        for _ in range(brace.order + 2):
            n = len(terms)
            union: set[int] = set()
            for i in range(n):
                union |= star_subgroup(brace, terms[i], terms[n - 1 - i]).members
            nxt = dot_subgroup_closure(brace, union)
            terms.append(nxt)
            if nxt.is_trivial:
                break
            if len(terms) >= 3 and terms[-1] == terms[-2] == terms[-3]:
                break
        else:
            raise AssertionError("smoktunowicz series failed to stabilize")
    chain = _wrap("smoktunowicz", terms, 1, terminal_full=False)
    brace._cache["smoktunowicz_series"] = chain
    return chain


def socle(brace: SkewBrace) -> ElementSet:
    """Soc(A) = ker(lambda) intersect Z(A, .)."""
    if isinstance(brace, BCBrace):
        return brace.pair_to_set(formula.bc_socle_step(brace, brace.trivial_pair()))
    return _socle_step_table(brace, trivial_set(brace.order))


def annihilator(brace: SkewBrace) -> ElementSet:
    """Ann(A) = Soc(A) intersect Z(A, o)."""
    if isinstance(brace, BCBrace):
        return brace.pair_to_set(formula.bc_annihilator_step(brace, brace.trivial_pair()))
    return _annihilator_step_table(brace, trivial_set(brace.order))


def _socle_step_table(brace: SkewBrace, prev: ElementSet) -> ElementSet:
    inside = prev.members
    keep = []
    for x in brace.elements():
        ok = True
        for a in brace.elements():
            if brace.star(x, a) not in inside or brace.comm_dot(x, a) not in inside:
                ok = False
                break
        if ok:
            keep.append(x)
    return make_set(keep, brace.order)


def _annihilator_step_table(brace: SkewBrace, prev: ElementSet) -> ElementSet:
    inside = prev.members
    keep = []
    for x in brace.elements():
        ok = True
        for a in brace.elements():
            if (
                brace.star(x, a) not in inside
                or brace.comm_dot(x, a) not in inside
                or brace.comm_circ(x, a) not in inside
            ):
                ok = False
                break
        if ok:
            keep.append(x)
    return make_set(keep, brace.order)


def _ascending(kind: str, brace: SkewBrace, step) -> SeriesChain:
    terms = [trivial_set(brace.order)]
    if terms[0].is_full:
        return SeriesChain(kind, tuple(terms), 0, 0, True)
    for _ in range(brace.order + 1):
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt == terms[-2] or nxt.is_full:
            break
    else:
        raise AssertionError(f"{kind} series failed to stabilize")
    return _wrap(kind, terms, 0, terminal_full=True)


def socle_series(brace: SkewBrace) -> SeriesChain:
    """Soc_0 = 1 and the lifted predicate x in Soc_{n+1} iff every x*a and
    every [x, a] lands in Soc_n."""
    cached = brace._cache.get("socle_series")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(brace, "socle", formula.bc_socle_chain(brace), 0, True)
    else:
        if isinstance(brace, TableBrace):
            brace.warm_tables()
        chain = _ascending("socle", brace, lambda prev: _socle_step_table(brace, prev))
    brace._cache["socle_series"] = chain
    return chain


def annihilator_series(brace: SkewBrace) -> SeriesChain:
    cached = brace._cache.get("annihilator_series")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(
            brace, "annihilator", formula.bc_annihilator_chain(brace), 0, True
        )
    else:
        if isinstance(brace, TableBrace):
            brace.warm_tables()
        chain = _ascending(
            "annihilator", brace, lambda prev: _annihilator_step_table(brace, prev)
        )
    brace._cache["annihilator_series"] = chain
    return chain


def socle_quotient_tower(brace: SkewBrace) -> list[TableBrace]:
    """Iterated quotients A_1 = A, A_{n+1} = A_n / Soc(A_n).

    Stops once the socle becomes trivial (the chain is then constant) or the
    quotient collapses to the one-element brace.
    """
    if not isinstance(brace, TableBrace):
        raise errors.QuotientTooLarge("quotient materialization needs a table brace")
    chain = [brace]
    for _ in range(brace.order + 1):
        current = chain[-1]
        soc = socle(current)
        if current.order == 1 or soc.is_trivial:
            break
        nxt, _ = quotient_brace(current, soc)
        chain.append(nxt)
    return chain


def gamma_series(brace: SkewBrace) -> SeriesChain:
    """Gamma_1 = A, Gamma_{n+1} generated by Gamma_n*A, A*Gamma_n, [A, Gamma_n]."""
    cached = brace._cache.get("gamma_series")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(brace, "gamma", formula.bc_gamma_chain(brace), 1, False)
    else:
        whole = full_set(brace.order)

        def step(terms: list[ElementSet]) -> ElementSet:
            last = terms[-1]
            gens = set(star_subgroup(brace, last, whole).members)
            gens |= star_subgroup(brace, whole, last).members
            gens |= {
                brace.comm_dot(a, x) for a in brace.elements() for x in last.members
            }
            return dot_subgroup_closure(brace, gens)

        chain = _descending("gamma", brace, step)
    brace._cache["gamma_series"] = chain
    return chain


def gamma_prime_series(brace: SkewBrace) -> SeriesChain:
    """Gamma'_1 = A, Gamma'_{n+1} = [A, Gamma'_n]^A via the ideal commutator."""
    if not isinstance(brace, TableBrace):
        raise errors.TooLarge("the commutator-based series needs a table brace")
    cached = brace._cache.get("gamma_prime_series")
    if cached is not None:
        return cached
    whole = full_set(brace.order)
    chain = _descending(
        "gamma_prime", brace, lambda terms: huq_commutator(brace, whole, terms[-1])
    )
    brace._cache["gamma_prime_series"] = chain
    return chain


def relative_gamma_series(brace: SkewBrace, ideal: ElementSet) -> SeriesChain:
    """Gamma_1(I)^A = I, Gamma_{n+1}(I)^A = [I, Gamma_n(I)^A]^A."""
    if not isinstance(brace, TableBrace):
        raise errors.TooLarge("the relative series needs a table brace")
    if not is_ideal(brace, ideal):
        raise errors.NotAnIdeal("relative series of a non-ideal")
    terms = [ideal]
    if not terms[0].is_trivial:
        for _ in range(brace.order + 1):
            nxt = huq_commutator(brace, ideal, terms[-1])
            terms.append(nxt)
            if nxt == terms[-2] or nxt.is_trivial:
                break
        else:
            raise AssertionError("relative series failed to stabilize")
    return _wrap("relative_gamma", terms, 1, terminal_full=False)


def zeta_dot_series(brace: SkewBrace) -> SeriesChain:
    """Upper central series of (A, .), on either backing."""
    cached = brace._cache.get("zeta_dot")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(
            brace, "group_upper", formula.bc_zeta_dot_chain(brace), 0, True
        )
    else:
        chain = upper_central_series(brace.dot_group)
    brace._cache["zeta_dot"] = chain
    return chain


def zeta_circ_series(brace: SkewBrace) -> SeriesChain:
    cached = brace._cache.get("zeta_circ")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(
            brace, "group_upper", formula.bc_zeta_circ_chain(brace), 0, True
        )
    else:
        chain = upper_central_series(brace.circ_group)
    brace._cache["zeta_circ"] = chain
    return chain


def gamma_dot_series(brace: SkewBrace) -> SeriesChain:
    cached = brace._cache.get("gamma_dot")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(
            brace, "group_lower", formula.bc_gamma_dot_chain(brace), 1, False
        )
    else:
        chain = lower_central_series(brace.dot_group)
    brace._cache["gamma_dot"] = chain
    return chain


def gamma_circ_series(brace: SkewBrace) -> SeriesChain:
    cached = brace._cache.get("gamma_circ")
    if cached is not None:
        return cached
    if isinstance(brace, BCBrace):
        chain = formula.pairs_to_chain(
            brace, "group_lower", formula.bc_gamma_circ_chain(brace), 1, False
        )
    else:
        chain = lower_central_series(brace.circ_group)
    brace._cache["gamma_circ"] = chain
    return chain


ALL_SERIES = {
    "left": left_series,
    "right": right_series,
    "smoktunowicz": smoktunowicz_series,
    "socle": socle_series,
    "annihilator": annihilator_series,
    "gamma": gamma_series,
}
