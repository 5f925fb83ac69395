"""The skew brace abstraction: two group operations on one shared carrier.

A brace here is any object exposing dot/circ products, both inverses, and the
derived lambda and star maps over the carrier {0, ..., order-1} with identity
0. Table-backed braces store two validated Cayley tables; the formula-backed
variant lives in `formula`.
"""

from __future__ import annotations

import random
from typing import Iterable, Sequence

from . import errors
from .groups import GroupTable, validate_group

DEFAULT_SEED = 1729


class SkewBrace:
    """Base class; subclasses provide dot, circ, inv, bar over element indices.

    Instances are immutable after construction apart from idempotent lazy
    caches, so concurrent read-only use is safe (a race can at worst
    recompute an identical value).
    """

    order: int
    backing = "abstract"
    identity = 0

    def __init__(self) -> None:
        self._cache: dict = {}

    # -- subclass surface ---------------------------------------------------

    def dot(self, a: int, b: int) -> int:
        raise NotImplementedError

    def circ(self, a: int, b: int) -> int:
        raise NotImplementedError

    def inv(self, a: int) -> int:
        """Inverse in the additive group (A, .)."""
        raise NotImplementedError

    def bar(self, a: int) -> int:
        """Inverse in the multiplicative group (A, o)."""
        raise NotImplementedError

    def generators(self) -> tuple[int, ...]:
        raise NotImplementedError

    # -- derived operations -------------------------------------------------

    def elements(self) -> range:
        return range(self.order)

    def lam(self, a: int, b: int) -> int:
        """lambda_a(b) = a^-1 . (a o b)."""
        return self.dot(self.inv(a), self.circ(a, b))

    def star(self, a: int, b: int) -> int:
        """a * b = lambda_a(b) . b^-1."""
        return self.dot(self.lam(a, b), self.inv(b))

    def comm_dot(self, a: int, b: int) -> int:
        return self.dot(self.dot(a, b), self.dot(self.inv(a), self.inv(b)))

    def comm_circ(self, a: int, b: int) -> int:
        return self.circ(self.circ(a, b), self.circ(self.bar(a), self.bar(b)))

    def conj_dot(self, g: int, x: int) -> int:
        return self.dot(self.dot(g, x), self.inv(g))

    def conj_circ(self, g: int, x: int) -> int:
        return self.circ(self.circ(g, x), self.bar(g))

    def lambda_perm(self, a: int) -> tuple[int, ...]:
        """lambda_a as a permutation of the carrier."""
        return tuple(self.lam(a, b) for b in self.elements())


def lambda_of(brace: SkewBrace, a: int) -> tuple[int, ...]:
    """The automorphism lambda_a of (A, .) as a permutation tuple."""
    return brace.lambda_perm(a)


def star(brace: SkewBrace, a: int, b: int) -> int:
    return brace.star(a, b)


def bar(brace: SkewBrace, a: int) -> int:
    return brace.bar(a)


class TableBrace(SkewBrace):
    """A brace backed by two Cayley tables on the same carrier."""

    backing = "table"

    def __init__(self, dot_group: GroupTable, circ_group: GroupTable):
        super().__init__()
        self.dot_group = dot_group
        self.circ_group = circ_group
        self.order = dot_group.order
        self._star_table: tuple[tuple[int, ...], ...] | None = None
        self._lam_table: tuple[tuple[int, ...], ...] | None = None

    def dot(self, a: int, b: int) -> int:
        return self.dot_group.mul[a][b]

    def circ(self, a: int, b: int) -> int:
        return self.circ_group.mul[a][b]

    def inv(self, a: int) -> int:
        return self.dot_group.inv[a]

    def bar(self, a: int) -> int:
        return self.circ_group.inv[a]

    def lam(self, a: int, b: int) -> int:
        if self._lam_table is not None:
            return self._lam_table[a][b]
        return self.dot_group.mul[self.dot_group.inv[a]][self.circ_group.mul[a][b]]

    def star(self, a: int, b: int) -> int:
        if self._star_table is not None:
            return self._star_table[a][b]
        return self.dot_group.mul[self.lam(a, b)][self.dot_group.inv[b]]

    def warm_tables(self, limit: int = 256) -> None:
        """Materialize lambda and star tables for repeated sweeps."""
        if self.order > limit or self._star_table is not None:
            return
        n = self.order
        self._lam_table = tuple(
            tuple(
                self.dot_group.mul[self.dot_group.inv[a]][self.circ_group.mul[a][b]]
                for b in range(n)
            )
            for a in range(n)
        )
        self._star_table = tuple(
            tuple(
                self.dot_group.mul[self._lam_table[a][b]][self.dot_group.inv[b]]
                for b in range(n)
            )
            for a in range(n)
        )

    def generators(self) -> tuple[int, ...]:
        cached = self._cache.get("generators")
        if cached is not None:
            return cached
        gens = _joint_generators(self.dot_group, self.circ_group)
        self._cache["generators"] = gens
        return gens


def _closure_under(table: GroupTable, gens: Iterable[int]) -> set[int]:
    seen = {0}
    gen_list = sorted(set(gens) | {0})
    frontier = [0]
    while frontier:
        nxt = []
        for x in frontier:
            for h in gen_list:
                y = table.mul[x][h]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return seen


def _joint_generators(dot: GroupTable, circ: GroupTable) -> tuple[int, ...]:
    """A set generating the carrier under both group operations."""
    gens: list[int] = []
    closed = {0}
    for x in range(dot.order):
        if x not in closed:
            gens.append(x)
            closed = _closure_under(dot, gens)
    while len(closed_circ := _closure_under(circ, gens)) < circ.order:
        gens.append(min(set(range(circ.order)) - closed_circ))
    return tuple(gens)


def validate_brace(dot: GroupTable | Sequence[Sequence[int]], circ: GroupTable | Sequence[Sequence[int]]) -> TableBrace:
    """Check the brace relation and the lambda homomorphism on all triples.

    Both tables must be groups on the same carrier with identity 0; the
    relation a o (b . c) = (a o b) . a^-1 . (a o c) is verified exhaustively.
    """
    def as_group(table, label: str) -> GroupTable:
        if isinstance(table, GroupTable):
            return table
        n = len(table)
        rows = tuple(tuple(int(x) for x in row) for row in table)
        if any(len(r) != n for r in rows):
            raise errors.ParseError(f"{label} table is not square")
        if any(rows[0][x] != x or rows[x][0] != x for x in range(n)):
            raise errors.IdentityMismatch(f"{label} identity is not at index 0")
        return validate_group(rows)

    dot_g = as_group(dot, "dot")
    circ_g = as_group(circ, "circ")
    if dot_g.order != circ_g.order:
        raise errors.IdentityMismatch("tables have different carrier sizes")
    if any(circ_g.mul[0][x] != x or circ_g.mul[x][0] != x for x in range(dot_g.order)):
        raise errors.IdentityMismatch("the two operations do not share identity 0")

    n = dot_g.order
    dmul, cmul, dinv = dot_g.mul, circ_g.mul, dot_g.inv
    for a in range(n):
        ia = dinv[a]
        lam_a = tuple(dmul[ia][cmul[a][b]] for b in range(n))
        for b in range(n):
            ab = cmul[a][b]
            for c in range(n):
                lhs = cmul[a][dmul[b][c]]
                rhs = dmul[dmul[ab][ia]][cmul[a][c]]
                if lhs != rhs:
                    raise errors.BraceRelationFails(a, b, c)
        # lambda_{a o b} = lambda_a lambda_b, checked row by row.
        for b in range(n):
            ab = cmul[a][b]
            iab = dinv[ab]
            lam_b_row = dmul[dinv[b]]
            for x in range(n):
                if dmul[iab][cmul[ab][x]] != lam_a[lam_b_row[cmul[b][x]]]:
                    raise errors.LambdaNotHomomorphism(a, b)
    return TableBrace(dot_g, circ_g)


def table_brace_trusted(dot_g: GroupTable, circ_g: GroupTable) -> TableBrace:
    """Wrap two tables known to form a brace (quotients, relabelings)."""
    return TableBrace(dot_g, circ_g)


def build_trivial(g: GroupTable) -> TableBrace:
    """The brace with circ equal to dot."""
    return TableBrace(g, g)


def build_almost_trivial(g: GroupTable) -> TableBrace:
    """The brace with circ the opposite operation of dot."""
    opp = tuple(tuple(g.mul[b][a] for b in g.elements()) for a in g.elements())
    circ_g = GroupTable(g.order, opp, g.inv)
    return TableBrace(g, circ_g)


def build_from_radical_ring(add: Sequence[Sequence[int]], mult: Sequence[Sequence[int]]) -> TableBrace:
    """Build the brace with a o b = a + b + a*b from a radical ring.

    The addition table must be an abelian group with zero at index 0 and the
    multiplication associative and two-sided distributive; rejects rings whose
    circle operation is not a group.
    """
    n = len(add)
    add_rows = tuple(tuple(int(x) for x in row) for row in add)
    if any(len(r) != n for r in add_rows):
        raise errors.ParseError("addition table is not square")
    # Relabeling would desynchronize the two tables, so pin zero at index 0.
    if any(add_rows[0][x] != x or add_rows[x][0] != x for x in range(n)):
        raise errors.NotARing("the zero element must sit at index 0")
    add_g = validate_group(add_rows)
    if not add_g.is_abelian():
        raise errors.NotARing("addition is not commutative")
    rows = tuple(tuple(int(x) for x in row) for row in mult)
    if len(rows) != n or any(len(r) != n for r in rows):
        raise errors.ParseError("multiplication table shape does not match addition")
    if any(x < 0 or x >= n for row in rows for x in row):
        raise errors.ParseError("multiplication table entries outside the carrier")
    am = add_g.mul
    for a in range(n):
        for b in range(n):
            ab = rows[a][b]
            for c in range(n):
                if rows[ab][c] != rows[a][rows[b][c]]:
                    raise errors.NotARing("multiplication not associative", (a, b, c))
                if rows[a][am[b][c]] != am[rows[a][b]][rows[a][c]]:
                    raise errors.NotARing("left distributivity fails", (a, b, c))
                if rows[am[a][b]][c] != am[rows[a][c]][rows[b][c]]:
                    raise errors.NotARing("right distributivity fails", (a, b, c))
    circ_rows = tuple(
        tuple(am[am[a][b]][rows[a][b]] for b in range(n)) for a in range(n)
    )
    try:
        circ_g = validate_group(circ_rows)
    except errors.AlgebraError as exc:
        raise errors.NotRadical(f"circle operation is not a group: {exc}") from exc
    if any(circ_g.mul[0][x] != x for x in range(n)):
        raise errors.NotRadical("circle identity moved away from zero")
    brace = validate_brace(add_g, circ_g)
    for a in range(n):
        for b in range(n):
            if brace.star(a, b) != rows[a][b]:
                raise AssertionError("star product disagrees with ring multiplication")
    return brace


# ---------------------------------------------------------------------------
# Identity suite.

IDENTITY_NAMES = (
    "a*(x.y) = (a*x).x.(a*y).x^-1",
    "(xoy)*a = (x*(y*a)).(y*a).(x*a)",
    "lam_a(x*y) = (aoxo~a)*lam_a(y)",
    "aoxo~a = a.lam_a(x.(x*~a)).a^-1",
)


def _identity_holds(brace: SkewBrace, idx: int, a: int, x: int, y: int) -> bool:
    d, c, s, lm = brace.dot, brace.circ, brace.star, brace.lam
    if idx == 0:
        lhs = s(a, d(x, y))
        rhs = d(d(d(s(a, x), x), s(a, y)), brace.inv(x))
        return lhs == rhs
    if idx == 1:
        lhs = s(c(x, y), a)
        ya = s(y, a)
        rhs = d(d(s(x, ya), ya), s(x, a))
        return lhs == rhs
    if idx == 2:
        lhs = lm(a, s(x, y))
        rhs = s(c(c(a, x), brace.bar(a)), lm(a, y))
        return lhs == rhs
    lhs = c(c(a, x), brace.bar(a))
    rhs = d(d(a, lm(a, d(x, s(x, brace.bar(a))))), brace.inv(a))
    return lhs == rhs


def check_identities(brace: SkewBrace, samples: int = 100_000, seed: int = DEFAULT_SEED) -> dict:
    """Verify the four star-product identities.

    Table braces are checked on all triples; formula braces on `samples`
    seeded random triples plus every triple from the generating set.
    """
    if brace.backing == "table":
        triples = (
            (a, x, y)
            for a in brace.elements()
            for x in brace.elements()
            for y in brace.elements()
        )
        if isinstance(brace, TableBrace):
            brace.warm_tables()
        return _run_identity_suite(brace, triples)

    gens = brace.generators()
    rng = random.Random(seed)
    n = brace.order

    def triple_stream():
        for a in gens:
            for x in gens:
                for y in gens:
                    yield (a, x, y)
        for _ in range(samples):
            yield (rng.randrange(n), rng.randrange(n), rng.randrange(n))

    return _run_identity_suite(brace, triple_stream())


def _run_identity_suite(brace: SkewBrace, triples) -> dict:
    failures: list[dict] = []
    checked = 0
    for a, x, y in triples:
        checked += 1
        for idx in range(4):
            if not _identity_holds(brace, idx, a, x, y):
                failures.append(
                    {"identity": IDENTITY_NAMES[idx], "triple": (a, x, y)}
                )
                if len(failures) >= 8:
                    return {"passed": False, "checked": checked, "failures": failures}
    return {"passed": not failures, "checked": checked, "failures": failures}
