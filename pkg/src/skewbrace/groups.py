"""Finite group machinery over Cayley tables with 0-based element indices.

Every group lives on the carrier {0, ..., n-1} with the identity pinned at
index 0. Tables are immutable once validated, so instances are safe to share
between threads for read-only queries.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Any, Iterable, Iterator, Sequence

from . import errors

Table = tuple[tuple[int, ...], ...]


@dataclass(frozen=True)
class GroupTable:
    """A finite group as a Cayley table with precomputed inverses."""

    order: int
    mul: Table
    inv: tuple[int, ...]

    identity: int = 0

    def conj(self, g: int, x: int) -> int:
        """g * x * g^-1."""
        return self.mul[self.mul[g][x]][self.inv[g]]

    def comm(self, a: int, b: int) -> int:
        """[a, b] = a * b * a^-1 * b^-1."""
        return self.mul[self.mul[a][b]][self.mul[self.inv[a]][self.inv[b]]]

    def elements(self) -> range:
        return range(self.order)

    def is_abelian(self) -> bool:
        m = self.mul
        return all(m[a][b] == m[b][a] for a in range(self.order) for b in range(a))

    @staticmethod
    def from_trusted(mul: Sequence[Sequence[int]]) -> "GroupTable":
        """Wrap a table known to be a group (quotients, relabelings).

        Skips the cubic associativity sweep; inverses are still derived and
        the identity at 0 is still asserted.
        """
        table = tuple(tuple(row) for row in mul)
        n = len(table)
        if any(table[0][x] != x or table[x][0] != x for x in range(n)):
            raise errors.NoIdentity("index 0 is not an identity")
        inv = _inverse_row(table, n)
        return GroupTable(n, table, inv)


def _inverse_row(table: Table, n: int) -> tuple[int, ...]:
    inv = [-1] * n
    for x in range(n):
        for y in range(n):
            if table[x][y] == 0 and table[y][x] == 0:
                inv[x] = y
                break
        else:
            raise errors.NoInverse(x)
    return tuple(inv)


def validate_group(mul: Sequence[Sequence[int]]) -> GroupTable:
    """Check the full group axioms and return a table with identity at 0.

    Raises NoIdentity, NoInverse, or NotAssociative with a witness. When the
    identity sits at another index, the carrier is relabeled by the swap that
    brings it to 0.
    """
    n = len(mul)
    if n == 0:
        raise errors.ParseError("empty multiplication table")
    rows = []
    for i, row in enumerate(mul):
        row = tuple(int(x) for x in row)
        if len(row) != n:
            raise errors.ParseError(f"row {i} has length {len(row)}, expected {n}")
        if any(x < 0 or x >= n for x in row):
            raise errors.ParseError(f"row {i} has entries outside 0..{n - 1}")
        rows.append(row)
    table: Table = tuple(rows)

    e = next(
        (
            cand
            for cand in range(n)
            if all(table[cand][x] == x and table[x][cand] == x for x in range(n))
        ),
        None,
    )
    if e is None:
        raise errors.NoIdentity("no two-sided identity element")
    if e != 0:
        swap = list(range(n))
        swap[0], swap[e] = e, 0
        table = tuple(
            tuple(swap[table[swap[a]][swap[b]]] for b in range(n)) for a in range(n)
        )

    inv = _inverse_row(table, n)
    for x in range(n):
        for y in range(n):
            xy = table[x][y]
            for z in range(n):
                if table[xy][z] != table[x][table[y][z]]:
                    raise errors.NotAssociative(x, y, z)
    return GroupTable(n, table, inv)


@dataclass(frozen=True)
class ElementSet:
    """A subset of a carrier {0, ..., parent_order-1}.

    The optional `pair` slot carries the compact subspace-product form used
    by formula-backed braces; it never participates in equality.
    """

    members: frozenset[int]
    parent_order: int
    pair: Any = field(default=None, compare=False, repr=False)

    def __contains__(self, x: int) -> bool:
        return x in self.members

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __len__(self) -> int:
        return len(self.members)

    def sorted(self) -> list[int]:
        return sorted(self.members)

    @property
    def is_trivial(self) -> bool:
        return self.members == frozenset((0,))

    @property
    def is_full(self) -> bool:
        return len(self.members) == self.parent_order


def make_set(members: Iterable[int], parent_order: int, pair: Any = None) -> ElementSet:
    return ElementSet(frozenset(members), parent_order, pair)


def trivial_set(parent_order: int) -> ElementSet:
    return make_set((0,), parent_order)


def full_set(parent_order: int) -> ElementSet:
    return make_set(range(parent_order), parent_order)


@dataclass(frozen=True)
class SeriesChain:
    """An ascending or descending chain of element sets.

    `start_index` is the index of terms[0] in the usual numbering: 1 for
    descending chains, 0 for ascending ones. Terms past `stabilized_at` are
    constant; `at(n)` therefore clamps to the last computed term.
    """

    kind: str
    terms: tuple[ElementSet, ...]
    start_index: int
    stabilized_at: int
    reaches_terminal: bool

    def at(self, n: int) -> ElementSet:
        if n < self.start_index:
            raise errors.BadIndices(f"index {n} below start {self.start_index}")
        return self.terms[min(n - self.start_index, len(self.terms) - 1)]

    def __len__(self) -> int:
        return len(self.terms)

    def terminal_class(self) -> int | None:
        """Index of the first terminal term, or None if never reached."""
        if not self.reaches_terminal:
            return None
        target = self.terms[-1]
        for i, t in enumerate(self.terms):
            if t == target:
                return self.start_index + i
        raise AssertionError("unreachable")


def _finish_chain(kind: str, terms: list[ElementSet], start: int, terminal_full: bool) -> SeriesChain:
    last = terms[-1]
    first_stable = len(terms) - 1
    while first_stable > 0 and terms[first_stable - 1] == last:
        first_stable -= 1
    reached = last.is_full if terminal_full else last.is_trivial
    return SeriesChain(kind, tuple(terms), start, start + first_stable, reached)


def subgroup_closure(g: GroupTable, gens: Iterable[int] | ElementSet) -> ElementSet:
    """Smallest subgroup containing the generators (BFS over right products)."""
    seen = {0}
    gen_list = sorted(set(gens) | {0})
    frontier = [0]
    mul = g.mul
    while frontier:
        nxt = []
        for x in frontier:
            for h in gen_list:
                y = mul[x][h]
                if y not in seen:
                    seen.add(y)
                    nxt.append(y)
        frontier = nxt
    return make_set(seen, g.order)


def is_subgroup(g: GroupTable, s: ElementSet) -> bool:
    members = s.members
    if 0 not in members:
        return False
    mul = g.mul
    return all(mul[a][b] in members for a in members for b in members)


def is_normal(g: GroupTable, h: ElementSet) -> bool:
    """True iff x H x^-1 = H for every x; raises if H is not a subgroup."""
    if not is_subgroup(g, h):
        raise errors.NotASubgroup("normality asked of a non-subgroup")
    members = h.members
    return all(g.conj(x, a) in members for x in g.elements() for a in members)


def quotient_group(g: GroupTable, n: ElementSet) -> tuple[GroupTable, tuple[int, ...]]:
    """Quotient table on minimal coset representatives plus the projection map.

    The projection sends each element to the index of its coset in the
    quotient carrier.
    """
    if not is_normal(g, n):
        raise errors.NotNormal("quotient by a non-normal subgroup")
    mul = g.mul
    members = sorted(n.members)
    rep_of: dict[int, int] = {}
    reps: list[int] = []
    for x in g.elements():
        if x in rep_of:
            continue
        coset = [mul[x][a] for a in members]
        r = min(coset)
        for y in coset:
            rep_of[y] = r
        reps.append(r)
    reps.sort()
    index_of = {r: i for i, r in enumerate(reps)}
    table = tuple(
        tuple(index_of[rep_of[mul[a][b]]] for b in reps) for a in reps
    )
    projection = tuple(index_of[rep_of[x]] for x in g.elements())
    return GroupTable.from_trusted(table), projection


def center(g: GroupTable) -> ElementSet:
    mul = g.mul
    return make_set(
        (x for x in g.elements() if all(mul[x][a] == mul[a][x] for a in g.elements())),
        g.order,
    )


def commutator_set(g: GroupTable, x: ElementSet, y: ElementSet) -> ElementSet:
    """Subgroup generated by all commutators [a, b], a in X, b in Y."""
    gens = {g.comm(a, b) for a in x.members for b in y.members}
    return subgroup_closure(g, gens)


def run_chain(kind: str, start: ElementSet, step, start_index: int, terminal_full: bool, cap: int) -> SeriesChain:
    """Drive a single-step recursion until the terminal set or a repeat.

    Sound for monotone chains: equality of consecutive terms means the
    recursion has reached its fixpoint. The repeated term is kept so the
    stabilization is visible; the terminal appears once (it is absorbing).
    """
    terms = [start]
    is_terminal = (lambda s: s.is_full) if terminal_full else (lambda s: s.is_trivial)
    if is_terminal(start):
        return _finish_chain(kind, terms, start_index, terminal_full)
    for _ in range(cap):
        nxt = step(terms[-1])
        terms.append(nxt)
        if nxt == terms[-2] or is_terminal(nxt):
            return _finish_chain(kind, terms, start_index, terminal_full)
    raise AssertionError(f"{kind} chain failed to stabilize within {cap} steps")


def lower_central_series(g: GroupTable) -> SeriesChain:
    """gamma_1 = G, gamma_{n+1} = [G, gamma_n], computed until it repeats."""
    whole = full_set(g.order)
    return run_chain(
        "group_lower",
        whole,
        lambda prev: commutator_set(g, whole, prev),
        start_index=1,
        terminal_full=False,
        cap=g.order + 1,
    )


def upper_central_series(g: GroupTable) -> SeriesChain:
    """zeta_0 = 1 and the lifted predicate x in zeta_{n+1} iff all [x, a] land
    in zeta_n; quotients are never materialized."""

    def step(prev: ElementSet) -> ElementSet:
        inside = prev.members
        return make_set(
            (x for x in g.elements() if all(g.comm(x, a) in inside for a in g.elements())),
            g.order,
        )

    return run_chain(
        "group_upper",
        trivial_set(g.order),
        step,
        start_index=0,
        terminal_full=True,
        cap=g.order + 1,
    )


def group_nilpotency_class(g: GroupTable) -> int | None:
    """Least c with gamma_{c+1} = 1, or None when G is not nilpotent."""
    chain = lower_central_series(g)
    cls = chain.terminal_class()
    return None if cls is None else cls - 1


def check_group_central_inclusion(g: GroupTable, n: int, k: int) -> dict:
    """Verify [zeta_n, gamma_{n-k}] <= zeta_k by brute force over all pairs."""
    if n < 1 or k < 0 or k > n - 1:
        raise errors.BadIndices(f"need n >= 1 and 0 <= k <= n-1, got ({n}, {k})")
    upper = upper_central_series(g)
    lower = lower_central_series(g)
    zn = upper.at(n)
    gnk = lower.at(n - k)
    zk = upper.at(k).members
    for x in zn:
        for y in gnk:
            c = g.comm(x, y)
            if c not in zk:
                return {"holds": False, "witness": (x, y, c)}
    return {"holds": True, "witness": None}


def all_subgroups(g: GroupTable, max_order: int = 64) -> list[ElementSet]:
    """Every subgroup, by closure of extensions; gated to small groups."""
    if g.order > max_order:
        raise errors.TooLarge(f"subgroup enumeration capped at order {max_order}")
    found: dict[frozenset[int], ElementSet] = {}
    start = subgroup_closure(g, ())
    queue = [start]
    found[start.members] = start
    while queue:
        h = queue.pop()
        for x in g.elements():
            if x in h.members:
                continue
            bigger = subgroup_closure(g, set(h.members) | {x})
            if bigger.members not in found:
                found[bigger.members] = bigger
                queue.append(bigger)
    return sorted(found.values(), key=lambda s: (len(s), s.sorted()))


# ---------------------------------------------------------------------------
# Named constructions used by tests and the CLI's --builtin option.


def cyclic(n: int) -> GroupTable:
    if n < 1:
        raise errors.BadParameters("cyclic group needs order >= 1")
    mul = tuple(tuple((a + b) % n for b in range(n)) for a in range(n))
    inv = tuple((-a) % n for a in range(n))
    return GroupTable(n, mul, inv)


def direct_product(g: GroupTable, h: GroupTable) -> GroupTable:
    """Direct product with index (a, b) -> a + |G| * b."""
    n, m = g.order, h.order

    def enc(a: int, b: int) -> int:
        return a + n * b

    mul = tuple(
        tuple(
            enc(g.mul[a1][a2], h.mul[b1][b2])
            for b2 in range(m)
            for a2 in range(n)
        )
        for b1 in range(m)
        for a1 in range(n)
    )
    inv = tuple(enc(g.inv[a], h.inv[b]) for b in range(m) for a in range(n))
    return GroupTable(n * m, mul, inv)


def dihedral(n: int) -> GroupTable:
    """Dihedral group of order 2n; index r^i s^e -> i + n * e."""
    if n < 1:
        raise errors.BadParameters("dihedral group needs n >= 1")

    def mul_fn(x: int, y: int) -> int:
        i, e = x % n, x // n
        j, f = y % n, y // n
        rot = (i + j) % n if e == 0 else (i - j) % n
        return rot + n * (e ^ f)

    size = 2 * n
    mul = tuple(tuple(mul_fn(x, y) for y in range(size)) for x in range(size))
    return GroupTable.from_trusted(mul)


def quaternion8() -> GroupTable:
    """Quaternion group {±1, ±i, ±j, ±k}; index unit u with sign s -> u + 4s."""
    # Product table on units 1, i, j, k: entry (value, sign).
    unit_mul = {
        (0, 0): (0, 0), (0, 1): (1, 0), (0, 2): (2, 0), (0, 3): (3, 0),
        (1, 0): (1, 0), (1, 1): (0, 1), (1, 2): (3, 0), (1, 3): (2, 1),
        (2, 0): (2, 0), (2, 1): (3, 1), (2, 2): (0, 1), (2, 3): (1, 0),
        (3, 0): (3, 0), (3, 1): (2, 0), (3, 2): (1, 1), (3, 3): (0, 1),
    }

    def mul_fn(x: int, y: int) -> int:
        u, s = x % 4, x // 4
        v, t = y % 4, y // 4
        w, extra = unit_mul[(u, v)]
        return w + 4 * ((s + t + extra) % 2)

    mul = tuple(tuple(mul_fn(x, y) for y in range(8)) for x in range(8))
    return GroupTable.from_trusted(mul)


def symmetric(n: int) -> GroupTable:
    """Symmetric group on n points, permutations ordered lexicographically."""
    if n < 1 or n > 5:
        raise errors.BadParameters("symmetric group supported for 1 <= n <= 5")
    perms = sorted(itertools.permutations(range(n)))
    return _perm_table(perms)


def alternating(n: int) -> GroupTable:
    if n < 3 or n > 5:
        raise errors.BadParameters("alternating group supported for 3 <= n <= 5")
    perms = sorted(p for p in itertools.permutations(range(n)) if _parity(p) == 0)
    return _perm_table(perms)


def _parity(p: tuple[int, ...]) -> int:
    inversions = sum(
        1 for i in range(len(p)) for j in range(i + 1, len(p)) if p[i] > p[j]
    )
    return inversions % 2


def _perm_table(perms: list[tuple[int, ...]]) -> GroupTable:
    index = {p: i for i, p in enumerate(perms)}
    mul = tuple(
        tuple(index[tuple(p[q[i]] for i in range(len(p)))] for q in perms)
        for p in perms
    )
    return GroupTable.from_trusted(mul)


def builtin_group(name: str) -> GroupTable:
    """Parse names like C6, C2xC3, S3, A4, D4 (order 8), Q8, V4."""
    key = name.strip().replace(" ", "")
    upper = key.upper()
    if upper == "V4":
        return direct_product(cyclic(2), cyclic(2))
    if upper == "Q8":
        return quaternion8()
    if "X" in upper:
        parts = upper.split("X")
        tables = [builtin_group(p) for p in parts]
        out = tables[0]
        for t in tables[1:]:
            out = direct_product(out, t)
        return out
    kind, num = upper[:1], upper[1:]
    if not num.isdigit():
        raise errors.ParseError(f"unrecognized group name {name!r}")
    n = int(num)
    if kind == "C" or kind == "Z":
        return cyclic(n)
    if kind == "S":
        return symmetric(n)
    if kind == "A":
        return alternating(n)
    if kind == "D":
        return dihedral(n)
    raise errors.ParseError(f"unrecognized group name {name!r}")
