"""Small dense linear algebra over prime fields F_p.

Vectors are tuples of ints in [0, p); matrices are tuples of row tuples
acting on column vectors from the left. Everything here is sized for the
4x4-over-F_5 scale of the matrix brace constructions, so plain Python
arithmetic is deliberate.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

Vec = tuple[int, ...]
Mat = tuple[Vec, ...]


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


def vec_add(u: Vec, v: Vec, p: int) -> Vec:
    return tuple((a + b) % p for a, b in zip(u, v))


def vec_sub(u: Vec, v: Vec, p: int) -> Vec:
    return tuple((a - b) % p for a, b in zip(u, v))


def vec_neg(u: Vec, p: int) -> Vec:
    return tuple((-a) % p for a in u)


def zero_vec(dim: int) -> Vec:
    return (0,) * dim


def unit_vec(dim: int, i: int) -> Vec:
    return tuple(1 if j == i else 0 for j in range(dim))


def mat_identity(dim: int) -> Mat:
    return tuple(unit_vec(dim, i) for i in range(dim))


def mat_vec(m: Mat, v: Vec, p: int) -> Vec:
    return tuple(sum(row[j] * v[j] for j in range(len(v))) % p for row in m)


def mat_mul(a: Mat, b: Mat, p: int) -> Mat:
    n = len(a)
    cols = range(len(b[0]))
    return tuple(
        tuple(sum(a[i][k] * b[k][j] for k in range(n)) % p for j in cols)
        for i in range(n)
    )


def mat_pow(m: Mat, e: int, p: int) -> Mat:
    result = mat_identity(len(m))
    base = m
    e = e % _mat_order_bound(m, p) if e < 0 else e
    while e:
        if e & 1:
            result = mat_mul(result, base, p)
        base = mat_mul(base, base, p)
        e >>= 1
    return result


def _mat_order_bound(m: Mat, p: int) -> int:
    # Multiplicative order of an invertible matrix divides |GL_d(F_p)|.
    d = len(m)
    order = 1
    for i in range(d):
        order *= p**d - p**i
    return order


def mat_sub(a: Mat, b: Mat, p: int) -> Mat:
    return tuple(tuple((x - y) % p for x, y in zip(ra, rb)) for ra, rb in zip(a, b))


def mats_commute(a: Mat, b: Mat, p: int) -> bool:
    return mat_mul(a, b, p) == mat_mul(b, a, p)


def mat_rank(m: Mat, p: int) -> int:
    return Subspace.from_vectors(p, len(m[0]), list(m)).rank


def mat_is_invertible(m: Mat, p: int) -> bool:
    return len(m) == len(m[0]) and mat_rank(m, p) == len(m)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^dim held as a reduced row echelon basis.

    The basis is canonical, so dataclass equality is subspace equality.
    """

    p: int
    dim: int
    basis: tuple[Vec, ...]

    @staticmethod
    def zero(p: int, dim: int) -> "Subspace":
        return Subspace(p, dim, ())

    @staticmethod
    def full(p: int, dim: int) -> "Subspace":
        return Subspace(p, dim, mat_identity(dim))

    @staticmethod
    def from_vectors(p: int, dim: int, vectors) -> "Subspace":
        rows: list[list[int]] = []
        for v in vectors:
            _reduce_into(rows, list(v), p)
        return Subspace(p, dim, _canonical(rows, p))

    @property
    def rank(self) -> int:
        return len(self.basis)

    @property
    def size(self) -> int:
        return self.p**self.rank

    def contains(self, v: Vec) -> bool:
        return not any(_residue(list(self.basis), list(v), self.p))

    def residue(self, v: Vec) -> Vec:
        """Canonical coset representative of v modulo this subspace."""
        return tuple(_residue(list(self.basis), list(v), self.p))

    def contains_space(self, other: "Subspace") -> bool:
        return all(self.contains(v) for v in other.basis)

    def extended(self, vectors) -> "Subspace":
        rows = [list(v) for v in self.basis]
        for v in vectors:
            _reduce_into(rows, list(v), self.p)
        return Subspace(self.p, self.dim, _canonical(rows, self.p))

    def union_span(self, other: "Subspace") -> "Subspace":
        return self.extended(other.basis)

    def elements(self):
        """Iterate all members, the zero vector first."""
        if not self.basis:
            yield zero_vec(self.dim)
            return
        for coeffs in itertools.product(range(self.p), repeat=self.rank):
            acc = [0] * self.dim
            for c, row in zip(coeffs, self.basis):
                if c:
                    for j, x in enumerate(row):
                        acc[j] = (acc[j] + c * x) % self.p
            yield tuple(acc)


def _pivot(row: list[int]) -> int:
    for j, x in enumerate(row):
        if x:
            return j
    return -1


def _reduce_into(rows: list[list[int]], v: list[int], p: int) -> None:
    v = _residue(rows, v, p)
    j = _pivot(v)
    if j < 0:
        return
    inv = pow(v[j], -1, p)
    v = [(x * inv) % p for x in v]
    rows.append(v)
    rows.sort(key=_pivot)


def _residue(rows: list[list[int]], v: list[int], p: int) -> list[int]:
    v = [x % p for x in v]
    for row in rows:
        j = _pivot(row)
        if j >= 0 and v[j]:
            c = v[j]
            for k in range(j, len(v)):
                v[k] = (v[k] - c * row[k]) % p
    return v


def _canonical(rows: list[list[int]], p: int) -> tuple[Vec, ...]:
    # Back-substitute so every pivot column is cleared above its pivot.
    rows = sorted((list(r) for r in rows), key=_pivot)
    for i in range(len(rows)):
        j = _pivot(rows[i])
        for k in range(i):
            c = rows[k][j]
            if c:
                for col in range(j, len(rows[k])):
                    rows[k][col] = (rows[k][col] - c * rows[i][col]) % p
    return tuple(tuple(r) for r in rows)
