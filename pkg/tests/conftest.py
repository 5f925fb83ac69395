"""Shared fixtures: the named test groups, the brace catalog, the enumerated
corpus of order <= 8, and the big formula brace."""

from __future__ import annotations

import pytest

import skewbrace as sb

I2 = ((1, 0), (0, 1))
UNI2 = ((1, 1), (0, 1))


def small_group_tables() -> dict[str, sb.GroupTable]:
    groups = {
        "C1": sb.cyclic(1),
        "C2": sb.cyclic(2),
        "C3": sb.cyclic(3),
        "C4": sb.cyclic(4),
        "V4": sb.builtin_group("C2xC2"),
        "C5": sb.cyclic(5),
        "C6": sb.cyclic(6),
        "C3xC2": sb.direct_product(sb.cyclic(3), sb.cyclic(2)),
        "S3": sb.symmetric(3),
        "C7": sb.cyclic(7),
        "C8": sb.cyclic(8),
        "C2xC4": sb.builtin_group("C2xC4"),
        "C2xC2xC2": sb.builtin_group("C2xC2xC2"),
        "D4": sb.dihedral(4),
        "Q8": sb.quaternion8(),
        "C9": sb.cyclic(9),
        "C3xC3": sb.builtin_group("C3xC3"),
        "D5": sb.dihedral(5),
        "C12": sb.cyclic(12),
        "A4": sb.builtin_group("A4"),
        "D6": sb.dihedral(6),
        "D8": sb.dihedral(8),
    }
    return groups


ORDER8_GROUPS = [
    "C1",
    "C2",
    "C3",
    "C4",
    "V4",
    "C5",
    "C6",
    "S3",
    "C7",
    "C8",
    "C2xC4",
    "C2xC2xC2",
    "D4",
    "Q8",
]


@pytest.fixture(scope="session")
def groups() -> dict[str, sb.GroupTable]:
    return small_group_tables()


def radical_z4_tables():
    add = [[(a + b) % 4 for b in range(4)] for a in range(4)]
    mult = [[(2 * a * b) % 4 for b in range(4)] for a in range(4)]
    return add, mult


def bc16() -> sb.BCBrace:
    return sb.make_bc_brace(2, 2, 2, (I2, UNI2), (I2, UNI2))


def bc81() -> sb.BCBrace:
    u3 = ((1, 1), (0, 1))
    return sb.make_bc_brace(3, 2, 2, (I2, u3), (I2, u3))


@pytest.fixture(scope="session")
def f5() -> sb.BCBrace:
    return sb.make_counterexample_F(5)


@pytest.fixture(scope="session")
def catalog(groups, f5) -> list[tuple[str, sb.SkewBrace]]:
    add, mult = radical_z4_tables()
    entries: list[tuple[str, sb.SkewBrace]] = [
        ("trivial_C2", sb.build_trivial(groups["C2"])),
        ("trivial_C6", sb.build_trivial(groups["C6"])),
        ("trivial_S3", sb.build_trivial(groups["S3"])),
        ("trivial_D4", sb.build_trivial(groups["D4"])),
        ("trivial_Q8", sb.build_trivial(groups["Q8"])),
        ("almost_trivial_S3", sb.build_almost_trivial(groups["S3"])),
        ("almost_trivial_D4", sb.build_almost_trivial(groups["D4"])),
        ("pq_i", sb.make_pq_brace(3, 2, 2, "i")),
        ("pq_ii", sb.make_pq_brace(3, 2, 2, "ii")),
        ("pq_i_52", sb.make_pq_brace(5, 2, 4, "i")),
        ("pq_i_73", sb.make_pq_brace(7, 3, 2, "i")),
        ("pq_ii_73", sb.make_pq_brace(7, 3, 2, "ii")),
        ("radical_z4", sb.build_from_radical_ring(add, mult)),
        ("bc16", bc16()),
        ("bc81", bc81()),
        ("counterexample_F5", f5),
    ]
    return entries


@pytest.fixture(scope="session")
def corpus8(groups) -> list[tuple[str, sb.TableBrace]]:
    out: list[tuple[str, sb.TableBrace]] = []
    for name in ORDER8_GROUPS:
        for i, brace in enumerate(sb.enumerate_braces(groups[name])):
            out.append((f"{name}#{i}", brace))
    return out
