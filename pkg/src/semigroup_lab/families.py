"""Closed-form invariants and carving schemas for two generator families:
four consecutive squares and four consecutive triangular numbers.

Each residue class of n carries a hand-transcribed schema: four diagonal
relations, a handful of extra two-against-two identities, and chain families
obtained by repeatedly adding or subtracting one identity from another.
Every instantiated equation is re-checked as an exact integer identity at
load, so a transcription slip fails loudly instead of corrupting a carve.

Closed forms are stored as integer polynomials in the class parameter k
(genus doubled to stay integral); the equivalent rational polynomials in n
are asserted against them at every evaluation.
"""

from __future__ import annotations

import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass
from math import factorial, prod
from typing import Mapping

from .core import NumericalSemigroup, apery_set, frobenius, genus, mk_semigroup
from .factorization import betti_elements
from .lshape import CarvePoint, Figure, LShape
from .relations import Arrangement, ArrangementMode, Relation


class OutOfValidity(ValueError):
    """Requested n is below the schema's validity threshold."""


class IdentityViolated(ArithmeticError):
    """An instantiated schema equation is not an exact identity (data bug)."""


class OutOfTabulatedRange(LookupError):
    """No stated formula or table value covers this field at this n."""


def squares_generators(n: int) -> tuple[int, int, int, int]:
    return (n * n, (n + 1) ** 2, (n + 2) ** 2, (n + 3) ** 2)


def triangular_generators(n: int) -> tuple[int, int, int, int]:
    return tuple((n + i) * (n + i + 1) // 2 for i in range(4))


_GENERATORS = {"squares": squares_generators, "triangular": triangular_generators}


def _ev(poly: tuple[int, ...], k: int) -> int:
    return sum(c * k**i for i, c in enumerate(poly))


@dataclass(frozen=True)
class _Field:
    kpoly: tuple[int, ...]  # value (or twice it) as a polynomial in k
    min_n: int  # validity threshold of the stated closed form
    n_num: tuple[int, ...]  # the same value as a rational polynomial in n
    n_den: int
    doubled: bool = False


@dataclass(frozen=True)
class _Row:
    label: str
    modulus: int
    residue: int
    k_min: int
    apex_position: int
    base: tuple[tuple[int, tuple], ...]  # (lhs position, affine zero-form)
    extras: tuple[tuple, ...]  # affine zero-forms
    chains: tuple[tuple[int, int, int, tuple[int, int]], ...]
    fields: Mapping[str, _Field]


def _affine(vec4, k: int) -> tuple[int, int, int, int]:
    return tuple(c0 + c1 * k for c0, c1 in vec4)


# Affine entries are (constant, k-coefficient); zero-forms satisfy
# sum(entry * generator) == 0 identically.
_E2 = ((1, 0), (-3, 0), (3, 0), (-1, 0))  # g0 + 3 g2 = 3 g1 + g3, all classes

_SQUARES_ROWS = (
    _Row(
        label="12k", modulus=12, residue=0, k_min=2, apex_position=0,
        base=(
            (0, ((2, 7), (-2, 0), (5, -3), (-2, -4))),
            (1, ((1, 0), (-4, -6), (1, 0), (0, 6))),
            (2, ((1, 5), (0, 0), (0, -9), (0, 4))),
            (3, ((0, 0), (1, 6), (2, 0), (-1, -6))),
        ),
        extras=(
            ((1, 7), (1, 0), (2, -3), (-1, -4)),
            _E2,
            ((2, 7), (-3, -6), (3, -3), (-1, 2)),
        ),
        chains=((0, 1, -1, (0, 2)), (2, 1, -1, (0, 2))),
        fields={
            "frobenius": _Field((-2, 54, 576, 1584), 24, (-24, 54, 48, 11), 12),
            "genus": _Field((0, 54, 612, 1680), 24, (0, 162, 153, 35), 72, doubled=True),
            "catenary": _Field((2, 11), 24, (24, 11), 12),
            "betti_count": _Field((6, 4), 24, (18, 1), 3),
            "presentation_cardinality": _Field((6, 4), 24, (18, 1), 3),
        },
    ),
    _Row(
        label="12k+4", modulus=12, residue=4, k_min=1, apex_position=0,
        base=(
            (0, ((4, 7), (-1, 0), (3, -3), (-3, -4))),
            (1, ((1, 0), (-6, -6), (1, 0), (2, 6))),
            (2, ((2, 5), (2, 0), (-5, -9), (2, 4))),
            (3, ((0, 0), (3, 6), (2, 0), (-3, -6))),
        ),
        extras=(
            ((3, 7), (2, 0), (0, -3), (-2, -4)),
            _E2,
            ((4, 7), (-4, -6), (1, -3), (0, 2)),
        ),
        chains=((0, 1, -1, (1, 2)), (2, 1, -1, (1, 2))),
        fields={
            "frobenius": _Field((128, 902, 2064, 1584), 16, (-24, 54, 40, 11), 12),
            "genus": _Field((146, 1018, 2292, 1680), 16, (-32, 150, 153, 35), 72, doubled=True),
            "catenary": _Field((7, 11), 16, (40, 11), 12),
            "betti_count": _Field((8, 4), 16, (20, 1), 3),
            "presentation_cardinality": _Field((8, 4), 16, (20, 1), 3),
        },
    ),
    _Row(
        label="12k+8", modulus=12, residue=8, k_min=1, apex_position=0,
        base=(
            (0, ((6, 7), (0, 0), (1, -3), (-4, -4))),
            (1, ((1, 0), (-8, -6), (1, 0), (4, 6))),
            (2, ((4, 5), (1, 0), (-7, -9), (3, 4))),
            (3, ((0, 0), (5, 6), (2, 0), (-5, -6))),
        ),
        extras=(
            ((5, 7), (3, 0), (-2, -3), (-3, -4)),
            _E2,
            ((6, 7), (-5, -6), (-1, -3), (1, 2)),
        ),
        chains=((0, 1, -1, (1, 2)), (2, 1, -1, (1, 2))),
        fields={
            "frobenius": _Field((738, 2870, 3696, 1584), 20, (-24, 54, 44, 11), 12),
            "genus": _Field((804, 3110, 3972, 1680), 20, (-64, 162, 153, 35), 72, doubled=True),
            "catenary": _Field((10, 11), 20, (32, 11), 12),
            "betti_count": _Field((8, 4), 20, (16, 1), 3),
            "presentation_cardinality": _Field((8, 4), 20, (16, 1), 3),
        },
    ),
    _Row(
        label="12k+1", modulus=12, residue=1, k_min=2, apex_position=0,
        base=(
            (0, ((2, 6), (-1, 0), (2, -6), (-1, 0))),
            (1, ((2, 4), (-5, -9), (2, 0), (0, 5))),
            (2, ((1, 6), (2, 0), (-1, -6), (0, 0))),
            (3, ((0, 4), (4, 3), (0, 0), (-1, -7))),
        ),
        extras=(
            ((-1, 4), (7, 3), (-3, 0), (0, -7)),
            _E2,
            ((1, 4), (-2, -9), (-1, 0), (1, 5)),
        ),
        chains=((0, 1, -1, (-1, 2)), (2, 1, -1, (-1, 2))),
        fields={
            "frobenius": _Field((6, 134, 768, 1584), 25, (-9, 39, 31, 11), 12),
            "genus": _Field((12, 206, 1068, 1680), 13, (46, 189, 162, 35), 72, doubled=True),
            "catenary": _Field((4, 11), 13, (37, 11), 12),
            "betti_count": _Field((5, 4), 25, (14, 1), 3),
            "presentation_cardinality": _Field((5, 4), 13, (14, 1), 3),
        },
    ),
    _Row(
        label="12k+5", modulus=12, residue=5, k_min=1, apex_position=0,
        base=(
            (0, ((4, 6), (-1, 0), (0, -6), (-1, 0))),
            (1, ((3, 4), (-7, -9), (1, 0), (2, 5))),
            (2, ((3, 6), (2, 0), (-3, -6), (0, 0))),
            (3, ((2, 4), (3, 3), (2, 0), (-4, -7))),
        ),
        extras=(
            ((1, 4), (6, 3), (-1, 0), (-3, -7)),
            _E2,
            ((2, 4), (-4, -9), (-2, 0), (3, 5)),
        ),
        chains=((0, 1, -1, (0, 2)), (2, 1, -1, (0, 2))),
        fields={
            "frobenius": _Field((201, 1214, 2400, 1584), 17, (-33, 39, 35, 11), 12),
            "genus": _Field((258, 1474, 2748, 1680), 5, (-22, 177, 162, 35), 72, doubled=True),
            "catenary": _Field((7, 11), 5, (29, 11), 12),
            "betti_count": _Field((7, 4), 17, (16, 1), 3),
            "presentation_cardinality": _Field((7, 4), 17, (16, 1), 3),
        },
    ),
    _Row(
        label="12k+9", modulus=12, residue=9, k_min=0, apex_position=0,
        base=(
            (0, ((6, 6), (-1, 0), (-2, -6), (-1, 0))),
            (1, ((4, 4), (-9, -9), (0, 0), (4, 5))),
            (2, ((5, 6), (2, 0), (-5, -6), (0, 0))),
            (3, ((3, 4), (5, 3), (1, 0), (-6, -7))),
        ),
        extras=(
            ((2, 4), (8, 3), (-2, 0), (-5, -7)),
            _E2,
            ((3, 4), (-6, -9), (-3, 0), (5, 5)),
        ),
        chains=((0, 1, -1, (0, 2)), (2, 1, -1, (0, 2))),
        fields={
            "frobenius": _Field((979, 3438, 4032, 1584), 9, (3, 63, 39, 11), 12),
            "genus": _Field((1120, 3870, 4428, 1680), 9, (-18, 189, 162, 35), 72, doubled=True),
            "catenary": _Field((10, 11), 9, (21, 11), 12),
            "betti_count": _Field((7, 4), 9, (12, 1), 3),
            "presentation_cardinality": _Field((7, 4), 9, (12, 1), 3),
        },
    ),
    _Row(
        label="4m+2", modulus=4, residue=2, k_min=2, apex_position=0,
        base=(
            (0, ((5, 4), (-2, 0), (3, -4), (-2, 0))),
            (1, ((1, 0), (-4, -1), (2, 0), (0, 1))),
            # transcription fix: the diagonal relation reads
            # (4m+3) g2 = (4m+3) g0 + 4 g1, not 4 g0 + (4m+3) g1
            (2, ((3, 4), (4, 0), (-3, -4), (0, 0))),
            (3, ((0, 0), (1, 1), (1, 0), (-1, -1))),
        ),
        extras=(
            ((4, 4), (1, 0), (0, -4), (-1, 0)),
            _E2,
            ((5, 4), (-3, -1), (2, -4), (-1, 1)),
        ),
        chains=((2, 1, -1, (1, 0)),),
        fields={
            "frobenius": _Field((14, 105, 168, 80), 6, (-26, -3, 12, 5), 4),
            "genus": _Field((24, 120, 180, 80), 2, (-4, 0, 15, 5), 8, doubled=True),
            "catenary": _Field((4, 5), 14, (6, 5), 4),
            "betti_count": _Field((7,), 10, (7,), 1),
            "presentation_cardinality": _Field((7,), 6, (7,), 1),
        },
    ),
    _Row(
        label="4m+3", modulus=4, residue=3, k_min=2, apex_position=0,
        base=(
            (0, ((2, 1), (-2, 0), (2, -1), (-1, 0))),
            (1, ((2, 0), (-11, -4), (2, 0), (3, 4))),
            (2, ((1, 1), (1, 0), (-1, -1), (0, 0))),
            (3, ((0, 0), (5, 4), (4, 0), (-5, -4))),
        ),
        extras=(
            ((0, 1), (9, 4), (0, -1), (-4, -4)),
            _E2,
            ((1, 0), (-8, -4), (-1, 0), (4, 4)),
        ),
        chains=(),
        fields={
            "frobenius": _Field((126, 329, 280, 80), 7, (12, 44, 25, 5), 4),
            "genus": _Field((144, 360, 300, 80), 11, (36, 45, 30, 5), 8, doubled=True),
            "catenary": _Field((9, 5), 7, (21, 5), 4),
            "betti_count": _Field((7,), 11, (7,), 1),
            "presentation_cardinality": _Field((7,), 15, (7,), 1),
        },
    ),
)

_TRIANGULAR_ROWS = (
    _Row(
        label="6k", modulus=6, residue=0, k_min=2, apex_position=0,
        base=(
            (0, ((1, 3), (0, -3), (0, 0), (0, 0))),
            (1, ((-1, -3), (0, 3), (0, 0), (0, 0))),
            (2, ((1, 2), (0, 0), (0, -3), (0, 1))),
            (3, ((1, 2), (0, 0), (2, 0), (-1, -2))),
        ),
        extras=(
            ((0, 2), (3, 0), (-1, 0), (0, -2)),
            _E2,
            ((0, 3), (3, -3), (-3, 0), (1, 0)),
        ),
        chains=((0, 1, -1, (-1, 1)), (2, 1, -1, (-2, 1))),
        fields={
            "frobenius": _Field((-1, 15, 66, 72), 6, (-6, 15, 11, 2), 6),
            "genus": _Field((0, 15, 72, 75), 6, (0, 180, 144, 25), 144, doubled=True),
            "catenary": _Field((1, 4), 6, (3, 2), 3),
            "betti_count": _Field((3, 2), 12, (9, 1), 3),
            "presentation_cardinality": _Field((3, 2), 12, (9, 1), 3),
        },
    ),
    _Row(
        label="6k+2", modulus=6, residue=2, k_min=2, apex_position=0,
        base=(
            (0, ((2, 3), (-1, -3), (0, 0), (0, 0))),
            (1, ((-2, -3), (1, 3), (0, 0), (0, 0))),
            (2, ((1, 2), (2, 0), (-3, -3), (1, 1))),
            (3, ((1, 2), (2, 0), (0, 0), (-1, -2))),
        ),
        extras=(
            ((0, 2), (5, 0), (-3, 0), (0, -2)),
            _E2,
            ((1, 3), (2, -3), (-3, 0), (1, 0)),
        ),
        chains=((0, 1, -1, (-1, 1)), (2, 1, -1, (-1, 1))),
        fields={
            "frobenius": _Field((17, 84, 132, 72), 2, (6, 20, 10, 2), 6),
            "genus": _Field((18, 90, 147, 75), 2, (112, 204, 144, 25), 144, doubled=True),
            "catenary": _Field((3, 4), 8, (5, 2), 3),
            "betti_count": _Field((4, 2), 14, (10, 1), 3),
            "presentation_cardinality": _Field((4, 2), 8, (10, 1), 3),
        },
    ),
    _Row(
        label="6k+4", modulus=6, residue=4, k_min=2, apex_position=0,
        base=(
            (0, ((3, 3), (-2, -3), (0, 0), (0, 0))),
            (1, ((-3, -3), (2, 3), (0, 0), (0, 0))),
            (2, ((2, 2), (1, 0), (-3, -3), (1, 1))),
            (3, ((2, 2), (1, 0), (1, 0), (-2, -2))),
        ),
        extras=(
            ((1, 2), (4, 0), (-2, 0), (-1, -2)),
            _E2,
            ((2, 3), (1, -3), (-3, 0), (1, 0)),
        ),
        chains=((0, 1, -1, (0, 1)), (2, 1, -1, (-1, 1))),
        fields={
            # genus k-polynomial derived from the n-form; the in-text line
            # for this class repeats the previous class's value
            "frobenius": _Field((54, 181, 198, 72), 4, (0, 13, 9, 2), 6),
            "genus": _Field((62, 209, 222, 75), 4, (-64, 156, 144, 25), 144, doubled=True),
            "catenary": _Field((5, 4), 4, (7, 2), 3),
            "betti_count": _Field((5, 2), 16, (11, 1), 3),
            "presentation_cardinality": _Field((5, 2), 10, (11, 1), 3),
        },
    ),
    _Row(
        label="6k+1", modulus=6, residue=1, k_min=2, apex_position=1,
        base=(
            (0, ((3, 6), (1, -3), (-1, -3), (0, 0))),
            (1, ((0, 0), (2, 3), (-1, -3), (0, 0))),
            (2, ((0, 0), (-2, -3), (1, 3), (0, 0))),
            (3, ((1, 2), (1, 0), (1, 0), (-1, -2))),
        ),
        extras=(
            ((0, 1), (2, 0), (-1, 0), (0, -1)),
            ((-2, -6), (-2, 6), (3, 0), (-1, 0)),
            ((-1, 0), (3, 0), (-3, 0), (1, 0)),
            ((-1, -1), (1, 0), (-2, 0), (1, 1)),
        ),
        chains=((0, 2, 1, (-1, 1)), (1, 2, -1, (-1, 2))),
        fields={
            "frobenius": _Field((-1, 27, 108, 108), 1, (-6, 0, 3, 1), 2),
            "genus": _Field((0, 31, 120, 111), 1, (-169, 3, 129, 37), 144, doubled=True),
            "catenary": _Field((3, 6), 3, (2, 1), 1),
            "betti_count": _Field((5, 3), 13, (9, 1), 2),
            "presentation_cardinality": _Field((5, 3), 7, (9, 1), 2),
        },
    ),
    _Row(
        label="6k+3", modulus=6, residue=3, k_min=2, apex_position=1,
        base=(
            (0, ((5, 6), (0, -3), (-2, -3), (0, 0))),
            (1, ((0, 0), (3, 3), (-2, -3), (0, 0))),
            (2, ((0, 0), (-3, -3), (2, 3), (0, 0))),
            (3, ((1, 1), (0, 0), (1, 0), (-1, -1))),
        ),
        extras=(
            ((0, 1), (3, 0), (-2, 0), (0, -1)),
            ((-4, -6), (0, 6), (3, 0), (-1, 0)),
            ((-1, 0), (3, 0), (-3, 0), (1, 0)),
        ),
        chains=((0, 2, 1, (-1, 1)), (1, 2, -1, (-1, 1))),
        fields={
            "frobenius": _Field((29, 156, 234, 108), 3, (-8, 1, 4, 1), 2),
            "genus": _Field((30, 159, 240, 111), 3, (-243, 27, 147, 37), 144, doubled=True),
            "catenary": _Field((5, 6), 3, (2, 1), 1),
            "betti_count": _Field((4, 2), 15, (9, 1), 3),
            "presentation_cardinality": _Field((4, 2), 9, (9, 1), 3),
        },
    ),
    _Row(
        label="6k+5", modulus=6, residue=5, k_min=2, apex_position=1,
        base=(
            (0, ((7, 6), (-1, -3), (-3, -3), (0, 0))),
            (1, ((0, 0), (4, 3), (-3, -3), (0, 0))),
            (2, ((0, 0), (-4, -3), (3, 3), (0, 0))),
            (3, ((1, 1), (1, 0), (0, 0), (-1, -1))),
        ),
        extras=(
            ((0, 1), (4, 0), (-3, 0), (0, -1)),
            ((-6, -6), (2, 6), (3, 0), (-1, 0)),
            ((-1, 0), (3, 0), (-3, 0), (1, 0)),
        ),
        chains=((0, 2, 1, (-1, 1)), (1, 2, -1, (-1, 1))),
        fields={
            "frobenius": _Field((125, 360, 342, 108), 5, (0, 5, 4, 1), 2),
            "genus": _Field((126, 366, 351, 111), 5, (37, 147, 147, 37), 144, doubled=True),
            "catenary": _Field((7, 6), 5, (2, 1), 1),
            "betti_count": _Field((4, 2), 17, (7, 1), 3),
            "presentation_cardinality": _Field((4, 2), 11, (7, 1), 3),
        },
    ),
)

_ROWS = {"squares": _SQUARES_ROWS, "triangular": _TRIANGULAR_ROWS}

# small cases outside every formula row's validity
_TABLES = {
    "squares": {
        "frobenius": {2: 23, 3: 119, 4: 119, 5: 240, 8: 659, 12: 2045, 13: 2553},
        "genus": {3: 60, 4: 66, 7: 427, 8: 389, 12: 1161},
        "catenary": {2: 9, 3: 16, 4: 9, 6: 11, 8: 11, 10: 15, 12: 15},
        "presentation_cardinality": {2: 1, 3: 1, 4: 6, 5: 6, 7: 7, 8: 10, 11: 6, 12: 11},
        "betti_count": {},
    },
    "triangular": {
        "frobenius": {},
        "genus": {},
        "catenary": {2: 10},
        "presentation_cardinality": {2: 1, 4: 4, 5: 2, 6: 4},
        "betti_count": {},
    },
}

_FIELDS = ("frobenius", "genus", "catenary", "betti_count", "presentation_cardinality")


def _row_for(family: str, n: int) -> _Row:
    rows = _ROWS[family]
    by_mod_res = {(r.modulus, r.residue): r for r in rows}
    row = by_mod_res.get((rows[0].modulus, n % rows[0].modulus))
    if row is None:
        row = by_mod_res[(4, n % 4)]  # squares: remaining residues fall mod 4
    return row


@dataclass(frozen=True)
class InvariantBundle:
    """Per-field stated values at one n; absent fields are None."""

    family: str
    n: int
    frobenius: int | None
    genus: int | None
    catenary: int | None
    betti_count: int | None
    presentation_cardinality: int | None
    sources: Mapping[str, str]  # field -> "formula" | "table"

    def require(self, field: str) -> int:
        value = getattr(self, field)
        if value is None:
            raise OutOfTabulatedRange(f"{self.family} {field} not stated at n={self.n}")
        return value


def _field_value(row: _Row, field: str, n: int) -> int | None:
    spec = row.fields[field]
    if n < spec.min_n:
        return None
    k = (n - row.residue) // row.modulus
    val = _ev(spec.kpoly, k)
    n_val = _ev(spec.n_num, n)
    scale = 2 if spec.doubled else 1
    if val * spec.n_den != scale * n_val:
        raise IdentityViolated(
            f"{row.label} {field}: k-form {val}/{scale} != n-form {n_val}/{spec.n_den}"
        )
    if spec.doubled:
        if val % 2:
            raise IdentityViolated(f"{row.label} {field}: odd doubled value {val}")
        val //= 2
    return val


def _invariants(family: str, n: int) -> InvariantBundle:
    if n < 2:
        raise ValueError(f"n must be >= 2, got {n}")
    row = _row_for(family, n)
    values: dict[str, int | None] = {}
    sources: dict[str, str] = {}
    for field in _FIELDS:
        table = _TABLES[family][field]
        if n in table:
            values[field] = table[n]
            sources[field] = "table"
            continue
        values[field] = _field_value(row, field, n)
        if values[field] is not None:
            sources[field] = "formula"
    return InvariantBundle(family=family, n=n, sources=sources, **values)


def squares_invariants(n: int) -> InvariantBundle:
    """Stated invariants of <n^2,(n+1)^2,(n+2)^2,(n+3)^2>."""
    return _invariants("squares", n)


def triangular_invariants(n: int) -> InvariantBundle:
    """Stated invariants of the four-consecutive-triangular-numbers semigroup."""
    return _invariants("triangular", n)


@dataclass(frozen=True)
class CarvingSchema:
    """Fully numeric relation tables for one family member."""

    family: str
    label: str
    n: int
    k: int
    generators: tuple[int, int, int, int]
    apex_position: int
    base_relations: tuple[tuple[int, tuple[int, int, int, int]], ...]
    extra_relations: tuple[tuple[int, int, int, int], ...]
    chain_relations: tuple[tuple[int, int, int, int], ...]

    @property
    def apex_modulus(self) -> int:
        return self.generators[self.apex_position]


def family_schema(family: str, n: int) -> CarvingSchema:
    """Instantiate a residue row at n; every equation is checked exactly."""
    if family not in _ROWS:
        raise ValueError(f"unknown family {family!r}")
    row = _row_for(family, n)
    k = (n - row.residue) // row.modulus
    if k < row.k_min:
        raise OutOfValidity(f"{family} row {row.label} needs k >= {row.k_min}, got k={k}")
    gens = _GENERATORS[family](n)

    def checked(vec: tuple[int, int, int, int]) -> tuple[int, int, int, int]:
        if sum(c * g for c, g in zip(vec, gens)) != 0:
            raise IdentityViolated(f"{row.label} at n={n}: {vec} is not an identity")
        return vec

    base = []
    for lhs_pos, affvec in row.base:
        vec = _affine(affvec, k)
        if vec[lhs_pos] < 0:
            vec = tuple(-c for c in vec)
        if vec[lhs_pos] <= 0 or any(c > 0 for i, c in enumerate(vec) if i != lhs_pos):
            raise IdentityViolated(f"{row.label} at n={n}: bad diagonal relation {vec}")
        base.append((lhs_pos, checked(vec)))

    extras = [checked(_affine(v, k)) for v in row.extras]

    chain: list[tuple[int, int, int, int]] = []
    for start_idx, step_idx, sign, count_aff in row.chains:
        count = count_aff[0] + count_aff[1] * k
        start = extras[start_idx]
        step = extras[step_idx]
        for j in range(1, count + 1):
            chain.append(checked(tuple(s + sign * j * t for s, t in zip(start, step))))

    return CarvingSchema(
        family=family,
        label=row.label,
        n=n,
        k=k,
        generators=gens,
        apex_position=row.apex_position,
        base_relations=tuple(base),
        extra_relations=tuple(extras),
        chain_relations=tuple(chain),
    )


def _schema_point(
    vec: tuple[int, int, int, int], order: tuple[int, int, int, int], source_hint: str
) -> CarvePoint:
    w = [vec[p] for p in order]
    if w[0] < 0:
        w = [-c for c in w]
    coords = (-w[1], -w[2], -w[3])
    if source_hint == "identity":
        if w[0] <= 0:
            raise IdentityViolated(f"identity {vec} has no positive apex part")
        positives = [t for t in (1, 2, 3) if w[t] > 0]
        if len(positives) != 1:
            raise IdentityViolated(f"identity {vec} is not two-against-two")
        source = f"IDENTITY({positives[0]})"
    else:
        source = source_hint
    return CarvePoint(coords=coords, source=source, witness=tuple(w))


def schema_arrangement(schema: CarvingSchema) -> Arrangement:
    apex = schema.apex_position
    order = (apex,) + tuple(p for p in range(4) if p != apex)
    return Arrangement(apex=apex, order=order, mode=ArrangementMode.PROP_TRICK)


def carve_schema(schema: CarvingSchema) -> LShape:
    """Carve the schema's figure; cube count is NOT asserted here.

    Callers certify the result through its cube count (see
    confirm_minimal_relations); building the shape never consults the
    relations machinery, so the certificate stays independent.
    """
    arrangement = schema_arrangement(schema)
    order = arrangement.order
    d = tuple(schema.generators[p] for p in order)
    slot = {p: t for t, p in enumerate(order)}
    points = []
    bounds = [0, 0, 0]
    for lhs_pos, vec in schema.base_relations:
        # stored lhs-positive; the carve point wants the rhs-positive form
        # (the apex part alone cannot orient it when its coefficient is 0)
        pvec = tuple(-c for c in vec)
        if lhs_pos == schema.apex_position:
            points.append(_schema_point(pvec, order, "P0"))
        else:
            t = slot[lhs_pos]
            apex_coeff = pvec[schema.apex_position]
            hint = f"P_POS({t})" if apex_coeff != 0 else f"AXIS_CUT({t})"
            p = _schema_point(pvec, order, hint)
            bounds[t - 1] = p.coords[t - 1]
            points.append(p)
    for vec in schema.extra_relations + schema.chain_relations:
        points.append(_schema_point(vec, order, "identity"))
    fig = Figure(generators=d, bounds=tuple(bounds), points=tuple(points))
    return LShape(figure=fig, apex_modulus=d[0])


def schema_claimed_relations(schema: CarvingSchema) -> tuple[Relation, Relation, Relation]:
    """The three non-apex diagonal relations as claimed Relation records."""
    apex = schema.apex_position
    out = []
    for lhs_pos, vec in schema.base_relations:
        if lhs_pos == apex:
            continue
        others = tuple(p for p in range(4) if p != lhs_pos)
        triple = tuple(-vec[p] for p in others)
        out.append(
            Relation(
                lhs_index=lhs_pos,
                lhs_coeff=vec[lhs_pos],
                other_indices=others,
                triples=(triple,),
                positive_index=apex if vec[apex] < 0 else None,
            )
        )
    return tuple(out)


def lower_bound_check(S: NumericalSemigroup) -> bool:
    """Root-free check of F >= ((m-1)! a_1...a_m)^(1/(m-1)) - sum(a_i)."""
    gens = S.minimal_generators
    m = len(gens)
    f = -1 if S.multiplicity == 1 else frobenius(S)
    lhs = f + sum(gens)
    if m == 1:
        return lhs >= 1
    return lhs ** (m - 1) >= factorial(m - 1) * prod(gens)


@dataclass(frozen=True)
class ReportRow:
    family: str
    n: int
    check: str
    expected: str
    actual: str
    status: str  # "pass" | "fail" | "skip(...)"
    millis: int


@dataclass(frozen=True)
class Report:
    rows: tuple[ReportRow, ...]

    @property
    def ok(self) -> bool:
        return not any(r.status == "fail" for r in self.rows)

    def to_csv(self, timing: bool = False) -> str:
        lines = ["family,n,check,expected,actual,status,millis"]
        for r in self.rows:
            ms = str(r.millis) if timing else ""
            lines.append(f"{r.family},{r.n},{r.check},{r.expected},{r.actual},{r.status},{ms}")
        return "\n".join(lines) + "\n"

    def to_json(self, timing: bool = False) -> str:
        import json

        docs = []
        for r in self.rows:
            doc = {
                "family": r.family,
                "n": r.n,
                "check": r.check,
                "expected": r.expected,
                "actual": r.actual,
                "status": r.status,
            }
            if timing:
                doc["millis"] = r.millis
            docs.append(doc)
        return json.dumps(docs, separators=(",", ":")) + "\n"


def _timed(fn):
    t0 = time.perf_counter()
    result = fn()
    return result, int((time.perf_counter() - t0) * 1000)


def _verify_one(family: str, n: int) -> list[ReportRow]:
    from .lshape import confirm_minimal_relations  # local: keeps workers light

    rows: list[ReportRow] = []

    def add(check: str, expected, actual, status: str, ms: int) -> None:
        rows.append(
            ReportRow(
                family=family,
                n=n,
                check=check,
                expected="" if expected is None else str(expected),
                actual="" if actual is None else str(actual),
                status=status,
                millis=ms,
            )
        )

    S = mk_semigroup(_GENERATORS[family](n))
    bundle = _invariants(family, n)

    for field, check in (("frobenius", "frobenius_formula"), ("genus", "genus_formula")):
        expected = getattr(bundle, field)
        fn = frobenius if field == "frobenius" else genus
        actual, ms = _timed(lambda: fn(S))
        if expected is None:
            add(check, None, actual, "skip(formula)", ms)
        else:
            add(check, expected, actual, "pass" if actual == expected else "fail", ms)

    try:
        schema = family_schema(family, n)
    except OutOfValidity:
        schema = None
    if schema is None or S.embedding_dimension != 4:
        add("lshape_carve", None, None, "skip(schema)", 0)
    else:

        def run_carve():
            shape = carve_schema(schema)
            d0 = schema.apex_modulus
            count = shape.figure.cube_count
            certified = confirm_minimal_relations(
                S, schema_arrangement(schema), shape, schema_claimed_relations(schema)
            )
            labels_ok = shape.label_set() == frozenset(apery_set(S, d0).elements)
            return count, certified and labels_ok and count == d0

        (count, ok), ms = _timed(run_carve)
        add("lshape_carve", schema.apex_modulus, count, "pass" if ok else "fail", ms)

    need_betti = any(
        getattr(bundle, f) is not None
        for f in ("catenary", "betti_count", "presentation_cardinality")
    )
    if need_betti:
        report, ms = _timed(lambda: betti_elements(S))
        computed = {
            "catenary": max(report.catenary_by_element.values(), default=0),
            "betti_count": len(report.betti),
            "presentation_cardinality": sum(
                len(report.partitions[b].classes) - 1 for b in report.betti
            ),
        }
        for field in ("catenary", "betti_count", "presentation_cardinality"):
            expected = getattr(bundle, field)
            if expected is None:
                add(field, None, computed[field], "skip(formula)", 0)
            else:
                status = "pass" if computed[field] == expected else "fail"
                add(field, expected, computed[field], status, ms if field == "catenary" else 0)
    else:
        for field in ("catenary", "betti_count", "presentation_cardinality"):
            add(field, None, None, "skip(formula)", 0)

    ok, ms = _timed(lambda: lower_bound_check(S))
    add("lower_bound", True, ok, "pass" if ok else "fail", ms)
    return rows


def verify_family(family: str, n_values, jobs: int = 1) -> Report:
    """Run the per-n verification pipeline over a range of n."""
    ns = sorted(set(int(n) for n in n_values))
    if any(n < 2 for n in ns):
        raise ValueError("family members start at n = 2")
    if jobs > 1 and len(ns) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(_verify_one, [family] * len(ns), ns))
    else:
        chunks = [_verify_one(family, n) for n in ns]
    rows: list[ReportRow] = []
    for chunk in chunks:
        rows.extend(chunk)
    return Report(rows=tuple(rows))
