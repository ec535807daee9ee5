"""Minimal relations of embedding-dimension-4 semigroups.

For S = <d0,d1,d2,d3> the minimal relation of d_i expresses the least
positive multiple of d_i that lies in the monoid generated by the other
three; the anchored variant additionally demands a positive coefficient on
one distinguished generator.  Both kinds carry *all* admissible coefficient
triples, since off-diagonal coefficients need not be unique.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from enum import Enum
from functools import lru_cache
from math import gcd

from .core import NumericalSemigroup, mk_semigroup, submonoid_contains


class NotEmbeddingDim4(ValueError):
    """Operation requires embedding dimension exactly 4."""


class NotEmbeddingDim3(ValueError):
    """Operation requires embedding dimension exactly 3."""


class NotPairwiseCoprime(ValueError):
    """Generators must be pairwise coprime."""


class ArrangementNotFound(RuntimeError):
    """No admissible arrangement exists; this indicates a bug, not bad input."""


@dataclass(frozen=True)
class Relation:
    """lhs_coeff * d[lhs_index] = sum of a triple over the other generators.

    ``triples`` lists every admissible coefficient triple for ``lhs_coeff``,
    ordered lexicographically; positions follow ``other_indices`` (the three
    remaining generator indices, ascending).  ``positive_index`` marks the
    generator whose coefficient is constrained to be >= 1, if any.
    """

    lhs_index: int
    lhs_coeff: int
    other_indices: tuple[int, int, int]
    triples: tuple[tuple[int, int, int], ...]
    positive_index: int | None = None

    def value(self, gens: tuple[int, ...]) -> int:
        return self.lhs_coeff * gens[self.lhs_index]

    def has_positive_coeff_on(self, index: int) -> bool:
        pos = self.other_indices.index(index)
        return any(t[pos] > 0 for t in self.triples)


class ArrangementMode(Enum):
    PROP_TRICK = "prop_trick"
    PROP_NOT_TRICK = "prop_not_trick"


@dataclass(frozen=True)
class Arrangement:
    """A relabeling (d0,d1,d2,d3) = generators[order] with a construction mode.

    ``apex`` (= order[0]) is the generator index whose Apery set the carve
    targets.
    """

    apex: int
    order: tuple[int, int, int, int]
    mode: ArrangementMode


def _require_dim4(S: NumericalSemigroup) -> None:
    if S.embedding_dimension != 4:
        raise NotEmbeddingDim4(
            f"embedding dimension is {S.embedding_dimension}, need 4: {S}"
        )


def _all_triples(total: int, gens: tuple[int, int, int]) -> list[tuple[int, int, int]]:
    """Every (c0,c1,c2) >= 0 with c . gens == total; double loop, third exact."""
    g0, g1, g2 = gens
    out = []
    for c0 in range(total // g0 + 1):
        r0 = total - c0 * g0
        for c1 in range(r0 // g1 + 1):
            r1 = r0 - c1 * g1
            if r1 % g2 == 0:
                out.append((c0, c1, r1 // g2))
    return out


@lru_cache(maxsize=4096)
def minimal_relation(S4: NumericalSemigroup, i: int) -> Relation:
    """Minimal relation of generator i over the other three."""
    _require_dim4(S4)
    d = S4.minimal_generators
    others = tuple(j for j in range(4) if j != i)
    ogens = tuple(d[j] for j in others)
    m = 1
    while not submonoid_contains(m * d[i], ogens):
        m += 1
    triples = _all_triples(m * d[i], ogens)
    return Relation(
        lhs_index=i,
        lhs_coeff=m,
        other_indices=others,
        triples=tuple(sorted(triples)),
    )


@lru_cache(maxsize=4096)
def d0_positive_relation(S4: NumericalSemigroup, i: int, anchor: int) -> Relation:
    """Minimal relation of generator i with a positive coefficient on anchor."""
    _require_dim4(S4)
    if i == anchor:
        raise ValueError("anchor must differ from the related generator")
    d = S4.minimal_generators
    others = tuple(j for j in range(4) if j != i)
    rest = tuple(j for j in others if j != anchor)
    rgens = (d[rest[0]], d[rest[1]])
    da = d[anchor]

    def admits(m: int) -> bool:
        total = m * d[i]
        for lam in range(1, total // da + 1):
            if submonoid_contains(total - lam * da, rgens):
                return True
        return False

    m = 1
    while not admits(m):
        m += 1
    anchor_pos = others.index(anchor)
    triples = [
        t for t in _all_triples(m * d[i], tuple(d[j] for j in others))
        if t[anchor_pos] > 0
    ]
    return Relation(
        lhs_index=i,
        lhs_coeff=m,
        other_indices=others,
        triples=tuple(sorted(triples)),
        positive_index=anchor,
    )


def _proptrick_matches(S4: NumericalSemigroup, apex: int) -> int:
    """How many m != apex have a_mm equal to the apex-positive b_mm.

    a_mm == b_mm exactly when some admissible triple of the plain minimal
    relation puts a positive coefficient on the apex.
    """
    count = 0
    for m in range(4):
        if m == apex:
            continue
        if minimal_relation(S4, m).has_positive_coeff_on(apex):
            count += 1
    return count


def select_arrangement(S4: NumericalSemigroup) -> Arrangement:
    """First arrangement supporting one of the two carving constructions.

    Apex candidates are tried in index order; if none admits the two-equal-
    coefficients construction, the paired-products arrangement is searched in
    lexicographic permutation order.  Failure of both is impossible for an
    embedding-dimension-4 semigroup and is surfaced as a bug.
    """
    _require_dim4(S4)
    for apex in range(4):
        if _proptrick_matches(S4, apex) >= 2:
            order = (apex,) + tuple(j for j in range(4) if j != apex)
            return Arrangement(apex=apex, order=order, mode=ArrangementMode.PROP_TRICK)

    d = S4.minimal_generators
    lhs = {i: minimal_relation(S4, i).lhs_coeff for i in range(4)}
    for perm in itertools.permutations(range(4)):
        i, j, k, l = perm
        if lhs[i] * d[i] != lhs[j] * d[j] or lhs[k] * d[k] != lhs[l] * d[l]:
            continue
        # the construction needs b_11 = a_11 for the arranged d1 = d[j]
        if d0_positive_relation(S4, j, anchor=i).lhs_coeff == lhs[j]:
            return Arrangement(apex=i, order=perm, mode=ArrangementMode.PROP_NOT_TRICK)
    raise ArrangementNotFound(f"no admissible arrangement for {S4}")


def frobenius_3gen(d1: int, d2: int, d3: int) -> int:
    """Frobenius number of a pairwise-coprime 3-generator semigroup.

    Uses the planar staircase formula: with a_ii the minimal relation
    coefficients and (a_12, a_13) the corner cut of the Apery diagram of d1,

        F = max((a22-1) d2 + (a13-1) d3, (a12-1) d2 + (a33-1) d3) - d1.
    """
    for a, b in ((d1, d2), (d1, d3), (d2, d3)):
        if gcd(a, b) != 1:
            raise NotPairwiseCoprime(f"gcd({a},{b}) != 1")
    S = mk_semigroup((d1, d2, d3))
    if S.minimal_generators != tuple(sorted((d1, d2, d3))):
        raise NotEmbeddingDim3(f"{(d1, d2, d3)} is not a minimal generating system")

    def min_coeff(x: int, p: int, q: int) -> int:
        m = 1
        while not submonoid_contains(m * x, (p, q)):
            m += 1
        return m

    a11 = min_coeff(d1, d2, d3)
    a22 = min_coeff(d2, d1, d3)
    a33 = min_coeff(d3, d1, d2)
    # corner cut: the unique representation a11*d1 = a12*d2 + a13*d3 whose
    # carved staircase has area d1
    for a12, a13 in _all_pairs(a11 * d1, d2, d3):
        if a22 * a33 - (a22 - a12) * (a33 - a13) == d1:
            break
    else:
        raise ArithmeticError(f"no staircase corner for <{d1},{d2},{d3}>")
    return max((a22 - 1) * d2 + (a13 - 1) * d3, (a12 - 1) * d2 + (a33 - 1) * d3) - d1


def _all_pairs(total: int, g1: int, g2: int) -> list[tuple[int, int]]:
    out = []
    for c1 in range(total // g1 + 1):
        r = total - c1 * g1
        if r % g2 == 0:
            out.append((c1, r // g2))
    return out
