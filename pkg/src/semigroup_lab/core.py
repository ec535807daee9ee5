"""Exact brute-force layer for numerical semigroups.

Everything here works with plain Python integers (arbitrary precision) and is
the ground truth the geometric machinery is checked against: membership,
Apery sets, Frobenius number, genus, and complete factorization enumeration.
All objects are immutable; all functions are pure.
"""

from __future__ import annotations

import heapq
from dataclasses import dataclass
from functools import lru_cache, reduce
from math import gcd


class EmptyGenerators(ValueError):
    """No generators were supplied."""


class GcdNotOne(ValueError):
    """Generators do not generate a numerical semigroup (gcd > 1)."""

    def __init__(self, gcd_value: int):
        super().__init__(f"gcd of generators is {gcd_value}, expected 1")
        self.gcd = gcd_value


class ModulusNotInSemigroup(ValueError):
    """Apery modulus must be a positive element of the semigroup."""


class NoGaps(ValueError):
    """The semigroup is all of N; Frobenius number and genus are undefined."""


@dataclass(frozen=True)
class NumericalSemigroup:
    """A numerical semigroup given by generators with gcd 1.

    ``generators`` keeps the caller's order; ``minimal_generators`` is the
    unique minimal generating system, ascending and duplicate-free.
    """

    generators: tuple[int, ...]
    minimal_generators: tuple[int, ...]
    multiplicity: int

    @property
    def embedding_dimension(self) -> int:
        return len(self.minimal_generators)

    def __contains__(self, x: int) -> bool:
        return contains(self, x)

    def __repr__(self) -> str:
        gens = ",".join(str(g) for g in self.minimal_generators)
        return f"<{gens}>"


@dataclass(frozen=True)
class AperySet:
    """Smallest semigroup element in each residue class mod ``modulus``."""

    modulus: int
    elements: tuple[int, ...]  # indexed by residue r in [0, modulus)

    def __iter__(self):
        return iter(self.elements)

    def max(self) -> int:
        return max(self.elements)

    def sum(self) -> int:
        return sum(self.elements)


@dataclass(frozen=True)
class FactorizationSet:
    """All factorizations of one element over the minimal generators.

    Each factorization is a coefficient tuple, one entry per minimal
    generator (ascending); the set is complete, duplicate-free and sorted
    lexicographically.
    """

    element: int
    generators: tuple[int, ...]
    factorizations: tuple[tuple[int, ...], ...]

    def __len__(self) -> int:
        return len(self.factorizations)

    def __iter__(self):
        return iter(self.factorizations)


def _representable(x: int, gens: tuple[int, ...]) -> bool:
    """Is x a nonnegative combination of gens (no gcd assumption)?"""
    if x == 0:
        return True
    if not gens:
        return False
    reach = bytearray(x + 1)
    reach[0] = 1
    for g in gens:
        if g > x:
            continue
        for v in range(g, x + 1):
            if reach[v - g]:
                reach[v] = 1
    return bool(reach[x])


def mk_semigroup(gens) -> NumericalSemigroup:
    """Validate generators and compute the minimal generating system."""
    gens = tuple(int(g) for g in gens)
    if not gens:
        raise EmptyGenerators("at least one generator is required")
    if any(g <= 0 for g in gens):
        raise ValueError(f"generators must be positive, got {gens}")
    g = reduce(gcd, gens)
    if g != 1:
        raise GcdNotOne(g)
    kept: list[int] = []
    for cand in sorted(set(gens)):
        # A generator is redundant iff it is a combination of smaller kept
        # ones; larger generators can never contribute to a smaller value.
        if not _representable(cand, tuple(kept)):
            kept.append(cand)
    return NumericalSemigroup(
        generators=gens,
        minimal_generators=tuple(kept),
        multiplicity=kept[0],
    )


@lru_cache(maxsize=None)
def _apery_of_monoid(gens: tuple[int, ...], a: int) -> tuple[int, ...]:
    """Shortest-path relaxation over the residue graph mod ``a``.

    ``dist[r]`` ends up as the least element of <gens> congruent to r; works
    for any generating set whose gcd with a is 1 on the reachable classes
    (unreached classes keep None and are reported as missing).
    """
    INF = None
    dist: list[int | None] = [INF] * a
    dist[0] = 0
    heap = [(0, 0)]
    while heap:
        d, r = heapq.heappop(heap)
        if dist[r] is not None and d > dist[r]:
            continue
        for g in gens:
            nr = (r + g) % a
            nd = d + g
            if dist[nr] is None or nd < dist[nr]:
                dist[nr] = nd
                heapq.heappush(heap, (nd, nr))
    if any(d is None for d in dist):
        missing = [r for r, d in enumerate(dist) if d is None]
        raise ValueError(f"residue classes {missing[:5]}... unreachable mod {a}")
    return tuple(dist)  # type: ignore[arg-type]


def submonoid_contains(x: int, gens: tuple[int, ...]) -> bool:
    """Membership in the (not necessarily numerical) monoid <gens>."""
    if x < 0:
        return False
    if x == 0:
        return True
    if not gens:
        return False
    g = reduce(gcd, gens)
    if x % g:
        return False
    x //= g
    scaled = tuple(sorted(v // g for v in gens))
    table = _apery_of_monoid(scaled, scaled[0])
    return x >= table[x % scaled[0]]


def contains(S: NumericalSemigroup, x: int) -> bool:
    """Decide x in S via the Apery set of the multiplicity."""
    if x < 0:
        return False
    m = S.multiplicity
    table = _apery_of_monoid(S.minimal_generators, m)
    return x >= table[x % m]


def apery_set(S: NumericalSemigroup, a: int) -> AperySet:
    """Apery set of S with respect to a (a must be a positive element of S)."""
    if a <= 0 or not contains(S, a):
        raise ModulusNotInSemigroup(f"{a} is not a positive element of {S}")
    return AperySet(modulus=a, elements=_apery_of_monoid(S.minimal_generators, a))


def frobenius(S: NumericalSemigroup) -> int:
    """Largest integer not in S."""
    if S.multiplicity == 1:
        raise NoGaps("semigroup is all of N")
    ap = apery_set(S, S.multiplicity)
    return ap.max() - S.multiplicity


def genus(S: NumericalSemigroup) -> int:
    """Number of gaps of S, from the Apery set of the multiplicity."""
    if S.multiplicity == 1:
        raise NoGaps("semigroup is all of N")
    m = S.multiplicity
    ap = apery_set(S, m)
    num = 2 * ap.sum() - m * (m - 1)
    if num % (2 * m):
        raise ArithmeticError("Apery sum is inconsistent with a residue transversal")
    return num // (2 * m)


def factorizations(S: NumericalSemigroup, s: int) -> FactorizationSet:
    """All coefficient tuples z >= 0 with z . minimal_generators = s.

    Bounded recursive descent over the generators in descending order; the
    result is empty iff s is not in S.
    """
    gens = S.minimal_generators
    k = len(gens)
    out: list[tuple[int, ...]] = []
    if s >= 0:
        coeffs = [0] * k

        def descend(pos: int, rem: int) -> None:
            if pos == 0:
                if rem % gens[0] == 0:
                    coeffs[0] = rem // gens[0]
                    out.append(tuple(coeffs))
                return
            g = gens[pos]
            for c in range(rem // g + 1):
                coeffs[pos] = c
                descend(pos - 1, rem - c * g)
            coeffs[pos] = 0

        descend(k - 1, s)
    out.sort()
    return FactorizationSet(element=s, generators=gens, factorizations=tuple(out))
