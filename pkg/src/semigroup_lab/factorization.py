"""Factorization invariants: distances, R-classes, Betti elements, catenary
degree, minimal presentations.

Betti candidates come from two finite supersets: the Apery-shift construction
(any embedding dimension) and, for embedding dimension four with a suitable
arrangement, the axis-value set of an irredundant carve.  Candidates are
always confirmed by counting R-classes; nothing is asserted from the
candidate set alone.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Mapping

from .core import FactorizationSet, NumericalSemigroup, apery_set, contains, factorizations
from .lshape import CarvePoint, Figure, lshape_via_proptrick, minimal_carve_points
from .relations import (
    Arrangement,
    ArrangementMode,
    ArrangementNotFound,
    NotEmbeddingDim4,
    d0_positive_relation,
    minimal_relation,
    select_arrangement,
)


class LengthMismatch(ValueError):
    """Factorizations must have the same number of coordinates."""


class NotInSemigroup(ValueError):
    """Element is not in the semigroup."""


class AssumptionViolated(RuntimeError):
    """The geometric Betti candidate construction does not apply here."""


class HypothesisNotMet(RuntimeError):
    """A fast-path lemma's hypotheses fail; fall back to brute force."""


class _NotBetti:
    def __repr__(self) -> str:
        return "NOT_BETTI"


NOT_BETTI = _NotBetti()


@dataclass(frozen=True)
class RClassPartition:
    """Partition of a factorization set under chained support overlap."""

    element: int
    classes: tuple[tuple[tuple[int, ...], ...], ...]


@dataclass(frozen=True)
class PresentationPair:
    left: tuple[int, ...]
    right: tuple[int, ...]


@dataclass(frozen=True)
class BettiReport:
    betti: tuple[int, ...]
    partitions: Mapping[int, RClassPartition]
    catenary_by_element: Mapping[int, int]
    candidates_used: str  # "U_GEOMETRIC" | "REMARK_APERY"


def distance(z: tuple[int, ...], zp: tuple[int, ...]) -> int:
    """max(|z - gcd|, |z' - gcd|) where gcd is the coordinatewise minimum."""
    if len(z) != len(zp):
        raise LengthMismatch(f"lengths {len(z)} and {len(zp)} differ")
    common = sum(min(a, b) for a, b in zip(z, zp))
    return max(sum(z) - common, sum(zp) - common)


def r_classes(fs: FactorizationSet) -> RClassPartition:
    """Union factorizations whose supports meet, transitively."""
    facts = fs.factorizations
    n = len(facts)
    parent = list(range(n))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    width = len(fs.generators)
    for g in range(width):
        first = None
        for idx, z in enumerate(facts):
            if z[g] > 0:
                if first is None:
                    first = idx
                else:
                    ra, rb = find(first), find(idx)
                    if ra != rb:
                        parent[max(ra, rb)] = min(ra, rb)
    groups: dict[int, list[tuple[int, ...]]] = {}
    for idx, z in enumerate(facts):
        groups.setdefault(find(idx), []).append(z)
    classes = sorted(tuple(sorted(g)) for g in groups.values())
    return RClassPartition(element=fs.element, classes=tuple(classes))


def catenary_of_element(S: NumericalSemigroup, s: int) -> int:
    """Bottleneck of the minimax path metric over the factorization graph.

    Equal to the least N admitting an N-chain between any two factorizations;
    computed as the largest edge of a minimum spanning tree under distance.
    """
    if not contains(S, s):
        raise NotInSemigroup(f"{s} is not in {S}")
    facts = factorizations(S, s).factorizations
    n = len(facts)
    if n <= 1:
        return 0
    in_tree = [False] * n
    best = [None] * n
    best[0] = 0
    bottleneck = 0
    for _ in range(n):
        u = min(
            (i for i in range(n) if not in_tree[i] and best[i] is not None),
            key=lambda i: best[i],
        )
        in_tree[u] = True
        if best[u] > bottleneck:
            bottleneck = best[u]
        zu = facts[u]
        for v in range(n):
            if not in_tree[v]:
                dv = distance(zu, facts[v])
                if best[v] is None or dv < best[v]:
                    best[v] = dv
    return bottleneck


def betti_candidates_remark(S: NumericalSemigroup) -> set[int]:
    """Finite Betti superset: intersection over i of Ap(S, d_i) + d_j, j != i."""
    gens = S.minimal_generators
    if len(gens) == 1:
        return set()
    result: set[int] | None = None
    for i, di in enumerate(gens):
        ap = apery_set(S, di).elements
        shifted = {w + dj for w in ap for j, dj in enumerate(gens) if j != i}
        result = shifted if result is None else result & shifted
    return result


def _catenary_assumption_holds(S4: NumericalSemigroup, arrangement: Arrangement) -> bool:
    """At most one arranged axis may lack a positive-apex coefficient choice."""
    apex = arrangement.order[0]
    lacking = 0
    for pos in (1, 2, 3):
        if not minimal_relation(S4, arrangement.order[pos]).has_positive_coeff_on(apex):
            lacking += 1
    return lacking <= 1


def betti_candidates_U(
    S4: NumericalSemigroup, arrangement: Arrangement, figure: Figure
) -> set[int]:
    """Axis-value set of an irredundant carve point set producing the figure.

    Every Betti element lies among the values sum of coord*d over the
    nonnegative coordinates of the surviving points.
    """
    if arrangement.mode is not ArrangementMode.PROP_TRICK:
        raise AssumptionViolated("construction needs the two-equal-coefficients mode")
    if not _catenary_assumption_holds(S4, arrangement):
        raise AssumptionViolated("more than one axis lacks a positive apex part")
    pruned = minimal_carve_points(figure)
    return {p.theta_value(figure.generators) for p in pruned}


def betti_elements(S: NumericalSemigroup, strategy: str = "auto") -> BettiReport:
    """Betti elements with their R-class partitions and catenary degrees.

    Candidates are filtered by counting R-classes; strategy "auto" prefers
    the geometric candidate set whenever it applies.
    """
    strategy = strategy.lower()
    if strategy not in ("auto", "remark", "u"):
        raise ValueError(f"unknown strategy {strategy!r}")
    candidates: set[int] | None = None
    used = "REMARK_APERY"
    if strategy in ("auto", "u") and S.embedding_dimension == 4:
        try:
            arrangement = select_arrangement(S)
            shape = lshape_via_proptrick(S, arrangement)
            candidates = betti_candidates_U(S, arrangement, shape.figure)
            used = "U_GEOMETRIC"
        except (AssumptionViolated, ValueError, ArrangementNotFound):
            candidates = None
    if candidates is None:
        if strategy == "u":
            raise AssumptionViolated(f"geometric candidates unavailable for {S}")
        candidates = betti_candidates_remark(S)

    betti = []
    partitions: dict[int, RClassPartition] = {}
    catenaries: dict[int, int] = {}
    for b in sorted(candidates):
        if b <= 0:
            continue
        part = r_classes(factorizations(S, b))
        if len(part.classes) >= 2:
            betti.append(b)
            partitions[b] = part
            catenaries[b] = catenary_of_element(S, b)
    return BettiReport(
        betti=tuple(betti),
        partitions=partitions,
        catenary_by_element=catenaries,
        candidates_used=used,
    )


def catenary_degree(S: NumericalSemigroup) -> int:
    """Largest catenary degree over the Betti elements (0 if none)."""
    report = betti_elements(S)
    return max(report.catenary_by_element.values(), default=0)


def minimal_presentation(S: NumericalSemigroup) -> tuple[PresentationPair, ...]:
    """One spanning star of R-class representatives per Betti element.

    Representatives are the lexicographically least factorization of each
    class; the pair count is the number of classes minus one, summed.
    """
    report = betti_elements(S)
    pairs = []
    for b in report.betti:
        reps = [cls[0] for cls in report.partitions[b].classes]
        pairs.extend(PresentationPair(left=reps[0], right=r) for r in reps[1:])
    return tuple(pairs)


def classify_relation_value(
    S4: NumericalSemigroup, arrangement: Arrangement, point: CarvePoint
):
    """Predict the factorizations of a carve point's value without enumeration.

    Applies only to two-against-two identity points with all four parts
    positive under the positive-apex coefficient assumption: below both
    diagonal coefficients the value has exactly the two visible
    factorizations; at or above one of them it is either not a Betti element
    at all or carries the arithmetic-progression family on the paired axes.
    Raises HypothesisNotMet whenever any of this fails to apply.
    """
    if not _catenary_assumption_holds(S4, arrangement):
        raise HypothesisNotMet("positive-apex coefficient assumption fails")
    order = arrangement.order
    d = tuple(S4.minimal_generators[t] for t in order)
    w = point.witness
    lam0 = w[0]
    positives = [t for t in (1, 2, 3) if w[t] > 0]
    if lam0 <= 0 or len(positives) != 1:
        raise HypothesisNotMet("point is not a two-against-two identity")
    u = positives[0]
    q, r = [t for t in (1, 2, 3) if t != u]
    lam_u, lam_q, lam_r = w[u], -w[q], -w[r]
    if lam_q <= 0 or lam_r <= 0:
        raise HypothesisNotMet("identity has a zero part")
    a00 = minimal_relation(S4, order[0]).lhs_coeff
    a_uu = minimal_relation(S4, order[u]).lhs_coeff
    a_qq = minimal_relation(S4, order[q]).lhs_coeff
    a_rr = minimal_relation(S4, order[r]).lhs_coeff
    if lam_q >= a_qq or lam_r >= a_rr:
        raise HypothesisNotMet("bounded parts exceed the diagonal coefficients")
    value = lam0 * d[0] + lam_u * d[u]

    def arranged_vector(entries: dict[int, int]) -> tuple[int, ...]:
        v = [0, 0, 0, 0]
        for pos, c in entries.items():
            v[order[pos]] = c
        return tuple(v)

    z_pair = arranged_vector({q: lam_q, r: lam_r})
    if lam0 < a00 and lam_u < a_uu:
        facts = sorted([arranged_vector({0: lam0, u: lam_u}), z_pair])
        return FactorizationSet(
            element=value,
            generators=S4.minimal_generators,
            factorizations=tuple(facts),
        )
    if a00 * d[0] != a_uu * d[u]:
        return NOT_BETTI
    family = [z_pair]
    t = -(lam0 // a00)
    while lam_u - t * a_uu >= 0:
        c0, cu = lam0 + t * a00, lam_u - t * a_uu
        if c0 >= 0:
            family.append(arranged_vector({0: c0, u: cu}))
        t += 1
    return FactorizationSet(
        element=value,
        generators=S4.minimal_generators,
        factorizations=tuple(sorted(family)),
    )
