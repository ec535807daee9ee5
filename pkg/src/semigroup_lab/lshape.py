"""3D staircase carving for embedding-dimension-4 Apery sets.

A figure is a finite down-closed collection of labeled unit cubes in the
first octant: cube (i,j,k) carries the label i*d1 + j*d2 + k*d3, and a carve
point (x,y,z) deletes every cube with i >= x, j >= y, k >= z componentwise
(negative or missing coordinates constrain nothing).  Carving with the right
point set leaves exactly the cubes labeled by the Apery set of d0; cutting
the three coordinate axes down to the minimal relation coefficients then
yields an L-shape: one cube per Apery element.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from functools import cached_property
from math import gcd

from .core import AperySet, NumericalSemigroup, apery_set
from .relations import (
    Arrangement,
    ArrangementMode,
    Relation,
    d0_positive_relation,
    minimal_relation,
    select_arrangement,
    _require_dim4,
)


class CardinalityMismatch(RuntimeError):
    """The carved figure does not have exactly d0 cubes."""

    def __init__(self, count: int, expected: int):
        super().__init__(f"carved figure has {count} cubes, expected {expected}")
        self.count = count
        self.expected = expected


class LabelSetMismatch(RuntimeError):
    """Figure labels disagree with the oracle Apery set."""


class NonIntegralGenus(ArithmeticError):
    """Label sum inconsistent with a residue transversal; figure is corrupt."""


Coord = "int | None"  # None: axis unconstrained (sentinel for minus infinity)


@dataclass(frozen=True)
class CarvePoint:
    """One deletion point, with the identity that justifies it.

    ``witness`` is the signed zero-form (w0,w1,w2,w3) over the arranged
    generators (d0,d1,d2,d3): sum(w.d) = 0 with w0 >= 0 the multiple of d0
    the point realizes.  Coordinates satisfy coords[t] = -witness[t+1],
    except that identity points store None on their unbounded axis.
    """

    coords: tuple[int | None, int | None, int | None]
    source: str  # "P0" | "P_POS(i)" | "IDENTITY(i)" | "AXIS_CUT(i)"
    witness: tuple[int, int, int, int]

    def effective(self) -> tuple[int, int, int]:
        """Coordinates clamped to the grid; the deletion region is unchanged."""
        return tuple(0 if c is None or c < 0 else c for c in self.coords)

    def deletes(self, cube: tuple[int, int, int]) -> bool:
        return all(c is None or q >= c for c, q in zip(self.coords, cube))

    def theta_value(self, generators: tuple[int, int, int, int]) -> int:
        """Axis-wise value sum over the nonnegative coordinates."""
        total = 0
        for c, g in zip(self.coords, generators[1:]):
            if c is not None and c > 0:
                total += c * g
        return total


@dataclass(frozen=True)
class Figure:
    """Bounding box plus carve points; cube membership is implicit.

    Cube (i,j,k) is in the figure iff it lies inside ``bounds`` and no point
    dominates it.  Membership is resolved through a per-(j,k) column cutoff:
    the least effective x among points matching that column.
    """

    generators: tuple[int, int, int, int]  # arranged (d0, d1, d2, d3)
    bounds: tuple[int, int, int]
    points: tuple[CarvePoint, ...]

    @cached_property
    def column_cutoffs(self) -> list[list[int]]:
        b1, b2, b3 = self.bounds
        base = [[b1] * b3 for _ in range(b2)]
        for p in self.points:
            xe, ye, ze = p.effective()
            if xe >= b1 or ye >= b2 or ze >= b3:
                continue
            if base[ye][ze] > xe:
                base[ye][ze] = xe
        # a point at (ye,ze) constrains the whole quadrant j>=ye, k>=ze
        for j in range(b2):
            row = base[j]
            prev = base[j - 1] if j else None
            for k in range(b3):
                cut = row[k]
                if prev is not None and prev[k] < cut:
                    cut = prev[k]
                if k and row[k - 1] < cut:
                    cut = row[k - 1]
                row[k] = cut
        return base

    @property
    def cube_count(self) -> int:
        return sum(sum(row) for row in self.column_cutoffs)

    @cached_property
    def cubes(self) -> tuple[tuple[int, int, int], ...]:
        cuts = self.column_cutoffs
        out = [
            (i, j, k)
            for j, row in enumerate(cuts)
            for k, cut in enumerate(row)
            for i in range(cut)
        ]
        out.sort()
        return tuple(out)

    def contains_cube(self, cube: tuple[int, int, int]) -> bool:
        i, j, k = cube
        b1, b2, b3 = self.bounds
        if not (0 <= i < b1 and 0 <= j < b2 and 0 <= k < b3):
            return False
        return i < self.column_cutoffs[j][k]

    def label(self, cube: tuple[int, int, int]) -> int:
        _, d1, d2, d3 = self.generators
        return cube[0] * d1 + cube[1] * d2 + cube[2] * d3

    def labels(self) -> dict[tuple[int, int, int], int]:
        return {c: self.label(c) for c in self.cubes}

    def label_set(self) -> frozenset[int]:
        return frozenset(self.label(c) for c in self.cubes)


@dataclass(frozen=True)
class LShape:
    """A figure with exactly d0 cubes, one per Apery class of d0."""

    figure: Figure
    apex_modulus: int

    @property
    def cubes(self) -> tuple[tuple[int, int, int], ...]:
        return self.figure.cubes

    def labels(self) -> dict[tuple[int, int, int], int]:
        return self.figure.labels()

    def label_set(self) -> frozenset[int]:
        return self.figure.label_set()


@dataclass(frozen=True)
class LShapeStats:
    frobenius: int
    genus: int
    apery: AperySet
    max_corner: tuple[int, int, int]


def arranged_generators(
    S4: NumericalSemigroup, arrangement: Arrangement
) -> tuple[int, int, int, int]:
    mg = S4.minimal_generators
    return tuple(mg[t] for t in arrangement.order)


def _relation_witness(
    rel: Relation, triple: tuple[int, int, int], inv: dict[int, int]
) -> tuple[int, int, int, int]:
    """Zero-form of one relation triple in arranged coordinates, apex part >= 0."""
    w = [0, 0, 0, 0]
    w[inv[rel.lhs_index]] = -rel.lhs_coeff
    for idx, c in zip(rel.other_indices, triple):
        w[inv[idx]] = c
    if w[0] < 0:
        w = [-v for v in w]
    return tuple(w)


def _relation_point(
    rel: Relation, triple: tuple[int, int, int], inv: dict[int, int], source: str
) -> CarvePoint:
    w = _relation_witness(rel, triple, inv)
    return CarvePoint(coords=(-w[1], -w[2], -w[3]), source=source, witness=w)


def _identity_points(
    d: tuple[int, int, int, int], u: int, v: int, w_axis: int, bv: int, bw: int
) -> list[CarvePoint]:
    """Points of identities lam0*d0 + lam_u*d_u = lam_v*d_v + lam_w*d_w.

    Axis u is unbounded; for each (lam_v, lam_w) in [0,bv) x [0,bw) the least
    admissible lam_u is solved by modular arithmetic.  Any admissible lam_u
    yields the same deletion region, so one point per column suffices.
    """
    d0, du, dv, dw = d[0], d[u], d[v], d[w_axis]
    g = gcd(du, d0)
    mod = d0 // g
    inv_u = pow((du // g) % mod, -1, mod) if mod > 1 else 0
    out = []
    for lv in range(bv):
        for lw in range(bw):
            rhs = lv * dv + lw * dw
            if rhs < d0 or rhs % g:
                continue
            lu = ((rhs // g) % mod) * inv_u % mod
            if lu * du > rhs - d0:
                continue
            lam0 = (rhs - lu * du) // d0
            witness = [0, 0, 0, 0]
            witness[0] = lam0
            witness[u] = lu
            witness[v] = -lv
            witness[w_axis] = -lw
            coords = [None, None, None]
            coords[v - 1] = lv
            coords[w_axis - 1] = lw
            out.append(
                CarvePoint(
                    coords=tuple(coords),
                    source=f"IDENTITY({u})",
                    witness=tuple(witness),
                )
            )
    return out


def figure_R(S4: NumericalSemigroup, arrangement: Arrangement) -> Figure:
    """The carved figure whose labels are exactly the Apery set of d0.

    Deletes the regions of every representation of the minimal multiple of
    d0, of every d0-positive minimal relation of d1,d2,d3, and of every
    bounded two-against-two identity with a positive d0 part.
    """
    _require_dim4(S4)
    order = arrangement.order
    d = arranged_generators(S4, arrangement)
    inv = {orig: pos for pos, orig in enumerate(order)}
    points: list[CarvePoint] = []

    rel0 = minimal_relation(S4, order[0])
    for t in rel0.triples:
        points.append(_relation_point(rel0, t, inv, "P0"))

    b = {}
    for pos in (1, 2, 3):
        rel = d0_positive_relation(S4, order[pos], anchor=order[0])
        b[pos] = rel.lhs_coeff
        for t in rel.triples:
            points.append(_relation_point(rel, t, inv, f"P_POS({pos})"))

    points += _identity_points(d, 1, 2, 3, b[2], b[3])
    points += _identity_points(d, 2, 1, 3, b[1], b[3])
    points += _identity_points(d, 3, 1, 2, b[1], b[2])

    return Figure(generators=d, bounds=(b[1], b[2], b[3]), points=tuple(points))


def _axis_cut_points(
    S4: NumericalSemigroup, arrangement: Arrangement, positions: tuple[int, ...]
) -> list[CarvePoint]:
    """Axis cuts {coord_pos >= a_pp}, realized by the plain minimal relations.

    Only added where a_pp is strictly below the d0-positive bound (otherwise
    the P+ point already cuts there).  The minimal relation supplies a
    genuine zero-form witness, so these points stay eligible for the
    irredundant carve set.
    """
    order = arrangement.order
    inv = {orig: pos for pos, orig in enumerate(order)}
    out = []
    for pos in positions:
        rel = minimal_relation(S4, order[pos])
        bpos = d0_positive_relation(S4, order[pos], anchor=order[0]).lhs_coeff
        if rel.lhs_coeff < bpos:
            out.append(_relation_point(rel, rel.triples[0], inv, f"AXIS_CUT({pos})"))
    return out


def lshape_via_proptrick(S4: NumericalSemigroup, arrangement: Arrangement) -> LShape:
    """Cut the carved figure at the three minimal relation coefficients."""
    if arrangement.mode is not ArrangementMode.PROP_TRICK:
        raise ValueError(f"arrangement mode {arrangement.mode} is not PROP_TRICK")
    fig = figure_R(S4, arrangement)
    extra = _axis_cut_points(S4, arrangement, (1, 2, 3))
    fig = Figure(
        generators=fig.generators,
        bounds=fig.bounds,
        points=fig.points + tuple(extra),
    )
    d0 = fig.generators[0]
    if fig.cube_count != d0:
        raise CardinalityMismatch(fig.cube_count, d0)
    return LShape(figure=fig, apex_modulus=d0)


def lshape_via_propnottrick(
    S4: NumericalSemigroup, arrangement: Arrangement, axis: str = "z"
) -> LShape:
    """Cut the carved figure on one axis of the paired generators.

    Under the paired arrangement (a11 = b11 and a22*d2 = a33*d3) deleting
    {z >= a33} from the carved figure leaves an L-shape; deleting
    {y >= a22} instead gives the mirror L-shape with the same labels.
    """
    if arrangement.mode is not ArrangementMode.PROP_NOT_TRICK:
        raise ValueError(f"arrangement mode {arrangement.mode} is not PROP_NOT_TRICK")
    if axis not in ("y", "z"):
        raise ValueError("axis must be 'y' or 'z'")
    fig = figure_R(S4, arrangement)
    extra = _axis_cut_points(S4, arrangement, (2,) if axis == "y" else (3,))
    fig = Figure(
        generators=fig.generators,
        bounds=fig.bounds,
        points=fig.points + tuple(extra),
    )
    d0 = fig.generators[0]
    if fig.cube_count != d0:
        raise CardinalityMismatch(fig.cube_count, d0)
    return LShape(figure=fig, apex_modulus=d0)


def lshape_auto(S4: NumericalSemigroup) -> tuple[LShape, Arrangement]:
    """Select an arrangement, carve, and verify labels against the oracle."""
    arrangement = select_arrangement(S4)
    if arrangement.mode is ArrangementMode.PROP_TRICK:
        shape = lshape_via_proptrick(S4, arrangement)
    else:
        shape = lshape_via_propnottrick(S4, arrangement)
    oracle = frozenset(apery_set(S4, shape.apex_modulus).elements)
    if shape.label_set() != oracle:
        raise LabelSetMismatch(
            f"carved labels disagree with the Apery set of {shape.apex_modulus}"
        )
    return shape, arrangement


def lshape_stats(shape: LShape) -> LShapeStats:
    """Frobenius number, genus, Apery set and the maximal corner of an L-shape."""
    d0 = shape.apex_modulus
    labels = shape.labels()
    if len(labels) != d0:
        raise NonIntegralGenus(f"{len(labels)} cubes for modulus {d0}")
    max_corner = max(labels, key=lambda c: labels[c])
    total = sum(labels.values())
    num = 2 * total - d0 * (d0 - 1)
    if num % (2 * d0):
        raise NonIntegralGenus("label sum is not a residue transversal")
    by_residue = [0] * d0
    for lab in labels.values():
        by_residue[lab % d0] = lab
    return LShapeStats(
        frobenius=labels[max_corner] - d0,
        genus=num // (2 * d0),
        apery=AperySet(modulus=d0, elements=tuple(by_residue)),
        max_corner=max_corner,
    )


def is_unique_lshape(S4: NumericalSemigroup, arrangement: Arrangement) -> bool:
    """True iff every minimal relation already admits a positive d0 part."""
    _require_dim4(S4)
    order = arrangement.order
    for pos in (1, 2, 3):
        a = minimal_relation(S4, order[pos]).lhs_coeff
        b = d0_positive_relation(S4, order[pos], anchor=order[0]).lhs_coeff
        if a != b:
            return False
    return True


def confirm_minimal_relations(
    S4: NumericalSemigroup,
    arrangement: Arrangement,
    carved: LShape,
    claimed: tuple[Relation, Relation, Relation],
) -> bool:
    """Certify claimed relations through the cube count of their carve.

    A carve built from positive-multiple points plus axis cuts at the claimed
    coefficients that ends up with exactly d0 cubes proves those coefficients
    are the true (d0-positive) minimal ones; the relations module recomputes
    them independently as a cross-check.
    """
    d0 = arranged_generators(S4, arrangement)[0]
    if carved.figure.cube_count != d0 or carved.apex_modulus != d0:
        return False
    anchor = arrangement.order[0]
    for rel in claimed:
        if rel.positive_index == anchor or rel.has_positive_coeff_on(anchor):
            true_coeff = d0_positive_relation(S4, rel.lhs_index, anchor).lhs_coeff
        else:
            true_coeff = minimal_relation(S4, rel.lhs_index).lhs_coeff
        if rel.lhs_coeff != true_coeff:
            return False
    return True


def minimal_carve_points(figure: Figure) -> tuple[CarvePoint, ...]:
    """Inclusion-minimal subset of the figure's points carving the same cubes.

    Greedy removal in lexicographic order of effective coordinates: a point
    may go whenever it is nowhere the sole strict minimizer of a column
    cutoff.  Removals never change any column minimum, so one pass suffices.
    """
    b1, b2, b3 = figure.bounds

    seen: dict[tuple[int, int, int], CarvePoint] = {}
    for p in sorted(figure.points, key=lambda p: (p.effective(), p.source)):
        eff = p.effective()
        if eff[0] >= b1 or eff[1] >= b2 or eff[2] >= b3:
            continue  # cuts nothing inside the box
        if eff not in seen:  # equal effect implies equal theta value
            seen[eff] = p
    cands = list(seen.values())

    colmin = [[b1] * b3 for _ in range(b2)]
    count = [[0] * b3 for _ in range(b2)]
    for p in cands:
        xe, ye, ze = p.effective()
        for j in range(ye, b2):
            for k in range(ze, b3):
                if xe < colmin[j][k]:
                    colmin[j][k] = xe
                    count[j][k] = 1
                elif xe == colmin[j][k]:
                    count[j][k] += 1

    kept = []
    for p in cands:
        xe, ye, ze = p.effective()
        needed = False
        for j in range(ye, b2):
            for k in range(ze, b3):
                if colmin[j][k] == xe and count[j][k] == 1:
                    needed = True
                    break
            if needed:
                break
        if needed:
            kept.append(p)
        else:
            for j in range(ye, b2):
                for k in range(ze, b3):
                    if colmin[j][k] == xe:
                        count[j][k] -= 1
    return tuple(kept)


_CUBE_CORNERS = (
    (0, 0, 0), (1, 0, 0), (1, 1, 0), (0, 1, 0),
    (0, 0, 1), (1, 0, 1), (1, 1, 1), (0, 1, 1),
)
_CUBE_FACES = (  # outward counter-clockwise quads over the corners above
    (0, 3, 2, 1), (4, 5, 6, 7), (0, 1, 5, 4),
    (3, 7, 6, 2), (0, 4, 7, 3), (1, 2, 6, 5),
)


def export_voxels(shape: LShape, format: str = "text") -> bytes:
    """Serialize an L-shape: 'text' lines, a 'json' document, or an 'obj' mesh."""
    fmt = format.lower()
    cubes = shape.cubes
    fig = shape.figure
    if fmt == "text":
        lines = [f"{i} {j} {k} {fig.label((i, j, k))}\n" for i, j, k in cubes]
        return "".join(lines).encode("ascii")
    if fmt == "json":
        doc = {
            "generators": list(fig.generators),
            "arrangement": {
                "apex_modulus": shape.apex_modulus,
                "axis_generators": list(fig.generators[1:]),
            },
            "cubes": [
                {"i": i, "j": j, "k": k, "label": fig.label((i, j, k))}
                for i, j, k in cubes
            ],
        }
        return json.dumps(doc, separators=(",", ":")).encode("ascii")
    if fmt == "obj":
        vertex_index: dict[tuple[int, int, int], int] = {}
        vlines: list[str] = []
        flines: list[str] = []
        for i, j, k in cubes:
            ids = []
            for dx, dy, dz in _CUBE_CORNERS:
                v = (i + dx, j + dy, k + dz)
                idx = vertex_index.get(v)
                if idx is None:
                    idx = len(vertex_index) + 1
                    vertex_index[v] = idx
                    vlines.append(f"v {v[0]} {v[1]} {v[2]}\n")
                ids.append(idx)
            for a, bq, c, dq in _CUBE_FACES:
                flines.append(f"f {ids[a]} {ids[bq]} {ids[c]}\n")
                flines.append(f"f {ids[a]} {ids[c]} {ids[dq]}\n")
        return "".join(vlines + flines).encode("ascii")
    raise ValueError(f"unknown voxel format {format!r}")
