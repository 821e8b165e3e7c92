"""Monomial lifts and farthest power diagrams over the ordered field.

A site s on H lifts to the vector of monomials t^(-scale*s_i), a point with
positive coordinates whose product is 1.  With the squared-norm weight, the
farthest power comparison between two lifted sites collapses to one linear
inequality sum((a_i - b_i) x_i) <= 0, so every power region is a polyhedral
cone inside the nonnegative orthant, and the whole diagram is ordinary
polyhedral geometry over the field of rational functions ordered at
t -> +infinity.

The poset computation runs over the fraction-free LP kernel twice: with
polynomial entries for the symbolic answer, and after instantiating t at a
rational t0 with integer entries.  A ThresholdLedger threaded through the
symbolic run records a Cauchy root bound for every sign the solver consults;
any t0 above all recorded bounds makes every instantiated decision agree with
its symbolic counterpart, which reproduces the poset exactly.  That is the
certificate the acceptance checks rely on.

Per-coordinate leading exponents (valstar) translate field data back to the
tropical side: lifted sites map to their negated tropical sites, positive
points of a power region map into the matching Voronoi region.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from math import gcd, lcm
from random import Random
from typing import Optional, Sequence, Union

from ._lp import (
    INT_RING,
    PolyRing,
    ThresholdLedger,
    ZPoly,
    lp_affine_dim,
    lp_strictly_feasible,
    zp_add,
    zp_mul,
    zp_sign,
    zp_sub,
)
from .exactnum import (
    RF_ONE,
    RF_ZERO,
    Rat,
    RatFun,
    SingularSystemError,
    of_eval_at,
    of_solve_linear,
    valstar,
)
from .sites import SiteSet, check_general_position
from .tropcore import HPoint, TropicalHalfspace, normalize_to_H
from .voronoi import VoronoiDiagram, region, region_contains, voronoi_diagram

LIFT_CAP = 12
GEN_CONSTRAINT_CAP = 20
DIM_CAP = 5

Scalar = Union[RatFun, Fraction]


# ---------------------------------------------------------------------------
# field-valued vectors and halfspaces

@dataclass(frozen=True)
class OFVector:
    """Vector over the field, with the exponent scale used by valstar."""

    coords: tuple
    scale: int = 1

    def __init__(self, coords: Sequence[Scalar], scale: int = 1) -> None:
        cs = tuple(coords)
        if not cs:
            raise ValueError("need at least one coordinate")
        if scale < 1:
            raise ValueError("scale must be positive")
        object.__setattr__(self, "coords", cs)
        object.__setattr__(self, "scale", int(scale))

    @property
    def n(self) -> int:
        return len(self.coords)


@dataclass(frozen=True)
class OFHalfspace:
    """The set {x : sum(coefficients_i * x_i) + offset <= 0}.

    Power halfspaces are homogeneous; the offset exists so that affine
    polyhedra (bounded test cases) share the generator enumeration.
    """

    coefficients: OFVector
    offset: Scalar = RF_ZERO
    sense: str = "<="


@dataclass(frozen=True)
class OFPolyhedron:
    n: int
    halfspaces: tuple
    include_orthant: bool = True

    @property
    def scale(self) -> int:
        return self.halfspaces[0].coefficients.scale if self.halfspaces else 1


def monomial_lift(s: HPoint, scale: int = 1) -> OFVector:
    """Lift a site to per-coordinate monomials t^(-scale * s_i)."""
    coords = []
    for c in s.coords:
        e = -scale * c
        if e.denominator != 1:
            raise ValueError("non-integral after scaling")
        coords.append(RatFun.t_power(int(e)))
    return OFVector(coords, scale)


def lift_valstar(v: OFVector) -> tuple:
    """Leading exponents of the coordinates, None standing for zero."""
    return tuple(valstar(c, v.scale) for c in v.coords)


def power_halfspace(a_lift: OFVector, b_lift: OFVector) -> OFHalfspace:
    """The halfspace of points at least as far (in power) from a as from b."""
    if a_lift.n != b_lift.n:
        raise ValueError("dimension mismatch")
    if a_lift.scale != b_lift.scale:
        raise ValueError("mismatched exponent scales")
    if a_lift.coords == b_lift.coords:
        raise ValueError("coincident lifts")
    deltas = tuple(x - y for x, y in zip(a_lift.coords, b_lift.coords))
    zero = RF_ZERO if isinstance(deltas[0], RatFun) else Fraction(0)
    return OFHalfspace(OFVector(deltas, a_lift.scale), zero)


def power_region(lifts: Sequence[OFVector], a: int) -> OFPolyhedron:
    lifts = list(lifts)
    if len(set(v.coords for v in lifts)) != len(lifts):
        raise ValueError("coincident lifts")
    hs = [power_halfspace(lifts[a], b) for i, b in enumerate(lifts) if i != a]
    return OFPolyhedron(lifts[a].n, tuple(hs), include_orthant=True)


# ---------------------------------------------------------------------------
# generator enumeration over the field

def _as_ratfun(c: Scalar) -> RatFun:
    return c if isinstance(c, RatFun) else RatFun.from_rat(c)


def _rows_of(P: OFPolyhedron):
    rows = [
        ([_as_ratfun(c) for c in h.coefficients.coords], _as_ratfun(h.offset))
        for h in P.halfspaces
    ]
    if P.include_orthant:
        for i in range(P.n):
            coeffs = [RF_ZERO] * P.n
            coeffs[i] = -RF_ONE
            rows.append((coeffs, RF_ZERO))
    return rows


def _row_value_sign(coeffs, offset, x) -> int:
    acc = offset
    for c, xi in zip(coeffs, x):
        acc = acc + c * xi
    return acc.sign()


def _int_poly_rows(rows) -> list:
    """Coefficient rows cleared to integer-coefficient polynomials.

    Each output row is a positive scalar multiple of the input row, so
    feasibility signs and kernels are unchanged.
    """
    out = []
    for coeffs, _ in rows:
        full = RF_ONE
        for c in coeffs:
            full = full * RatFun(c.den)
        cleared = [c * full for c in coeffs]
        m = 1
        for c in cleared:
            for co in c.num:
                m = lcm(m, co.denominator)
        out.append(
            [{e: int(co * m) for e, co in enumerate(c.num) if co} for c in cleared]
        )
    return out


def _zp_dot_sign(row, d) -> int:
    acc: ZPoly = {}
    for rc, dc in zip(row, d):
        if rc and dc:
            acc = zp_add(acc, zp_mul(rc, dc))
    return zp_sign(acc)


def _zp_det(M) -> ZPoly:
    k = len(M)
    if k == 1:
        return M[0][0]
    acc: ZPoly = {}
    for j in range(k):
        if not M[0][j]:
            continue
        minor = [[row[c] for c in range(k) if c != j] for row in M[1:]]
        term = zp_mul(M[0][j], _zp_det(minor))
        acc = zp_add(acc, term) if j % 2 == 0 else zp_sub(acc, term)
    return acc


def _zp_rank(rows, n) -> int:
    M = [list(r) for r in rows]
    rank = 0
    for col in range(n):
        piv = next((r for r in range(rank, len(M)) if M[r][col]), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        lead = M[rank][col]
        for r in range(rank + 1, len(M)):
            if M[r][col]:
                head = M[r][col]
                M[r] = [
                    zp_sub(zp_mul(lead, M[r][c]), zp_mul(head, M[rank][c]))
                    for c in range(n)
                ]
        rank += 1
    return rank


def _kernel_direction(rows, n) -> Optional[list]:
    """Kernel generator of an (n-1) x n integer-polynomial system, if any.

    Cramer minors: d_j = (-1)^j det(rows without column j).  The vector is
    nonzero exactly when the rank is n - 1, and then it spans the kernel.
    """
    d = []
    for j in range(n):
        minor = [[row[c] for c in range(n) if c != j] for row in rows]
        det = _zp_det(minor)
        d.append({e: -v for e, v in det.items()} if j % 2 else det)
    return d if any(d) else None


def _ratfun_of_zp(p: ZPoly) -> RatFun:
    if not p:
        return RF_ZERO
    top = max(p)
    return RatFun([p.get(e, 0) for e in range(top + 1)])


def _primitive(d: Sequence[RatFun]) -> tuple:
    """Canonical representative of the ray through d: last nonzero coordinate
    scaled to 1, denominators cleared, integer content removed."""
    last = next(i for i in reversed(range(len(d))) if not d[i].is_zero())
    d = [c / d[last] for c in d]
    full = RF_ONE
    for c in d:
        full = full * RatFun(c.den)
    d = [c * full for c in d]
    m = 1
    for c in d:
        for co in c.num:
            m = lcm(m, co.denominator)
    polys = [[int(co * m) for co in c.num] for c in d]
    g = 0
    for p in polys:
        for co in p:
            g = gcd(g, co)
    if g > 1:
        polys = [[co // g for co in p] for p in polys]
    return tuple(RatFun(p) if p else RF_ZERO for p in polys)


def of_polyhedron_generators(P: OFPolyhedron):
    """Vertices and extreme rays by brute-force basic-solution enumeration.

    Vertex solves run only on inhomogeneous systems; a cone's sole candidate
    vertex is the origin, basic exactly when the rows have full rank.  Ray
    directions come from Cramer minors over integer-polynomial rows, so the
    enumeration never divides in the function field.
    """
    n = P.n
    rows = _rows_of(P)
    if len(rows) > GEN_CONSTRAINT_CAP or n > DIM_CAP:
        raise ValueError("size cap exceeded")
    zrows = _int_poly_rows(rows)

    vertices: list = []
    if all(off.is_zero() for _, off in rows):
        if _zp_rank(zrows, n) == n:
            vertices.append(tuple([RF_ZERO] * n))
    else:
        seen_pts = set()
        for sub in combinations(range(len(rows)), n):
            A = [rows[i][0] for i in sub]
            b = [-rows[i][1] for i in sub]
            try:
                x = of_solve_linear(A, b)
            except SingularSystemError:
                continue
            pt = tuple(x)
            if pt in seen_pts:
                continue
            if all(_row_value_sign(c, off, x) <= 0 for c, off in rows):
                seen_pts.add(pt)
                vertices.append(pt)
        vertices.sort()

    rays: list = []
    seen_rays = set()
    for sub in combinations(range(len(zrows)), n - 1):
        d = _kernel_direction([zrows[i] for i in sub], n)
        if d is None:
            continue
        dots = [_zp_dot_sign(row, d) for row in zrows]
        fwd = all(s <= 0 for s in dots)
        bwd = all(s >= 0 for s in dots)
        if fwd and bwd:
            raise ValueError("cone is not pointed")
        if bwd:
            d = [{e: -v for e, v in p.items()} for p in d]
        elif not fwd:
            continue
        rf = [_ratfun_of_zp(p) for p in d]
        can = list(_primitive(rf))
        # _primitive scales the last nonzero coordinate to +1, which flips
        # the ray when that coordinate was negative; undo the flip.
        last = next(i for i in reversed(range(n)) if not rf[i].is_zero())
        if rf[last].sign() < 0:
            can = [-c for c in can]
        key = tuple(can)
        if key not in seen_rays:
            seen_rays.add(key)
            rays.append(key)
    rays.sort()

    scale = P.scale
    return (
        [OFVector(v, scale) for v in vertices],
        [OFVector(r, scale) for r in rays],
    )


# ---------------------------------------------------------------------------
# the lifted diagram poset

@dataclass(frozen=True)
class PowerCell:
    label: tuple
    dim: int


@dataclass(frozen=True)
class PowerDiagram:
    cells: tuple
    order: tuple  # (child, parent) index pairs, child strictly inside parent


def power_diagram_to_json(d: PowerDiagram) -> dict:
    return {
        "cells": [{"T": list(c.label), "dim": c.dim} for c in d.cells],
        "order": [list(pair) for pair in d.order],
    }


def _symbolic_row(deltas) -> tuple:
    """Clear a RatFun row to integer polynomials; scaling by the (positive)
    denominator product keeps every sign decision intact."""
    full = RF_ONE
    for dlt in deltas:
        full = full * RatFun(dlt.den)
    cleared = [dlt * full for dlt in deltas]
    m = 1
    for c in cleared:
        for co in c.num:
            m = lcm(m, co.denominator)
    out = []
    for c in cleared:
        out.append({e: int(co * m) for e, co in enumerate(c.num) if co != 0})
    return tuple(out)


def _numeric_row(deltas) -> tuple:
    m = lcm(*(d.denominator for d in deltas)) if deltas else 1
    return tuple(int(d * m) for d in deltas)


def instantiate_lifts(lifts: Sequence[OFVector], t0: Rat) -> list:
    """Evaluate every coordinate at the rational t0."""
    out = []
    for v in lifts:
        coords = [of_eval_at(c, t0)[0] for c in v.coords]
        out.append(OFVector(coords, v.scale))
    return out


def power_diagram_poset(
    lifts: Sequence[OFVector], ledger: Optional[ThresholdLedger] = None
) -> PowerDiagram:
    """All cells of the farthest power diagram with canonical labels.

    A label is kept when its cone meets the open orthant, where the leading
    exponents define a genuine tropical point.  Labels are canonicalized the
    same way as on the tropical side: the label of a cell is every site whose
    power region contains it.  With pairwise distinct coordinates everywhere
    the enumerated label is already canonical and the size-n bound applies.
    """
    lifts = list(lifts)
    if len(lifts) > LIFT_CAP:
        raise ValueError("size cap exceeded")
    if not lifts:
        raise ValueError("need at least one lift")
    n = lifts[0].n
    if n > DIM_CAP:
        raise ValueError("size cap exceeded")
    if any(v.n != n for v in lifts):
        raise ValueError("dimension mismatch")
    if len(set(v.coords for v in lifts)) != len(lifts):
        raise ValueError("coincident lifts")

    symbolic = isinstance(lifts[0].coords[0], RatFun)
    ring = PolyRing(ledger) if symbolic else INT_RING
    convert = _symbolic_row if symbolic else _numeric_row
    zero = ring.zero

    cache: dict = {}

    def prow(i: int, j: int) -> tuple:
        key = (i, j)
        if key not in cache:
            deltas = [
                x - y for x, y in zip(lifts[i].coords, lifts[j].coords)
            ]
            cache[key] = convert(deltas)
        return cache[key]

    # all-coordinates-distinct test, through ring.sign so the decisions are
    # covered by the ledger certificate
    gp = True
    for i, j in combinations(range(len(lifts)), 2):
        if any(ring.sign(c) == 0 for c in prow(i, j)):
            gp = False
            break

    orthant = []
    for i in range(n):
        coeffs = [zero] * n
        coeffs[i] = ring.sub(zero, ring.one)
        orthant.append((tuple(coeffs), zero))

    def cell_rows(label):
        a0 = label[0]
        eqs = [(prow(a0, b), zero) for b in label[1:]]
        les = [(prow(a0, b), zero) for b in range(len(lifts)) if b not in label]
        return eqs, les

    def positive_feasible(label) -> bool:
        eqs, les = cell_rows(label)
        return lp_strictly_feasible(n, eqs, orthant, les, ring)

    def cell_dim(label) -> int:
        eqs, les = cell_rows(label)
        return lp_affine_dim(n, eqs, les + orthant, ring)

    max_size = min(len(lifts), n) if gp else len(lifts)
    nonempty: dict = {}
    frontier = []
    for s in range(len(lifts)):
        label = (s,)
        if positive_feasible(label):
            nonempty[label] = cell_dim(label)
            frontier.append(label)
    for size in range(2, max_size + 1):
        candidates = set()
        for label in frontier:
            for s in range(len(lifts)):
                if s not in label:
                    candidates.add(tuple(sorted(label + (s,))))
        frontier = []
        for cand in sorted(candidates):
            if any(cand[:i] + cand[i + 1 :] not in nonempty for i in range(size)):
                continue
            if positive_feasible(cand):
                nonempty[cand] = cell_dim(cand)
                frontier.append(cand)
        if not frontier:
            break

    if gp:
        canonical = dict(nonempty)
    else:
        canonical = {}
        for label, dim in sorted(nonempty.items()):
            eqs, les = cell_rows(label)
            full = set(label)
            for b in range(len(lifts)):
                if b in full:
                    continue
                inside = True
                for c in range(len(lifts)):
                    if c == b:
                        continue
                    if lp_strictly_feasible(
                        n, eqs, [(prow(c, b), zero)], les + orthant, ring
                    ):
                        inside = False
                        break
                if inside:
                    full.add(b)
            key = tuple(sorted(full))
            if key not in canonical:
                canonical[key] = dim

    cells = tuple(
        PowerCell(label, dim)
        for label, dim in sorted(canonical.items(), key=lambda kv: (len(kv[0]), kv[0]))
    )
    index = {c.label: i for i, c in enumerate(cells)}
    order = []
    for a in cells:
        for b in cells:
            if a.label != b.label and set(a.label) > set(b.label):
                order.append((index[a.label], index[b.label]))
    return PowerDiagram(cells, tuple(sorted(order)))


# ---------------------------------------------------------------------------
# the correspondence checker

def _contains_extended(h: TropicalHalfspace, vals: Sequence[Optional[Rat]]) -> bool:
    """Halfspace membership for points with possibly absent (minus-infinite)
    coordinates; shift invariance makes normalization unnecessary."""
    left = [c + vals[i] for i, c in zip(h.I, h.c) if vals[i] is not None]
    right = [d + vals[j] for j, d in zip(h.J, h.d) if vals[j] is not None]
    if not left:
        return True
    if not right:
        return False
    return max(left) <= max(right)


def _scalar_mul(k: int, v: OFVector) -> OFVector:
    return OFVector([c * k for c in v.coords], v.scale)


def _vec_add(a: OFVector, b: OFVector) -> OFVector:
    return OFVector([x + y for x, y in zip(a.coords, b.coords)], a.scale)


def verify_lift(
    S: SiteSet,
    ledger: Optional[ThresholdLedger] = None,
    rng: Optional[Random] = None,
) -> dict:
    """Cross-check the lifted power diagram against the tropical diagram.

    The verdict covers (i) label-wise poset equality, (ii) valstar images of
    positive samples from each power region landing in the matching Voronoi
    region, and (iii) the same for the extreme rays, in the extended sense
    that tolerates minus-infinite coordinates.  The base sample pool is
    deterministic; rng widens it with random nonnegative ray combinations.
    """
    gp, _ = check_general_position(S)
    if not gp:
        from .delone import sufficiently_generic

        ok, _ = sufficiently_generic(S)
        if not ok:
            raise ValueError("precondition: genericity")

    scale = lcm(*(c.denominator for s in S for c in s.coords))
    lifts = [monomial_lift(s, scale) for s in S]

    trop = voronoi_diagram(S)
    lifted = power_diagram_poset(lifts, ledger=ledger)
    isomorphic = [c.label for c in trop.cells] == [
        c.label for c in lifted.cells
    ] and trop.order == lifted.order

    failures: list = []
    samples = 0
    for a in range(len(S)):
        P = power_region(lifts, a)
        _, rays = of_polyhedron_generators(P)
        r_trop = region(S, a)
        if not rays:
            continue
        sigma = rays[0]
        for r in rays[1:]:
            sigma = _vec_add(sigma, r)
        pool = [sigma] + [_vec_add(sigma, _scalar_mul(k + 2, r)) for k, r in enumerate(rays)]
        if rng is not None:
            for _ in range(3):
                x = sigma
                for r in rays:
                    x = _vec_add(x, _scalar_mul(rng.randrange(5), r))
                pool.append(x)
        for x in pool:
            if any(c.sign() <= 0 for c in x.coords):
                continue
            samples += 1
            vals = lift_valstar(x)
            pt = normalize_to_H(vals)
            if not region_contains(r_trop, pt):
                failures.append(f"sample of region {a}: valstar {list(map(str, vals))} escapes")
        for r in rays:
            vals = lift_valstar(r)
            for h in r_trop.halfspaces:
                if not _contains_extended(h, vals):
                    failures.append(f"ray of region {a}: valstar {list(map(str, vals))} escapes")
                    break

    return {
        "isomorphic": isomorphic,
        "cells_tropical": len(trop.cells),
        "cells_lifted": len(lifted.cells),
        "containment_samples": samples,
        "failures": failures,
    }
