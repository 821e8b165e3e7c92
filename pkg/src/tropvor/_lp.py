"""Exact linear programming kernel, generic over a coefficient ring.

The same two-phase primal simplex runs over two rings:

  * IntRing: Python integers, for systems with rational data (rows are
    cleared of denominators by the caller).
  * PolyRing: sparse univariate integer polynomials ordered by behavior at
    t -> +infinity, for systems over the ordered field of rational functions.

Pivoting is fraction-free (integer-preserving): the tableau holds ring
elements and a running denominator d, the true tableau being T/d.  Each pivot
divides by the previous pivot, and that division is exact because every entry
is a minor of the original matrix.  No gcd computation ever happens.

Every comparison the solver makes is routed through ring.sign.  PolyRing can
carry a ThresholdLedger which records a Cauchy root bound for every nonzero
element whose sign is consulted; instantiating the data at any rational t0
above the accumulated bound therefore reproduces every decision, hence the
identical result, with IntRing arithmetic.

Bland's rule everywhere: entering column of smallest index, leaving row of
smallest basis index among minimal ratios.  Deterministic and terminating.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional, Sequence

# ---------------------------------------------------------------------------
# sparse integer polynomials: dict {exponent: nonzero int coefficient}

ZPoly = dict


def zp_from_int(k: int) -> ZPoly:
    return {0: k} if k else {}


def zp_is_zero(p: ZPoly) -> bool:
    return not p


def zp_add(a: ZPoly, b: ZPoly) -> ZPoly:
    out = dict(a)
    for e, c in b.items():
        n = out.get(e, 0) + c
        if n:
            out[e] = n
        else:
            out.pop(e, None)
    return out


def zp_neg(a: ZPoly) -> ZPoly:
    return {e: -c for e, c in a.items()}


def zp_sub(a: ZPoly, b: ZPoly) -> ZPoly:
    out = dict(a)
    for e, c in b.items():
        n = out.get(e, 0) - c
        if n:
            out[e] = n
        else:
            out.pop(e, None)
    return out


def zp_mul(a: ZPoly, b: ZPoly) -> ZPoly:
    if not a or not b:
        return {}
    out: ZPoly = {}
    for ea, ca in a.items():
        for eb, cb in b.items():
            e = ea + eb
            n = out.get(e, 0) + ca * cb
            if n:
                out[e] = n
            else:
                out.pop(e, None)
    return out


def zp_exact_div(a: ZPoly, b: ZPoly) -> ZPoly:
    """Exact polynomial division a/b in Z[t]; raises if not exact."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    if not a:
        return {}
    q: ZPoly = {}
    r = dict(a)
    db = max(b)
    lb = b[db]
    while r:
        dr = max(r)
        if dr < db:
            raise ArithmeticError("inexact polynomial division")
        qc = r[dr] // lb
        if qc * lb != r[dr]:
            raise ArithmeticError("inexact polynomial division")
        e = dr - db
        q[e] = qc
        for eb, cb in b.items():
            ne = eb + e
            n = r.get(ne, 0) - qc * cb
            if n:
                r[ne] = n
            else:
                r.pop(ne, None)
    return q


def zp_sign(p: ZPoly) -> int:
    if not p:
        return 0
    return 1 if p[max(p)] > 0 else -1


def zp_cauchy(p: ZPoly) -> Fraction:
    """Upper bound on the absolute value of every real root of p."""
    if not p:
        return Fraction(1)
    dmax = max(p)
    lead = abs(p[dmax])
    m = Fraction(0)
    for e, c in p.items():
        if e == dmax:
            continue
        r = Fraction(abs(c), lead)
        if r > m:
            m = r
    return Fraction(1) + m


def zp_eval(p: ZPoly, t0: Fraction) -> Fraction:
    acc = Fraction(0)
    for e, c in p.items():
        acc += c * t0**e
    return acc


class ThresholdLedger:
    """Accumulates sign-stability thresholds over a symbolic computation."""

    def __init__(self) -> None:
        self.bound = Fraction(1)
        self.queries = 0

    def observe(self, p: ZPoly) -> None:
        self.queries += 1
        b = zp_cauchy(p)
        if b > self.bound:
            self.bound = b

    def t0(self) -> Fraction:
        """A rational strictly above every recorded threshold."""
        return Fraction(int(self.bound) + 1)


# ---------------------------------------------------------------------------
# coefficient rings

class IntRing:
    zero = 0
    one = 1

    @staticmethod
    def from_int(k: int):
        return k

    @staticmethod
    def add(a, b):
        return a + b

    @staticmethod
    def sub(a, b):
        return a - b

    @staticmethod
    def mul(a, b):
        return a * b

    @staticmethod
    def exact_div(a, b):
        q = a // b
        if q * b != a:
            raise ArithmeticError("inexact integer division")
        return q

    @staticmethod
    def sign(a) -> int:
        return (a > 0) - (a < 0)


class PolyRing:
    zero: ZPoly = {}
    one: ZPoly = {0: 1}

    def __init__(self, ledger: Optional[ThresholdLedger] = None):
        self.ledger = ledger

    @staticmethod
    def from_int(k: int):
        return zp_from_int(k)

    add = staticmethod(zp_add)
    sub = staticmethod(zp_sub)
    mul = staticmethod(zp_mul)
    exact_div = staticmethod(zp_exact_div)

    def sign(self, p: ZPoly) -> int:
        if p and self.ledger is not None:
            self.ledger.observe(p)
        return zp_sign(p)


INT_RING = IntRing()


# ---------------------------------------------------------------------------
# the solver

OPTIMAL = "optimal"
INFEASIBLE = "infeasible"
UNBOUNDED = "unbounded"


@dataclass
class LPResult:
    status: str
    # objective value and variable values as (numerator, denominator) ring
    # pairs; meaningful only when status == "optimal"
    value: Optional[tuple] = None
    solution: Optional[list] = None

    def value_sign(self, ring) -> int:
        num, den = self.value
        return ring.sign(num) * ring.sign(den)


def lp_solve(nv: int, eqs: Sequence, les: Sequence, objective, ring) -> LPResult:
    """Maximize objective . x subject to eq rows (a, b): a.x = b and le rows
    a.x <= b, all variables free.  objective may be None (feasibility only).

    Rows are pairs (coeffs, rhs) of ring elements.
    """
    sign = ring.sign
    sub, mul, div = ring.sub, ring.mul, ring.exact_div
    zero, one = ring.zero, ring.one

    nslack = len(les)
    # columns: u_0..u_{nv-1}, w_0..w_{nv-1} (x = u - w), slacks, artificials
    base_cols = 2 * nv + nslack

    # first pass: rows normalized to nonnegative rhs, noting which need an
    # artificial.  An eq row always does; a le row does when the sign flip
    # turned its slack coefficient negative.
    raw: list[tuple[list, object, Optional[int], bool]] = []
    for coeffs, rhs in eqs:
        if sign(rhs) < 0:
            raw.append(([sub(zero, c) for c in coeffs], sub(zero, rhs), None, True))
        else:
            raw.append((list(coeffs), rhs, None, True))
    for i, (coeffs, rhs) in enumerate(les):
        if sign(rhs) < 0:
            raw.append(([sub(zero, c) for c in coeffs], sub(zero, rhs), i, True))
        else:
            raw.append((list(coeffs), rhs, i, False))

    nart = sum(1 for r in raw if r[3])
    total_cols = base_cols + nart  # rhs lives at index total_cols
    artificial = frozenset(range(base_cols, total_cols))

    rows: list[list] = []
    basis: list[int] = []
    art_rows: list[int] = []
    next_art = base_cols
    for coeffs, rhs, slack_idx, needs_art in raw:
        row = [zero] * (total_cols + 1)
        for k, c in enumerate(coeffs):
            if sign(c) == 0:
                continue
            row[k] = c
            row[nv + k] = sub(zero, c)
        if slack_idx is not None:
            row[2 * nv + slack_idx] = sub(zero, one) if needs_art else one
        row[total_cols] = rhs
        if needs_art:
            row[next_art] = one
            basis.append(next_art)
            art_rows.append(len(rows))
            next_art += 1
        else:
            basis.append(2 * nv + slack_idx)
        rows.append(row)

    m = len(rows)

    # phase-1 objective row (z_j - c_j format, for maximizing minus the sum
    # of artificials), reduced against the initial basis: subtracting each
    # artificial row zeroes its artificial column
    z1 = [zero] * (total_cols + 1)
    for i in art_rows:
        for j in range(total_cols + 1):
            if j in artificial:
                continue
            z1[j] = sub(z1[j], rows[i][j])

    # phase-2 objective row: -c; the initial basic columns all carry zero
    # objective coefficient, so no reduction is needed
    z2 = [zero] * (total_cols + 1)
    if objective is not None:
        for k, c in enumerate(objective):
            if sign(c) == 0:
                continue
            z2[k] = sub(zero, c)
            z2[nv + k] = c

    denom = one

    def pivot(r: int, c: int) -> None:
        nonlocal denom
        prow = rows[r]
        p = prow[c]
        for row in rows + [z1, z2]:
            if row is prow:
                continue
            f = row[c]
            if sign(f) == 0:
                for j in range(total_cols + 1):
                    row[j] = div(mul(row[j], p), denom)
            else:
                for j in range(total_cols + 1):
                    row[j] = div(sub(mul(row[j], p), mul(f, prow[j])), denom)
        denom = p
        basis[r] = c

    def run_phase(zrow, block_artificials: bool) -> str:
        while True:
            dsign = sign(denom)
            enter = None
            for j in range(total_cols):
                if block_artificials and j in artificial:
                    continue
                if sign(zrow[j]) * dsign < 0:
                    enter = j
                    break
            if enter is None:
                return OPTIMAL
            leave = None
            for i in range(m):
                if sign(rows[i][enter]) * dsign <= 0:
                    continue
                if leave is None:
                    leave = i
                    continue
                # rhs_i/col_i vs rhs_leave/col_leave by cross-multiplication;
                # both columns have positive true sign, so the ring-level
                # product test is direction-correct whatever the sign of d
                diff = sub(
                    mul(rows[i][-1], rows[leave][enter]),
                    mul(rows[leave][-1], rows[i][enter]),
                )
                s = sign(diff)
                if s < 0 or (s == 0 and basis[i] < basis[leave]):
                    leave = i
            if leave is None:
                return UNBOUNDED
            pivot(leave, enter)

    run_phase(z1, block_artificials=False)
    # phase 1 is never unbounded: its objective is bounded above by zero
    if sign(z1[-1]) != 0:
        return LPResult(INFEASIBLE)

    # drive surviving artificials out of the basis; rows that cannot be
    # pivoted on any structural column are redundant and get dropped
    drop: list[int] = []
    for i in range(m):
        if basis[i] not in artificial:
            continue
        col = next((j for j in range(base_cols) if sign(rows[i][j]) != 0), None)
        if col is None:
            drop.append(i)
        else:
            pivot(i, col)
    for i in reversed(drop):
        del rows[i], basis[i]
        m -= 1

    if objective is None:
        return LPResult(OPTIMAL, (zero, one), _extract(rows, basis, denom, nv, ring))

    status = run_phase(z2, block_artificials=True)
    if status != OPTIMAL:
        return LPResult(status)
    return LPResult(OPTIMAL, (z2[-1], denom), _extract(rows, basis, denom, nv, ring))


def _extract(rows, basis, denom, nv, ring):
    """Values of the original free variables as (num, den) ring pairs."""
    vals = {}
    for i, b in enumerate(basis):
        vals[b] = rows[i][-1]
    out = []
    for k in range(nv):
        num = ring.sub(vals.get(k, ring.zero), vals.get(nv + k, ring.zero))
        out.append((num, denom))
    return out


# ---------------------------------------------------------------------------
# helpers built on the solver

def lp_feasible(nv: int, eqs: Sequence, les: Sequence, ring) -> Optional[list]:
    """A feasible point as (num, den) pairs, or None."""
    res = lp_solve(nv, eqs, les, None, ring)
    return res.solution if res.status == OPTIMAL else None


def lp_strictly_feasible(nv: int, eqs: Sequence, strict: Sequence, weak: Sequence, ring) -> bool:
    """Is there a point satisfying eqs, weak rows a.x <= b, and every strict
    row a.x < b?  Decided by maximizing a slack t common to all strict rows,
    capped at 1: strict feasibility is optimal value > 0."""
    zero, one = ring.zero, ring.one
    eqs2 = [(list(c) + [zero], b) for c, b in eqs]
    les2 = [(list(c) + [zero], b) for c, b in weak]
    les2 += [(list(c) + [one], b) for c, b in strict]
    les2.append(([zero] * nv + [one], one))  # t <= 1
    obj = [zero] * nv + [one]
    res = lp_solve(nv + 1, eqs2, les2, obj, ring)
    return res.status == OPTIMAL and res.value_sign(ring) > 0


def lp_rank(rows: Sequence, ring) -> int:
    """Rank of a coefficient matrix, by fraction-free elimination."""
    M = [list(r) for r in rows]
    if not M:
        return 0
    ncols = len(M[0])
    sign, mul, sub, div = ring.sign, ring.mul, ring.sub, ring.exact_div
    rank = 0
    denom = ring.one
    for col in range(ncols):
        piv = next((r for r in range(rank, len(M)) if sign(M[r][col]) != 0), None)
        if piv is None:
            continue
        M[rank], M[piv] = M[piv], M[rank]
        p = M[rank][col]
        for r in range(rank + 1, len(M)):
            f = M[r][col]
            for c in range(ncols):
                M[r][c] = div(sub(mul(M[r][c], p), mul(f, M[rank][c])), denom)
        denom = p
        rank += 1
        if rank == len(M):
            break
    return rank


def lp_affine_dim(nv: int, eqs: Sequence, les: Sequence, ring) -> int:
    """Affine dimension of {x : eqs, les}, or -1 if empty.

    Implicit equalities among the le rows are found exactly: first one LP
    checks whether all rows can be slack simultaneously; if not, each row
    still under suspicion gets its own max-slack LP (capped at 1), and rows
    that can never be slack join the equality system.  The dimension is nv
    minus the rank of the final equality system.
    """
    zero, one = ring.zero, ring.one

    # maximize t with every le row given slack t, t <= 1
    eqs2 = [(list(c) + [zero], b) for c, b in eqs]
    les2 = [(list(c) + [one], b) for c, b in les]
    les2.append(([zero] * nv + [one], one))
    obj = [zero] * nv + [one]
    res = lp_solve(nv + 1, eqs2, les2, obj, ring)
    if res.status != OPTIMAL:
        return -1
    vsign = res.value_sign(ring)
    if vsign < 0:
        # even with shared slack the rows cannot be met at t = 0
        return -1

    eq_rows = [list(c) for c, _ in eqs]
    if vsign > 0:
        return nv - lp_rank(eq_rows, ring) if eq_rows else nv

    # some rows are tight over the whole set; identify exactly which
    points = [res.solution[:nv]]
    implicit: list[int] = []
    for i, (coeffs, rhs) in enumerate(les):
        if any(_slack_sign(coeffs, rhs, pt, ring) > 0 for pt in points):
            continue
        eqs3 = [(list(c) + [zero], b) for c, b in eqs]
        les3 = [
            (list(c) + ([one] if j == i else [zero]), b)
            for j, (c, b) in enumerate(les)
        ]
        les3.append(([zero] * nv + [one], one))
        r = lp_solve(nv + 1, eqs3, les3, obj, ring)
        # feasibility was established above, so r is optimal
        if r.value_sign(ring) > 0:
            points.append(r.solution[:nv])
        else:
            implicit.append(i)
    all_eq = eq_rows + [list(les[i][0]) for i in implicit]
    return nv - lp_rank(all_eq, ring) if all_eq else nv


def _slack_sign(coeffs, rhs, point, ring) -> int:
    """Sign of rhs - coeffs . point, for a point of (num, den) pairs sharing
    one denominator."""
    den = point[0][1] if point else ring.one
    acc = ring.mul(rhs, den)
    for c, (num, _) in zip(coeffs, point):
        acc = ring.sub(acc, ring.mul(c, num))
    return ring.sign(acc) * ring.sign(den)
