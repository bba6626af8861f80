"""Membership predicates for the function classes the inequality checkers need.

Every predicate returns a :class:`ClassReport` (or :class:`MWitness` for the
M+/M- classes) instead of a bare bool, recording the tolerance used and the
first violation found.  Tolerances default to 0 in rational mode and to small
float bands otherwise, so exact inputs are judged exactly.

The M+ class contains functions whose below-mean points all lie left of some
threshold c and whose above-mean points all lie right of it; M- mirrors the
roles.  For a continuous PL function both point sets are finite unions of
intervals, so membership reduces to comparing sup(below-set) with
inf(above-set), and the admissible thresholds form the interval between them.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .plfunction import FLOAT, RATIONAL, Number, PLFunction

CONVEX = "convex"
CONCAVE = "concave"
SYMMETRIC = "symmetric"
NONNEGATIVE = "nonnegative"
NONDECREASING = "nondecreasing_on"
NONINCREASING = "nonincreasing_on"

M_PLUS = "M+"
M_MINUS = "M-"

#: default tolerance for class predicates in float mode
FLOAT_CLASS_TOL = 1e-12


@dataclass(frozen=True)
class ClassReport:
    """Outcome of testing one named class; holds iff no violation found."""

    class_name: str
    holds: bool
    tolerance: Number
    violation_at: Optional[Number] = None
    violation_magnitude: Optional[Number] = None


@dataclass(frozen=True)
class MWitness:
    """M+/M- classification with the admissible threshold interval.

    When the function is in class, every c in [c_lo, c_hi] separates the
    below-mean points from the above-mean ones (up to the tolerance band).
    When it is not, ``certificate`` is a pair (x_below, x_above) that refutes
    every candidate c: the above-mean point sits left of the below-mean one
    (for M+; roles mirrored for M-).
    """

    in_class: bool
    direction: str
    mean: Number
    c_lo: Optional[Number] = None
    c_hi: Optional[Number] = None
    certificate: Optional[tuple[Number, Number]] = None

    @property
    def holds(self) -> bool:
        return self.in_class


def default_tol(f: PLFunction, tol: Optional[Number]) -> Number:
    if tol is not None:
        return tol
    return 0 if f.mode == RATIONAL else FLOAT_CLASS_TOL


def _interval(f: PLFunction, on: Optional[tuple[Number, Number]]) -> PLFunction:
    if on is None:
        return f
    lo, hi = on
    if lo == f.domain_lo and hi == f.domain_hi:
        return f
    return f.restrict(lo, hi)


def is_convex(f: PLFunction, on: Optional[tuple[Number, Number]] = None,
              tol: Optional[Number] = None) -> ClassReport:
    """Slopes must be non-decreasing on the interval.

    The comparison uses an additive band tol*(1 + max|slope|) so that the
    test is scale-aware; with tol=0 (rational mode) it is exact.
    """
    g = _interval(f, on)
    tol = default_tol(f, tol)
    slopes = g.slopes()
    band = tol * (1 + max(abs(s) for s in slopes)) if tol else 0
    for i in range(len(slopes) - 1):
        drop = slopes[i] - slopes[i + 1]
        if drop > band:
            return ClassReport(CONVEX, False, band,
                               violation_at=g.breakpoints[i + 1],
                               violation_magnitude=drop)
    return ClassReport(CONVEX, True, band)


def is_concave(f: PLFunction, on: Optional[tuple[Number, Number]] = None,
               tol: Optional[Number] = None) -> ClassReport:
    rep = is_convex(-f, on, tol)
    return ClassReport(CONCAVE, rep.holds, rep.tolerance,
                       rep.violation_at, rep.violation_magnitude)


def is_symmetric(f: PLFunction, tol: Optional[Number] = None) -> ClassReport:
    """f must agree with its mirror image at every refined breakpoint."""
    tol = default_tol(f, tol)
    mirrored = f.reflect()
    grid = f.resample(mirrored.breakpoints).breakpoints
    for x in grid:
        gap = abs(f.eval(x) - mirrored.eval(x))
        if gap > tol:
            return ClassReport(SYMMETRIC, False, tol,
                               violation_at=x, violation_magnitude=gap)
    return ClassReport(SYMMETRIC, True, tol)


def is_monotone_on(f: PLFunction, on: Optional[tuple[Number, Number]] = None,
                   direction: str = NONDECREASING,
                   tol: Optional[Number] = None) -> ClassReport:
    if direction not in (NONDECREASING, NONINCREASING):
        raise ValueError(f"unknown direction {direction!r}")
    g = _interval(f, on)
    tol = default_tol(f, tol)
    sign = 1 if direction == NONDECREASING else -1
    ys, xs = g.values, g.breakpoints
    for i in range(len(ys) - 1):
        step = sign * (ys[i + 1] - ys[i])
        if step < -tol:
            return ClassReport(direction, False, tol,
                               violation_at=xs[i + 1],
                               violation_magnitude=-step)
    return ClassReport(direction, True, tol)


def is_nonnegative(f: PLFunction, tol: Optional[Number] = None) -> ClassReport:
    """PL minimum occurs at a breakpoint, so checking values suffices."""
    tol = default_tol(f, tol)
    for x, y in zip(f.breakpoints, f.values):
        if y < -tol:
            return ClassReport(NONNEGATIVE, False, tol,
                               violation_at=x, violation_magnitude=-y)
    return ClassReport(NONNEGATIVE, True, tol)


def _strict_level_sets(f: PLFunction, lo_cut: Number, hi_cut: Number):
    """sup{x : f(x) < lo_cut} and inf{x : f(x) > hi_cut}, with witnesses.

    Returns (sup_below, below_piece, inf_above, above_piece) where the piece
    entries are (left, right) sub-intervals of positive length whose interior
    realizes the strict inequality near the sup/inf; None where the set is
    empty.  Exact for rational functions.
    """
    xs, ys = f.breakpoints, f.values

    def cross(x1, x2, y1, y2, t):
        return x1 + (t - y1) * (x2 - x1) / (y2 - y1)

    sup_below = below_piece = None
    inf_above = above_piece = None
    for i in range(len(xs) - 1):
        x1, x2, y1, y2 = xs[i], xs[i + 1], ys[i], ys[i + 1]
        # where f < lo_cut on this piece
        if y1 < lo_cut or y2 < lo_cut:
            if y1 < lo_cut and y2 < lo_cut:
                seg = (x1, x2)
            elif y1 < lo_cut:  # rising through the cut
                seg = (x1, cross(x1, x2, y1, y2, lo_cut))
            else:              # falling through the cut
                seg = (cross(x1, x2, y1, y2, lo_cut), x2)
            if sup_below is None or seg[1] > sup_below:
                sup_below, below_piece = seg[1], seg
        # where f > hi_cut on this piece
        if y1 > hi_cut or y2 > hi_cut:
            if y1 > hi_cut and y2 > hi_cut:
                seg = (x1, x2)
            elif y1 > hi_cut:  # falling through the cut
                seg = (x1, cross(x1, x2, y1, y2, hi_cut))
            else:              # rising through the cut
                seg = (cross(x1, x2, y1, y2, hi_cut), x2)
            if inf_above is None or seg[0] < inf_above:
                inf_above, above_piece = seg[0], seg
    return sup_below, below_piece, inf_above, above_piece


def classify_m(f: PLFunction, direction: str = M_PLUS,
               tol: Optional[Number] = None) -> MWitness:
    """Decide M+/M- membership and extract the witness interval for c.

    Strictness is softened by a band of width 2*tol around the mean so that
    pieces sitting exactly on the mean never refute membership.
    """
    if direction == M_MINUS:
        w = classify_m(-f, M_PLUS, tol)
        cert = None
        if w.certificate is not None:
            # -f has an above-mean point left of a below-mean one; for f the
            # same pair is a below-mean point left of an above-mean one.
            x_below, x_above = w.certificate
            cert = (x_above, x_below)
        return MWitness(w.in_class, M_MINUS, -w.mean, w.c_lo, w.c_hi, cert)
    if direction != M_PLUS:
        raise ValueError(f"unknown M-class direction {direction!r}")

    tol = default_tol(f, tol)
    mean = f.mean()
    sup_b, below_piece, inf_a, above_piece = _strict_level_sets(
        f, mean - tol, mean + tol)

    lo, hi = f.domain_lo, f.domain_hi
    c_lo = lo if sup_b is None else sup_b
    c_hi = hi if inf_a is None else inf_a
    if c_lo <= c_hi:
        return MWitness(True, M_PLUS, mean, c_lo, c_hi)

    # Not in class: exhibit an above-mean point strictly left of a
    # below-mean point.  Points near inf(above) and sup(below) qualify.
    half = Fraction(1, 2) if f.mode == RATIONAL else 0.5
    bl, br = below_piece
    x_below = br if f.eval(br) < mean - tol else (max(bl, inf_a) + br) * half
    al, ar = above_piece
    x_above = al if f.eval(al) > mean + tol else (al + min(ar, x_below)) * half
    return MWitness(False, M_PLUS, mean, certificate=(x_below, x_above))
