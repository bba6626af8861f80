"""Independent oracles and frozen expected values for the test suite.

The frozen constants below were computed by hand from closed-form integrals
and are re-derived symbolically (sympy) in test_oracles.py, so they never
depend on the code under test.  The quadrature and grid-scan oracles here are
deliberately different algorithms from the library's exact closed forms.
"""

from __future__ import annotations

import math
from fractions import Fraction as F

import numpy as np

# -- frozen closed-form values (validated against sympy in test_oracles) --

INT_IDENTITY = F(1, 2)          # int_0^1 x dx
INT_SQUARE = F(1, 3)            # int_0^1 x^2 dx
INT_X_TIMES_1MX = F(1, 6)       # int_0^1 x(1-x) dx
INT_MIN_TENT = F(1, 4)          # int_0^1 min(x, 1-x) dx
TENT_AT_QUARTER = F(1, 1)       # 4*min(x, 1-x) at x = 1/4

# Levin-Steckin fixture: p = min(x, 1-x), phi = x^2
LS_FIXTURE_LHS = F(7, 96)       # int p*phi
LS_FIXTURE_RHS = F(1, 12)       # int p * int phi
LS_FIXTURE_MARGIN = F(1, 96)

# Chebyshev fixtures
CHEBYSHEV_IDENT_LHS = F(1, 3)       # mean(x*x)
CHEBYSHEV_IDENT_RHS = F(1, 4)       # mean(x)*mean(x)
CHEBYSHEV_OPPOSITE_LHS = F(1, 6)    # mean(x*(1-x))
CHEBYSHEV_MARGIN = F(1, 12)

# Generalized Clausing fixture: p = q = q0 = 4*min(x,1-x), phi = x(1-x)
CLAUSING_FIXTURE_LHS = F(5, 24)     # int q0 * x(1-x)
CLAUSING_FIXTURE_RHS = F(2, 9)      # int x(1-x) * int q0^2
CLAUSING_FIXTURE_MARGIN = F(1, 72)
INT_Q0_SQUARED = F(4, 3)

# Hypothesis-necessity fixtures
# phi = x - 1 breaks phi(0)+phi(1) >= 0; p = q = q0
CLAUSING_NEG_LHS = F(-1, 2)
CLAUSING_NEG_RHS = F(-2, 3)
CLAUSING_NEG_MARGIN = F(-1, 6)
# p = x breaks symmetry; phi = x^2
LS_SYMDROP_LHS = F(1, 4)        # int x * x^2
LS_SYMDROP_RHS = F(1, 6)        # int x * int x^2
LS_SYMDROP_MARGIN = F(-1, 12)
# p = |2x - 1| breaks monotonicity on [0, 1/2]; phi = x^2
LS_MONODROP_LHS = F(3, 16)      # int |2x-1| * x^2
LS_MONODROP_RHS = F(1, 6)       # int |2x-1| * int x^2
LS_MONODROP_MARGIN = F(-1, 48)

# q0-sharpness fixture: p = q0, q = 12x^2 on [0,1/2] mirrored (unit integral)
SHARPNESS_LHS = F(4, 3)         # int q0 * q0
SHARPNESS_RHS = F(3, 2)         # int q0 * q
SHARPNESS_MARGIN = F(1, 6)


# -- quadrature oracle ----------------------------------------------------


def simpson_product(f, g, min_points: int = 10_000) -> float:
    """Composite Simpson quadrature of f*g on a refinement of both knot sets.

    Panels are aligned with the pieces (the integrand is quadratic inside
    each piece, which Simpson integrates exactly up to roundoff) and each
    piece is subdivided so the total point count reaches ``min_points``.
    """
    fx = np.array([float(x) for x in f.breakpoints])
    fy = np.array([float(y) for y in f.values])
    gx = np.array([float(x) for x in g.breakpoints])
    gy = np.array([float(y) for y in g.values])
    knots = np.unique(np.concatenate([fx, gx]))
    lo, hi = knots[0], knots[-1]
    total = 0.0
    for a, b in zip(knots[:-1], knots[1:]):
        panels = 2 * max(1, math.ceil(min_points * (b - a) / (hi - lo) / 2))
        grid = np.linspace(a, b, panels + 1)
        vals = np.interp(grid, fx, fy) * np.interp(grid, gx, gy)
        h = (b - a) / panels
        total += h / 3 * (vals[0] + vals[-1]
                          + 4 * vals[1::2].sum() + 2 * vals[2:-1:2].sum())
    return total


# -- brute-force M-class oracle --------------------------------------------

GRID_STEP = 1e-3
CROSSING_EPS = 1e-9
VALUE_BAND = 1e-12


def grid_m_oracle(f, direction: str = "M+"):
    """Grid-scan M+/M- decision at 1e-3 resolution.

    The x-grid is the uniform 1e-3 lattice merged with the function's own
    breakpoints and small neighborhoods of its mean crossings (without the
    crossing refinement, components thinner than the grid step would be
    missed).  Candidate thresholds c are the grid points and the midpoints
    between adjacent ones; a candidate is feasible iff it sits strictly right
    of every below-mean grid point and strictly left of every above-mean one,
    which reduces to the max/min comparison used below.

    Returns (member: bool, feasible_c: float | None).
    """
    bx = np.array([float(x) for x in f.breakpoints])
    by = np.array([float(y) for y in f.values])
    if direction == "M-":
        by = -by
    lo, hi = bx[0], bx[-1]
    mean = np.trapezoid(by, bx) / (hi - lo)

    crossings = []
    for x1, x2, y1, y2 in zip(bx[:-1], bx[1:], by[:-1], by[1:]):
        if (y1 - mean) * (y2 - mean) < 0:
            xc = x1 + (mean - y1) * (x2 - x1) / (y2 - y1)
            crossings += [xc - CROSSING_EPS, xc, xc + CROSSING_EPS]
    grid = np.unique(np.concatenate([
        np.arange(lo, hi + GRID_STEP / 2, GRID_STEP), bx,
        np.clip(np.array(crossings), lo, hi) if crossings else [],
    ]))
    vals = np.interp(grid, bx, by)
    below = grid[vals < mean - VALUE_BAND]
    above = grid[vals > mean + VALUE_BAND]
    max_below = below.max() if below.size else -np.inf
    min_above = above.min() if above.size else np.inf

    candidates = np.unique(np.concatenate([grid, (grid[:-1] + grid[1:]) / 2]))
    feasible = candidates[(candidates > max_below) & (candidates < min_above)]
    if feasible.size == 0:
        return False, None
    return True, float(feasible[feasible.size // 2])
