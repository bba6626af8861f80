"""Adversarial margin minimization over projected PL parameter space.

A :class:`SearchProblem` names an inequality and the hypotheses to drop; the
remaining hypotheses are enforced by a projection from free parameter vectors
to admissible functions (sorting for monotonicity, slope-sorting for
convexity, mirroring for symmetry, clipping for nonnegativity, shifting and
scaling for the anchored/normalized kernel constraints).  With nothing
dropped every candidate satisfies all hypotheses, so a margin below zero
would falsify the theorem itself.

The optimizer is deterministic multistart coordinate descent on breakpoint
values over a fixed uniform grid.  Objectives are evaluated in float for
speed; any candidate margin is trusted only after exact rational
re-evaluation of the candidate's rational master, so no counterexample can
be a floating-point artifact.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Optional

from . import inequalities, sampling, wire
from .generators import substream
from .inequalities import (CHEBYSHEV, CHEBYSHEV_M, CLAUSING_CLASSIC,
                           CLAUSING_GENERAL, LEVIN_STECKIN, LS_SYMMETRIC,
                           MINUS_NONDECREASING, MINUS_NONINCREASING,
                           PLUS_NONDECREASING, PLUS_NONINCREASING,
                           Q0_SHARPNESS)
from .plfunction import PLFunction, linear_combine, tent

#: parameter values are clamped here, normalizing candidates to sup-norm <= 8
PARAM_CLAMP = 8.0

#: float margins under this trigger exact rational re-evaluation in sweeps
RECHECK_BAND = 1e-6

P_NONNEGATIVE = "p_nonnegative"
P_SYMMETRIC = "p_symmetric"
P_NONDECREASING_ON_HALF = "p_nondecreasing_on_half"
Q_NONNEGATIVE = "q_nonnegative"
Q_SYMMETRIC = "q_symmetric"
Q_CONVEX_ON_HALF = "q_convex_on_half"
Q_VANISHES_AT_ZERO = "q_vanishes_at_zero"
Q_UNIT_INTEGRAL = "q_unit_integral"
PHI_CONVEX = "phi_convex"
PHI_CONCAVE = "phi_concave"
PHI_ENDPOINT_SUM_NONNEGATIVE = "phi_endpoint_sum_nonnegative"
F_MONOTONE = "f_monotone"
G_MONOTONE = "g_monotone"
F_IN_M_CLASS = "f_in_m_class"

HYPOTHESES = {
    LEVIN_STECKIN: (P_SYMMETRIC, P_NONDECREASING_ON_HALF, PHI_CONVEX),
    LS_SYMMETRIC: (P_SYMMETRIC, P_NONDECREASING_ON_HALF, PHI_CONVEX),
    CLAUSING_GENERAL: (P_NONNEGATIVE, P_SYMMETRIC, P_NONDECREASING_ON_HALF,
                       Q_NONNEGATIVE, Q_SYMMETRIC, Q_CONVEX_ON_HALF,
                       Q_VANISHES_AT_ZERO, Q_UNIT_INTEGRAL,
                       PHI_CONCAVE, PHI_ENDPOINT_SUM_NONNEGATIVE),
    CLAUSING_CLASSIC: (P_NONNEGATIVE, P_SYMMETRIC, P_NONDECREASING_ON_HALF,
                       PHI_CONCAVE, PHI_ENDPOINT_SUM_NONNEGATIVE),
    CHEBYSHEV: (F_MONOTONE, G_MONOTONE),
    CHEBYSHEV_M: (F_IN_M_CLASS, G_MONOTONE),
    Q0_SHARPNESS: (P_NONNEGATIVE, P_SYMMETRIC, P_NONDECREASING_ON_HALF,
                   Q_NONNEGATIVE, Q_SYMMETRIC, Q_CONVEX_ON_HALF,
                   Q_VANISHES_AT_ZERO, Q_UNIT_INTEGRAL),
}


class SearchError(ValueError):
    """Bad search configuration (unknown hypotheses, zero budget, ...)."""


@dataclass(frozen=True)
class SearchProblem:
    inequality: str
    dropped_hypotheses: frozenset[str] = frozenset()
    n_breakpoints: int = 17
    budget: int = 2000
    seed: int = 0
    variant: str = PLUS_NONDECREASING  # chebyshev_m only

    def __post_init__(self) -> None:
        if self.inequality not in HYPOTHESES:
            raise SearchError(f"unknown inequality {self.inequality!r}")
        if self.budget <= 0:
            raise SearchError("budget must be positive")
        unknown = set(self.dropped_hypotheses) - set(HYPOTHESES[self.inequality])
        if unknown:
            raise SearchError(
                f"{self.inequality} has no hypotheses {sorted(unknown)}; "
                f"known: {HYPOTHESES[self.inequality]}")


@dataclass(frozen=True)
class SearchResult:
    inequality: str
    dropped_hypotheses: tuple[str, ...]
    best_margin: float
    best_inputs: dict
    iterations_used: int
    violated: bool
    trace: tuple[tuple[int, float], ...]
    seed: int
    variant: Optional[str] = None


# -- projections --------------------------------------------------------


def _clamp(params: list[float]) -> list[Fraction]:
    return [Fraction(min(PARAM_CLAMP, max(-PARAM_CLAMP, v))) for v in params]


def _uniform_grid(n: int, lo: Fraction = Fraction(0),
                  hi: Fraction = Fraction(1)) -> list[Fraction]:
    return [lo + (hi - lo) * Fraction(i, n - 1) for i in range(n)]


def _sort_prefix(vals: list[Fraction], upto: int) -> list[Fraction]:
    return sorted(vals[:upto + 1]) + vals[upto + 1:]


def _convexify(vals: list[Fraction], upto: Optional[int] = None,
               concave: bool = False) -> list[Fraction]:
    """Rebuild values so slopes are sorted (uniform grid) up to index ``upto``."""
    upto = len(vals) - 1 if upto is None else upto
    diffs = [vals[i + 1] - vals[i] for i in range(upto)]
    diffs.sort(reverse=concave)
    out = [vals[0]]
    for d in diffs:
        out.append(out[-1] + d)
    return out + vals[upto + 1:]


def _mirror_values(half_vals: list[Fraction]) -> list[Fraction]:
    return half_vals + list(reversed(half_vals[:-1]))


def _build_weight(params: list[Fraction], n: int, active: set[str]) -> PLFunction:
    m = (n + 1) // 2
    if P_SYMMETRIC in active:
        vals = list(params[:m])
        if P_NONDECREASING_ON_HALF in active:
            vals.sort()
        if P_NONNEGATIVE in active:
            vals = [max(v, Fraction(0)) for v in vals]
        full = _mirror_values(vals)
        return PLFunction(tuple(_uniform_grid(2 * m - 1)), tuple(full))
    vals = list(params[:n])
    if P_NONDECREASING_ON_HALF in active:
        vals = _sort_prefix(vals, (n - 1) // 2)
    if P_NONNEGATIVE in active:
        vals = [max(v, Fraction(0)) for v in vals]
    return PLFunction(tuple(_uniform_grid(n)), tuple(vals))


def _build_kernel(params: list[Fraction], n: int, active: set[str]) -> PLFunction:
    m = (n + 1) // 2
    if Q_SYMMETRIC in active:
        vals = list(params[:m])
        if Q_CONVEX_ON_HALF in active:
            vals = _convexify(vals)
        if Q_VANISHES_AT_ZERO in active:
            v0 = vals[0]
            vals = [v - v0 for v in vals]
        if Q_NONNEGATIVE in active:
            vals = [max(v, Fraction(0)) for v in vals]
        q = PLFunction(tuple(_uniform_grid(2 * m - 1)),
                       tuple(_mirror_values(vals)))
    else:
        vals = list(params[:n])
        if Q_CONVEX_ON_HALF in active:
            vals = _convexify(vals, upto=(n - 1) // 2)
        if Q_VANISHES_AT_ZERO in active:
            v0 = vals[0]
            vals = [v - v0 for v in vals]
        if Q_NONNEGATIVE in active:
            vals = [max(v, Fraction(0)) for v in vals]
        q = PLFunction(tuple(_uniform_grid(n)), tuple(vals))
    if Q_UNIT_INTEGRAL in active:
        z = q.integrate()
        if z > 0:
            q = q * (1 / z)
        else:
            # adding a multiple of the tent kernel fixes the integral while
            # keeping symmetry, half-convexity and the zero anchor
            q = linear_combine(Fraction(1), q, 1 - z, tent())
    return q


def _build_phi(params: list[Fraction], n: int, active: set[str]) -> PLFunction:
    vals = list(params[:n])
    if PHI_CONVEX in active:
        vals = _convexify(vals)
    if PHI_CONCAVE in active:
        vals = _convexify(vals, concave=True)
    if PHI_ENDPOINT_SUM_NONNEGATIVE in active:
        s = vals[0] + vals[-1]
        if s < 0:
            vals = [v - s / 2 for v in vals]
    return PLFunction(tuple(_uniform_grid(n)), tuple(vals))


def _build_monotone(params: list[Fraction], n: int, enforce: bool,
                    descending: bool = False) -> PLFunction:
    vals = list(params[:n])
    if enforce:
        vals.sort(reverse=descending)
    return PLFunction(tuple(_uniform_grid(n)), tuple(vals))


@dataclass(frozen=True)
class _ProblemSpec:
    roles: tuple[str, ...]
    sizes: tuple[int, ...]
    build: Callable[[list[Fraction]], dict[str, PLFunction]]


def _problem_spec(problem: SearchProblem) -> _ProblemSpec:
    n = problem.n_breakpoints
    m = (n + 1) // 2
    active = set(HYPOTHESES[problem.inequality]) - set(problem.dropped_hypotheses)
    name = problem.inequality

    if name in (LEVIN_STECKIN, LS_SYMMETRIC):
        p_size = m if P_SYMMETRIC in active else n
        sizes = (p_size, n)

        def build(vec):
            return {"p": _build_weight(vec[:p_size], n, active),
                    "phi": _build_phi(vec[p_size:], n, active)}
        return _ProblemSpec(("p", "phi"), sizes, build)

    if name == CLAUSING_GENERAL:
        p_size = m if P_SYMMETRIC in active else n
        q_size = m if Q_SYMMETRIC in active else n
        sizes = (p_size, q_size, n)

        def build(vec):
            return {"p": _build_weight(vec[:p_size], n, active),
                    "q": _build_kernel(vec[p_size:p_size + q_size], n, active),
                    "phi": _build_phi(vec[p_size + q_size:], n, active)}
        return _ProblemSpec(("p", "q", "phi"), sizes, build)

    if name == CLAUSING_CLASSIC:
        p_size = m if P_SYMMETRIC in active else n
        sizes = (p_size, n)

        def build(vec):
            return {"p": _build_weight(vec[:p_size], n, active),
                    "phi": _build_phi(vec[p_size:], n, active)}
        return _ProblemSpec(("p", "phi"), sizes, build)

    if name == Q0_SHARPNESS:
        p_size = m if P_SYMMETRIC in active else n
        q_size = m if Q_SYMMETRIC in active else n
        sizes = (p_size, q_size)

        def build(vec):
            return {"p": _build_weight(vec[:p_size], n, active),
                    "q": _build_kernel(vec[p_size:], n, active)}
        return _ProblemSpec(("p", "q"), sizes, build)

    if name == CHEBYSHEV:

        def build(vec):
            return {"f": _build_monotone(vec[:n], n, F_MONOTONE in active),
                    "g": _build_monotone(vec[n:], n, G_MONOTONE in active)}
        return _ProblemSpec(("f", "g"), (n, n), build)

    if name == CHEBYSHEV_M:
        # monotone construction is the simplest M-class member: non-decreasing
        # functions are in M+, non-increasing ones in M-
        f_desc = problem.variant in (MINUS_NONDECREASING, MINUS_NONINCREASING)
        g_desc = problem.variant in (PLUS_NONINCREASING, MINUS_NONINCREASING)

        def build(vec):
            return {"f": _build_monotone(vec[:n], n, F_IN_M_CLASS in active,
                                         descending=f_desc),
                    "g": _build_monotone(vec[n:], n, G_MONOTONE in active,
                                         descending=g_desc)}
        return _ProblemSpec(("f", "g"), (n, n), build)

    raise SearchError(f"unknown inequality {name!r}")


# -- canonical multistart shapes -----------------------------------------


def _ramp(k: int) -> list[float]:
    return [i / (k - 1) for i in range(k)]


def _fall(k: int) -> list[float]:
    return [1 - i / (k - 1) for i in range(k)]


def _square(k: int) -> list[float]:
    return [(i / (k - 1)) ** 2 for i in range(k)]


def _bump(k: int) -> list[float]:
    return [(i / (k - 1)) * (1 - i / (k - 1)) for i in range(k)]


def _neg_ramp(k: int) -> list[float]:
    return [i / (k - 1) - 1 for i in range(k)]


_SHAPES = (_ramp, _fall, _square, _bump, _neg_ramp)


def _canonical_starts(spec: _ProblemSpec) -> list[list[float]]:
    """Same shape everywhere, plus single-role substitutions over two bases.

    The substitution families make the known counterexample seeds reachable
    directly: a falling weight with a square phi, a square phi with a plain
    ramp weight, the (x - 1) phi against ramp-shaped weight and kernel.
    """
    starts = [sum((shape(k) for k in spec.sizes), []) for shape in _SHAPES]
    for base in (_ramp, _square):
        for role_idx in range(len(spec.sizes)):
            for shape in _SHAPES:
                if shape is base:
                    continue
                parts = [(shape if i == role_idx else base)(k)
                         for i, k in enumerate(spec.sizes)]
                starts.append(sum(parts, []))
    return starts


# -- optimizer -----------------------------------------------------------


def minimize_margin(problem: SearchProblem) -> SearchResult:
    """Multistart coordinate descent; violations are rational-verified.

    Deterministic in (problem.seed, budget).  The returned ``best_margin`` is
    the exact rational margin of the best candidate, rounded once to float,
    so replaying ``best_inputs`` reproduces it.
    """
    spec = _problem_spec(problem)
    rng = random.Random(substream(problem.seed, 0x5EA7C4))
    variant = problem.variant if problem.inequality == CHEBYSHEV_M else None

    evals = 0
    best_value = float("inf")
    best_params: Optional[list[float]] = None
    trace: list[tuple[int, float]] = []

    def objective(params: list[float]) -> float:
        nonlocal evals, best_value, best_params
        funcs = spec.build(_clamp(params))
        floats = {r: f.to_float() for r, f in funcs.items()}
        value = float(inequalities.margin_only(problem.inequality, floats,
                                               variant=variant))
        evals += 1
        if value < best_value:
            best_value = value
            best_params = list(params)
            trace.append((evals, value))
        return value

    dim = sum(spec.sizes)
    starts = _canonical_starts(spec)
    n_random = max(3, problem.budget // 2500)
    for _ in range(n_random):
        starts.append([rng.uniform(-2.0, 2.0) for _ in range(dim)])

    per_start = max(1, problem.budget // len(starts))
    for start in starts:
        if evals >= problem.budget:
            break
        _coordinate_descent(objective, start,
                            min(per_start, problem.budget - evals))

    assert best_params is not None
    functions = spec.build(_clamp(best_params))
    exact_margin = inequalities.margin_only(
        problem.inequality, functions, variant=variant)
    return SearchResult(
        inequality=problem.inequality,
        dropped_hypotheses=tuple(sorted(problem.dropped_hypotheses)),
        best_margin=float(exact_margin),
        best_inputs={r: wire.encode_function(f) for r, f in functions.items()},
        iterations_used=evals,
        violated=exact_margin < 0,
        trace=tuple(trace),
        seed=problem.seed,
        variant=variant,
    )


def _coordinate_descent(objective: Callable[[list[float]], float],
                        start: list[float], budget: int,
                        step0: float = 0.5, min_step: float = 1e-4) -> None:
    """Cyclic +/- probes per coordinate, halving the step on full misses."""
    if budget <= 0:
        return
    params = list(start)
    best = objective(params)
    used = 1
    step = step0
    while used < budget and step >= min_step:
        improved = False
        for i in range(len(params)):
            for delta in (step, -step):
                if used >= budget:
                    return
                cand = list(params)
                cand[i] += delta
                value = objective(cand)
                used += 1
                if value < best:
                    best, params = value, cand
                    improved = True
                    break
        if not improved:
            step /= 2


# -- the necessity suite --------------------------------------------------


def hypothesis_necessity_suite(budget: int, seed: int,
                               n_breakpoints: int = 17
                               ) -> dict[str, SearchResult]:
    """Drop each hypothesis of the two main theorems in turn and search.

    Keys are ``inequality:hypothesis``; the ``inequality:none`` controls keep
    every hypothesis active and must find nothing.
    """
    if budget < 1000:
        raise SearchError("necessity suite needs budget >= 1000")
    results: dict[str, SearchResult] = {}
    for idx, name in enumerate((LEVIN_STECKIN, CLAUSING_GENERAL)):
        results[f"{name}:none"] = minimize_margin(SearchProblem(
            name, frozenset(), n_breakpoints, budget,
            substream(seed, idx, 0)))
        for j, hyp in enumerate(HYPOTHESES[name]):
            results[f"{name}:{hyp}"] = minimize_margin(SearchProblem(
                name, frozenset({hyp}), n_breakpoints, budget,
                substream(seed, idx, j + 1)))
    return results


# -- the all-hypotheses-active sweep --------------------------------------

SWEEP_CHECKERS = (LEVIN_STECKIN, CHEBYSHEV, CHEBYSHEV_M, CLAUSING_GENERAL,
                  CLAUSING_CLASSIC, Q0_SHARPNESS)


@dataclass
class SweepTally:
    trials: int = 0
    min_margin: float = float("inf")
    rechecked: int = 0
    exact_negatives: int = 0


def no_violation_sweep(total: int, seed: int, n_breakpoints: int = 9
                       ) -> dict[str, SweepTally]:
    """Evaluate admissible random candidates across the six nonnegative-margin
    checkers.  Margins are screened in float; anything within RECHECK_BAND of
    zero is re-evaluated exactly, so a rational-mode violation cannot hide.
    """
    tallies = {name: SweepTally() for name in SWEEP_CHECKERS}
    for i in range(total):
        name = SWEEP_CHECKERS[i % len(SWEEP_CHECKERS)]
        funcs, variant = sampling.draw_inputs(name, substream(seed, i),
                                              n_breakpoints=n_breakpoints)
        floats = {r: f.to_float() for r, f in funcs.items()}
        margin = float(inequalities.margin_only(name, floats, variant=variant))
        tally = tallies[name]
        tally.trials += 1
        tally.min_margin = min(tally.min_margin, margin)
        if margin < RECHECK_BAND:
            tally.rechecked += 1
            exact = inequalities.margin_only(name, funcs, variant=variant)
            if exact < 0:
                tally.exact_negatives += 1
    return tallies
