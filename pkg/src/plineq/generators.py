"""Seeded random PL functions that satisfy the checkers' hypotheses by construction.

All generators draw from small rational lattices (dyadic breakpoints, values
with denominator 32) so the outputs are exact in rational mode and still
representable without rounding as floats.  Construction, not rejection:
monotone functions come from sorted draws, convex ones from sorted slopes,
symmetric ones from mirroring a half-interval draw, so every output passes
its class predicates exactly.

Determinism contract: a fixed :class:`GenConfig` yields a bit-identical
function, and ``substream(seed, *indices)`` gives independent deterministic
streams for campaign trials and worker fan-out.
"""

from __future__ import annotations

import random
from dataclasses import dataclass, replace
from fractions import Fraction

from . import classes
from .plfunction import Number, PLFunction

UNIFORM = "uniform"
RANDOM = "random"

#: lattice denominators: breakpoints on j/1024, values on k/32
_GRID_DENOM = 1024
_VALUE_DENOM = 32
_VALUE_SPAN = 64  # draws are in [-2, 2] * value_scale before shaping


def substream(seed: int, *indices: int) -> int:
    """Derive a child seed; splitmix64-style so streams never collide."""
    x = seed & 0xFFFFFFFFFFFFFFFF
    for idx in indices:
        x = (x + 0x9E3779B97F4A7C15 + idx) & 0xFFFFFFFFFFFFFFFF
        z = x
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & 0xFFFFFFFFFFFFFFFF
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & 0xFFFFFFFFFFFFFFFF
        x = z ^ (z >> 31)
    return x


@dataclass(frozen=True)
class GenConfig:
    """Knobs for one random draw; equal configs give identical output."""

    seed: int
    n_breakpoints: int = 17
    value_scale: Number = 1
    grid: str = UNIFORM

    def __post_init__(self) -> None:
        if self.n_breakpoints < 3:
            raise ValueError("n_breakpoints must be at least 3")
        if self.grid not in (UNIFORM, RANDOM):
            raise ValueError(f"unknown grid kind {self.grid!r}")
        if self.value_scale < 0:
            raise ValueError("value_scale must be nonnegative")

    def rng(self) -> random.Random:
        return random.Random(self.seed)

    @property
    def scale(self) -> Fraction:
        return Fraction(self.value_scale)


def _grid(cfg: GenConfig, rng: random.Random, n: int,
          lo: Fraction, hi: Fraction) -> list[Fraction]:
    """n strictly increasing breakpoints from lo to hi inclusive."""
    if cfg.grid == UNIFORM:
        return [lo + (hi - lo) * Fraction(i, n - 1) for i in range(n)]
    ticks = sorted(rng.sample(range(1, _GRID_DENOM), n - 2))
    inner = [lo + (hi - lo) * Fraction(t, _GRID_DENOM) for t in ticks]
    return [lo] + inner + [hi]


def _draw(cfg: GenConfig, rng: random.Random) -> Fraction:
    """Symmetric lattice draw in [-2, 2] * value_scale."""
    return cfg.scale * Fraction(rng.randint(-_VALUE_SPAN, _VALUE_SPAN),
                                _VALUE_DENOM)


def _mirror(xs: list[Fraction], ys: list[Fraction]) -> PLFunction:
    """Extend a draw on [0, 1/2] to a symmetric function on [0, 1]."""
    full_x = xs + [1 - x for x in reversed(xs[:-1])]
    full_y = ys + list(reversed(ys[:-1]))
    return PLFunction(tuple(full_x), tuple(full_y))


def _half_points(n_breakpoints: int) -> int:
    """Breakpoint count on [0, 1/2] so the mirrored total is about n."""
    return max(2, (n_breakpoints + 1) // 2)


def gen_convex(cfg: GenConfig) -> PLFunction:
    """Convex PL function: sorted slope draws integrated from a random start."""
    rng = cfg.rng()
    xs = _grid(cfg, rng, cfg.n_breakpoints, Fraction(0), Fraction(1))
    slopes = sorted(4 * _draw(cfg, rng) for _ in range(len(xs) - 1))
    ys = [_draw(cfg, rng)]
    for i, s in enumerate(slopes):
        ys.append(ys[-1] + s * (xs[i + 1] - xs[i]))
    return PLFunction(tuple(xs), tuple(ys))


def gen_concave(cfg: GenConfig) -> PLFunction:
    return -gen_convex(cfg)


def gen_ls_weight(cfg: GenConfig) -> PLFunction:
    """Symmetric weight, nonnegative and non-decreasing on [0, 1/2]."""
    rng = cfg.rng()
    m = _half_points(cfg.n_breakpoints)
    xs = _grid(cfg, rng, m, Fraction(0), Fraction(1, 2))
    ys = [abs(_draw(cfg, rng))]
    for _ in range(m - 1):
        ys.append(ys[-1] + abs(_draw(cfg, rng)))
    return _mirror(xs, ys)


def gen_admissible_q(cfg: GenConfig) -> PLFunction:
    """Symmetric q, convex on [0, 1/2], q(0)=0, unit integral, nonnegative.

    Non-decreasing nonnegative slopes from a zero start give convexity and
    nonnegativity on the half interval; mirroring gives symmetry; dividing by
    the integral normalizes exactly.  All-zero draws are redrawn.
    """
    rng = cfg.rng()
    m = _half_points(cfg.n_breakpoints)
    xs = _grid(cfg, rng, m, Fraction(0), Fraction(1, 2))
    for attempt in range(64):
        slopes = sorted(abs(4 * _draw(cfg, rng)) for _ in range(m - 1))
        ys = [Fraction(0)]
        for i, s in enumerate(slopes):
            ys.append(ys[-1] + s * (xs[i + 1] - xs[i]))
        q = _mirror(xs, ys)
        z = q.integrate()
        if z > 0:
            return PLFunction(q.breakpoints, tuple(y / z for y in q.values))
    # value_scale == 0 is the only way to get here
    raise ValueError("cannot normalize an identically zero draw; "
                     "value_scale must be positive for gen_admissible_q")


def gen_concave_admissible_phi(cfg: GenConfig) -> PLFunction:
    """Concave phi with phi(0) + phi(1) >= 0 (shifted up when the draw fails)."""
    phi = gen_concave(cfg)
    s = phi.values[0] + phi.values[-1]
    if s < 0:
        half = Fraction(1, 2)
        phi = PLFunction(phi.breakpoints, tuple(y - s * half for y in phi.values))
    return phi


def gen_positive_concave(cfg: GenConfig) -> PLFunction:
    """Concave, nonnegative, with positive integral (classical Clausing phi).

    A concave PL function attains its minimum at an endpoint, so lifting by
    the worst endpoint value makes it nonnegative.  Flat-zero draws redraw.
    """
    for attempt in range(64):
        phi = gen_concave(replace(cfg, seed=substream(cfg.seed, attempt)))
        lift = min(phi.values[0], phi.values[-1])
        if lift < 0:
            phi = PLFunction(phi.breakpoints,
                             tuple(y - lift for y in phi.values))
        if phi.integrate() > 0:
            return phi
    raise ValueError("cannot draw a positive concave function; "
                     "value_scale must be positive for gen_positive_concave")


def gen_monotone(cfg: GenConfig,
                 direction: str = classes.NONDECREASING) -> PLFunction:
    """Monotone function from sorted draws."""
    rng = cfg.rng()
    xs = _grid(cfg, rng, cfg.n_breakpoints, Fraction(0), Fraction(1))
    ys = sorted(_draw(cfg, rng) for _ in range(len(xs)))
    if direction == classes.NONINCREASING:
        ys.reverse()
    elif direction != classes.NONDECREASING:
        raise ValueError(f"unknown direction {direction!r}")
    return PLFunction(tuple(xs), tuple(ys))


def gen_zero_mean_convex(cfg: GenConfig, lo: Number = 0,
                         hi: Number = Fraction(1, 2)) -> PLFunction:
    """Convex h on [lo, hi] with h(lo) <= 0 and exactly zero integral.

    Draw a convex anchor g with g(lo) = 0; if mean(g) >= 0, shift down by the
    mean (then h(lo) = -mean <= 0).  Otherwise add the linear a*(x - lo) that
    cancels the mean; adding a linear keeps convexity and h(lo) = 0.  This is
    the shape of K*q - phi in the generalized Clausing proof, and the lemma
    under test says every such h lands in M+.
    """
    rng = cfg.rng()
    lo, hi = Fraction(lo), Fraction(hi)
    xs = _grid(cfg, rng, cfg.n_breakpoints, lo, hi)
    slopes = sorted(4 * _draw(cfg, rng) for _ in range(len(xs) - 1))
    ys = [Fraction(0)]
    for i, s in enumerate(slopes):
        ys.append(ys[-1] + s * (xs[i + 1] - xs[i]))
    g = PLFunction(tuple(xs), tuple(ys))
    m = g.mean()
    if m >= 0:
        return PLFunction(g.breakpoints, tuple(y - m for y in g.values))
    a = -2 * m / (hi - lo)
    return PLFunction(g.breakpoints,
                      tuple(y + a * (x - lo) for x, y in zip(xs, ys)))


def gen_unconstrained(cfg: GenConfig) -> PLFunction:
    """Generic PL function with independent lattice values (no class target)."""
    rng = cfg.rng()
    xs = _grid(cfg, rng, cfg.n_breakpoints, Fraction(0), Fraction(1))
    ys = [_draw(cfg, rng) for _ in range(len(xs))]
    return PLFunction(tuple(xs), tuple(ys))
