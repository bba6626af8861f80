"""Continuous piecewise-linear functions on a closed interval, with exact calculus.

A :class:`PLFunction` is the linear interpolant of ``values`` over strictly
increasing ``breakpoints``.  All numbers are kept either as
:class:`fractions.Fraction` (rational mode, every operation exact) or as
``float`` (float mode, operations exact up to roundoff).  Integrals of PL
functions and of products of two PL functions have closed forms, so no
quadrature error ever enters: the trapezoid rule is exact per linear piece,
and the product of two linears is a quadratic with an exact two-point rule.
"""

from __future__ import annotations

import math
from bisect import bisect_left
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Sequence, Union

Number = Union[int, float, Fraction]

#: breakpoints closer than this are merged when refining float-mode functions
FLOAT_DEDUP = 1e-15

RATIONAL = "rational"
FLOAT = "float"


class DomainError(ValueError):
    """Evaluation point or operand domain outside the function's domain."""


def _is_finite(v: Number) -> bool:
    if isinstance(v, float):
        return math.isfinite(v)
    return True


def _normalize(nums: Iterable[Number]) -> tuple[tuple[Number, ...], str]:
    """Return numbers as all-Fraction or all-float, plus the detected mode."""
    nums = tuple(nums)
    if any(isinstance(v, float) for v in nums):
        return tuple(float(v) for v in nums), FLOAT
    return tuple(v if isinstance(v, Fraction) else Fraction(v) for v in nums), RATIONAL


@dataclass(frozen=True)
class PLFunction:
    """Continuous piecewise-linear function given by breakpoints and values.

    Invariants: breakpoints strictly increasing, same length as values
    (at least 2), all entries finite.  The function is immutable; every
    operation returns a new instance.
    """

    breakpoints: tuple[Number, ...]
    values: tuple[Number, ...]
    mode: str = field(init=False, compare=False)

    def __post_init__(self) -> None:
        xs, x_mode = _normalize(self.breakpoints)
        ys, y_mode = _normalize(self.values)
        if FLOAT in (x_mode, y_mode):
            xs = tuple(float(x) for x in xs)
            ys = tuple(float(y) for y in ys)
            mode = FLOAT
        else:
            mode = RATIONAL
        if len(xs) != len(ys):
            raise ValueError(f"{len(xs)} breakpoints vs {len(ys)} values")
        if len(xs) < 2:
            raise ValueError("need at least 2 breakpoints")
        if not all(_is_finite(v) for v in xs + ys):
            raise ValueError("breakpoints and values must be finite")
        if any(a >= b for a, b in zip(xs, xs[1:])):
            raise ValueError("breakpoints must be strictly increasing")
        object.__setattr__(self, "breakpoints", xs)
        object.__setattr__(self, "values", ys)
        object.__setattr__(self, "mode", mode)

    # -- basic queries ------------------------------------------------

    @property
    def domain_lo(self) -> Number:
        return self.breakpoints[0]

    @property
    def domain_hi(self) -> Number:
        return self.breakpoints[-1]

    @property
    def width(self) -> Number:
        return self.domain_hi - self.domain_lo

    def same_domain(self, other: "PLFunction") -> bool:
        return (self.domain_lo == other.domain_lo
                and self.domain_hi == other.domain_hi)

    def eval(self, x: Number) -> Number:
        """Value at ``x``; exact at breakpoints, linear in between."""
        xs, ys = self.breakpoints, self.values
        if x < xs[0] or x > xs[-1]:
            raise DomainError(f"x={x} outside domain [{xs[0]}, {xs[-1]}]")
        i = bisect_left(xs, x)
        if i < len(xs) and xs[i] == x:
            return ys[i]
        x1, x2 = xs[i - 1], xs[i]
        y1, y2 = ys[i - 1], ys[i]
        return y1 + (y2 - y1) * (x - x1) / (x2 - x1)

    __call__ = eval

    def slopes(self) -> tuple[Number, ...]:
        xs, ys = self.breakpoints, self.values
        return tuple((y2 - y1) / (x2 - x1)
                     for x1, x2, y1, y2 in zip(xs, xs[1:], ys, ys[1:]))

    # -- calculus -----------------------------------------------------

    def integrate(self) -> Number:
        """Exact integral over the whole domain (trapezoid per piece)."""
        xs, ys = self.breakpoints, self.values
        half = Fraction(1, 2) if self.mode == RATIONAL else 0.5
        return sum((x2 - x1) * (y1 + y2) * half
                   for x1, x2, y1, y2 in zip(xs, xs[1:], ys, ys[1:]))

    def mean(self) -> Number:
        return self.integrate() / self.width

    # -- transforms ---------------------------------------------------

    def reflect(self) -> "PLFunction":
        """Mirror image x -> lo + hi - x on the same domain."""
        lo, hi = self.domain_lo, self.domain_hi
        xs = tuple(lo + hi - x for x in reversed(self.breakpoints))
        ys = tuple(reversed(self.values))
        return PLFunction(xs, ys)

    def symmetrize(self) -> "PLFunction":
        """(f(x) + f(lo+hi-x)) / 2 on the refined breakpoint union."""
        half = Fraction(1, 2) if self.mode == RATIONAL else 0.5
        return linear_combine(half, self, half, self.reflect())

    def restrict(self, lo: Number, hi: Number) -> "PLFunction":
        """The same function on [lo, hi]; inserts lo/hi as breakpoints."""
        if not (self.domain_lo <= lo < hi <= self.domain_hi):
            raise DomainError(
                f"[{lo}, {hi}] is not a sub-interval of "
                f"[{self.domain_lo}, {self.domain_hi}]")
        if self.mode == FLOAT:
            lo, hi = float(lo), float(hi)
        else:
            lo, hi = Fraction(lo), Fraction(hi)
        xs = [lo]
        xs += [x for x in self.breakpoints if lo < x < hi]
        xs.append(hi)
        ys = tuple(self.eval(x) for x in xs)
        return PLFunction(tuple(xs), ys)

    def resample(self, points: Sequence[Number]) -> "PLFunction":
        """Same function represented on a refined breakpoint set."""
        xs = _merge_breakpoints(self.breakpoints, points, self.mode)
        return PLFunction(xs, tuple(self.eval(x) for x in xs))

    def to_float(self) -> "PLFunction":
        if self.mode == FLOAT:
            return self
        return PLFunction(tuple(float(x) for x in self.breakpoints),
                          tuple(float(y) for y in self.values))

    def to_rational(self) -> "PLFunction":
        """Exact rational copy (binary floats convert without rounding)."""
        if self.mode == RATIONAL:
            return self
        return PLFunction(tuple(Fraction(x) for x in self.breakpoints),
                          tuple(Fraction(y) for y in self.values))

    # -- arithmetic sugar ----------------------------------------------

    def __neg__(self) -> "PLFunction":
        return PLFunction(self.breakpoints, tuple(-y for y in self.values))

    def __add__(self, other: "PLFunction") -> "PLFunction":
        one = Fraction(1) if self.mode == RATIONAL == other.mode else 1.0
        return linear_combine(one, self, one, other)

    def __sub__(self, other: "PLFunction") -> "PLFunction":
        return self + (-other)

    def __mul__(self, scalar: Number) -> "PLFunction":
        return PLFunction(self.breakpoints,
                          tuple(y * scalar for y in self.values))

    __rmul__ = __mul__

    # -- serialization -------------------------------------------------

    def to_record(self) -> dict:
        """Flat record {domain, breakpoints, values}; see wire.py for numbers."""
        return {
            "domain": [self.domain_lo, self.domain_hi],
            "breakpoints": list(self.breakpoints),
            "values": list(self.values),
        }


def _merge_breakpoints(a: Sequence[Number], b: Sequence[Number],
                       mode: str) -> tuple[Number, ...]:
    """Sorted union of two breakpoint sets.

    In float mode, points closer than FLOAT_DEDUP collapse to the earlier
    one so refinement never creates zero-width pieces.
    """
    merged: list[Number] = []
    for x in sorted(list(a) + list(b)):
        if merged:
            if x == merged[-1]:
                continue
            if mode == FLOAT and x - merged[-1] < FLOAT_DEDUP:
                continue
        merged.append(x)
    return tuple(merged)


def _common_grid(f: PLFunction, g: PLFunction) -> tuple[Number, ...]:
    if not f.same_domain(g):
        raise DomainError(
            f"domain mismatch: [{f.domain_lo}, {f.domain_hi}] vs "
            f"[{g.domain_lo}, {g.domain_hi}]")
    if f.mode != g.mode:
        raise ValueError(
            f"mixed arithmetic modes ({f.mode} vs {g.mode}); convert with "
            "to_float()/to_rational() first")
    return _merge_breakpoints(f.breakpoints, g.breakpoints, f.mode)


def linear_combine(a: Number, f: PLFunction, b: Number,
                   g: PLFunction) -> PLFunction:
    """a*f + b*g on the refined breakpoint union; exact at every breakpoint."""
    xs = _common_grid(f, g)
    ys = tuple(a * f.eval(x) + b * g.eval(x) for x in xs)
    return PLFunction(xs, ys)


def integrate_product(f: PLFunction, g: PLFunction) -> Number:
    """Exact integral of f*g.

    On each refined piece [x1, x2] the product is a quadratic; with endpoint
    values f1, f2 and g1, g2 its integral is
    (x2-x1)/6 * (2*f1*g1 + f1*g2 + f2*g1 + 2*f2*g2).
    """
    xs = _common_grid(f, g)
    fv = [f.eval(x) for x in xs]
    gv = [g.eval(x) for x in xs]
    sixth = Fraction(1, 6) if f.mode == RATIONAL else 1 / 6
    total = 0
    for i in range(len(xs) - 1):
        w = xs[i + 1] - xs[i]
        f1, f2, g1, g2 = fv[i], fv[i + 1], gv[i], gv[i + 1]
        total += w * sixth * (2 * f1 * g1 + f1 * g2 + f2 * g1 + 2 * f2 * g2)
    return total


# -- stock functions ---------------------------------------------------

def constant(c: Number, lo: Number = 0, hi: Number = 1) -> PLFunction:
    return PLFunction((lo, hi), (c, c))


def identity(lo: Number = 0, hi: Number = 1) -> PLFunction:
    return PLFunction((lo, hi), (lo, hi))


def tent() -> PLFunction:
    """The extremal unit-integral weight 4*min(x, 1-x) on [0, 1]."""
    return PLFunction((0, Fraction(1, 2), 1), (0, 2, 0))


def sample(fn, n: int, lo: Number = 0, hi: Number = 1) -> PLFunction:
    """PL chords of a callable on ``n`` uniform breakpoints.

    ``fn`` receives Fractions; returning Fractions keeps the chords exact.
    """
    if n < 2:
        raise ValueError("need at least 2 sample points")
    lo, hi = Fraction(lo), Fraction(hi)
    xs = tuple(lo + (hi - lo) * Fraction(i, n - 1) for i in range(n))
    return PLFunction(xs, tuple(fn(x) for x in xs))
