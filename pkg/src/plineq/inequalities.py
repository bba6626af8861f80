"""One checker per inequality: exact both-sides evaluation plus hypothesis reports.

Margins are oriented so that inputs satisfying the hypotheses give a
nonnegative margin; a verdict ``holds`` iff margin >= -tolerance.  Hypothesis
failures are recorded in the verdict but never suppress evaluation, because
the falsification workflow needs margins for inadmissible inputs too.

Checkers:

* ``check_chebyshev``        mean(fg) vs mean(f)mean(g) for comonotone f, g
* ``check_chebyshev_m``      the M+/M- generalization (one monotone function
                             replaced by a mean-threshold class member)
* ``check_levin_steckin``    int p*phi <= int p * int phi for a symmetric
                             weight p non-decreasing on the left half and
                             convex phi
* ``check_ls_symmetric_lemma``  the symmetric-phi case, cross-checked against
                             its half-interval product identities
* ``check_clausing_general`` int p*phi <= int phi * int p*q for an admissible
                             kernel q and concave phi with phi(0)+phi(1) >= 0
* ``check_clausing_classic`` the same with the extremal kernel q0 = 4*min(x,1-x)
* ``check_hermite_hadamard`` midpoint >= mean >= endpoint average for concave f
* ``check_q0_sharpness``     int p*q0 <= int p*q: q0 gives the best bound
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Optional, Union

from . import classes
from .classes import ClassReport, MWitness
from .plfunction import (RATIONAL, Number, PLFunction, integrate_product,
                         linear_combine, tent)

CHEBYSHEV = "chebyshev"
CHEBYSHEV_M = "chebyshev_m"
LEVIN_STECKIN = "levin_steckin"
LS_SYMMETRIC = "ls_symmetric"
CLAUSING_GENERAL = "clausing_general"
CLAUSING_CLASSIC = "clausing_classic"
HERMITE_HADAMARD = "hermite_hadamard"
Q0_SHARPNESS = "q0_sharpness"

INEQUALITIES = (CHEBYSHEV, CHEBYSHEV_M, LEVIN_STECKIN, LS_SYMMETRIC,
                CLAUSING_GENERAL, CLAUSING_CLASSIC, HERMITE_HADAMARD,
                Q0_SHARPNESS)

#: margin checks in float mode tolerate this much negative slack
#: (absolute, for inputs normalized to sup-norm <= 8)
FLOAT_MARGIN_TOL = 1e-9

SAME = "same"
OPPOSITE = "opposite"

# chebyshev_m variants: (f class, g direction) -> orientation of the margin
PLUS_NONDECREASING = "plus_nondecreasing"
MINUS_NONINCREASING = "minus_nonincreasing"
PLUS_NONINCREASING = "plus_nonincreasing"
MINUS_NONDECREASING = "minus_nondecreasing"
M_VARIANTS = (PLUS_NONDECREASING, MINUS_NONINCREASING,
              PLUS_NONINCREASING, MINUS_NONDECREASING)

HypothesisReport = Union[ClassReport, MWitness]


@dataclass(frozen=True)
class InequalityVerdict:
    name: str
    lhs: Number
    rhs: Number
    margin: Number
    holds: bool
    tolerance: Number
    hypothesis_reports: tuple[HypothesisReport, ...] = ()
    details: dict = field(default_factory=dict)

    @property
    def hypotheses_ok(self) -> bool:
        return all(r.holds for r in self.hypothesis_reports)


def margin_tol(f: PLFunction, tol: Optional[Number]) -> Number:
    if tol is not None:
        return tol
    return 0 if f.mode == RATIONAL else FLOAT_MARGIN_TOL


def _verdict(name, lhs, rhs, margin, tol, reports, details=None):
    return InequalityVerdict(name, lhs, rhs, margin, margin >= -tol, tol,
                             tuple(reports), details or {})


def q0_for(f: PLFunction) -> PLFunction:
    """The extremal kernel 4*min(x, 1-x) in f's arithmetic mode."""
    q0 = tent()
    return q0.to_float() if f.mode != RATIONAL else q0


# -- Chebyshev ----------------------------------------------------------


def _infer_orientation(f_nd, f_ni, g_nd, g_ni) -> str:
    if (f_nd.holds and g_nd.holds) or (f_ni.holds and g_ni.holds):
        return SAME
    if (f_nd.holds and g_ni.holds) or (f_ni.holds and g_nd.holds):
        return OPPOSITE
    return SAME


def check_chebyshev(f: PLFunction, g: PLFunction,
                    direction: Optional[str] = None,
                    tol: Optional[Number] = None) -> InequalityVerdict:
    """Comonotone pair: mean(fg) >= mean(f)*mean(g); reversed if antimonotone.

    ``direction`` fixes the orientation (``same``/``opposite``); by default it
    is inferred from the monotonicity reports, preferring ``same`` when both
    readings apply (then either margin is nonnegative anyway).
    """
    tol = margin_tol(f, tol)
    f_nd = classes.is_monotone_on(f, direction=classes.NONDECREASING)
    f_ni = classes.is_monotone_on(f, direction=classes.NONINCREASING)
    g_nd = classes.is_monotone_on(g, direction=classes.NONDECREASING)
    g_ni = classes.is_monotone_on(g, direction=classes.NONINCREASING)
    if direction is None:
        direction = _infer_orientation(f_nd, f_ni, g_nd, g_ni)
    if direction not in (SAME, OPPOSITE):
        raise ValueError(f"unknown orientation {direction!r}")
    width = f.width
    lhs = integrate_product(f, g) / width
    rhs = (f.integrate() / width) * (g.integrate() / width)
    margin = lhs - rhs if direction == SAME else rhs - lhs
    # report f's monotonicity in whichever direction it satisfies (or fails
    # least badly), and g's in the direction the orientation then demands
    f_rep = f_nd if f_nd.holds or not f_ni.holds else f_ni
    f_is_nd = f_rep.class_name == classes.NONDECREASING
    g_rep = {
        (SAME, True): g_nd, (SAME, False): g_ni,
        (OPPOSITE, True): g_ni, (OPPOSITE, False): g_nd,
    }[(direction, f_is_nd)]
    return _verdict(CHEBYSHEV, lhs, rhs, margin, tol, (f_rep, g_rep),
                    {"orientation": direction})


def check_chebyshev_m(f: PLFunction, g: PLFunction,
                      variant: str = PLUS_NONDECREASING,
                      tol: Optional[Number] = None) -> InequalityVerdict:
    """Generalized Chebyshev: f in M+ with g non-decreasing (or f in M- with
    g non-increasing) gives mean(fg) >= mean(f)*mean(g); exchanging M+ and M-
    toggles the inequality, so toggled variants orient the margin the other way.
    """
    if variant not in M_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}")
    tol = margin_tol(f, tol)
    m_dir = classes.M_PLUS if variant.startswith("plus") else classes.M_MINUS
    g_dir = (classes.NONDECREASING if variant.endswith("nondecreasing")
             else classes.NONINCREASING)
    toggled = variant in (PLUS_NONINCREASING, MINUS_NONDECREASING)
    witness = classes.classify_m(f, m_dir)
    g_rep = classes.is_monotone_on(g, direction=g_dir)
    width = f.width
    lhs = integrate_product(f, g) / width
    rhs = (f.integrate() / width) * (g.integrate() / width)
    margin = rhs - lhs if toggled else lhs - rhs
    return _verdict(CHEBYSHEV_M, lhs, rhs, margin, tol, (witness, g_rep),
                    {"variant": variant, "toggled": toggled})


# -- Levin-Steckin ------------------------------------------------------


def _ls_hypotheses(p: PLFunction, phi: PLFunction):
    half = Fraction(1, 2) if p.mode == RATIONAL else 0.5
    return (classes.is_symmetric(p),
            classes.is_monotone_on(p, (p.domain_lo, half),
                                   classes.NONDECREASING),
            classes.is_convex(phi))


def check_levin_steckin(p: PLFunction, phi: PLFunction,
                        tol: Optional[Number] = None) -> InequalityVerdict:
    """int p*phi <= int p * int phi on [0, 1]."""
    tol = margin_tol(p, tol)
    lhs = integrate_product(p, phi)
    rhs = p.integrate() * phi.integrate()
    return _verdict(LEVIN_STECKIN, lhs, rhs, rhs - lhs, tol,
                    _ls_hypotheses(p, phi))


def check_ls_symmetric_lemma(p: PLFunction, phi: PLFunction,
                             tol: Optional[Number] = None) -> InequalityVerdict:
    """Symmetric-phi case with the half-interval proof identities.

    For symmetric p and phi the full-interval quantities split exactly:
    int p * int phi = 4 * int_{0}^{1/2} p * int_{0}^{1/2} phi and
    int p*phi = 2 * int_{0}^{1/2} p*phi.  Both identities are recorded in the
    details; the margin equals the plain Levin-Steckin margin.
    """
    tol = margin_tol(p, tol)
    half = Fraction(1, 2) if p.mode == RATIONAL else 0.5
    lo = p.domain_lo
    lhs = integrate_product(p, phi)
    rhs = p.integrate() * phi.integrate()
    p_half, phi_half = p.restrict(lo, half), phi.restrict(lo, half)
    rhs_half = 4 * p_half.integrate() * phi_half.integrate()
    lhs_half = 2 * integrate_product(p_half, phi_half)
    reports = _ls_hypotheses(p, phi) + (classes.is_symmetric(phi),)
    return _verdict(LS_SYMMETRIC, lhs, rhs, rhs - lhs, tol, reports,
                    {"half_rhs": rhs_half, "half_lhs": lhs_half,
                     "rhs_split_exact": rhs_half == rhs,
                     "lhs_split_exact": lhs_half == lhs})


# -- Clausing -----------------------------------------------------------


def _weight_hypotheses(p: PLFunction):
    """Nonnegative symmetric weight, non-decreasing on the left half."""
    half = Fraction(1, 2) if p.mode == RATIONAL else 0.5
    return (classes.is_nonnegative(p),
            classes.is_symmetric(p),
            classes.is_monotone_on(p, (p.domain_lo, half),
                                   classes.NONDECREASING))


def _kernel_hypotheses(q: PLFunction, tol: Number):
    """Admissible kernel: nonnegative, symmetric, convex on the left half,
    vanishing at 0, unit integral."""
    half = Fraction(1, 2) if q.mode == RATIONAL else 0.5
    q_at_zero = abs(q.eval(q.domain_lo))
    unit_gap = abs(q.integrate() - 1)
    return (
        classes.is_nonnegative(q),
        classes.is_symmetric(q),
        classes.is_convex(q, (q.domain_lo, half)),
        ClassReport("vanishes_at_left_endpoint", q_at_zero <= tol, tol,
                    violation_at=None if q_at_zero <= tol else q.domain_lo,
                    violation_magnitude=None if q_at_zero <= tol else q_at_zero),
        ClassReport("unit_integral", unit_gap <= tol, tol,
                    violation_at=None,
                    violation_magnitude=None if unit_gap <= tol else unit_gap),
    )


def _phi_hypotheses(phi: PLFunction, tol: Number):
    """Concave phi with nonnegative endpoint sum."""
    s = phi.values[0] + phi.values[-1]
    return (
        classes.is_concave(phi),
        ClassReport("endpoint_sum_nonnegative", s >= -tol, tol,
                    violation_at=None,
                    violation_magnitude=None if s >= -tol else -s),
    )


def check_clausing_general(p: PLFunction, q: PLFunction, phi: PLFunction,
                           tol: Optional[Number] = None) -> InequalityVerdict:
    """int p*phi <= int phi * int p*q for admissible p, q and concave phi.

    The details carry K = int phi and, when phi is symmetric, the equivalent
    half-interval form 2 * int_{0}^{1/2} (K*q - phi)*p, which must match the
    margin exactly in rational mode.
    """
    tol = margin_tol(p, tol)
    lhs = integrate_product(p, phi)
    K = phi.integrate()
    pq = integrate_product(p, q)
    rhs = K * pq
    details: dict = {"phi_integral": K, "pq_integral": pq}
    phi_sym = classes.is_symmetric(phi)
    if phi_sym.holds:
        half = Fraction(1, 2) if p.mode == RATIONAL else 0.5
        h = linear_combine(K, q, -1, phi)
        half_margin = 2 * integrate_product(
            h.restrict(p.domain_lo, half), p.restrict(p.domain_lo, half))
        details["half_interval_margin"] = half_margin
        details["phi_symmetric"] = True
    else:
        details["phi_symmetric"] = False
    cl_tol = tol if tol else classes.default_tol(p, None)
    reports = (_weight_hypotheses(p) + _kernel_hypotheses(q, cl_tol)
               + _phi_hypotheses(phi, cl_tol))
    return _verdict(CLAUSING_GENERAL, lhs, rhs, rhs - lhs, tol, reports,
                    details)


def check_clausing_classic(p: PLFunction, phi: PLFunction,
                           tol: Optional[Number] = None) -> InequalityVerdict:
    """Classical Clausing inequality: the general form with kernel q0."""
    general = check_clausing_general(p, q0_for(p), phi, tol)
    return InequalityVerdict(CLAUSING_CLASSIC, general.lhs, general.rhs,
                             general.margin, general.holds, general.tolerance,
                             general.hypothesis_reports,
                             dict(general.details, kernel="q0"))


def check_hermite_hadamard(f: PLFunction,
                           tol: Optional[Number] = None) -> InequalityVerdict:
    """Concave f: f(midpoint) >= mean(f) >= average of the endpoint values.

    The margin is the smaller of the two gaps.  Certifies K = int phi >= 0
    for admissible Clausing phi, whose endpoint average is nonnegative.
    """
    tol = margin_tol(f, tol)
    half = Fraction(1, 2) if f.mode == RATIONAL else 0.5
    mid = (f.domain_lo + f.domain_hi) * half
    mean = f.mean()
    midpoint_value = f.eval(mid)
    endpoint_avg = (f.values[0] + f.values[-1]) * half
    margin = min(midpoint_value - mean, mean - endpoint_avg)
    return _verdict(HERMITE_HADAMARD, endpoint_avg, midpoint_value, margin,
                    tol, (classes.is_concave(f),),
                    {"mean": mean, "midpoint_value": midpoint_value,
                     "endpoint_avg": endpoint_avg})


def check_q0_sharpness(p: PLFunction, q: PLFunction,
                       tol: Optional[Number] = None) -> InequalityVerdict:
    """int p*q0 <= int p*q over admissible kernels: q0 gives the best bound."""
    tol = margin_tol(p, tol)
    lhs = integrate_product(p, q0_for(p))
    rhs = integrate_product(p, q)
    cl_tol = tol if tol else classes.default_tol(p, None)
    reports = _weight_hypotheses(p) + _kernel_hypotheses(q, cl_tol)
    return _verdict(Q0_SHARPNESS, lhs, rhs, rhs - lhs, tol, reports)


# -- registry -----------------------------------------------------------

#: checker roles, for the wire format and the campaign runner
ROLES = {
    CHEBYSHEV: ("f", "g"),
    CHEBYSHEV_M: ("f", "g"),
    LEVIN_STECKIN: ("p", "phi"),
    LS_SYMMETRIC: ("p", "phi"),
    CLAUSING_GENERAL: ("p", "q", "phi"),
    CLAUSING_CLASSIC: ("p", "phi"),
    HERMITE_HADAMARD: ("f",),
    Q0_SHARPNESS: ("p", "q"),
}


def evaluate(name: str, functions: dict[str, PLFunction],
             variant: Optional[str] = None, direction: Optional[str] = None,
             tol: Optional[Number] = None) -> InequalityVerdict:
    """Dispatch a named inequality on role-keyed inputs (replay/service entry)."""
    if name not in ROLES:
        raise ValueError(f"unknown inequality {name!r}")
    missing = [r for r in ROLES[name] if r not in functions]
    if missing:
        raise ValueError(f"{name} needs functions {ROLES[name]}, "
                         f"missing {missing}")
    fns = [functions[r] for r in ROLES[name]]
    if name == CHEBYSHEV:
        return check_chebyshev(*fns, direction=direction, tol=tol)
    if name == CHEBYSHEV_M:
        return check_chebyshev_m(*fns, variant=variant or PLUS_NONDECREASING,
                                 tol=tol)
    if name == LEVIN_STECKIN:
        return check_levin_steckin(*fns, tol=tol)
    if name == LS_SYMMETRIC:
        return check_ls_symmetric_lemma(*fns, tol=tol)
    if name == CLAUSING_GENERAL:
        return check_clausing_general(*fns, tol=tol)
    if name == CLAUSING_CLASSIC:
        return check_clausing_classic(*fns, tol=tol)
    if name == HERMITE_HADAMARD:
        return check_hermite_hadamard(*fns, tol=tol)
    return check_q0_sharpness(*fns, tol=tol)


def margin_only(name: str, functions: dict[str, PLFunction],
                variant: Optional[str] = None) -> Number:
    """Just the oriented margin, skipping hypothesis reports (search hot path)."""
    if name in (LEVIN_STECKIN, LS_SYMMETRIC):
        p, phi = functions["p"], functions["phi"]
        return p.integrate() * phi.integrate() - integrate_product(p, phi)
    if name == CLAUSING_GENERAL:
        p, q, phi = functions["p"], functions["q"], functions["phi"]
        return phi.integrate() * integrate_product(p, q) - integrate_product(p, phi)
    if name == CLAUSING_CLASSIC:
        p, phi = functions["p"], functions["phi"]
        q = q0_for(p)
        return phi.integrate() * integrate_product(p, q) - integrate_product(p, phi)
    if name == Q0_SHARPNESS:
        p, q = functions["p"], functions["q"]
        return integrate_product(p, q) - integrate_product(p, q0_for(p))
    if name == CHEBYSHEV:
        f, g = functions["f"], functions["g"]
        w = f.width
        return integrate_product(f, g) / w - f.integrate() * g.integrate() / w / w
    if name == CHEBYSHEV_M:
        f, g = functions["f"], functions["g"]
        w = f.width
        plain = integrate_product(f, g) / w - f.integrate() * g.integrate() / w / w
        toggled = variant in (PLUS_NONINCREASING, MINUS_NONDECREASING)
        return -plain if toggled else plain
    if name == HERMITE_HADAMARD:
        return check_hermite_hadamard(functions["f"]).margin
    raise ValueError(f"unknown inequality {name!r}")
