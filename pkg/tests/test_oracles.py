"""Re-derive every frozen oracle constant symbolically.

If any of these fail, the frozen values in oracles.py are wrong and every
test depending on them is meaningless; nothing here touches library code.
"""

from fractions import Fraction as F

import sympy as sp

import oracles

x = sp.Symbol("x")
q0 = 4 * sp.Min(x, 1 - x)
vee = sp.Abs(2 * x - 1)


def _int01(expr) -> F:
    val = sp.integrate(expr, (x, 0, 1))
    return F(int(sp.fraction(sp.nsimplify(val))[0]),
             int(sp.fraction(sp.nsimplify(val))[1]))


def test_basic_integrals():
    assert _int01(x) == oracles.INT_IDENTITY
    assert _int01(x ** 2) == oracles.INT_SQUARE
    assert _int01(x * (1 - x)) == oracles.INT_X_TIMES_1MX
    assert _int01(sp.Min(x, 1 - x)) == oracles.INT_MIN_TENT
    assert q0.subs(x, sp.Rational(1, 4)) == oracles.TENT_AT_QUARTER
    assert _int01(q0 ** 2) == oracles.INT_Q0_SQUARED


def test_levin_steckin_fixture():
    p = sp.Min(x, 1 - x)
    assert _int01(p * x ** 2) == oracles.LS_FIXTURE_LHS
    assert _int01(p) * _int01(x ** 2) == oracles.LS_FIXTURE_RHS
    assert oracles.LS_FIXTURE_RHS - oracles.LS_FIXTURE_LHS \
        == oracles.LS_FIXTURE_MARGIN


def test_chebyshev_fixtures():
    assert _int01(x * x) == oracles.CHEBYSHEV_IDENT_LHS
    assert _int01(x) ** 2 == oracles.CHEBYSHEV_IDENT_RHS
    assert _int01(x * (1 - x)) == oracles.CHEBYSHEV_OPPOSITE_LHS
    assert (oracles.CHEBYSHEV_IDENT_LHS - oracles.CHEBYSHEV_IDENT_RHS
            == oracles.CHEBYSHEV_MARGIN)
    assert (oracles.CHEBYSHEV_IDENT_RHS - oracles.CHEBYSHEV_OPPOSITE_LHS
            == oracles.CHEBYSHEV_MARGIN)


def test_clausing_fixtures():
    phi = x * (1 - x)
    assert _int01(q0 * phi) == oracles.CLAUSING_FIXTURE_LHS
    assert _int01(phi) * _int01(q0 * q0) == oracles.CLAUSING_FIXTURE_RHS
    assert (oracles.CLAUSING_FIXTURE_RHS - oracles.CLAUSING_FIXTURE_LHS
            == oracles.CLAUSING_FIXTURE_MARGIN)
    # phi = x - 1 violates the endpoint-sum hypothesis
    assert _int01(q0 * (x - 1)) == oracles.CLAUSING_NEG_LHS
    assert _int01(x - 1) * _int01(q0 * q0) == oracles.CLAUSING_NEG_RHS
    assert (oracles.CLAUSING_NEG_RHS - oracles.CLAUSING_NEG_LHS
            == oracles.CLAUSING_NEG_MARGIN)


def test_ls_necessity_fixtures():
    assert _int01(x * x ** 2) == oracles.LS_SYMDROP_LHS
    assert _int01(x) * _int01(x ** 2) == oracles.LS_SYMDROP_RHS
    assert (oracles.LS_SYMDROP_RHS - oracles.LS_SYMDROP_LHS
            == oracles.LS_SYMDROP_MARGIN)
    assert _int01(vee * x ** 2) == oracles.LS_MONODROP_LHS
    assert _int01(vee) * _int01(x ** 2) == oracles.LS_MONODROP_RHS
    assert (oracles.LS_MONODROP_RHS - oracles.LS_MONODROP_LHS
            == oracles.LS_MONODROP_MARGIN)


def test_sharpness_fixture():
    q = sp.Piecewise((12 * x ** 2, x <= sp.Rational(1, 2)),
                     (12 * (1 - x) ** 2, True))
    assert _int01(q) == 1  # already normalized
    assert _int01(q0 * q0) == oracles.SHARPNESS_LHS
    assert _int01(q0 * q) == oracles.SHARPNESS_RHS
    assert (oracles.SHARPNESS_RHS - oracles.SHARPNESS_LHS
            == oracles.SHARPNESS_MARGIN)
