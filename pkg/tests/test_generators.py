"""Hypothesis closure, determinism, and coverage of the generators."""

from fractions import Fraction as F

import pytest

from plineq import generators as gen
from plineq.classes import (M_MINUS, M_PLUS, NONDECREASING, NONINCREASING,
                            classify_m, is_concave, is_convex, is_monotone_on,
                            is_nonnegative, is_symmetric)
from plineq.generators import GenConfig
from plineq.plfunction import tent

HALF = (0, F(1, 2))


def test_config_validation():
    with pytest.raises(ValueError):
        GenConfig(seed=0, n_breakpoints=2)
    with pytest.raises(ValueError):
        GenConfig(seed=0, grid="hexagonal")
    with pytest.raises(ValueError):
        GenConfig(seed=0, value_scale=-1)


def test_determinism():
    for maker in (gen.gen_convex, gen.gen_ls_weight, gen.gen_admissible_q,
                  gen.gen_concave_admissible_phi, gen.gen_positive_concave,
                  gen.gen_monotone, gen.gen_zero_mean_convex,
                  gen.gen_unconstrained):
        a = maker(GenConfig(seed=12345))
        b = maker(GenConfig(seed=12345))
        assert a.breakpoints == b.breakpoints and a.values == b.values
        c = maker(GenConfig(seed=12346))
        assert (a.breakpoints, a.values) != (c.breakpoints, c.values)


def test_zero_scale_convex_is_affine():
    f = gen.gen_convex(GenConfig(seed=3, value_scale=0))
    slopes = set(f.slopes())
    assert len(slopes) == 1


def test_admissible_q_rejects_zero_scale():
    with pytest.raises(ValueError, match="value_scale"):
        gen.gen_admissible_q(GenConfig(seed=3, value_scale=0))


def test_single_piece_kernel_is_tent():
    q = gen.gen_admissible_q(GenConfig(seed=7, n_breakpoints=3))
    assert q.breakpoints == tent().breakpoints
    assert q.values == tent().values


def test_random_grid_draws():
    f = gen.gen_convex(GenConfig(seed=11, grid=gen.RANDOM))
    assert is_convex(f).holds
    assert len(f.breakpoints) == 17
    w = gen.gen_ls_weight(GenConfig(seed=11, grid=gen.RANDOM))
    assert is_symmetric(w).holds


@pytest.mark.parametrize("seed", range(0, 200, 7))
def test_hypothesis_closure(seed):
    cfg = GenConfig(seed=seed)
    assert is_convex(gen.gen_convex(cfg)).holds
    assert is_concave(gen.gen_concave(cfg)).holds

    w = gen.gen_ls_weight(cfg)
    assert is_symmetric(w).holds
    assert is_monotone_on(w, HALF, NONDECREASING).holds
    assert is_nonnegative(w).holds

    q = gen.gen_admissible_q(cfg)
    assert is_symmetric(q).holds
    assert is_convex(q, HALF).holds
    assert is_nonnegative(q).holds
    assert q.eval(0) == 0
    assert q.integrate() == 1

    phi = gen.gen_concave_admissible_phi(cfg)
    assert is_concave(phi).holds
    assert phi.values[0] + phi.values[-1] >= 0

    pos = gen.gen_positive_concave(cfg)
    assert is_concave(pos).holds
    assert is_nonnegative(pos).holds
    assert pos.integrate() > 0

    nd = gen.gen_monotone(cfg, NONDECREASING)
    assert is_monotone_on(nd, None, NONDECREASING).holds
    assert classify_m(nd, M_PLUS).in_class
    ni = gen.gen_monotone(cfg, NONINCREASING)
    assert is_monotone_on(ni, None, NONINCREASING).holds
    assert classify_m(ni, M_MINUS).in_class

    h = gen.gen_zero_mean_convex(cfg)
    assert is_convex(h).holds
    assert h.values[0] <= 0
    assert h.integrate() == 0


def test_slope_sign_coverage():
    lo = min(min(gen.gen_convex(GenConfig(seed=s)).slopes())
             for s in range(300))
    hi = max(max(gen.gen_convex(GenConfig(seed=s)).slopes())
             for s in range(300))
    assert lo < 0 < hi


def test_substream_independence():
    streams = {gen.substream(0, i) for i in range(1000)}
    assert len(streams) == 1000
    assert gen.substream(5, 1, 2) != gen.substream(5, 2, 1)
