"""Per-inequality input draws that satisfy every hypothesis by construction.

Used by verification campaigns, the no-violation sweep, and the acceptance
suite.  ``draw_inputs(name, seed, ...)`` is deterministic in (name, seed) and
returns role-keyed rational functions plus the chebyshev_m variant when one
applies.
"""

from __future__ import annotations

import random
from typing import Optional

from . import classes, generators, inequalities
from .generators import GenConfig, substream
from .plfunction import PLFunction


def draw_inputs(name: str, seed: int, n_breakpoints: int = 17,
                value_scale=1, grid: str = generators.UNIFORM
                ) -> tuple[dict[str, PLFunction], Optional[str]]:
    """Role-keyed admissible inputs for one trial of the named inequality."""

    def cfg(k: int) -> GenConfig:
        return GenConfig(seed=substream(seed, k), n_breakpoints=n_breakpoints,
                         value_scale=value_scale, grid=grid)

    rng = random.Random(substream(seed, 0xD))

    if name == inequalities.CHEBYSHEV:
        direction = rng.choice((classes.NONDECREASING, classes.NONINCREASING))
        return {"f": generators.gen_monotone(cfg(0), direction),
                "g": generators.gen_monotone(cfg(1), direction)}, None

    if name == inequalities.CHEBYSHEV_M:
        variant = rng.choice(inequalities.M_VARIANTS)
        plus = variant.startswith("plus")
        g_dir = (classes.NONDECREASING if variant.endswith("nondecreasing")
                 else classes.NONINCREASING)
        if rng.random() < 0.5:
            f = generators.gen_monotone(cfg(0), classes.NONDECREASING)
        else:
            f = generators.gen_zero_mean_convex(cfg(0), 0, 1)
        if not plus:
            f = -f
        g = generators.gen_monotone(cfg(1), g_dir)
        return {"f": f, "g": g}, variant

    if name == inequalities.LEVIN_STECKIN:
        return {"p": generators.gen_ls_weight(cfg(0)),
                "phi": generators.gen_convex(cfg(1))}, None

    if name == inequalities.LS_SYMMETRIC:
        return {"p": generators.gen_ls_weight(cfg(0)),
                "phi": generators.gen_convex(cfg(1)).symmetrize()}, None

    if name == inequalities.CLAUSING_GENERAL:
        return {"p": generators.gen_ls_weight(cfg(0)),
                "q": generators.gen_admissible_q(cfg(1)),
                "phi": generators.gen_concave_admissible_phi(cfg(2))}, None

    if name == inequalities.CLAUSING_CLASSIC:
        return {"p": generators.gen_ls_weight(cfg(0)),
                "phi": generators.gen_positive_concave(cfg(1))}, None

    if name == inequalities.HERMITE_HADAMARD:
        return {"f": generators.gen_concave(cfg(0))}, None

    if name == inequalities.Q0_SHARPNESS:
        return {"p": generators.gen_ls_weight(cfg(0)),
                "q": generators.gen_admissible_q(cfg(1))}, None

    raise ValueError(f"unknown inequality {name!r}")
