"""Acceptance suite: one test per criterion, at full stated scale.

Each test prints a single PASS/FAIL line (run with ``pytest -s`` to see them
all); every tolerance is pinned here, nothing is deferred.  Expected values
come from tests/oracles.py, whose constants are sympy-verified and whose
quadrature/grid oracles are independent of the library's exact closed forms.
"""

import time
from fractions import Fraction as F

import oracles
from plineq import generators, inequalities as ineq, sampling, search, wire
from plineq.classes import (M_PLUS, NONDECREASING, NONINCREASING, classify_m,
                            is_convex)
from plineq.generators import GenConfig, substream
from plineq.inequalities import (MINUS_NONDECREASING, MINUS_NONINCREASING,
                                 PLUS_NONDECREASING, PLUS_NONINCREASING)
from plineq.plfunction import (PLFunction, constant, identity,
                               integrate_product, sample, tent)

MIN_TENT = PLFunction((0, F(1, 2), 1), (0, F(1, 2), 0))


def _report(num: int, name: str, ok: bool, detail: str, started: float):
    line = (f"ACCEPTANCE {num:02d} {name}: {'PASS' if ok else 'FAIL'} "
            f"({detail}, {time.perf_counter() - started:.1f}s)")
    print(line, flush=True)
    assert ok, line


def test_criterion_01_exact_integration_oracle():
    started = time.perf_counter()
    worst = 0.0
    for seed in range(500):
        f = generators.gen_unconstrained(GenConfig(seed=substream(1, seed, 0)))
        g = generators.gen_unconstrained(GenConfig(seed=substream(1, seed, 1)))
        exact = float(integrate_product(f, g))
        quad = oracles.simpson_product(f, g, min_points=10_000)
        rel = abs(exact - quad) / max(1.0, abs(exact))
        worst = max(worst, rel)
    elapsed = time.perf_counter() - started
    ok = worst <= 1e-10 and elapsed < 10
    _report(1, "exact-integration-oracle", ok,
            f"500 pairs vs 1e4-point Simpson, max rel err {worst:.2e}",
            started)


def test_criterion_02_levin_steckin_margins():
    started = time.perf_counter()
    min_margin = None
    hyps_ok = True
    for seed in range(1000):
        funcs, _ = sampling.draw_inputs(ineq.LEVIN_STECKIN, substream(2, seed))
        v = ineq.check_levin_steckin(funcs["p"], funcs["phi"])
        hyps_ok = hyps_ok and v.hypotheses_ok
        if v.margin < 0:
            _report(2, "levin-steckin", False,
                    f"negative margin {v.margin} at seed {seed}", started)
        min_margin = v.margin if min_margin is None else min(min_margin,
                                                             v.margin)
    # equality cases, exactly
    eq_phi = ineq.check_levin_steckin(
        generators.gen_ls_weight(GenConfig(seed=902)), constant(F(7, 3)))
    eq_p = ineq.check_levin_steckin(
        constant(F(5, 8)), generators.gen_convex(GenConfig(seed=903)))
    ok = hyps_ok and eq_phi.margin == 0 and eq_p.margin == 0
    _report(2, "levin-steckin", ok,
            f"1000 admissible pairs, min margin {float(min_margin):.4g}, "
            f"equality exact for constant phi and constant p", started)


def test_criterion_03_symmetric_lemma_chain():
    started = time.perf_counter()
    for seed in range(1000):
        p = generators.gen_ls_weight(GenConfig(seed=substream(3, seed, 0)))
        phi = generators.gen_convex(
            GenConfig(seed=substream(3, seed, 1))).symmetrize()
        v = ineq.check_ls_symmetric_lemma(p, phi)
        ls = ineq.check_levin_steckin(p, phi)
        if not (v.details["lhs_split_exact"] and v.details["rhs_split_exact"]
                and v.margin == ls.margin and v.margin >= 0):
            _report(3, "symmetric-lemma-chain", False,
                    f"chain identity broke at seed {seed}", started)
    _report(3, "symmetric-lemma-chain", True,
            "1000 symmetric pairs: half-interval identities exact, "
            "margins equal levin_steckin exactly", started)


def test_criterion_04_generalized_chebyshev():
    started = time.perf_counter()
    for seed in range(1000):
        s = substream(4, seed)
        if seed % 2:
            f = generators.gen_zero_mean_convex(GenConfig(seed=s), 0, 1)
        else:
            f = generators.gen_monotone(GenConfig(seed=s), NONDECREASING)
        g_nd = generators.gen_monotone(GenConfig(seed=substream(4, seed, 1)),
                                       NONDECREASING)
        g_ni = generators.gen_monotone(GenConfig(seed=substream(4, seed, 2)),
                                       NONINCREASING)
        cases = ((f, g_nd, PLUS_NONDECREASING, False),
                 (-f, g_ni, MINUS_NONINCREASING, False),
                 (f, g_ni, PLUS_NONINCREASING, True),
                 (-f, g_nd, MINUS_NONDECREASING, True))
        for ff, gg, variant, toggled in cases:
            v = ineq.check_chebyshev_m(ff, gg, variant)
            raw_ok = (v.lhs <= v.rhs) if toggled else (v.lhs >= v.rhs)
            if not (v.margin >= 0 and v.hypotheses_ok and raw_ok):
                _report(4, "generalized-chebyshev", False,
                        f"{variant} failed at seed {seed}: margin {v.margin}",
                        started)
    _report(4, "generalized-chebyshev", True,
            "1000 draws x 4 variants: oriented margins >= 0 in rational "
            "mode, toggled variants reversed", started)


def test_criterion_05_m_classifier_vs_brute_force():
    started = time.perf_counter()
    disagreements = 0
    for seed in range(500):
        f = generators.gen_unconstrained(GenConfig(seed=substream(5, seed)))
        w = classify_m(f, M_PLUS)
        member, oracle_c = oracles.grid_m_oracle(f, "M+")
        if member != w.in_class:
            disagreements += 1
        elif member and not (float(w.c_lo) - 1e-6 <= oracle_c
                             <= float(w.c_hi) + 1e-6):
            disagreements += 1
    w_id = classify_m(identity(), M_PLUS)
    fix_identity = w_id.in_class and w_id.c_lo == w_id.c_hi == F(1, 2)
    w_const = classify_m(constant(F(2, 9)), M_PLUS)
    fix_const = w_const.in_class and (w_const.c_lo, w_const.c_hi) == (0, 1)
    vee = PLFunction((0, F(1, 2), 1), (F(1, 2), 0, F(1, 2)))
    fix_vee = not classify_m(vee, M_PLUS).in_class
    ok = disagreements == 0 and fix_identity and fix_const and fix_vee
    _report(5, "m-classifier-vs-brute-force", ok,
            f"500 functions vs 1e-3 grid oracle, {disagreements} "
            f"disagreements; fixtures identity/constant/vee correct", started)


def test_criterion_06_implicit_m_plus_lemma():
    started = time.perf_counter()
    for seed in range(1000):
        h = generators.gen_zero_mean_convex(GenConfig(seed=substream(6, seed)))
        if not (h.values[0] <= 0 and h.integrate() == 0
                and is_convex(h).holds and classify_m(h, M_PLUS).in_class):
            _report(6, "implicit-m-plus-lemma", False,
                    f"lemma failed at seed {seed}", started)
    _report(6, "implicit-m-plus-lemma", True,
            "1000 zero-mean convex h with h(0) <= 0 all classify M+", started)


def test_criterion_07_generalized_clausing():
    started = time.perf_counter()
    for seed in range(1000):
        p = generators.gen_ls_weight(GenConfig(seed=substream(7, seed, 0)))
        q = generators.gen_admissible_q(GenConfig(seed=substream(7, seed, 1)))
        phi = generators.gen_concave_admissible_phi(
            GenConfig(seed=substream(7, seed, 2)))
        if seed % 2:
            phi = phi.symmetrize()
        v = ineq.check_clausing_general(p, q, phi)
        cross_ok = (not v.details["phi_symmetric"]
                    or v.details["half_interval_margin"] == v.margin)
        if not (v.margin >= 0 and v.hypotheses_ok and cross_ok):
            _report(7, "generalized-clausing", False,
                    f"failed at seed {seed}: margin {v.margin}", started)
    # phi = q equality, exactly
    p = generators.gen_ls_weight(GenConfig(seed=904))
    q = generators.gen_admissible_q(GenConfig(seed=905))
    eq = ineq.check_clausing_general(p, q, q)
    _report(7, "generalized-clausing", eq.margin == 0,
            "1000 admissible triples: margins >= 0 exact, half-interval "
            "cross-check exact for symmetric phi, phi = q margin exactly 0",
            started)


def test_criterion_08_smooth_case_anchors():
    started = time.perf_counter()
    ls = ineq.check_levin_steckin(MIN_TENT, sample(lambda t: t * t, 65))
    ls_ok = abs(ls.margin - oracles.LS_FIXTURE_MARGIN) <= F(1, 1000)
    cl = ineq.check_clausing_general(tent(), tent(),
                                     sample(lambda t: t * (1 - t), 65))
    cl_ok = (cl.margin >= 0
             and abs(cl.margin - oracles.CLAUSING_FIXTURE_MARGIN)
             <= F(1, 1000))
    _report(8, "smooth-case-anchors", ls_ok and cl_ok,
            f"65-point chords: LS margin {float(ls.margin):.6f} ~ 1/96, "
            f"Clausing margin {float(cl.margin):.6f} ~ 1/72, both within "
            f"1e-3", started)


def test_criterion_09_q0_sharpness():
    started = time.perf_counter()
    for w in range(5):
        p = generators.gen_ls_weight(GenConfig(seed=substream(9, w)))
        injected = ineq.check_q0_sharpness(p, tent())
        if injected.margin != 0:
            _report(9, "q0-sharpness", False,
                    f"injected q0 margin {injected.margin} not exactly 0",
                    started)
        for t in range(200):
            q = generators.gen_admissible_q(
                GenConfig(seed=substream(9, w, t)))
            v = ineq.check_q0_sharpness(p, q)
            if v.margin < 0:
                _report(9, "q0-sharpness", False,
                        f"negative margin at weight {w} kernel {t}", started)
    _report(9, "q0-sharpness", True,
            "200 kernels x 5 weights: margins >= 0, q = q0 exactly 0",
            started)


def test_criterion_10_hypothesis_necessity():
    started = time.perf_counter()
    required = (
        (ineq.LEVIN_STECKIN, search.P_SYMMETRIC),
        (ineq.LEVIN_STECKIN, search.P_NONDECREASING_ON_HALF),
        (ineq.CLAUSING_GENERAL, search.PHI_ENDPOINT_SUM_NONNEGATIVE),
    )
    found = []
    for k, (name, hyp) in enumerate(required):
        result = search.minimize_margin(search.SearchProblem(
            name, frozenset({hyp}), budget=10_000, seed=substream(10, k)))
        functions = {r: wire.decode_function(rec)
                     for r, rec in result.best_inputs.items()}
        exact = ineq.margin_only(name, functions)
        found.append(result.violated and result.iterations_used <= 10_000
                     and exact < 0)
    tallies = search.no_violation_sweep(100_002, seed=1010)
    sweep_trials = sum(t.trials for t in tallies.values())
    sweep_clean = all(t.exact_negatives == 0 for t in tallies.values())
    elapsed = time.perf_counter() - started
    ok = all(found) and sweep_trials >= 100_000 and sweep_clean \
        and elapsed < 300
    _report(10, "hypothesis-necessity", ok,
            f"3/3 required drops rationally violated within 1e4 iterations; "
            f"{sweep_trials} all-hypotheses candidates across "
            f"{len(tallies)} checkers, 0 rational violations", started)
