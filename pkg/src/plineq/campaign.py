"""Campaign runner: verification sweeps, falsification suites, replay, sharpness.

A campaign document fully determines a run; reports embed every extremal or
failing case inline so they replay without side files.  Trials derive their
seeds from (campaign seed, inequality index, trial index), so reports are
identical whatever the worker count, and two runs of the same campaign differ
only in wall_time_s.
"""

from __future__ import annotations

import os
import time
from concurrent.futures import ProcessPoolExecutor
from fractions import Fraction
from typing import Optional

from . import inequalities, sampling, search, wire
from .generators import GenConfig, gen_admissible_q, gen_ls_weight, substream
from .models import (AggregateModel, CampaignModel, CaseModel,
                     FalsifyEntryModel, RunReportModel, SearchResultModel,
                     VerdictModel)
from .plfunction import tent

WORKERS_ENV = "PLINEQ_WORKERS"

#: hypothesis drops that the falsification suite is expected to refute
DEFAULT_EXPECTED_VIOLATIONS = (
    f"{inequalities.LEVIN_STECKIN}:{search.P_SYMMETRIC}",
    f"{inequalities.LEVIN_STECKIN}:{search.P_NONDECREASING_ON_HALF}",
    f"{inequalities.CLAUSING_GENERAL}:{search.PHI_ENDPOINT_SUM_NONNEGATIVE}",
)

#: cap on failing cases embedded per inequality
MAX_STORED_FAILURES = 10


def worker_count() -> int:
    try:
        return max(1, int(os.environ.get(WORKERS_ENV, "1")))
    except ValueError:
        return 1


def _trial_args(campaign: CampaignModel, name: str, ineq_index: int,
                trial: int) -> tuple:
    return (name, substream(campaign.seed, ineq_index, trial),
            campaign.gen.n_breakpoints, campaign.gen.value_scale,
            campaign.gen.grid, campaign.arithmetic, campaign.tolerance)


def _run_trial(args: tuple):
    """One verification trial; returns (holds, margin).  Top-level for pickling."""
    name, seed, n_breakpoints, value_scale, grid, arithmetic, tolerance = args
    funcs, variant = sampling.draw_inputs(name, seed, n_breakpoints,
                                          value_scale, grid)
    if arithmetic == "float":
        funcs = {r: f.to_float() for r, f in funcs.items()}
    verdict = inequalities.evaluate(name, funcs, variant=variant,
                                    tol=tolerance)
    return verdict.holds, verdict.margin


def _trial_case(campaign: CampaignModel, name: str, ineq_index: int,
                trial: int, margin) -> CaseModel:
    """Rebuild a trial's inputs (deterministic) and package them for replay."""
    args = _trial_args(campaign, name, ineq_index, trial)
    funcs, variant = sampling.draw_inputs(name, args[1],
                                          campaign.gen.n_breakpoints,
                                          campaign.gen.value_scale,
                                          campaign.gen.grid)
    if campaign.arithmetic == "float":
        funcs = {r: f.to_float() for r, f in funcs.items()}
    return CaseModel(**wire.encode_case(name, funcs, variant=variant,
                                        expected_margin=margin))


def _map_trials(campaign: CampaignModel, name: str, ineq_index: int):
    args = [_trial_args(campaign, name, ineq_index, t)
            for t in range(campaign.trials)]
    workers = worker_count()
    if workers == 1 or campaign.trials < 4 * workers:
        return [_run_trial(a) for a in args]
    with ProcessPoolExecutor(max_workers=workers) as pool:
        chunk = max(1, len(args) // (8 * workers))
        return list(pool.map(_run_trial, args, chunksize=chunk))


def run_verify(campaign: CampaignModel) -> RunReportModel:
    """Draw admissible inputs per trial and evaluate the named checkers."""
    aggregates = []
    all_pass = True
    for ineq_index, name in enumerate(campaign.inequalities):
        outcomes = _map_trials(campaign, name, ineq_index)
        passes = sum(1 for holds, _ in outcomes if holds)
        failures = campaign.trials - passes
        all_pass = all_pass and failures == 0
        min_trial = min(range(campaign.trials),
                        key=lambda t: outcomes[t][1])
        min_margin = outcomes[min_trial][1]
        failing = [t for t, (holds, _) in enumerate(outcomes)
                   if not holds][:MAX_STORED_FAILURES]
        aggregates.append(AggregateModel(
            inequality=name, trials=campaign.trials, passes=passes,
            failures=failures, min_margin=wire.encode_number(min_margin),
            min_margin_case=_trial_case(campaign, name, ineq_index,
                                        min_trial, min_margin),
            failing_cases=[_trial_case(campaign, name, ineq_index, t,
                                       outcomes[t][1]) for t in failing]))
    return RunReportModel(campaign=campaign, ok=all_pass, verify=aggregates)


def run_sharpness(campaign: CampaignModel) -> RunReportModel:
    """q0 against random admissible kernels: margins >= 0, exactly 0 at q = q0.

    ``trials`` counts the random kernels; each is paired with
    ``sharpness_weights`` random weights, and the injected q = q0 pairing must
    give an exactly zero margin.
    """
    name = inequalities.Q0_SHARPNESS
    gen = campaign.gen
    outcomes = []
    injected_zero_ok = True
    for w in range(campaign.sharpness_weights):
        p = gen_ls_weight(GenConfig(seed=substream(campaign.seed, 1, w),
                                    n_breakpoints=gen.n_breakpoints,
                                    value_scale=gen.value_scale,
                                    grid=gen.grid))
        if campaign.arithmetic == "float":
            p = p.to_float()
        q0 = tent() if campaign.arithmetic == "rational" else tent().to_float()
        injected = inequalities.check_q0_sharpness(p, q0,
                                                   tol=campaign.tolerance)
        if injected.margin != 0:
            injected_zero_ok = False
        outcomes.append(((w, -1), injected.holds, injected.margin))
        for t in range(campaign.trials):
            q = gen_admissible_q(GenConfig(seed=substream(campaign.seed, 2, w, t),
                                           n_breakpoints=gen.n_breakpoints,
                                           value_scale=gen.value_scale,
                                           grid=gen.grid))
            if campaign.arithmetic == "float":
                q = q.to_float()
            verdict = inequalities.check_q0_sharpness(p, q,
                                                      tol=campaign.tolerance)
            outcomes.append(((w, t), verdict.holds, verdict.margin))
    passes = sum(1 for _, holds, _ in outcomes if holds)
    failures = len(outcomes) - passes
    min_margin = min(o[2] for o in outcomes)
    ok = failures == 0 and injected_zero_ok
    aggregate = AggregateModel(
        inequality=name, trials=len(outcomes), passes=passes,
        failures=failures, min_margin=wire.encode_number(min_margin),
        min_margin_case=None, failing_cases=[])
    return RunReportModel(campaign=campaign, ok=ok, verify=[aggregate])


def _witness_case(result: search.SearchResult) -> CaseModel:
    functions = {role: wire.decode_function(rec)
                 for role, rec in result.best_inputs.items()}
    margin = inequalities.margin_only(result.inequality, functions,
                                      variant=result.variant)
    return CaseModel(**wire.encode_case(
        result.inequality, functions, variant=result.variant,
        expected_margin=margin))


def run_falsify(campaign: CampaignModel) -> RunReportModel:
    """Hypothesis-necessity suite: drop hypotheses one at a time and search."""
    if campaign.drops is None:
        results = search.hypothesis_necessity_suite(
            campaign.budget, campaign.seed, campaign.gen.n_breakpoints)
    else:
        results = {}
        for k, key in enumerate(campaign.drops):
            ineq, _, hyp = key.partition(":")
            dropped = frozenset() if hyp in ("", "none") else frozenset({hyp})
            results[key] = search.minimize_margin(search.SearchProblem(
                ineq, dropped, campaign.gen.n_breakpoints, campaign.budget,
                substream(campaign.seed, 7, k)))
    expected = set(campaign.expected_violations
                   if campaign.expected_violations is not None
                   else [k for k in DEFAULT_EXPECTED_VIOLATIONS
                         if k in results])
    entries = []
    ok = True
    for key in results:
        result = results[key]
        found = result.violated
        is_expected = key in expected
        is_control = key.endswith(":none")
        if is_expected and not found:
            ok = False
        if is_control and found:
            ok = False
        entries.append(FalsifyEntryModel(
            key=key,
            status="FOUND-VIOLATION" if found else "NO-VIOLATION-FOUND",
            expected_violation=is_expected,
            result=SearchResultModel.from_result(result),
            witness=_witness_case(result) if found else None))
    return RunReportModel(campaign=campaign, ok=ok, falsify=entries)


def run_replay(campaign: CampaignModel) -> RunReportModel:
    """Re-evaluate a stored case in exact rational arithmetic."""
    if campaign.case is None:
        raise ValueError("replay mode needs a case document")
    decoded = wire.decode_case(campaign.case.model_dump())
    functions = {r: f.to_rational() for r, f in decoded["functions"].items()}
    verdict = inequalities.evaluate(decoded["inequality"], functions,
                                    variant=decoded["variant"],
                                    direction=decoded["direction"])
    matches: Optional[bool] = None
    if "expected_margin" in decoded:
        expected = decoded["expected_margin"]
        if isinstance(expected, Fraction) or isinstance(expected, int):
            matches = verdict.margin == expected
        else:
            matches = abs(float(verdict.margin) - expected) <= 1e-12
    return RunReportModel(campaign=campaign, ok=matches is not False,
                          replay=VerdictModel.from_verdict(verdict),
                          replay_margin_matches=matches)


def run_campaign(campaign: CampaignModel) -> RunReportModel:
    started = time.perf_counter()
    if campaign.mode == "verify":
        report = run_verify(campaign)
    elif campaign.mode == "falsify":
        report = run_falsify(campaign)
    elif campaign.mode == "sharpness":
        report = run_sharpness(campaign)
    elif campaign.mode == "replay":
        report = run_replay(campaign)
    else:  # pragma: no cover - pydantic forbids other literals
        raise ValueError(f"unknown mode {campaign.mode!r}")
    report.wall_time_s = time.perf_counter() - started
    return report
