"""Command line entry point; a thin client of the HTTP service.

Without --server the requests run against the app in-process (no socket), so
verification campaigns work offline and in CI; with --server they go to a
remote instance.  Exit codes: 0 when the run's expectations are met (verify:
no violations; falsify: the expected violations were found; replay: stored
margin reproduced), 1 on expectation mismatch, 2 on usage or config errors.
"""

from __future__ import annotations

import argparse
import asyncio
import json
import sys
from pathlib import Path
from typing import Optional

import httpx

from . import inequalities
from .models import CampaignModel, CaseModel, RunReportModel

USAGE_ERROR = 2


class ClientError(Exception):
    """Service-side rejection (bad config, parse failure, ...)."""


def _post(path: str, payload: dict, server: Optional[str]) -> dict:
    if server:
        response = httpx.post(server.rstrip("/") + path, json=payload,
                              timeout=None)
    else:
        from .service.app import app

        async def _go():
            transport = httpx.ASGITransport(app=app)
            async with httpx.AsyncClient(transport=transport,
                                         base_url="http://plineq",
                                         timeout=None) as client:
                return await client.post(path, json=payload)

        response = asyncio.run(_go())
    if response.status_code >= 400:
        try:
            detail = response.json().get("detail", response.text)
        except ValueError:
            detail = response.text
        raise ClientError(f"{path} failed ({response.status_code}): {detail}")
    return response.json()


def _load_json(path: str) -> dict:
    try:
        with open(path, encoding="utf-8") as fh:
            return json.load(fh)
    except OSError as exc:
        raise ClientError(f"cannot read {path}: {exc}")
    except json.JSONDecodeError as exc:
        raise ClientError(f"{path} is not valid JSON "
                          f"(line {exc.lineno}, column {exc.colno}): {exc.msg}")


def _write_report(report: dict, out: Optional[str]) -> None:
    text = json.dumps(report, indent=2) + "\n"
    if out:
        Path(out).parent.mkdir(parents=True, exist_ok=True)
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _summarize(report: dict, stream) -> None:
    if report.get("verify"):
        for agg in report["verify"]:
            print(f"{agg['inequality']}: {agg['passes']}/{agg['trials']} pass, "
                  f"min margin {agg['min_margin']}", file=stream)
    if report.get("falsify"):
        for entry in report["falsify"]:
            mark = " (expected)" if entry["expected_violation"] else ""
            print(f"{entry['key']}: {entry['status']}{mark} "
                  f"[best margin {entry['result']['best_margin']:.3e}, "
                  f"{entry['result']['iterations_used']} iterations]",
                  file=stream)
    if report.get("replay"):
        verdict = report["replay"]
        print(f"{verdict['name']}: lhs={verdict['lhs']} rhs={verdict['rhs']} "
              f"margin={verdict['margin']} holds={verdict['holds']}",
              file=stream)
        if report.get("replay_margin_matches") is not None:
            print(f"stored margin reproduced: "
                  f"{report['replay_margin_matches']}", file=stream)
    print(f"ok={report['ok']}", file=stream)


def _build_campaign(args: argparse.Namespace) -> CampaignModel:
    doc: dict = {}
    if args.campaign:
        doc = _load_json(args.campaign)
        if "inequality" in doc and "functions" in doc:
            # a bare case document: replay it
            doc = {"mode": "replay", "case": doc}
    for flag in ("mode", "trials", "seed", "arithmetic", "tolerance",
                 "budget"):
        value = getattr(args, flag)
        if value is not None:
            doc[flag] = value
    if args.inequalities:
        doc["inequalities"] = args.inequalities
    if args.out is not None:
        doc["out"] = args.out
    if "mode" not in doc:
        raise ClientError("no mode: pass --mode or a campaign file")
    try:
        return CampaignModel(**doc)
    except Exception as exc:
        raise ClientError(f"invalid campaign: {exc}")


def _cmd_run(args: argparse.Namespace) -> int:
    campaign = _build_campaign(args)
    report = _post("/campaigns/run",
                   json.loads(campaign.model_dump_json()), args.server)
    _write_report(report, campaign.out)
    _summarize(report, sys.stdout if campaign.out else sys.stderr)
    return 0 if report["ok"] else 1


def _cmd_replay(args: argparse.Namespace) -> int:
    doc = _load_json(args.case_file)
    try:
        case = CaseModel(**doc)
    except Exception as exc:
        raise ClientError(f"invalid case file: {exc}")
    report = _post("/replay", json.loads(case.model_dump_json()), args.server)
    _write_report(report, args.out)
    _summarize(report, sys.stdout if args.out else sys.stderr)
    return 0 if report["ok"] else 1


def _cmd_serve(args: argparse.Namespace) -> int:
    import uvicorn

    from .service.app import app
    uvicorn.run(app, host=args.host, port=args.port)
    return 0


def _cmd_schema(args: argparse.Namespace) -> int:
    out_dir = Path(args.out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    for name, model in (("campaign", CampaignModel),
                        ("run_report", RunReportModel),
                        ("case", CaseModel)):
        path = out_dir / f"{name}.schema.json"
        path.write_text(json.dumps(model.model_json_schema(), indent=2) + "\n",
                        encoding="utf-8")
        print(path)
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="plineq",
        description="Verify or falsify integral inequalities over exact "
                    "piecewise-linear functions.")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a campaign (verify/falsify/"
                                     "sharpness/replay)")
    run.add_argument("--campaign", help="campaign JSON file (or a case file "
                                        "for replay mode)")
    run.add_argument("--mode", choices=("verify", "falsify", "replay",
                                        "sharpness"))
    run.add_argument("--trials", type=int)
    run.add_argument("--seed", type=int)
    run.add_argument("--arithmetic", choices=("rational", "float"))
    run.add_argument("--tolerance", type=float)
    run.add_argument("--budget", type=int, help="search budget per "
                                                "hypothesis drop (falsify)")
    run.add_argument("--inequalities", nargs="+",
                     choices=inequalities.INEQUALITIES, metavar="NAME")
    run.add_argument("--out", help="write the report here instead of stdout")
    run.add_argument("--server", help="base URL of a running service "
                                      "(default: in-process)")
    run.set_defaults(func=_cmd_run)

    replay = sub.add_parser("replay", help="re-evaluate a stored case "
                                           "in rational arithmetic")
    replay.add_argument("case_file")
    replay.add_argument("--out")
    replay.add_argument("--server")
    replay.set_defaults(func=_cmd_replay)

    serve = sub.add_parser("serve", help="start the HTTP service")
    serve.add_argument("--host", default="127.0.0.1")
    serve.add_argument("--port", type=int, default=8000)
    serve.set_defaults(func=_cmd_serve)

    schema = sub.add_parser("schema", help="write the campaign/report/case "
                                           "JSON schemas")
    schema.add_argument("--out-dir", default="schemas")
    schema.set_defaults(func=_cmd_schema)

    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except ClientError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return USAGE_ERROR
    except httpx.HTTPError as exc:
        print(f"error: cannot reach service: {exc}", file=sys.stderr)
        return USAGE_ERROR


if __name__ == "__main__":
    sys.exit(main())
