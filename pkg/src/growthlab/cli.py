"""Command-line front end.

The CLI is a thin client over the service handlers: by default it calls
them in-process, and with --server it POSTs the same request to a running
instance instead. Either way the bytes printed for a given input are
identical, run after run.

Output formats:

* csv (default) — one table on stdout, '.' decimal separator, scientific
  notation with an explicit-sign exponent once |value| >= 1e6;
* json — a single document {"config": ..., "results": [...]}.

Rates are printed as fractions per year unless --rate-unit percent is
given, which multiplies the two rate columns of the `rates` command by
exactly 100 and changes nothing else.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import json
import sys
from dataclasses import dataclass

import httpx
import numpy as np

from .errors import DuplicateYear, GrowthError, ParseError, TooFewRows
from .fitting import SPACES
from .series import TimeSeries, make_series
from .service import handlers, schemas

COMMANDS = ("rates", "fit", "project", "compare", "verify")


@dataclass(frozen=True)
class RunConfig:
    """Echo of every knob a run was given; serialized into JSON output."""

    command: str
    input: str | None = None
    space: str = "rate-vs-time"
    window_start: float | None = None
    window_end: float | None = None
    smoother_window: int = 5
    smoother_degree: int = 2
    anchor_year: float | None = None
    anchor_value: float | None = None
    grid_start: float | None = None
    grid_end: float | None = None
    grid_step: float = 1.0
    format: str = "csv"
    rate_unit: str = "fraction"
    guard_fraction: float = 0.001
    scenario_rate: float | None = None
    server: str | None = None


# --- input ----------------------------------------------------------------

def ingest_csv(path: str) -> TimeSeries:
    """Read a year,value table into a TimeSeries.

    The first non-blank row is treated as a header when its first field is
    not numeric. Rows are sorted by year before validation, so an unsorted
    file is fine but a repeated year is not.
    """
    rows: list[tuple[float, float]] = []
    with open(path, newline="") as fh:
        reader = csv.reader(fh)
        saw_first = False
        for record in reader:
            if not record or all(not field.strip() for field in record):
                continue
            if not saw_first:
                saw_first = True
                try:
                    float(record[0])
                except ValueError:
                    continue  # header row
            if len(record) < 2:
                raise ParseError(
                    f"row {reader.line_num}: expected 'year,value', got "
                    f"{len(record)} field(s)"
                )
            try:
                year = float(record[0])
                value = float(record[1])
            except ValueError:
                raise ParseError(
                    f"row {reader.line_num}: could not parse "
                    f"{record[0]!r},{record[1]!r} as numbers"
                ) from None
            rows.append((year, value))
    if len(rows) < 2:
        raise TooFewRows(f"need at least 2 data rows, found {len(rows)}")
    rows.sort(key=lambda pair: pair[0])
    for i in range(1, len(rows)):
        if rows[i][0] == rows[i - 1][0]:
            raise DuplicateYear(f"year {rows[i][0]!r} appears more than once")
    years = [pair[0] for pair in rows]
    values = [pair[1] for pair in rows]
    return make_series(years, values)


# --- number rendering -------------------------------------------------------

def fmt_float(x: float) -> str:
    x = float(x)
    if abs(x) >= 1e6:
        return np.format_float_scientific(x, unique=True, trim="-")
    return repr(x)


def fmt_year(t: float) -> str:
    t = float(t)
    if t == int(t):
        return str(int(t))
    return fmt_float(t)


def fmt_cell(x) -> str:
    if x is None:
        return ""
    if isinstance(x, str):
        return x
    if isinstance(x, int):
        return str(x)
    return fmt_float(x)


# --- argument parsing -------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="growthlab",
        description="Estimate growth rates, fit rate-driven growth models, "
        "and project them forward.",
    )
    parser.add_argument("--input", help="CSV file of year,value rows")
    parser.add_argument(
        "--command", required=True, choices=COMMANDS, help="what to run"
    )
    parser.add_argument(
        "--space",
        choices=SPACES,
        default="rate-vs-time",
        help="linearizing space used by fit/project/compare",
    )
    parser.add_argument("--window-start", type=float)
    parser.add_argument("--window-end", type=float)
    parser.add_argument("--smoother-window", type=int, default=5)
    parser.add_argument("--smoother-degree", type=int, default=2)
    parser.add_argument("--anchor-year", type=float)
    parser.add_argument("--anchor-value", type=float)
    parser.add_argument("--grid-start", type=float)
    parser.add_argument("--grid-end", type=float)
    parser.add_argument("--grid-step", type=float, default=1.0)
    parser.add_argument("--format", choices=("csv", "json"), default="csv")
    parser.add_argument(
        "--rate-unit", choices=("fraction", "percent"), default="fraction"
    )
    parser.add_argument("--guard-fraction", type=float, default=0.001)
    parser.add_argument(
        "--scenario-rate",
        type=float,
        help="project/compare a constant-rate scenario at this rate",
    )
    parser.add_argument(
        "--server",
        help="base URL of a running service; runs in-process when omitted",
    )
    return parser


def config_from_args(args: argparse.Namespace) -> RunConfig:
    return RunConfig(
        command=args.command,
        input=args.input,
        space=args.space,
        window_start=args.window_start,
        window_end=args.window_end,
        smoother_window=args.smoother_window,
        smoother_degree=args.smoother_degree,
        anchor_year=args.anchor_year,
        anchor_value=args.anchor_value,
        grid_start=args.grid_start,
        grid_end=args.grid_end,
        grid_step=args.grid_step,
        format=args.format,
        rate_unit=args.rate_unit,
        guard_fraction=args.guard_fraction,
        scenario_rate=args.scenario_rate,
        server=args.server,
    )


def _validate(parser: argparse.ArgumentParser, cfg: RunConfig) -> None:
    if (cfg.window_start is None) != (cfg.window_end is None):
        parser.error("--window-start and --window-end must be given together")
    if (cfg.anchor_year is None) != (cfg.anchor_value is None):
        parser.error("--anchor-year and --anchor-value must be given together")
    if cfg.command in ("rates", "fit") and cfg.input is None:
        parser.error(f"--input is required for --command {cfg.command}")
    if cfg.command in ("project", "compare"):
        if cfg.grid_end is None:
            parser.error(f"--grid-end is required for --command {cfg.command}")
        if cfg.input is None and cfg.scenario_rate is None:
            parser.error(
                f"--command {cfg.command} needs --input and/or --scenario-rate"
            )


# --- request assembly -------------------------------------------------------

def _series_payload(cfg: RunConfig) -> schemas.SeriesPayload | None:
    if cfg.input is None:
        return None
    ts = ingest_csv(cfg.input)
    return schemas.SeriesPayload(
        times=[float(t) for t in ts.times],
        values=[float(v) for v in ts.values],
    )


def _smoother_payload(cfg: RunConfig) -> schemas.SmootherPayload:
    return schemas.SmootherPayload(
        window=cfg.smoother_window, degree=cfg.smoother_degree
    )


def _window_payload(cfg: RunConfig) -> schemas.WindowPayload | None:
    if cfg.window_start is None:
        return None
    return schemas.WindowPayload(t_start=cfg.window_start, t_end=cfg.window_end)


def _anchor_payload(cfg: RunConfig) -> schemas.AnchorPayload | None:
    if cfg.anchor_year is None:
        return None
    return schemas.AnchorPayload(year=cfg.anchor_year, value=cfg.anchor_value)


def _grid_payload(
    cfg: RunConfig, series: schemas.SeriesPayload | None
) -> schemas.GridPayload:
    start = cfg.grid_start
    if start is None:
        start = cfg.anchor_year
    if start is None and series is not None:
        start = series.times[-1]
    if start is None:
        raise GrowthError(
            "cannot place the grid: give --grid-start or --anchor-year",
            module="cli",
        )
    return schemas.GridPayload(start=start, end=cfg.grid_end, step=cfg.grid_step)


def _project_request(cfg: RunConfig) -> schemas.ProjectRequest:
    series = _series_payload(cfg)
    return schemas.ProjectRequest(
        grid=_grid_payload(cfg, series),
        series=series,
        scenario_rate=cfg.scenario_rate,
        space=cfg.space,
        window=_window_payload(cfg),
        smoother=_smoother_payload(cfg),
        anchor=_anchor_payload(cfg),
        guard_fraction=cfg.guard_fraction,
    )


def _compare_request(cfg: RunConfig) -> schemas.CompareRequest:
    series = _series_payload(cfg)
    return schemas.CompareRequest(
        grid=_grid_payload(cfg, series),
        series=series,
        scenario_rate=cfg.scenario_rate,
        space=cfg.space,
        window=_window_payload(cfg),
        smoother=_smoother_payload(cfg),
        anchor=_anchor_payload(cfg),
        guard_fraction=cfg.guard_fraction,
    )


# --- dispatch ----------------------------------------------------------------

def _remote_post(server: str, path: str, payload: dict | None, response_cls):
    url = server.rstrip("/") + path
    response = httpx.post(url, json=payload, timeout=120.0)
    if response.status_code == 422:
        body = response.json()
        if "error" in body:
            err = body["error"]
            raise GrowthError(err["message"], module=err["module"])
        raise GrowthError(f"request rejected: {body!r}", module="cli")
    response.raise_for_status()
    return response_cls.model_validate(response.json())


def run_command(cfg: RunConfig):
    """Execute cfg and return the service response object."""
    if cfg.command == "rates":
        req = schemas.RatesRequest(
            series=_series_payload(cfg), smoother=_smoother_payload(cfg)
        )
        if cfg.server:
            return _remote_post(
                cfg.server, "/rates", req.model_dump(), schemas.RatesResponse
            )
        return handlers.handle_rates(req)
    if cfg.command == "fit":
        req = schemas.FitRequest(
            series=_series_payload(cfg),
            space=cfg.space,
            window=_window_payload(cfg),
            smoother=_smoother_payload(cfg),
            anchor=_anchor_payload(cfg),
        )
        if cfg.server:
            return _remote_post(
                cfg.server, "/fit", req.model_dump(), schemas.FitResponse
            )
        return handlers.handle_fit(req)
    if cfg.command == "project":
        req = _project_request(cfg)
        if cfg.server:
            return _remote_post(
                cfg.server, "/project", req.model_dump(), schemas.ProjectResponse
            )
        return handlers.handle_project(req)
    if cfg.command == "compare":
        req = _compare_request(cfg)
        if cfg.server:
            return _remote_post(
                cfg.server, "/compare", req.model_dump(), schemas.CompareResponse
            )
        return handlers.handle_compare(req)
    if cfg.command == "verify":
        if cfg.server:
            return _remote_post(cfg.server, "/verify", None, schemas.VerifyResponse)
        return handlers.handle_verify()
    raise GrowthError(f"unknown command {cfg.command!r}", module="cli")


# --- output ------------------------------------------------------------------

def _rate_scale(cfg: RunConfig) -> float:
    return 100.0 if cfg.rate_unit == "percent" else 1.0


def _scaled(x: float | None, scale: float) -> float | None:
    if x is None:
        return None
    return x * scale


def _diagnostics_dict(diag: schemas.DiagnosticsPayload) -> dict:
    out: dict = {}
    if diag.singularity_time is not None:
        out["singularity_time"] = diag.singularity_time
    if diag.extremum is not None:
        out["extremum"] = {"time": diag.extremum.time, "size": diag.extremum.size}
    if diag.size_limit is not None:
        out["size_limit"] = diag.size_limit
    if diag.reciprocal_limit is not None:
        out["reciprocal_limit"] = diag.reciprocal_limit
    return out


def _csv_rows(cfg: RunConfig, response) -> list[list[str]]:
    if cfg.command == "rates":
        scale = _rate_scale(cfg)
        rows = [["year", "direct_rate", "smoothed_rate"]]
        for row in response.rows:
            rows.append(
                [
                    fmt_year(row.year),
                    fmt_cell(_scaled(row.direct_rate, scale)),
                    fmt_cell(_scaled(row.smoothed_rate, scale)),
                ]
            )
        return rows
    if cfg.command == "fit":
        rows = [["field", "value"]]
        rows.append(["kind", response.kind])
        rows.append(["space", response.space])
        for name, value in response.parameters.items():
            rows.append([f"parameters.{name}", fmt_cell(value)])
        for name in ("a", "b", "rss"):
            rows.append([f"line.{name}", fmt_cell(getattr(response.line, name))])
        rows.append(["line.n", str(response.line.n)])
        rows.append(["window.t_start", fmt_cell(response.window.t_start)])
        rows.append(["window.t_end", fmt_cell(response.window.t_end)])
        diag = response.diagnostics
        if diag.singularity_time is not None:
            rows.append(
                ["diagnostics.singularity_time", fmt_cell(diag.singularity_time)]
            )
        if diag.extremum is not None:
            rows.append(
                ["diagnostics.extremum.time", fmt_cell(diag.extremum.time)]
            )
            rows.append(
                ["diagnostics.extremum.size", fmt_cell(diag.extremum.size)]
            )
        if diag.size_limit is not None:
            rows.append(["diagnostics.size_limit", fmt_cell(diag.size_limit)])
        if diag.reciprocal_limit is not None:
            rows.append(
                ["diagnostics.reciprocal_limit", fmt_cell(diag.reciprocal_limit)]
            )
        if response.origin_line is not None:
            for name in ("a", "b", "rss"):
                rows.append(
                    [
                        f"origin_line.{name}",
                        fmt_cell(getattr(response.origin_line, name)),
                    ]
                )
            rows.append(["origin_line.n", str(response.origin_line.n)])
        if response.intercept_stderr is not None:
            rows.append(["intercept_stderr", fmt_cell(response.intercept_stderr)])
        return rows
    if cfg.command == "project":
        rows = [["year", "value", "flag"]]
        for row in response.results[0].rows:
            rows.append([fmt_year(row.year), fmt_cell(row.value), row.flag])
        return rows
    if cfg.command == "compare":
        names: list[str] = []
        for result in response.results:
            name = result.kind
            if name in names:
                suffix = 2
                while f"{name}_{suffix}" in names:
                    suffix += 1
                name = f"{name}_{suffix}"
            names.append(name)
        rows = [["year"] + names]
        n_points = len(response.results[0].rows)
        for i in range(n_points):
            year = response.results[0].rows[i].year
            cells = [fmt_year(year)]
            for result in response.results:
                row = result.rows[i]
                cells.append(fmt_cell(row.value) if row.value is not None else row.flag)
            rows.append(cells)
        return rows
    if cfg.command == "verify":
        rows = [["model", "grid_size", "step_size", "max_rel_error"]]
        for row in response.rows:
            rows.append(
                [
                    row.model,
                    str(row.grid_size),
                    fmt_cell(row.step_size),
                    fmt_cell(row.max_rel_error),
                ]
            )
        return rows
    raise GrowthError(f"unknown command {cfg.command!r}", module="cli")


def _json_results(cfg: RunConfig, response) -> list:
    if cfg.command == "rates":
        scale = _rate_scale(cfg)
        return [
            {
                "rows": [
                    {
                        "year": row.year,
                        "direct_rate": _scaled(row.direct_rate, scale),
                        "smoothed_rate": _scaled(row.smoothed_rate, scale),
                    }
                    for row in response.rows
                ]
            }
        ]
    if cfg.command == "fit":
        result = {
            "kind": response.kind,
            "space": response.space,
            "parameters": dict(response.parameters),
            "line": {
                "a": response.line.a,
                "b": response.line.b,
                "rss": response.line.rss,
                "n": response.line.n,
            },
            "window": {
                "t_start": response.window.t_start,
                "t_end": response.window.t_end,
            },
            "diagnostics": _diagnostics_dict(response.diagnostics),
        }
        if response.origin_line is not None:
            result["origin_line"] = {
                "a": response.origin_line.a,
                "b": response.origin_line.b,
                "rss": response.origin_line.rss,
                "n": response.origin_line.n,
            }
        if response.intercept_stderr is not None:
            result["intercept_stderr"] = response.intercept_stderr
        return [result]
    if cfg.command in ("project", "compare"):
        return [
            {
                "kind": result.kind,
                "parameters": dict(result.parameters),
                "diagnostics": _diagnostics_dict(result.diagnostics),
                "rows": [
                    {"year": row.year, "value": row.value, "flag": row.flag}
                    for row in result.rows
                ],
            }
            for result in response.results
        ]
    if cfg.command == "verify":
        return [
            {
                "rows": [
                    {
                        "model": row.model,
                        "grid_size": row.grid_size,
                        "step_size": row.step_size,
                        "max_rel_error": row.max_rel_error,
                    }
                    for row in response.rows
                ]
            }
        ]
    raise GrowthError(f"unknown command {cfg.command!r}", module="cli")


def render(cfg: RunConfig, response, stream) -> None:
    if cfg.format == "json":
        document = {
            "config": dataclasses.asdict(cfg),
            "results": _json_results(cfg, response),
        }
        stream.write(json.dumps(document, indent=2))
        stream.write("\n")
        return
    writer = csv.writer(stream, lineterminator="\n")
    writer.writerows(_csv_rows(cfg, response))


# --- entry point --------------------------------------------------------------

def main(argv=None) -> int:
    parser = build_parser()
    cfg = config_from_args(parser.parse_args(argv))
    _validate(parser, cfg)
    try:
        response = run_command(cfg)
    except GrowthError as err:
        print(err.qualified(), file=sys.stderr)
        return 1
    except OSError as err:
        print(f"cli: {err}", file=sys.stderr)
        return 1
    except httpx.HTTPError as err:
        print(f"cli: {err}", file=sys.stderr)
        return 1
    render(cfg, response, sys.stdout)
    return 0


if __name__ == "__main__":
    raise SystemExit(main())
