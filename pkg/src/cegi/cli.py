"""``cegi`` command-line entry point.

Data goes to stdout (or ``--out``), diagnostics to stderr. Exit status is 0
on success, 1 for validation or domain errors and 2 for I/O or decode errors.
"""

from __future__ import annotations

import argparse
import json
import sys
from dataclasses import asdict
from pathlib import Path
from typing import TextIO

from .analytics import (
    TASKS,
    params_from_records,
    rank_by_cegi,
    task_greener_factor,
)
from .emissions import EmissionProfile, load_intensity_table, lookup_gamma, track_replay
from .errors import CegiError, IngestError, InputDecodeError
from .fixtures import load_paper_fixtures
from .lora import load_param_table
from .metrics import ALL_METRICS, read_pairs, score_corpus
from .reporting import (
    ReportTable,
    cegi_payload,
    emission_annotations,
    fmt_fixed,
    gain_lines,
    greener_payload,
    rank_payload,
    render_cegi_table,
    render_emission_annotations,
    render_gain_table,
    render_greener_table,
    render_plot_data,
    render_rank_table,
)
from .store import STORE_ENV, ingest_into_store, load_store, store_dir

EXIT_OK = 0
EXIT_DOMAIN = 1
EXIT_IO = 2

ANALYSES = ("gains", "cegi", "rank", "greener", "annotations", "plot")


class UsageError(CegiError):
    pass


def _dump_json(payload) -> str:
    return json.dumps(payload, indent=2, ensure_ascii=False) + "\n"


def _emit(text: str, out: str | None, stdout: TextIO) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        stdout.write(text)


def _render(table: ReportTable, payload, fmt: str) -> str:
    if fmt == "json":
        return _dump_json(payload)
    return table.to_csv() if fmt == "csv" else table.to_markdown()


# subcommands


def cmd_ingest(args, stdout: TextIO) -> int:
    directory = store_dir(args.store)
    if directory is None:
        raise UsageError(f"no store directory: pass --store or set {STORE_ENV}")
    report = ingest_into_store(args.runs, directory)
    stdout.write(report.summary() + "\n")
    return EXIT_OK


def cmd_track(args, stdout: TextIO) -> int:
    table = load_intensity_table(args.gamma_table) if args.gamma_table else {}
    if args.region is None:
        if args.default_gamma is None:
            raise UsageError("pass --region with --gamma-table, or --default-gamma")
        gamma = args.default_gamma
    else:
        gamma = lookup_gamma(args.region, table, args.default_gamma)
    profile = EmissionProfile(gamma=gamma, pue=args.pue, region_code=args.region or "")
    with open(args.replay, newline="", encoding="utf-8") as fh:
        reading = track_replay(fh, profile)
    stdout.write(f"{fmt_fixed(reading.cf_g, 2)} g\n")
    return EXIT_OK


def cmd_score(args, stdout: TextIO) -> int:
    with open(args.pairs, encoding="utf-8") as fh:
        pairs = read_pairs(fh)
    stdout.write(_dump_json(score_corpus(args.metric, pairs)))
    return EXIT_OK


def _load_corpus(args):
    """Corpus, parameter table, and the fixture set when ``--paper-fixtures``."""
    if args.paper_fixtures:
        fx = load_paper_fixtures()
        params = load_param_table(args.params) if args.params else fx.params
        return fx.corpus, params, fx
    directory = store_dir(args.store)
    if directory is None:
        raise UsageError(f"no corpus: pass --store, set {STORE_ENV}, or use --paper-fixtures")
    corpus = load_store(directory)
    params = load_param_table(args.params) if args.params else params_from_records(corpus)
    return corpus, params, None


def _analyze_gains(args, corpus, fx) -> str:
    convention = fx.gain_conventions.get(args.task) if fx else None
    layout = args.layout or (convention.layout if convention else "config")
    avg_decimals = args.avg_decimals if args.avg_decimals is not None else (
        convention.avg_decimals if convention else None
    )
    baseline = args.gpt4o_baseline
    if baseline is None and convention and args.reference == "gpt4o":
        baseline = convention.gpt4o_baseline
    options = dict(metric=args.metric, gpt4o_baseline=baseline, layout=layout, avg_decimals=avg_decimals)
    table = render_gain_table(args.task, corpus, args.reference, **options)
    payload = {
        "task": args.task,
        "reference": args.reference,
        "layout": layout,
        "rows": [asdict(ln) for ln in gain_lines(args.task, corpus, args.reference, **options)],
    }
    return _render(table, payload, args.format)


def _analyze(args, corpus, params, fx) -> str:
    task = args.task
    if args.kind == "gains":
        return _analyze_gains(args, corpus, fx)
    if args.kind == "cegi":
        published = fx.published_cegi(task) if fx and args.metric is None else None
        table = render_cegi_table(task, corpus, params, metric=args.metric, published=published)
        return _render(table, cegi_payload(rank_by_cegi(task, corpus, params, args.metric)), args.format)
    if args.kind == "rank":
        report = rank_by_cegi(task, corpus, params, args.metric)
        return _render(render_rank_table(report), rank_payload(report), args.format)
    if args.kind == "greener":
        result = task_greener_factor(task, corpus)
        if args.format == "json":
            return _dump_json(greener_payload(result))
        table = render_greener_table(result)
        return table.to_csv() if args.format == "csv" else table.to_markdown()
    if args.kind == "annotations":
        table = render_emission_annotations(task, corpus, quant_bits=args.quant_bits)
        notes = emission_annotations(task, corpus, quant_bits=args.quant_bits)
        payload = {
            "task": task,
            "quant_bits": args.quant_bits,
            "rows": [{**asdict(a), "label": a.label} for a in notes],
        }
        return _render(table, payload, args.format)
    series = render_plot_data(task, corpus, params, metric=args.metric)
    if args.format == "json":
        return series.to_json()
    table = ReportTable(
        f"{task} emissions vs score",
        ("Model", "Q_b", "Rank", "C_E (g)", "Score", "Sweet spot"),
        tuple(
            (
                p.model_id,
                str(p.quant_bits),
                str(p.lora_rank),
                fmt_fixed(p.emissions_g, 2),
                fmt_fixed(p.score, 4),
                "★" if p.model_id == series.sweet_spot else "",
            )
            for p in series.points
        ),
    )
    return table.to_csv() if args.format == "csv" else table.to_markdown()


def cmd_analyze(args, stdout: TextIO) -> int:
    if args.task not in TASKS:
        raise UsageError(f"unknown task {args.task!r}; expected one of {', '.join(TASKS)}")
    corpus, params, fx = _load_corpus(args)
    _emit(_analyze(args, corpus, params, fx), args.out, stdout)
    return EXIT_OK


# parser


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="cegi", description="Carbon-efficiency analysis of LoRA fine-tuning runs."
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("ingest", help="validate a JSONL run log and add it to a store")
    p.add_argument("--runs", required=True, help="JSONL run log")
    p.add_argument("--store", help=f"store directory (default: ${STORE_ENV})")
    p.set_defaults(func=cmd_ingest)

    p = sub.add_parser("track", help="replay a power trace and report emissions in grams")
    p.add_argument("--replay", required=True, help="CSV with header t_s,cpu_w,gpu_w,ram_w")
    p.add_argument("--gamma-table", help="CSV with header region_code,gamma_kg_per_mwh")
    p.add_argument("--region", help="region code to look up in the gamma table")
    p.add_argument("--pue", type=float, default=1.0, help="power usage effectiveness (default 1.0)")
    p.add_argument("--default-gamma", type=float, help="kg CO2 per MWh when the region is unknown")
    p.set_defaults(func=cmd_track)

    p = sub.add_parser("score", help="score reference/hypothesis pairs")
    p.add_argument("--metric", required=True, choices=ALL_METRICS)
    p.add_argument("--pairs", required=True, help="TSV of reference<TAB>hypothesis lines")
    p.set_defaults(func=cmd_score)

    p = sub.add_parser("analyze", help="gain, CEGI, ranking and emission reports")
    p.add_argument("kind", choices=ANALYSES)
    p.add_argument("--task", required=True)
    source = p.add_mutually_exclusive_group()
    source.add_argument("--store", help=f"store directory (default: ${STORE_ENV})")
    source.add_argument("--paper-fixtures", action="store_true", help="use the bundled published corpus")
    p.add_argument("--format", choices=("md", "csv", "json"), default="md")
    p.add_argument("--out", help="write the report here instead of stdout")
    p.add_argument("--metric", help="metric to analyze (default: the task's primary metric)")
    p.add_argument("--params", help="trainable-parameter CSV (model_size,rank,trainable_params_m)")
    p.add_argument("--reference", choices=("base", "gpt4o"), default="base", help="gains: reference model")
    p.add_argument("--layout", choices=("config", "model"), help="gains: per-configuration or per-model rows")
    p.add_argument("--avg-decimals", type=int, help="gains: round per-model averages before dividing")
    p.add_argument("--gpt4o-baseline", type=float, help="gains: override the GPT-4o reference score")
    p.add_argument("--quant-bits", type=int, choices=(4, 8), help="annotations: restrict to one precision")
    p.set_defaults(func=cmd_analyze)
    return parser


def main(argv: list[str] | None = None, stdout: TextIO | None = None, stderr: TextIO | None = None) -> int:
    stdout = stdout or sys.stdout
    stderr = stderr or sys.stderr
    args = build_parser().parse_args(argv)
    try:
        return args.func(args, stdout)
    except IngestError as exc:
        print(f"error: {exc}", file=stderr)
        for failure in exc.failures:
            print(f"  {failure}", file=stderr)
        return EXIT_IO if exc.has_decode_errors else EXIT_DOMAIN
    except InputDecodeError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO
    except CegiError as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_DOMAIN
    except (OSError, UnicodeDecodeError) as exc:
        print(f"error: {exc}", file=stderr)
        return EXIT_IO


if __name__ == "__main__":
    sys.exit(main())
