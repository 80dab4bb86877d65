"""Render the table transcription into the shipped fixture files.

Usage: ``python -m cegi.fixtures.generate [--check]``. ``--check`` exits
non-zero when the files on disk differ from a fresh rendering.
"""

from __future__ import annotations

import argparse
import hashlib
import io
import json
import sys
from pathlib import Path

from ..analytics import RunRecord
from ..lora import ParamTable, write_param_table
from ..store import export_runs
from . import transcription as tx

DATA_DIR = Path(__file__).with_name("data")
RUNS_FILE = "runs.jsonl"
PARAMS_FILE = "trainable_params.csv"
PUBLISHED_FILE = "published.json"
CHECKSUM_FILE = "checksums.json"


def param_table() -> ParamTable:
    entries = {
        (size, rank): m for size, by_rank in tx.TRAINABLE_PARAMS.items() for rank, m in by_rank.items()
    }
    return ParamTable(entries, dict(tx.MEAN_TP_OVERRIDES))


def build_records() -> list[RunRecord]:
    params = param_table()
    records: list[RunRecord] = []

    def add(model, task, qb, rank, metric, base, ft, emissions, gpt4o):
        records.append(
            RunRecord(
                model_id=model,
                task=task,
                quant_bits=qb,
                lora_rank=rank,
                metric=metric,
                base_score=base,
                ft_score=ft,
                emissions_g=emissions,
                trainable_params_m=params.lookup(model, rank),
                gpt4o_score=gpt4o,
                runs=tx.RUNS_AVERAGED,
            )
        )

    for task, metric, table, gpt4o in (
        ("image_captioning", "spice", tx.CAPTIONING, tx.CAPTIONING_GPT4O),
        ("visual_qa", "bleu", tx.VQA, tx.VQA_GPT4O),
    ):
        for model, (base, by_rank) in table.items():
            for rank, (ft, emissions, _) in by_rank.items():
                add(model, task, 4, rank, metric, base, ft, emissions, gpt4o)

    for (model, qb, rank), (emissions, *pairs) in tx.SUMMARIZATION.items():
        for metric, (base, ft) in zip(("rouge1", "rouge2", "rougeL"), pairs):
            add(model, "summarization", qb, rank, metric, base, ft, emissions, tx.SUMMARIZATION_GPT4O[metric])

    for (model, qb, rank), (emissions, *pairs) in tx.TEXT_TO_SQL.items():
        for metric, (base, ft) in zip(("ea", "ves"), pairs):
            add(model, "text_to_sql", qb, rank, metric, base, ft, emissions, tx.TEXT_TO_SQL_GPT4O[metric])

    return records


def build_published() -> dict:
    annotations = {
        "image_captioning": [
            {"model_id": m, "lora_rank": r, "quant_bits": 4, "emissions_g": e, "annotation_pct": a}
            for m, (_, by_rank) in tx.CAPTIONING.items()
            for r, (_, e, a) in by_rank.items()
        ],
        "visual_qa": [
            {"model_id": m, "lora_rank": r, "quant_bits": 4, "emissions_g": e, "annotation_pct": a}
            for m, (_, by_rank) in tx.VQA.items()
            for r, (_, e, a) in by_rank.items()
        ],
        "summarization": [
            {"model_id": m, "lora_rank": r, "quant_bits": 8, "emissions_g": e, "annotation_pct": a}
            for (m, r), (e, a) in tx.SUMMARIZATION_8BIT_ANNOTATIONS.items()
        ],
        "text_to_sql": [
            {"model_id": m, "lora_rank": r, "quant_bits": 8, "emissions_g": e, "annotation_pct": a}
            for (m, r), (e, a) in tx.TEXT_TO_SQL_8BIT_ANNOTATIONS.items()
        ],
    }

    def gain_rows(table, per_config):
        rows = []
        for key, (base, ft, g_base, g_gpt) in table.items():
            model, rank = key if per_config else (key, None)
            rows.append(
                {
                    "model_id": model,
                    "lora_rank": rank,
                    "base_score": base,
                    "ft_score": ft,
                    "gain_vs_base_pct": g_base,
                    "gain_vs_gpt4o_pct": g_gpt,
                }
            )
        return rows

    gain_tables = {
        "image_captioning": gain_rows(tx.CAPTIONING_GAINS, True),
        "visual_qa": gain_rows(tx.VQA_GAINS, True),
        "summarization": gain_rows(tx.SUMMARIZATION_GAINS, False),
        "text_to_sql": gain_rows(tx.TEXT_TO_SQL_GAINS, False),
    }
    cegi_tables = {
        task: [
            {
                "model_id": m,
                "mean_tp_m": tp,
                "mean_emissions_g": ce,
                "mean_gain_pct": g,
                "cegi": c,
                "highlighted": m == tx.CEGI_HIGHLIGHTED[task],
            }
            for m, (tp, ce, g, c) in rows.items()
        ]
        for task, rows in tx.CEGI_TABLES.items()
    }
    return {
        "annotations": annotations,
        "cegi_tables": cegi_tables,
        "gain_conventions": tx.GAIN_TABLE_CONVENTIONS,
        "gain_tables": gain_tables,
        "greener_quoted": {
            task: {"candidate": c, "reference": r, "factor": f}
            for task, (c, r, f) in tx.GREENER_QUOTED.items()
        },
        "mean_tp_overrides": tx.MEAN_TP_OVERRIDES,
        "text_to_sql_ves_averages": {m: list(v) for m, v in tx.TEXT_TO_SQL_VES_AVERAGES.items()},
    }


def render() -> dict[str, bytes]:
    buf = io.StringIO()
    write_param_table(param_table(), buf)
    files = {
        RUNS_FILE: export_runs(build_records()).encode("utf-8"),
        PARAMS_FILE: buf.getvalue().encode("utf-8"),
        PUBLISHED_FILE: (json.dumps(build_published(), indent=1, sort_keys=True) + "\n").encode("utf-8"),
    }
    sums = {name: hashlib.sha256(data).hexdigest() for name, data in sorted(files.items())}
    files[CHECKSUM_FILE] = (json.dumps(sums, indent=1, sort_keys=True) + "\n").encode("utf-8")
    return files


def main(argv: list[str] | None = None) -> int:
    parser = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    parser.add_argument("--check", action="store_true", help="verify instead of writing")
    args = parser.parse_args(argv)
    files = render()
    if args.check:
        stale = [n for n, data in files.items() if not (DATA_DIR / n).exists() or (DATA_DIR / n).read_bytes() != data]
        for name in stale:
            print(f"stale: {name}", file=sys.stderr)
        return 1 if stale else 0
    DATA_DIR.mkdir(exist_ok=True)
    for name, data in files.items():
        (DATA_DIR / name).write_bytes(data)
        print(f"wrote {DATA_DIR / name}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
