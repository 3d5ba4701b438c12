"""Command-line entry point.

Subcommands: metrics (scramble metric CSV), simulate (synthetic dataset),
tune (genetic optimization), eval (precision/recall/F report), serve (HTTP
session service), export-csv (session log to CSV). Randomized commands
require an explicit --seed so every run is reproducible from its flags.
"""

from __future__ import annotations

import argparse
import csv
import dataclasses
import sys
from pathlib import Path

from .config import ModelConfig
from .errors import ScramblefitError
from .evaluation import leave_one_out, render_report_csv, render_report_text, resubstitution
from .ga import GaSettings, run_ga, write_history_csv
from .model import DifficultyModel
from .scramble import degree_of_scramble, normalized_hamming, pearson
from .service import DEFAULT_DATA_DIR, LOG_FILENAME, create_app, data_dir_from_env
from .session import JsonlLog, read_records_jsonl, simulate_participants, write_records_jsonl
from .words import resolve_tasks


def _load_model(spec: str) -> DifficultyModel:
    return DifficultyModel.default() if spec == "heuristic" else DifficultyModel.load(spec)


def _cmd_metrics(args) -> int:
    tasks = resolve_tasks(args.words)
    rows = [
        (t.word, t.scramble, degree_of_scramble(t.word, t.scramble), normalized_hamming(t.word, t.scramble))
        for t in tasks
    ]
    r = pearson([row[2] for row in rows], [row[3] for row in rows])
    out = sys.stdout if args.out == "-" else open(args.out, "w", newline="", encoding="utf-8")
    try:
        writer = csv.writer(out)
        writer.writerow(["word", "scramble", "degree_of_scramble", "normalized_hamming"])
        for word, scramble, s, h in rows:
            writer.writerow([word, scramble, repr(s), repr(h)])
        writer.writerow(["pearson_r", repr(r), "", ""])
    finally:
        if out is not sys.stdout:
            out.close()
    return 0


def _cmd_simulate(args) -> int:
    tasks = resolve_tasks(args.words)
    records = simulate_participants(args.participants, args.seed, tasks)
    n = write_records_jsonl(records, args.out)
    rated = sum(1 for rec in records if rec.urd is not None)
    print(f"wrote {n} records ({rated} rated) to {args.out} [seed={args.seed}]")
    return 0


def _cmd_tune(args) -> int:
    template = ModelConfig.default() if args.template == "default" else ModelConfig.load(args.template)
    records = read_records_jsonl(args.data)
    settings = GaSettings(
        seed=args.seed,
        population_size=args.population,
        max_generations=args.generations,
        stall_generations=args.stall,
        elite_count=args.elite,
    )
    result = run_ga(settings, template, records)
    tuned = dataclasses.replace(
        result.best_config, version=f"{template.version}+ga-seed{args.seed}"
    )
    tuned.save(args.out)
    history_path = args.history or f"{args.out}.history.csv"
    write_history_csv(result.history, history_path)
    print(
        f"seed={args.seed} generations={result.generations_run}"
        f"{' (stalled)' if result.stalled else ''}: "
        f"sse {result.heuristic_fitness:.4f} -> {result.best_fitness:.4f}"
    )
    print(f"tuned config: {args.out}\nfitness history: {history_path}")
    return 0


def _cmd_eval(args) -> int:
    model = _load_model(args.model)
    records = read_records_jsonl(args.data)
    blocks = {
        "Resubstitution": resubstitution(model, records),
        f"Leave-One-Out ({args.loo_mode})": leave_one_out(model.config, records, mode=args.loo_mode),
    }
    sys.stdout.write(render_report_text(blocks))
    if args.csv:
        Path(args.csv).write_text(render_report_csv(blocks), encoding="utf-8")
        print(f"csv report: {args.csv}")
    return 0


def _cmd_serve(args) -> int:
    import uvicorn

    model = _load_model(args.model)
    tasks = resolve_tasks(args.words)
    data_dir = Path(args.data_dir) if args.data_dir else data_dir_from_env()
    app = create_app(model, tasks, data_dir / LOG_FILENAME)
    uvicorn.run(app, host=args.host, port=args.port, log_level="warning")
    return 0


def _cmd_export_csv(args) -> int:
    log_path = Path(args.log) if args.log else data_dir_from_env() / LOG_FILENAME
    lines = JsonlLog(log_path).read_all()
    columns = [
        "session_id", "task_id", "participant_id", "word", "scramble", "time_taken",
        "num_guesses", "was_skipped", "urd", "presentation_index",
        "iwd_crisp", "iwd_category", "model_version",
    ]
    with open(args.out, "w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh)
        writer.writerow(columns)
        for line in lines:
            writer.writerow([line.get(c, "") for c in columns])
    print(f"wrote {len(lines)} rows to {args.out}")
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="scramblefit", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("metrics", help="scramble metrics CSV plus Pearson r")
    p.add_argument("--words", default="default", help="'default' or a words JSON path")
    p.add_argument("--out", default="-", help="CSV output path, '-' for stdout")
    p.set_defaults(func=_cmd_metrics)

    p = sub.add_parser("simulate", help="generate a synthetic gameplay dataset")
    p.add_argument("--participants", type=int, default=48)
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--out", required=True, help="JSONL output path")
    p.add_argument("--words", default="default")
    p.set_defaults(func=_cmd_simulate)

    p = sub.add_parser("tune", help="tune membership parameters with the GA")
    p.add_argument("--data", required=True, help="JSONL gameplay records")
    p.add_argument("--seed", type=int, required=True)
    p.add_argument("--population", type=int, default=200)
    p.add_argument("--generations", type=int, default=100)
    p.add_argument("--stall", type=int, default=20)
    p.add_argument("--elite", type=int, default=2)
    p.add_argument("--template", default="default", help="'default' or a model config path")
    p.add_argument("--out", required=True, help="tuned config output path")
    p.add_argument("--history", default=None, help="fitness history CSV (default <out>.history.csv)")
    p.set_defaults(func=_cmd_tune)

    p = sub.add_parser("eval", help="precision/recall/F report")
    p.add_argument("--model", default="heuristic", help="'heuristic' or a model config path")
    p.add_argument("--data", required=True, help="JSONL gameplay records")
    p.add_argument("--loo-mode", choices=("record", "participant", "word"), default="participant")
    p.add_argument("--csv", default=None, help="also write the report as CSV")
    p.set_defaults(func=_cmd_eval)

    p = sub.add_parser("serve", help="run the HTTP session service")
    p.add_argument("--host", default="127.0.0.1")
    p.add_argument("--port", type=int, default=8000)
    p.add_argument("--model", default="heuristic")
    p.add_argument("--words", default="default")
    p.add_argument("--data-dir", default=None, help=f"defaults to $SCRAMBLEFIT_DATA_DIR or ./{DEFAULT_DATA_DIR}")
    p.set_defaults(func=_cmd_serve)

    p = sub.add_parser("export-csv", help="flatten a session log to CSV")
    p.add_argument("--log", default=None, help="session log path (default: data dir log)")
    p.add_argument("--out", required=True)
    p.set_defaults(func=_cmd_export_csv)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScramblefitError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    except OSError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
