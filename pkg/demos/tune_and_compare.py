"""Tune the membership functions on synthetic data and compare the result.

Generates a small synthetic cohort, runs a short genetic optimization, and
prints the before/after sum of squared error plus a precision/recall/F
report for both models. A real tuning run would use a larger population
and more generations (see the 'tune' CLI subcommand); this is sized to
finish in a few seconds.

Run: python3 demos/tune_and_compare.py
"""

from scramblefit.config import ModelConfig
from scramblefit.evaluation import render_report_text, resubstitution
from scramblefit.ga import GaSettings, run_ga
from scramblefit.model import DifficultyModel
from scramblefit.session import simulate_participants
from scramblefit.words import default_tasks

records = simulate_participants(12, seed=42, tasks=default_tasks())
print(f"synthetic cohort: {len(records)} records, "
      f"{sum(1 for r in records if r.urd is None)} without a rating")

template = ModelConfig.default()
settings = GaSettings(seed=7, population_size=40, max_generations=12, stall_generations=12)
result = run_ga(settings, template, records)

print(f"\ntuning: {result.generations_run} generations")
print(f"  heuristic sse {result.heuristic_fitness:10.2f}")
print(f"  tuned sse     {result.best_fitness:10.2f}")
for stats in result.history[:: max(1, len(result.history) // 6)]:
    print(f"    gen {stats.generation:2d}  best {stats.best:9.2f}  mean {stats.mean:10.2f}")

blocks = {
    "Heuristic model": resubstitution(DifficultyModel(template), records),
    "Tuned model": resubstitution(DifficultyModel(result.best_config), records),
}
print()
print(render_report_text(blocks))
