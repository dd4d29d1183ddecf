"""A small version of the noisy Monte-Carlo comparison."""

# %%
from hyperprocrustes.bench import METHODS, BenchmarkConfig, run_benchmark

cfg = BenchmarkConfig(dims=(2, 4), sizes=(5, 10), trials=40, seed=7)
records, summary = run_benchmark(cfg)

# %% medians per cell
for cell in summary["cells"]:
    meds = "  ".join(f"{m}={cell['methods'][m]['Q2']:.2e}" for m in METHODS)
    print(f"d={cell['d']} N={cell['N']:2d}  {meds}")

# %% pooled outlier rates (failed runs count as outliers)
for m in METHODS:
    p = summary["pooled"][m]
    print(f"{m:8s} outliers {p['outlier_count']:3d}/{p['trials']}  "
          f"failed {p['failed_count']}")
