# %% [markdown]
# A seeded battery in the layout of case / c0 / c1
#
# Same parameters, same seed: same table, apart from timings.

# %%
from padicreg.experiment import run_experiment

report = run_experiment(p=7, D=20, N=100_000, r=0.01, rep=3, cases=5, seed=0)
print(report.to_csv())

# %%
for row in report.rows:
    print(f"{row.case:3d} & {row.c0} & {row.c1} \\\\")
print("all exact:", all(r.success for r in report.rows))
