# %% [markdown]
# Two consensus rules side by side
#
# "hull" compares the count on a candidate hull with half the share a clean
# hull of the same codimension would receive.  "printed" scales the count by
# p**(L-1), which stops rejecting anything once that power outgrows N.  On
# D=20 data the second rule lets noisy candidates through.

# %%
from padicreg import RegressConfig, linear_regression_mod_p
from padicreg.synthgen import gen_modp_instance

for gate in ("hull", "printed"):
    wrong = 0
    for seed in range(10):
        inst = gen_modp_instance(7, 20, 100_000, 0.01, seed=seed)
        c, stats = linear_regression_mod_p(inst.dataset, RegressConfig(seed=seed, gate=gate))
        wrong += c != inst.truth
        print(f"{gate:8s} seed {seed}: c0={stats.c0:2d} c1={stats.c1:2d} exact={c == inst.truth}")
    print(f"{gate}: {wrong}/10 wrong\n")
