# %% [markdown]
# Robust regression mod p, one step at a time
#
# A hidden affine map y = <c, x> over F_7 produced most of the samples; a few
# values were overwritten with noise.  Ordinary least squares makes no sense
# here, so the estimator hunts for a set of samples whose span agrees with a
# large share of the data.

# %%
import numpy as np

from padicreg import EchelonForm, RegressConfig, equation_system, linear_regression_mod_p
from padicreg.modp_regress import consensus_count, threshold_n
from padicreg.synthgen import gen_modp_instance

inst = gen_modp_instance(p=7, D=12, N=5000, r=0.05, seed=3)
data = inst.dataset
print("truth      ", inst.truth.entries)
print("noisy rows ", len(inst.noise_indices), "of", data.N)

# %% [markdown]
# The echelon form of a few clean samples describes an affine hull.  Count
# how many samples of the whole data set fall on it.

# %%
clean = np.setdiff1d(np.arange(data.N), inst.noise_indices)
A = EchelonForm(7, data.D)
for i in clean[:12]:
    A.insert_row(data.rows[i])
print("rows", A.rank, "equations", equation_system(A).size, "on hull", consensus_count(data, A))

# close the hull with one more clean row, or with a noisy one
good, bad = A.copy(), A.copy()
good.insert_row(data.rows[clean[12]])
bad.insert_row(data.rows[inst.noise_indices[0]])
print("clean hyperplane:", consensus_count(data, good))
print("noisy hyperplane:", consensus_count(data, bad))

# %% [markdown]
# Below the threshold the count says little, so the first phase grows the
# candidate blindly up to that size.

# %%
print("threshold n =", threshold_n(data.D, 7, data.N))

c, stats = linear_regression_mod_p(data, RegressConfig(seed=1))
print("estimate   ", c.entries)
print("restarts c0 =", stats.c0, " failed trials c1 =", stats.c1)
print("exact:", c == inst.truth)
