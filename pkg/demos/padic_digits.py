# %% [markdown]
# Lifting an estimate digit by digit over Z_5
#
# Values are known modulo 5**3.  The last digit comes from a regression mod 5;
# samples that disagree are dropped and the rest are shifted down one digit.

# %%
from padicreg import PadicDataset, RegressConfig, last_digit_regression, peel_level
from padicreg import trailing_digits_regression
from padicreg.synthgen import gen_padic_instance

inst = gen_padic_instance(p=5, D=6, E=3, N=2000, r=0.03, seed=11)
print("truth mod 125:", inst.truth)
print("samples first corrupted at each level:",
      [int((inst.corruption_levels == e).sum()) for e in range(3)])

# %%
data, acc, q = inst.dataset, [0] * 7, 1
for e in range(3):
    theta = last_digit_regression(data, RegressConfig(seed=e)).theta
    acc = [a + q * t for a, t in zip(acc, theta)]
    print(f"level {e}: digit {theta}, samples {data.N}")
    data = peel_level(data, theta, acc, e) if e < 2 else data
    q *= 5
print("assembled:", acc)

# %% [markdown]
# The packaged loop does the same with derived seeds per level.  Truncating
# the data to fewer digits reproduces the leading digits of the estimate.

# %%
full = trailing_digits_regression(inst.dataset, RegressConfig(seed=4))
two = trailing_digits_regression(PadicDataset(5, 2, inst.dataset.xs, inst.dataset.ys),
                                 RegressConfig(seed=4))
print(full, [v % 25 for v in full] == two)
