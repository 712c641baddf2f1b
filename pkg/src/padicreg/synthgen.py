"""Seeded synthetic instances with known ground truth.

``gen_modp_instance`` follows the usual benchmark protocol: a random nonzero
coefficient vector, uniform sample points, and an exact ``round(r * N)``
subset of indices whose values are redrawn uniformly (a redrawn value may
coincide with the true one).

``gen_padic_instance`` corrupts digit by digit.  Each sample survives level
``e`` with probability ``1 - r``; a sample first hit at level ``e`` gets
``y = <c, x> + p**e * u`` with ``u`` a unit, so its residual has valuation
exactly ``e``.  Survivors of all ``E`` levels are clean.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from ._random import make_rng
from .fp_core import FpVector, ZpTrunc, affine_eval_rows, as_modulus, residue_dtype, zp_valuation
from .modp_regress import Dataset
from .padic_regress import PadicDataset


def uniform_residues(rng: np.random.Generator, modulus: int, size) -> np.ndarray:
    """Uniform integers in ``[0, modulus)``; exact for moduli beyond int64."""
    if modulus < 2**63:
        return rng.integers(0, modulus, size=size, dtype=np.int64)
    shape = (size,) if np.isscalar(size) else tuple(size)
    count = int(np.prod(shape))
    nbits = (modulus - 1).bit_length()
    words = -(-nbits // 32)
    out = []
    while len(out) < count:
        chunk = rng.integers(0, 2**32, size=(count - len(out), words), dtype=np.uint64)
        for row in chunk:
            v = 0
            for w in row:
                v = (v << 32) | int(w)
            v >>= words * 32 - nbits
            if v < modulus:  # rejection keeps the draw unbiased
                out.append(v)
    return np.array(out, dtype=object).reshape(shape)


@dataclass
class ModpInstance:
    dataset: Dataset
    truth: FpVector
    noise_indices: np.ndarray
    r: float
    seed: int

    def check(self):
        ds = self.dataset
        clean = np.ones(ds.N, dtype=bool)
        clean[self.noise_indices] = False
        fitted = affine_eval_rows(ds.xs, self.truth.to_array(), ds.p.p)
        assert np.array_equal(fitted[clean], ds.ys[clean]), "clean sample off the hyperplane"
        assert len(self.noise_indices) == round(self.r * ds.N)
        assert not self.truth.is_zero()


@dataclass
class PadicInstance:
    dataset: PadicDataset
    truth: list[int]
    corruption_levels: np.ndarray
    r: float
    seed: int

    def check(self):
        ds = self.dataset
        c = np.array(self.truth, dtype=object)
        resid = (ds.ys - affine_eval_rows(ds.xs, c, ds.modulus)) % ds.modulus
        for value, level in zip(resid, self.corruption_levels):
            assert zp_valuation(ZpTrunc(int(value), ds.p, ds.E)) == level


def gen_modp_instance(p, D: int, N: int, r: float, seed: int) -> ModpInstance:
    modulus = as_modulus(p)
    p = modulus.p
    if N < 1:
        raise ValueError("N must be positive")
    if not 0 <= r < 1:
        raise ValueError("r must lie in [0, 1)")
    rng = make_rng(seed)
    while True:
        truth = uniform_residues(rng, p, D + 1)
        if np.any(truth):
            break
    xs = uniform_residues(rng, p, (N, D)).astype(residue_dtype(p))
    ys = affine_eval_rows(xs, truth, p)
    noise = np.sort(rng.choice(N, size=round(r * N), replace=False))
    ys[noise] = uniform_residues(rng, p, len(noise))
    inst = ModpInstance(
        Dataset(modulus, xs, ys),
        FpVector(tuple(int(t) for t in truth), modulus),
        noise,
        r,
        seed,
    )
    inst.check()
    return inst


def gen_padic_instance(p, D: int, E: int, N: int, r: float, seed: int) -> PadicInstance:
    p = as_modulus(p).p
    if E < 1:
        raise ValueError("E must be at least 1")
    if N < 1:
        raise ValueError("N must be positive")
    if not 0 <= r < 1:
        raise ValueError("r must lie in [0, 1)")
    m = p**E
    rng = make_rng(seed)
    truth = uniform_residues(rng, m, D + 1)
    xs = uniform_residues(rng, m, (N, D))
    ys = affine_eval_rows(xs, np.asarray(truth, dtype=object), m).astype(object)

    hits = rng.random((N, E)) < r
    levels = np.where(hits.any(axis=1), hits.argmax(axis=1), E)
    for i in np.flatnonzero(levels < E):
        e = int(levels[i])
        low = int(rng.integers(1, p))  # nonzero last digit makes u a unit
        high = int(uniform_residues(rng, p ** (E - e - 1), 1)[0])
        u = low + p * high
        ys[i] = (ys[i] + p**e * u) % m

    inst = PadicInstance(
        PadicDataset(p, E, xs, ys),
        [int(t) for t in truth],
        levels.astype(np.int64),
        r,
        seed,
    )
    inst.check()
    return inst
