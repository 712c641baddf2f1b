"""Digit-by-digit p-adic linear regression.

The last digit of the coefficient vector is estimated by regression mod p.
Samples whose residual is not divisible by p are dropped, the residuals of
the rest are divided by p, and the same estimate is repeated on the shifted
data for the next digit.  Everything is computed modulo ``p**E``; the sample
points keep their higher digits because later levels read them.
"""

from __future__ import annotations

from dataclasses import dataclass, replace

import numpy as np

from ._random import derive_seed
from .errors import EmptyLocus, LengthMismatch, PrecisionMismatch
from .fp_core import affine_eval_rows, as_modulus, residue_dtype
from .modp_regress import Dataset, RegressConfig, RunStats, linear_regression_mod_p


@dataclass
class PadicDataset:
    """Samples known modulo ``p**E``.

    ``level``, ``index`` and ``root`` are set by :func:`peel_level`: they
    record how many digits were peeled off and which samples of the original
    data set survive.
    """

    p: int
    E: int
    xs: np.ndarray
    ys: np.ndarray
    level: int = 0
    index: np.ndarray | None = None
    root: "PadicDataset | None" = None

    def __post_init__(self):
        self.p = as_modulus(self.p).p
        if self.E < 0:
            raise ValueError("precision must be non-negative")
        m = self.modulus
        xs = np.asarray(self.xs, dtype=object)
        ys = np.asarray(self.ys, dtype=object).reshape(-1)
        if xs.ndim == 1 and xs.size == 0:
            xs = xs.reshape(len(ys), 0)
        if xs.ndim != 2 or xs.shape[0] != ys.shape[0]:
            raise LengthMismatch("xs must have shape (N, D) matching ys")
        self.xs = (xs % m).astype(residue_dtype(m))
        self.ys = (ys % m).astype(residue_dtype(m))
        if self.index is None:
            self.index = np.arange(len(ys))

    @property
    def modulus(self) -> int:
        return self.p ** self.E

    @property
    def D(self) -> int:
        return self.xs.shape[1]

    @property
    def N(self) -> int:
        return self.xs.shape[0]

    def __len__(self):
        return self.N

    def mod_p(self) -> Dataset:
        return Dataset(self.p, self.xs % self.p, self.ys % self.p)

    def origin(self) -> "PadicDataset":
        return self.root if self.root is not None else self


@dataclass(frozen=True)
class DigitEstimate:
    theta: tuple[int, ...]
    stats: RunStats | None = None


def last_digit_regression(data: PadicDataset, config: RegressConfig | None = None) -> DigitEstimate:
    if data.E < 1:
        raise PrecisionMismatch("need at least one digit of precision")
    c, stats = linear_regression_mod_p(data.mod_p(), config)
    return DigitEstimate(tuple(int(v) for v in c.entries), stats)


def residual_filters(data: PadicDataset, theta, c_accum, e: int):
    """Both survival tests for the next level, as boolean masks over ``data``.

    The first divides ``y - <theta, x>`` by p at the current precision; the
    second checks ``y - <c_accum, x>`` against ``p**(e+1)`` on the original
    samples.  They agree whenever ``data`` was produced by peeling with the
    digits accumulated in ``c_accum``.
    """
    p = data.p
    theta = np.array([int(t) for t in theta], dtype=object)
    current = (data.ys - affine_eval_rows(data.xs, theta, data.modulus)) % data.modulus
    by_digit = np.asarray(current % p == 0, dtype=bool)

    root = data.origin()
    c_accum = np.array([int(t) for t in c_accum], dtype=object)
    xs0 = root.xs[data.index]
    ys0 = root.ys[data.index]
    full = (ys0 - affine_eval_rows(xs0, c_accum, root.modulus)) % root.modulus
    by_accum = np.asarray(full % p ** (e + 1) == 0, dtype=bool)
    return by_digit, by_accum


def peel_level(data: PadicDataset, theta, c_accum, e: int) -> PadicDataset:
    """Drop samples off the level-``e`` locus and shift the rest down a digit.

    ``c_accum`` must already include ``p**e * theta``.  The returned data set
    has precision ``data.E - 1``.
    """
    if data.E < 1:
        raise PrecisionMismatch("no digit left to peel")
    if len(theta) != data.D + 1 or len(c_accum) != data.D + 1:
        raise LengthMismatch("coefficient vectors must have length D+1")
    _, keep = residual_filters(data, theta, c_accum, e)
    if not keep.any():
        raise EmptyLocus(f"no sample survives level {e}", level=e)

    theta_arr = np.array([int(t) for t in theta], dtype=object)
    resid = (data.ys - affine_eval_rows(data.xs, theta_arr, data.modulus)) % data.modulus
    new_ys = resid[keep].astype(object) // data.p
    return PadicDataset(
        p=data.p,
        E=data.E - 1,
        xs=data.xs[keep],
        ys=new_ys,
        level=data.level + 1,
        index=data.index[keep],
        root=data.origin(),
    )


def level_config(config: RegressConfig, e: int) -> RegressConfig:
    """Level 0 uses ``config`` unchanged; deeper levels get derived seeds."""
    return config if e == 0 else replace(config, seed=derive_seed(config.seed, e))


def trailing_digits_regression(data: PadicDataset, config: RegressConfig | None = None,
                               stats_out: list | None = None) -> list[int]:
    """Estimate the coefficient vector modulo ``p**E``.

    Per-level :class:`RunStats` are appended to ``stats_out`` when given.
    """
    config = config or RegressConfig()
    p, E, D = data.p, data.E, data.D
    if E < 1:
        raise PrecisionMismatch("need at least one digit of precision")
    c = [0] * (D + 1)
    q = 1
    current = data
    for e in range(E):
        try:
            est = last_digit_regression(current, level_config(config, e))
        except Exception as exc:
            if stats_out is not None and getattr(exc, "stats", None) is not None:
                stats_out.append(exc.stats)
            raise
        if stats_out is not None:
            stats_out.append(est.stats)
        c = [ci + q * t for ci, t in zip(c, est.theta)]
        current = peel_level(current, est.theta, c, e)
        q *= p
    return c
