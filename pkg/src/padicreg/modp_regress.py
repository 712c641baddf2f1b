"""Robust linear regression modulo p by randomized consensus.

The estimator grows a candidate index set one random sample at a time while
maintaining its reduced echelon form.  A candidate is trusted when enough of
the whole data set lies on the affine hull of its samples: a hull strictly
inside the true hyperplane captures a ``p**-(#J-1)`` share of the clean
samples, a hull that leaves the hyperplane only ``p**-#J``.

Below a size threshold ``n`` the hull is too large for the count to carry
information, so the first phase extends blindly and runs the consensus test
once; the second phase extends one verified sample at a time and gives up
after ``rep`` consecutive rejections, which triggers a restart.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field

import numpy as np

from ._random import make_rng
from .echelon import (
    EchelonForm,
    InsertOutcome,
    _work_dtype,
    coefficient_vector,
    count_members,
    equation_system,
)
from .errors import (
    EmptyForm,
    LengthMismatch,
    RestartBudgetExhausted,
    TrialBudgetExhausted,
)
from .fp_core import PrimeModulus, as_modulus, exact_float_dtype, floor_log

log = logging.getLogger(__name__)

#: consensus rules accepted by :func:`noise_free_matrix`
GATES = ("hull", "printed")


@dataclass
class Dataset:
    """Samples ``(x_i, y_i)`` over F_p with dense index set ``0..N-1``."""

    p: PrimeModulus
    xs: np.ndarray
    ys: np.ndarray

    def __post_init__(self):
        self.p = as_modulus(self.p)
        p = self.p.p
        dtype = _work_dtype(p)
        xs = np.asarray(self.xs, dtype=object)
        if xs.ndim == 1 and xs.size == 0:
            xs = xs.reshape(len(self.ys), 0)
        if xs.ndim != 2:
            raise LengthMismatch("xs must be a 2-d array of shape (N, D)")
        ys = np.asarray(self.ys, dtype=object).reshape(-1)
        if xs.shape[0] != ys.shape[0]:
            raise LengthMismatch(f"{xs.shape[0]} x-rows but {ys.shape[0]} y-values")
        if ys.shape[0] < 1:
            raise ValueError("a data set needs at least one sample")
        self.xs = (xs % p).astype(dtype)
        self.ys = (ys % p).astype(dtype)
        self._rows = None
        self._aug = None

    @property
    def D(self) -> int:
        return self.xs.shape[1]

    @property
    def N(self) -> int:
        return self.xs.shape[0]

    def __len__(self):
        return self.N

    @property
    def rows(self) -> np.ndarray:
        """Sample rows ``(x_i, 1 | y_i)``, shape ``(N, D + 2)``."""
        if self._rows is None:
            ones = np.ones((self.N, 1), dtype=self.xs.dtype)
            self._rows = np.concatenate([self.xs, ones, self.ys[:, None]], axis=1)
        return self._rows

    @property
    def aug(self) -> np.ndarray:
        """``[x_i | 1]``, stored as floats when BLAS products stay exact."""
        if self._aug is None:
            aug = self.rows[:, :-1]
            float_type = exact_float_dtype((self.p.p - 1) ** 2 * (self.D + 1))
            self._aug = aug if float_type is None else aug.astype(float_type)
        return self._aug


@dataclass
class RegressConfig:
    """Hyperparameters of one regression run.

    ``max_restarts=None`` picks ``ceil(10 * (1 - r_assumed) ** -n)``.
    ``max_draws=None`` allows ``10_000 * N`` random draws in total.
    """

    rep: int = 3
    max_restarts: int | None = None
    seed: int = 0
    max_draws: int | None = None
    r_assumed: float = 0.05
    gate: str = "hull"

    def __post_init__(self):
        if self.rep < 1:
            raise ValueError("rep must be at least 1")
        if self.max_restarts is not None and self.max_restarts < 0:
            raise ValueError("max_restarts must be non-negative")
        if self.seed < 0:
            raise ValueError("seed must be non-negative")
        if not 0 <= self.r_assumed < 1:
            raise ValueError("r_assumed must lie in [0, 1)")
        if self.gate not in GATES:
            raise ValueError(f"gate must be one of {GATES}")


@dataclass
class RunStats:
    c0: int = 0  # restarts of the candidate set
    c1: int = 0  # rejected extension trials once past the threshold
    rows_reached: int = 0
    elapsed_trials: int = 0
    picked: list[int] = field(default_factory=list)


class Regime(enum.Enum):
    OK = "ok"
    WARNING = "warning"


def threshold_n(D: int, p, N: int) -> int:
    """Candidate size from which the consensus count becomes informative."""
    return max(1, D + 1 - floor_log(N, int(p)))


def regime_check(p, D: int, N: int) -> Regime:
    """Flag the small-dimension zone ``D <= 2 * floor(log_p N)``."""
    return Regime.WARNING if D <= 2 * floor_log(N, int(p)) else Regime.OK


def scaled_count_exceeds(count: int, total: int, p: int, exponent: int, factor: int = 1) -> bool:
    """Exact ``factor * p**exponent * count > total``.

    The running power stops growing once it passes ``total``; from there the
    product exceeds ``total`` iff ``count >= 1``, so clamping at ``total + 1``
    keeps the predicate while bounding the integers involved.
    """
    scale = factor
    for _ in range(exponent):
        if scale > total:
            break
        scale *= p
    return min(scale, total + 1) * count > total


def gate_scale(p: int, D: int, L: int, gate: str = "hull") -> tuple[int, int]:
    """``(factor, exponent)`` such that the gate passes iff
    ``factor * p**exponent * count > N``.

    ``"hull"`` compares the share of samples on the hull with half the share
    a sub-hull of the true hyperplane receives, ``p**-(#J-1) / 2`` where
    ``#J = D + 2 - L`` is the number of defining equations; for ``#J = 1``
    this is the majority test ``2 * count > N``.  ``"printed"`` uses
    ``p**(L-1)`` (and 2 for ``L = 1``), which never rejects once
    ``p**(L-1)`` exceeds ``N``.
    """
    if gate == "hull":
        return 2, D + 1 - L
    if gate == "printed":
        return (2, 0) if L == 1 else (1, L - 1)
    raise ValueError(f"unknown gate {gate!r}")


def consensus_count(data: Dataset, A: EchelonForm) -> int:
    """Number of samples lying on the affine hull represented by ``A``."""
    C = equation_system(A)
    count, _ = count_members(C, data.xs, data.ys, aug=data.aug)
    return count


def noise_free_matrix(data: Dataset, A: EchelonForm, gate: str = "hull") -> bool:
    if A.rank == 0:
        raise EmptyForm("the echelon form has no rows")
    count = consensus_count(data, A)
    factor, exponent = gate_scale(data.p.p, data.D, A.rank, gate)
    return scaled_count_exceeds(count, data.N, data.p.p, exponent, factor)


def noise_free_locus(data: Dataset, indices, gate: str = "hull") -> bool:
    indices = list(indices)
    if not indices:
        raise ValueError("indices must be non-empty")
    A = EchelonForm(data.p, data.D)
    for i in indices:
        if A.insert_row(data.rows[i]) is InsertOutcome.INCONSISTENT:
            return False
    return noise_free_matrix(data, A, gate)


def _draw(rng: np.random.Generator, data: Dataset, stats: RunStats, budget: int) -> int:
    if stats.elapsed_trials >= budget:
        raise TrialBudgetExhausted(f"gave up after {stats.elapsed_trials} random draws")
    stats.elapsed_trials += 1
    # Generator.integers draws bounded integers by rejection, without modulo bias
    return int(rng.integers(data.N))


def extend_phase1(data: Dataset, A: EchelonForm, picked: list[int], n: int,
                  rng: np.random.Generator, stats: RunStats | None = None,
                  budget: int | None = None):
    """Extend blindly until ``A`` has ``n`` rows or a draw contradicts it.

    Dependent draws add nothing and are redrawn without counting.  Returns
    ``(picked, A, L)``; ``L < n`` signals a contradiction.
    """
    stats = stats if stats is not None else RunStats()
    budget = budget if budget is not None else 10_000 * data.N
    while A.rank < n:
        i = _draw(rng, data, stats, budget)
        outcome = A.insert_row(data.rows[i])
        if outcome is InsertOutcome.INCONSISTENT:
            break
        if outcome is InsertOutcome.INSERTED:
            picked.append(i)
    return picked, A, A.rank


def extend_phase2(data: Dataset, A: EchelonForm, picked: list[int], rep: int,
                  stats: RunStats, rng: np.random.Generator, gate: str = "hull",
                  budget: int | None = None):
    """Extend one verified sample at a time up to ``D + 1`` rows.

    A trial fails when the drawn sample contradicts ``A``, adds no row, or
    its enlarged hull fails the consensus test.  Each failure bumps
    ``stats.c1``; ``rep`` failures in a row end the phase early.
    """
    budget = budget if budget is not None else 10_000 * data.N
    D = data.D
    failures = 0
    while A.rank < D + 1 and failures < rep:
        i = _draw(rng, data, stats, budget)
        B = A.copy()
        outcome = B.insert_row(data.rows[i])
        if outcome is not InsertOutcome.INSERTED or not noise_free_matrix(data, B, gate):
            failures += 1
            stats.c1 += 1
            continue
        failures = 0
        A = B
        picked.append(i)
    return picked, A, A.rank


def default_max_restarts(n: int, r_assumed: float) -> int:
    return math.ceil(10 * (1 - r_assumed) ** -n)


def linear_regression_mod_p(data: Dataset, config: RegressConfig | None = None,
                            rng: np.random.Generator | None = None):
    """Estimate the coefficient vector ``c`` with ``y = <c, x>`` on most samples.

    Returns ``(c, stats)``.  Raises :class:`RestartBudgetExhausted` when more
    than ``config.max_restarts`` restarts were needed.
    """
    config = config or RegressConfig()
    p, D, N = data.p.p, data.D, data.N
    if p in (2, 3):
        log.warning("p=%d: the consensus test separates hulls poorly for tiny fields", p)
    rng = rng if rng is not None else make_rng(config.seed)
    n = threshold_n(D, p, N)
    max_restarts = (config.max_restarts if config.max_restarts is not None
                    else default_max_restarts(n, config.r_assumed))
    budget = config.max_draws if config.max_draws is not None else 10_000 * N
    stats = RunStats()

    while True:
        picked: list[int] = []
        A = EchelonForm(data.p, D)
        picked, A, L = extend_phase1(data, A, picked, n, rng, stats, budget)
        if L == n and noise_free_matrix(data, A, config.gate):
            picked, A, L = extend_phase2(data, A, picked, config.rep, stats, rng,
                                         config.gate, budget)
            if L == D + 1:
                stats.rows_reached = L
                stats.picked = picked
                return coefficient_vector(A), stats
        stats.rows_reached = L
        stats.c0 += 1
        if stats.c0 > max_restarts:
            raise RestartBudgetExhausted(
                f"no consensus after {stats.c0} restarts (max_restarts={max_restarts})",
                stats=stats,
            )

