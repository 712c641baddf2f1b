"""Incremental reduced row echelon form over F_p for sample rows ``(x, 1 | y)``.

Each accepted sample contributes a row of width ``D + 2``.  The form is kept
fully reduced (Gauss-Jordan) after every insertion, so every pivot column is
zero outside its owning row.  A reduced vector whose leading entry sits in the
last column means the new sample contradicts the stored ones.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

import numpy as np

from .errors import EmptyForm, LengthMismatch, RankDeficient
from .fp_core import FpScalar, FpVector, PrimeModulus, as_modulus, mod_matmul


class InsertOutcome(enum.Enum):
    INSERTED = "inserted"
    DEPENDENT = "dependent"
    INCONSISTENT = "inconsistent"

    @property
    def solvable(self) -> bool:
        return self is not InsertOutcome.INCONSISTENT


def _work_dtype(p: int):
    # back-reduction forms products of two residues before reducing
    return np.int64 if (p - 1) ** 2 + p < 2**62 else object


def sample_row(x, y, p: int) -> np.ndarray:
    """The row ``(x, 1 | y)`` reduced mod p."""
    x = [int(v) for v in (x.entries if isinstance(x, FpVector) else x)]
    y = int(y.value if isinstance(y, FpScalar) else y)
    return np.array([v % p for v in x] + [1, y % p], dtype=_work_dtype(p))


class EchelonForm:
    """Reduced echelon state for samples in ``F_p^D x F_p``.

    Rows are stored in insertion order; ``pivots[r]`` is the pivot column of
    row ``r``.  At most ``D + 1`` rows can ever be stored since the last
    column never carries a pivot.
    """

    def __init__(self, modulus, dim: int):
        self.modulus: PrimeModulus = as_modulus(modulus)
        self.dim = int(dim)
        self.width = self.dim + 2
        self._rows = np.zeros((self.dim + 1, self.width), dtype=_work_dtype(self.modulus.p))
        self.pivots: list[int] = []

    @property
    def p(self) -> int:
        return self.modulus.p

    @property
    def rank(self) -> int:
        return len(self.pivots)

    def __len__(self):
        return len(self.pivots)

    @property
    def rows(self) -> np.ndarray:
        return self._rows[: self.rank]

    @property
    def pivot_map(self) -> dict[int, int]:
        return {col: r for r, col in enumerate(self.pivots)}

    def copy(self) -> "EchelonForm":
        clone = EchelonForm.__new__(EchelonForm)
        clone.modulus = self.modulus
        clone.dim = self.dim
        clone.width = self.width
        clone._rows = self._rows.copy()
        clone.pivots = list(self.pivots)
        return clone

    def reduce(self, v: np.ndarray) -> np.ndarray:
        v = np.asarray(v)
        if v.shape != (self.width,):
            raise LengthMismatch(f"expected a vector of width {self.width}, got {v.shape}")
        if v.dtype == object:
            v = (v % self.p).astype(self._rows.dtype)
        else:
            v = v.astype(self._rows.dtype) % self.p
        if not self.pivots:
            return v
        # fully reduced rows vanish on each other's pivots, so one pass suffices
        coeffs = v[self.pivots]
        return (v - mod_matmul(coeffs, self.rows, self.p)) % self.p

    def insert_row(self, v: np.ndarray) -> InsertOutcome:
        """Insert a raw width-(D+2) vector in place."""
        p = self.p
        v = self.reduce(v)
        nonzero = np.flatnonzero(v)
        if nonzero.size == 0:
            return InsertOutcome.DEPENDENT
        d = int(nonzero[0])
        if d == self.dim + 1:
            return InsertOutcome.INCONSISTENT
        v = v * pow(int(v[d]), -1, p) % p
        L = self.rank
        if L:
            block = self._rows[:L]
            self._rows[:L] = (block - np.outer(block[:, d], v)) % p
        self._rows[L] = v
        self.pivots.append(d)
        return InsertOutcome.INSERTED

    def insert(self, x, y) -> InsertOutcome:
        if len(x) != self.dim:
            raise LengthMismatch(f"expected x of length {self.dim}, got {len(x)}")
        return self.insert_row(sample_row(x, y, self.p))

    def contains(self, x, y) -> bool:
        """Whether ``(x, 1 | y)`` lies in the row space."""
        return not self.reduce(sample_row(x, y, self.p)).any()

    def __repr__(self):
        return f"EchelonForm(p={self.p}, D={self.dim}, rank={self.rank})"


def reduce_vector(A: EchelonForm, v) -> FpVector:
    if isinstance(v, FpVector):
        v = v.entries
    v = np.array([int(t) for t in v], dtype=object)
    return FpVector(tuple(int(t) for t in A.reduce(v)), A.modulus)


def dynamic_insert(A: EchelonForm, x, y) -> tuple[InsertOutcome, EchelonForm]:
    """Copy-on-insert; ``A`` itself is left untouched."""
    B = A.copy()
    outcome = B.insert(x, y)
    return outcome, (B if outcome is InsertOutcome.INSERTED else A)


@dataclass(frozen=True)
class EquationSystem:
    """Coefficient vectors ``c_j`` whose common solutions ``y = <c_j, x>``
    form the affine hull of the stored samples.  ``vectors`` has shape
    ``(#J, D + 1)``."""

    vectors: np.ndarray
    modulus: PrimeModulus

    @property
    def size(self) -> int:
        return self.vectors.shape[0]

    def __len__(self):
        return self.size

    def as_fpvectors(self) -> list[FpVector]:
        return [FpVector(tuple(int(t) for t in row), self.modulus) for row in self.vectors]

    def satisfied(self, xs: np.ndarray, ys: np.ndarray) -> np.ndarray:
        """Boolean mask over samples: ``y_i = <c_j, x_i>`` for every ``j``."""
        return count_members(self, xs, ys)[1]


def equation_system(A: EchelonForm) -> EquationSystem:
    if A.rank == 0:
        raise EmptyForm("the echelon form has no rows")
    p, D = A.p, A.dim
    rows = A.rows
    pivots = A.pivots
    free = [f for f in range(D + 1) if f not in set(pivots)]
    particular = np.zeros(D + 1, dtype=rows.dtype)
    particular[pivots] = rows[:, D + 1]
    vectors = [particular]
    for f in free:
        shifted = particular.copy()
        shifted[f] = 1
        shifted[pivots] = (particular[pivots] - rows[:, f]) % p
        vectors.append(shifted)
    return EquationSystem(np.array(vectors, dtype=rows.dtype), A.modulus)


def coefficient_vector(A: EchelonForm) -> FpVector:
    D = A.dim
    if A.rank < D + 1:
        raise RankDeficient(f"need {D + 1} rows, have {A.rank}")
    c = [0] * (D + 1)
    for r, col in enumerate(A.pivots):
        c[col] = int(A.rows[r, D + 1])
    return FpVector(tuple(c), A.modulus)


def membership(C: EquationSystem, x, y) -> bool:
    p = C.modulus.p
    x = [int(v) for v in (x.entries if isinstance(x, FpVector) else x)]
    y = int(y.value if isinstance(y, FpScalar) else y) % p
    if C.vectors.shape[1] != len(x) + 1:
        raise LengthMismatch("x does not match the system's dimension")
    for c in C.vectors:
        value = int(c[-1]) + sum(int(cd) * xd for cd, xd in zip(c[:-1], x))
        if value % p != y:
            return False
    return True


def count_members(C: EquationSystem, xs: np.ndarray, ys: np.ndarray, aug=None):
    """Vectorised membership over a whole sample set.

    ``aug`` may supply the precomputed matrix ``[xs | 1]``.  Returns the count
    and the boolean mask.
    """
    p = C.modulus.p
    if aug is None:
        xs = np.asarray(xs)
        aug = np.concatenate([xs, np.ones((xs.shape[0], 1), dtype=xs.dtype)], axis=1)
    ys = np.asarray(ys)
    # the first equation already rejects all but about 1/p of the samples
    mask = mod_matmul(aug, C.vectors[0], p) == ys
    if C.size > 1:
        idx = np.flatnonzero(mask)
        if idx.size:
            rest = mod_matmul(aug[idx], C.vectors[1:].T, p)
            mask[idx[~np.all(rest == ys[idx, None], axis=1)]] = False
    return int(mask.sum()), mask
