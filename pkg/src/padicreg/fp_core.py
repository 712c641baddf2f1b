"""Exact arithmetic in F_p and in the truncated p-adic integers Z/p^E.

Scalars and vectors here are immutable value types used at the public
surface.  The regression code works on integer numpy arrays and goes
through :func:`mod_matmul` for every inner product so that no path can
silently overflow.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable, Sequence

import numpy as np

from .errors import (
    LengthMismatch,
    NotDivisible,
    NotPrimeError,
    PrecisionMismatch,
    ZeroInversion,
)

# Miller-Rabin with these bases is exact below 3.3e24, far past 64 bits.
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)

_FLOAT32_EXACT = 2**24
_FLOAT_EXACT = 2**53
_INT64_SAFE = 2**63 - 1


def is_prime(n: int) -> bool:
    n = int(n)
    if n < 2:
        return False
    for q in _MR_BASES:
        if n % q == 0:
            return n == q
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def floor_log(n: int, base: int) -> int:
    """Largest k with ``base**k <= n``, by repeated multiplication."""
    if n < 1 or base < 2:
        raise ValueError("need n >= 1 and base >= 2")
    k, power = 0, base
    while power <= n:
        power *= base
        k += 1
    return k


@dataclass(frozen=True)
class PrimeModulus:
    p: int

    def __post_init__(self):
        if not isinstance(self.p, (int, np.integer)) or not is_prime(self.p):
            raise NotPrimeError(f"modulus is not prime: {self.p!r}")
        object.__setattr__(self, "p", int(self.p))

    def __int__(self):
        return self.p

    def __call__(self, value: int) -> "FpScalar":
        return FpScalar(value, self)

    def vector(self, values: Iterable[int]) -> "FpVector":
        return FpVector(tuple(values), self)


def as_modulus(p) -> PrimeModulus:
    return p if isinstance(p, PrimeModulus) else PrimeModulus(int(p))


@dataclass(frozen=True)
class FpScalar:
    value: int
    modulus: PrimeModulus

    def __post_init__(self):
        object.__setattr__(self, "value", int(self.value) % self.modulus.p)

    def _coerce(self, other) -> int:
        if isinstance(other, FpScalar):
            if other.modulus != self.modulus:
                raise ValueError("operands live in different fields")
            return other.value
        return int(other)

    def __add__(self, other):
        return FpScalar(self.value + self._coerce(other), self.modulus)

    __radd__ = __add__

    def __sub__(self, other):
        return FpScalar(self.value - self._coerce(other), self.modulus)

    def __rsub__(self, other):
        return FpScalar(self._coerce(other) - self.value, self.modulus)

    def __mul__(self, other):
        return FpScalar(self.value * self._coerce(other), self.modulus)

    __rmul__ = __mul__

    def __neg__(self):
        return FpScalar(-self.value, self.modulus)

    def __int__(self):
        return self.value

    def inverse(self) -> "FpScalar":
        return fp_inv(self)


@dataclass(frozen=True)
class FpVector:
    entries: tuple
    modulus: PrimeModulus

    def __post_init__(self):
        p = self.modulus.p
        object.__setattr__(self, "entries", tuple(int(v) % p for v in self.entries))

    def __len__(self):
        return len(self.entries)

    def __getitem__(self, i) -> FpScalar:
        return FpScalar(self.entries[i], self.modulus)

    def __iter__(self):
        return (FpScalar(v, self.modulus) for v in self.entries)

    def _check(self, other: "FpVector"):
        if other.modulus != self.modulus:
            raise ValueError("operands live in different fields")
        if len(other) != len(self):
            raise LengthMismatch(f"lengths {len(self)} and {len(other)} differ")

    def __add__(self, other: "FpVector") -> "FpVector":
        self._check(other)
        return FpVector(tuple(a + b for a, b in zip(self.entries, other.entries)), self.modulus)

    def __sub__(self, other: "FpVector") -> "FpVector":
        self._check(other)
        return FpVector(tuple(a - b for a, b in zip(self.entries, other.entries)), self.modulus)

    def scale(self, k) -> "FpVector":
        k = int(k)
        return FpVector(tuple(k * a for a in self.entries), self.modulus)

    def to_array(self) -> np.ndarray:
        return np.array(self.entries, dtype=residue_dtype(self.modulus.p))

    def is_zero(self) -> bool:
        return not any(self.entries)


@dataclass(frozen=True)
class ZpTrunc:
    """A p-adic integer known modulo ``p**precision``."""

    value: int
    p: int
    precision: int

    def __post_init__(self):
        if self.precision < 0:
            raise ValueError("precision must be non-negative")
        object.__setattr__(self, "value", int(self.value) % (self.p ** self.precision))

    @property
    def modulus(self) -> int:
        return self.p ** self.precision

    def _coerce(self, other) -> int:
        if isinstance(other, ZpTrunc):
            if other.p != self.p:
                raise ValueError("operands use different primes")
            if other.precision != self.precision:
                raise PrecisionMismatch(
                    f"precisions {self.precision} and {other.precision} differ"
                )
            return other.value
        return int(other)

    def __add__(self, other):
        return ZpTrunc(self.value + self._coerce(other), self.p, self.precision)

    __radd__ = __add__

    def __sub__(self, other):
        return ZpTrunc(self.value - self._coerce(other), self.p, self.precision)

    def __rsub__(self, other):
        return ZpTrunc(self._coerce(other) - self.value, self.p, self.precision)

    def __mul__(self, other):
        return ZpTrunc(self.value * self._coerce(other), self.p, self.precision)

    __rmul__ = __mul__

    def __neg__(self):
        return ZpTrunc(-self.value, self.p, self.precision)

    def __int__(self):
        return self.value

    def truncate(self, precision: int) -> "ZpTrunc":
        if precision > self.precision:
            raise PrecisionMismatch("cannot raise precision by truncation")
        return ZpTrunc(self.value, self.p, precision)

    def valuation(self) -> int:
        return zp_valuation(self)


def fp_inv(a: FpScalar) -> FpScalar:
    if a.value == 0:
        raise ZeroInversion("zero has no inverse")
    return FpScalar(pow(a.value, -1, a.modulus.p), a.modulus)


def fp_affine_eval(c: FpVector, x: FpVector) -> FpScalar:
    """``sum(c[d] * x[d]) + c[D]`` in F_p, with ``D = len(x)``."""
    if c.modulus != x.modulus:
        raise ValueError("operands live in different fields")
    if len(c) != len(x) + 1:
        raise LengthMismatch(f"need len(c) == len(x) + 1, got {len(c)} and {len(x)}")
    acc = c.entries[-1]
    for cd, xd in zip(c.entries, x.entries):
        acc += cd * xd
    return FpScalar(acc, c.modulus)


def zp_affine_eval(c: Sequence[ZpTrunc], x: Sequence[ZpTrunc]) -> ZpTrunc:
    if len(c) != len(x) + 1:
        raise LengthMismatch(f"need len(c) == len(x) + 1, got {len(c)} and {len(x)}")
    head = c[-1]
    p, precision = head.p, head.precision
    for item in (*c, *x):
        if item.p != p:
            raise ValueError("operands use different primes")
        if item.precision != precision:
            raise PrecisionMismatch("all operands must share one precision")
    acc = head.value
    for cd, xd in zip(c, x):
        acc += cd.value * xd.value
    return ZpTrunc(acc, p, precision)


def zp_valuation(a: ZpTrunc) -> int:
    """p-adic valuation of ``a``, clamped at its precision (so ``v(0) = E``)."""
    if a.value == 0:
        return a.precision
    v, value = 0, a.value
    while value % a.p == 0:
        value //= a.p
        v += 1
    return min(v, a.precision)


def zp_exact_div_p(a: ZpTrunc) -> ZpTrunc:
    if a.precision < 1:
        raise PrecisionMismatch("precision 0 has no digit to drop")
    if a.value % a.p:
        raise NotDivisible(f"{a.p} does not divide {a.value}")
    return ZpTrunc(a.value // a.p, a.p, a.precision - 1)


# -- array helpers -----------------------------------------------------------


def residue_dtype(modulus: int):
    """int64 while residues fit comfortably, Python ints beyond that."""
    return np.int64 if modulus <= 2**62 else object


def as_residues(values, modulus: int) -> np.ndarray:
    """Reduce an integer array-like into canonical residues modulo ``modulus``."""
    arr = np.asarray(values, dtype=object) % modulus
    return arr.astype(residue_dtype(modulus))


def exact_float_dtype(bound: int):
    """Narrowest float type representing every integer up to ``bound``."""
    if bound < _FLOAT32_EXACT:
        return np.float32
    if bound < _FLOAT_EXACT:
        return np.float64
    return None


def mod_matmul(a: np.ndarray, b: np.ndarray, modulus: int) -> np.ndarray:
    """Exact ``a @ b mod modulus`` for residue arrays.

    Uses float32 or float64 BLAS when every partial sum stays below 2**24 or
    2**53, int64 when it stays below 2**63, and object arithmetic otherwise.
    """
    a = np.asarray(a)
    b = np.asarray(b)
    k = a.shape[-1] if a.ndim else 1
    bound = (modulus - 1) ** 2 * max(k, 1)
    float_type = exact_float_dtype(bound)
    if float_type is not None:
        prod = np.asarray(a, dtype=float_type) @ np.asarray(b, dtype=float_type)
        return np.rint(prod).astype(np.int64) % modulus
    if bound <= _INT64_SAFE:
        return (a.astype(np.int64) @ b.astype(np.int64)) % modulus
    out = (a.astype(object) @ b.astype(object)) % modulus
    return np.asarray(out).astype(residue_dtype(modulus))


def affine_eval_rows(xs: np.ndarray, c: np.ndarray, modulus: int) -> np.ndarray:
    """``<c, x_i>`` for every row of ``xs`` at once."""
    xs = np.asarray(xs)
    c = np.asarray(c)
    if xs.shape[1] + 1 != c.shape[0]:
        raise LengthMismatch("coefficient vector must have length D+1")
    return (mod_matmul(xs, c[:-1], modulus) + c[-1]) % modulus
