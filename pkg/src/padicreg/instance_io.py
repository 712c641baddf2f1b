"""JSON-lines instance files.

Line 1 is a header ``{"p", "D", "E", "N", "r", "seed", "truth"?}``; then one
``{"x": [...], "y": ...}`` record per sample.  Residues (sample values and
the truth) are written as decimal strings so arbitrarily large moduli
round-trip exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path
from typing import IO

import numpy as np

from .fp_core import residue_dtype
from .modp_regress import Dataset
from .padic_regress import PadicDataset
from .synthgen import ModpInstance, PadicInstance


class InstanceFormatError(ValueError):
    pass


@dataclass
class InstanceFile:
    p: int
    D: int
    E: int
    N: int
    r: float
    seed: int
    xs: np.ndarray
    ys: np.ndarray
    truth: list[int] | None = None

    @property
    def modulus(self) -> int:
        return self.p**self.E

    def modp_dataset(self) -> Dataset:
        return Dataset(self.p, self.xs % self.p, self.ys % self.p)

    def padic_dataset(self) -> PadicDataset:
        return PadicDataset(self.p, self.E, self.xs, self.ys)

    @classmethod
    def from_instance(cls, inst) -> "InstanceFile":
        if isinstance(inst, ModpInstance):
            ds = inst.dataset
            return cls(ds.p.p, ds.D, 1, ds.N, inst.r, inst.seed, ds.xs, ds.ys,
                       list(inst.truth.entries))
        if isinstance(inst, PadicInstance):
            ds = inst.dataset
            return cls(ds.p, ds.D, ds.E, ds.N, inst.r, inst.seed, ds.xs, ds.ys,
                       list(inst.truth))
        raise TypeError(f"cannot serialise {type(inst).__name__}")


def dump(inst: InstanceFile, fh: IO[str]) -> None:
    header = {"p": inst.p, "D": inst.D, "E": inst.E, "N": inst.N,
              "r": inst.r, "seed": inst.seed}
    if inst.truth is not None:
        header["truth"] = [str(int(t)) for t in inst.truth]
    fh.write(json.dumps(header) + "\n")
    for x, y in zip(inst.xs, inst.ys):
        fh.write(json.dumps({"x": [str(int(v)) for v in x], "y": str(int(y))}) + "\n")


def load(fh: IO[str]) -> InstanceFile:
    lines = iter(fh)
    try:
        header = json.loads(next(lines))
    except StopIteration:
        raise InstanceFormatError("empty instance file") from None
    missing = {"p", "D", "E", "N", "r", "seed"} - header.keys()
    if missing:
        raise InstanceFormatError(f"header lacks {sorted(missing)}")
    p, D, E, N = (int(header[k]) for k in ("p", "D", "E", "N"))
    m = p**E
    xs, ys = [], []
    for lineno, line in enumerate(lines, start=2):
        if not line.strip():
            continue
        rec = json.loads(line)
        x = [int(v) for v in rec["x"]]
        if len(x) != D:
            raise InstanceFormatError(f"line {lineno}: expected {D} coordinates")
        xs.append(x)
        ys.append(int(rec["y"]))
    if len(ys) != N:
        raise InstanceFormatError(f"header says N={N} but found {len(ys)} records")
    for v in (*ys, *(v for x in xs for v in x)):
        if not 0 <= v < m:
            raise InstanceFormatError(f"value {v} outside [0, {m})")
    dtype = residue_dtype(m)
    truth = header.get("truth")
    return InstanceFile(
        p=p, D=D, E=E, N=N, r=header["r"], seed=int(header["seed"]),
        xs=np.array(xs, dtype=object).reshape(N, D).astype(dtype),
        ys=np.array(ys, dtype=object).astype(dtype),
        truth=None if truth is None else [int(t) for t in truth],
    )


def save_instance(inst, path) -> None:
    if not isinstance(inst, InstanceFile):
        inst = InstanceFile.from_instance(inst)
    with open(Path(path), "w") as fh:
        dump(inst, fh)


def load_instance(path) -> InstanceFile:
    with open(Path(path)) as fh:
        return load(fh)
