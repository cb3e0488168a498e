"""Concurrence over 1-D and 2-D grids of effective-model parameters."""

from __future__ import annotations

import io
import json
import logging
import os
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Optional

import numpy as np

from . import __version__
from .effective_model import EffectiveTwoQubit
from .entanglement import concurrence_thermal

log = logging.getLogger(__name__)

T_FLOOR = 1e-4
DEFAULT_POINTS = 201
POISON = -1.0

# (w1, w2) are the two qubit frequencies; (w, alpha) are their difference and sum
PAIR_PARAMS = ("w1", "w2", "g", "T")
SYMMETRIC_PARAMS = ("w", "alpha", "g", "T")


class SweepWarning(UserWarning):
    pass


@dataclass(frozen=True)
class Axis:
    param: str
    min: float
    max: float
    points: int = DEFAULT_POINTS

    def values(self) -> np.ndarray:
        v = np.linspace(self.min, self.max, self.points)
        if self.min == -self.max:
            # exact mirror symmetry about 0 (linspace alone is off by an ulp)
            v = 0.5 * (v - v[::-1])
        if self.param == "T":
            v = np.maximum(v, T_FLOOR)
        return v

    def to_dict(self) -> dict:
        return {"param": self.param, "min": self.min, "max": self.max, "points": self.points}

    @classmethod
    def from_dict(cls, d: dict) -> "Axis":
        missing = {"param", "min", "max"} - set(d)
        if missing:
            raise ValueError(f"axis missing {', '.join(sorted(missing))}")
        return cls(str(d["param"]), float(d["min"]), float(d["max"]), int(d.get("points", DEFAULT_POINTS)))


@dataclass(frozen=True)
class SweepSpec:
    x: Axis
    y: Optional[Axis] = None
    fixed: dict = field(default_factory=dict)
    symmetric_omega: bool = False
    name: str = ""

    def __post_init__(self):
        object.__setattr__(self, "fixed", {k: float(v) for k, v in sorted(self.fixed.items())})
        self.validate()

    @property
    def params(self) -> tuple:
        return SYMMETRIC_PARAMS if self.symmetric_omega else PAIR_PARAMS

    @property
    def axes(self) -> tuple:
        return (self.x,) if self.y is None else (self.x, self.y)

    def validate(self) -> None:
        allowed = self.params
        names = [a.param for a in self.axes]
        for a in self.axes:
            if a.param not in allowed:
                raise ValueError(f"axis parameter {a.param!r} not in {allowed}")
            if not a.min < a.max:
                raise ValueError(f"axis {a.param}: min must be < max")
            if a.points < 2:
                raise ValueError(f"axis {a.param}: need at least 2 points")
            if a.param == "T" and (a.min < 0 or a.max <= T_FLOOR):
                raise ValueError("temperature axis must lie in [0, inf) and extend above 1e-4")
        if len(set(names)) != len(names):
            raise ValueError("axis parameters must be distinct")
        free = [p for p in allowed if p not in names]
        missing = [p for p in free if p not in self.fixed]
        extra = [p for p in self.fixed if p not in free]
        if missing:
            raise ValueError(f"parameters not fixed: {', '.join(missing)}")
        if extra:
            raise ValueError(f"fixed parameters not free in this sweep: {', '.join(extra)}")
        if "T" in self.fixed and not self.fixed["T"] > 0:
            raise ValueError("fixed temperature must be positive")

    def point(self, x: float, y: Optional[float] = None) -> tuple[EffectiveTwoQubit, float]:
        """Effective model and temperature at one grid coordinate."""
        vals = dict(self.fixed)
        vals[self.x.param] = x
        if self.y is not None:
            vals[self.y.param] = y
        if self.symmetric_omega:
            w1 = 0.5 * (vals["alpha"] + vals["w"])
            w2 = 0.5 * (vals["alpha"] - vals["w"])
        else:
            w1, w2 = vals["w1"], vals["w2"]
        return EffectiveTwoQubit(w1, w2, vals["g"]), vals["T"]

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "x": self.x.to_dict(),
            "y": None if self.y is None else self.y.to_dict(),
            "fixed": dict(self.fixed),
            "symmetric_omega": self.symmetric_omega,
        }

    @classmethod
    def from_dict(cls, d: dict) -> "SweepSpec":
        unknown = set(d) - {"name", "x", "y", "fixed", "symmetric_omega"}
        if unknown:
            raise ValueError(f"unknown sweep keys: {', '.join(sorted(unknown))}")
        if "x" not in d:
            raise ValueError("sweep needs an 'x' axis")
        return cls(
            x=Axis.from_dict(d["x"]),
            y=None if d.get("y") is None else Axis.from_dict(d["y"]),
            fixed=dict(d.get("fixed", {})),
            symmetric_omega=bool(d.get("symmetric_omega", False)),
            name=str(d.get("name", "")),
        )

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True, separators=(",", ":"))


@dataclass
class SweepGrid:
    x_values: np.ndarray
    y_values: Optional[np.ndarray]
    concurrence: np.ndarray  # shape (len(y), len(x)); one row for 1-D sweeps
    spec: SweepSpec
    version: str = __version__
    poisoned: int = 0


def evaluate_point(spec: SweepSpec, x: float, y: Optional[float] = None) -> float:
    e, t = spec.point(x, y)
    value = concurrence_thermal(e, t)
    if not 0.0 <= value <= 1.0:
        raise ValueError(f"concurrence {value!r} out of range")
    return value


def _evaluate_row(args) -> tuple[int, np.ndarray, int]:
    spec, iy, xs, y = args
    row = np.empty(len(xs))
    bad = 0
    for ix, x in enumerate(xs):
        try:
            with np.errstate(all="raise"):
                row[ix] = evaluate_point(spec, float(x), y)
        except (ValueError, ArithmeticError, FloatingPointError):
            row[ix] = POISON
            bad += 1
    return iy, row, bad


def resolve_workers(workers: Optional[int]) -> int:
    if workers is None:
        workers = int(os.environ.get("QUCOUPLE_WORKERS", "1"))
    if workers < 0:
        raise ValueError("worker count must be >= 0")
    return workers or (os.cpu_count() or 1)


def run_sweep(spec: SweepSpec, workers: Optional[int] = 1) -> SweepGrid:
    """Evaluate the thermal concurrence at every grid point.

    Rows are independent; with ``workers > 1`` they are farmed out to
    processes and written back by index, so the result does not depend on
    scheduling. Points that fail are recorded as -1 and reported once with
    a ``SweepWarning``.
    """
    spec.validate()
    xs = spec.x.values()
    ys = None if spec.y is None else spec.y.values()
    rows = [None] if ys is None else [float(v) for v in ys]
    out = np.empty((len(rows), len(xs)))
    tasks = [(spec, iy, xs, y) for iy, y in enumerate(rows)]
    n = resolve_workers(workers)
    poisoned = 0
    if n > 1 and len(tasks) > 1:
        with ProcessPoolExecutor(max_workers=min(n, len(tasks))) as pool:
            results = pool.map(_evaluate_row, tasks, chunksize=max(1, len(tasks) // (4 * n)))
            for iy, row, bad in results:
                out[iy] = row
                poisoned += bad
    else:
        for task in tasks:
            iy, row, bad = _evaluate_row(task)
            out[iy] = row
            poisoned += bad
    if poisoned:
        warnings.warn(f"{poisoned} grid point(s) failed and were set to {POISON}", SweepWarning, stacklevel=2)
    log.debug("sweep %s: %d points, %d poisoned", spec.name or "<custom>", out.size, poisoned)
    return SweepGrid(xs, ys, out, spec, poisoned=poisoned)


def case_presets(points: int = DEFAULT_POINTS) -> dict:
    """Named sweeps for the three case studies, keyed by preset name."""
    def axis(param, lo, hi):
        return Axis(param, lo, hi, points)

    g_t = (axis("g", 0.0, 10.0), axis("T", 0.0, 5.0))
    w_w = (axis("w1", -5.0, 5.0), axis("w2", -5.0, 5.0))
    g_w = (axis("g", 0.0, 5.0), axis("w", -10.0, 10.0))
    presets = [
        SweepSpec(*g_t, fixed={"w1": 1.0, "w2": 1.0}, name="case1-equal"),
        SweepSpec(*g_t, fixed={"w1": 5.0, "w2": 1.0}, name="case1-unequal"),
        SweepSpec(*w_w, fixed={"g": 0.4, "T": 0.4}, name="case2-a"),
        SweepSpec(*w_w, fixed={"g": 0.2, "T": 0.2}, name="case2-b"),
        SweepSpec(*w_w, fixed={"g": 0.2, "T": 0.4}, name="case2-c"),
        SweepSpec(*g_w, fixed={"T": 0.1, "alpha": 0.0}, symmetric_omega=True, name="case3-cold"),
        SweepSpec(*g_w, fixed={"T": 2.0, "alpha": 0.0}, symmetric_omega=True, name="case3-hot"),
    ]
    return {p.name: p for p in presets}


def fmt(value: float) -> str:
    """12 significant digits, the precision used by every text output."""
    if value == 0:
        return "0"
    return f"{value:.12g}"


def _header(grid: SweepGrid) -> list[str]:
    spec = grid.spec
    lines = [
        "# qucouple sweep",
        f"# version: {grid.version}",
        f"# spec: {spec.to_json()}",
        f"# x: {spec.x.param}",
    ]
    if spec.y is not None:
        lines.append(f"# y: {spec.y.param}")
    lines.append("# fixed: " + ", ".join(f"{k}={fmt(v)}" for k, v in spec.fixed.items()))
    if grid.poisoned:
        lines.append(f"# poisoned: {grid.poisoned}")
    return lines


def to_csv(grid: SweepGrid) -> str:
    buf = io.StringIO()
    for line in _header(grid):
        buf.write(line + "\n")
    buf.write("x,y,concurrence\n")
    ys = grid.y_values
    for iy, row in enumerate(grid.concurrence):
        y = "" if ys is None else fmt(ys[iy])
        for x, c in zip(grid.x_values, row):
            buf.write(f"{fmt(x)},{y},{fmt(c)}\n")
    return buf.getvalue()


def to_matrix(grid: SweepGrid) -> str:
    """Heatmap layout: first row x values, first column y values."""
    buf = io.StringIO()
    for line in _header(grid):
        buf.write(line + "\n")
    buf.write(",".join(["y\\x"] + [fmt(x) for x in grid.x_values]) + "\n")
    ys = grid.y_values
    for iy, row in enumerate(grid.concurrence):
        label = "" if ys is None else fmt(ys[iy])
        buf.write(",".join([label] + [fmt(c) for c in row]) + "\n")
    return buf.getvalue()


def to_json(grid: SweepGrid) -> str:
    def rounded(values):
        return [float(fmt(v)) for v in values]

    doc = {
        "format": "qucouple sweep",
        "version": grid.version,
        "spec": grid.spec.to_dict(),
        "x_values": rounded(grid.x_values),
        "y_values": None if grid.y_values is None else rounded(grid.y_values),
        "concurrence": [rounded(row) for row in grid.concurrence],
        "poisoned": grid.poisoned,
    }
    return json.dumps(doc, sort_keys=True) + "\n"


WRITERS = {"csv": to_csv, "matrix": to_matrix, "json": to_json}


def parse_metadata_spec(text: str) -> SweepSpec:
    """Recover the SweepSpec echoed in a CSV or matrix header."""
    for line in text.splitlines():
        if line.startswith("# spec: "):
            return SweepSpec.from_dict(json.loads(line[len("# spec: "):]))
        if not line.startswith("#"):
            break
    raise ValueError("no spec line in header")
