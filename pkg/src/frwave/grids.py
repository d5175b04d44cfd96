"""Angles, uniformly sampled signals/spectra, resampling, and CSV I/O.

Grids are always stored as (start, step, count); abscissae are derived,
never stored, so grid arithmetic stays exact.
"""

from __future__ import annotations

import csv
import json
import math
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from .errors import DegenerateAngle, InputError

TAU_DEG = 1e-9      # angle degeneracy tolerance, radians
TAU_TAIL = 1e-10    # relative tail-mass tolerance

REGULAR = "Regular"
IDENTITY = "IdentityDegenerate"
REFLECTION = "ReflectionDegenerate"

# grid points within this fraction of a step of a sample are treated as hits
HIT_TOL = 1e-8


@dataclass(frozen=True)
class Angle:
    """Transform angle with its cached trigonometric derivates."""

    alpha: float
    cot_alpha: float
    csc_alpha: float
    sin_alpha: float
    klass: str

    @classmethod
    def from_radians(cls, alpha: float, tol: float = TAU_DEG) -> "Angle":
        r = math.fmod(alpha, 2.0 * math.pi)
        if r < 0.0:
            r += 2.0 * math.pi
        if min(r, 2.0 * math.pi - r) < tol:
            return cls(alpha, math.nan, math.nan, 0.0, IDENTITY)
        if abs(r - math.pi) < tol:
            return cls(alpha, math.nan, math.nan, 0.0, REFLECTION)
        s = math.sin(alpha)
        return cls(alpha, math.cos(alpha) / s, 1.0 / s, s, REGULAR)

    @property
    def is_regular(self) -> bool:
        return self.klass == REGULAR

    def require_regular(self) -> "Angle":
        if not self.is_regular:
            raise DegenerateAngle(f"alpha={self.alpha} is {self.klass}")
        return self

    def negated(self) -> "Angle":
        return Angle.from_radians(-self.alpha)

    @property
    def period(self) -> float:
        """Fundamental period 2*pi*sin(alpha) of periodizations at this angle."""
        self.require_regular()
        return 2.0 * math.pi * self.sin_alpha


def as_angle(alpha) -> Angle:
    if isinstance(alpha, Angle):
        return alpha
    return Angle.from_radians(float(alpha))


def trap_weights(n: int, step: float) -> np.ndarray:
    """Trapezoid quadrature weights on a uniform grid."""
    w = np.full(n, step)
    w[0] *= 0.5
    w[-1] *= 0.5
    return w


@dataclass(frozen=True)
class SampledSignal:
    """Complex samples on the uniform grid t0 + i*dt, i = 0..n-1."""

    t0: float
    dt: float
    values: np.ndarray = field(repr=False)

    def __post_init__(self):
        if self.dt <= 0.0:
            raise ValueError("dt must be positive")
        v = np.asarray(self.values, dtype=np.complex128)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return self.t0 + self.dt * np.arange(self.n)

    @property
    def t_end(self) -> float:
        return self.t0 + self.dt * (self.n - 1)

    def norm_sq(self) -> float:
        return float(np.real(trap_weights(self.n, self.dt) @ (np.abs(self.values) ** 2)))

    def norm(self) -> float:
        return math.sqrt(self.norm_sq())

    def inner(self, other: "SampledSignal") -> complex:
        """Trapezoid <self, other> on a shared grid."""
        if (other.n != self.n or abs(other.t0 - self.t0) > HIT_TOL * self.dt
                or abs(other.dt - self.dt) > HIT_TOL * self.dt):
            raise ValueError("inner product requires identical grids")
        w = trap_weights(self.n, self.dt)
        return complex(np.sum(w * self.values * np.conj(other.values)))

    def scaled(self, c: complex) -> "SampledSignal":
        return SampledSignal(self.t0, self.dt, c * self.values)

    def plus(self, other: "SampledSignal") -> "SampledSignal":
        return SampledSignal(self.t0, self.dt, self.values + other.values)

    def minus(self, other: "SampledSignal") -> "SampledSignal":
        return SampledSignal(self.t0, self.dt, self.values - other.values)


@dataclass(frozen=True)
class SpectrumSamples:
    """Complex spectrum samples on u0 + i*du, tagged with the producing angle."""

    u0: float
    du: float
    values: np.ndarray = field(repr=False)
    alpha: Angle = field(default_factory=lambda: Angle.from_radians(math.pi / 2))

    def __post_init__(self):
        if self.du <= 0.0:
            raise ValueError("du must be positive")
        v = np.asarray(self.values, dtype=np.complex128)
        if v.ndim != 1 or v.size == 0:
            raise ValueError("values must be a nonempty 1-d array")
        object.__setattr__(self, "values", v)

    @property
    def n(self) -> int:
        return self.values.size

    @property
    def grid(self) -> np.ndarray:
        return self.u0 + self.du * np.arange(self.n)

    def norm_sq(self) -> float:
        return float(np.real(trap_weights(self.n, self.du) @ (np.abs(self.values) ** 2)))

    def as_signal(self) -> SampledSignal:
        return SampledSignal(self.u0, self.du, self.values)


def sample_at(signal: SampledSignal, points: np.ndarray,
              chunk: int = 512) -> np.ndarray:
    """Evaluate a sampled signal at arbitrary abscissae.

    Points landing on grid samples (within HIT_TOL of a step) are read off
    directly; everything else is band-limited (sinc) interpolation. Points
    outside the grid that are not hits evaluate through the same sinc sum,
    which decays to zero for decaying signals.
    """
    points = np.asarray(points, dtype=np.float64)
    idx = (points - signal.t0) / signal.dt
    rounded = np.rint(idx)
    hit = np.abs(idx - rounded) <= HIT_TOL
    out = np.zeros(points.shape, dtype=np.complex128)

    inside = hit & (rounded >= 0) & (rounded <= signal.n - 1)
    out[inside] = signal.values[rounded[inside].astype(np.intp)]

    miss = ~hit
    if np.any(miss):
        x = idx[miss]
        vals = np.zeros(x.size, dtype=np.complex128)
        m = np.arange(signal.n)
        for lo in range(0, x.size, chunk):
            sl = slice(lo, min(lo + chunk, x.size))
            vals[sl] = np.sinc(x[sl, None] - m[None, :]) @ signal.values
        out[miss] = vals
    return out


def resample(signal: SampledSignal, grid: tuple[float, float, int]) -> SampledSignal:
    t0, dt, n = grid
    points = t0 + dt * np.arange(n)
    return SampledSignal(t0, dt, sample_at(signal, points))


def reflected(signal: SampledSignal) -> SampledSignal:
    """The signal t -> f(-t) on the mirrored grid."""
    t_end = signal.t0 + signal.dt * (signal.n - 1)
    return SampledSignal(-t_end, signal.dt, signal.values[::-1].copy())


def _validate_column(t: np.ndarray) -> tuple[float, float]:
    if t.size < 2:
        raise InputError("need at least two rows")
    steps = np.diff(t)
    if np.any(steps <= 0):
        raise InputError("abscissae must be strictly increasing")
    step = (t[-1] - t[0]) / (t.size - 1)
    if np.max(np.abs(steps - step)) > 1e-12 * max(abs(step), 1.0):
        raise InputError("abscissa step is not constant to 1e-12 relative")
    return float(t[0]), float(step)


def read_signal_csv(path) -> SampledSignal:
    """Read a `t,re,im` CSV into a SampledSignal."""
    rows = _read_rows(path, ("t", "re", "im"))
    t0, dt = _validate_column(rows[:, 0])
    return SampledSignal(t0, dt, rows[:, 1] + 1j * rows[:, 2])


def write_signal_csv(path, signal: SampledSignal) -> None:
    _write_rows(path, ("t", "re", "im"), signal.grid, signal.values)


def read_spectrum_csv(path) -> SpectrumSamples:
    """Read a `u,re,im` CSV plus its `.json` sidecar carrying alpha."""
    rows = _read_rows(path, ("u", "re", "im"))
    u0, du = _validate_column(rows[:, 0])
    sidecar = Path(path).with_suffix(".json")
    try:
        meta = json.loads(sidecar.read_text())
        alpha = Angle.from_radians(float(meta["alpha"]))
    except (OSError, KeyError, ValueError, TypeError) as exc:
        raise InputError(f"bad or missing sidecar {sidecar}: {exc}") from exc
    return SpectrumSamples(u0, du, rows[:, 1] + 1j * rows[:, 2], alpha)


def write_spectrum_csv(path, spectrum: SpectrumSamples) -> None:
    _write_rows(path, ("u", "re", "im"), spectrum.grid, spectrum.values)
    sidecar = Path(path).with_suffix(".json")
    sidecar.write_text(json.dumps({"alpha": spectrum.alpha.alpha}) + "\n")


def _read_rows(path, header: tuple[str, ...]) -> np.ndarray:
    try:
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            first = next(reader, None)
            if first is None or tuple(h.strip() for h in first) != header:
                raise InputError(f"{path}: expected header {','.join(header)}")
            data = [[float(c) for c in row] for row in reader if row]
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc}") from exc
    except ValueError as exc:
        raise InputError(f"{path}: non-numeric cell: {exc}") from exc
    if not data:
        raise InputError(f"{path}: no data rows")
    arr = np.asarray(data, dtype=np.float64)
    if arr.shape[1] != len(header):
        raise InputError(f"{path}: expected {len(header)} columns")
    return arr


def _write_rows(path, header, abscissae, values) -> None:
    with open(path, "w", newline="") as fh:
        writer = csv.writer(fh)
        writer.writerow(header)
        for x, v in zip(abscissae, values):
            writer.writerow([f"{x:.17g}", f"{v.real:.17g}", f"{v.imag:.17g}"])
