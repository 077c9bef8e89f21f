"""Reaction terms f on [0,1] and their structural validation.

The whole construction only needs three properties of f: continuity,
positivity on (0,1), and a strictly decreasing ratio z -> f(z)/z.  The
validator checks the latter two on a fine interior grid; the ratio property
is also what makes the comparison slope m = f(p)/p the optimal linear
minorant slope on (0, p).
"""

from __future__ import annotations

import csv
import functools
import math
from dataclasses import dataclass
from typing import Iterable, Sequence, Tuple

import numpy as np

from . import _kernels_py as kp
from .defaults import DEFAULTS
from .errors import BadInputError, DomainError, EstimationError, InvalidNonlinearityError

_EMPTY = np.empty(0, dtype=np.float64)


@dataclass(frozen=True)
class Nonlinearity:
    """An evaluable reaction term plus the metadata the kernels need.

    Use the constructors ``kpp``, ``generalized_logistic``, ``linear`` and
    ``tabulated`` rather than instantiating directly.
    """

    kind: str                       # "kpp" | "logistic" | "linear" | "table"
    params: Tuple[float, ...] = ()
    samples: Tuple[Tuple[float, float], ...] = ()
    label: str = ""

    @staticmethod
    def kpp(beta: float, label: str = "") -> "Nonlinearity":
        """f(z) = beta * z * (1 - z)."""
        if beta <= 0:
            raise BadInputError("kpp requires beta > 0")
        return Nonlinearity("kpp", (float(beta),), (), label or f"kpp(beta={beta})")

    @staticmethod
    def generalized_logistic(m: float, q: float, exponent: float, label: str = "") -> "Nonlinearity":
        """f(z) = m*z - q*z**exponent with exponent > 1."""
        if m <= 0 or q <= 0:
            raise BadInputError("generalized logistic requires m > 0 and q > 0")
        if exponent <= 1:
            raise BadInputError("generalized logistic requires exponent > 1")
        return Nonlinearity("logistic", (float(m), float(q), float(exponent)), (),
                            label or f"logistic(m={m},q={q},p={exponent})")

    @staticmethod
    def linear(m: float, label: str = "") -> "Nonlinearity":
        """f(z) = m*z; the comparison problem's reaction term."""
        if m <= 0:
            raise BadInputError("linear requires m > 0")
        return Nonlinearity("linear", (float(m),), (), label or f"linear(m={m})")

    @staticmethod
    def tabulated(samples: Iterable[Tuple[float, float]], label: str = "table") -> "Nonlinearity":
        """Monotone piecewise-linear interpolant of (z, f(z)) samples covering [0, 1]."""
        pts = tuple(sorted((float(z), float(fz)) for z, fz in samples))
        if len(pts) < 2:
            raise BadInputError("tabulated nonlinearity needs at least two samples")
        zs = [z for z, _ in pts]
        if any(b <= a for a, b in zip(zs, zs[1:])):
            raise BadInputError("tabulated abscissae must be strictly increasing")
        if zs[0] != 0.0 or zs[-1] != 1.0:
            raise BadInputError("tabulated samples must cover [0, 1] exactly")
        return Nonlinearity("table", (), pts, label)

    @staticmethod
    def from_csv(path: str, label: str = "") -> "Nonlinearity":
        """Load a two-column table with header ``z,f``."""
        with open(path, newline="") as fh:
            reader = csv.reader(fh)
            header = next(reader, None)
            if header is None or [h.strip() for h in header[:2]] != ["z", "f"]:
                raise BadInputError(f"{path}: expected CSV header 'z,f'")
            try:
                pts = [(float(row[0]), float(row[1])) for row in reader if row]
            except (ValueError, IndexError) as exc:
                raise BadInputError(f"{path}: malformed table row") from exc
        return Nonlinearity.tabulated(pts, label or path)

    def kernel_args(self):
        """(kind_code, p0, p1, p2, z_array, f_array) consumed by both backends."""
        return _kernel_args(self)

    def __call__(self, z: float) -> float:
        return evaluate(self, z)


@functools.lru_cache(maxsize=256)
def _kernel_args(f: Nonlinearity):
    if f.kind == "kpp":
        return kp.KIND_KPP, f.params[0], 0.0, 0.0, _EMPTY, _EMPTY
    if f.kind == "logistic":
        return kp.KIND_LOGISTIC, f.params[0], f.params[1], f.params[2], _EMPTY, _EMPTY
    if f.kind == "linear":
        return kp.KIND_LINEAR, f.params[0], 0.0, 0.0, _EMPTY, _EMPTY
    zs = np.array([z for z, _ in f.samples], dtype=np.float64)
    fs = np.array([fz for _, fz in f.samples], dtype=np.float64)
    return kp.KIND_TABLE, 0.0, 0.0, 0.0, zs, fs


def evaluate(f: Nonlinearity, z: float) -> float:
    """f(z) on [0,1], extended by f(0) on [-delta_ext, 0) for transient overshoot."""
    kind, p0, p1, p2, tz, tf = f.kernel_args()
    ok, val = kp._feval(kind, p0, p1, p2, tz, tf, float(z))
    if not ok:
        raise DomainError(f"reaction term evaluated at z={z!r}, outside [-{kp.DELTA_EXT}, 1]")
    return float(val)


def evaluate_grid(f: Nonlinearity, zs: np.ndarray) -> np.ndarray:
    """Vectorized evaluation on points inside [0, 1] (bulk checks only)."""
    zs = np.asarray(zs, dtype=np.float64)
    if zs.size and (zs.min() < 0.0 or zs.max() > 1.0):
        raise DomainError("grid evaluation restricted to [0, 1]")
    if f.kind == "kpp":
        return (f.params[0] * zs) * (1.0 - zs)
    if f.kind == "logistic":
        m, q, e = f.params
        return m * zs - q * np.power(zs, e)
    if f.kind == "linear":
        return f.params[0] * zs
    _, _, _, _, tz, tf = f.kernel_args()
    return np.interp(zs, tz, tf)


@dataclass(frozen=True)
class ValidationReport:
    """Outcome of the structural checks on a uniform interior grid."""

    positive_interior: bool
    ratio_strictly_decreasing: bool
    liminf_positive: bool
    grid_size: int
    strictness_margin: float
    violations: Tuple[Tuple[float, str], ...] = ()

    @property
    def passed(self) -> bool:
        return self.positive_interior and self.ratio_strictly_decreasing and self.liminf_positive


def validate_assumptions(f: Nonlinearity,
                         grid_size: int = DEFAULTS["grid_size"],
                         strictness_eps: float = DEFAULTS["strictness_eps"]) -> ValidationReport:
    """Check positivity, strict ratio decrease, and a positive small-z ratio.

    All failures are encoded in the report; nothing raises.  The ratio test
    requires f(z2)/z2 < f(z1)/z1 - eps*(z2-z1) between neighbouring grid
    points.
    """
    if grid_size < 100:
        raise BadInputError("grid_size must be at least 100")
    if strictness_eps <= 0:
        raise BadInputError("strictness_eps must be positive")
    zs = np.linspace(0.0, 1.0, grid_size + 2)[1:-1]
    fs = evaluate_grid(f, zs)
    ratios = fs / zs

    violations = []
    bad_pos = np.flatnonzero(fs <= 0.0)
    positive = bad_pos.size == 0
    for i in bad_pos[:20]:
        violations.append((float(zs[i]), f"f(z)={fs[i]:.3e} is not positive"))

    drops = ratios[:-1] - ratios[1:]
    required = strictness_eps * (zs[1:] - zs[:-1])
    bad_dec = np.flatnonzero(drops <= required)
    decreasing = bad_dec.size == 0
    for i in bad_dec[:20]:
        violations.append((float(zs[i + 1]),
                           f"f(z)/z not strictly decreasing across [{zs[i]:.6f}, {zs[i+1]:.6f}]"))

    liminf_ok = bool(ratios[0] > strictness_eps)
    if not liminf_ok:
        violations.append((float(zs[0]), f"f(z)/z={ratios[0]:.3e} not bounded away from 0 near 0"))

    return ValidationReport(
        positive_interior=bool(positive),
        ratio_strictly_decreasing=bool(decreasing),
        liminf_positive=liminf_ok,
        grid_size=int(grid_size),
        strictness_margin=float(drops.min()) if drops.size else 0.0,
        violations=tuple(violations),
    )


def comparison_slope(f: Nonlinearity, p: float, sample_points: int = 512) -> float:
    """Slope m = f(p)/p of the linear minorant of f on (0, p).

    Under the strictly-decreasing-ratio assumption this is the infimum of
    f(u)/u over (0, p), hence the largest valid slope.  The strict inequality
    f(u) > m*u is re-checked on a sample grid; a violation (worst margin in
    the message) signals a reaction term outside the assumptions.
    """
    if not 0.0 < p < 1.0:
        raise BadInputError(f"p must lie in (0,1), got {p}")
    m = evaluate(f, p) / p
    if m <= 0.0:
        raise InvalidNonlinearityError(f"f(p)/p = {m!r} is not positive at p={p}")
    us = np.linspace(0.0, p, sample_points + 1)[1:-1]
    gaps = evaluate_grid(f, us) - m * us
    worst = int(np.argmin(gaps)) if gaps.size else 0
    if gaps.size and gaps[worst] <= -1e-12:
        raise InvalidNonlinearityError(
            f"f(u) > m*u fails on (0,{p}): margin {gaps[worst]:.3e} at u={us[worst]:.6f}; "
            "the ratio f(z)/z is not strictly decreasing")
    return m


def small_z_slope(f: Nonlinearity, h: float = 1e-6) -> float:
    """Limit of f(z)/z as z -> 0, by one-step Richardson extrapolation."""
    r1 = evaluate(f, h) / h
    r2 = evaluate(f, 2.0 * h) / (2.0 * h)
    s0 = 2.0 * r1 - r2
    if not math.isfinite(s0) or s0 <= 0.0:
        raise EstimationError(f"small-z slope of f(z)/z not resolved: got {s0!r}")
    return s0


def parse_spec(tokens: Sequence[str]) -> Nonlinearity:
    """Build a nonlinearity from ``key=value`` tokens, e.g. ``family=kpp beta=1``."""
    kv = {}
    for tok in tokens:
        if "=" not in tok:
            raise BadInputError(f"expected key=value, got {tok!r}")
        k, v = tok.split("=", 1)
        kv[k.strip()] = v.strip()
    family = kv.pop("family", None)
    if family is None:
        raise BadInputError("nonlinearity spec needs family=<kpp|logistic|linear|table>")
    try:
        if family == "kpp":
            out = Nonlinearity.kpp(float(kv.pop("beta")))
        elif family == "logistic":
            out = Nonlinearity.generalized_logistic(
                float(kv.pop("m")), float(kv.pop("q")), float(kv.pop("p")))
        elif family == "linear":
            out = Nonlinearity.linear(float(kv.pop("m")))
        elif family == "table":
            out = Nonlinearity.from_csv(kv.pop("file"))
        else:
            raise BadInputError(f"unknown family {family!r}")
    except KeyError as exc:
        raise BadInputError(f"missing parameter {exc} for family {family!r}") from exc
    except ValueError as exc:
        raise BadInputError(f"bad numeric parameter for family {family!r}: {exc}") from exc
    if kv:
        raise BadInputError(f"unrecognized parameters for family {family!r}: {sorted(kv)}")
    return out
