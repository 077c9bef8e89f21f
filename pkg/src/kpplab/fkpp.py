"""Branching Brownian motion vs. the reaction-diffusion field.

The Laplace functional of binary branching Brownian motion at time t,
E_x exp(-sum_i phi(z_i)), equals 1 - u(x, t) where u solves
u_t = 0.5 u_xx + beta u(1-u) from u(., 0) = 1 - exp(-phi).  This module
estimates the left side by exact event-driven Monte Carlo, solves the right
side by method of lines, and cross-checks both against the pure-birth
closed form available for constant phi.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import List, Optional, Sequence, Tuple

import numpy as np

from . import _kernels_py as kp
from .backend import kernels
from .defaults import DEFAULTS
from .errors import (BadInputError, BoxViolationError, DomainTooSmallError,
                     ResourceLimitError, StabilityError)
from .nonlinearity import Nonlinearity
from .parallel import index_chunks, map_ordered
from .rng import run_seeds


@dataclass(frozen=True)
class TestFunction:
    """Nonnegative test function phi: constant, or a weighted indicator of [a, b].

    At the two support endpoints the indicator evaluates to c/2, the
    quadrature-consistent convention (the endpoints carry no probability mass
    on the particle side, and half-weighting keeps nodal sampling of the
    initial field second-order accurate).
    """

    form: str                  # "constant" | "indicator"
    c: float
    a: float = 0.0
    b: float = 0.0

    @staticmethod
    def constant(c: float) -> "TestFunction":
        if c < 0:
            raise BadInputError("test function weight must be nonnegative")
        return TestFunction("constant", float(c))

    @staticmethod
    def indicator(c: float, a: float, b: float) -> "TestFunction":
        if c < 0:
            raise BadInputError("test function weight must be nonnegative")
        if not a < b:
            raise BadInputError(f"indicator needs a < b, got [{a}, {b}]")
        return TestFunction("indicator", float(c), float(a), float(b))

    def __call__(self, z: float) -> float:
        if self.form == "constant":
            return self.c
        return kp._phi_add(kp.KIND_INDICATOR, self.c, self.a, self.b, float(z))

    def kernel_args(self) -> Tuple[int, float, float, float]:
        if self.form == "constant":
            return kp.KIND_CONSTANT, self.c, 0.0, 0.0
        return kp.KIND_INDICATOR, self.c, self.a, self.b

    def support_edge(self) -> float:
        return 0.0 if self.form == "constant" else max(abs(self.a), abs(self.b))

    def label(self) -> str:
        if self.form == "constant":
            return f"constant({self.c})"
        return f"indicator({self.c},[{self.a},{self.b}])"


@dataclass(frozen=True)
class BBMOutcome:
    """Particle positions of one run at the observation time."""

    positions: np.ndarray
    particle_count: int
    seed: int


@dataclass(frozen=True)
class MCEstimate:
    """Monte Carlo mean with its standard error; independent of worker count."""

    mean: float
    stderr: float
    n_runs: int
    master_seed: int


@dataclass(frozen=True)
class FkppField:
    """Solution snapshots of u_t = 0.5 u_xx + beta u(1-u) on a uniform mesh."""

    grid: np.ndarray
    times: Tuple[float, ...]
    u: np.ndarray              # shape (len(times), len(grid))
    dt: float
    h: float
    beta: float
    boundary: str              # "dirichlet" | "reflecting"

    def value_at(self, x: float, time_index: int = -1) -> float:
        """Linear interpolation of the snapshot at one point."""
        if not self.grid[0] <= x <= self.grid[-1]:
            raise BadInputError(f"x={x} outside the mesh [{self.grid[0]}, {self.grid[-1]}]")
        return float(np.interp(x, self.grid, self.u[time_index]))

    def snapshot_csv(self, time_index: int) -> str:
        lines = ["x,u"]
        for x, v in zip(self.grid, self.u[time_index]):
            lines.append(f"{float(x)!r},{float(v)!r}")
        return "\n".join(lines) + "\n"


def simulate_bbm(beta: float, t: float, x0: float, seed: int,
                 cap: int = DEFAULTS["particle_cap"]) -> BBMOutcome:
    """One exact BBM run: unit-diffusion motion, rate-beta binary branching."""
    if t < 0:
        raise BadInputError("time must be nonnegative")
    if beta < 0:
        raise BadInputError("branching rate must be nonnegative")
    status, pos = kernels.bbm_single(beta, t, x0, int(seed) & kp._MASK64, int(cap))
    if status == kp.CAP_EXCEEDED:
        raise ResourceLimitError(f"particle count exceeded the cap {cap}")
    return BBMOutcome(positions=pos, particle_count=len(pos), seed=int(seed))


def _mc_chunk(args):
    beta, t, x0, master_seed, start, stop, cap, kargs = args
    seeds = run_seeds(master_seed, stop - start, start=start)
    status, values, counts = kernels.bbm_batch(beta, t, x0, seeds, cap, *kargs)
    if status != kp.OK:
        raise ResourceLimitError(f"particle count exceeded the cap {cap}")
    return values, counts


def bbm_population_samples(beta: float, t: float, x0: float, phi: TestFunction,
                           n_runs: int, master_seed: int, workers: int = 1,
                           cap: int = DEFAULTS["particle_cap"]) -> Tuple[np.ndarray, np.ndarray]:
    """Per-run Laplace samples exp(-sum phi) and particle counts, in run order."""
    chunks = index_chunks(n_runs, workers)
    parts = map_ordered(
        _mc_chunk,
        [(beta, t, x0, master_seed, a, b, cap, phi.kernel_args()) for a, b in chunks],
        workers)
    values = np.concatenate([v for v, _ in parts])
    counts = np.concatenate([c for _, c in parts])
    return values, counts


def laplace_functional_mc(phi: TestFunction, beta: float, t: float, x0: float,
                          n_runs: int, master_seed: int = DEFAULTS["master_seed"],
                          workers: int = 1,
                          cap: int = DEFAULTS["particle_cap"]) -> MCEstimate:
    """Monte Carlo estimate of E_x exp(-sum_i phi(z_i)) over n_runs runs.

    Run i depends only on (master_seed, i); aggregation is fixed-order
    pairwise summation, so the estimate is bit-identical for any worker count.
    """
    if n_runs < 100:
        raise BadInputError("n_runs must be at least 100")
    values, _ = bbm_population_samples(beta, t, x0, phi, n_runs, master_seed, workers, cap)
    mean = float(np.sum(values) / n_runs)
    var = float(np.sum((values - mean) ** 2) / (n_runs - 1))
    stderr = math.sqrt(var / n_runs)
    return MCEstimate(mean=mean, stderr=stderr, n_runs=n_runs, master_seed=int(master_seed))


def yule_closed_form(beta: float, t: float, c: float) -> float:
    """E exp(-c N_t) for the pure-birth population: geometric generating function.

    N_t is geometric on {1,2,...} with success parameter w = exp(-beta t), so
    E s^N = s w / (1 - (1-w) s) at s = exp(-c).
    """
    if beta < 0 or t < 0 or c < 0:
        raise BadInputError("beta, t, c must be nonnegative")
    s = math.exp(-c)
    w = math.exp(-beta * t)
    return s * w / (1.0 - (1.0 - w) * s)


def logistic_value(beta: float, t: float, u0: float) -> float:
    """Spatially uniform solution u' = beta u(1-u) from u(0) = u0."""
    if u0 <= 0.0:
        return u0
    e = math.exp(beta * t)
    return u0 * e / (1.0 - u0 + u0 * e)


def default_half_width(phi: TestFunction, beta: float, t_end: float) -> float:
    """Support edge plus front travel plus a six-sigma diffusive buffer."""
    return phi.support_edge() + math.sqrt(2.0 * beta) * t_end + 6.0 * math.sqrt(t_end)


def solve_fkpp(F: Nonlinearity, phi: TestFunction, t_end: float,
               L: Optional[float] = None, h: float = DEFAULTS["fkpp_h"],
               dt: float = DEFAULTS["fkpp_dt"],
               snapshot_times: Optional[Sequence[float]] = None) -> FkppField:
    """Method-of-lines solve of u_t = 0.5 u_xx + F(u) from u0 = 1 - exp(-phi).

    Second-order central differences, classical RK4 in time.  Compactly
    supported phi gets homogeneous Dirichlet walls (monitored: the field next
    to a wall must stay below the wall tolerance); constant phi gets
    reflecting walls, under which the exact solution stays spatially uniform.
    Field values are monitored against [0 - box_tol, 1 + box_tol]; a breach
    is an error, never a clamp.
    """
    if F.kind != "kpp":
        raise BadInputError("the parabolic solver expects the quadratic kpp family")
    beta = F.params[0]
    if t_end < 0:
        raise BadInputError("t_end must be nonnegative")
    if h <= 0 or dt <= 0:
        raise BadInputError("h and dt must be positive")
    if dt > 0.5 * h * h * (1.0 + 1e-12):
        raise StabilityError(f"dt={dt} violates the diffusion stability bound h^2/2 = {0.5*h*h:.3e}")
    if L is None:
        L = default_half_width(phi, beta, t_end)
    mid = int(math.ceil(L / h))
    xs = (np.arange(2 * mid + 1) - mid) * h

    phi_vals = np.array([phi(float(x)) for x in xs])
    u0 = -np.expm1(-phi_vals)

    if t_end == 0.0:
        n_steps = 0
        dt_eff = dt
    else:
        n_steps = max(1, int(math.ceil(t_end / dt - 1e-12)))
        dt_eff = t_end / n_steps

    req_times = sorted(set([t_end] if snapshot_times is None else
                           [float(s) for s in snapshot_times] + [t_end]))
    snap_steps = []
    for s in req_times:
        if not 0.0 <= s <= t_end:
            raise BadInputError(f"snapshot time {s} outside [0, {t_end}]")
        snap_steps.append(min(n_steps, int(round(s / dt_eff))) if t_end > 0 else 0)
    snap_steps = sorted(set(snap_steps))
    actual_times = tuple(s * dt_eff for s in snap_steps) if t_end > 0 else (0.0,)

    bc = 1 if phi.form == "constant" else 0
    if bc == 0 and (u0[0] != 0.0 or u0[-1] != 0.0):
        raise DomainTooSmallError(
            "initial field is nonzero at the Dirichlet walls; enlarge the half-width L")

    status, snaps, wall_max = kernels.fkpp_evolve(
        u0, beta, h, dt_eff, n_steps, bc, np.asarray(snap_steps, dtype=np.int64),
        DEFAULTS["wall_tol"], DEFAULTS["box_tol"])
    if status == kp.WALL_BREACH:
        raise DomainTooSmallError(
            f"field reached {wall_max:.3e} next to a Dirichlet wall (tolerance "
            f"{DEFAULTS['wall_tol']:.1e}); enlarge the half-width L")
    if status == kp.BOX_BREACH:
        raise BoxViolationError("field left [0,1] beyond the monitoring tolerance")

    return FkppField(grid=xs, times=actual_times, u=snaps, dt=dt_eff, h=h,
                     beta=beta, boundary="reflecting" if bc else "dirichlet")


@dataclass(frozen=True)
class ConsistencyReport:
    """Three-way check of the duality identity at one parameter point."""

    phi: str
    beta: float
    t: float
    x0: float
    mc: MCEstimate
    pde_value: float             # u(x0, t)
    closed_form: Optional[float]  # pure-birth value, constant phi only
    tolerance: float
    discrepancy: float           # |mc.mean - (1 - pde_value)|
    verdict: str                 # "Pass" | "Fail"


def consistency_check(phi: TestFunction, beta: float, t: float, x0: float,
                      n_runs: int = DEFAULTS["n_runs"],
                      master_seed: int = DEFAULTS["master_seed"],
                      h: float = DEFAULTS["fkpp_h"], dt: float = DEFAULTS["fkpp_dt"],
                      L: Optional[float] = None, workers: int = 1,
                      pde_error_budget: float = DEFAULTS["pde_error_budget"]) -> ConsistencyReport:
    """Estimate the Laplace functional and compare with 1 - u(x0, t)."""
    mc = laplace_functional_mc(phi, beta, t, x0, n_runs, master_seed, workers)
    F = Nonlinearity.kpp(beta)
    if L is not None and abs(x0) > L:
        raise BadInputError("x0 outside the requested spatial domain")
    field = solve_fkpp(F, phi, t, L=L, h=h, dt=dt)
    pde_value = field.value_at(x0)
    closed = yule_closed_form(beta, t, phi.c) if phi.form == "constant" else None
    tol = 3.0 * mc.stderr + pde_error_budget
    disc = abs(mc.mean - (1.0 - pde_value))
    return ConsistencyReport(
        phi=phi.label(), beta=float(beta), t=float(t), x0=float(x0), mc=mc,
        pde_value=float(pde_value), closed_form=closed, tolerance=float(tol),
        discrepancy=float(disc), verdict="Pass" if disc <= tol else "Fail")


def report_json_dict(rep: ConsistencyReport) -> dict:
    return {
        "phi": rep.phi,
        "beta": rep.beta,
        "t": rep.t,
        "x0": rep.x0,
        "mc_mean": rep.mc.mean,
        "mc_stderr": rep.mc.stderr,
        "n_runs": rep.mc.n_runs,
        "pde_value": rep.pde_value,
        "closed_form": rep.closed_form,
        "verdict": rep.verdict,
    }
