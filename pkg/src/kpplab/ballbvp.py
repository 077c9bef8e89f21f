"""Positive radial Dirichlet solutions on balls and what they certify.

The boundary value problem on B_R is solved by shooting on the center value:
find p with first_root(V(.; p)) = R.  Bracketing scans a logit-spaced grid of
center values (geometric in p near 0 and in 1-p near 1, where R(p) diverges),
then bisects in logit space.  Expanding-radius sweeps, the eigenvalue
existence threshold, the profile-ordering check and nonexistence
certificates all reuse this machinery.
"""

from __future__ import annotations

import functools
import json
import math
from dataclasses import dataclass
from enum import Enum
from typing import List, Optional, Sequence, Tuple

import numpy as np

from .comparison import cylinder_first_zero
from .defaults import DEFAULTS
from .errors import (BadInputError, ConvergenceFailureError, EstimationError,
                     GridMismatchError, NoPositiveSolutionError)
from .nonlinearity import (Nonlinearity, comparison_slope, small_z_slope,
                           validate_assumptions)
from .parallel import map_ordered
from .shooting import (RadialProfile, ShootConfig, ShootStatus, first_root,
                       shoot)


@dataclass(frozen=True)
class BallSolution:
    """Dirichlet solution on B_R found by shooting on the center value."""

    radius: float
    p_star: float
    profile: RadialProfile
    bracketing_iterations: int
    residual: float  # |first_root(profile) - R|


@dataclass(frozen=True)
class NonexistenceCertificate:
    """A ball subsolution at level p: witnesses u >= p for entire solutions."""

    f_label: str
    d: int
    p: float
    R: float
    slope: float
    rho_bound: float
    profile: RadialProfile
    statement: str


class Ordering(Enum):
    ORDERED = "Ordered"
    VIOLATED = "Violated"


@dataclass(frozen=True)
class OrderingVerdict:
    verdict: Ordering
    worst_gap: float            # max of (v2 - v1) over the domain; <= tol when Ordered
    location: Optional[float]   # where the worst gap sits (Violated only)
    hypothesis_met: bool        # boundary ordering v1 >= v2 - tol at the domain edge
    note: str = ""


def _logit(p: float) -> float:
    return math.log(p / (1.0 - p))


def _inv_logit(s: float) -> float:
    # 1 - p computed directly so center values can approach 1 to within 1e-13
    q = 1.0 / (1.0 + math.exp(s))
    return 1.0 - q


def _shoot_radius(f: Nonlinearity, d: int, p: float, horizon: float,
                  cfg: ShootConfig) -> Tuple[Optional[float], RadialProfile]:
    run_cfg = ShootConfig(rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol,
                          series_cutoff=cfg.series_cutoff, root_tol=cfg.root_tol,
                          r_max=horizon, max_steps=cfg.max_steps,
                          dense_samples=cfg.dense_samples)
    prof = shoot(f, d, p, run_cfg)
    if prof.status is ShootStatus.ROOT_FOUND:
        return first_root(prof), prof
    return None, prof


def dirichlet_solution(f: Nonlinearity, d: int, R: float,
                       bvp_tol: float = DEFAULTS["bvp_tol"],
                       cfg: ShootConfig = ShootConfig(),
                       scan_points: int = DEFAULTS["scan_points"]) -> BallSolution:
    """Positive radial Dirichlet solution on B_R, or NoPositiveSolutionError.

    The center-value scan does not assume R(p) is monotone: it brackets every
    sign change of R(p) - R and refines the one at the smallest p.
    """
    if R <= 0:
        raise BadInputError(f"ball radius must be positive, got {R}")
    horizon = max(1.5 * R, R + 2.0)
    s_lo = _logit(DEFAULTS["p_floor"])
    s_hi = math.log((1.0 - DEFAULTS["p_ceil_gap"]) / DEFAULTS["p_ceil_gap"])
    grid = np.linspace(s_lo, s_hi, scan_points)

    iters = 0
    prev_s = None
    prev_g = None
    bracket = None
    for s in grid:
        p = _inv_logit(float(s))
        root, prof = _shoot_radius(f, d, p, horizon, cfg)
        iters += 1
        g = (root - R) if root is not None else math.inf  # no root: R(p) beyond horizon
        if root is not None and abs(g) <= bvp_tol:
            return BallSolution(radius=float(R), p_star=float(p), profile=prof,
                                bracketing_iterations=iters, residual=float(abs(g)))
        if prev_g is not None and ((prev_g < 0.0 <= g) or (g <= 0.0 < prev_g)):
            bracket = (prev_s, s, prev_g, g)
            break
        prev_s, prev_g = float(s), g
    if bracket is None:
        raise NoPositiveSolutionError(
            f"no center value in (0,1) brackets R={R} for {f.label or f.kind} in d={d} "
            "(radius at or below the existence threshold, or beyond center-value resolution)")

    sa, sb, ga, gb = bracket
    best = None
    for _ in range(200):
        sm = 0.5 * (sa + sb)
        if sm <= min(sa, sb) or sm >= max(sa, sb):
            break
        pm = _inv_logit(sm)
        root, prof = _shoot_radius(f, d, pm, horizon, cfg)
        iters += 1
        g = (root - R) if root is not None else math.inf
        if root is not None and (best is None or abs(g) < best[0]):
            best = (abs(g), pm, prof)
        if abs(g) <= bvp_tol:
            break
        if (ga < 0.0) == (g < 0.0):
            sa, ga = sm, g
        else:
            sb, gb = sm, g
    if best is None or best[0] > bvp_tol:
        achieved = math.inf if best is None else best[0]
        raise ConvergenceFailureError(
            f"center-value bisection stalled for R={R}, d={d}: residual {achieved:.3e} "
            f"exceeds bvp_tol={bvp_tol:.1e}")
    residual, p_star, profile = best
    return BallSolution(radius=float(R), p_star=float(p_star), profile=profile,
                        bracketing_iterations=iters, residual=float(residual))


def _sweep_one(args):
    f, d, R, bvp_tol = args
    return dirichlet_solution(f, d, R, bvp_tol)


def minimal_solution_sweep(f: Nonlinearity, d: int, radii: Sequence[float],
                           bvp_tol: float = DEFAULTS["bvp_tol"],
                           workers: int = 1) -> List[BallSolution]:
    """Dirichlet solutions on expanding balls; center values climb toward 1.

    Results are ordered by radius regardless of worker scheduling.
    """
    radii = [float(R) for R in radii]
    if any(b <= a for a, b in zip(radii, radii[1:])):
        raise BadInputError("radii must be strictly increasing")
    return map_ordered(_sweep_one, [(f, d, R, bvp_tol) for R in radii], workers)


def sweep_csv(solutions: Sequence[BallSolution]) -> str:
    """CSV text with header ``R,p_star,iterations,residual``."""
    lines = ["R,p_star,iterations,residual"]
    for s in solutions:
        lines.append(f"{float(s.radius)!r},{float(s.p_star)!r},{s.bracketing_iterations},"
                     f"{float(s.residual)!r}")
    return "\n".join(lines) + "\n"


def existence_threshold(f: Nonlinearity, d: int, tol: float = DEFAULTS["threshold_tol"],
                        cross_check: bool = False) -> float:
    """Radius below which no positive Dirichlet solution exists.

    R_min = j/sqrt(s0) where s0 is the small-z slope of f (linearization at 0)
    and j the first cylinder zero for the dimension.  With ``cross_check`` the
    value is verified against the infimum of R(p) over small center values.
    """
    s0 = small_z_slope(f)
    r_min = cylinder_first_zero((d - 2.0) / 2.0) / math.sqrt(s0)
    if cross_check:
        inf_scan = threshold_scan_infimum(f, d)
        if abs(inf_scan - r_min) > tol:
            raise EstimationError(
                f"threshold cross-check failed: scan infimum {inf_scan:.6f} vs "
                f"linearized {r_min:.6f} (tol {tol:.1e})")
    return r_min


def threshold_scan_infimum(f: Nonlinearity, d: int,
                           p_values: Sequence[float] = (1e-3, 3.16e-3, 1e-2, 3.16e-2, 1e-1),
                           cfg: ShootConfig = ShootConfig()) -> float:
    """Infimum of R(p) over a grid of small center values."""
    roots = []
    for p in p_values:
        prof = shoot(f, d, p, cfg)
        if prof.status is ShootStatus.ROOT_FOUND:
            roots.append(first_root(prof))
    if not roots:
        raise EstimationError("no roots found in the small-center-value scan")
    return min(roots)


def comparison_check(v1: RadialProfile, v2: RadialProfile, domain_radius: float,
                     tol: float = DEFAULTS["compare_tol"]) -> OrderingVerdict:
    """Check v1 >= v2 - tol on [0, domain_radius] (the ordering principle).

    Both profiles are interpolated onto the union of their grids restricted
    to the domain.  If the boundary hypothesis v1 >= v2 - tol at
    r = domain_radius fails, the check is vacuous and reports Ordered with a
    note.
    """
    for prof in (v1, v2):
        if prof.grid[-1] < domain_radius * (1.0 - 1e-12):
            raise GridMismatchError(
                f"profile only reaches r={prof.grid[-1]:.6g} < domain radius {domain_radius:.6g}")
    grid = np.union1d(v1.grid[v1.grid <= domain_radius], v2.grid[v2.grid <= domain_radius])
    if grid.size == 0 or grid[-1] < domain_radius:
        grid = np.append(grid, domain_radius)
    a1, _ = v1.eval_at(grid)
    a2, _ = v2.eval_at(grid)

    b1, _ = v1.eval_at([domain_radius])
    b2, _ = v2.eval_at([domain_radius])
    if b1[0] < b2[0] - tol:
        return OrderingVerdict(Ordering.ORDERED, worst_gap=float(b2[0] - b1[0]),
                               location=None, hypothesis_met=False,
                               note="boundary ordering hypothesis not met; check vacuous")

    gaps = a2 - a1
    worst = int(np.argmax(gaps))
    if gaps[worst] > tol:
        return OrderingVerdict(Ordering.VIOLATED, worst_gap=float(gaps[worst]),
                               location=float(grid[worst]), hypothesis_met=True)
    return OrderingVerdict(Ordering.ORDERED, worst_gap=float(max(gaps[worst], 0.0)),
                           location=None, hypothesis_met=True)


def nonexistence_certificate(f: Nonlinearity, d: int, p: float,
                             cfg: ShootConfig = ShootConfig()) -> NonexistenceCertificate:
    """Shoot from level p and package the resulting ball subsolution.

    Any entire solution of the elliptic problem that stays in (0,1) dominates
    this profile on its ball (by the ordering principle) and therefore
    exceeds p at the center; since p and the center are arbitrary, no such
    solution exists.
    """
    report = validate_assumptions(f)
    if not report.passed:
        from .errors import ValidationError
        failed = [name for name, ok in [
            ("positive_interior", report.positive_interior),
            ("ratio_strictly_decreasing", report.ratio_strictly_decreasing),
            ("liminf_positive", report.liminf_positive)] if not ok]
        raise ValidationError(
            f"{f.label or f.kind} fails structural validation ({', '.join(failed)}); "
            "certificates require a validated reaction term")
    m = comparison_slope(f, p)
    nu = (d - 2.0) / 2.0
    bound = cylinder_first_zero(nu) / math.sqrt(m)
    run_cfg = cfg if cfg.r_max is not None else ShootConfig(
        rel_tol=cfg.rel_tol, abs_tol=cfg.abs_tol, series_cutoff=cfg.series_cutoff,
        root_tol=cfg.root_tol, r_max=1.5 * bound, max_steps=cfg.max_steps,
        dense_samples=cfg.dense_samples)
    prof = shoot(f, d, p, run_cfg)
    R = first_root(prof)  # raises NoRootError if the bound failed to materialize
    statement = (
        f"Radial subsolution on a ball of radius R={R:.12g} (dimension d={d}) with center "
        f"value p={p}: every entire solution u of the elliptic problem with reaction term "
        f"'{f.label or f.kind}' that stays in (0,1) satisfies u >= p at every point. The "
        f"root obeys the linear-comparison bound R <= {bound:.12g} = rho(f(p)/p = {m:.12g}).")
    return NonexistenceCertificate(
        f_label=f.label or f.kind, d=int(d), p=float(p), R=float(R), slope=float(m),
        rho_bound=float(bound), profile=prof, statement=statement)


def certificate_json(cert: NonexistenceCertificate, profile_csv_path: str) -> str:
    doc = {
        "f_label": cert.f_label,
        "d": cert.d,
        "p": cert.p,
        "R": cert.R,
        "comparison_slope": cert.slope,
        "rho_bound": cert.rho_bound,
        "bound_satisfied": cert.R <= cert.rho_bound * (1.0 + 1e-8),
        "statement": cert.statement,
        "profile_csv": profile_csv_path,
    }
    return json.dumps(doc, indent=2)
