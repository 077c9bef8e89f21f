"""First root of the linear radial problem and the ball eigenvalue identity.

The linear problem (r^(d-1) W')' + r^(d-1) m W = 0, W(0)=p, W'(0)=0 has its
first root at rho = j/sqrt(m), where j is the first positive zero of the
cylinder function of order (d-2)/2.  Those zeros are computed here by the
package's own shooting kernel (order nu corresponds to real dimension
2*nu + 2), not by a special-function library; published table values serve as
test oracles only.
"""

from __future__ import annotations

import functools
import math
from dataclasses import dataclass
from enum import Enum

from .defaults import DEFAULTS
from .errors import BadInputError
from .nonlinearity import Nonlinearity
from .shooting import ShootConfig, ShootStatus, _shoot_real_dimension


class RhoMethod(Enum):
    CLOSED_FORM = "ClosedForm"
    NUMERIC = "Numeric"


@dataclass(frozen=True)
class ComparisonRecord:
    """First root of the linear problem with slope m in dimension d."""

    m: float
    d: int
    rho: float
    method: RhoMethod
    bessel_order: float  # (d - 2) / 2

    def summary(self) -> dict:
        return {"m": self.m, "d": self.d, "rho": self.rho, "method": self.method.value}


@functools.lru_cache(maxsize=None)
def cylinder_first_zero(nu: float) -> float:
    """First positive zero of the order-nu cylinder function, nu >= -1/2.

    Solves the radial problem with unit slope in real dimension d = 2*nu + 2
    (whose regular solution is r^(-nu) times the cylinder function) and
    localizes the first sign change by the integrator's bracketed bisection,
    driven to a 1e-13 bracket.
    """
    nu = float(nu)
    if nu < -0.5:
        raise BadInputError(f"cylinder order must be >= -1/2, got {nu}")
    d = 2.0 * nu + 2.0
    cfg = ShootConfig(rel_tol=1e-12, abs_tol=1e-14, root_tol=1e-13,
                      r_max=2.0 * nu + 8.0)
    prof = _shoot_real_dimension(Nonlinearity.linear(1.0), d, 0.5, cfg)
    if prof.status is not ShootStatus.ROOT_FOUND:
        raise BadInputError(f"no cylinder zero located for order {nu} within the horizon")
    return float(prof.first_root)


def rho(m: float, d, method: RhoMethod = RhoMethod.CLOSED_FORM) -> ComparisonRecord:
    """First root of the slope-m linear problem in dimension d.

    The closed form is j/sqrt(m) with j the cached cylinder zero; the numeric
    route re-runs the full shooting machinery on f(z) = m*z (the center value
    drops out by linearity).
    """
    if m <= 0:
        raise BadInputError(f"slope m must be positive, got {m}")
    if d < 1 or int(d) != d:
        raise BadInputError(f"dimension must be an integer >= 1, got {d}")
    nu = (d - 2.0) / 2.0
    if method is RhoMethod.CLOSED_FORM:
        value = cylinder_first_zero(nu) / math.sqrt(m)
    else:
        guess = cylinder_first_zero(nu) / math.sqrt(m)
        cfg = ShootConfig(rel_tol=1e-12, abs_tol=1e-14, root_tol=1e-12, r_max=4.0 * guess)
        prof = _shoot_real_dimension(Nonlinearity.linear(m), float(d), 0.5, cfg)
        if prof.status is not ShootStatus.ROOT_FOUND:
            raise BadInputError(f"numeric rho: no root within horizon for m={m}, d={d}")
        value = float(prof.first_root)
    return ComparisonRecord(m=float(m), d=int(d), rho=value, method=method, bessel_order=nu)


def eigenvalue_of_ball(R: float, d: int) -> float:
    """Principal Dirichlet eigenvalue of -Laplace on the radius-R ball: (j/R)^2."""
    if R <= 0:
        raise BadInputError(f"ball radius must be positive, got {R}")
    if d < 1 or int(d) != d:
        raise BadInputError(f"dimension must be an integer >= 1, got {d}")
    j = cylinder_first_zero((d - 2.0) / 2.0)
    return (j / R) ** 2


def rho_table(ms, ds, method: RhoMethod = RhoMethod.CLOSED_FORM) -> str:
    """CSV text with header ``m,d,rho,method`` over the (m, d) grid."""
    lines = ["m,d,rho,method"]
    for m in ms:
        for d in ds:
            rec = rho(m, d, method)
            lines.append(f"{float(rec.m)!r},{rec.d},{float(rec.rho)!r},{rec.method.value}")
    return "\n".join(lines) + "\n"
