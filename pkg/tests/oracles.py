"""Independent oracles used to pin expected values.

Everything here deliberately avoids the package's own integration machinery:
fixed-step classical RK4 for radial profiles, scipy's collocation BVP solver
for center values on balls, mpmath for cylinder-function zeros, and exact
closed forms for the pure-birth reduction.  Frozen constants in the tests
were computed with these functions; the cheap ones are also re-run live.
"""

import math

import numpy as np


def rk4_radial(f, d, p, h, r_max=50.0):
    """Fixed-step classical RK4 for V'' + (d-1)/r V' + f(V) = 0 from a Taylor seed.

    Returns (r_grid, V, V') arrays up to the first sign change (inclusive).
    """
    r0 = 1e-8 if d > 1 else 0.0
    fp = f(p)
    v = p - fp * r0 * r0 / (2.0 * d)
    u = -fp * r0 / d

    def rhs(r, v, u):
        fv = f(max(v, 0.0))
        if r == 0.0:
            # symmetric limit: V''(0) = -f(p)/d
            return u, -fv / d
        return u, -fv - (d - 1.0) * u / r

    rs = [r0]
    vs = [v]
    us = [u]
    r = r0
    nmax = int(r_max / h) + 2
    for _ in range(nmax):
        k1v, k1u = rhs(r, v, u)
        k2v, k2u = rhs(r + 0.5 * h, v + 0.5 * h * k1v, u + 0.5 * h * k1u)
        k3v, k3u = rhs(r + 0.5 * h, v + 0.5 * h * k2v, u + 0.5 * h * k2u)
        k4v, k4u = rhs(r + h, v + h * k3v, u + h * k3u)
        v = v + (h / 6.0) * (k1v + 2.0 * k2v + 2.0 * k3v + k4v)
        u = u + (h / 6.0) * (k1u + 2.0 * k2u + 2.0 * k3u + k4u)
        r = r + h
        rs.append(r)
        vs.append(v)
        us.append(u)
        if v <= 0.0:
            break
    return np.array(rs), np.array(vs), np.array(us)


def rk4_first_root(f, d, p, h=1e-5, r_max=50.0):
    """First root located by the fixed-step oracle, linear interpolation on the last step."""
    rs, vs, _ = rk4_radial(f, d, p, h, r_max)
    if vs[-1] > 0.0:
        raise RuntimeError("oracle found no root within the horizon")
    r1, r2 = rs[-2], rs[-1]
    v1, v2 = vs[-2], vs[-1]
    return r1 + (r2 - r1) * v1 / (v1 - v2)


def collocation_center_value(beta, d, R, mesh=4001, tol=1e-10):
    """Center value of the Dirichlet solution on B_R for f(u) = beta*u*(1-u).

    Solves the radial two-point BVP with scipy's collocation solver
    (independent of any shooting), seeded with a plateau/boundary-layer guess.
    """
    from scipy.integrate import solve_bvp

    eps = 1e-6

    def rhs(r, y):
        return np.vstack([y[1], -beta * y[0] * (1.0 - y[0]) - (d - 1.0) * y[1] / r])

    def bc(ya, yb):
        return np.array([ya[1], yb[0]])

    r = np.linspace(eps, R, mesh)
    guess = np.vstack([
        np.clip(1.0 - np.exp(-math.sqrt(2 * beta) * (R - r)) * (1 + (R - r)), 0.0, 1.0 - 1e-9),
        np.zeros_like(r),
    ])
    sol = solve_bvp(rhs, bc, r, guess, tol=tol, max_nodes=400000)
    if not sol.success:
        raise RuntimeError(f"collocation failed for R={R}: {sol.message}")
    return float(sol.sol(eps)[0])


def cylinder_zero_reference(nu, digits=20):
    """First positive zero of the order-nu cylinder function via mpmath.

    mpmath rejects negative orders; nu = -1/2 is the cosine case with first
    zero pi/2.
    """
    import mpmath

    if nu == -0.5:
        return math.pi / 2.0
    mpmath.mp.dps = digits + 5
    return float(mpmath.besseljzero(nu, 1))


def logistic_one_minus_u(beta, t, c):
    """1 - u(t) for the spatially uniform reduction with u(0) = 1 - exp(-c)."""
    u0 = 1.0 - math.exp(-c)
    e = math.exp(beta * t)
    return 1.0 - u0 * e / (1.0 - u0 + u0 * e)


def geometric_pgf(beta, t, c):
    """E exp(-c N_t) for the pure-birth count, directly from the geometric law."""
    s = math.exp(-c)
    w = math.exp(-beta * t)
    return s * w / (1.0 - (1.0 - w) * s)
