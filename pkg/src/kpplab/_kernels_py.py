"""Pure-Python numerical kernels.

Fallback twin of the compiled extension ``kpplab._kernels_cy``.  Every
floating-point expression here is written with the same operand order and the
same libm primitives as the compiled version, so both backends produce
bit-identical results; ``tests/test_backend_parity.py`` pins that down.

Kernels:

* ``shoot_radial``   - adaptive Dormand-Prince 5(4) integration of the radial
  profile equation V'' + (d-1)/r V' + f(V) = 0 with first-root event
  localization and stored dense-output polynomials.
* ``bbm_single`` / ``bbm_batch`` - event-driven binary branching Brownian
  motion, exact simulation.
* ``fkpp_evolve``    - method-of-lines reaction-diffusion stepping (central
  differences + classical RK4).
"""

import math

import numpy as np

BACKEND_NAME = "python"

# shoot_radial / fkpp_evolve status codes
OK = 0
NO_ROOT = 1
STEP_FAILURE = 2
DOMAIN_BREACH = 3
WALL_BREACH = 4
BOX_BREACH = 5
CAP_EXCEEDED = 6

# families understood by the in-kernel reaction-term evaluator
KIND_KPP = 0
KIND_LOGISTIC = 1
KIND_LINEAR = 2
KIND_TABLE = 3

KIND_CONSTANT = 0
KIND_INDICATOR = 1

DELTA_EXT = 1e-3  # how far below zero f is extended (by its value at 0)

_MASK64 = 0xFFFFFFFFFFFFFFFF
_GOLDEN = 0x9E3779B97F4A7C15
_TWO_PI = 6.283185307179586
_INV_2_53 = 1.1102230246251565e-16  # 2**-53


def _feval(kind, p0, p1, p2, tz, tf, z):
    """Reaction term at z; returns (ok, value).

    z below 0 (root-localization overshoot) uses the constant extension f(0)
    down to -DELTA_EXT; anything outside [-DELTA_EXT, 1] is a domain breach.
    """
    if z < 0.0:
        if z < -DELTA_EXT:
            return False, 0.0
        z = 0.0
    elif z > 1.0:
        return False, 0.0
    if kind == KIND_KPP:
        return True, (p0 * z) * (1.0 - z)
    if kind == KIND_LOGISTIC:
        return True, p0 * z - p1 * math.pow(z, p2)
    if kind == KIND_LINEAR:
        return True, p0 * z
    lo = 0
    hi = len(tz) - 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if tz[mid] <= z:
            lo = mid
        else:
            hi = mid
    return True, tf[lo] + (tf[lo + 1] - tf[lo]) * ((z - tz[lo]) / (tz[lo + 1] - tz[lo]))


# Dormand-Prince 5(4) tableau, error weights and dense-output weights.
_C2 = 1.0 / 5.0
_C3 = 3.0 / 10.0
_C4 = 4.0 / 5.0
_C5 = 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31 = 3.0 / 40.0
_A32 = 9.0 / 40.0
_A41 = 44.0 / 45.0
_A42 = -56.0 / 15.0
_A43 = 32.0 / 9.0
_A51 = 19372.0 / 6561.0
_A52 = -25360.0 / 2187.0
_A53 = 64448.0 / 6561.0
_A54 = -212.0 / 729.0
_A61 = 9017.0 / 3168.0
_A62 = -355.0 / 33.0
_A63 = 46732.0 / 5247.0
_A64 = 49.0 / 176.0
_A65 = -5103.0 / 18656.0
_A71 = 35.0 / 384.0
_A73 = 500.0 / 1113.0
_A74 = 125.0 / 192.0
_A75 = -2187.0 / 6784.0
_A76 = 11.0 / 84.0
_E1 = 71.0 / 57600.0
_E3 = -71.0 / 16695.0
_E4 = 71.0 / 1920.0
_E5 = -17253.0 / 339200.0
_E6 = 22.0 / 525.0
_E7 = -1.0 / 40.0
_D1 = -12715105075.0 / 11282082432.0
_D3 = 87487479700.0 / 32700410799.0
_D4 = -10690763975.0 / 1880347072.0
_D5 = 701980252875.0 / 199316789632.0
_D6 = -1453857185.0 / 822651844.0
_D7 = 69997945.0 / 29380423.0


def shoot_radial(kind, p0, p1, p2, tz, tf, d, p, r0, rel_tol, abs_tol,
                 root_tol, r_max, max_steps):
    """Integrate the radial profile from the Taylor seed at r0.

    Returns ``(status, root, rs, vs, us, widths, dense)`` where ``rs/vs/us``
    are the accepted step points (seed first; the refined root or the horizon
    last), ``dense[j]`` holds the two components' quartic dense-output
    coefficients on ``[rs[j], rs[j]+widths[j]]``.  ``widths[j]`` is the full
    width of the accepted step, which for the final (root-bracketing)
    interval may exceed ``rs[j+1]-rs[j]``.
    """
    dm1 = d - 1.0

    def rhs(r, v, u):
        ok, fv = _feval(kind, p0, p1, p2, tz, tf, v)
        if not ok:
            return False, 0.0, 0.0
        return True, u, -fv - (dm1 * u) / r

    ok, fp = _feval(kind, p0, p1, p2, tz, tf, p)
    if not ok:
        return DOMAIN_BREACH, math.nan, *_pack([], [], [], [], [])

    rr_pts = []
    vv_pts = []
    uu_pts = []
    widths = []
    dense = []

    r = r0
    v = p - fp * (r0 * r0) / (2.0 * d)
    u = -fp * r0 / d
    rr_pts.append(r)
    vv_pts.append(v)
    uu_pts.append(u)

    ok, kv1, ku1 = rhs(r, v, u)
    if not ok:
        return DOMAIN_BREACH, math.nan, *_pack(rr_pts, vv_pts, uu_pts, widths, dense)

    def step_once(r, v, u, kv1, ku1, h):
        """One embedded step attempt; returns (ok, err, new state, stage k7, dense row)."""
        v2 = v + h * (_A21 * kv1)
        u2 = u + h * (_A21 * ku1)
        ok, kv2, ku2 = rhs(r + _C2 * h, v2, u2)
        if not ok:
            return 1, 0.0, 0.0, 0.0, 0.0, 0.0, None
        v3 = v + h * (_A31 * kv1 + _A32 * kv2)
        u3 = u + h * (_A31 * ku1 + _A32 * ku2)
        ok, kv3, ku3 = rhs(r + _C3 * h, v3, u3)
        if not ok:
            return 1, 0.0, 0.0, 0.0, 0.0, 0.0, None
        v4 = v + h * ((_A41 * kv1 + _A42 * kv2) + _A43 * kv3)
        u4 = u + h * ((_A41 * ku1 + _A42 * ku2) + _A43 * ku3)
        ok, kv4, ku4 = rhs(r + _C4 * h, v4, u4)
        if not ok:
            return 1, 0.0, 0.0, 0.0, 0.0, 0.0, None
        v5 = v + h * (((_A51 * kv1 + _A52 * kv2) + _A53 * kv3) + _A54 * kv4)
        u5 = u + h * (((_A51 * ku1 + _A52 * ku2) + _A53 * ku3) + _A54 * ku4)
        ok, kv5, ku5 = rhs(r + _C5 * h, v5, u5)
        if not ok:
            return 1, 0.0, 0.0, 0.0, 0.0, 0.0, None
        v6 = v + h * ((((_A61 * kv1 + _A62 * kv2) + _A63 * kv3) + _A64 * kv4) + _A65 * kv5)
        u6 = u + h * ((((_A61 * ku1 + _A62 * ku2) + _A63 * ku3) + _A64 * ku4) + _A65 * ku5)
        ok, kv6, ku6 = rhs(r + h, v6, u6)
        if not ok:
            return 1, 0.0, 0.0, 0.0, 0.0, 0.0, None
        vn = v + h * ((((_A71 * kv1 + _A73 * kv3) + _A74 * kv4) + _A75 * kv5) + _A76 * kv6)
        un = u + h * ((((_A71 * ku1 + _A73 * ku3) + _A74 * ku4) + _A75 * ku5) + _A76 * ku6)
        ok, kv7, ku7 = rhs(r + h, vn, un)
        if not ok:
            return 1, 0.0, 0.0, 0.0, 0.0, 0.0, None
        ev = h * (((((_E1 * kv1 + _E3 * kv3) + _E4 * kv4) + _E5 * kv5) + _E6 * kv6) + _E7 * kv7)
        eu = h * (((((_E1 * ku1 + _E3 * ku3) + _E4 * ku4) + _E5 * ku5) + _E6 * ku6) + _E7 * ku7)
        sv = abs_tol + rel_tol * max(abs(v), abs(vn))
        su = abs_tol + rel_tol * max(abs(u), abs(un))
        err = max(abs(ev) / sv, abs(eu) / su)
        if err != err:
            err = 1e10
        # dense-output rows (Hairer's continuous extension of the pair)
        ydv = vn - v
        ydu = un - u
        bv = h * kv1 - ydv
        bu = h * ku1 - ydu
        c4v = ydv - h * kv7 - bv
        c4u = ydu - h * ku7 - bu
        c5v = h * (((((_D1 * kv1 + _D3 * kv3) + _D4 * kv4) + _D5 * kv5) + _D6 * kv6) + _D7 * kv7)
        c5u = h * (((((_D1 * ku1 + _D3 * ku3) + _D4 * ku4) + _D5 * ku5) + _D6 * ku6) + _D7 * ku7)
        row = (v, ydv, bv, c4v, c5v, u, ydu, bu, c4u, c5u)
        return 0, err, vn, un, kv7, ku7, row

    def advance(r, v, u, target):
        """Integrate from (r, v, u) to target (no event handling)."""
        ok, kv1, ku1 = rhs(r, v, u)
        if not ok:
            return False, v, u
        h = target - r
        n = 0
        while True:
            gap = target - r
            if gap <= 0.0:
                return True, v, u
            last = False
            if h >= gap:
                h = gap
                last = True
            if (not last) and h < 1e-14 * max(1.0, r):
                return False, v, u
            n += 1
            if n > max_steps:
                return False, v, u
            bad, err, vn, un, kv7, ku7, _row = step_once(r, v, u, kv1, ku1, h)
            if bad:
                return False, v, u
            if err > 0.0:
                fac = 0.9 * math.pow(err, -0.2)
            else:
                fac = 5.0
            if fac < 0.2:
                fac = 0.2
            if fac > 5.0:
                fac = 5.0
            if err <= 1.0:
                if last:
                    return True, vn, un
                r = r + h
                v = vn
                u = un
                kv1 = kv7
                ku1 = ku7
            h = h * fac

    status = STEP_FAILURE
    root = math.nan
    h = min(1e-3, 0.5 * (r_max - r0))
    n = 0
    while True:
        gap = r_max - r
        if gap <= 0.0:
            status = NO_ROOT
            break
        if u < 0.0:
            # keep the zero-crossing overshoot inside the extension band of f
            vgap = v + 0.5 * DELTA_EXT
            if vgap > 0.0:
                h_evt = vgap / (0.0 - u)
                if h > h_evt:
                    h = h_evt
        last = False
        if h >= gap:
            h = gap
            last = True
        if (not last) and h < 1e-14 * max(1.0, r):
            status = STEP_FAILURE
            break
        n += 1
        if n > max_steps:
            status = STEP_FAILURE
            break
        bad, err, vn, un, kv7, ku7, row = step_once(r, v, u, kv1, ku1, h)
        if bad:
            status = DOMAIN_BREACH
            break
        if err > 0.0:
            fac = 0.9 * math.pow(err, -0.2)
        else:
            fac = 5.0
        if fac < 0.2:
            fac = 0.2
        if fac > 5.0:
            fac = 5.0
        if err <= 1.0:
            if vn <= 0.0:
                # first sign change: stored-state bisection on [r, r+h]
                rl = r
                vl = v
                ul = u
                rr = r + h
                it = 0
                failed = False
                while (rr - rl) * max(1.0, abs(ul)) > root_tol and it < 200:
                    it += 1
                    rm = 0.5 * (rl + rr)
                    if rm <= rl or rm >= rr:
                        break
                    okm, vm, um = advance(rl, vl, ul, rm)
                    if not okm:
                        failed = True
                        break
                    if vm > 0.0:
                        rl = rm
                        vl = vm
                        ul = um
                    else:
                        rr = rm
                if failed:
                    status = STEP_FAILURE
                    break
                widths.append(h)
                dense.append(row)
                rr_pts.append(rl)
                vv_pts.append(vl)
                uu_pts.append(ul)
                root = rl
                status = OK
                break
            widths.append(h)
            dense.append(row)
            r = r_max if last else r + h
            v = vn
            u = un
            kv1 = kv7
            ku1 = ku7
            rr_pts.append(r)
            vv_pts.append(v)
            uu_pts.append(u)
            if last:
                status = NO_ROOT
                break
        h = h * fac
    return status, root, *_pack(rr_pts, vv_pts, uu_pts, widths, dense)


def _pack(rr, vv, uu, widths, dense):
    rs = np.asarray(rr, dtype=np.float64)
    vs = np.asarray(vv, dtype=np.float64)
    us = np.asarray(uu, dtype=np.float64)
    ws = np.asarray(widths, dtype=np.float64)
    dn = np.asarray(dense, dtype=np.float64).reshape(len(dense), 10)
    return rs, vs, us, ws, dn


def dense_eval(rs, widths, dense, r):
    """Evaluate the stored dense interpolant at radii r (array), inside [rs[0], rs[-1]]."""
    r = np.asarray(r, dtype=np.float64)
    idx = np.searchsorted(rs, r, side="right") - 1
    idx = np.clip(idx, 0, len(rs) - 2)
    th = (r - rs[idx]) / widths[idx]
    th1 = 1.0 - th
    c = dense[idx]
    v = c[:, 0] + th * (c[:, 1] + th1 * (c[:, 2] + th * (c[:, 3] + th1 * c[:, 4])))
    u = c[:, 5] + th * (c[:, 6] + th1 * (c[:, 7] + th * (c[:, 8] + th1 * c[:, 9])))
    return v, u


# --- branching Brownian motion -------------------------------------------


def _phi_add(phi_kind, c, a, b, z):
    if phi_kind == KIND_CONSTANT:
        return c
    if a < z < b:
        return c
    if z == a or z == b:
        return 0.5 * c  # quadrature-consistent edge convention
    return 0.0


def bbm_single(beta, t, x0, seed, cap):
    """One exact branching-Brownian-motion run; returns (status, positions at t)."""
    state = seed & _MASK64
    have_spare = False
    spare = 0.0

    def next_double():
        nonlocal state
        state = (state + _GOLDEN) & _MASK64
        z = state
        z = ((z ^ (z >> 30)) * 0xBF58476D1CE4E5B9) & _MASK64
        z = ((z ^ (z >> 27)) * 0x94D049BB133111EB) & _MASK64
        z = z ^ (z >> 31)
        return (z >> 11) * _INV_2_53

    def normal():
        nonlocal have_spare, spare
        if have_spare:
            have_spare = False
            return spare
        u1 = next_double()
        u2 = next_double()
        rad = math.sqrt(-2.0 * math.log1p(-u1))
        ang = _TWO_PI * u2
        spare = rad * math.sin(ang)
        have_spare = True
        return rad * math.cos(ang)

    stack = [(0.0, x0)]
    created = 1
    out = []
    while stack:
        bt, bx = stack.pop()
        if beta > 0.0:
            life = -math.log1p(-next_double()) / beta
            dieat = bt + life
        else:
            life = math.inf
            dieat = math.inf
        if dieat >= t:
            if t > bt:
                pos = bx + math.sqrt(t - bt) * normal()
            else:
                pos = bx
            out.append(pos)
        else:
            pos = bx + math.sqrt(life) * normal()
            stack.append((dieat, pos))
            stack.append((dieat, pos))
            created += 2
            if created > cap:
                return CAP_EXCEEDED, np.asarray(out, dtype=np.float64)
    return OK, np.asarray(out, dtype=np.float64)


def bbm_batch(beta, t, x0, seeds, cap, phi_kind, c, a, b):
    """Laplace-functional samples exp(-sum phi(z_i)) and particle counts per run."""
    n = len(seeds)
    values = np.empty(n, dtype=np.float64)
    counts = np.empty(n, dtype=np.int64)
    for i in range(n):
        status, pos = bbm_single(beta, t, x0, int(seeds[i]), cap)
        if status != OK:
            return status, values, counts
        s = 0.0
        for z in pos:
            s += _phi_add(phi_kind, c, a, b, float(z))
        values[i] = math.exp(-s)
        counts[i] = len(pos)
    return OK, values, counts


# --- reaction-diffusion stepping ------------------------------------------


def fkpp_evolve(u0, beta, h, dt, n_steps, bc, snap_steps, wall_tol, box_tol):
    """March u_t = 0.5 u_xx + beta u (1-u) with RK4; snapshots at given step indices.

    bc 0: walls held at their initial values (homogeneous Dirichlet use) with
    the adjacent interior nodes monitored against wall_tol; bc 1: reflecting.
    Any value leaving [-box_tol, 1+box_tol] aborts.
    """
    u = np.array(u0, dtype=np.float64)
    nx = len(u)
    snaps = np.empty((len(snap_steps), nx), dtype=np.float64)
    chalf = 0.5 / (h * h)
    wall_max = 0.0

    def rhs(w):
        out = np.empty_like(w)
        out[1:-1] = chalf * ((w[:-2] - 2.0 * w[1:-1]) + w[2:]) + (beta * w[1:-1]) * (1.0 - w[1:-1])
        if bc == 1:
            out[0] = chalf * ((w[1] - 2.0 * w[0]) + w[1]) + (beta * w[0]) * (1.0 - w[0])
            out[nx - 1] = chalf * ((w[nx - 2] - 2.0 * w[nx - 1]) + w[nx - 2]) + (beta * w[nx - 1]) * (1.0 - w[nx - 1])
        else:
            out[0] = 0.0
            out[nx - 1] = 0.0
        return out

    si = 0
    status = OK
    for step in range(n_steps + 1):
        if si < len(snap_steps) and snap_steps[si] == step:
            snaps[si] = u
            si += 1
        if step == n_steps:
            break
        k1 = rhs(u)
        k2 = rhs(u + (0.5 * dt) * k1)
        k3 = rhs(u + (0.5 * dt) * k2)
        k4 = rhs(u + dt * k3)
        u = u + (dt / 6.0) * (((k1 + 2.0 * k2) + 2.0 * k3) + k4)
        umin = float(u.min())
        umax = float(u.max())
        if umin < -box_tol or umax > 1.0 + box_tol:
            status = BOX_BREACH
            break
        if bc == 0:
            wm = float(u[1])
            if float(u[nx - 2]) > wm:
                wm = float(u[nx - 2])
            if wm > wall_max:
                wall_max = wm
            if wall_max > wall_tol:
                status = WALL_BREACH
                break
    return status, snaps, wall_max
