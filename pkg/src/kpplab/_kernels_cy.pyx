# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled numerical kernels.

Twin of ``kpplab._kernels_py``: same algorithms, same operand order in every
floating-point expression, same libm primitives, so results are bit-identical
to the pure-Python fallback (no FMA contraction, no reassociation; see the
parity tests).
"""

import numpy as np

from libc.math cimport INFINITY, cos, exp, fabs, log1p, pow, sin, sqrt
from libc.stdint cimport int64_t, uint64_t
from libc.stdlib cimport free, malloc, realloc

BACKEND_NAME = "cython"

OK = 0
NO_ROOT = 1
STEP_FAILURE = 2
DOMAIN_BREACH = 3
WALL_BREACH = 4
BOX_BREACH = 5
CAP_EXCEEDED = 6

KIND_KPP = 0
KIND_LOGISTIC = 1
KIND_LINEAR = 2
KIND_TABLE = 3

KIND_CONSTANT = 0
KIND_INDICATOR = 1

DELTA_EXT = 1e-3

_MASK64 = 0xFFFFFFFFFFFFFFFF

cdef enum:
    C_OK = 0
    C_NO_ROOT = 1
    C_STEP_FAILURE = 2
    C_DOMAIN_BREACH = 3
    C_WALL_BREACH = 4
    C_BOX_BREACH = 5
    C_CAP_EXCEEDED = 6
    C_KPP = 0
    C_LOGISTIC = 1
    C_LINEAR = 2
    C_TABLE = 3
    C_CONSTANT = 0
    C_INDICATOR = 1

cdef double _C_DELTA_EXT = 1e-3
cdef double _TWO_PI = 6.283185307179586
cdef double _INV_2_53 = 1.1102230246251565e-16

cdef double _C2 = 1.0 / 5.0
cdef double _C3 = 3.0 / 10.0
cdef double _C4 = 4.0 / 5.0
cdef double _C5 = 8.0 / 9.0
cdef double _A21 = 1.0 / 5.0
cdef double _A31 = 3.0 / 40.0
cdef double _A32 = 9.0 / 40.0
cdef double _A41 = 44.0 / 45.0
cdef double _A42 = -56.0 / 15.0
cdef double _A43 = 32.0 / 9.0
cdef double _A51 = 19372.0 / 6561.0
cdef double _A52 = -25360.0 / 2187.0
cdef double _A53 = 64448.0 / 6561.0
cdef double _A54 = -212.0 / 729.0
cdef double _A61 = 9017.0 / 3168.0
cdef double _A62 = -355.0 / 33.0
cdef double _A63 = 46732.0 / 5247.0
cdef double _A64 = 49.0 / 176.0
cdef double _A65 = -5103.0 / 18656.0
cdef double _A71 = 35.0 / 384.0
cdef double _A73 = 500.0 / 1113.0
cdef double _A74 = 125.0 / 192.0
cdef double _A75 = -2187.0 / 6784.0
cdef double _A76 = 11.0 / 84.0
cdef double _E1 = 71.0 / 57600.0
cdef double _E3 = -71.0 / 16695.0
cdef double _E4 = 71.0 / 1920.0
cdef double _E5 = -17253.0 / 339200.0
cdef double _E6 = 22.0 / 525.0
cdef double _E7 = -1.0 / 40.0
cdef double _D1 = -12715105075.0 / 11282082432.0
cdef double _D3 = 87487479700.0 / 32700410799.0
cdef double _D4 = -10690763975.0 / 1880347072.0
cdef double _D5 = 701980252875.0 / 199316789632.0
cdef double _D6 = -1453857185.0 / 822651844.0
cdef double _D7 = 69997945.0 / 29380423.0


cdef inline int c_feval(int kind, double p0, double p1, double p2,
                        double[::1] tz, double[::1] tf, double z, double* out) nogil:
    cdef Py_ssize_t lo, hi, mid
    if z < 0.0:
        if z < -_C_DELTA_EXT:
            return 0
        z = 0.0
    elif z > 1.0:
        return 0
    if kind == C_KPP:
        out[0] = (p0 * z) * (1.0 - z)
        return 1
    if kind == C_LOGISTIC:
        out[0] = p0 * z - p1 * pow(z, p2)
        return 1
    if kind == C_LINEAR:
        out[0] = p0 * z
        return 1
    lo = 0
    hi = tz.shape[0] - 1
    while hi - lo > 1:
        mid = (lo + hi) >> 1
        if tz[mid] <= z:
            lo = mid
        else:
            hi = mid
    out[0] = tf[lo] + (tf[lo + 1] - tf[lo]) * ((z - tz[lo]) / (tz[lo + 1] - tz[lo]))
    return 1


def _feval(kind, p0, p1, p2, tz, tf, z):
    """Python-visible reaction-term evaluation (mirrors the fallback's helper)."""
    cdef double val = 0.0
    cdef double[::1] mtz = np.ascontiguousarray(tz, dtype=np.float64)
    cdef double[::1] mtf = np.ascontiguousarray(tf, dtype=np.float64)
    ok = c_feval(kind, p0, p1, p2, mtz, mtf, z, &val)
    return bool(ok), float(val)


ctypedef struct StepOut:
    int bad
    double err
    double vn
    double un
    double kv7
    double ku7
    double c1v
    double c2v
    double c3v
    double c4v
    double c5v
    double c1u
    double c2u
    double c3u
    double c4u
    double c5u


cdef inline int c_rhs(int kind, double p0, double p1, double p2,
                      double[::1] tz, double[::1] tf, double dm1,
                      double r, double v, double u, double* dv, double* du) nogil:
    cdef double fv = 0.0
    if not c_feval(kind, p0, p1, p2, tz, tf, v, &fv):
        return 0
    dv[0] = u
    du[0] = -fv - (dm1 * u) / r
    return 1


cdef void c_step_once(int kind, double p0, double p1, double p2,
                      double[::1] tz, double[::1] tf, double dm1,
                      double rel_tol, double abs_tol,
                      double r, double v, double u, double kv1, double ku1,
                      double h, StepOut* o) nogil:
    cdef double v2, u2, v3, u3, v4, u4, v5, u5, v6, u6, vn, un
    cdef double kv2, ku2, kv3, ku3, kv4, ku4, kv5, ku5, kv6, ku6, kv7, ku7
    cdef double ev, eu, sv, su, err, ydv, ydu, bv, bu
    o.bad = 1
    v2 = v + h * (_A21 * kv1)
    u2 = u + h * (_A21 * ku1)
    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r + _C2 * h, v2, u2, &kv2, &ku2):
        return
    v3 = v + h * (_A31 * kv1 + _A32 * kv2)
    u3 = u + h * (_A31 * ku1 + _A32 * ku2)
    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r + _C3 * h, v3, u3, &kv3, &ku3):
        return
    v4 = v + h * ((_A41 * kv1 + _A42 * kv2) + _A43 * kv3)
    u4 = u + h * ((_A41 * ku1 + _A42 * ku2) + _A43 * ku3)
    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r + _C4 * h, v4, u4, &kv4, &ku4):
        return
    v5 = v + h * (((_A51 * kv1 + _A52 * kv2) + _A53 * kv3) + _A54 * kv4)
    u5 = u + h * (((_A51 * ku1 + _A52 * ku2) + _A53 * ku3) + _A54 * ku4)
    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r + _C5 * h, v5, u5, &kv5, &ku5):
        return
    v6 = v + h * ((((_A61 * kv1 + _A62 * kv2) + _A63 * kv3) + _A64 * kv4) + _A65 * kv5)
    u6 = u + h * ((((_A61 * ku1 + _A62 * ku2) + _A63 * ku3) + _A64 * ku4) + _A65 * ku5)
    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r + h, v6, u6, &kv6, &ku6):
        return
    vn = v + h * ((((_A71 * kv1 + _A73 * kv3) + _A74 * kv4) + _A75 * kv5) + _A76 * kv6)
    un = u + h * ((((_A71 * ku1 + _A73 * ku3) + _A74 * ku4) + _A75 * ku5) + _A76 * ku6)
    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r + h, vn, un, &kv7, &ku7):
        return
    ev = h * (((((_E1 * kv1 + _E3 * kv3) + _E4 * kv4) + _E5 * kv5) + _E6 * kv6) + _E7 * kv7)
    eu = h * (((((_E1 * ku1 + _E3 * ku3) + _E4 * ku4) + _E5 * ku5) + _E6 * ku6) + _E7 * ku7)
    sv = abs_tol + rel_tol * max(fabs(v), fabs(vn))
    su = abs_tol + rel_tol * max(fabs(u), fabs(un))
    err = max(fabs(ev) / sv, fabs(eu) / su)
    if err != err:
        err = 1e10
    ydv = vn - v
    ydu = un - u
    bv = h * kv1 - ydv
    bu = h * ku1 - ydu
    o.bad = 0
    o.err = err
    o.vn = vn
    o.un = un
    o.kv7 = kv7
    o.ku7 = ku7
    o.c1v = v
    o.c2v = ydv
    o.c3v = bv
    o.c4v = ydv - h * kv7 - bv
    o.c5v = h * (((((_D1 * kv1 + _D3 * kv3) + _D4 * kv4) + _D5 * kv5) + _D6 * kv6) + _D7 * kv7)
    o.c1u = u
    o.c2u = ydu
    o.c3u = bu
    o.c4u = ydu - h * ku7 - bu
    o.c5u = h * (((((_D1 * ku1 + _D3 * ku3) + _D4 * ku4) + _D5 * ku5) + _D6 * ku6) + _D7 * ku7)


cdef int c_advance(int kind, double p0, double p1, double p2,
                   double[::1] tz, double[::1] tf, double dm1,
                   double rel_tol, double abs_tol, long long max_steps,
                   double r, double v, double u, double target,
                   double* out_v, double* out_u) nogil:
    cdef double kv1, ku1, h, gap, fac
    cdef long long n = 0
    cdef bint last
    cdef StepOut o
    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r, v, u, &kv1, &ku1):
        return 0
    h = target - r
    while True:
        gap = target - r
        if gap <= 0.0:
            out_v[0] = v
            out_u[0] = u
            return 1
        last = False
        if h >= gap:
            h = gap
            last = True
        if (not last) and h < 1e-14 * max(1.0, r):
            return 0
        n += 1
        if n > max_steps:
            return 0
        c_step_once(kind, p0, p1, p2, tz, tf, dm1, rel_tol, abs_tol,
                    r, v, u, kv1, ku1, h, &o)
        if o.bad:
            return 0
        if o.err > 0.0:
            fac = 0.9 * pow(o.err, -0.2)
        else:
            fac = 5.0
        if fac < 0.2:
            fac = 0.2
        if fac > 5.0:
            fac = 5.0
        if o.err <= 1.0:
            if last:
                out_v[0] = o.vn
                out_u[0] = o.un
                return 1
            r = r + h
            v = o.vn
            u = o.un
            kv1 = o.kv7
            ku1 = o.ku7
        h = h * fac


def shoot_radial(int kind, double p0, double p1, double p2, tz_in, tf_in,
                 double d, double p, double r0, double rel_tol, double abs_tol,
                 double root_tol, double r_max, long long max_steps):
    """Adaptive integration of the radial profile; see the fallback's docstring."""
    cdef double[::1] tz = np.ascontiguousarray(tz_in, dtype=np.float64)
    cdef double[::1] tf = np.ascontiguousarray(tf_in, dtype=np.float64)
    cdef double dm1 = d - 1.0
    cdef double fp = 0.0, r, v, u, kv1, ku1, h, gap, fac, vgap, h_evt
    cdef double rl, vl, ul, rr, rm, vm, um, root
    cdef long long n = 0
    cdef int it, status
    cdef bint last, failed
    cdef StepOut o

    rr_pts = []
    vv_pts = []
    uu_pts = []
    widths = []
    dense = []

    if not c_feval(kind, p0, p1, p2, tz, tf, p, &fp):
        return (DOMAIN_BREACH, float("nan")) + _pack(rr_pts, vv_pts, uu_pts, widths, dense)

    r = r0
    v = p - fp * (r0 * r0) / (2.0 * d)
    u = -fp * r0 / d
    rr_pts.append(r)
    vv_pts.append(v)
    uu_pts.append(u)

    if not c_rhs(kind, p0, p1, p2, tz, tf, dm1, r, v, u, &kv1, &ku1):
        return (DOMAIN_BREACH, float("nan")) + _pack(rr_pts, vv_pts, uu_pts, widths, dense)

    status = STEP_FAILURE
    root = float("nan")
    h = min(1e-3, 0.5 * (r_max - r0))
    while True:
        gap = r_max - r
        if gap <= 0.0:
            status = NO_ROOT
            break
        if u < 0.0:
            # keep the zero-crossing overshoot inside the extension band of f
            vgap = v + 0.5 * _C_DELTA_EXT
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
        c_step_once(kind, p0, p1, p2, tz, tf, dm1, rel_tol, abs_tol,
                    r, v, u, kv1, ku1, h, &o)
        if o.bad:
            status = DOMAIN_BREACH
            break
        if o.err > 0.0:
            fac = 0.9 * pow(o.err, -0.2)
        else:
            fac = 5.0
        if fac < 0.2:
            fac = 0.2
        if fac > 5.0:
            fac = 5.0
        if o.err <= 1.0:
            if o.vn <= 0.0:
                # first sign change: stored-state bisection on [r, r+h]
                rl = r
                vl = v
                ul = u
                rr = r + h
                it = 0
                failed = False
                while (rr - rl) * max(1.0, fabs(ul)) > root_tol and it < 200:
                    it += 1
                    rm = 0.5 * (rl + rr)
                    if rm <= rl or rm >= rr:
                        break
                    if not c_advance(kind, p0, p1, p2, tz, tf, dm1, rel_tol, abs_tol,
                                     max_steps, rl, vl, ul, rm, &vm, &um):
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
                dense.append((o.c1v, o.c2v, o.c3v, o.c4v, o.c5v,
                              o.c1u, o.c2u, o.c3u, o.c4u, o.c5u))
                rr_pts.append(rl)
                vv_pts.append(vl)
                uu_pts.append(ul)
                root = rl
                status = OK
                break
            widths.append(h)
            dense.append((o.c1v, o.c2v, o.c3v, o.c4v, o.c5v,
                          o.c1u, o.c2u, o.c3u, o.c4u, o.c5u))
            if last:
                r = r_max
            else:
                r = r + h
            v = o.vn
            u = o.un
            kv1 = o.kv7
            ku1 = o.ku7
            rr_pts.append(r)
            vv_pts.append(v)
            uu_pts.append(u)
            if last:
                status = NO_ROOT
                break
        h = h * fac
    return (status, root) + _pack(rr_pts, vv_pts, uu_pts, widths, dense)


def _pack(rr, vv, uu, widths, dense):
    rs = np.asarray(rr, dtype=np.float64)
    vs = np.asarray(vv, dtype=np.float64)
    us = np.asarray(uu, dtype=np.float64)
    ws = np.asarray(widths, dtype=np.float64)
    dn = np.asarray(dense, dtype=np.float64).reshape(len(dense), 10)
    return rs, vs, us, ws, dn


def dense_eval(rs, widths, dense, r):
    """Evaluate the stored dense interpolant at radii r (array)."""
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


cdef inline double _next_double(uint64_t* state) nogil:
    state[0] = state[0] + <uint64_t>0x9E3779B97F4A7C15
    cdef uint64_t z = state[0]
    z = (z ^ (z >> 30)) * <uint64_t>0xBF58476D1CE4E5B9
    z = (z ^ (z >> 27)) * <uint64_t>0x94D049BB133111EB
    z = z ^ (z >> 31)
    return <double>(z >> 11) * _INV_2_53


cdef inline double _normal(uint64_t* state, bint* have_spare, double* spare) nogil:
    cdef double u1, u2, rad, ang
    if have_spare[0]:
        have_spare[0] = False
        return spare[0]
    u1 = _next_double(state)
    u2 = _next_double(state)
    rad = sqrt(-2.0 * log1p(-u1))
    ang = _TWO_PI * u2
    spare[0] = rad * sin(ang)
    have_spare[0] = True
    return rad * cos(ang)


cdef inline double _phi_value(int phi_kind, double c, double a, double b, double z) nogil:
    if phi_kind == C_CONSTANT:
        return c
    if a < z and z < b:
        return c
    if z == a or z == b:
        return 0.5 * c  # quadrature-consistent edge convention
    return 0.0


def _phi_add(phi_kind, c, a, b, z):
    return float(_phi_value(phi_kind, c, a, b, z))


cdef int _bbm_core(double beta, double t, double x0, uint64_t seed, long long cap,
                   int phi_kind, double c, double a, double b,
                   double* out_value, int64_t* out_count,
                   double** out_pos, long long* out_npos) nogil:
    """Shared exact-simulation core.

    With out_pos != NULL the survivor positions are recorded (caller frees);
    the Laplace sample and count are always accumulated, in record order.
    """
    cdef uint64_t state = seed
    cdef bint have_spare = False
    cdef double spare = 0.0
    cdef long long st_cap = 256
    cdef long long top = 0
    cdef long long created = 1
    cdef long long npos = 0
    cdef long long pos_cap = 0
    cdef double* st_t = <double*>malloc(st_cap * sizeof(double))
    cdef double* st_x = <double*>malloc(st_cap * sizeof(double))
    cdef double* pos = NULL
    cdef double* tmp
    cdef double bt, bx, life, dieat, z, s
    cdef int result = C_OK
    if st_t == NULL or st_x == NULL:
        if st_t != NULL:
            free(st_t)
        if st_x != NULL:
            free(st_x)
        return C_STEP_FAILURE
    if out_pos != NULL:
        pos_cap = 256
        pos = <double*>malloc(pos_cap * sizeof(double))
        if pos == NULL:
            free(st_t)
            free(st_x)
            return C_STEP_FAILURE
    st_t[0] = 0.0
    st_x[0] = x0
    top = 1
    s = 0.0
    while top > 0:
        top -= 1
        bt = st_t[top]
        bx = st_x[top]
        if beta > 0.0:
            life = -log1p(-_next_double(&state)) / beta
            dieat = bt + life
        else:
            dieat = INFINITY
        if dieat >= t:
            if t > bt:
                z = bx + sqrt(t - bt) * _normal(&state, &have_spare, &spare)
            else:
                z = bx
            s += _phi_value(phi_kind, c, a, b, z)
            npos += 1
            if out_pos != NULL:
                if npos > pos_cap:
                    pos_cap = pos_cap * 2
                    tmp = <double*>realloc(pos, pos_cap * sizeof(double))
                    if tmp == NULL:
                        result = C_STEP_FAILURE
                        break
                    pos = tmp
                pos[npos - 1] = z
        else:
            z = bx + sqrt(life) * _normal(&state, &have_spare, &spare)
            if top + 2 > st_cap:
                st_cap = st_cap * 2
                tmp = <double*>realloc(st_t, st_cap * sizeof(double))
                if tmp == NULL:
                    result = C_STEP_FAILURE
                    break
                st_t = tmp
                tmp = <double*>realloc(st_x, st_cap * sizeof(double))
                if tmp == NULL:
                    result = C_STEP_FAILURE
                    break
                st_x = tmp
            st_t[top] = dieat
            st_x[top] = z
            st_t[top + 1] = dieat
            st_x[top + 1] = z
            top += 2
            created += 2
            if created > cap:
                result = C_CAP_EXCEEDED
                break
    free(st_t)
    free(st_x)
    if result != C_OK:
        if pos != NULL:
            free(pos)
        return result
    out_value[0] = s
    out_count[0] = npos
    if out_pos != NULL:
        out_pos[0] = pos
        out_npos[0] = npos
    return C_OK


def bbm_single(double beta, double t, double x0, seed, cap):
    """One exact branching-Brownian-motion run; returns (status, positions at t)."""
    cdef uint64_t st = <uint64_t>(int(seed) & _MASK64)
    cdef long long ccap = int(cap)
    cdef double value = 0.0
    cdef int64_t count = 0
    cdef double* pos = NULL
    cdef long long npos = 0
    cdef int status = _bbm_core(beta, t, x0, st, ccap, C_CONSTANT, 0.0, 0.0, 0.0,
                                &value, &count, &pos, &npos)
    if status != OK:
        return status, np.empty(0, dtype=np.float64)
    out = np.empty(npos, dtype=np.float64)
    cdef double[::1] mv = out
    cdef long long i
    for i in range(npos):
        mv[i] = pos[i]
    free(pos)
    return OK, out


def bbm_batch(double beta, double t, double x0, seeds, cap, int phi_kind,
              double c, double a, double b):
    """Laplace-functional samples exp(-sum phi(z_i)) and counts per run."""
    cdef uint64_t[::1] sd = np.ascontiguousarray(seeds, dtype=np.uint64)
    cdef Py_ssize_t n = sd.shape[0]
    values = np.empty(n, dtype=np.float64)
    counts = np.empty(n, dtype=np.int64)
    cdef double[::1] mv = values
    cdef int64_t[::1] mc = counts
    cdef long long ccap = int(cap)
    cdef double s = 0.0
    cdef int64_t cnt = 0
    cdef int status
    cdef Py_ssize_t i
    for i in range(n):
        status = _bbm_core(beta, t, x0, sd[i], ccap, phi_kind, c, a, b,
                           &s, &cnt, NULL, NULL)
        if status != OK:
            return status, values, counts
        mv[i] = exp(-s)
        mc[i] = cnt
    return OK, values, counts


# --- reaction-diffusion stepping ------------------------------------------


cdef void _fkpp_rhs(double[::1] w, double[::1] out, Py_ssize_t nx,
                    double chalf, double beta, int bc) nogil:
    cdef Py_ssize_t i
    for i in range(1, nx - 1):
        out[i] = chalf * ((w[i - 1] - 2.0 * w[i]) + w[i + 1]) + (beta * w[i]) * (1.0 - w[i])
    if bc == 1:
        out[0] = chalf * ((w[1] - 2.0 * w[0]) + w[1]) + (beta * w[0]) * (1.0 - w[0])
        out[nx - 1] = chalf * ((w[nx - 2] - 2.0 * w[nx - 1]) + w[nx - 2]) \
            + (beta * w[nx - 1]) * (1.0 - w[nx - 1])
    else:
        out[0] = 0.0
        out[nx - 1] = 0.0


def fkpp_evolve(u0, double beta, double h, double dt, long long n_steps, int bc,
                snap_steps, double wall_tol, double box_tol):
    """RK4 march of u_t = 0.5 u_xx + beta u(1-u); see the fallback's docstring."""
    u_arr = np.array(u0, dtype=np.float64)
    cdef double[::1] u = u_arr
    cdef Py_ssize_t nx = u.shape[0]
    cdef int64_t[::1] snaps_idx = np.ascontiguousarray(snap_steps, dtype=np.int64)
    snaps_arr = np.empty((snaps_idx.shape[0], nx), dtype=np.float64)
    cdef double[:, ::1] snaps = snaps_arr
    k1_arr = np.empty(nx, dtype=np.float64)
    k2_arr = np.empty(nx, dtype=np.float64)
    k3_arr = np.empty(nx, dtype=np.float64)
    k4_arr = np.empty(nx, dtype=np.float64)
    y_arr = np.empty(nx, dtype=np.float64)
    cdef double[::1] k1 = k1_arr
    cdef double[::1] k2 = k2_arr
    cdef double[::1] k3 = k3_arr
    cdef double[::1] k4 = k4_arr
    cdef double[::1] y = y_arr
    cdef double chalf = 0.5 / (h * h)
    cdef double hdt = 0.5 * dt
    cdef double sixth = dt / 6.0
    cdef double wall_max = 0.0
    cdef double umin, umax, wm, val
    cdef long long step
    cdef Py_ssize_t i, si = 0
    cdef int status = OK

    for step in range(n_steps + 1):
        if si < snaps_idx.shape[0] and snaps_idx[si] == step:
            for i in range(nx):
                snaps[si, i] = u[i]
            si += 1
        if step == n_steps:
            break
        _fkpp_rhs(u, k1, nx, chalf, beta, bc)
        for i in range(nx):
            y[i] = u[i] + hdt * k1[i]
        _fkpp_rhs(y, k2, nx, chalf, beta, bc)
        for i in range(nx):
            y[i] = u[i] + hdt * k2[i]
        _fkpp_rhs(y, k3, nx, chalf, beta, bc)
        for i in range(nx):
            y[i] = u[i] + dt * k3[i]
        _fkpp_rhs(y, k4, nx, chalf, beta, bc)
        umin = 1e308
        umax = -1e308
        for i in range(nx):
            val = u[i] + sixth * (((k1[i] + 2.0 * k2[i]) + 2.0 * k3[i]) + k4[i])
            u[i] = val
            if val < umin:
                umin = val
            if val > umax:
                umax = val
        if umin < -box_tol or umax > 1.0 + box_tol:
            status = BOX_BREACH
            break
        if bc == 0:
            wm = u[1]
            if u[nx - 2] > wm:
                wm = u[nx - 2]
            if wm > wall_max:
                wall_max = wm
            if wall_max > wall_tol:
                status = WALL_BREACH
                break
    return status, snaps_arr, wall_max
