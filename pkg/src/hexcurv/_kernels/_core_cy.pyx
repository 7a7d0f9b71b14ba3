# cython: boundscheck=False, wraparound=False, cdivision=True
"""Compiled per-face evaluation kernel.

Same algorithm and status/branch codes as the pure-Python twin in
``_core_py.py``; that module is the reference, this one is the fast path.
"""

from libc.math cimport acosh, atanh, copysign, cosh, exp, expm1, fabs, sqrt

TAU_CAUSAL = 1e-10

OK, BAD_EDGE, BAD_SPLIT, BAD_CENTER, BAD_HEIGHT, BAD_RANGE = 0, 1, 2, 3, 4, 5
TIME, SPACE, LIGHT = 0, 1, 2

cdef double _TAU_CAUSAL = 1e-10
cdef double F_LIMIT = 150.0


cdef inline int _edge_state_c(int code, double aa, double ab, double fa,
                              double fb, double eta, double* out_c,
                              double* out_rho) nogil:
    cdef double ee = eta * exp(fa + fb)
    cdef double xa, xb, ya, yb, root, rho, ch
    if code == 0 or code == 3:
        xa = 1.0 + aa * exp(2.0 * fa)
        xb = 1.0 + ab * exp(2.0 * fb)
        if xa <= 0.0 or xb <= 0.0:
            return 0
        root = sqrt(xa * xb)
        rho = sqrt(xa / xb)
        if code == 0:
            out_c[0] = -root + ee
            out_rho[0] = rho
        else:
            out_c[0] = root + ee
            out_rho[0] = -rho
        return 1
    if code == 1 or code == 4:
        ya = expm1(2.0 * fa)
        yb = expm1(2.0 * fb)
        if ya <= 0.0 or yb <= 0.0:
            return 0
        root = sqrt(ya * yb)
        rho = sqrt(ya / yb)
        if code == 1:
            out_c[0] = root + ee
            out_rho[0] = rho
        else:
            out_c[0] = -root + ee
            out_rho[0] = -rho
        return 1
    ch = cosh(fb - fa)
    rho = exp(fa - fb)
    if code == 2:
        out_c[0] = -ch + ee
        out_rho[0] = rho
    else:
        out_c[0] = ch + ee
        out_rho[0] = -rho
    return 1


cdef inline void _cross_c(double* x, double* y, double* out) nogil:
    out[0] = x[1] * y[2] - x[2] * y[1]
    out[1] = x[2] * y[0] - x[0] * y[2]
    out[2] = -(x[0] * y[1] - x[1] * y[0])


cdef inline double _mdot_c(double* x, double* y) nogil:
    return x[0] * y[0] + x[1] * y[1] - x[2] * y[2]


def face_theta(codes, alphas, etas, f):
    """(status, bad edge index or -1, theta triple)."""
    cdef int code0 = codes[0], code1 = codes[1], code2 = codes[2]
    cdef double a0 = alphas[0], a1 = alphas[1], a2 = alphas[2]
    cdef double e0 = etas[0], e1 = etas[1], e2 = etas[2]
    cdef double f0 = f[0], f1 = f[1], f2 = f[2]
    cdef double ch[3]
    cdef double sh[3]
    cdef double rho_junk
    if fabs(f0) > F_LIMIT or fabs(f1) > F_LIMIT or fabs(f2) > F_LIMIT:
        return BAD_RANGE, -1, (0.0, 0.0, 0.0)
    if not _edge_state_c(code0, a0, a1, f0, f1, e0, &ch[0], &rho_junk):
        return BAD_RANGE, 0, (0.0, 0.0, 0.0)
    if ch[0] <= 1.0:
        return BAD_EDGE, 0, (0.0, 0.0, 0.0)
    if not _edge_state_c(code1, a1, a2, f1, f2, e1, &ch[1], &rho_junk):
        return BAD_RANGE, 1, (0.0, 0.0, 0.0)
    if ch[1] <= 1.0:
        return BAD_EDGE, 1, (0.0, 0.0, 0.0)
    if not _edge_state_c(code2, a2, a0, f2, f0, e2, &ch[2], &rho_junk):
        return BAD_RANGE, 2, (0.0, 0.0, 0.0)
    if ch[2] <= 1.0:
        return BAD_EDGE, 2, (0.0, 0.0, 0.0)
    cdef int m
    for m in range(3):
        sh[m] = sqrt((ch[m] - 1.0) * (ch[m] + 1.0))
    cdef double c0 = (ch[1] + ch[0] * ch[2]) / (sh[0] * sh[2])
    cdef double c1 = (ch[2] + ch[0] * ch[1]) / (sh[0] * sh[1])
    cdef double c2 = (ch[0] + ch[1] * ch[2]) / (sh[1] * sh[2])
    if c0 < 1.0: c0 = 1.0
    if c1 < 1.0: c1 = 1.0
    if c2 < 1.0: c2 = 1.0
    return OK, -1, (acosh(c0), acosh(c1), acosh(c2))


def face_eval(codes, alphas, etas, f, du):
    """Full evaluation; see the pure-Python twin for the field layout."""
    fail = ((0.0, 0.0, 0.0), ((0.0,) * 3,) * 3, -1, 0.0)
    cdef int code[3]
    cdef double al[3]
    cdef double eta[3]
    cdef double fv[3]
    cdef double duv[3]
    cdef int m, a, b
    for m in range(3):
        code[m] = codes[m]
        al[m] = alphas[m]
        eta[m] = etas[m]
        fv[m] = f[m]
        duv[m] = du[m]
    if fabs(fv[0]) > F_LIMIT or fabs(fv[1]) > F_LIMIT or fabs(fv[2]) > F_LIMIT:
        return (BAD_RANGE, -1) + fail
    cdef double ch[3]
    cdef double sh[3]
    cdef double rho[3]
    cdef int pa[3]
    cdef int pb[3]
    pa[0] = 0; pb[0] = 1; pa[1] = 1; pb[1] = 2; pa[2] = 2; pb[2] = 0
    for m in range(3):
        a = pa[m]; b = pb[m]
        if not _edge_state_c(code[m], al[a], al[b], fv[a], fv[b], eta[m],
                             &ch[m], &rho[m]):
            return (BAD_RANGE, m) + fail
        if ch[m] <= 1.0:
            return (BAD_EDGE, m) + fail
        sh[m] = sqrt((ch[m] - 1.0) * (ch[m] + 1.0))
    cdef double chth0 = (ch[1] + ch[0] * ch[2]) / (sh[0] * sh[2])
    cdef double chth1 = (ch[2] + ch[0] * ch[1]) / (sh[0] * sh[1])
    cdef double chth2 = (ch[0] + ch[1] * ch[2]) / (sh[1] * sh[2])
    if chth0 < 1.0: chth0 = 1.0
    if chth1 < 1.0: chth1 = 1.0
    if chth2 < 1.0: chth2 = 1.0
    theta = (acosh(chth0), acosh(chth1), acosh(chth2))

    cdef int kind[3]
    cdef double dab[3]
    cdef double dba[3]
    cdef double r1v[3]
    cdef double r2v[3]
    cdef double num, den, t, w, inv
    for m in range(3):
        num = rho[m] * sh[m]
        den = 1.0 + rho[m] * ch[m]
        if fabs(num) < fabs(den):
            t = num / den
            inv = 1.0 / sqrt(1.0 - t * t)
            kind[m] = 0
            dab[m] = t * inv
            dba[m] = (sh[m] - ch[m] * t) * inv
            r1v[m] = -dab[m]
            r2v[m] = -dba[m]
        elif fabs(num) > fabs(den):
            w = den / num
            inv = 1.0 / sqrt(1.0 - w * w)
            kind[m] = 1
            dab[m] = inv
            dba[m] = (ch[m] - sh[m] * w) * inv
            r1v[m] = -dab[m]
            r2v[m] = dba[m]
        else:
            return (BAD_SPLIT, m) + fail

    cdef double shth0 = sqrt((chth0 - 1.0) * (chth0 + 1.0))
    cdef double v[3][3]
    v[0][0] = 1.0; v[0][1] = 0.0; v[0][2] = 0.0
    v[1][0] = -ch[0]; v[1][1] = 0.0; v[1][2] = sh[0]
    v[2][0] = -ch[2]; v[2][1] = sh[2] * shth0; v[2][2] = sh[2] * chth0

    cdef double p[3][3]
    cdef double tmp[3]
    _cross_c(&v[1][0], &v[2][0], &tmp[0])
    p[0][0] = tmp[0] / sh[1]; p[0][1] = tmp[1] / sh[1]; p[0][2] = tmp[2] / sh[1]
    _cross_c(&v[2][0], &v[0][0], &tmp[0])
    p[1][0] = tmp[0] / sh[2]; p[1][1] = tmp[1] / sh[2]; p[1][2] = tmp[2] / sh[2]
    _cross_c(&v[0][0], &v[1][0], &tmp[0])
    p[2][0] = tmp[0] / sh[0]; p[2][1] = tmp[1] / sh[0]; p[2][2] = tmp[2] / sh[0]

    cdef double centers[3][3]
    cdef double s2, ca, cb
    cdef int k2
    for m in range(3):
        a = pa[m]; b = pb[m]
        s2 = sh[m] * sh[m]
        ca = -(r1v[m] + ch[m] * r2v[m]) / s2
        cb = -(r2v[m] + ch[m] * r1v[m]) / s2
        for k2 in range(3):
            centers[m][k2] = ca * v[a][k2] + cb * v[b][k2]

    cdef double n1[3]
    cdef double n2[3]
    cdef double craw[3]
    _cross_c(&p[2][0], &centers[0][0], &n1[0])
    _cross_c(&p[1][0], &centers[2][0], &n2[0])
    _cross_c(&n1[0], &n2[0], &craw[0])
    cdef double nrm = sqrt(craw[0] * craw[0] + craw[1] * craw[1] + craw[2] * craw[2])
    cdef double scale = sqrt(
        (n1[0] * n1[0] + n1[1] * n1[1] + n1[2] * n1[2])
        * (n2[0] * n2[0] + n2[1] * n2[1] + n2[2] * n2[2])
    )
    if nrm <= 1e-14 * scale or nrm == 0.0:
        return (BAD_CENTER, -1) + fail
    cdef double chat[3]
    chat[0] = craw[0] / nrm; chat[1] = craw[1] / nrm; chat[2] = craw[2] / nrm
    cdef double sigma = _mdot_c(&chat[0], &chat[0])
    cdef int branch
    if fabs(sigma) <= _TAU_CAUSAL:
        branch = LIGHT
    elif sigma < 0.0:
        branch = TIME
    else:
        branch = SPACE

    cdef int opp[3]
    opp[0] = 2; opp[1] = 0; opp[2] = 1
    cdef double ratio[3]
    cdef double r
    for m in range(3):
        num = _mdot_c(&p[opp[m]][0], &chat[0])
        den = _mdot_c(&centers[m][0], &chat[0])
        if den == 0.0:
            return (BAD_HEIGHT, m) + fail
        r = num / den
        if branch == LIGHT:
            r = copysign(1.0, r)
        elif branch == SPACE and fabs(r) > 1e12:
            return (BAD_HEIGHT, m) + fail
        ratio[m] = r

    cdef double sg[3]
    for m in range(3):
        sg[m] = 1.0 if kind[m] == 1 else -1.0
    cdef double m01 = -ratio[0] / (dba[0] * sh[0])
    cdef double m10 = sg[0] * ratio[0] / (dab[0] * sh[0])
    cdef double m12 = -ratio[1] / (dba[1] * sh[1])
    cdef double m21 = sg[1] * ratio[1] / (dab[1] * sh[1])
    cdef double m20 = -ratio[2] / (dba[2] * sh[2])
    cdef double m02 = sg[2] * ratio[2] / (dab[2] * sh[2])
    cdef double m00 = ch[0] * m10 + ch[2] * m20
    cdef double m11 = ch[0] * m01 + ch[1] * m21
    cdef double m22 = ch[2] * m02 + ch[1] * m12

    jac = (
        (m00 * duv[0], m01 * duv[1], m02 * duv[2]),
        (m10 * duv[0], m11 * duv[1], m12 * duv[2]),
        (m20 * duv[0], m21 * duv[1], m22 * duv[2]),
    )
    return OK, -1, theta, jac, branch, sigma
