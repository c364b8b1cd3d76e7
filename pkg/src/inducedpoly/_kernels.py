"""Compiled inner loops.

Everything here works on raw float64 arrays; the public wrappers in the
sibling modules do validation and build the typed objects.  Modification
kernels operate in place on the leading ``L`` entries of ``a``/``b`` and
return the new logical length.
"""

import math

import numpy as np
from numba import njit

_MAXIT = 50


@njit(cache=True)
def poly_values(a, b, x, n):
    p = np.empty(n + 1)
    p[0] = 1.0 / math.sqrt(b[0])
    if n >= 1:
        p[1] = (x - a[0]) * p[0] / math.sqrt(b[1])
    for j in range(1, n):
        p[j + 1] = ((x - a[j]) * p[j] - math.sqrt(b[j]) * p[j - 1]) / math.sqrt(b[j + 1])
    return p


@njit(cache=True)
def ratio_values(a, b, x, n, out):
    # out[0] = p_0, out[j] = p_j / p_{j-1}
    out[0] = 1.0 / math.sqrt(b[0])
    if n >= 1:
        out[1] = (x - a[0]) / math.sqrt(b[1])
    for j in range(2, n + 1):
        out[j] = (x - a[j - 1] - math.sqrt(b[j - 1]) / out[j - 1]) / math.sqrt(b[j])


@njit(cache=True)
def normalized_values(a, b, x, n, out):
    out[0] = 1.0 / math.sqrt(b[0])
    if n >= 1:
        out[1] = (x - a[0]) / math.sqrt(b[1])
    if n >= 2:
        out[2] = ((x - a[1]) * out[1] - math.sqrt(b[1])) / (
            math.sqrt(b[2]) * math.sqrt(1.0 + out[1] * out[1]))
    for j in range(2, n):
        cj = out[j]
        cm = out[j - 1]
        out[j + 1] = ((x - a[j]) * cj - math.sqrt(b[j]) * cm / math.sqrt(1.0 + cm * cm)) / (
            math.sqrt(b[j + 1]) * math.sqrt(1.0 + cj * cj))


@njit(cache=True)
def quad_mod_inplace(a, b, L, z, work):
    """Coefficients of (x - z)^2 dmu from those of mu; returns L - 2.

    The n = 0 correction uses C_0 / sqrt(1 + C_0^2) -> 1, i.e. p_0/|p_0|;
    this is what the Stieltjes procedure reproduces.
    """
    normalized_values(a, b, z, L - 1, work)
    c0 = work[0]
    # t_k = sqrt(b_{k+1}) C_{k+1} C_k / sqrt(1 + C_k^2), with t_0 = sqrt(b_1) C_1
    t_prev = math.sqrt(b[1]) * work[1]
    for k in range(L - 2):
        ck1 = work[k + 1]
        ck2 = work[k + 2]
        t_next = math.sqrt(b[k + 2]) * ck2 * ck1 / math.sqrt(1.0 + ck1 * ck1)
        if k == 0:
            db = (1.0 + ck1 * ck1) / (c0 * c0)
        else:
            ck = work[k]
            db = (1.0 + ck1 * ck1) / (1.0 + ck * ck)
        a[k] = a[k + 1] + (t_next - t_prev)
        b[k] = b[k + 1] * db
        t_prev = t_next
    return L - 2


@njit(cache=True)
def lin_mod_inplace(a, b, L, y, work):
    """Coefficients of |x - y| dmu for y outside the zero hull; returns L - 1.

    Returns -1 if the ratios change sign (y inside the zero hull of p_{L-1}).
    The a-corrections enter with a minus sign relative to the literal
    ratio form: a~_k = a_k - (sqrt(b_{k+1})/r_{k+1} - sqrt(b_k)/r_k).
    """
    ratio_values(a, b, y, L - 1, work)
    sgn = 1.0 if work[1] > 0 else -1.0
    for j in range(1, L):
        if work[j] * sgn <= 0.0:
            return -1
    prev = 0.0
    for k in range(L - 1):
        sb1 = math.sqrt(b[k + 1])
        r1 = work[k + 1]
        nxt = sb1 / r1
        a[k] = a[k] - (nxt - prev)
        if k == 0:
            b[0] = b[0] * abs(sb1 * r1)
        else:
            b[k] = b[k] * (sb1 * r1) / (math.sqrt(b[k]) * work[k])
        prev = nxt
    return L - 1


@njit(cache=True)
def gauss_ql(a, b, N, nodes, weights):
    """Golub-Welsch by implicit-shift QL with first-component accumulation.

    Returns 0 on success, otherwise the index of the eigenvalue that failed
    to converge plus one.
    """
    d = np.empty(N)
    e = np.zeros(N)
    zv = np.zeros(N)
    for i in range(N):
        d[i] = a[i]
    for i in range(N - 1):
        e[i] = math.sqrt(b[i + 1])
    zv[0] = 1.0
    for l in range(N):
        it = 0
        while True:
            m = l
            while m < N - 1:
                dd = abs(d[m]) + abs(d[m + 1])
                if abs(e[m]) + dd == dd:
                    break
                m += 1
            if m == l:
                break
            it += 1
            if it > _MAXIT:
                return l + 1
            g = (d[l + 1] - d[l]) / (2.0 * e[l])
            r = math.hypot(g, 1.0)
            if g >= 0:
                g = d[m] - d[l] + e[l] / (g + r)
            else:
                g = d[m] - d[l] + e[l] / (g - r)
            s = 1.0
            c = 1.0
            p = 0.0
            i = m - 1
            early = False
            while i >= l:
                f = s * e[i]
                bb = c * e[i]
                r = math.hypot(f, g)
                e[i + 1] = r
                if r == 0.0:
                    d[i + 1] -= p
                    e[m] = 0.0
                    early = True
                    break
                s = f / r
                c = g / r
                g = d[i + 1] - p
                r = (d[i] - g) * s + 2.0 * c * bb
                p = s * r
                d[i + 1] = g + p
                g = c * r - bb
                f = zv[i + 1]
                zv[i + 1] = s * zv[i] + c * f
                zv[i] = c * zv[i] - s * f
                i -= 1
            if early:
                continue
            d[l] -= p
            e[l] = g
            e[m] = 0.0
    order = np.argsort(d)
    for i in range(N):
        k = order[i]
        nodes[i] = d[k]
        weights[i] = b[0] * zv[k] * zv[k]
    return 0


@njit(cache=True)
def _logsumexp_dot(logw, logf, M):
    mx = -np.inf
    for i in range(M):
        v = logw[i] + logf[i]
        if v > mx:
            mx = v
    if mx == -np.inf:
        return -np.inf
    s = 0.0
    for i in range(M):
        s += math.exp(logw[i] + logf[i] - mx)
    return mx + math.log(s)


@njit(cache=True)
def jacobi_left(xs, alpha, beta, M, zeros, log_gn2, a_base, b_base, log_const, out, out_logprod):
    """Left-branch induced CDF for Jacobi measures at each x in xs.

    log_const = -(alpha log 2 + log(beta+1) + log B(beta+1, alpha+1)).
    out_logprod receives log prod_{j=0}^{M} b_j of the modified measure.
    Returns nonzero on eigen-solver failure.
    """
    n = zeros.shape[0]
    A = int(math.floor(abs(alpha)))
    Lb = a_base.shape[0]
    a = np.empty(Lb)
    b = np.empty(Lb)
    work = np.empty(Lb)
    nodes = np.empty(M)
    weights = np.empty(M)
    logf = np.empty(M)
    logw = np.empty(M)
    for q in range(xs.shape[0]):
        x = xs[q]
        if x <= -1.0:
            out[q] = 0.0
            out_logprod[q] = -np.inf
            continue
        half = 0.5 * (x + 1.0)
        lhalf = math.log(half)
        for i in range(Lb):
            a[i] = a_base[i]
            b[i] = b_base[i]
        L = Lb
        logm = math.log(b[0])
        b[0] = 1.0
        for j in range(n):
            u = (zeros[j] + 1.0) / half - 1.0
            L = quad_mod_inplace(a, b, L, u, work)
            logm += math.log(b[0]) + 2.0 * lhalf + log_gn2 / n
            b[0] = 1.0
        y = (3.0 - x) / (1.0 + x)
        for k in range(A):
            L = lin_mod_inplace(a, b, L, y, work)
            logm += math.log(b[0]) + lhalf
            b[0] = 1.0
        lp = logm
        for j in range(1, M + 1):
            lp += math.log(b[j])
        out_logprod[q] = lp
        info = gauss_ql(a, b, M, nodes, weights)
        if info != 0:
            return info
        ex = alpha - A
        if ex == 0.0:
            # integrand is 1 and the modified measure has unit mass
            logI = 0.0
        else:
            for m in range(M):
                logw[m] = math.log(weights[m]) if weights[m] > 0 else -np.inf
                logf[m] = ex * math.log(2.0 - 0.5 * (nodes[m] + 1.0) * (x + 1.0))
            logI = _logsumexp_dot(logw, logf, M)
        out[q] = math.exp(logm + logI + (beta + 1.0) * lhalf + log_const)
    return 0


@njit(cache=True)
def halffreud_left(xs, alpha, rho, M, zeros, log_gn2, a_base, b_base, log_const, out):
    """Left-branch induced CDF for half-line Freud measures.

    log_const = log c_J(0, rho) - log c_HF(alpha, rho).
    """
    n = zeros.shape[0]
    Lb = a_base.shape[0]
    a = np.empty(Lb)
    b = np.empty(Lb)
    work = np.empty(Lb)
    nodes = np.empty(M)
    weights = np.empty(M)
    logf = np.empty(M)
    logw = np.empty(M)
    for q in range(xs.shape[0]):
        x = xs[q]
        if x <= 0.0:
            out[q] = 0.0
            continue
        half = 0.5 * x
        lhalf = math.log(half)
        for i in range(Lb):
            a[i] = a_base[i]
            b[i] = b_base[i]
        L = Lb
        logm = math.log(b[0])
        b[0] = 1.0
        for j in range(n):
            u = zeros[j] / half - 1.0
            L = quad_mod_inplace(a, b, L, u, work)
            # p_n^2(t) = gamma_n^2 (x/2)^{2n} prod (u - u_j)^2
            logm += math.log(b[0]) + 2.0 * lhalf + log_gn2 / n
            b[0] = 1.0
        info = gauss_ql(a, b, M, nodes, weights)
        if info != 0:
            return info
        scale = half ** alpha
        for m in range(M):
            logw[m] = math.log(weights[m]) if weights[m] > 0 else -np.inf
            up1 = nodes[m] + 1.0
            if up1 < 0.0:
                up1 = 0.0
            logf[m] = -scale * up1 ** alpha
        logI = _logsumexp_dot(logw, logf, M)
        out[q] = math.exp(logm + logI + (rho + 1.0) * lhalf + log_const)
    return 0


@njit(cache=True)
def halffreud_right(xs, alpha, rho, M, zeros, log_gn2, a_base, b_base, log_const, out):
    """Right-branch complementary induced CDF for half-line Freud measures.

    log_const = log c_HF(alpha, 0) - log c_HF(alpha, rho).
    """
    n = zeros.shape[0]
    Lb = a_base.shape[0]
    a = np.empty(Lb)
    b = np.empty(Lb)
    work = np.empty(Lb)
    nodes = np.empty(M)
    weights = np.empty(M)
    logf = np.empty(M)
    logw = np.empty(M)
    for q in range(xs.shape[0]):
        x = xs[q]
        for i in range(Lb):
            a[i] = a_base[i]
            b[i] = b_base[i]
        L = Lb
        logm = math.log(b[0])
        b[0] = 1.0
        for j in range(n):
            L = quad_mod_inplace(a, b, L, zeros[j] - x, work)
            logm += math.log(b[0]) + log_gn2 / n
            b[0] = 1.0
        info = gauss_ql(a, b, M, nodes, weights)
        if info != 0:
            return info
        xa = x ** alpha
        for m in range(M):
            logw[m] = math.log(weights[m]) if weights[m] > 0 else -np.inf
            u = nodes[m]
            if u < 0.0:
                u = 0.0
            s = u + x
            if alpha == 1.0:
                expo = 0.0
            else:
                expo = u ** alpha + xa - s ** alpha
            if rho == 0.0:
                logf[m] = expo
            elif s > 0.0:
                logf[m] = rho * math.log(s) + expo
            else:
                logf[m] = -np.inf if rho > 0 else np.inf
        logI = _logsumexp_dot(logw, logf, M)
        out[q] = math.exp(logm + logI - xa + log_const)
    return 0


@njit(cache=True)
def repeated_quad(a, b, L, centers, log_step, work):
    """Apply quadratic modifications at each center, renormalizing b_0.

    Returns (new length, accumulated log mass).  After each step
    ``log_step`` is added to the log mass, so passing log(gamma_n^2)/n
    distributes the leading-coefficient scaling over the loop.
    """
    logm = math.log(b[0])
    b[0] = 1.0
    for j in range(centers.shape[0]):
        L = quad_mod_inplace(a, b, L, centers[j], work)
        logm += math.log(b[0]) + log_step
        b[0] = 1.0
    return L, logm
