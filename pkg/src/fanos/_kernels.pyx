# cython: boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled kernel backend.

Mirrors the API of ``_kernels_py`` (see its docstring for the contract).
Reductions accumulate in index order, so results are reproducible across
runs on the same build regardless of vectorization flags.
"""

from libc.math cimport isfinite, sqrt

from .errors import NonFiniteGradientError

BACKEND = "compiled"


def grad_norm(double[::1] g):
    cdef Py_ssize_t i, d = g.shape[0]
    cdef double acc = 0.0
    for i in range(d):
        acc += g[i] * g[i]
    return sqrt(acc)


def clip_grad_norm_(double[::1] g, double c):
    cdef Py_ssize_t i, d = g.shape[0]
    cdef double acc = 0.0
    for i in range(d):
        acc += g[i] * g[i]
    cdef double norm = sqrt(acc)
    cdef double scale = c / (norm + 1e-12)
    if scale < 1.0:
        for i in range(d):
            g[i] *= scale
    return norm


def fanos_step_(
    double[::1] theta,
    double[::1] v,
    double[::1] s,
    double[::1] g,
    double h,
    double beta,
    double eps,
    double t0,
    double q,
    double rho_t,
    double zeta,
    double t_ema,
    double zeta_max,
    bint identity_mass,
    bint explicit_euler,
    bint thermostat,
):
    cdef Py_ssize_t i, d = theta.shape[0]
    for i in range(d):
        if not isfinite(g[i]):
            raise NonFiniteGradientError("gradient contains non-finite entries")
    cdef double damp = 1.0 - h * zeta
    cdef double acc = 0.0
    cdef double m, vi, v_old, t_inst
    for i in range(d):
        s[i] = beta * s[i] + (1.0 - beta) * g[i] * g[i]
        if identity_mass:
            m = 1.0
        else:
            m = sqrt(s[i]) + eps
        v_old = v[i]
        vi = damp * v_old - (h * g[i]) / m
        v[i] = vi
        if explicit_euler:
            theta[i] += h * v_old
        else:
            theta[i] += h * vi
        acc += m * (vi * vi)
    t_inst = acc / d
    t_ema = rho_t * t_ema + (1.0 - rho_t) * t_inst
    if thermostat:
        zeta = zeta + (h / q) * (t_ema - t0)
        if zeta > zeta_max:
            zeta = zeta_max
        elif zeta < -zeta_max:
            zeta = -zeta_max
    return zeta, t_ema, t_inst


def sgd_momentum_step_(double[::1] theta, double[::1] b, double[::1] g, double lr, double mu):
    cdef Py_ssize_t i, d = theta.shape[0]
    for i in range(d):
        b[i] = mu * b[i] + g[i]
        theta[i] -= lr * b[i]


def rmsprop_step_(double[::1] theta, double[::1] sq, double[::1] g, double lr, double alpha, double eps):
    cdef Py_ssize_t i, d = theta.shape[0]
    for i in range(d):
        sq[i] = alpha * sq[i] + (1.0 - alpha) * g[i] * g[i]
        theta[i] -= (lr * g[i]) / (sqrt(sq[i]) + eps)


def adamw_step_(
    double[::1] theta,
    double[::1] m,
    double[::1] v,
    double[::1] g,
    double lr,
    double beta1,
    double beta2,
    double eps,
    double weight_decay,
    long t,
):
    cdef Py_ssize_t i, d = theta.shape[0]
    cdef double bc1 = 1.0 - beta1 ** t
    cdef double bc2 = 1.0 - beta2 ** t
    cdef double decay = 1.0 - lr * weight_decay
    for i in range(d):
        if weight_decay != 0.0:
            theta[i] *= decay
        m[i] = beta1 * m[i] + (1.0 - beta1) * g[i]
        v[i] = beta2 * v[i] + (1.0 - beta2) * g[i] * g[i]
        theta[i] -= lr * (m[i] / bc1) / (sqrt(v[i] / bc2) + eps)


def rosenbrock_eval(double[::1] x, double[::1] grad_out):
    cdef Py_ssize_t i, d = x.shape[0]
    cdef double f = 0.0
    cdef double t, u
    for i in range(d):
        grad_out[i] = 0.0
    for i in range(d - 1):
        t = x[i + 1] - x[i] * x[i]
        u = 1.0 - x[i]
        f += 100.0 * t * t + u * u
        grad_out[i] += -400.0 * x[i] * t - 2.0 * u
        grad_out[i + 1] += 200.0 * t
    return f
