"""Pure-numpy kernel backend.

Same API as the compiled ``_kernels`` extension; selected at import time by
``_backend`` when the extension is unavailable (or when FANOS_PURE_PYTHON=1).
Functions with a trailing underscore update their array arguments in place.

Each backend is deterministic run-to-run. Across backends, elementwise
operations agree bit-for-bit; reductions (gradient norms, kinetic-energy
sums) may differ in the last ulp because numpy uses pairwise/BLAS summation
while the compiled kernels accumulate in index order.
"""

import numpy as np

from .errors import NonFiniteGradientError

BACKEND = "python"


def grad_norm(g: np.ndarray) -> float:
    """Euclidean norm of a 1-D float64 array."""
    return float(np.sqrt(np.dot(g, g)))


def clip_grad_norm_(g: np.ndarray, c: float) -> float:
    """Scale ``g`` in place by min{1, c / (||g|| + 1e-12)}; returns the pre-clip norm."""
    norm = grad_norm(g)
    scale = c / (norm + 1e-12)
    if scale < 1.0:
        g *= scale
    return norm


def fanos_step_(
    theta: np.ndarray,
    v: np.ndarray,
    s: np.ndarray,
    g: np.ndarray,
    h: float,
    beta: float,
    eps: float,
    t0: float,
    q: float,
    rho_t: float,
    zeta: float,
    t_ema: float,
    zeta_max: float,
    identity_mass: bool,
    explicit_euler: bool,
    thermostat: bool,
) -> tuple[float, float, float]:
    """One friction-adaptive momentum step, updating theta/v/s in place.

    Order: squared-gradient EMA, mass, velocity with friction (1 - h*zeta),
    position (new velocity, or old velocity in explicit-Euler mode), then the
    kinetic-energy proxy from the post-update mass and velocity, its EMA, and
    the integral friction update clipped to [-zeta_max, zeta_max]. With
    ``thermostat`` False the friction value is returned unchanged while the
    temperature EMA keeps tracking.

    Returns (zeta, t_ema, t_inst). Raises NonFiniteGradientError on NaN/inf
    gradient entries before touching any state.
    """
    if not np.isfinite(g).all():
        raise NonFiniteGradientError("gradient contains non-finite entries")
    d = theta.shape[0]
    s *= beta
    s += (1.0 - beta) * g * g
    if identity_mass:
        m = np.ones_like(s)
    else:
        m = np.sqrt(s) + eps
    damp = 1.0 - h * zeta
    if explicit_euler:
        v_old = v.copy()
        v *= damp
        v -= (h * g) / m
        theta += h * v_old
    else:
        v *= damp
        v -= (h * g) / m
        theta += h * v
    t_inst = float(np.dot(m, v * v)) / d
    t_ema = rho_t * t_ema + (1.0 - rho_t) * t_inst
    if thermostat:
        zeta = zeta + (h / q) * (t_ema - t0)
        if zeta > zeta_max:
            zeta = zeta_max
        elif zeta < -zeta_max:
            zeta = -zeta_max
    return zeta, t_ema, t_inst


def sgd_momentum_step_(theta: np.ndarray, b: np.ndarray, g: np.ndarray, lr: float, mu: float) -> None:
    """Momentum buffer b <- mu*b + g; theta <- theta - lr*b (no dampening, no Nesterov)."""
    b *= mu
    b += g
    theta -= lr * b


def rmsprop_step_(
    theta: np.ndarray, sq: np.ndarray, g: np.ndarray, lr: float, alpha: float, eps: float
) -> None:
    """sq <- alpha*sq + (1-alpha)*g^2; theta <- theta - lr*g/(sqrt(sq)+eps)."""
    sq *= alpha
    sq += (1.0 - alpha) * g * g
    theta -= (lr * g) / (np.sqrt(sq) + eps)


def adamw_step_(
    theta: np.ndarray,
    m: np.ndarray,
    v: np.ndarray,
    g: np.ndarray,
    lr: float,
    beta1: float,
    beta2: float,
    eps: float,
    weight_decay: float,
    t: int,
) -> None:
    """Bias-corrected Adam step with decoupled weight decay (t is 1-based).

    Decay is applied multiplicatively before the gradient step, then
    theta <- theta - lr * (m/bc1) / (sqrt(v/bc2) + eps).
    """
    bc1 = 1.0 - beta1**t
    bc2 = 1.0 - beta2**t
    if weight_decay != 0.0:
        theta *= 1.0 - lr * weight_decay
    m *= beta1
    m += (1.0 - beta1) * g
    v *= beta2
    v += (1.0 - beta2) * g * g
    theta -= lr * (m / bc1) / (np.sqrt(v / bc2) + eps)


def rosenbrock_eval(x: np.ndarray, grad_out: np.ndarray) -> float:
    """Rosenbrock value; writes the analytic gradient into ``grad_out``."""
    head = x[:-1]
    t = x[1:] - head * head
    u = 1.0 - head
    f = float(np.sum(100.0 * t * t + u * u))
    grad_out[:] = 0.0
    grad_out[:-1] = -400.0 * head * t - 2.0 * u
    grad_out[1:] += 200.0 * t
    return f
