"""FANoS optimizer core and first-order baselines.

FANoS (friction-adaptive Nose-Hoover symplectic momentum) integrates a
damped second-order system with a semi-implicit (symplectic-Euler) update:
velocity first, then position with the *new* velocity. A scalar friction
coefficient ``zeta`` is adapted online by an integral controller driven by
the gap between a kinetic-energy proxy and a scheduled target, and an
optional diagonal RMS mass (sqrt of a squared-gradient EMA) preconditions
the force term.

All step functions here are pure: they take explicit state, never mutate
their inputs, and return new state. The in-place fast path used by the
benchmark harness lives in ``fanos_step_arrays_`` and calls the same kernel
backend, so the two paths cannot drift apart.

Baseline semantics follow the PyTorch conventions:

* SGD+momentum: ``b <- mu*b + g``, ``theta <- theta - lr*b`` (no dampening,
  no Nesterov).
* RMSProp: ``sq <- alpha*sq + (1-alpha)*g^2``,
  ``theta <- theta - lr*g/(sqrt(sq)+eps)`` (no bias correction, no momentum).
* AdamW: bias-corrected first/second moments with decoupled weight decay
  applied multiplicatively before the gradient step.
"""

import math
from dataclasses import dataclass, field, replace

import numpy as np

from ._backend import kernels
from .errors import NonFiniteGradientError

__all__ = [
    "FanosConfig",
    "FanosState",
    "SgdMomentumState",
    "RmspropState",
    "AdamwState",
    "clip_gradient",
    "target_temperature",
    "fanos_step",
    "fanos_step_arrays_",
    "sgd_momentum_step",
    "rmsprop_step",
    "adamw_step",
    "NonFiniteGradientError",
]

MASS_MODES = ("rms", "identity")
INTEGRATORS = ("semi_implicit", "explicit_euler")
FRICTION_MODES = ("thermostat", "fixed")
SCHEDULE_MODES = ("exponential", "constant")


@dataclass(frozen=True)
class FanosConfig:
    """Hyperparameters of the friction-adaptive thermostat optimizer.

    Defaults are the released values: beta=0.999, eps=1e-8, q=1,
    t_max=1e-3, t_min=0, tau=20000, rho_t=0.9, zeta_max=10, grad_clip=1.

    Variant flags:
      mass_mode      "rms" (diagonal sqrt-EMA mass) or "identity".
      integrator     "semi_implicit" (position uses the new velocity) or
                     "explicit_euler" (position uses the old velocity).
      friction_mode  "thermostat" (integral controller) or "fixed"
                     (friction pinned to ``fixed_zeta`` forever; the
                     temperature EMA is still tracked for diagnostics).
      schedule_mode  "exponential" target decay or "constant" (= t_max).

    Note on stability: the velocity damping factor is (1 - lr*zeta), which
    is not guarded against turning non-positive. With the default
    zeta_max=10 this only reaches 0 at lr=0.1, the largest swept step size;
    behavior at that boundary is left as-is.
    """

    lr: float = 1e-3
    beta: float = 0.999
    eps: float = 1e-8
    q: float = 1.0
    t_max: float = 1e-3
    t_min: float = 0.0
    tau: float = 20000.0
    rho_t: float = 0.9
    zeta_max: float = 10.0
    grad_clip: float | None = 1.0
    mass_mode: str = "rms"
    integrator: str = "semi_implicit"
    friction_mode: str = "thermostat"
    fixed_zeta: float = 0.0
    schedule_mode: str = "exponential"

    def __post_init__(self):
        if not self.lr > 0:
            raise ValueError(f"lr must be positive, got {self.lr}")
        if not 0.0 <= self.beta < 1.0:
            raise ValueError(f"beta must be in [0, 1), got {self.beta}")
        if not self.eps > 0:
            raise ValueError(f"eps must be positive, got {self.eps}")
        if not self.q > 0:
            raise ValueError(f"q must be positive, got {self.q}")
        if self.t_min < 0 or self.t_max < 0 or self.t_min > self.t_max:
            raise ValueError(f"need 0 <= t_min <= t_max, got t_min={self.t_min} t_max={self.t_max}")
        if not self.tau > 0:
            raise ValueError(f"tau must be positive, got {self.tau}")
        if not 0.0 <= self.rho_t < 1.0:
            raise ValueError(f"rho_t must be in [0, 1), got {self.rho_t}")
        if not self.zeta_max > 0:
            raise ValueError(f"zeta_max must be positive, got {self.zeta_max}")
        if self.grad_clip is not None and not self.grad_clip > 0:
            raise ValueError(f"grad_clip must be positive or None, got {self.grad_clip}")
        if self.mass_mode not in MASS_MODES:
            raise ValueError(f"mass_mode must be one of {MASS_MODES}, got {self.mass_mode!r}")
        if self.integrator not in INTEGRATORS:
            raise ValueError(f"integrator must be one of {INTEGRATORS}, got {self.integrator!r}")
        if self.friction_mode not in FRICTION_MODES:
            raise ValueError(f"friction_mode must be one of {FRICTION_MODES}, got {self.friction_mode!r}")
        if self.schedule_mode not in SCHEDULE_MODES:
            raise ValueError(f"schedule_mode must be one of {SCHEDULE_MODES}, got {self.schedule_mode!r}")


@dataclass
class FanosState:
    """Per-run optimizer state: parameters, velocity, squared-gradient EMA,
    friction, temperature EMA, and the step counter."""

    theta: np.ndarray
    v: np.ndarray
    s: np.ndarray
    zeta: float
    t_ema: float
    k: int = 0

    @classmethod
    def fresh(cls, theta: np.ndarray, cfg: FanosConfig) -> "FanosState":
        """Initial state: v=0, s=0, t_ema=t_max; zeta=0, except in fixed
        friction mode where zeta is pinned to fixed_zeta from the start."""
        theta = np.ascontiguousarray(theta, dtype=np.float64)
        zeta = cfg.fixed_zeta if cfg.friction_mode == "fixed" else 0.0
        return cls(
            theta=theta.copy(),
            v=np.zeros_like(theta),
            s=np.zeros_like(theta),
            zeta=zeta,
            t_ema=cfg.t_max,
            k=0,
        )


def clip_gradient(g: np.ndarray, c: float) -> np.ndarray:
    """Global-norm gradient clip: g * min{1, c / (||g|| + 1e-12)}.

    Direction-preserving; the zero vector passes through unchanged.
    """
    if not c > 0:
        raise ValueError(f"clip threshold must be positive, got {c}")
    out = np.ascontiguousarray(g, dtype=np.float64).copy()
    kernels.clip_grad_norm_(out, c)
    return out


def target_temperature(k: int, cfg: FanosConfig) -> float:
    """Scheduled kinetic-energy target at step k.

    Exponential mode decays t_max -> t_min with time constant tau;
    constant mode returns t_max for every k.
    """
    if k < 0:
        raise ValueError(f"step index must be non-negative, got {k}")
    if cfg.schedule_mode == "constant":
        return cfg.t_max
    return cfg.t_min + (cfg.t_max - cfg.t_min) * math.exp(-k / cfg.tau)


def fanos_step_arrays_(
    theta: np.ndarray,
    v: np.ndarray,
    s: np.ndarray,
    g: np.ndarray,
    k: int,
    zeta: float,
    t_ema: float,
    cfg: FanosConfig,
) -> tuple[float, float, float, float]:
    """In-place FANoS step over raw arrays (harness fast path).

    Mutates theta/v/s, and g when gradient clipping is enabled. Returns
    (zeta, t_ema, t_inst, t_target) for step index k.
    """
    if cfg.grad_clip is not None:
        kernels.clip_grad_norm_(g, cfg.grad_clip)
    t0 = target_temperature(k, cfg)
    zeta, t_ema, t_inst = kernels.fanos_step_(
        theta,
        v,
        s,
        g,
        cfg.lr,
        cfg.beta,
        cfg.eps,
        t0,
        cfg.q,
        cfg.rho_t,
        zeta,
        t_ema,
        cfg.zeta_max,
        cfg.mass_mode == "identity",
        cfg.integrator == "explicit_euler",
        cfg.friction_mode == "thermostat",
    )
    return zeta, t_ema, t_inst, t0


def fanos_step(state: FanosState, g: np.ndarray, cfg: FanosConfig) -> FanosState:
    """One FANoS update; pure (returns a new state).

    Raises ValueError on dimension mismatch and NonFiniteGradientError on
    NaN/inf gradient entries.
    """
    g = np.ascontiguousarray(g, dtype=np.float64)
    if g.shape != state.theta.shape:
        raise ValueError(f"gradient shape {g.shape} != parameter shape {state.theta.shape}")
    theta = state.theta.copy()
    v = state.v.copy()
    s = state.s.copy()
    g = g.copy()
    zeta, t_ema, _, _ = fanos_step_arrays_(theta, v, s, g, state.k, state.zeta, state.t_ema, cfg)
    return FanosState(theta=theta, v=v, s=s, zeta=zeta, t_ema=t_ema, k=state.k + 1)


@dataclass
class SgdMomentumState:
    theta: np.ndarray
    b: np.ndarray

    @classmethod
    def fresh(cls, theta: np.ndarray) -> "SgdMomentumState":
        theta = np.ascontiguousarray(theta, dtype=np.float64)
        return cls(theta=theta.copy(), b=np.zeros_like(theta))


def sgd_momentum_step(state: SgdMomentumState, g: np.ndarray, lr: float, mu: float = 0.9) -> SgdMomentumState:
    """b <- mu*b + g; theta <- theta - lr*b. First step from b=0 is plain GD."""
    g = _check_dims(g, state.theta)
    theta = state.theta.copy()
    b = state.b.copy()
    kernels.sgd_momentum_step_(theta, b, g, lr, mu)
    return SgdMomentumState(theta=theta, b=b)


@dataclass
class RmspropState:
    theta: np.ndarray
    sq: np.ndarray

    @classmethod
    def fresh(cls, theta: np.ndarray) -> "RmspropState":
        theta = np.ascontiguousarray(theta, dtype=np.float64)
        return cls(theta=theta.copy(), sq=np.zeros_like(theta))


def rmsprop_step(
    state: RmspropState, g: np.ndarray, lr: float, alpha: float = 0.99, eps: float = 1e-8
) -> RmspropState:
    """Square-average EMA step with zero momentum and no bias correction."""
    g = _check_dims(g, state.theta)
    theta = state.theta.copy()
    sq = state.sq.copy()
    kernels.rmsprop_step_(theta, sq, g, lr, alpha, eps)
    return RmspropState(theta=theta, sq=sq)


@dataclass
class AdamwState:
    theta: np.ndarray
    m: np.ndarray
    v: np.ndarray
    t: int = 0

    @classmethod
    def fresh(cls, theta: np.ndarray) -> "AdamwState":
        theta = np.ascontiguousarray(theta, dtype=np.float64)
        return cls(theta=theta.copy(), m=np.zeros_like(theta), v=np.zeros_like(theta), t=0)


def adamw_step(
    state: AdamwState,
    g: np.ndarray,
    lr: float,
    beta1: float = 0.9,
    beta2: float = 0.999,
    eps: float = 1e-8,
    weight_decay: float = 0.01,
) -> AdamwState:
    """Bias-corrected Adam step with decoupled weight decay."""
    g = _check_dims(g, state.theta)
    theta = state.theta.copy()
    m = state.m.copy()
    v = state.v.copy()
    t = state.t + 1
    kernels.adamw_step_(theta, m, v, g, lr, beta1, beta2, eps, weight_decay, t)
    return AdamwState(theta=theta, m=m, v=v, t=t)


def _check_dims(g: np.ndarray, theta: np.ndarray) -> np.ndarray:
    g = np.ascontiguousarray(g, dtype=np.float64)
    if g.shape != theta.shape:
        raise ValueError(f"gradient shape {g.shape} != parameter shape {theta.shape}")
    return g
