"""Exception types shared by both kernel backends."""


class NonFiniteGradientError(FloatingPointError):
    """Raised when a step function receives a gradient with NaN/inf entries.

    The benchmark harness catches this and records the trial as divergent.
    """
