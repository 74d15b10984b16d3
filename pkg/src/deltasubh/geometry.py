"""Dimension-dependent constants, the radial kernel, and extended-real arithmetic.

Everything downstream (potentials, counting functions, the main inequality)
shares the same geometric data: the dimension d >= 2, the reduced dimension
d_hat = max(1, d-2), the unit-sphere area s_{d-1} = 2 pi^{d/2} / Gamma(d/2),
and the strictly increasing kernel

    k(t) = ln t        (d = 2)
    k(t) = -t^{2-d}    (d > 2),      k(0) = -inf.

Extended reals are plain IEEE floats with +-inf.  The helpers ext_add /
ext_sub / ext_mul / ext_div implement the usual conventions, with 0 * inf = 0
by default, and raise UndefinedOperationError for the genuinely undefined
combinations (inf - inf, 0/0, inf/inf) instead of producing NaN, so a NaN can
never silently fake a passing inequality.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

__all__ = [
    "Ball",
    "DimensionContext",
    "ExtendedReal",
    "UndefinedOperationError",
    "ext_add",
    "ext_div",
    "ext_mul",
    "ext_sub",
    "kernel",
    "kernel_inverse",
]

# Extended reals are ordinary floats; math.inf / -math.inf are first-class values.
ExtendedReal = float


class UndefinedOperationError(ArithmeticError):
    """An extended-real operation with no defined value was attempted."""


def ext_add(x: float, y: float) -> float:
    """x + y on the extended reals; raises on (+inf) + (-inf)."""
    if math.isinf(x) and math.isinf(y) and (x > 0) != (y > 0):
        raise UndefinedOperationError("inf + (-inf) is undefined")
    return x + y


def ext_sub(x: float, y: float) -> float:
    """x - y on the extended reals; raises on (+-inf) - (+-inf) with equal signs."""
    if math.isinf(x) and math.isinf(y) and (x > 0) == (y > 0):
        raise UndefinedOperationError("inf - inf is undefined")
    return x - y


def ext_mul(x: float, y: float, zero_times_inf: float = 0.0) -> float:
    """x * y on the extended reals.

    0 * (+-inf) evaluates to ``zero_times_inf`` (default 0.0); pass a different
    value, e.g. math.nan or math.inf, where a call site needs to override the
    convention.
    """
    if (x == 0.0 and math.isinf(y)) or (y == 0.0 and math.isinf(x)):
        return zero_times_inf
    return x * y


def ext_div(x: float, y: float) -> float:
    """x / y on the extended reals; raises on 0/0 and inf/inf."""
    if y == 0.0:
        if x == 0.0:
            raise UndefinedOperationError("0 / 0 is undefined")
        return math.copysign(math.inf, x)
    if math.isinf(y):
        if math.isinf(x):
            raise UndefinedOperationError("inf / inf is undefined")
        return 0.0
    return x / y


@dataclass(frozen=True)
class DimensionContext:
    """Euclidean dimension d >= 2 plus the derived constants used everywhere.

    d in {2, 3} is the fully supported (tested) range; larger d is accepted at
    the formula level but sphere quadrature refuses it.
    """

    d: int

    def __post_init__(self):
        if not isinstance(self.d, int) or self.d < 2:
            raise ValueError(f"dimension must be an integer >= 2, got {self.d!r}")

    @property
    def d_hat(self) -> int:
        """max(1, d-2) = 1 + (d-3)^+."""
        return max(1, self.d - 2)

    @property
    def sphere_area(self) -> float:
        """Surface area of the unit sphere in R^d: 2 pi^{d/2} / Gamma(d/2)."""
        return 2.0 * math.pi ** (self.d / 2.0) / math.gamma(self.d / 2.0)


@dataclass(frozen=True)
class Ball:
    """A ball in R^d. With the open convention, radius 0 means the empty set."""

    center: tuple
    radius: float

    def __post_init__(self):
        if self.radius < 0:
            raise ValueError("ball radius must be >= 0")

    def contains(self, point: Sequence[float], closed: bool = True) -> bool:
        dist = math.dist(self.center, tuple(point))
        if closed:
            return dist <= self.radius
        return self.radius > 0 and dist < self.radius


ArrayLike = Union[float, np.ndarray]


def kernel(ctx: DimensionContext, t: ArrayLike) -> ArrayLike:
    """The radial kernel k_{d-2}: ln t for d=2, -t^{2-d} for d>2, k(0) = -inf.

    Accepts a scalar or an ndarray of radii t >= 0; negative t is a domain
    error.  Strictly increasing on [0, inf).
    """
    arr = np.asarray(t, dtype=float)
    if np.any(arr < 0):
        raise ValueError("kernel argument must be >= 0")
    with np.errstate(divide="ignore"):
        if ctx.d == 2:
            out = np.log(arr)
        else:
            out = -arr ** float(2 - ctx.d)
    if np.isscalar(t) or arr.ndim == 0:
        return float(out)
    return out


def kernel_inverse(ctx: DimensionContext, v: float) -> float:
    """Inverse of the kernel: t with kernel(ctx, t) = v.

    For d > 2 the kernel's supremum is 0 (as t -> inf), so v >= 0 is a domain
    error there; v = -inf maps to 0 in every dimension.
    """
    if ctx.d == 2:
        return math.exp(v) if v != math.inf else math.inf
    if v >= 0:
        raise ValueError(f"kernel range for d={ctx.d} is [-inf, 0); got {v}")
    if v == -math.inf:
        return 0.0
    return (-1.0 / v) ** (1.0 / (ctx.d - 2))
