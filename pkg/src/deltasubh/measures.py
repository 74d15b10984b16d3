"""Finitely-described positive Borel measures on a closed ball.

A measure is a finite sum of primitive components -- atoms, uniform segments,
uniform circular arcs (d=2), uniform solid balls -- chosen so that every
ball-mass query mu(closed ball B_y(t)) has a closed form.  That exactness is
what makes the radial counting function, the integrated counting function
N_mu(r, R) and the modulus of continuity h_mu certifiable:

    h_mu(t) = sup over centers y of mu(B_y(t)).

h_mu is exact for purely atomic measures in d=2 (the optimum is attained at
an atom or at a center equidistant from two atoms, so O(n^2) candidates
suffice) and for any single symmetric primitive; otherwise a multi-start
local search returns a flagged lower bound, and subadditivity gives a flagged
upper bound (h_{mu1+mu2} <= h_mu1 + h_mu2) which is what inequality
verification feeds into a right-hand side.

Closed balls throughout: mass sitting at distance exactly t from y counts.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Iterable, Sequence, Union

import numpy as np
from scipy.optimize import minimize

from .geometry import DimensionContext, ext_mul, kernel
from .quadrature import QuadratureBudgetError, QuadratureResult, integrate_interval

__all__ = [
    "Atom",
    "BorelMeasure",
    "DiniLimitsReport",
    "ModulusProfile",
    "UniformArc",
    "UniformBall",
    "UniformSegment",
    "dini_integral",
    "dini_integral_result",
    "dini_limits_check",
    "integrated_counting",
    "integrated_counting_result",
    "modulus_lower_bound",
    "modulus_of_continuity",
    "modulus_of_continuity_exact",
    "modulus_profile",
    "modulus_upper_bound",
    "radial_counting",
]

TWO_PI = 2.0 * math.pi

Point = tuple  # tuple of d floats


def _as_point(p) -> Point:
    return tuple(float(c) for c in p)


def _dist(p: Point, q: Point) -> float:
    return math.dist(p, q)


@dataclass(frozen=True)
class Atom:
    point: Point
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "point", _as_point(self.point))
        if not self.weight > 0:
            raise ValueError("atom weight must be > 0")

    @property
    def dim(self) -> int:
        return len(self.point)

    @property
    def mass(self) -> float:
        return self.weight

    def ball_mass(self, y: Point, t):
        d = _dist(self.point, y)
        t_arr = np.asarray(t, dtype=float)
        out = np.where(d <= t_arr, self.weight, 0.0)
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def breakpoint_radii(self, y: Point) -> list:
        return [_dist(self.point, y)]

    def outer_radius(self) -> float:
        return math.hypot(*self.point)

    def h_single(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = np.full_like(t_arr, self.weight)
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def translate(self, v) -> "Atom":
        return Atom(tuple(p + dv for p, dv in zip(self.point, v)), self.weight)


@dataclass(frozen=True)
class UniformSegment:
    start: Point
    end: Point
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "start", _as_point(self.start))
        object.__setattr__(self, "end", _as_point(self.end))
        if not self.weight > 0:
            raise ValueError("segment weight must be > 0")
        if _dist(self.start, self.end) == 0.0:
            raise ValueError("segment must have positive length")

    @property
    def dim(self) -> int:
        return len(self.start)

    @property
    def mass(self) -> float:
        return self.weight

    @property
    def length(self) -> float:
        return _dist(self.start, self.end)

    def ball_mass(self, y: Point, t):
        # parameter fraction of {s in [0,1] : |start + s (end-start) - y| <= t}
        a = np.asarray(self.start)
        e = np.asarray(self.end) - a
        w = np.asarray(y, dtype=float) - a
        ee = float(np.dot(e, e))
        dot = float(np.dot(e, w))
        dd = float(np.dot(w, w))
        t_arr = np.asarray(t, dtype=float)
        disc = dot * dot - ee * (dd - t_arr * t_arr)
        safe = np.sqrt(np.maximum(disc, 0.0))
        s_lo = (dot - safe) / ee
        s_hi = (dot + safe) / ee
        frac = np.maximum(0.0, np.minimum(s_hi, 1.0) - np.maximum(s_lo, 0.0))
        out = np.where(disc >= 0.0, self.weight * frac, 0.0)
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def breakpoint_radii(self, y: Point) -> list:
        a = np.asarray(self.start)
        e = np.asarray(self.end) - a
        w = np.asarray(y, dtype=float) - a
        s_star = min(1.0, max(0.0, float(np.dot(e, w) / np.dot(e, e))))
        closest = a + s_star * e
        return [
            float(np.linalg.norm(np.asarray(y, dtype=float) - closest)),
            _dist(self.start, y),
            _dist(self.end, y),
        ]

    def outer_radius(self) -> float:
        return max(math.hypot(*self.start), math.hypot(*self.end))

    def h_single(self, t):
        t_arr = np.asarray(t, dtype=float)
        out = self.weight * np.minimum(2.0 * t_arr, self.length) / self.length
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def translate(self, v) -> "UniformSegment":
        return UniformSegment(
            tuple(p + dv for p, dv in zip(self.start, v)),
            tuple(p + dv for p, dv in zip(self.end, v)),
            self.weight,
        )


@dataclass(frozen=True)
class UniformArc:
    """Uniform measure on a circular arc (d=2 only), parameterized by angle.

    angle_start < angle_end, width = angle_end - angle_start <= 2 pi; the full
    circle is width exactly 2 pi.
    """

    center: Point
    radius: float
    angle_start: float
    angle_end: float
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        if len(self.center) != 2:
            raise ValueError("arc components are supported in dimension 2 only")
        if not self.radius > 0:
            raise ValueError("arc radius must be > 0")
        if not self.weight > 0:
            raise ValueError("arc weight must be > 0")
        if not 0.0 < self.width <= TWO_PI + 1e-12:
            raise ValueError("arc angular width must lie in (0, 2 pi]")

    @property
    def dim(self) -> int:
        return 2

    @property
    def mass(self) -> float:
        return self.weight

    @property
    def width(self) -> float:
        return self.angle_end - self.angle_start

    def point_at(self, theta):
        cx, cy = self.center
        return cx + self.radius * np.cos(theta), cy + self.radius * np.sin(theta)

    def ball_mass(self, y: Point, t):
        q = _dist(self.center, y)
        t_arr = np.asarray(t, dtype=float)
        w = self.width
        if q < 1e-15 * max(1.0, self.radius):
            out = np.where(t_arr >= self.radius, self.weight, 0.0)
            return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out
        cosv = (self.radius ** 2 + q * q - t_arr * t_arr) / (2.0 * self.radius * q)
        half = np.arccos(np.clip(cosv, -1.0, 1.0))
        phi = math.atan2(y[1] - self.center[1], y[0] - self.center[0])
        # covered angular interval [phi-half, phi+half] intersected with the
        # support interval, both on the circle
        s0 = np.mod(phi - half - self.angle_start, TWO_PI)
        lam = 2.0 * half
        direct = np.maximum(0.0, np.minimum(s0 + lam, w) - s0)
        wrapped = np.maximum(0.0, np.minimum(s0 + lam - TWO_PI, w))
        inter = np.where(s0 + lam <= TWO_PI, direct, np.maximum(0.0, w - s0) + wrapped)
        inter = np.where(cosv <= -1.0, w, np.where(cosv >= 1.0, 0.0, inter))
        out = self.weight * inter / w
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def breakpoint_radii(self, y: Point) -> list:
        q = _dist(self.center, y)
        radii = [abs(q - self.radius), q + self.radius]
        for ang in (self.angle_start, self.angle_end):
            px, py = self.point_at(ang)
            radii.append(math.hypot(px - y[0], py - y[1]))
        return radii

    def outer_radius(self) -> float:
        q = math.hypot(*self.center)
        candidates = []
        if q < 1e-15:
            return self.radius
        far = math.atan2(self.center[1], self.center[0])  # direction away from 0
        if self._angle_in_support(far):
            candidates.append(q + self.radius)
        for ang in (self.angle_start, self.angle_end):
            px, py = self.point_at(ang)
            candidates.append(math.hypot(px, py))
        return max(candidates)

    def _angle_in_support(self, ang: float) -> bool:
        return (ang - self.angle_start) % TWO_PI <= self.width + 1e-12

    def h_single(self, t):
        t_arr = np.asarray(t, dtype=float)
        ratio = np.clip(t_arr / self.radius, 0.0, 1.0)
        ang = 2.0 * np.arcsin(ratio)
        out = np.where(
            t_arr >= self.radius,
            self.weight,
            self.weight * np.minimum(ang, self.width) / self.width,
        )
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def translate(self, v) -> "UniformArc":
        return UniformArc(
            tuple(p + dv for p, dv in zip(self.center, v)),
            self.radius, self.angle_start, self.angle_end, self.weight,
        )


@dataclass(frozen=True)
class UniformBall:
    """Uniform measure on a solid ball (area for d=2, volume for d=3)."""

    center: Point
    radius: float
    weight: float

    def __post_init__(self):
        object.__setattr__(self, "center", _as_point(self.center))
        if len(self.center) not in (2, 3):
            raise ValueError("ball components are supported in dimensions 2 and 3")
        if not self.radius > 0:
            raise ValueError("ball radius must be > 0")
        if not self.weight > 0:
            raise ValueError("ball weight must be > 0")

    @property
    def dim(self) -> int:
        return len(self.center)

    @property
    def mass(self) -> float:
        return self.weight

    def ball_mass(self, y: Point, t):
        q = _dist(self.center, y)
        rho = self.radius
        t_arr = np.asarray(t, dtype=float)
        if self.dim == 2:
            inter = _lens_area_2d(t_arr, rho, q)
            frac = inter / (math.pi * rho * rho)
        else:
            inter = _lens_volume_3d(t_arr, rho, q)
            frac = inter / (4.0 / 3.0 * math.pi * rho ** 3)
        out = self.weight * frac
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def breakpoint_radii(self, y: Point) -> list:
        q = _dist(self.center, y)
        return [max(0.0, q - self.radius), q, q + self.radius]

    def outer_radius(self) -> float:
        return math.hypot(*self.center) + self.radius

    def h_single(self, t):
        t_arr = np.asarray(t, dtype=float)
        ratio = np.clip(t_arr / self.radius, 0.0, 1.0)
        out = self.weight * ratio ** self.dim
        return float(out) if np.isscalar(t) or t_arr.ndim == 0 else out

    def translate(self, v) -> "UniformBall":
        return UniformBall(
            tuple(p + dv for p, dv in zip(self.center, v)),
            self.radius, self.weight,
        )


def _lens_area_2d(t, rho, q):
    """Area of intersection of disks of radii t (center distance q) and rho."""
    t = np.asarray(t, dtype=float)
    full_small = math.pi * t * t
    full_rho = math.pi * rho * rho
    with np.errstate(invalid="ignore", divide="ignore"):
        a1 = np.arccos(np.clip((q * q + t * t - rho * rho) / (2.0 * q * t), -1.0, 1.0))
        a2 = np.arccos(np.clip((q * q + rho * rho - t * t) / (2.0 * q * rho), -1.0, 1.0))
        s = (-q + t + rho) * (q + t - rho) * (q - t + rho) * (q + t + rho)
        lens = t * t * a1 + rho * rho * a2 - 0.5 * np.sqrt(np.maximum(s, 0.0))
    out = np.where(t + rho <= q, 0.0,
                   np.where(q + rho <= t, full_rho,
                            np.where(q + t <= rho, full_small, lens)))
    return out


def _lens_volume_3d(t, rho, q):
    """Volume of intersection of balls of radii t (center distance q) and rho."""
    t = np.asarray(t, dtype=float)
    full_small = 4.0 / 3.0 * math.pi * t ** 3
    full_rho = 4.0 / 3.0 * math.pi * rho ** 3
    with np.errstate(invalid="ignore", divide="ignore"):
        lens = (math.pi * (t + rho - q) ** 2
                * (q * q + 2.0 * q * t - 3.0 * t * t + 2.0 * q * rho
                   + 6.0 * rho * t - 3.0 * rho * rho) / (12.0 * q))
    out = np.where(t + rho <= q, 0.0,
                   np.where(q + rho <= t, full_rho,
                            np.where(q + t <= rho, full_small, lens)))
    return out


Component = Union[Atom, UniformSegment, UniformArc, UniformBall]


@dataclass(frozen=True)
class BorelMeasure:
    """A finite positive Borel measure given as a tuple of primitive components.

    support_radius is an r with support contained in the closed ball B(0, r);
    by default the smallest such r computed from the components.
    """

    components: tuple
    dim: int = 0
    support_radius: float = field(default=-1.0)

    def __post_init__(self):
        comps = tuple(self.components)
        object.__setattr__(self, "components", comps)
        if comps:
            dims = {c.dim for c in comps}
            if len(dims) > 1:
                raise ValueError(f"mixed component dimensions: {sorted(dims)}")
            inferred = dims.pop()
            if self.dim == 0:
                object.__setattr__(self, "dim", inferred)
            elif self.dim != inferred:
                raise ValueError("declared dim does not match components")
        elif self.dim == 0:
            object.__setattr__(self, "dim", 2)
        natural = max((c.outer_radius() for c in comps), default=0.0)
        if self.support_radius < 0:
            object.__setattr__(self, "support_radius", natural)
        elif self.support_radius + 1e-12 * max(1.0, natural) < natural:
            raise ValueError("declared support_radius does not contain the support")

    @property
    def mass(self) -> float:
        return sum(c.mass for c in self.components)

    @property
    def is_atomic(self) -> bool:
        return all(isinstance(c, Atom) for c in self.components)

    @property
    def atoms(self) -> list:
        return [c for c in self.components if isinstance(c, Atom)]

    def radial_counting(self, y, t):
        y = _as_point(y)
        if not self.components:
            return 0.0 if np.isscalar(t) else np.zeros_like(np.asarray(t, dtype=float))
        total = self.components[0].ball_mass(y, t)
        for c in self.components[1:]:
            total = total + c.ball_mass(y, t)
        return total

    def translate(self, v) -> "BorelMeasure":
        return BorelMeasure(tuple(c.translate(v) for c in self.components), self.dim)

    def __add__(self, other: "BorelMeasure") -> "BorelMeasure":
        if self.components and other.components and self.dim != other.dim:
            raise ValueError("cannot add measures of different dimensions")
        return BorelMeasure(self.components + other.components,
                            max(self.dim, other.dim))


def radial_counting(mu: BorelMeasure, y, t):
    """mu(closed ball of radius t centered at y); exact per component."""
    if np.isscalar(t) and t < 0:
        raise ValueError("radius t must be >= 0")
    return mu.radial_counting(y, t)


# ---------------------------------------------------------------------------
# modulus of continuity


def _grouped_atoms(mu: BorelMeasure):
    merged: dict = {}
    for a in mu.atoms:
        merged[a.point] = merged.get(a.point, 0.0) + a.weight
    keys = sorted(merged)
    pts = np.array(keys, dtype=float).reshape(len(keys), -1)
    wts = np.array([merged[k] for k in keys], dtype=float)
    return pts, wts


def _atomic_h_exact_2d(mu: BorelMeasure, t: float) -> float:
    """Exact h for purely atomic mu in d=2 via two-atom candidate centers."""
    pts, wts = _grouped_atoms(mu)
    n = len(pts)
    if n == 0:
        return 0.0
    scale = max(1.0, float(np.max(np.abs(pts))), t)
    tol = 1e-12 * scale
    cands = [pts]
    if t > 0:
        extra = []
        for i in range(n):
            for j in range(i + 1, n):
                delta = pts[j] - pts[i]
                q = float(np.hypot(*delta))
                if q > 2.0 * t + tol or q == 0.0:
                    continue
                mid = 0.5 * (pts[i] + pts[j])
                off2 = t * t - 0.25 * q * q
                if off2 <= 0.0:
                    extra.append(mid)
                    continue
                perp = np.array([-delta[1], delta[0]]) / q
                h = math.sqrt(off2)
                extra.append(mid + h * perp)
                extra.append(mid - h * perp)
        if extra:
            cands.append(np.array(extra))
    centers = np.vstack(cands)
    d2 = ((centers[:, None, :] - pts[None, :, :]) ** 2).sum(axis=2)
    covered = d2 <= (t + tol) ** 2
    return float((covered * wts[None, :]).sum(axis=1).max())


def modulus_of_continuity_exact(mu: BorelMeasure, t: float):
    """Exact h_mu(t) when certifiable, else None.

    Certifiable cases: the zero measure; a single primitive component (the
    sup is attained at the symmetric optimum); purely atomic measures in d=2.
    """
    if t < 0:
        raise ValueError("t must be >= 0")
    if not mu.components:
        return 0.0
    if len(mu.components) == 1:
        return float(mu.components[0].h_single(t))
    if mu.is_atomic and mu.dim == 2:
        return _atomic_h_exact_2d(mu, t)
    return None


def modulus_upper_bound(mu: BorelMeasure, t: float) -> float:
    """Subadditive upper bound: sum of the exact single-component moduli."""
    exact = modulus_of_continuity_exact(mu, t)
    if exact is not None:
        return exact
    return float(sum(c.h_single(t) for c in mu.components))


def _search_starts(mu: BorelMeasure, t: float) -> list:
    starts = [np.zeros(mu.dim)]  # support lies in a ball around the origin
    for c in mu.components:
        if isinstance(c, Atom):
            starts.append(np.asarray(c.point, dtype=float))
        elif isinstance(c, UniformSegment):
            a, b = np.asarray(c.start), np.asarray(c.end)
            starts += [0.5 * (a + b), a, b, 0.25 * a + 0.75 * b, 0.75 * a + 0.25 * b]
        elif isinstance(c, UniformArc):
            mid = 0.5 * (c.angle_start + c.angle_end)
            on = np.asarray(c.point_at(mid), dtype=float)
            ctr = np.asarray(c.center, dtype=float)
            starts += [on, ctr]
            if t < c.radius:
                # analytic optimum for a lone arc: center at distance
                # sqrt(rho^2 - t^2) toward the covered mid-angle
                q = math.sqrt(c.radius ** 2 - t * t)
                direction = (on - ctr) / c.radius
                starts.append(ctr + q * direction)
        elif isinstance(c, UniformBall):
            starts.append(np.asarray(c.center, dtype=float))
    if mu.dim == 2 and len(mu.atoms) >= 2 and t > 0:
        pts, _ = _grouped_atoms(mu)
        for i in range(len(pts)):
            for j in range(i + 1, len(pts)):
                if np.hypot(*(pts[j] - pts[i])) <= 2.0 * t:
                    starts.append(0.5 * (pts[i] + pts[j]))
    return starts[:64]


def modulus_lower_bound(mu: BorelMeasure, t: float) -> float:
    """Certified lower bound of h_mu(t) from multi-start local search."""
    if not mu.components:
        return 0.0
    best = 0.0
    scale = max(1.0, mu.support_radius, t)
    for y0 in _search_starts(mu, t):
        best = max(best, float(mu.radial_counting(tuple(y0), t)))
        res = minimize(
            lambda y: -float(mu.radial_counting(tuple(y), t)),
            y0, method="Nelder-Mead",
            options={"xatol": 1e-10 * scale, "fatol": 1e-12, "maxiter": 250},
        )
        best = max(best, -float(res.fun))
    return min(best, mu.mass)


def modulus_of_continuity(mu: BorelMeasure, t: float) -> float:
    """h_mu(t) = sup_y mu(B_y(t)): exact when certifiable, else a search
    lower bound (see modulus_profile for the per-point exactness flag)."""
    exact = modulus_of_continuity_exact(mu, t)
    return exact if exact is not None else modulus_lower_bound(mu, t)


@dataclass(frozen=True)
class ModulusProfile:
    """h_mu sampled on an increasing grid, with a per-point exactness flag:
    "exact", "lower-bound" (from search) or "upper-bound" (subadditivity)."""

    radii: tuple
    values: tuple
    flags: tuple
    mass: float

    def __post_init__(self):
        if len(self.radii) != len(self.values) or len(self.radii) != len(self.flags):
            raise ValueError("radii, values and flags must have equal length")
        if any(b <= a for a, b in zip(self.radii, self.radii[1:])):
            raise ValueError("radii must be strictly increasing")


def modulus_profile(mu: BorelMeasure, radii: Sequence[float],
                    method: str = "auto") -> ModulusProfile:
    """Sample h_mu on a grid.

    method="auto" uses the exact value where certifiable and the search lower
    bound otherwise; "upper" uses the subadditive upper bound for the
    non-certifiable points (what inequality verification wants).
    """
    radii = tuple(float(t) for t in radii)
    values, flags = [], []
    for t in radii:
        exact = modulus_of_continuity_exact(mu, t)
        if exact is not None:
            values.append(exact)
            flags.append("exact")
        elif method == "upper":
            values.append(modulus_upper_bound(mu, t))
            flags.append("upper-bound")
        else:
            values.append(modulus_lower_bound(mu, t))
            flags.append("lower-bound")
    return ModulusProfile(radii, tuple(values), tuple(flags), mu.mass)


# ---------------------------------------------------------------------------
# integrated counting function N_mu(r, R)


def _exact_atomic_counting(ctx: DimensionContext, atoms: Iterable[Atom],
                           r: float, R: float, center: Point) -> float:
    total = 0.0
    kR = kernel(ctx, R)
    for a in atoms:
        ti = _dist(a.point, center)
        if ti >= R:
            continue
        lo = max(ti, r)
        total += a.weight * (kR - kernel(ctx, lo))  # +inf when r=ti=0
    return total


def integrated_counting_result(ctx: DimensionContext, mu: BorelMeasure,
                               r: float, R: float, center=None,
                               tol: float = 1e-10) -> QuadratureResult:
    """N_mu(r, R) = d_hat * integral_r^R mu_center^rad(t) / t^{d-1} dt.

    Exact (piecewise kernel differences) for the atomic part; adaptive
    quadrature for continuous components.  Returns +inf when the integral
    diverges at r = 0 (mass at the center, or d=3 mass reaching the center
    too slowly).
    """
    if not 0.0 <= r < R:
        raise ValueError(f"need 0 <= r < R, got ({r}, {R})")
    center = _as_point(center) if center is not None else (0.0,) * ctx.d
    atoms = [c for c in mu.components if isinstance(c, Atom)]
    cont = [c for c in mu.components if not isinstance(c, Atom)]
    value = _exact_atomic_counting(ctx, atoms, r, R, center)
    err = 0.0
    nodes = 0
    if cont:
        d_hat = float(ctx.d_hat)
        power = ctx.d - 1

        def integrand(t):
            m = np.zeros_like(t)
            for c in cont:
                m = m + c.ball_mass(center, t)
            return d_hat * m / t ** power

        breakpoints = []
        for c in cont:
            breakpoints += c.breakpoint_radii(center)
        breakpoints = [b for b in breakpoints if r < b < R]
        lo = r
        if r == 0.0:
            near = float(sum(c.ball_mass(center, 0.0) for c in cont))
            if near > 0.0:
                return QuadratureResult(math.inf, 0.0, 0)
            inner = min([R] + breakpoints) if breakpoints else R
            first = min(inner, 1e-3 * R) if inner > 0 else 1e-3 * R
            start = min(c.breakpoint_radii(center)[0] for c in cont)
            if start <= 1e-14 * R:
                # support reaches the center: geometric ladder on (0, first]
                try:
                    res0 = integrate_interval(integrand, 0.0, first, [0.0], tol / 2.0)
                except QuadratureBudgetError:
                    return QuadratureResult(math.inf, 0.0, 0)
                value += res0.value
                err += res0.error_estimate
                nodes += res0.nodes_used
                lo = first
            else:
                lo = start * 0.5
        res = integrate_interval(integrand, lo, R, breakpoints, tol)
        value += res.value
        err += res.error_estimate
        nodes += res.nodes_used
    return QuadratureResult(value, err, nodes)


def integrated_counting(ctx: DimensionContext, mu: BorelMeasure,
                        r: float, R: float, center=None) -> float:
    return integrated_counting_result(ctx, mu, r, R, center).value


# ---------------------------------------------------------------------------
# Dini integral of h_mu


def _h_for_integration(mu: BorelMeasure):
    """A sound h evaluator for right-hand sides: exact if certifiable for all
    t, else the subadditive upper bound.  Returns (vectorized fn, flag)."""
    if len(mu.components) <= 1:
        if not mu.components:
            return (lambda t: np.zeros_like(np.asarray(t, dtype=float))), "exact"
        comp = mu.components[0]
        return (lambda t: comp.h_single(t)), "exact"

    def upper(t):
        t = np.asarray(t, dtype=float)
        total = np.zeros_like(t)
        for c in mu.components:
            total = total + c.h_single(t)
        return np.minimum(total, mu.mass)

    return upper, "upper-bound"


def dini_integral_result(ctx: DimensionContext, mu: BorelMeasure, upper: float,
                         tol: float = 1e-6) -> QuadratureResult:
    """integral_0^upper h_mu(t) / t^{d-1} dt with geometric refinement at 0.

    Returns +inf (divergence verdict) when the tail cells fail to decay --
    in particular for any measure with an atom (h is bounded away from 0) and
    for d=3 measures whose h decays only linearly.  tol is relative.
    """
    if not upper > 0:
        raise ValueError("upper must be > 0")
    if not mu.components:
        return QuadratureResult(0.0, 0.0, 0)
    if any(isinstance(c, Atom) for c in mu.components):
        return QuadratureResult(math.inf, 0.0, 0)
    h_fn, _flag = _h_for_integration(mu)
    power = ctx.d - 1

    def integrand(t):
        return np.asarray(h_fn(t), dtype=float) / t ** power

    total = 0.0
    err = 0.0
    nodes = 0
    prev = math.inf
    stall = 0
    for k in range(64):
        hi = upper * 2.0 ** (-k)
        lo = upper * 2.0 ** (-k - 1)
        cell = integrate_interval(integrand, lo, hi, (), tol / 64.0 * max(1.0, total))
        total += cell.value
        err += cell.error_estimate
        nodes += cell.nodes_used
        if total > 1e12:
            return QuadratureResult(math.inf, 0.0, nodes)
        if k >= 4:
            if cell.value >= 0.98 * prev and cell.value > tol * max(total, 1e-300):
                stall += 1
                if stall >= 5:
                    return QuadratureResult(math.inf, 0.0, nodes)
            else:
                stall = 0
            if cell.value <= tol / 8.0 * max(total, 1e-300) and cell.value <= prev:
                ratio = min(0.9, cell.value / prev) if prev > 0 else 0.5
                err += cell.value * ratio / (1.0 - ratio)
                return QuadratureResult(total, err, nodes)
        prev = cell.value
    return QuadratureResult(math.inf, 0.0, nodes)


def dini_integral(ctx: DimensionContext, mu: BorelMeasure, upper: float) -> float:
    return dini_integral_result(ctx, mu, upper).value


@dataclass(frozen=True)
class DiniLimitsReport:
    """Observed tail behavior of h and h * k_{d-2} near t = 0 on a grid."""

    t_min: float
    h_at_min: float
    hk_at_min: float
    h_to_zero: bool
    hk_to_zero: bool
    tail: tuple  # (t, h(t), h(t) * k(t)) for the smallest grid points


def dini_limits_check(profile: ModulusProfile, ctx: DimensionContext,
                      rel_tol: float = 1e-6) -> DiniLimitsReport:
    """Check on the profile grid that h(t) -> 0 and h(t) k(t) -> 0 as t -> 0."""
    t0 = profile.radii[0]
    h0 = profile.values[0]
    hk0 = ext_mul(h0, float(kernel(ctx, t0)))
    thresh = rel_tol * max(1.0, profile.mass)
    tail = tuple(
        (t, h, ext_mul(h, float(kernel(ctx, t))))
        for t, h in list(zip(profile.radii, profile.values))[:5]
    )
    return DiniLimitsReport(
        t_min=t0,
        h_at_min=h0,
        hk_at_min=hk0,
        h_to_zero=bool(h0 <= thresh),
        hk_to_zero=bool(abs(hk0) <= thresh),
        tail=tail,
    )
