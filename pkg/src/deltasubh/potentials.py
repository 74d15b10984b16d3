"""Explicitly parameterized subharmonic and delta-subharmonic functions.

A subharmonic model is a harmonic part (the real part of a complex polynomial
for d=2, an affine function for d=3) plus the kernel potential of a positive
measure from the measures module,

    u(x) = harmonic(x) + integral k(|x - y|) d nu(y),

so its Riesz measure equals nu by construction and never has to be extracted
by distributional differentiation.  A delta-subharmonic function is a pair
U = u - v; its Riesz charge is nu_u - nu_v, and the Jordan parts are obtained
by cancelling coincident atoms / identical continuous components.

The logarithm of the modulus of a rational-type meromorphic function
f = c e^{p} prod (z-a_i)^{m_i} / prod (z-b_j)^{n_j} is the d=2 bridge case:
log|f| = ln|c| + Re p + sum m_i ln|z-a_i| - sum n_j ln|z-b_j|.

Potentials of atoms, segments, solid balls and full circles have closed
forms; partial-arc potentials fall back to a doubling Gauss-Legendre rule
vectorized over evaluation points.

Pointwise evaluation of U follows the extended-real conventions; the one
undefined case (-inf) - (-inf) -- x in the polar set of both parts -- is
reported as the marker value None, which the positive part maps to 0 (polar
sets are mu-null for every Dini-admissible mu).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .geometry import kernel, DimensionContext
from .measures import Atom, BorelMeasure, UniformArc, UniformBall, UniformSegment
from .quadrature import _leggauss

__all__ = [
    "AffineHarmonic",
    "DeltaSubharmonicFn",
    "HarmonicPolynomial",
    "MeromorphicFn",
    "SubharmonicFn",
    "UnsupportedModelError",
    "canonical_representation",
    "evaluate",
    "jordan_decomposition",
    "positive_part",
    "potential_values",
]


class UnsupportedModelError(ValueError):
    """The charge configuration falls outside the exactly-decomposable family."""


@dataclass(frozen=True)
class HarmonicPolynomial:
    """Re p(z) for a complex polynomial p, coefficients low-to-high (d=2)."""

    coeffs: tuple

    def __post_init__(self):
        object.__setattr__(self, "coeffs", tuple(complex(c) for c in self.coeffs))

    @property
    def dim(self) -> int:
        return 2

    def values(self, pts: np.ndarray) -> np.ndarray:
        z = pts[:, 0] + 1j * pts[:, 1]
        acc = np.zeros_like(z)
        for c in reversed(self.coeffs):
            acc = acc * z + c
        return acc.real

    def __add__(self, other: "HarmonicPolynomial") -> "HarmonicPolynomial":
        n = max(len(self.coeffs), len(other.coeffs))
        a = list(self.coeffs) + [0j] * (n - len(self.coeffs))
        b = list(other.coeffs) + [0j] * (n - len(other.coeffs))
        return HarmonicPolynomial(tuple(x + y for x, y in zip(a, b)))

    def __neg__(self) -> "HarmonicPolynomial":
        return HarmonicPolynomial(tuple(-c for c in self.coeffs))


@dataclass(frozen=True)
class AffineHarmonic:
    """constant + gradient . x (harmonic in every dimension)."""

    constant: float
    gradient: tuple

    def __post_init__(self):
        object.__setattr__(self, "gradient", tuple(float(g) for g in self.gradient))
        object.__setattr__(self, "constant", float(self.constant))

    @property
    def dim(self) -> int:
        return len(self.gradient)

    def values(self, pts: np.ndarray) -> np.ndarray:
        return self.constant + pts @ np.asarray(self.gradient)

    def __neg__(self) -> "AffineHarmonic":
        return AffineHarmonic(-self.constant, tuple(-g for g in self.gradient))


HarmonicPart = Union[HarmonicPolynomial, AffineHarmonic]


def _combine_harmonics(a: Optional[HarmonicPart], b: Optional[HarmonicPart],
                       dim: int) -> Optional[HarmonicPart]:
    """a - b promoted to a common representation."""
    def promote(h):
        if h is None:
            return None
        if dim == 2 and isinstance(h, AffineHarmonic):
            g = h.gradient
            return HarmonicPolynomial((complex(h.constant), complex(g[0], -g[1])))
        return h

    pa, pb = promote(a), promote(b)
    if pa is None:
        return -pb if pb is not None else None
    if pb is None:
        return pa
    if isinstance(pa, HarmonicPolynomial) and isinstance(pb, HarmonicPolynomial):
        return pa + (-pb)
    if isinstance(pa, AffineHarmonic) and isinstance(pb, AffineHarmonic):
        return AffineHarmonic(pa.constant - pb.constant,
                              tuple(x - y for x, y in zip(pa.gradient, pb.gradient)))
    raise UnsupportedModelError("cannot combine harmonic parts of different kinds")


# ---------------------------------------------------------------------------
# kernel potentials of the measure primitives


def _atom_potential(comp: Atom, pts: np.ndarray, d: int) -> np.ndarray:
    dist = np.linalg.norm(pts - np.asarray(comp.point), axis=1)
    ctx = DimensionContext(d)
    return comp.weight * np.asarray(kernel(ctx, dist), dtype=float)


def _segment_potential(comp: UniformSegment, pts: np.ndarray, d: int) -> np.ndarray:
    a = np.asarray(comp.start)
    e = np.asarray(comp.end) - a
    L = comp.length
    ehat = e / L
    w = pts - a
    u0 = w @ ehat
    perp = w - u0[:, None] * ehat
    h = np.linalg.norm(perp, axis=1)
    u_lo = -u0
    u_hi = L - u0

    if d == 2:
        def F(u):
            r2 = u * u + h * h
            with np.errstate(divide="ignore", invalid="ignore"):
                term = 0.5 * u * np.log(r2) - u + h * np.arctan2(u, h)
            return np.where(r2 == 0.0, 0.0, np.where(h == 0.0,
                            np.where(u == 0.0, 0.0, u * np.log(np.abs(u)) - u), term))
        integral = F(u_hi) - F(u_lo)
        return comp.weight / L * integral
    # d == 3: antiderivative of -1/sqrt(u^2+h^2); -inf on the segment itself
    on_axis = h == 0.0
    inside = on_axis & (u_lo <= 0.0) & (u_hi >= 0.0)
    with np.errstate(divide="ignore", invalid="ignore"):
        safe_h = np.where(on_axis, 1.0, h)
        F_hi = -np.arcsinh(u_hi / safe_h)
        F_lo = -np.arcsinh(u_lo / safe_h)
        # h = 0, interval on one side of 0: integral of -1/|u|
        F_hi0 = np.where(u_hi > 0, -np.log(np.abs(u_hi)), np.log(np.abs(u_hi)))
        F_lo0 = np.where(u_lo > 0, -np.log(np.abs(u_lo)), np.log(np.abs(u_lo)))
    integral = np.where(on_axis, F_hi0 - F_lo0, F_hi - F_lo)
    integral = np.where(inside, -np.inf, integral)
    return comp.weight / L * integral


def _arc_potential(comp: UniformArc, pts: np.ndarray, d: int) -> np.ndarray:
    if d != 2:
        raise UnsupportedModelError("arc charges are d=2 only")
    c = np.asarray(comp.center)
    q = np.linalg.norm(pts - c, axis=1)
    if abs(comp.width - 2.0 * math.pi) <= 1e-12:
        # full circle: mean-value closed form W * ln max(q, rho)
        with np.errstate(divide="ignore"):
            return comp.weight * np.log(np.maximum(q, comp.radius))
    # partial arc: doubling composite Gauss-Legendre, vectorized over points
    z = (pts[:, 0] - c[0]) + 1j * (pts[:, 1] - c[1])
    prev = None
    for panels in (4, 8, 16, 32, 64, 128, 256):
        xs, ws = _leggauss(12)
        edges = np.linspace(comp.angle_start, comp.angle_end, panels + 1)
        mid = 0.5 * (edges[:-1] + edges[1:])
        half = 0.5 * (edges[1] - edges[0])
        theta = (mid[:, None] + half * xs[None, :]).ravel()
        wts = np.broadcast_to(half * ws[None, :], (panels, ws.size)).ravel()
        with np.errstate(divide="ignore"):
            vals = np.log(np.abs(z[:, None] - comp.radius * np.exp(1j * theta)[None, :]))
        est = (vals * wts[None, :]).sum(axis=1) / comp.width
        if prev is not None and float(np.max(np.abs(est - prev))) < 1e-11:
            return comp.weight * est
        prev = est
    return comp.weight * prev


def _ball_potential(comp: UniformBall, pts: np.ndarray, d: int) -> np.ndarray:
    c = np.asarray(comp.center)
    q = np.linalg.norm(pts - c, axis=1)
    rho = comp.radius
    if d == 2:
        with np.errstate(divide="ignore"):
            outside = np.log(np.maximum(q, rho))
        inside = math.log(rho) - 0.5 + q * q / (2.0 * rho * rho)
        return comp.weight * np.where(q >= rho, outside, inside)
    if d == 3:
        with np.errstate(divide="ignore"):
            outside = -1.0 / np.maximum(q, rho)
        inside = -(3.0 * rho * rho - q * q) / (2.0 * rho ** 3)
        return comp.weight * np.where(q >= rho, outside, inside)
    raise UnsupportedModelError(f"ball potentials support d in (2, 3), got {d}")


def potential_values(measure: BorelMeasure, pts: np.ndarray, d: int) -> np.ndarray:
    """Kernel potential integral k(|x - y|) d nu(y) at each row of pts."""
    pts = np.asarray(pts, dtype=float)
    total = np.zeros(pts.shape[0])
    for comp in measure.components:
        if isinstance(comp, Atom):
            total = total + _atom_potential(comp, pts, d)
        elif isinstance(comp, UniformSegment):
            total = total + _segment_potential(comp, pts, d)
        elif isinstance(comp, UniformArc):
            total = total + _arc_potential(comp, pts, d)
        elif isinstance(comp, UniformBall):
            total = total + _ball_potential(comp, pts, d)
        else:
            raise UnsupportedModelError(f"unknown component {type(comp).__name__}")
    return total


# ---------------------------------------------------------------------------
# the function models


@dataclass(frozen=True)
class SubharmonicFn:
    """harmonic part + kernel potential of a positive measure (its Riesz mass)."""

    dim: int
    harmonic: Optional[HarmonicPart]
    riesz: BorelMeasure

    def __post_init__(self):
        if self.dim < 2:
            raise ValueError("dimension must be >= 2")
        if self.harmonic is not None and self.harmonic.dim != self.dim:
            raise ValueError("harmonic part dimension mismatch")
        if self.riesz.components and self.riesz.dim != self.dim:
            raise ValueError("Riesz measure dimension mismatch")

    def values(self, pts: np.ndarray) -> np.ndarray:
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        out = potential_values(self.riesz, pts, self.dim)
        if self.harmonic is not None:
            out = out + self.harmonic.values(pts)
        return out

    def value(self, x) -> float:
        return float(self.values(np.asarray(x, dtype=float)[None, :])[0])


def constant_subharmonic(dim: int, c: float = 0.0) -> SubharmonicFn:
    harmonic = (HarmonicPolynomial((complex(c),)) if dim == 2
                else AffineHarmonic(c, (0.0,) * dim))
    return SubharmonicFn(dim, harmonic, BorelMeasure((), dim))


@dataclass(frozen=True)
class DeltaSubharmonicFn:
    """U = u - v for two subharmonic models of the same dimension."""

    u: SubharmonicFn
    v: SubharmonicFn

    def __post_init__(self):
        if self.u.dim != self.v.dim:
            raise ValueError("u and v must share a dimension")

    @property
    def dim(self) -> int:
        return self.u.dim

    def values_with_polar(self, pts: np.ndarray):
        """(U values, polar mask); entries under the mask are meaningless."""
        pts = np.atleast_2d(np.asarray(pts, dtype=float))
        uv = self.u.values(pts)
        vv = self.v.values(pts)
        polar = np.isneginf(uv) & np.isneginf(vv)
        with np.errstate(invalid="ignore"):
            vals = np.where(polar, np.nan, uv - vv)
        return vals, polar

    def values(self, pts: np.ndarray) -> np.ndarray:
        """U at each point with NaN marking polar points (use values_with_polar
        to distinguish)."""
        return self.values_with_polar(pts)[0]

    def positive_values(self, pts: np.ndarray) -> np.ndarray:
        """U^+ with the polar marker mapped to 0."""
        vals, polar = self.values_with_polar(pts)
        with np.errstate(invalid="ignore"):
            out = np.where(polar, 0.0, np.maximum(vals, 0.0))
        return out

    @property
    def riesz_charge_mass(self) -> float:
        return self.u.riesz.mass + self.v.riesz.mass


def evaluate(U: DeltaSubharmonicFn, x) -> Optional[float]:
    """u(x) - v(x); None is the polar marker (both parts are -inf there)."""
    vals, polar = U.values_with_polar(np.asarray(x, dtype=float)[None, :])
    if bool(polar[0]):
        return None
    return float(vals[0])


def positive_part(U: DeltaSubharmonicFn, x) -> float:
    """max(U(x), 0) with the polar marker mapped to 0."""
    val = evaluate(U, x)
    if val is None:
        return 0.0
    return max(val, 0.0)


# ---------------------------------------------------------------------------
# meromorphic bridge


@dataclass(frozen=True)
class MeromorphicFn:
    """f = unit_factor * e^{p} * prod (z - a_i)^{m_i} / prod (z - b_j)^{n_j}."""

    zeros: tuple = ()
    poles: tuple = ()
    unit_factor: complex = 1.0 + 0j
    exponent: tuple = ()

    def __post_init__(self):
        zeros = tuple((complex(a), int(m)) for a, m in self.zeros)
        poles = tuple((complex(b), int(n)) for b, n in self.poles)
        object.__setattr__(self, "zeros", zeros)
        object.__setattr__(self, "poles", poles)
        object.__setattr__(self, "unit_factor", complex(self.unit_factor))
        object.__setattr__(self, "exponent", tuple(complex(c) for c in self.exponent))
        if self.unit_factor == 0:
            raise ValueError("unit factor must be nonzero")
        if any(m < 1 for _, m in zeros) or any(n < 1 for _, n in poles):
            raise ValueError("multiplicities must be >= 1")
        zset = {a for a, _ in zeros}
        pset = {b for b, _ in poles}
        if zset & pset:
            raise ValueError("zeros and poles must be disjoint")
        if len(self.exponent) > 5:
            raise ValueError("entire exponent restricted to degree <= 4")

    def log_abs(self, z: np.ndarray) -> np.ndarray:
        """ln|f| vectorized over complex z (stable log-sum form)."""
        z = np.asarray(z, dtype=complex)
        acc = np.zeros(z.shape, dtype=float)
        if self.exponent:
            p = np.zeros_like(z)
            for c in reversed(self.exponent):
                p = p * z + c
            acc = acc + p.real
        acc = acc + math.log(abs(self.unit_factor))
        with np.errstate(divide="ignore"):
            for a, m in self.zeros:
                acc = acc + m * np.log(np.abs(z - a))
            for b, n in self.poles:
                acc = acc - n * np.log(np.abs(z - b))
        return acc

    def value(self, z: complex) -> complex:
        out = self.unit_factor
        if self.exponent:
            p = 0j
            for c in reversed(self.exponent):
                p = p * z + c
            out *= np.exp(p)
        for a, m in self.zeros:
            out *= (z - a) ** m
        for b, n in self.poles:
            out /= (z - b) ** n
        return complex(out)

    def pole_count(self, r: float) -> int:
        """n(r, f): poles in the closed disk of radius r, with multiplicity."""
        return sum(n for b, n in self.poles if abs(b) <= r)

    def to_delta_subharmonic(self) -> DeltaSubharmonicFn:
        zero_atoms = tuple(Atom((a.real, a.imag), float(m)) for a, m in self.zeros)
        pole_atoms = tuple(Atom((b.real, b.imag), float(n)) for b, n in self.poles)
        coeffs = list(self.exponent) if self.exponent else [0j]
        coeffs[0] = coeffs[0] + math.log(abs(self.unit_factor))
        u = SubharmonicFn(2, HarmonicPolynomial(tuple(coeffs)),
                          BorelMeasure(zero_atoms, 2))
        v = SubharmonicFn(2, None, BorelMeasure(pole_atoms, 2))
        return DeltaSubharmonicFn(u, v)


def product(f: MeromorphicFn, g: MeromorphicFn) -> MeromorphicFn:
    """f * g with zero/pole cancellation at coincident points."""
    net: dict = {}
    for a, m in f.zeros + g.zeros:
        net[a] = net.get(a, 0) + m
    for b, n in f.poles + g.poles:
        net[b] = net.get(b, 0) - n
    zeros = tuple((a, m) for a, m in sorted(net.items(), key=lambda kv: (kv[0].real, kv[0].imag)) if m > 0)
    poles = tuple((b, -n) for b, n in sorted(net.items(), key=lambda kv: (kv[0].real, kv[0].imag)) if n < 0)
    na = max(len(f.exponent), len(g.exponent))
    ea = list(f.exponent) + [0j] * (na - len(f.exponent))
    eb = list(g.exponent) + [0j] * (na - len(g.exponent))
    return MeromorphicFn(zeros, poles, f.unit_factor * g.unit_factor,
                         tuple(x + y for x, y in zip(ea, eb)))


# ---------------------------------------------------------------------------
# Jordan decomposition and canonical representation


def _geometry_key(comp):
    if isinstance(comp, Atom):
        return ("atom", comp.point)
    if isinstance(comp, UniformSegment):
        return ("segment", comp.start, comp.end)
    if isinstance(comp, UniformArc):
        return ("arc", comp.center, comp.radius, comp.angle_start, comp.angle_end)
    if isinstance(comp, UniformBall):
        return ("ball", comp.center, comp.radius)
    raise UnsupportedModelError(f"unknown component {type(comp).__name__}")


def _with_weight(comp, w: float):
    if isinstance(comp, Atom):
        return Atom(comp.point, w)
    if isinstance(comp, UniformSegment):
        return UniformSegment(comp.start, comp.end, w)
    if isinstance(comp, UniformArc):
        return UniformArc(comp.center, comp.radius, comp.angle_start, comp.angle_end, w)
    if isinstance(comp, UniformBall):
        return UniformBall(comp.center, comp.radius, w)
    raise UnsupportedModelError(f"unknown component {type(comp).__name__}")


def _cross_norm(a: np.ndarray, b: np.ndarray) -> float:
    if a.size == 2:
        return abs(float(a[0] * b[1] - a[1] * b[0]))
    return float(np.linalg.norm(np.cross(a, b)))


def _positively_overlapping(a, b) -> bool:
    """Whether two continuous components share carrier mass (same Hausdorff
    dimension on an overlapping carrier); measure-zero contact is fine."""
    if isinstance(a, UniformSegment) and isinstance(b, UniformSegment):
        pa, ea = np.asarray(a.start), np.asarray(a.end) - np.asarray(a.start)
        pb, eb = np.asarray(b.start), np.asarray(b.end) - np.asarray(b.start)
        if _cross_norm(ea, eb) > 1e-12 * np.linalg.norm(ea) * np.linalg.norm(eb):
            return False
        off = pb - pa
        if _cross_norm(ea, off) > 1e-12 * np.linalg.norm(ea) * max(1.0, float(np.linalg.norm(off))):
            return False
        s0 = float(off @ ea / (ea @ ea))
        s1 = float((off + eb) @ ea / (ea @ ea))
        lo, hi = min(s0, s1), max(s0, s1)
        return min(hi, 1.0) - max(lo, 0.0) > 1e-12
    if isinstance(a, UniformArc) and isinstance(b, UniformArc):
        if math.dist(a.center, b.center) > 1e-12 * max(1.0, a.radius) or \
                abs(a.radius - b.radius) > 1e-12 * max(1.0, a.radius):
            return False
        rel = (b.angle_start - a.angle_start) % (2.0 * math.pi)
        return rel < a.width - 1e-12 or rel + b.width > 2.0 * math.pi + 1e-12
    if isinstance(a, UniformBall) and isinstance(b, UniformBall):
        return math.dist(a.center, b.center) < a.radius + b.radius - 1e-12
    return False  # different carriers intersect in measure zero


def jordan_decomposition(U: DeltaSubharmonicFn):
    """(charge^+, charge^-) with mutually singular supports.

    Coincident atoms and identical continuous components cancel by weight;
    continuous components that overlap only partially cannot be decomposed
    exactly and raise UnsupportedModelError.
    """
    net: dict = {}
    order: list = []
    for comp in U.u.riesz.components:
        key = _geometry_key(comp)
        if key not in net:
            order.append(key)
            net[key] = [comp, 0.0]
        net[key][1] += comp.weight
    for comp in U.v.riesz.components:
        key = _geometry_key(comp)
        if key not in net:
            order.append(key)
            net[key] = [comp, 0.0]
        net[key][1] -= comp.weight
    pos, neg = [], []
    for key in order:
        comp, w = net[key]
        if w > 1e-300:
            pos.append(_with_weight(comp, w))
        elif w < -1e-300:
            neg.append(_with_weight(comp, -w))
    for p in pos:
        for q in neg:
            if not isinstance(p, Atom) and not isinstance(q, Atom) \
                    and _positively_overlapping(p, q):
                raise UnsupportedModelError(
                    "continuous charge components overlap partially; "
                    "exact Jordan decomposition is unavailable")
    dim = U.dim
    return BorelMeasure(tuple(pos), dim), BorelMeasure(tuple(neg), dim)


def canonical_representation(U: DeltaSubharmonicFn, R: float):
    """(u*, v*) with Riesz measures charge^+ / charge^- and u* - v* = U off
    polar sets; the shared harmonic remainder goes to u*."""
    if not R > 0:
        raise ValueError("R must be > 0")
    plus, minus = jordan_decomposition(U)
    harmonic = _combine_harmonics(U.u.harmonic, U.v.harmonic, U.dim)
    u_star = SubharmonicFn(U.dim, harmonic, plus)
    v_star = SubharmonicFn(U.dim, None, minus)
    return u_star, v_star
