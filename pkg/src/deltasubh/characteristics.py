"""Scalar functionals: spherical means, circle sups, and the classical and
difference Nevanlinna characteristics.

For a delta-subharmonic U, the difference characteristic comes in two
independently computed forms that serve as each other's oracle:

    definition form   T_U(r, R) = C_{U^+}(R) + N_{charge^-}(r, R)
    canonical form    T_U(r, R) = C_{max(u*, v*)}(R) - C_{v*}(r)

where (u*, v*) is the canonical representation.  Their numerical agreement is
a check of the Poisson-Jensen-Privalov identity
C_{v*}(R) - C_{v*}(r) = N_{charge^-}(r, R) on the model family.

For meromorphic f the classical quantities m, N, T are tied to the
delta-subharmonic ones by the bridge identities: m(r,f) = C over the circle
of ln^+|f|, N(R,f) - N(r,f) = N_{charge^-}(r,R), and
T(R,f) - N(r,f) = T_{log|f|}(r,R).
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Optional

import numpy as np

from .geometry import DimensionContext
from .measures import Atom, integrated_counting_result
from .potentials import (
    DeltaSubharmonicFn,
    MeromorphicFn,
    canonical_representation,
    jordan_decomposition,
)
from .quadrature import circle_mean, sphere_mean_3d, sphere_sup

__all__ = [
    "CharacteristicRecord",
    "difference_characteristic",
    "difference_characteristic_canonical",
    "nevanlinna_N",
    "nevanlinna_T",
    "nevanlinna_m",
    "spherical_mean",
    "sup_on_sphere",
]

TWO_PI = 2.0 * math.pi

TRANSFORMS = ("identity", "positive", "negative", "abs")


@dataclass(frozen=True)
class CharacteristicRecord:
    kind: str  # C_mean | M_sup | m_classical | N_classical | T_classical | T_difference
    r: float
    value: float
    error_estimate: float
    R: Optional[float] = None
    transform: str = "identity"


def _circle_points(r: float, theta: np.ndarray) -> np.ndarray:
    return np.column_stack([r * np.cos(theta), r * np.sin(theta)])


def _sphere_points(r: float, theta: np.ndarray, phi: np.ndarray) -> np.ndarray:
    st = np.sin(theta)
    return np.column_stack([r * st * np.cos(phi), r * st * np.sin(phi),
                            r * np.cos(theta)])


def _apply_transform(vals: np.ndarray, polar: np.ndarray, transform: str) -> np.ndarray:
    if transform == "identity":
        return vals  # polar entries stay NaN; the quadrature nudges those nodes
    with np.errstate(invalid="ignore"):
        if transform == "positive":
            return np.where(polar, 0.0, np.maximum(vals, 0.0))
        if transform == "negative":
            return np.where(polar, 0.0, np.maximum(-vals, 0.0))
        if transform == "abs":
            return np.abs(vals)
    raise ValueError(f"unknown transform {transform!r}; use one of {TRANSFORMS}")


def _charge_atom_points(U: DeltaSubharmonicFn):
    pts = [np.asarray(c.point) for c in U.u.riesz.components if isinstance(c, Atom)]
    pts += [np.asarray(c.point) for c in U.v.riesz.components if isinstance(c, Atom)]
    return pts

def _split_angles_near_radius(U: DeltaSubharmonicFn, r: float,
                              band: float = 0.05) -> list:
    """Angles of charge atoms within a relative band of the circle |x| = r;
    passing these to the quadrature concentrates refinement where the
    integrand has (near-)singular dips."""
    out = []
    for p in _charge_atom_points(U):
        dist = float(np.hypot(p[0], p[1])) if p.size == 2 else float(np.linalg.norm(p))
        if abs(dist - r) <= band * max(r, 1e-300):
            if p.size == 2:
                out.append(math.atan2(p[1], p[0]))
    return out


def _sign_change_angles(evaluator, n: int = 2048) -> list:
    """Angles where the (continuous off polar) integrand changes sign;
    located by a dense scan plus bisection, used as kink split points."""
    theta = TWO_PI * np.arange(n) / n
    vals = np.asarray(evaluator(theta), dtype=float)
    finite = np.isfinite(vals)
    out = []
    for i in range(n):
        j = (i + 1) % n
        if not (finite[i] and finite[j]):
            continue
        if vals[i] == 0.0 or vals[i] * vals[j] >= 0.0:
            continue
        lo, hi = theta[i], theta[i] + TWO_PI / n
        flo = vals[i]
        for _ in range(48):
            mid = 0.5 * (lo + hi)
            fm = float(np.asarray(evaluator(np.array([mid])), dtype=float)[0])
            if not math.isfinite(fm) or fm == 0.0:
                break
            if (fm > 0) == (flo > 0):
                lo, flo = mid, fm
            else:
                hi = mid
        out.append(0.5 * (lo + hi))
    return out


def spherical_mean(U: DeltaSubharmonicFn, r: float, transform: str = "identity",
                   tol: float = 1e-8) -> CharacteristicRecord:
    """C over the sphere of radius r of U (or of U^+ / U^- / |U|)."""
    if not r > 0:
        raise ValueError("r must be > 0")
    if transform not in TRANSFORMS:
        raise ValueError(f"unknown transform {transform!r}")
    if U.dim == 2:
        def g(theta):
            vals, polar = U.values_with_polar(_circle_points(r, theta))
            return _apply_transform(vals, polar, transform)

        angles = _split_angles_near_radius(U, r)
        if transform in ("positive", "negative", "abs"):
            angles += _sign_change_angles(
                lambda th: U.values_with_polar(_circle_points(r, th))[0])
        res = circle_mean(g, angles, tol)
    elif U.dim == 3:
        def g3(theta, phi):
            vals, polar = U.values_with_polar(_sphere_points(r, theta, phi))
            return _apply_transform(vals, polar, transform)

        res = sphere_mean_3d(g3, tol)
    else:
        raise ValueError(f"sphere quadrature supports d in (2, 3), got {U.dim}")
    return CharacteristicRecord("C_mean", r, res.value, res.error_estimate,
                                transform=transform)


def sup_on_sphere(U: DeltaSubharmonicFn, r: float, transform: str = "identity",
                  refinement_tol: float = 1e-7) -> CharacteristicRecord:
    """M over the sphere of radius r (a refined lower bound of the sup)."""
    if not r > 0:
        raise ValueError("r must be > 0")
    if U.dim == 2:
        def g(theta):
            vals, polar = U.values_with_polar(_circle_points(r, theta))
            return _apply_transform(vals, polar, transform)

        value = sphere_sup(g, refinement_tol, dim=2)
    elif U.dim == 3:
        def g3(theta, phi):
            vals, polar = U.values_with_polar(_sphere_points(r, theta, phi))
            return _apply_transform(vals, polar, transform)

        value = sphere_sup(g3, refinement_tol, dim=3)
    else:
        raise ValueError(f"sphere sup supports d in (2, 3), got {U.dim}")
    return CharacteristicRecord("M_sup", r, value, refinement_tol,
                                transform=transform)


# ---------------------------------------------------------------------------
# classical Nevanlinna quantities for meromorphic f


def _pole_zero_split_angles(f: MeromorphicFn, r: float, band: float = 0.05) -> list:
    out = []
    for a, _ in f.zeros + f.poles:
        if abs(abs(a) - r) <= band * max(r, 1e-300):
            out.append(math.atan2(a.imag, a.real))
    return out


def nevanlinna_m(f: MeromorphicFn, r: float, tol: float = 1e-8) -> CharacteristicRecord:
    """m(r, f): circle mean of ln^+ |f|.

    Zeros of f on the circle need no singular split (ln^+ caps them at 0),
    but the kinks where |f| crosses 1 are located and passed as split points
    so the adaptive rule keeps spectral accuracy per panel.
    """
    if not r > 0:
        raise ValueError("r must be > 0")

    def g(theta):
        z = r * np.exp(1j * theta)
        return np.maximum(f.log_abs(z), 0.0)

    angles = _pole_zero_split_angles(f, r)
    angles += _sign_change_angles(lambda th: f.log_abs(r * np.exp(1j * th)))
    res = circle_mean(g, angles, tol)
    return CharacteristicRecord("m_classical", r, res.value, res.error_estimate)


def nevanlinna_N(f: MeromorphicFn, r: float) -> CharacteristicRecord:
    """N(r, f) from the pole list: exact piecewise-log closed form.

    N(0, f) is 0 when f has no pole at the origin and -inf otherwise.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    n0 = sum(n for b, n in f.poles if b == 0)
    if r == 0.0:
        value = 0.0 if n0 == 0 else -math.inf
        return CharacteristicRecord("N_classical", r, value, 0.0)
    value = n0 * math.log(r)
    for b, n in f.poles:
        if b != 0 and abs(b) <= r:
            value += n * math.log(r / abs(b))
    return CharacteristicRecord("N_classical", r, value, 0.0)


def nevanlinna_T(f: MeromorphicFn, r: float, tol: float = 1e-8) -> CharacteristicRecord:
    """T(r, f) = m(r, f) + N(r, f)."""
    m = nevanlinna_m(f, r, tol)
    N = nevanlinna_N(f, r)
    return CharacteristicRecord("T_classical", r, m.value + N.value,
                                m.error_estimate + N.error_estimate)


# ---------------------------------------------------------------------------
# difference characteristic, two forms


def difference_characteristic(U: DeltaSubharmonicFn, r: float, R: float,
                              tol: float = 1e-8) -> CharacteristicRecord:
    """T_U(r, R) = C_{U^+}(R) + N_{charge^-}(r, R); may be +inf when r = 0
    and the negative charge loads the origin."""
    if not 0.0 <= r < R:
        raise ValueError(f"need 0 <= r < R, got ({r}, {R})")
    ctx = DimensionContext(U.dim)
    _plus, minus = jordan_decomposition(U)
    c_plus = spherical_mean(U, R, "positive", tol)
    n_minus = integrated_counting_result(ctx, minus, r, R)
    return CharacteristicRecord(
        "T_difference", r, c_plus.value + n_minus.value,
        c_plus.error_estimate + n_minus.error_estimate, R=R,
    )


def difference_characteristic_canonical(U: DeltaSubharmonicFn, r: float, R: float,
                                        tol: float = 1e-8) -> CharacteristicRecord:
    """T_U(r, R) = C_{max(u*, v*)}(R) - C_{v*}(r) via the canonical
    representation; agrees with difference_characteristic on the model family."""
    if not 0.0 < r < R:
        raise ValueError(f"need 0 < r < R, got ({r}, {R})")
    u_star, v_star = canonical_representation(U, R)
    pair = DeltaSubharmonicFn(u_star, v_star)

    if U.dim == 2:
        def g_sup(theta):
            pts = _circle_points(R, theta)
            return np.maximum(u_star.values(pts), v_star.values(pts))

        angles = _split_angles_near_radius(pair, R)
        angles += _sign_change_angles(
            lambda th: pair.values_with_polar(_circle_points(R, th))[0])
        sup_mean = circle_mean(g_sup, angles, tol)

        def g_v(theta):
            return v_star.values(_circle_points(r, theta))

        v_mean = circle_mean(g_v, _split_angles_near_radius(pair, r), tol)
    elif U.dim == 3:
        def g3_sup(theta, phi):
            pts = _sphere_points(R, theta, phi)
            return np.maximum(u_star.values(pts), v_star.values(pts))

        def g3_v(theta, phi):
            return v_star.values(_sphere_points(r, theta, phi))

        sup_mean = sphere_mean_3d(g3_sup, tol)
        v_mean = sphere_mean_3d(g3_v, tol)
    else:
        raise ValueError(f"supported dimensions are 2 and 3, got {U.dim}")
    return CharacteristicRecord(
        "T_difference", r, sup_mean.value - v_mean.value,
        sup_mean.error_estimate + v_mean.error_estimate, R=R,
    )
