"""The verifier core: both sides of the main integral inequality

    integral over B(r) of U^+ d mu
        <= A_d(r, R) * T_U(r0, R) * ( M + integral_0^{R+r} h_mu(t) / t^{d-1} dt )

with A_d(r, R) = 2 ((R+r)/(R-r))^{d-1} max(1, (R-r)^{d-2}), its d=2 and
meromorphic specializations, the Poisson-Jensen identity, the pointwise
bound behind the proof, and the counting-measure lemma.  A seeded corpus
driver generates deterministic scenario batches.

Verdict semantics are honest about quadrature error: "pass" requires the
slack to clear the combined error budget, a negative slack beyond the budget
is "fail" (a genuine counterexample, i.e. an implementation bug), anything
inside the budget is "inconclusive", an infinite right-hand side is
"vacuous", and a divergent Dini integral is "precondition-failed".
"""

from __future__ import annotations

import math
import random
import time
from dataclasses import dataclass, field
from typing import Optional, Sequence

import numpy as np

from .characteristics import (
    difference_characteristic,
    nevanlinna_N,
    nevanlinna_T,
    spherical_mean,
)
from .geometry import DimensionContext, ext_mul, kernel
from .measures import (
    Atom,
    BorelMeasure,
    UniformArc,
    UniformBall,
    UniformSegment,
    dini_integral_result,
    integrated_counting_result,
)
from .potentials import (
    DeltaSubharmonicFn,
    MeromorphicFn,
    evaluate,
    jordan_decomposition,
    positive_part,
    potential_values,
)
from .quadrature import QuadratureResult, circle_mean, integrate_interval, sphere_mean_3d

__all__ = [
    "CorpusConfig",
    "PointReport",
    "Scenario",
    "Tolerances",
    "VerificationReport",
    "constant_A",
    "generate_scenario",
    "positive_part_integral",
    "run_checks",
    "run_corpus",
    "verify_counting_lemma",
    "verify_main_theorem",
    "verify_planar_meromorphic",
    "verify_planar_meromorphic_simplified",
    "verify_pointwise_bound",
    "verify_poisson_jensen",
]

PASS = "pass"
FAIL = "fail"
INCONCLUSIVE = "inconclusive"
VACUOUS = "vacuous"
PRECONDITION_FAILED = "precondition-failed"

DEFAULT_FAMILIES = ("ef_arc", "segment", "disk", "disk_union")
ALL_CHECKS = ("UR", "UR2", "UR2f", "UR2fr", "Ux", "U+B", "dBr")


@dataclass(frozen=True)
class Tolerances:
    mean: float = 1e-8   # absolute, circle/sphere means
    dini: float = 1e-6   # relative, Dini integrals
    sup: float = 1e-7    # refinement gap for sups


@dataclass(frozen=True)
class Scenario:
    scenario_id: str
    ctx: DimensionContext
    U: DeltaSubharmonicFn
    mu: BorelMeasure
    r: float
    R: float
    f: Optional[MeromorphicFn] = None
    r0: Optional[float] = None
    tolerances: Tolerances = Tolerances()
    seed: Optional[int] = None

    def __post_init__(self):
        if not 0.0 < self.r < self.R:
            raise ValueError(f"need 0 < r < R, got ({self.r}, {self.R})")
        if self.r0 is not None and not 0.0 <= self.r0 <= self.r:
            raise ValueError("r0 must lie in [0, r]")
        if self.mu.support_radius > self.r * (1.0 + 1e-12):
            raise ValueError("measure support must lie in the closed ball B(r)")


@dataclass
class VerificationReport:
    scenario_id: str
    inequality: str
    lhs: float
    rhs: float
    slack: float
    error_budget: float
    verdict: str
    components: dict = field(default_factory=dict)
    wall_time_ms: int = 0
    note: str = ""


def constant_A(ctx: DimensionContext, r: float, R: float) -> float:
    """A_d(r, R) = 2 ((R+r)/(R-r))^{d-1} max(1, (R-r)^{d-2});
    reduces to 2 (R+r)/(R-r) for d=2."""
    if not 0.0 < r < R:
        raise ValueError(f"need 0 < r < R, got ({r}, {R})")
    d = ctx.d
    return 2.0 * ((R + r) / (R - r)) ** (d - 1) * max(1.0, (R - r) ** (d - 2))


def _verdict(slack: float, budget: float) -> str:
    if math.isnan(slack):
        return INCONCLUSIVE
    if slack > budget or (slack >= 0.0 and budget == 0.0):
        return PASS
    if slack < -budget:
        return FAIL
    return INCONCLUSIVE


# ---------------------------------------------------------------------------
# left-hand side: integral of U^+ against mu


def _charge_points(U: DeltaSubharmonicFn) -> list:
    pts = [np.asarray(c.point, dtype=float)
           for c in U.u.riesz.components if isinstance(c, Atom)]
    pts += [np.asarray(c.point, dtype=float)
            for c in U.v.riesz.components if isinstance(c, Atom)]
    return pts


def _segment_integral(U, comp: UniformSegment, tol: float) -> QuadratureResult:
    a = np.asarray(comp.start)
    e = np.asarray(comp.end) - a
    L = comp.length

    def g(s):
        pts = a[None, :] + np.asarray(s)[:, None] * e[None, :]
        return U.positive_values(pts)

    splits = []
    for p in _charge_points(U):
        s_star = float(np.clip((p - a) @ e / (e @ e), 0.0, 1.0))
        if np.linalg.norm(a + s_star * e - p) <= 0.05 * L:
            splits.append(s_star)
    res = integrate_interval(g, 0.0, 1.0, splits, tol / max(comp.weight, 1e-300))
    return res.scaled(comp.weight)


def _arc_integral(U, comp: UniformArc, tol: float) -> QuadratureResult:
    c = np.asarray(comp.center)

    def curve(theta):
        th = np.asarray(theta, dtype=float)
        return np.column_stack([c[0] + comp.radius * np.cos(th),
                                c[1] + comp.radius * np.sin(th)])

    def g(theta):
        return U.positive_values(curve(theta))

    splits = []
    for p in _charge_points(U):
        q = float(np.linalg.norm(p - c))
        if abs(q - comp.radius) <= 0.05 * comp.radius:
            ang = math.atan2(p[1] - c[1], p[0] - c[0])
            rel = (ang - comp.angle_start) % (2.0 * math.pi)
            if rel <= comp.width:
                splits.append(comp.angle_start + rel)
    # kinks of U^+ where U crosses zero along the arc
    n_scan = 512
    th_scan = comp.angle_start + comp.width * (np.arange(n_scan) + 0.5) / n_scan
    vals = U.values_with_polar(curve(th_scan))[0]
    sign = np.sign(vals)
    for i in range(n_scan - 1):
        if np.isfinite(vals[i]) and np.isfinite(vals[i + 1]) and sign[i] * sign[i + 1] < 0:
            lo, hi = th_scan[i], th_scan[i + 1]
            flo = vals[i]
            for _ in range(40):
                mid = 0.5 * (lo + hi)
                fm = float(U.values_with_polar(curve(np.array([mid])))[0][0])
                if not math.isfinite(fm) or fm == 0.0:
                    break
                if (fm > 0) == (flo > 0):
                    lo, flo = mid, fm
                else:
                    hi = mid
            splits.append(0.5 * (lo + hi))
    res = integrate_interval(g, comp.angle_start, comp.angle_end, splits,
                             tol * comp.width / max(comp.weight, 1e-300))
    return res.scaled(comp.weight / comp.width)


def _gl_nodes(a: float, b: float, n: int):
    from .quadrature import _leggauss
    x, w = _leggauss(n)
    mid, half = 0.5 * (a + b), 0.5 * (b - a)
    return mid + half * x, half * w


def _ball_integral(U, comp: UniformBall, tol: float) -> QuadratureResult:
    """Tensor-product rule over the solid ball: composite Gauss-Legendre in
    the radius (panels split at charge-atom distances) x equispaced angles,
    doubled together until the value is stable.  The U^+ kink curves limit
    angular convergence to O(n^-2), which the doubling estimate reflects."""
    c = np.asarray(comp.center)
    rho = comp.radius
    dim = comp.dim
    breaks = sorted({float(np.linalg.norm(p - c)) for p in _charge_points(U)
                     if 0.0 < float(np.linalg.norm(p - c)) < rho})
    edges = [0.0] + breaks + [rho]
    prev = None
    diff = math.inf
    nodes = 0
    n_r, n_a = 8, 128
    for _level in range(7):
        total = 0.0
        for lo, hi in zip(edges[:-1], edges[1:]):
            if hi - lo <= 1e-15 * rho:
                continue
            qs, qw = _gl_nodes(lo, hi, min(n_r, 48))
            if dim == 2:
                theta = 2.0 * math.pi * np.arange(n_a) / n_a
                Q, TH = np.meshgrid(qs, theta, indexing="ij")
                pts = np.column_stack([c[0] + (Q * np.cos(TH)).ravel(),
                                       c[1] + (Q * np.sin(TH)).ravel()])
                vals = U.positive_values(pts).reshape(len(qs), n_a)
                vals = np.where(np.isfinite(vals), vals, 0.0)  # measure-zero nodes
                shell = vals.mean(axis=1)
                total += float(np.dot(qw, 2.0 * qs / (rho * rho) * shell))
            else:
                m = n_a // 2
                u, uw = _gl_nodes(-1.0, 1.0, min(m, 48))
                phi = 2.0 * math.pi * np.arange(n_a) / n_a
                QQ, UU, PP = np.meshgrid(qs, u, phi, indexing="ij")
                st = np.sqrt(np.maximum(0.0, 1.0 - UU ** 2))
                pts = np.column_stack([
                    (c[0] + QQ * st * np.cos(PP)).ravel(),
                    (c[1] + QQ * st * np.sin(PP)).ravel(),
                    (c[2] + QQ * UU).ravel(),
                ])
                vals = U.positive_values(pts).reshape(len(qs), len(u), n_a)
                vals = np.where(np.isfinite(vals), vals, 0.0)
                shell = 0.5 * np.einsum("j,ij->i", uw, vals.mean(axis=2))
                total += float(np.dot(qw, 3.0 * qs ** 2 / rho ** 3 * shell))
            nodes += pts.shape[0]
        if prev is not None:
            diff = abs(total - prev)
            if diff <= tol / max(comp.weight, 1e-300):
                return QuadratureResult(comp.weight * total,
                                        comp.weight * diff, nodes)
        prev = total
        n_r *= 2
        n_a *= 2
    return QuadratureResult(comp.weight * prev, comp.weight * diff, nodes)


def positive_part_integral(U: DeltaSubharmonicFn, mu: BorelMeasure,
                           tol: float = 1e-8) -> QuadratureResult:
    """integral of U^+ d mu: exact weighted point values on atoms, adaptive
    quadrature along segments/arcs, nested product quadrature over balls."""
    total = QuadratureResult(0.0, 0.0, 0)
    for comp in mu.components:
        if isinstance(comp, Atom):
            total.value += comp.weight * positive_part(U, comp.point)
            total.nodes_used += 1
        elif isinstance(comp, UniformSegment):
            total = total + _segment_integral(U, comp, tol)
        elif isinstance(comp, UniformArc):
            total = total + _arc_integral(U, comp, tol)
        elif isinstance(comp, UniformBall):
            total = total + _ball_integral(U, comp, tol)
        else:
            raise ValueError(f"unknown measure component {type(comp).__name__}")
    return total


# ---------------------------------------------------------------------------
# the main theorem and its specializations


def _assemble_report(s: Scenario, tag: str, lhs: QuadratureResult,
                     growth: float, growth_err: float, A: float,
                     dini: QuadratureResult, note: str = "") -> VerificationReport:
    """rhs = A * growth * (M + dini) with the extended-real conventions."""
    M = s.mu.mass
    components = {
        "A": A, "T": growth, "M": M, "dini": dini.value,
    }
    factor = M + dini.value
    if factor == 0.0:
        rhs = 0.0  # mu = 0: 0 * (anything, even +inf) = 0 by convention
        budget = lhs.error_estimate
    elif math.isinf(growth):
        return VerificationReport(s.scenario_id, tag, lhs.value, math.inf,
                                  math.inf, lhs.error_estimate, VACUOUS,
                                  components, note="infinite growth factor")
    else:
        rhs = A * growth * factor
        budget = (lhs.error_estimate
                  + A * (growth_err * factor + abs(growth) * dini.error_estimate))
    slack = rhs - lhs.value
    return VerificationReport(s.scenario_id, tag, lhs.value, rhs, slack,
                              budget, _verdict(slack, budget), components, note=note)


def verify_main_theorem(s: Scenario, tag: str = "UR",
                        lhs: Optional[QuadratureResult] = None) -> VerificationReport:
    """LHS = integral of U^+ d mu; RHS = A_d(r,R) T_U(r0, R) (M + Dini).

    lhs may be passed in when already computed (it is shared between the
    UR-family checks of one scenario).
    """
    tols = s.tolerances
    dini = dini_integral_result(s.ctx, s.mu, s.R + s.r, tols.dini)
    if math.isinf(dini.value):
        got = lhs if lhs is not None else (
            positive_part_integral(s.U, s.mu, tols.mean) if s.mu.is_atomic
            else QuadratureResult(math.nan, 0.0, 0))
        return VerificationReport(s.scenario_id, tag, got.value, math.inf,
                                  math.inf, 0.0, PRECONDITION_FAILED,
                                  {"dini": math.inf},
                                  note="Dini integral diverges")
    if lhs is None:
        lhs = positive_part_integral(s.U, s.mu, tols.mean)
    r_growth = s.r0 if s.r0 is not None else s.r
    T = difference_characteristic(s.U, r_growth, s.R, tols.mean)
    return _assemble_report(s, tag, lhs, T.value, T.error_estimate,
                            constant_A(s.ctx, s.r, s.R), dini)


def verify_planar_meromorphic(s: Scenario,
                              lhs: Optional[QuadratureResult] = None) -> VerificationReport:
    """d=2 meromorphic form: growth factor T(R, f) - N(r0 or r, f)."""
    if s.ctx.d != 2 or s.f is None:
        raise ValueError("UR2f requires a d=2 meromorphic scenario")
    tols = s.tolerances
    dini = dini_integral_result(s.ctx, s.mu, s.R + s.r, tols.dini)
    if math.isinf(dini.value):
        return VerificationReport(s.scenario_id, "UR2f", math.nan, math.inf,
                                  math.inf, 0.0, PRECONDITION_FAILED,
                                  {"dini": math.inf},
                                  note="Dini integral diverges")
    if lhs is None:
        lhs = positive_part_integral(s.U, s.mu, tols.mean)
    r_growth = s.r0 if s.r0 is not None else s.r
    T = nevanlinna_T(s.f, s.R, tols.mean)
    N = nevanlinna_N(s.f, r_growth)
    if math.isinf(N.value):  # pole at 0 with r0 = 0: T - N = +inf, vacuous
        growth = math.inf
        growth_err = 0.0
    else:
        growth = T.value - N.value
        growth_err = T.error_estimate + N.error_estimate
    return _assemble_report(s, "UR2f", lhs, growth, growth_err,
                            constant_A(s.ctx, s.r, s.R), dini)


def verify_planar_meromorphic_simplified(s: Scenario,
                                         lhs: Optional[QuadratureResult] = None) -> VerificationReport:
    """UR2fr: N(r, f) >= 0 dropped, growth factor T(R, f) alone; requires
    r >= 1 or no pole at the origin."""
    if s.ctx.d != 2 or s.f is None:
        raise ValueError("UR2fr requires a d=2 meromorphic scenario")
    if s.r < 1.0 and s.f.pole_count(0.0) > 0:
        return VerificationReport(s.scenario_id, "UR2fr", math.nan, math.nan,
                                  math.nan, 0.0, PRECONDITION_FAILED,
                                  note="needs r >= 1 or f(0) finite")
    tols = s.tolerances
    dini = dini_integral_result(s.ctx, s.mu, s.R + s.r, tols.dini)
    if math.isinf(dini.value):
        return VerificationReport(s.scenario_id, "UR2fr", math.nan, math.inf,
                                  math.inf, 0.0, PRECONDITION_FAILED,
                                  {"dini": math.inf},
                                  note="Dini integral diverges")
    if lhs is None:
        lhs = positive_part_integral(s.U, s.mu, tols.mean)
    T = nevanlinna_T(s.f, s.R, tols.mean)
    return _assemble_report(s, "UR2fr", lhs, T.value, T.error_estimate,
                            constant_A(s.ctx, s.r, s.R), dini)


# ---------------------------------------------------------------------------
# proof-ingredient checks


@dataclass
class PointReport:
    """Per-sample-point outcome of an identity or pointwise-bound check."""

    points: list
    residuals: list          # lhs - rhs (identity) or rhs - lhs (bound slack)
    relative: list
    skipped: list
    max_relative: float
    verdict: str


def _reflected_potential(nu: BorelMeasure, x: np.ndarray, R: float, d: int) -> float:
    """integral of k(|R y/|y| - |y| x / R|) d nu(y), via the symmetry
    |R y/|y| - |y| x / R| = (|x|/R) |x* - y| with x* = R^2 x / |x|^2."""
    mass = nu.mass
    if mass == 0.0:
        return 0.0
    q = float(np.linalg.norm(x))
    ctx = DimensionContext(d)
    if q == 0.0:
        return mass * float(kernel(ctx, R))
    x_star = (R * R / (q * q)) * x
    pot = float(potential_values(nu, x_star[None, :], d)[0])
    if d == 2:
        return mass * math.log(q / R) + pot
    return (R / q) * pot


def verify_poisson_jensen(U: DeltaSubharmonicFn, R: float,
                          sample_points: Sequence, tol: float = 1e-8) -> PointReport:
    """Residual of the Poisson-Jensen representation at each sample point:

        U(x) = Poisson boundary integral
               - integral of (k(reflected) - k(|y-x|)) d charge(y),

    i.e. the harmonic majorant minus the positive-Green-function potential of
    the Riesz charge (subharmonic parts sit below their Poisson integral)."""
    d = U.dim
    points, residuals, relative, skipped = [], [], [], []
    plus, minus = jordan_decomposition(U)
    for raw in sample_points:
        x = np.asarray(raw, dtype=float)
        lhs = evaluate(U, x)
        if lhs is None or not math.isfinite(lhs):
            skipped.append(tuple(x))
            continue
        q2 = float(x @ x)
        if d == 2:
            def g(theta):
                y = np.column_stack([R * np.cos(theta), R * np.sin(theta)])
                dist2 = ((y - x[None, :]) ** 2).sum(axis=1)
                vals, polar = U.values_with_polar(y)
                return np.where(polar, np.nan, (R * R - q2) / dist2 * vals)

            boundary = circle_mean(g, (), tol)
        else:
            def g3(theta, phi):
                st = np.sin(theta)
                y = np.column_stack([R * st * np.cos(phi), R * st * np.sin(phi),
                                     R * np.cos(theta)])
                dist = np.sqrt(((y - x[None, :]) ** 2).sum(axis=1))
                vals, polar = U.values_with_polar(y)
                return np.where(polar, np.nan, R * (R * R - q2) / dist ** 3 * vals)

            boundary = sphere_mean_3d(g3, tol)
        green = 0.0
        for nu, sign in ((plus, 1.0), (minus, -1.0)):
            if nu.mass == 0.0:
                continue
            refl = _reflected_potential(nu, x, R, d)
            direct = float(potential_values(nu, x[None, :], d)[0])
            green -= sign * (refl - direct)
        rhs = boundary.value + green
        res = lhs - rhs
        points.append(tuple(x))
        residuals.append(res)
        relative.append(abs(res) / max(1.0, abs(lhs)))
    max_rel = max(relative, default=0.0)
    return PointReport(points, residuals, relative, skipped, max_rel,
                       PASS if max_rel < 1e-6 else FAIL)


def verify_pointwise_bound(U: DeltaSubharmonicFn, r: float, R: float,
                           sample_points: Sequence, tol: float = 1e-8) -> PointReport:
    """U^+(x) <= R^{d-2}(R+r)/(R-r)^{d-1} C_{U^+}(R)
    + integral (k(R+r) - k(|y-x|)) d charge^-(y), at each x in B(r)."""
    if not 0.0 < r < R:
        raise ValueError(f"need 0 < r < R, got ({r}, {R})")
    d = U.dim
    ctx = DimensionContext(d)
    _plus, minus = jordan_decomposition(U)
    c_plus = spherical_mean(U, R, "positive", tol)
    coeff = R ** (d - 2) * (R + r) / (R - r) ** (d - 1)
    k_Rr = float(kernel(ctx, R + r))
    points, slacks, relative, skipped = [], [], [], []
    for raw in sample_points:
        x = np.asarray(raw, dtype=float)
        lhs = evaluate(U, x)
        if lhs is None or not math.isfinite(lhs):
            skipped.append(tuple(x))
            continue
        lhs_plus = max(lhs, 0.0)
        charge_term = k_Rr * minus.mass - float(potential_values(minus, x[None, :], d)[0])
        rhs = coeff * c_plus.value + charge_term
        slack = rhs - lhs_plus
        points.append(tuple(x))
        slacks.append(slack)
        relative.append(slack / max(1.0, abs(rhs)))
    budget = coeff * c_plus.error_estimate
    ok = all(sl >= -budget for sl in slacks)
    return PointReport(points, slacks, relative, skipped,
                       max((abs(s) for s in slacks), default=0.0),
                       PASS if ok else FAIL)


def verify_counting_lemma(delta: BorelMeasure, R_star: float, R: float,
                          ctx: DimensionContext) -> VerificationReport:
    """delta^rad(R*) <= R^{d-1} / (d_hat (R - R*)) * N_delta(R*, R)."""
    if not 0.0 < R_star < R:
        raise ValueError(f"need 0 < R_star < R, got ({R_star}, {R})")
    lhs = float(delta.radial_counting((0.0,) * ctx.d, R_star))
    n = integrated_counting_result(ctx, delta, R_star, R)
    coeff = R ** (ctx.d - 1) / (ctx.d_hat * (R - R_star))
    rhs = ext_mul(coeff, n.value)
    slack = rhs - lhs
    budget = coeff * n.error_estimate
    if lhs != 0.0 or rhs != 0.0:
        budget += 4e-16 * (abs(lhs) + abs(rhs))  # rounding allowance on ties
    return VerificationReport("", "dBr", lhs, rhs, slack, budget,
                              _verdict(slack, budget),
                              {"N": n.value, "coeff": coeff})


# ---------------------------------------------------------------------------
# scenario generation and the corpus driver


def _rng_for(seed: int, index: int, family: str) -> random.Random:
    return random.Random(f"{seed}:{index}:{family}")


def _sample_disk_point(rng: random.Random, radius: float) -> complex:
    while True:
        x = rng.uniform(-radius, radius)
        y = rng.uniform(-radius, radius)
        if x * x + y * y <= radius * radius:
            return complex(x, y)


def _min_dist_to_measure(z: complex, mu: BorelMeasure) -> float:
    """Distance from a d=2 point to the support of mu (for rejection)."""
    p = np.array([z.real, z.imag])
    best = math.inf
    for comp in mu.components:
        if isinstance(comp, Atom):
            best = min(best, float(np.linalg.norm(p - np.asarray(comp.point))))
        elif isinstance(comp, UniformSegment):
            a = np.asarray(comp.start)
            e = np.asarray(comp.end) - a
            s = float(np.clip((p - a) @ e / (e @ e), 0.0, 1.0))
            best = min(best, float(np.linalg.norm(a + s * e - p)))
        elif isinstance(comp, UniformArc):
            q = float(np.linalg.norm(p - np.asarray(comp.center)))
            best = min(best, abs(q - comp.radius))  # circle distance suffices
        elif isinstance(comp, UniformBall):
            q = float(np.linalg.norm(p - np.asarray(comp.center)))
            best = min(best, max(0.0, q - comp.radius))
    return best


def _random_measure(rng: random.Random, family: str, r: float) -> BorelMeasure:
    if family == "ef_arc":
        rho = r * rng.uniform(0.55, 1.0)
        width = rng.uniform(0.3, 2.0 * math.pi)
        start = rng.uniform(0.0, 2.0 * math.pi)
        return BorelMeasure((UniformArc((0.0, 0.0), rho, start, start + width, width),))
    if family == "segment":
        while True:
            ang1, ang2 = rng.uniform(0, 2 * math.pi), rng.uniform(0, 2 * math.pi)
            q1, q2 = rng.uniform(0, 0.9 * r), rng.uniform(0, 0.9 * r)
            a = (q1 * math.cos(ang1), q1 * math.sin(ang1))
            b = (q2 * math.cos(ang2), q2 * math.sin(ang2))
            if math.dist(a, b) >= 0.2 * r:
                return BorelMeasure((UniformSegment(a, b, rng.uniform(0.5, 2.0)),))
    if family == "disk":
        qc = rng.uniform(0.0, 0.6 * r)
        ang = rng.uniform(0, 2 * math.pi)
        center = (qc * math.cos(ang), qc * math.sin(ang))
        rho = rng.uniform(0.2, 0.9) * (r - qc)
        return BorelMeasure((UniformBall(center, rho, rng.uniform(0.5, 2.0)),))
    if family == "disk_union":
        disks: list = []
        attempts = 0
        want = rng.randint(2, 3)
        while len(disks) < want and attempts < 200:
            attempts += 1
            qc = rng.uniform(0.0, 0.7 * r)
            ang = rng.uniform(0, 2 * math.pi)
            center = (qc * math.cos(ang), qc * math.sin(ang))
            rho = rng.uniform(0.1, 0.5) * (r - qc)
            if rho <= 0:
                continue
            if all(math.dist(center, d.center) > rho + d.radius + 0.05 * r for d in disks):
                disks.append(UniformBall(center, rho, rng.uniform(0.3, 1.0)))
        return BorelMeasure(tuple(disks))
    raise ValueError(f"unknown scenario family {family!r}")


def _random_rational(rng: random.Random, R: float, mu: BorelMeasure,
                     margin: float) -> MeromorphicFn:
    """Zeros/poles uniform in B(0.8 R), degrees <= 6, kept clear of the
    origin and of the support of mu by rejection."""
    n_zero = rng.randint(0, 3)
    n_pole = rng.randint(0, 3)
    if n_zero + n_pole == 0:
        n_zero = 1

    def draw() -> complex:
        while True:
            z = _sample_disk_point(rng, 0.8 * R)
            if abs(z) < 0.05:
                continue
            if _min_dist_to_measure(z, mu) < margin:
                continue
            return z

    zeros = tuple((draw(), rng.choice([1, 1, 2])) for _ in range(n_zero))
    poles = []
    taken = {a for a, _ in zeros}
    for _ in range(n_pole):
        while True:
            b = draw()
            if b not in taken:
                break
        taken.add(b)
        poles.append((b, rng.choice([1, 1, 2])))
    unit = rng.uniform(0.4, 2.5) * complex(math.cos(rng.uniform(0, 2 * math.pi)),
                                           math.sin(rng.uniform(0, 2 * math.pi)))
    exponent: tuple = ()
    if rng.random() < 0.4:
        deg = rng.randint(1, 2)
        exponent = tuple(complex(rng.uniform(-0.4, 0.4) / R ** k,
                                 rng.uniform(-0.4, 0.4) / R ** k)
                         for k in range(deg + 1))
    return MeromorphicFn(zeros, tuple(poles), unit, exponent)


def _random_charge_pair(rng: random.Random, R: float, mu: BorelMeasure,
                        margin: float):
    """Random atomic Riesz charges (plus a small harmonic part) clear of the
    support of mu: a non-meromorphic delta-subharmonic scenario family."""
    from .potentials import HarmonicPolynomial, SubharmonicFn

    def draw_atoms(count):
        atoms = []
        for _ in range(count):
            while True:
                z = _sample_disk_point(rng, 0.8 * R)
                if abs(z) >= 0.05 and _min_dist_to_measure(z, mu) >= margin:
                    break
            atoms.append(Atom((z.real, z.imag), rng.uniform(0.2, 1.5)))
        return tuple(atoms)

    harmonic = HarmonicPolynomial((complex(rng.uniform(-0.5, 0.5)),
                                   complex(rng.uniform(-0.3, 0.3) / R,
                                           rng.uniform(-0.3, 0.3) / R)))
    u = SubharmonicFn(2, harmonic, BorelMeasure(draw_atoms(rng.randint(1, 3)), 2))
    v = SubharmonicFn(2, None, BorelMeasure(draw_atoms(rng.randint(0, 3)), 2))
    return DeltaSubharmonicFn(u, v)


def generate_scenario(seed: int, index: int, family: str,
                      tolerances: Tolerances = Tolerances()) -> Scenario:
    """Deterministic scenario from (seed, index, family).

    Measure families: ef_arc (Edrei-Fuchs-style arc), segment,
    disk / disk_union (planar-Lebesgue-style).  All of those carry a random
    rational f.  Two extra families: "charges" (random atomic Riesz charges,
    non-meromorphic, UR/UR2 checks only) and "atomic_mu" (purely atomic
    measure, exercising the expected Dini precondition failure).
    """
    rng = _rng_for(seed, index, family)
    r = rng.uniform(0.8, 2.0)
    R = r * rng.uniform(1.8, 3.0)
    if family == "charges":
        sub_family = ("segment", "disk", "ef_arc")[index % 3]
        mu = _random_measure(rng, sub_family, r)
        U = _random_charge_pair(rng, R, mu, margin=0.05 * r)
        f = None
    elif family == "atomic_mu":
        mu = BorelMeasure(tuple(
            Atom((rng.uniform(-0.6, 0.6) * r, rng.uniform(-0.6, 0.6) * r),
                 rng.uniform(0.2, 1.0))
            for _ in range(rng.randint(1, 5))))
        f = _random_rational(rng, R, mu, margin=0.05 * r)
        U = f.to_delta_subharmonic()
    else:
        mu = _random_measure(rng, family, r)
        f = _random_rational(rng, R, mu, margin=0.05 * r)
        U = f.to_delta_subharmonic()
    r0 = rng.choice([None, 0.0, 0.5])
    if r0 == 0.5:
        r0 = 0.5 * r
    return Scenario(
        scenario_id=f"s{index:04d}-{family}",
        ctx=DimensionContext(2),
        U=U, mu=mu, r=r, R=R, f=f, r0=r0,
        tolerances=tolerances, seed=seed,
    )


def _applicable_checks(s: Scenario, checks: Sequence[str]) -> list:
    out = []
    for tag in checks:
        if tag in ("UR2", "UR2f", "UR2fr") and (s.ctx.d != 2 or
                                                (tag != "UR2" and s.f is None)):
            continue
        out.append(tag)
    return out


def run_checks(s: Scenario, checks: Sequence[str], timing: bool = False,
               point_count: int = 20) -> list:
    """Evaluate the requested inequality tags on one scenario.

    The mu-integral of U^+ is computed once and shared by the UR-family tags.
    """
    reports = []
    rng = random.Random(f"points:{s.seed}:{s.scenario_id}")
    applicable = _applicable_checks(s, checks)
    shared_lhs = None
    if any(t in ("UR", "UR2", "UR2f", "UR2fr") for t in applicable):
        dini = dini_integral_result(s.ctx, s.mu, s.R + s.r, s.tolerances.dini)
        if not math.isinf(dini.value):
            shared_lhs = positive_part_integral(s.U, s.mu, s.tolerances.mean)
    for tag in applicable:
        start = time.perf_counter()
        if tag == "UR":
            rep = verify_main_theorem(s, lhs=shared_lhs)
        elif tag == "UR2":
            rep = verify_main_theorem(s, tag="UR2", lhs=shared_lhs)  # A_2 form
        elif tag == "UR2f":
            rep = verify_planar_meromorphic(s, lhs=shared_lhs)
        elif tag == "UR2fr":
            rep = verify_planar_meromorphic_simplified(s, lhs=shared_lhs)
        elif tag == "Ux":
            pts = [_point_in_ball(rng, s.r, s.ctx.d) for _ in range(point_count)]
            pr = verify_poisson_jensen(s.U, s.R, pts, s.tolerances.mean)
            rep = VerificationReport(s.scenario_id, "Ux", pr.max_relative, 1e-6,
                                     1e-6 - pr.max_relative, 0.0, pr.verdict,
                                     {"skipped": len(pr.skipped)})
        elif tag == "U+B":
            pts = [_point_in_ball(rng, s.r, s.ctx.d) for _ in range(point_count)]
            pr = verify_pointwise_bound(s.U, s.r, s.R, pts, s.tolerances.mean)
            worst = min(pr.residuals, default=0.0)
            rep = VerificationReport(s.scenario_id, "U+B", -worst, 0.0, worst,
                                     0.0, pr.verdict, {"skipped": len(pr.skipped)})
        elif tag == "dBr":
            _plus, minus = jordan_decomposition(s.U)
            rep = verify_counting_lemma(minus, s.r, s.R, s.ctx)
            rep.scenario_id = s.scenario_id
        else:
            raise ValueError(f"unknown check tag {tag!r}")
        if timing:
            rep.wall_time_ms = int(round(1000.0 * (time.perf_counter() - start)))
        reports.append(rep)
    return reports


def _point_in_ball(rng: random.Random, r: float, d: int):
    while True:
        p = tuple(rng.uniform(-r, r) for _ in range(d))
        if sum(c * c for c in p) <= r * r:
            return p


@dataclass(frozen=True)
class CorpusConfig:
    count: int = 200
    families: tuple = DEFAULT_FAMILIES
    checks: tuple = ("UR", "UR2", "UR2f", "UR2fr")
    tolerances: Tolerances = Tolerances()
    timing: bool = False


def run_corpus(config: CorpusConfig, seed: int) -> list:
    """Deterministic scenario batch; reports ordered by scenario id."""
    reports = []
    for index in range(config.count):
        family = config.families[index % len(config.families)]
        s = generate_scenario(seed, index, family, config.tolerances)
        reports.extend(run_checks(s, config.checks, timing=config.timing))
    return reports
