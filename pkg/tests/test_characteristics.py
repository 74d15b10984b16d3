import math
import random

import numpy as np
import pytest

from deltasubh.characteristics import (
    difference_characteristic,
    difference_characteristic_canonical,
    nevanlinna_N,
    nevanlinna_T,
    nevanlinna_m,
    spherical_mean,
    sup_on_sphere,
)
from deltasubh.geometry import DimensionContext, kernel
from deltasubh.measures import Atom, BorelMeasure, integrated_counting
from deltasubh.potentials import (
    AffineHarmonic,
    DeltaSubharmonicFn,
    HarmonicPolynomial,
    MeromorphicFn,
    SubharmonicFn,
)


def _mero(zeros=(), poles=(), unit=1.0, exponent=()):
    return MeromorphicFn(tuple(zeros), tuple(poles), unit, tuple(exponent))


def _random_rational(rng, radius=2.0, margin=0.05):
    while True:
        n_z = rng.randint(0, 3)
        n_p = rng.randint(0, 3)
        if n_z + n_p == 0:
            continue
        pts = []
        ok = True
        for _ in range(n_z + n_p):
            while True:
                z = complex(rng.uniform(-radius, radius), rng.uniform(-radius, radius))
                if abs(z) <= radius and abs(z) > margin:
                    break
            pts.append(z)
        if len({round(p.real, 9) + 1j * round(p.imag, 9) for p in pts}) < len(pts):
            continue
        zeros = tuple((p, rng.choice([1, 1, 2])) for p in pts[:n_z])
        poles = tuple((p, rng.choice([1, 1, 2])) for p in pts[n_z:])
        unit = rng.uniform(0.3, 3.0)
        return _mero(zeros=zeros, poles=poles, unit=unit)


def test_spherical_mean_anchors():
    f = _mero(zeros=[(0j, 1)])
    U = f.to_delta_subharmonic()
    assert spherical_mean(U, math.e).value == pytest.approx(1.0, abs=1e-10)
    assert spherical_mean(U, 0.5, "positive").value == pytest.approx(0.0, abs=1e-12)


def test_spherical_mean_jensen_closed_form():
    rng = random.Random(41)
    for _ in range(20):
        rho = rng.uniform(0.1, 3.0)
        r = rng.uniform(0.1, 3.0)
        if abs(rho - r) < 0.03 * max(rho, r):
            continue
        ang = rng.uniform(0, 2 * math.pi)
        a = complex(rho * math.cos(ang), rho * math.sin(ang))
        U = _mero(zeros=[(a, 1)]).to_delta_subharmonic()
        assert spherical_mean(U, r).value == pytest.approx(
            math.log(max(r, rho)), abs=1e-8)


def test_spherical_mean_jensen_from_counting():
    # C_u(r) = u(0) + N_nu(0, r) for potentials: the Jensen route
    rng = random.Random(42)
    ctx = DimensionContext(2)
    atoms = tuple(Atom((rng.uniform(-1, 1), rng.uniform(-1, 1)),
                       rng.uniform(0.3, 1.0)) for _ in range(4))
    nu = BorelMeasure(atoms)
    u = SubharmonicFn(2, None, nu)
    U = DeltaSubharmonicFn(u, SubharmonicFn(2, None, BorelMeasure((), 2)))
    r = 2.5
    mean = spherical_mean(U, r).value
    jensen = u.value((0.0, 0.0)) + integrated_counting(ctx, nu, 0.0, r)
    assert mean == pytest.approx(jensen, abs=1e-8)


def test_spherical_mean_3d_newtonian():
    ctx = DimensionContext(3)
    atom = Atom((0.4, 0.0, 0.3), 1.0)
    u = SubharmonicFn(3, None, BorelMeasure((atom,), 3))
    U = DeltaSubharmonicFn(u, SubharmonicFn(3, None, BorelMeasure((), 3)))
    r = 2.0
    # Newtonian mean value: mean of k(|x-a|) = k(max(r, |a|)) = -1/r here
    assert spherical_mean(U, r).value == pytest.approx(-1.0 / r, abs=1e-8)
    rho = math.hypot(0.4, 0.3)
    assert spherical_mean(U, 0.3).value == pytest.approx(-1.0 / rho, abs=1e-8)


def test_sup_on_sphere_anchors():
    f = _mero(zeros=[(0j, 1)])
    U = f.to_delta_subharmonic()
    assert sup_on_sphere(U, 3.0).value == pytest.approx(math.log(3.0), abs=1e-8)
    g = _mero(zeros=[(1 + 0j, 1), (-1 + 0j, 1)])  # (z-1)(z+1)
    Ug = g.to_delta_subharmonic()
    # max |z^2 - 1| on |z| = 2 is 5 (at z = +-2i)
    assert sup_on_sphere(Ug, 2.0).value == pytest.approx(math.log(5.0), abs=1e-7)
    const = _mero(unit=1.0)
    assert sup_on_sphere(const.to_delta_subharmonic(), 1.0).value == pytest.approx(0.0)


def test_nevanlinna_m_anchors():
    f = _mero(zeros=[(0j, 1)])
    assert nevanlinna_m(f, 2.0).value == pytest.approx(math.log(2.0), abs=1e-10)
    assert nevanlinna_m(f, 0.5).value == pytest.approx(0.0, abs=1e-12)
    g = _mero(poles=[(1 + 0j, 1)])  # 1/(z-1)
    # oracle: dense trapezoid of ln^+ |f| on the circle
    th = 2 * math.pi * np.arange(1 << 18) / (1 << 18)
    oracle = float(np.mean(np.maximum(g.log_abs(2.0 * np.exp(1j * th)), 0.0)))
    assert nevanlinna_m(g, 2.0).value == pytest.approx(oracle, abs=1e-7)


def test_nevanlinna_N_anchors():
    f = _mero(poles=[(0j, 1)])
    assert nevanlinna_N(f, math.e).value == pytest.approx(1.0)
    g = _mero(poles=[(1 + 0j, 1)])
    assert nevanlinna_N(g, 2.0).value == pytest.approx(math.log(2.0))
    # cross-check against integrated counting of the pole measure
    ctx = DimensionContext(2)
    pole_measure = BorelMeasure((Atom((1.0, 0.0), 1.0),))
    assert nevanlinna_N(g, 2.0).value == pytest.approx(
        integrated_counting(ctx, pole_measure, 0.0, 2.0), abs=1e-14)
    entire = _mero(zeros=[(0.5 + 0j, 1)])
    assert nevanlinna_N(entire, 3.0).value == 0.0
    assert nevanlinna_N(f, 0.0).value == -math.inf
    assert nevanlinna_N(entire, 0.0).value == 0.0


def test_nevanlinna_T_anchors():
    f = _mero(zeros=[(0j, 1)])
    assert nevanlinna_T(f, math.e).value == pytest.approx(1.0, abs=1e-10)
    g = _mero(poles=[(0j, 1)])
    assert nevanlinna_T(g, math.e).value == pytest.approx(1.0, abs=1e-10)
    h = _mero(zeros=[(1 + 0j, 1)], poles=[(-1 + 0j, 1)])
    expected = nevanlinna_m(h, 3.0).value + math.log(3.0)
    assert nevanlinna_T(h, 3.0).value == pytest.approx(expected, abs=1e-9)


def test_difference_characteristic_nonnegative_and_infinite_at_loaded_origin():
    f = _mero(zeros=[(0j, 1)], poles=[(1 + 0j, 1)])
    U = f.to_delta_subharmonic()
    rec = difference_characteristic(U, 1.0, 2.0)
    assert rec.value >= -rec.error_estimate
    g = _mero(poles=[(0j, 1)])
    Ug = g.to_delta_subharmonic()
    assert difference_characteristic(Ug, 0.0, 2.0).value == math.inf


def test_difference_characteristic_zero_when_negative():
    # U <= 0 everywhere with no negative charge: both summands vanish
    f = _mero(zeros=[(0j, 1)], unit=0.1)  # |f| = |z|/10 <= 1 on |z| <= 2
    U = f.to_delta_subharmonic()
    rec = difference_characteristic(U, 1.0, 2.0)
    assert rec.value == pytest.approx(0.0, abs=1e-12)


def test_bridge_identity_csTTNN():
    # T(R, f) - N(r, f) = T_{log|f|}(r, R) at (r, R) = (1, 3)
    f = _mero(zeros=[(0j, 1)], poles=[(1 + 0j, 1)])
    U = f.to_delta_subharmonic()
    lhs = nevanlinna_T(f, 3.0, tol=1e-10).value - nevanlinna_N(f, 1.0).value
    rhs = difference_characteristic(U, 1.0, 3.0, tol=1e-10).value
    assert lhs == pytest.approx(rhs, abs=1e-7)


def test_bridge_identities_random_rational():
    rng = random.Random(43)
    for _ in range(15):
        f = _random_rational(rng)
        U = f.to_delta_subharmonic()
        r = rng.uniform(0.3, 1.5)
        R = r * rng.uniform(1.5, 3.0)
        # m(r, f) = C_{ln^+|f|}(r)
        m_val = nevanlinna_m(f, R, tol=1e-10).value
        c_val = spherical_mean(U, R, "positive", tol=1e-10).value
        assert m_val == pytest.approx(c_val, abs=1e-8)
        # N(R, f) - N(r, f) = N_{charge^-}(r, R)
        ctx = DimensionContext(2)
        pole_measure = BorelMeasure(
            tuple(Atom((b.real, b.imag), float(n)) for b, n in f.poles), 2)
        lhs = nevanlinna_N(f, R).value - nevanlinna_N(f, r).value
        rhs = integrated_counting(ctx, pole_measure, r, R)
        assert lhs == pytest.approx(rhs, abs=1e-12)
        # T(R, f) - N(r, f) = T_U(r, R)
        bridge_lhs = nevanlinna_T(f, R, tol=1e-10).value - nevanlinna_N(f, r).value
        bridge_rhs = difference_characteristic(U, r, R, tol=1e-10).value
        assert bridge_lhs == pytest.approx(bridge_rhs, abs=1e-7)


def test_bridge_sup_and_T_forms():
    rng = random.Random(47)
    for _ in range(8):
        f = _random_rational(rng)
        U = f.to_delta_subharmonic()
        r = rng.uniform(0.4, 1.3)
        R = r * rng.uniform(1.5, 2.5)
        # ln M(r, f) = M_{ln|f|}(r): oracle is a dense scan of |f| followed by
        # a local rescan around the argmax
        sup_rec = sup_on_sphere(U, r)
        n = 1 << 15
        th = 2 * math.pi * np.arange(n) / n
        scan = f.log_abs(r * np.exp(1j * th))
        i = int(np.argmax(scan))
        local = th[i] + (2 * math.pi / n) * np.linspace(-1.0, 1.0, 20001)
        dense = max(float(np.max(scan)), float(np.max(f.log_abs(r * np.exp(1j * local)))))
        assert sup_rec.value == pytest.approx(dense, abs=1e-6)
        assert sup_rec.value >= dense - 1e-7  # a refined lower bound of the sup
        # T(R,f) - T(r,f) = C_{U^+}(R) - C_{U^+}(r) + N_{charge^-}(r, R)
        lhs = nevanlinna_T(f, R, tol=1e-10).value - nevanlinna_T(f, r, tol=1e-10).value
        ctx = DimensionContext(2)
        pole_measure = BorelMeasure(
            tuple(Atom((b.real, b.imag), float(n)) for b, n in f.poles), 2)
        rhs = (spherical_mean(U, R, "positive", tol=1e-10).value
               - spherical_mean(U, r, "positive", tol=1e-10).value
               + integrated_counting(ctx, pole_measure, r, R))
        assert lhs == pytest.approx(rhs, abs=1e-7)


def test_cross_form_oracle_random_rational():
    rng = random.Random(44)
    for _ in range(10):
        f = _random_rational(rng)
        U = f.to_delta_subharmonic()
        r = rng.uniform(0.3, 1.2)
        R = r * rng.uniform(1.6, 3.2)
        a = difference_characteristic(U, r, R, tol=1e-10)
        b = difference_characteristic_canonical(U, r, R, tol=1e-10)
        scale = max(1.0, abs(a.value))
        assert abs(a.value - b.value) / scale < 1e-7


def test_poisson_jensen_privalov_consistency():
    # C_{v*}(R) - C_{v*}(r) = N_{charge_v}(r, R) for the potential model
    rng = random.Random(45)
    ctx = DimensionContext(2)
    for _ in range(8):
        atoms = tuple(Atom((rng.uniform(-1, 1), rng.uniform(-1, 1)),
                           rng.uniform(0.2, 1.5)) for _ in range(3))
        nu = BorelMeasure(atoms)
        v = SubharmonicFn(2, None, nu)
        V = DeltaSubharmonicFn(v, SubharmonicFn(2, None, BorelMeasure((), 2)))
        r = rng.uniform(1.6, 2.0)
        R = rng.uniform(2.5, 4.0)
        lhs = (spherical_mean(V, R, tol=1e-10).value
               - spherical_mean(V, r, tol=1e-10).value)
        rhs = integrated_counting(ctx, nu, r, R)
        assert lhs == pytest.approx(rhs, abs=1e-7)


def test_canonical_with_harmonic_negative_part():
    # v* harmonic-free, charge^- = 0: canonical T reduces to C_{U^+}(R)
    f = _mero(zeros=[(0.5 + 0j, 1)], exponent=(0.2 + 0j,))
    U = f.to_delta_subharmonic()
    r, R = 0.8, 2.0
    rec_def = difference_characteristic(U, r, R, tol=1e-10)
    rec_can = difference_characteristic_canonical(U, r, R, tol=1e-10)
    c_plus = spherical_mean(U, R, "positive", tol=1e-10)
    assert rec_def.value == pytest.approx(c_plus.value, abs=1e-10)
    assert rec_can.value == pytest.approx(c_plus.value, abs=5e-8)


def test_difference_characteristic_3d():
    u = SubharmonicFn(3, AffineHarmonic(0.4, (0.1, 0.0, -0.05)),
                      BorelMeasure((Atom((0.3, 0.2, -0.1), 0.8),), 3))
    v = SubharmonicFn(3, None, BorelMeasure((Atom((-0.5, 0.1, 0.4), 0.6),), 3))
    U = DeltaSubharmonicFn(u, v)
    r, R = 1.0, 2.0
    a = difference_characteristic(U, r, R, tol=1e-9)
    b = difference_characteristic_canonical(U, r, R, tol=1e-9)
    assert a.value == pytest.approx(b.value, abs=1e-6)
    assert a.value >= -a.error_estimate


def test_domain_errors():
    f = _mero(zeros=[(0j, 1)])
    U = f.to_delta_subharmonic()
    with pytest.raises(ValueError):
        difference_characteristic(U, 2.0, 1.0)
    with pytest.raises(ValueError):
        difference_characteristic_canonical(U, 0.0, 1.0)
    with pytest.raises(ValueError):
        nevanlinna_m(f, 0.0)
    with pytest.raises(ValueError):
        spherical_mean(U, -1.0)
    with pytest.raises(ValueError):
        spherical_mean(U, 1.0, "bogus")


def test_cross_form_with_continuous_charges():
    # positive charge on a full circle, negative charge atomic plus a
    # segment: exercises the quadrature route of the integrated counting
    # function and the potential closed forms inside both T_U computations
    from deltasubh.measures import UniformArc, UniformSegment

    u = SubharmonicFn(2, HarmonicPolynomial((0.2 + 0j,)), BorelMeasure((
        UniformArc((0.1, 0.0), 0.6, 0.0, 2 * math.pi, 1.2),)))
    v = SubharmonicFn(2, None, BorelMeasure((
        Atom((-0.8, 0.4), 0.7),
        UniformSegment((0.2, -0.9), (0.7, -0.4), 0.5),)))
    U = DeltaSubharmonicFn(u, v)
    r, R = 1.4, 3.0
    a = difference_characteristic(U, r, R, tol=1e-9)
    b = difference_characteristic_canonical(U, r, R, tol=1e-9)
    assert a.value == pytest.approx(b.value, abs=1e-6)
    assert a.value >= -a.error_estimate
    # Jensen route for C_U(R): mean = u(0) - v(0) + N_{plus}(0,R) - N_{minus}(0,R)
    ctx = DimensionContext(2)
    jensen = (u.value((0.0, 0.0)) - v.value((0.0, 0.0))
              + integrated_counting(ctx, u.riesz, 0.0, R)
              - integrated_counting(ctx, v.riesz, 0.0, R))
    assert spherical_mean(U, R, tol=1e-9).value == pytest.approx(jensen, abs=1e-6)


def test_higher_dimensions_accepted_but_quadrature_refuses():
    # formula-level support for d > 3; sphere quadrature refuses it
    ctx5 = DimensionContext(5)
    assert ctx5.d_hat == 3
    u = SubharmonicFn(5, AffineHarmonic(0.1, (0.0,) * 5),
                      BorelMeasure((Atom((0.2, 0.0, 0.0, 0.0, 0.0), 1.0),), 5))
    U = DeltaSubharmonicFn(u, SubharmonicFn(5, None, BorelMeasure((), 5)))
    with pytest.raises(ValueError):
        spherical_mean(U, 1.0)
    with pytest.raises(ValueError):
        sup_on_sphere(U, 1.0)


def test_proposition_proT_monotone_convex_grids():
    # increasing and convex against k(R) in the second argument; decreasing
    # and concave against k(r) in the first
    rng = random.Random(46)
    ctx = DimensionContext(2)
    for _ in range(5):
        f = _random_rational(rng)
        U = f.to_delta_subharmonic()
        r = 0.4
        Rs = np.linspace(1.2, 3.0, 12)
        vals = [difference_characteristic(U, r, float(R), tol=1e-10).value
                for R in Rs]
        ks = [float(kernel(ctx, float(R))) for R in Rs]
        assert all(b >= a - 1e-7 for a, b in zip(vals, vals[1:]))
        slopes = [(v2 - v1) / (k2 - k1)
                  for v1, v2, k1, k2 in zip(vals, vals[1:], ks, ks[1:])]
        assert all(s2 >= s1 - 1e-6 for s1, s2 in zip(slopes, slopes[1:]))
        rs = np.linspace(0.2, 1.0, 12)
        vals_r = [difference_characteristic(U, float(rr), 3.5, tol=1e-10).value
                  for rr in rs]
        ks_r = [float(kernel(ctx, float(rr))) for rr in rs]
        assert all(b <= a + 1e-7 for a, b in zip(vals_r, vals_r[1:]))
        slopes_r = [(v2 - v1) / (k2 - k1)
                    for v1, v2, k1, k2 in zip(vals_r, vals_r[1:], ks_r, ks_r[1:])]
        assert all(s2 <= s1 + 1e-6 for s1, s2 in zip(slopes_r, slopes_r[1:]))
