import math
import random

import numpy as np
import pytest

from deltasubh.measures import Atom, BorelMeasure, UniformArc, UniformBall, UniformSegment
from deltasubh.potentials import (
    AffineHarmonic,
    DeltaSubharmonicFn,
    HarmonicPolynomial,
    MeromorphicFn,
    SubharmonicFn,
    UnsupportedModelError,
    canonical_representation,
    evaluate,
    jordan_decomposition,
    positive_part,
    potential_values,
    product,
)
from deltasubh.quadrature import integrate_interval


def _mero(zeros=(), poles=(), unit=1.0, exponent=()):
    return MeromorphicFn(tuple(zeros), tuple(poles), unit, tuple(exponent))


def test_evaluate_anchors():
    f = _mero(zeros=[(0j, 1)])          # f(z) = z
    U = f.to_delta_subharmonic()
    assert evaluate(U, (2.0, 0.0)) == pytest.approx(math.log(2.0))
    g = _mero(poles=[(0j, 1)])          # f(z) = 1/z
    V = g.to_delta_subharmonic()
    assert evaluate(V, (0.0, 0.0)) == math.inf


def test_evaluate_polar_marker_and_cancellation():
    # (z-1)/(z-1): charge cancels in the Jordan decomposition; at z=1 the
    # raw pair is (-inf) - (-inf), the polar marker
    f = _mero(zeros=[(1 + 0j, 1)])
    g = _mero(poles=[(1 + 0j, 1)])
    u = f.to_delta_subharmonic().u
    v = g.to_delta_subharmonic().v
    U = DeltaSubharmonicFn(SubharmonicFn(2, None, u.riesz),
                           SubharmonicFn(2, None, v.riesz))
    assert evaluate(U, (1.0, 0.0)) is None
    assert evaluate(U, (0.3, -0.8)) == pytest.approx(0.0, abs=1e-14)
    plus, minus = jordan_decomposition(U)
    assert plus.mass == 0.0 and minus.mass == 0.0


def test_positive_part_anchors():
    f = _mero(zeros=[(0j, 1)])
    U = f.to_delta_subharmonic()
    assert positive_part(U, (0.5, 0.0)) == 0.0
    assert positive_part(U, (math.e, 0.0)) == pytest.approx(1.0)
    assert positive_part(U, (0.0, 0.0)) == 0.0  # (-inf)^+ = 0


def test_jordan_decomposition_examples():
    f = _mero(zeros=[(0j, 1)], poles=[(1 + 0j, 1)])  # z/(z-1)
    plus, minus = jordan_decomposition(f.to_delta_subharmonic())
    assert [(a.point, a.weight) for a in plus.atoms] == [((0.0, 0.0), 1.0)]
    assert [(a.point, a.weight) for a in minus.atoms] == [((1.0, 0.0), 1.0)]

    # atom cancellation: 2 delta_0 minus delta_0
    u = SubharmonicFn(2, None, BorelMeasure((Atom((0.0, 0.0), 2.0),)))
    v = SubharmonicFn(2, None, BorelMeasure((Atom((0.0, 0.0), 1.0),)))
    plus, minus = jordan_decomposition(DeltaSubharmonicFn(u, v))
    assert [(a.point, a.weight) for a in plus.atoms] == [((0.0, 0.0), 1.0)]
    assert minus.mass == 0.0

    g = _mero(poles=[(0j, 2)])  # 1/z^2
    plus, minus = jordan_decomposition(g.to_delta_subharmonic())
    assert plus.mass == 0.0
    assert [(a.point, a.weight) for a in minus.atoms] == [((0.0, 0.0), 2.0)]


def test_jordan_supports_disjoint():
    rng = random.Random(31)
    for _ in range(10):
        zeros = [(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.randint(1, 2))
                 for _ in range(3)]
        poles = [(complex(rng.uniform(-1, 1), rng.uniform(-1, 1)), rng.randint(1, 2))
                 for _ in range(3)]
        f = _mero(zeros=zeros, poles=poles)
        plus, minus = jordan_decomposition(f.to_delta_subharmonic())
        pp = {a.point for a in plus.atoms}
        mm = {a.point for a in minus.atoms}
        assert not pp & mm


def test_jordan_identical_continuous_cancel_and_partial_overlap_raises():
    seg = UniformSegment((0.0, 0.0), (1.0, 0.0), 1.0)
    seg_heavier = UniformSegment((0.0, 0.0), (1.0, 0.0), 1.5)
    u = SubharmonicFn(2, None, BorelMeasure((seg_heavier,)))
    v = SubharmonicFn(2, None, BorelMeasure((seg,)))
    plus, minus = jordan_decomposition(DeltaSubharmonicFn(u, v))
    assert plus.mass == pytest.approx(0.5)
    assert minus.mass == 0.0

    overlapping = UniformSegment((0.5, 0.0), (1.5, 0.0), 1.0)
    v2 = SubharmonicFn(2, None, BorelMeasure((overlapping,)))
    with pytest.raises(UnsupportedModelError):
        jordan_decomposition(DeltaSubharmonicFn(u, v2))
    # disjoint continuous components on both sides are fine
    far = UniformSegment((0.0, 2.0), (1.0, 2.0), 1.0)
    v3 = SubharmonicFn(2, None, BorelMeasure((far,)))
    plus, minus = jordan_decomposition(DeltaSubharmonicFn(u, v3))
    assert plus.mass == pytest.approx(1.5) and minus.mass == pytest.approx(1.0)


def test_canonical_representation_examples():
    f = _mero(zeros=[(0j, 1)], poles=[(1 + 0j, 1)])
    U = f.to_delta_subharmonic()
    u_star, v_star = canonical_representation(U, 3.0)
    assert [(a.point, a.weight) for a in u_star.riesz.atoms] == [((0.0, 0.0), 1.0)]
    assert [(a.point, a.weight) for a in v_star.riesz.atoms] == [((1.0, 0.0), 1.0)]
    assert v_star.harmonic is None

    # U = (log|z| + Re z) - log|z-1|: harmonic remainder goes to u*
    u = SubharmonicFn(2, HarmonicPolynomial((0j, 1 + 0j)),
                      BorelMeasure((Atom((0.0, 0.0), 1.0),)))
    v = SubharmonicFn(2, None, BorelMeasure((Atom((1.0, 0.0), 1.0),)))
    U2 = DeltaSubharmonicFn(u, v)
    u_star, v_star = canonical_representation(U2, 2.0)
    rng = random.Random(32)
    for _ in range(20):
        x = (rng.uniform(-2, 2), rng.uniform(-2, 2))
        orig = evaluate(U2, x)
        canon = u_star.value(x) - v_star.value(x)
        if orig is None or not math.isfinite(orig):
            continue
        assert canon == pytest.approx(orig, abs=1e-12)


def test_canonical_identity_when_already_canonical():
    f = _mero(zeros=[(0.5 + 0j, 1)], poles=[(-0.5 + 0j, 1)])
    U = f.to_delta_subharmonic()
    u_star, v_star = canonical_representation(U, 2.0)
    assert u_star.riesz == U.u.riesz
    assert v_star.riesz == U.v.riesz


def test_log_modulus_of_product_is_additive():
    rng = random.Random(33)
    f = _mero(zeros=[(0.3 + 0.1j, 1)], poles=[(-0.4 + 0.2j, 2)], unit=1.7,
              exponent=(0.1 + 0j, 0.2 - 0.1j))
    g = _mero(zeros=[(-0.2 - 0.5j, 2)], poles=[(0.6 + 0.6j, 1)], unit=0.5 + 0.5j)
    fg = product(f, g)
    for _ in range(25):
        z = complex(rng.uniform(-2, 2), rng.uniform(-2, 2))
        expected = f.log_abs(np.array([z]))[0] + g.log_abs(np.array([z]))[0]
        got = fg.log_abs(np.array([z]))[0]
        assert got == pytest.approx(expected, abs=1e-12)
    # charges add too
    Uf, Ug, Ufg = (h.to_delta_subharmonic() for h in (f, g, fg))
    pf, mf = jordan_decomposition(Uf)
    pg, mg = jordan_decomposition(Ug)
    pfg, mfg = jordan_decomposition(Ufg)
    assert pfg.mass == pytest.approx(pf.mass + pg.mass)
    assert mfg.mass == pytest.approx(mf.mass + mg.mass)


def test_product_cancels_common_points():
    f = _mero(zeros=[(0.5 + 0j, 1)])
    g = _mero(poles=[(0.5 + 0j, 1)])
    fg = product(f, g)
    assert fg.zeros == () and fg.poles == ()


def test_meromorphic_validation():
    with pytest.raises(ValueError):
        _mero(unit=0.0)
    with pytest.raises(ValueError):
        _mero(zeros=[(1 + 0j, 1)], poles=[(1 + 0j, 1)])
    with pytest.raises(ValueError):
        _mero(exponent=(1, 1, 1, 1, 1, 1))  # degree 5 > 4
    with pytest.raises(ValueError):
        _mero(zeros=[(0j, 0)])


def test_segment_potential_matches_quadrature():
    rng = random.Random(34)
    for d in (2, 3):
        for _ in range(6):
            a = tuple(rng.uniform(-1, 1) for _ in range(d))
            b = tuple(rng.uniform(-1, 1) for _ in range(d))
            if math.dist(a, b) < 0.3:
                continue
            comp = UniformSegment(a, b, rng.uniform(0.5, 2.0))
            mu = BorelMeasure((comp,), d)
            x = np.array([tuple(rng.uniform(-2, 2) for _ in range(d))])
            if d == 2:
                def integrand(s):
                    pts = np.asarray(a)[None, :] + s[:, None] * (
                        np.asarray(b) - np.asarray(a))[None, :]
                    return np.log(np.linalg.norm(pts - x[0], axis=1))
            else:
                def integrand(s):
                    pts = np.asarray(a)[None, :] + s[:, None] * (
                        np.asarray(b) - np.asarray(a))[None, :]
                    return -1.0 / np.linalg.norm(pts - x[0], axis=1)
            oracle = comp.weight * integrate_interval(integrand, 0.0, 1.0, (), 1e-11).value
            got = float(potential_values(mu, x, d)[0])
            assert got == pytest.approx(oracle, abs=1e-9)


def test_full_circle_potential_mean_value():
    comp = UniformArc((0.3, -0.2), 0.7, 0.0, 2 * math.pi, 1.3)
    mu = BorelMeasure((comp,))
    inside = np.array([[0.4, -0.1]])
    outside = np.array([[2.0, 1.0]])
    assert potential_values(mu, inside, 2)[0] == pytest.approx(
        1.3 * math.log(0.7), abs=1e-12)
    q = np.linalg.norm(outside[0] - np.array([0.3, -0.2]))
    assert potential_values(mu, outside, 2)[0] == pytest.approx(
        1.3 * math.log(q), abs=1e-12)


def test_partial_arc_potential_matches_quadrature():
    comp = UniformArc((0.0, 0.0), 1.0, 0.3, 2.1, 2.0)
    mu = BorelMeasure((comp,))
    x = np.array([[0.4, -0.7]])

    def integrand(theta):
        z = x[0, 0] + 1j * x[0, 1] - np.exp(1j * theta)
        return np.log(np.abs(z))

    oracle = 2.0 / comp.width * integrate_interval(
        integrand, 0.3, 2.1, (), 1e-11).value
    assert potential_values(mu, x, 2)[0] == pytest.approx(oracle, abs=1e-9)


def test_ball_potential_closed_forms():
    # d=2 disk: W ln q outside, W (ln rho - 1/2 + q^2/(2 rho^2)) inside
    disk = BorelMeasure((UniformBall((0.0, 0.0), 1.0, 1.0),))
    pts = np.array([[2.0, 0.0], [0.5, 0.0], [0.0, 0.0], [1.0, 0.0]])
    vals = potential_values(disk, pts, 2)
    assert vals[0] == pytest.approx(math.log(2.0))
    assert vals[1] == pytest.approx(-0.5 + 0.125)
    assert vals[2] == pytest.approx(-0.5)
    assert vals[3] == pytest.approx(0.0, abs=1e-14)
    # d=3 ball: -W/q outside, -W (3 rho^2 - q^2)/(2 rho^3) inside
    ball = BorelMeasure((UniformBall((0.0, 0.0, 0.0), 1.0, 1.0),))
    pts3 = np.array([[2.0, 0.0, 0.0], [0.0, 0.0, 0.0], [0.5, 0.0, 0.0]])
    vals3 = potential_values(ball, pts3, 3)
    assert vals3[0] == pytest.approx(-0.5)
    assert vals3[1] == pytest.approx(-1.5)
    assert vals3[2] == pytest.approx(-(3.0 - 0.25) / 2.0)


def test_disk_potential_laplacian_is_density():
    # numerical Laplacian of the d=2 disk potential inside equals
    # 2 pi * density (Riesz normalization 1/(2 pi) Laplacian = density)
    disk = BorelMeasure((UniformBall((0.0, 0.0), 1.0, 1.0),))
    h = 1e-4
    x0 = np.array([0.2, -0.1])
    stencil = np.array([x0, x0 + [h, 0], x0 - [h, 0], x0 + [0, h], x0 - [0, h]])
    v = potential_values(disk, stencil, 2)
    lap = (v[1] + v[2] + v[3] + v[4] - 4 * v[0]) / (h * h)
    density = 1.0 / math.pi  # weight / (pi rho^2)
    assert lap == pytest.approx(2.0 * math.pi * density, rel=1e-4)


def test_segment_potential_on_segment_d2_finite_d3_minus_inf():
    seg2 = BorelMeasure((UniformSegment((-1.0, 0.0), (1.0, 0.0), 1.0),))
    on = np.array([[0.2, 0.0]])
    assert math.isfinite(potential_values(seg2, on, 2)[0])
    seg3 = BorelMeasure((UniformSegment((-1.0, 0.0, 0.0), (1.0, 0.0, 0.0), 1.0),), 3)
    on3 = np.array([[0.2, 0.0, 0.0]])
    assert potential_values(seg3, on3, 3)[0] == -math.inf


def test_representation_equivalence_shared_harmonic():
    # (u + h) - (v + h) evaluates identically to u - v off polar sets
    rng = random.Random(35)
    base_u = SubharmonicFn(2, None, BorelMeasure((Atom((0.2, 0.1), 1.0),)))
    base_v = SubharmonicFn(2, None, BorelMeasure((Atom((-0.4, 0.3), 0.5),)))
    h = HarmonicPolynomial((0.3 + 0j, 0.2 - 0.1j, 0.05j))
    u_shift = SubharmonicFn(2, h, base_u.riesz)
    v_shift = SubharmonicFn(2, h, base_v.riesz)
    U = DeltaSubharmonicFn(base_u, base_v)
    U_shift = DeltaSubharmonicFn(u_shift, v_shift)
    for _ in range(20):
        x = (rng.uniform(-1, 1), rng.uniform(-1, 1))
        a, b = evaluate(U, x), evaluate(U_shift, x)
        if a is None or not math.isfinite(a):
            continue
        assert b == pytest.approx(a, abs=1e-12)


def test_affine_harmonic_d3():
    aff = AffineHarmonic(1.0, (0.5, -0.25, 2.0))
    pts = np.array([[1.0, 2.0, 0.5]])
    assert aff.values(pts)[0] == pytest.approx(1.0 + 0.5 - 0.5 + 1.0)
