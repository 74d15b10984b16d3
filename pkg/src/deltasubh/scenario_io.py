"""Scenario JSON parsing, validation and serialization.

Schema (version "1"):

    {
      "schema_version": "1",
      "dimension": 2,
      "function": {"type": "meromorphic",
                   "zeros": [{"point": [x, y], "multiplicity": 1}, ...],
                   "poles": [...],
                   "unit_factor": [re, im],
                   "exponent": [[re, im], ...]}
                | {"type": "delta_subharmonic",
                   "u": {"harmonic": {"poly": [[re, im], ...]}
                                   | {"affine": {"constant": c, "gradient": [...]}},
                         "charge": [<measure components>]},
                   "v": {...}},
      "measure": {"components": [
          {"type": "atom",    "point": [...], "weight": w},
          {"type": "segment", "endpoints": [[...], [...]], "weight": w},
          {"type": "arc",     "center": [...], "radius": rho,
                              "angles": [a0, a1], "weight": w},
          {"type": "ball",    "center": [...], "radius": rho, "weight": w}]},
      "radii": {"r": 2.0, "R": 4.0, "r0": 0.0},
      "tolerances": {"mean": 1e-8, "dini": 1e-6, "sup": 1e-7},
      "seed": 42,
      "scenario_id": "golden"
    }

Validation failures raise ScenarioError with a distinct .code naming the
offending constraint.
"""

from __future__ import annotations

import json
from typing import Union

from .geometry import DimensionContext
from .lab import Scenario, Tolerances
from .measures import Atom, BorelMeasure, UniformArc, UniformBall, UniformSegment
from .potentials import (
    AffineHarmonic,
    DeltaSubharmonicFn,
    HarmonicPolynomial,
    MeromorphicFn,
    SubharmonicFn,
)

__all__ = ["ScenarioError", "parse_scenario", "serialize_scenario"]

SCHEMA_VERSION = "1"


class ScenarioError(ValueError):
    def __init__(self, code: str, message: str):
        super().__init__(f"{code}: {message}")
        self.code = code


def _fail(code: str, message: str):
    raise ScenarioError(code, message)


def _component_from_json(obj: dict, dim: int):
    kind = obj.get("type")
    try:
        weight = float(obj["weight"])
    except (KeyError, TypeError, ValueError):
        _fail("MEASURE_SPEC", f"component missing numeric weight: {obj!r}")
    if weight <= 0:
        _fail("NEGATIVE_WEIGHT", f"component weight must be > 0, got {weight}")
    try:
        if kind == "atom":
            return Atom(tuple(obj["point"]), weight)
        if kind == "segment":
            a, b = obj["endpoints"]
            return UniformSegment(tuple(a), tuple(b), weight)
        if kind == "arc":
            a0, a1 = obj["angles"]
            return UniformArc(tuple(obj["center"]), float(obj["radius"]),
                              float(a0), float(a1), weight)
        if kind == "ball":
            return UniformBall(tuple(obj["center"]), float(obj["radius"]), weight)
    except ScenarioError:
        raise
    except (KeyError, TypeError, ValueError) as exc:
        _fail("MEASURE_SPEC", f"bad {kind} component: {exc}")
    _fail("MEASURE_SPEC", f"unknown component type {kind!r}")


def _component_to_json(comp) -> dict:
    if isinstance(comp, Atom):
        return {"type": "atom", "point": list(comp.point), "weight": comp.weight}
    if isinstance(comp, UniformSegment):
        return {"type": "segment", "endpoints": [list(comp.start), list(comp.end)],
                "weight": comp.weight}
    if isinstance(comp, UniformArc):
        return {"type": "arc", "center": list(comp.center), "radius": comp.radius,
                "angles": [comp.angle_start, comp.angle_end], "weight": comp.weight}
    if isinstance(comp, UniformBall):
        return {"type": "ball", "center": list(comp.center), "radius": comp.radius,
                "weight": comp.weight}
    raise ScenarioError("MEASURE_SPEC", f"unknown component {type(comp).__name__}")


def _complex_from(v) -> complex:
    if isinstance(v, (int, float)):
        return complex(v)
    return complex(float(v[0]), float(v[1]))


def _complex_to(c: complex) -> list:
    return [c.real, c.imag]


def _harmonic_from_json(obj, dim: int):
    if obj is None:
        return None
    if "poly" in obj:
        if dim != 2:
            _fail("FUNCTION_SPEC", "polynomial harmonic parts are d=2 only")
        return HarmonicPolynomial(tuple(_complex_from(c) for c in obj["poly"]))
    if "affine" in obj:
        aff = obj["affine"]
        return AffineHarmonic(float(aff["constant"]),
                              tuple(float(g) for g in aff["gradient"]))
    _fail("FUNCTION_SPEC", f"unknown harmonic part {obj!r}")


def _harmonic_to_json(h):
    if h is None:
        return None
    if isinstance(h, HarmonicPolynomial):
        return {"poly": [_complex_to(c) for c in h.coeffs]}
    return {"affine": {"constant": h.constant, "gradient": list(h.gradient)}}


def _subharmonic_from_json(obj: dict, dim: int) -> SubharmonicFn:
    comps = tuple(_component_from_json(c, dim) for c in obj.get("charge", []))
    return SubharmonicFn(dim, _harmonic_from_json(obj.get("harmonic"), dim),
                         BorelMeasure(comps, dim))


def _function_from_json(obj: dict, dim: int):
    """-> (DeltaSubharmonicFn, MeromorphicFn | None)"""
    kind = obj.get("type")
    if kind == "meromorphic":
        if dim != 2:
            _fail("FUNCTION_SPEC", "meromorphic functions require dimension 2")
        try:
            zeros = tuple((_complex_from(z["point"]), int(z.get("multiplicity", 1)))
                          for z in obj.get("zeros", []))
            poles = tuple((_complex_from(p["point"]), int(p.get("multiplicity", 1)))
                          for p in obj.get("poles", []))
            unit = _complex_from(obj.get("unit_factor", 1.0))
            exponent = tuple(_complex_from(c) for c in obj.get("exponent", []))
            f = MeromorphicFn(zeros, poles, unit, exponent)
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            _fail("FUNCTION_SPEC", str(exc))
        return f.to_delta_subharmonic(), f
    if kind == "delta_subharmonic":
        try:
            u = _subharmonic_from_json(obj["u"], dim)
            v = _subharmonic_from_json(obj["v"], dim)
        except ScenarioError:
            raise
        except (KeyError, TypeError, ValueError) as exc:
            _fail("FUNCTION_SPEC", str(exc))
        return DeltaSubharmonicFn(u, v), None
    _fail("FUNCTION_SPEC", f"unknown function type {kind!r}")


def parse_scenario(data: Union[bytes, str, dict]) -> Scenario:
    """Validated Scenario from UTF-8 JSON (bytes/str) or a decoded dict."""
    if isinstance(data, (bytes, str)):
        try:
            obj = json.loads(data)
        except json.JSONDecodeError as exc:
            raise ScenarioError("JSON_SYNTAX", str(exc)) from exc
    else:
        obj = data
    version = obj.get("schema_version")
    if version != SCHEMA_VERSION:
        _fail("SCHEMA_VERSION", f"unknown schema_version {version!r}")
    dim = obj.get("dimension")
    if not isinstance(dim, int) or dim < 2:
        _fail("DIMENSION", f"dimension must be an integer >= 2, got {dim!r}")
    radii = obj.get("radii") or {}
    try:
        r = float(radii["r"])
        R = float(radii["R"])
    except (KeyError, TypeError, ValueError):
        _fail("RADII_ORDER", "radii must provide numeric r and R")
    if not 0.0 < r < R:
        _fail("RADII_ORDER", f"need 0 < r < R, got r={r}, R={R}")
    r0 = radii.get("r0")
    if r0 is not None:
        r0 = float(r0)
        if not 0.0 <= r0 <= r:
            _fail("RADII_ORDER", f"r0 must lie in [0, r], got {r0}")
    measure_obj = obj.get("measure") or {}
    comps = tuple(_component_from_json(c, dim)
                  for c in measure_obj.get("components", []))
    mu = BorelMeasure(comps, dim)
    if mu.support_radius > r * (1.0 + 1e-12):
        _fail("SUPPORT_OUTSIDE_BALL",
              f"measure support radius {mu.support_radius} exceeds r={r}")
    U, f = _function_from_json(obj.get("function") or {}, dim)
    tol_obj = obj.get("tolerances") or {}
    tolerances = Tolerances(
        mean=float(tol_obj.get("mean", Tolerances.mean)),
        dini=float(tol_obj.get("dini", Tolerances.dini)),
        sup=float(tol_obj.get("sup", Tolerances.sup)),
    )
    return Scenario(
        scenario_id=str(obj.get("scenario_id", "scenario")),
        ctx=DimensionContext(dim),
        U=U, mu=mu, r=r, R=R, f=f, r0=r0,
        tolerances=tolerances,
        seed=obj.get("seed"),
    )


def serialize_scenario(s: Scenario) -> dict:
    """JSON-ready dict; parse_scenario(serialize_scenario(s)) == s."""
    if s.f is not None:
        function = {
            "type": "meromorphic",
            "zeros": [{"point": _complex_to(a), "multiplicity": m}
                      for a, m in s.f.zeros],
            "poles": [{"point": _complex_to(b), "multiplicity": n}
                      for b, n in s.f.poles],
            "unit_factor": _complex_to(s.f.unit_factor),
            "exponent": [_complex_to(c) for c in s.f.exponent],
        }
    else:
        function = {
            "type": "delta_subharmonic",
            "u": {"harmonic": _harmonic_to_json(s.U.u.harmonic),
                  "charge": [_component_to_json(c) for c in s.U.u.riesz.components]},
            "v": {"harmonic": _harmonic_to_json(s.U.v.harmonic),
                  "charge": [_component_to_json(c) for c in s.U.v.riesz.components]},
        }
    radii = {"r": s.r, "R": s.R}
    if s.r0 is not None:
        radii["r0"] = s.r0
    return {
        "schema_version": SCHEMA_VERSION,
        "scenario_id": s.scenario_id,
        "dimension": s.ctx.d,
        "function": function,
        "measure": {"components": [_component_to_json(c) for c in s.mu.components]},
        "radii": radii,
        "tolerances": {"mean": s.tolerances.mean, "dini": s.tolerances.dini,
                       "sup": s.tolerances.sup},
        "seed": s.seed,
    }
