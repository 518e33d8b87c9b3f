"""
JSON renderers: every library value a command returns goes through here, so
rationals always print as "n/d" strings and field elements as "x + y*sqrt(a)".
"""
from __future__ import annotations

from fractions import Fraction
from typing import Any, Optional

from arith.exact import QuadElem, rat_text
from arith.numthy import PellSolution, RationalPellSolution
from arith.quatalg import OrderDesc, Quaternion
from geometry.hyp3 import (
    BoundaryPoint,
    Circle,
    FixedGeodesic,
    GeodesicDesc,
    HalfPlane,
    HalfSphere,
    Line,
    Point3,
)
from geometry.itgs import ClosedItgsCert
from separation.conditions import CorroborationReport, SeparationCertificate


def render_rat(q: Fraction | int) -> str:
    return rat_text(Fraction(q))


def render_quad(e: Optional[QuadElem]) -> Optional[str]:
    return None if e is None else e.render()


def render_quaternion(alpha: Quaternion) -> dict:
    return {"xi": alpha.xi.render(), "eta": alpha.eta.render(), "norm": render_rat(alpha.norm())}


def render_point(x: Point3) -> dict:
    t = x.t
    return {"z": x.z.render(), "t_sq": render_rat(x.t_sq), "t": None if t is None else render_rat(t)}


def render_trace(trace: Line | Circle) -> dict:
    if isinstance(trace, Line):
        return {"line": {"point": trace.point.render(), "direction": trace.direction.render()}}
    return {"circle": {"center": trace.center.render(), "radius_sq": render_rat(trace.radius_sq)}}


def render_itgs(surface: HalfPlane | HalfSphere) -> dict:
    kind = "half-plane" if isinstance(surface, HalfPlane) else "half-sphere"
    return {"kind": kind, "trace": render_trace(surface.trace)}


def render_geodesic(geo: GeodesicDesc) -> dict:
    return {"form": [c.render() for c in geo.form], "discriminant": geo.discriminant().render()}


def render_fixed_set(fixed: Any) -> dict:
    if isinstance(fixed, BoundaryPoint):
        return {"boundary_point": render_quad(fixed.point) or "infinity"}
    if isinstance(fixed, FixedGeodesic):
        if fixed.radius_sq is None:
            return {"vertical_geodesic": {"foot": fixed.center.render()}}
        return {
            "semicircle": {
                "center": fixed.center.render(),
                "radius_sq": render_rat(fixed.radius_sq),
                "direction": render_quad(fixed.direction),
            }
        }
    return {"axis": render_geodesic(fixed)}


def render_pell(pell: PellSolution | RationalPellSolution) -> dict:
    d = pell.d if isinstance(pell, RationalPellSolution) else pell.d_effective
    return {"x": pell.x, "y": pell.y, "d": render_rat(d), "d_effective": pell.d_effective}


def render_closed_cert(cert: ClosedItgsCert) -> dict:
    return {
        "surface": render_itgs(cert.surface),
        "gamma": render_quaternion(cert.gamma),
        "pell": render_pell(cert.pell),
        "epsilon": cert.epsilon,
        "notes": list(cert.notes),
    }


def render_order(order: OrderDesc) -> dict:
    d, d_prime = order.conductors
    return {"basis": [q.render() for q in order.basis], "D": d, "D_prime": d_prime}


def render_report(report: Optional[CorroborationReport]) -> Optional[dict]:
    if report is None:
        return None
    return {
        "bound": render_rat(report.bound),
        "inspected": report.inspected,
        "hits": [{"alpha": render_quaternion(alpha), "target": i} for alpha, i in report.hits],
        "status": report.status,
    }


def render_separation(cert: SeparationCertificate) -> dict:
    return {
        "kind": cert.object_kind.value,
        "conditions": [{"value": v, "symbol": s} for v, s in cert.residue_conditions],
        "ideal_conditions": [{"value": beta.render(), "symbol": s} for beta, s in cert.ideal_conditions],
        "excluded": sorted(cert.excluded_primes),
        "witness": cert.witness_prime,
        "heuristic": cert.heuristic,
        "derivation_log": list(cert.derivation_log),
        "corroboration": render_report(cert.corroboration),
    }
