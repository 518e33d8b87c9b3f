"""
Command-line value parsers. Field elements use the "x + y*sqrt(a)" text form;
compound values separate their parts with ";".
"""
from __future__ import annotations

from fractions import Fraction

from arith.exact import QuadElem, parse_quad, rat
from arith.quatalg import AlgebraParams, Quaternion
from config import Settings
from errors import UsageError
from geometry.hyp3 import Circle, GeodesicDesc, Line, Point3


def params_of(settings: Settings) -> AlgebraParams:
    return AlgebraParams(settings.a, settings.b)


def _parts(text: str, count: int, what: str) -> list[str]:
    parts = [p.strip() for p in text.split(";")]
    if len(parts) != count or not all(parts):
        raise UsageError(f"{what} needs {count} ';'-separated parts, got {text!r}")
    return parts


def parse_element(text: str, a: int) -> QuadElem:
    return parse_quad(text, a)


def parse_quaternion(text: str, params: AlgebraParams) -> Quaternion:
    """"xi ; eta"."""
    xi, eta = _parts(text, 2, "quaternion")
    return Quaternion(parse_quad(xi, params.a), parse_quad(eta, params.a), params)


def parse_point(text: str, a: int) -> Point3:
    """"z ; t²"."""
    z, t_sq = _parts(text, 2, "point")
    return Point3(parse_quad(z, a), rat(t_sq))


def parse_circle(text: str, a: int) -> Circle:
    """"center ; radius²"."""
    center, r_sq = _parts(text, 2, "circle")
    return Circle(parse_quad(center, a), rat(r_sq))


def parse_line(text: str, a: int) -> Line:
    """"point ; direction"."""
    point, direction = _parts(text, 2, "line")
    return Line.through(parse_quad(point, a), parse_quad(direction, a))


def parse_form(text: str, a: int) -> GeodesicDesc:
    """"A ; B ; C" for A·z² + B·z + C."""
    return GeodesicDesc.from_form(*(parse_quad(p, a) for p in _parts(text, 3, "form")))


def parse_pair(text: str) -> tuple[int, int]:
    """"t,u"."""
    try:
        t, u = (int(v) for v in text.split(","))
    except ValueError as exc:
        raise UsageError(f"expected 't,u', got {text!r}") from exc
    return t, u


def parse_rational(text: str) -> Fraction:
    return rat(text)
