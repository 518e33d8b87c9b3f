"""
Unit tests for the upper half-space model (geometry/hyp3.py).
"""
from __future__ import annotations

from fractions import Fraction

import pytest

from arith.exact import QuadElem
from arith.quatalg import AlgebraParams, Mat2, Quaternion
from errors import DomainError, UnsupportedError
from geometry.hyp3 import (
    BoundaryPoint,
    Circle,
    Empty,
    Equal,
    FixedGeodesic,
    GeodesicDesc,
    HalfPlane,
    HalfSphere,
    IsomTag,
    K1Point,
    Line,
    Point3,
    act,
    act_form,
    classify,
    f_check,
    f_invariant,
    fixed_set,
    gamma_scan,
    geodesic_from_endpoints,
    image_of_trace,
    is_type_s0,
    itgs_intersect,
    mobius,
    psi_map,
    s0,
    trace_contains,
)
from tests.conftest import quad, random_quaternion


def mat(a, b, c, d) -> Mat2:
    return Mat2.from_rows(((a, b), (c, d)), -2)


INVERSION = mat(0, -1, 1, 0)


class TestAction:
    def test_is_an_action(self, params, rng):
        x = Point3(quad(1, 2), 3)
        for _ in range(15):
            g = random_quaternion(rng, params)
            h = random_quaternion(rng, params)
            assert act(g * h, x) == act(g, act(h, x))

    def test_translation(self):
        x = Point3.from_t(quad(0, 1), 2)
        assert act(mat(1, 5, 0, 1), x) == Point3(quad(5, 1), 4)

    def test_inversion_of_unit_point(self):
        x = Point3(quad(0), 1)
        assert act(INVERSION, x) == x

    def test_rational_height(self):
        assert Point3(quad(0), Fraction(9, 4)).t == Fraction(3, 2)
        assert Point3(quad(0), 2).t is None

    def test_bad_points(self):
        with pytest.raises(DomainError):
            Point3(quad(0), 0)
        with pytest.raises(UnsupportedError):
            Point3(QuadElem(0, 0, 2), 1)

    def test_mobius_infinity(self):
        assert mobius(mat(1, 1, 0, 1), None) is None
        assert mobius(INVERSION, quad(0)) is None
        assert mobius(INVERSION, None) == quad(0)


class TestClassify:
    def test_hyperbolic(self, gamma01):
        kind = classify(gamma01)
        assert kind.tag is IsomTag.HYPERBOLIC
        assert kind.trace_sq == quad(400)

    def test_identity(self, params):
        assert classify(Quaternion.scalar(-1, params)).tag is IsomTag.IDENTITY

    def test_parabolic(self):
        assert classify(mat(1, 1, 0, 1)).tag is IsomTag.PARABOLIC

    def test_elliptic(self):
        assert classify(mat(quad(0, 1), 1, 0, quad(0, -1))).tag is IsomTag.ELLIPTIC

    def test_non_real_trace_is_hyperbolic(self):
        assert classify(mat(quad(1, 1), 0, 0, 1)).tag is IsomTag.HYPERBOLIC

    def test_zero_determinant(self):
        with pytest.raises(DomainError):
            classify(mat(1, 1, 1, 1))


class TestFixedSets:
    def test_axis_of_witness(self, gamma01):
        axis = fixed_set(gamma01)
        assert axis == GeodesicDesc((quad(1), quad(0, Fraction(-2, 13)), quad(Fraction(-1, 13))))
        assert axis.discriminant() == quad(Fraction(44, 169))

    def test_axis_is_invariant(self, gamma01):
        axis = fixed_set(gamma01)
        assert act_form(gamma01, axis) == axis

    def test_elliptic_vertical_foot(self):
        fixed = fixed_set(mat(quad(0, 1), 1, 0, quad(0, -1)))
        assert fixed == FixedGeodesic(quad(0, Fraction(1, 4)), None, None)

    def test_inversion_fixes_unit_semicircle(self):
        assert fixed_set(INVERSION) == FixedGeodesic(quad(0), Fraction(1), quad(0, 1))

    def test_negative_determinant_uses_real_direction(self, params):
        # Ω has norm −13 and trace 0; its endpoints ±1/√13 are real
        omega = Quaternion.of(0, 1, params)
        assert fixed_set(omega) == FixedGeodesic(quad(0), Fraction(1, 13), quad(1))

    @pytest.mark.parametrize(
        "g",
        [
            INVERSION,
            mat(1, -1, 1, 0),
            mat(quad(0, 1), 1, 1, 0),
            mat(quad(0, 1), 1, 0, quad(0, -1)),
        ],
    )
    def test_sample_points_are_fixed(self, g):
        for x in fixed_set(g).sample_points():
            assert act(g, x) == x

    def test_traceless_quaternions_fix_their_geodesic(self, params, rng):
        checked = 0
        while checked < 40:
            xi = quad(0, rng.randint(-6, 6))
            eta = quad(rng.randint(-6, 6), rng.randint(-6, 6))
            if eta.is_zero():
                continue
            g = Quaternion.of(xi, eta, params)
            assert classify(g).tag is IsomTag.ELLIPTIC
            points = fixed_set(g).sample_points()
            assert len(points) == 3
            assert all(act(g, x) == x for x in points)
            checked += 1

    def test_parabolic_points(self):
        assert fixed_set(mat(1, 1, 0, 1)) == BoundaryPoint(None)
        assert fixed_set(mat(1, 0, 1, 1)) == BoundaryPoint(quad(0))

    def test_identity_has_no_fixed_set(self, params):
        with pytest.raises(DomainError):
            fixed_set(Quaternion.scalar(1, params))


class TestGeodesics:
    def test_vertical(self):
        geo = geodesic_from_endpoints(quad(0), None)
        assert geo.form == (quad(0), quad(1), quad(0))
        assert geo.contains_endpoint(None)
        assert geo.contains_endpoint(quad(0))

    def test_finite_endpoints(self):
        geo = geodesic_from_endpoints(quad(1), quad(-1))
        assert geo.form == (quad(1), quad(0), quad(-1))
        assert not geo.contains_endpoint(None)

    def test_same_endpoint(self):
        with pytest.raises(DomainError):
            geodesic_from_endpoints(quad(1), quad(1))

    def test_degenerate_form(self):
        with pytest.raises(DomainError):
            GeodesicDesc.from_form(quad(0), quad(0), quad(1))


class TestTraces:
    def test_line_foot(self):
        line = Line.through(quad(3, 1), quad(1))
        assert line == Line(quad(0, 1), quad(1))

    def test_raw_lines_are_normalized(self):
        assert Line(quad(3, 1), quad(2)) == Line(quad(-5, 1), quad(-1))
        assert Line(quad(3, 1), quad(2)).point == quad(0, 1)
        assert Line(quad(1, 1), quad(0, 3)).direction == quad(0, 1)

    def test_contains(self):
        real_axis = Line.through(quad(0), quad(1))
        assert trace_contains(real_axis, quad(5))
        assert trace_contains(real_axis, None)
        assert not trace_contains(real_axis, quad(0, 1))
        assert trace_contains(Circle(quad(0), 3), quad(1, 1))
        assert not trace_contains(Circle(quad(0), 3), None)

    def test_translation_keeps_real_axis(self):
        real_axis = Line.through(quad(0), quad(1))
        assert image_of_trace(mat(1, 1, 0, 1), real_axis) == real_axis

    def test_inversion_of_circles(self):
        assert image_of_trace(INVERSION, Circle(quad(0), 1)) == Circle(quad(0), 1)
        assert image_of_trace(INVERSION, Circle(quad(2), 1)) == Circle(quad(Fraction(-2, 3)), Fraction(1, 9))

    def test_circle_through_pole(self):
        image = image_of_trace(INVERSION, Circle(quad(1), 1))
        assert image == Line(quad(Fraction(-1, 2)), quad(0, 1))

    def test_s0(self, params):
        sphere = s0(params)
        assert sphere == HalfSphere(Circle(quad(0), Fraction(1, 13)))
        assert is_type_s0(sphere, params)
        assert not is_type_s0(HalfSphere(Circle(quad(0), 1)), params)

    def test_norm_one_elements_fix_s0(self, params, norm_one_elements, rng):
        trace = s0(params).trace
        for gamma in norm_one_elements:
            assert image_of_trace(gamma, trace) == trace
        for _ in range(1000):
            gamma = rng.choice(norm_one_elements) * rng.choice(norm_one_elements)
            assert image_of_trace(gamma, trace) == trace

    def test_any_element_fixes_s0_trace(self, params, rng):
        # on |z|² = 1/b, z̄ = 1/(bz) gives |bη̄z + ξ̄|² = b·|ξz + η|²
        trace = s0(params).trace
        for _ in range(300):
            alpha = random_quaternion(rng, params)
            assert image_of_trace(alpha, trace) == trace

    def test_closure_element_fixes_s0(self, params):
        alpha3 = Quaternion.of(quad(1, 1), 0, params)
        alpha11 = Quaternion.of(quad(3, 1), 0, params)
        reduced = alpha11.conj() * alpha3
        trace = s0(params).trace
        assert image_of_trace(reduced, trace) == trace

    def test_bad_circle(self):
        with pytest.raises(DomainError):
            Circle(quad(0), 0)


class TestIntersections:
    def test_equal(self, params):
        assert itgs_intersect(s0(params), s0(params)) == Equal()

    def test_disjoint_spheres(self):
        s1 = HalfSphere(Circle(quad(0), 1))
        s2 = HalfSphere(Circle(quad(10), 1))
        assert itgs_intersect(s1, s2) == Empty()

    def test_concentric_spheres(self):
        assert itgs_intersect(HalfSphere(Circle(quad(0), 1)), HalfSphere(Circle(quad(0), 4))) == Empty()

    def test_crossing_spheres(self):
        s1 = HalfSphere(Circle(quad(0), 1))
        s2 = HalfSphere(Circle(quad(1), 1))
        assert itgs_intersect(s1, s2) == GeodesicDesc((quad(1), quad(-1), quad(1)))

    def test_sphere_and_plane(self):
        sphere = HalfSphere(Circle(quad(0), 1))
        plane = HalfPlane(Line.through(quad(0), quad(1)))
        expected = GeodesicDesc((quad(1), quad(0), quad(-1)))
        assert itgs_intersect(sphere, plane) == expected
        assert itgs_intersect(plane, sphere) == expected

    def test_planes(self):
        p1 = HalfPlane(Line.through(quad(0), quad(1)))
        p2 = HalfPlane(Line.through(quad(0), quad(0, 1)))
        assert itgs_intersect(p1, p2) == GeodesicDesc((quad(0), quad(1), quad(0)))

    def test_parallel_planes(self):
        p1 = HalfPlane(Line.through(quad(0), quad(1)))
        p2 = HalfPlane(Line.through(quad(0, 1), quad(1)))
        assert itgs_intersect(p1, p2) == Empty()


class TestPsi:
    def test_lands_on_s0(self, norm_one_elements, rng):
        products = [rng.choice(norm_one_elements) * rng.choice(norm_one_elements) for _ in range(1000)]
        for gamma in [*norm_one_elements, *products]:
            x = psi_map(gamma)
            assert x.z.norm() + x.t_sq == Fraction(1, 13)

    def test_witness_value(self, gamma01):
        x = psi_map(gamma01)
        assert x.z == quad(Fraction(60, 235), Fraction(18, 235))
        assert x.t_sq == Fraction(1, 13 * 235 * 235)

    def test_needs_norm_one(self, params):
        with pytest.raises(DomainError):
            psi_map(Quaternion.of(quad(1, 1), 0, params))


class TestRealFieldInvariant:
    @pytest.fixture
    def real_params(self) -> AlgebraParams:
        return AlgebraParams(2, 3)

    @pytest.fixture
    def point(self) -> K1Point:
        return K1Point(QuadElem(0, 0, 2), QuadElem(1, 0, 2), QuadElem(1, 0, 2))

    def test_positive_norm_preserves_f(self, real_params, point):
        g = Quaternion.of(2, 1, real_params)
        assert g.norm() == 1
        assert f_check(g, point)

    def test_negative_norm_flips_f(self, real_params, point):
        g = Quaternion.of(1, 1, real_params)
        assert g.norm() == -2
        assert not f_check(g, point)

    def test_value(self, point):
        assert f_invariant(point) == QuadElem(1, 0, 2)

    def test_imaginary_points_rejected(self):
        with pytest.raises(UnsupportedError):
            f_invariant(Point3(quad(0), 1))

    def test_needs_real_field(self):
        with pytest.raises(UnsupportedError):
            K1Point(quad(0), quad(1), quad(1))


class TestScan:
    def test_no_torsion_in_class(self, params):
        scan = gamma_scan(params, 100)
        assert scan["total"] > 2
        assert scan["exceptional"] == []
        assert scan["counts"]["Identity"] == 2
        assert scan["counts"]["Hyperbolic"] == scan["total"] - 2
