"""
The separation command: build the family from the command line, certify a
separating prime, and optionally corroborate it by bounded enumeration.
"""
from __future__ import annotations

import argparse
import logging

from arith.quatalg import standard_order
from config import Settings
from errors import UsageError
from geometry.hyp3 import GeodesicDesc, fixed_set, s0
from geometry.itgs import ClosedItgsCert, construct_halfplane, construct_sphere
from handlers.inputs import (
    params_of,
    parse_circle,
    parse_form,
    parse_pair,
    parse_point,
    parse_quaternion,
)
from handlers.render import render_separation
from separation.corroborate import corroborate
from separation.engine import SearchLimits, SeparationConfig, find_separating_prime

logger = logging.getLogger(__name__)


def limits_of(settings: Settings) -> SearchLimits:
    return SearchLimits(settings.prime_search_bound, settings.hit_prime_bound, settings.eta_norm_bound)


def s0_certificate(params) -> ClosedItgsCert:
    """S⁰ with the P(0,1) element as its hyperbolic witness; S⁰ is fixed by all of Γ_R."""
    witness = construct_halfplane(0, 1, params)
    return ClosedItgsCert(s0(params), witness.gamma, -1, witness.pell)


def build_config(args: argparse.Namespace, settings: Settings) -> SeparationConfig:
    params = params_of(settings)
    a = params.a
    points = tuple(parse_point(p, a) for p in args.point or ())
    geodesics = [parse_form(f, a) for f in args.geodesic or ()]
    for text in args.axis or ():
        axis = fixed_set(parse_quaternion(text, params))
        if not isinstance(axis, GeodesicDesc):
            raise UsageError(f"{text!r} is not hyperbolic, it has no axis")
        geodesics.append(axis)
    # the order of itgs follows the command line: --s0 first when given
    itgs: list[ClosedItgsCert] = []
    if args.s0:
        itgs.append(s0_certificate(params))
    for text in args.halfplane or ():
        t, u = parse_pair(text)
        itgs.append(construct_halfplane(t, u, params))
    for text in args.sphere or ():
        circle = parse_circle(text, a)
        itgs.append(construct_sphere(circle.center, circle.radius_sq, params))
    return SeparationConfig(points, tuple(geodesics), tuple(itgs))


def run_separation(args: argparse.Namespace, settings: Settings) -> dict:
    order = standard_order(params_of(settings))
    config = build_config(args, settings)
    cert = find_separating_prime(config, order, limits_of(settings))
    if args.corroborate:
        report = corroborate(cert, config.family(), order, settings.eta_norm_bound)
        cert = cert.with_corroboration(report)
    return render_separation(cert)
