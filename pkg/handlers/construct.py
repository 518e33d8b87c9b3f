"""
Construction and number-theory commands: construct-halfplane, construct-sphere,
pell, greedy-set, prime-forms, density.
"""
from __future__ import annotations

import argparse
import logging

from arith.numthy import SplitTag, density_estimate, pell_solve, pell_solve_rational
from config import Settings
from errors import UsageError
from geometry.itgs import construct_halfplane, construct_sphere, greedy_distinct_set, prime_form_search
from handlers.inputs import params_of, parse_element, parse_rational
from handlers.render import render_closed_cert, render_pell, render_rat

logger = logging.getLogger(__name__)


def run_construct_halfplane(args: argparse.Namespace, settings: Settings) -> dict:
    return render_closed_cert(construct_halfplane(args.t, args.u, params_of(settings)))


def run_construct_sphere(args: argparse.Namespace, settings: Settings) -> dict:
    params = params_of(settings)
    center = parse_element(args.center, params.a)
    return render_closed_cert(construct_sphere(center, parse_rational(args.radius_sq), params))


def run_pell(args: argparse.Namespace, settings: Settings) -> dict:
    d = parse_rational(args.d)
    if d.denominator == 1:
        return render_pell(pell_solve(int(d)))
    return render_pell(pell_solve_rational(d))


def run_greedy_set(args: argparse.Namespace, settings: Settings) -> dict:
    result = greedy_distinct_set(settings.a, args.t_max)
    return {"a": settings.a, "t_max": args.t_max, "kept": len(result.kept), "excluded": result.excluded}


def run_prime_forms(args: argparse.Namespace, settings: Settings) -> dict:
    values = prime_form_search(settings.a, args.bound)
    return {"a": settings.a, "bound": args.bound, "t": values}


def run_density(args: argparse.Namespace, settings: Settings) -> dict:
    try:
        which = SplitTag(args.which)
    except ValueError as exc:
        raise UsageError(f"--which must be one of {[t.value for t in SplitTag]}") from exc
    value = density_estimate(settings.a, which, args.prime_bound)
    return {"a": settings.a, "which": which.value, "prime_bound": args.prime_bound, "density": render_rat(value)}
