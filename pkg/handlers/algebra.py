"""
Algebra commands: algebra-info, k2s-check, enumerate, scan.
"""
from __future__ import annotations

import argparse
import logging

from sympy import isprime

from arith.quatalg import (
    elliptic_obstruction,
    enumerate_norm_elements,
    is_division_certified,
    k2s_check,
    standard_order,
)
from config import Settings
from geometry.hyp3 import gamma_scan
from handlers.inputs import params_of
from handlers.render import render_order, render_quaternion, render_rat

logger = logging.getLogger(__name__)


def _gate(a: int, b: int) -> dict:
    result = k2s_check(a, b)
    info = {
        "member": result.member,
        "symbols": list(result.symbols) if result.symbols else None,
        "reasons": list(result.reasons),
        "division": is_division_certified(a, b).value,
    }
    if b > 3 and isprime(b):
        info["elliptic_obstruction"] = elliptic_obstruction(a, b)
    return info


def run_k2s_check(args: argparse.Namespace, settings: Settings) -> dict:
    return _gate(settings.a, settings.b)


def run_algebra_info(args: argparse.Namespace, settings: Settings) -> dict:
    params = params_of(settings)
    return {
        "a": params.a,
        "b": params.b,
        "order": settings.order,
        "I0": render_order(standard_order(params)),
        "gate": _gate(params.a, params.b),
    }


def run_enumerate(args: argparse.Namespace, settings: Settings) -> dict:
    order = standard_order(params_of(settings))
    elements = enumerate_norm_elements(order, args.norm, settings.eta_norm_bound, args.primitive)
    return {
        "norm": args.norm,
        "eta_norm_bound": render_rat(settings.eta_norm_bound),
        "primitive_only": args.primitive,
        "count": len(elements),
        "elements": [render_quaternion(alpha) for alpha in elements],
    }


def run_scan(args: argparse.Namespace, settings: Settings) -> dict:
    scan = gamma_scan(params_of(settings), settings.eta_norm_bound)
    return {
        "eta_norm_bound": render_rat(settings.eta_norm_bound),
        "total": scan["total"],
        "counts": scan["counts"],
        "exceptional": [render_quaternion(g) for g in scan["exceptional"]],
    }
