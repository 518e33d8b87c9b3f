"""
Isometry commands: classify, fixed-points, act, image-trace.
"""
from __future__ import annotations

import argparse

from config import Settings
from errors import UsageError
from geometry.hyp3 import act, classify, fixed_set, image_of_trace
from handlers.inputs import params_of, parse_circle, parse_line, parse_point, parse_quaternion
from handlers.render import render_fixed_set, render_point, render_quaternion, render_trace


def run_classify(args: argparse.Namespace, settings: Settings) -> dict:
    gamma = parse_quaternion(args.element, params_of(settings))
    kind = classify(gamma)
    return {"element": render_quaternion(gamma), "class": kind.tag.value, "trace_sq": kind.trace_sq.render()}


def run_fixed_points(args: argparse.Namespace, settings: Settings) -> dict:
    gamma = parse_quaternion(args.element, params_of(settings))
    return {
        "element": render_quaternion(gamma),
        "class": classify(gamma).tag.value,
        "fixed": render_fixed_set(fixed_set(gamma)),
    }


def run_act(args: argparse.Namespace, settings: Settings) -> dict:
    params = params_of(settings)
    gamma = parse_quaternion(args.element, params)
    x = parse_point(args.point, params.a)
    return {"element": render_quaternion(gamma), "point": render_point(x), "image": render_point(act(gamma, x))}


def run_image_trace(args: argparse.Namespace, settings: Settings) -> dict:
    params = params_of(settings)
    gamma = parse_quaternion(args.element, params)
    if (args.circle is None) == (args.line is None):
        raise UsageError("give exactly one of --circle and --line")
    trace = parse_circle(args.circle, params.a) if args.circle else parse_line(args.line, params.a)
    return {
        "element": render_quaternion(gamma),
        "trace": render_trace(trace),
        "image": render_trace(image_of_trace(gamma, trace)),
    }
