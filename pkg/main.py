"""
main.py: scarcheck command-line entry point.

Every subcommand prints one JSON document on stdout; logs go to stderr.
Exit codes: 0 success, 1 domain or internal error, 2 usage error.

Usage:
    python main.py k2s-check --a=-2 --b=13
    python main.py pell --d=58
    python main.py separation --halfplane 0,1 --corroborate
    python main.py verify-paper-examples
"""
from __future__ import annotations

import argparse
import json
import logging
import sys
from typing import Callable, Optional, Sequence

import config
from errors import ScarcheckError, UsageError
from handlers.algebra import run_algebra_info, run_enumerate, run_k2s_check, run_scan
from handlers.construct import (
    run_construct_halfplane,
    run_construct_sphere,
    run_density,
    run_greedy_set,
    run_pell,
    run_prime_forms,
)
from handlers.isometry import run_act, run_classify, run_fixed_points, run_image_trace
from handlers.paper_examples import run_verify_paper_examples
from handlers.separate import run_separation

logger = logging.getLogger(__name__)

LOG_FORMAT = "%(asctime)s [%(levelname)s] %(name)s — %(message)s"


# ─── Argument parsing ─────────────────────────────────────────────────────────

class _Parser(argparse.ArgumentParser):
    """argparse that raises instead of exiting, so usage errors get the JSON shape too."""

    def error(self, message: str) -> None:  # type: ignore[override]
        raise UsageError(message)


def _common() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--config", help="key=value settings file")
    common.add_argument("-v", "--verbose", action="store_true")
    common.add_argument("-q", "--quiet", action="store_true")
    common.add_argument("--a", type=int)
    common.add_argument("--b", type=int)
    common.add_argument("--allow-non-k2s", action="store_true", default=None)
    common.add_argument("--k1s", action="store_true", default=None)
    common.add_argument("--eta-norm-bound")
    common.add_argument("--prime-search-bound", type=int)
    return common


def build_parser() -> argparse.ArgumentParser:
    common = _common()
    parser = _Parser(prog="scarcheck", description=__doc__.splitlines()[1])
    sub = parser.add_subparsers(dest="command", parser_class=_Parser)

    def add(name: str, handler: Callable, help_text: str) -> argparse.ArgumentParser:
        p = sub.add_parser(name, parents=[common], help=help_text)
        p.set_defaults(handler=handler)
        return p

    add("algebra-info", run_algebra_info, "parameters, I₀ and the class gate")
    add("k2s-check", run_k2s_check, "class (K₂ˢ) membership")
    add("scan", run_scan, "classify norm-1 elements of I₀")
    p = add("enumerate", run_enumerate, "elements of I₀ of a given norm")
    p.add_argument("--norm", type=int, required=True)
    p.add_argument("--primitive", action="store_true")

    for name, handler, help_text in (
        ("classify", run_classify, "elliptic, parabolic or hyperbolic"),
        ("fixed-points", run_fixed_points, "fixed set in H³ ∪ ∂H³"),
    ):
        p = add(name, handler, help_text)
        p.add_argument("--element", required=True, help="'xi ; eta'")
    p = add("act", run_act, "Poincaré action on a point")
    p.add_argument("--element", required=True, help="'xi ; eta'")
    p.add_argument("--point", required=True, help="'z ; t^2'")
    p = add("image-trace", run_image_trace, "image of an itgs trace")
    p.add_argument("--element", required=True, help="'xi ; eta'")
    p.add_argument("--circle", help="'center ; r^2'")
    p.add_argument("--line", help="'point ; direction'")

    p = add("construct-halfplane", run_construct_halfplane, "Γ_R-closed half-plane P(t, u)")
    p.add_argument("--t", type=int, required=True)
    p.add_argument("--u", type=int, required=True)
    p = add("construct-sphere", run_construct_sphere, "Γ_R-closed half-sphere S(a₁, r)")
    p.add_argument("--center", required=True)
    p.add_argument("--radius-sq", required=True)
    p = add("pell", run_pell, "fundamental Pell solution")
    p.add_argument("--d", required=True)
    p = add("greedy-set", run_greedy_set, "pairwise-distinct half-plane families")
    p.add_argument("--t-max", type=int, required=True)
    p = add("prime-forms", run_prime_forms, "t with 1 − at² prime")
    p.add_argument("--bound", type=int, required=True)
    p = add("density", run_density, "share of primes of a splitting type")
    p.add_argument("--which", default="Inert")
    p.add_argument("--prime-bound", type=int, default=10**4)

    p = add("separation", run_separation, "certify a separating prime")
    p.add_argument("--point", action="append", help="'z ; t^2'")
    p.add_argument("--geodesic", action="append", help="'A ; B ; C'")
    p.add_argument("--axis", action="append", help="axis of a hyperbolic 'xi ; eta'")
    p.add_argument("--halfplane", action="append", help="'t,u'")
    p.add_argument("--sphere", action="append", help="'center ; r^2'")
    p.add_argument("--s0", action="store_true")
    p.add_argument("--corroborate", action="store_true")

    add("verify-paper-examples", run_verify_paper_examples, "regression over the worked examples")
    return parser


# ─── Logging ──────────────────────────────────────────────────────────────────

def _setup_logging(args: argparse.Namespace) -> None:
    level = config.LOG_LEVEL
    if args.verbose:
        level = "DEBUG"
    elif args.quiet:
        level = "WARNING"
    logging.basicConfig(level=level, format=LOG_FORMAT, stream=sys.stderr, force=True)


def _emit(document: dict) -> None:
    print(json.dumps(document, sort_keys=True, indent=2, ensure_ascii=False))


# ─── Entry point ──────────────────────────────────────────────────────────────

def run(argv: Optional[Sequence[str]] = None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if not getattr(args, "handler", None):
            raise UsageError("missing subcommand")
        _setup_logging(args)
        settings = config.load_settings(
            args.config,
            {
                "a": args.a,
                "b": args.b,
                "allow_non_k2s": args.allow_non_k2s,
                "k1s": args.k1s,
                "eta_norm_bound": args.eta_norm_bound,
                "prime_search_bound": args.prime_search_bound,
            },
        )
        result = args.handler(args, settings)
    except ScarcheckError as exc:
        logger.error("%s: %s", exc.code, exc.message)
        _emit(exc.to_dict())
        return exc.exit_code
    except Exception as exc:
        logger.exception("internal error")
        _emit({"error": {"code": "internal", "message": str(exc)}})
        return 1
    _emit(result)
    return 0 if result.get("ok", True) else 1


if __name__ == "__main__":
    sys.exit(run())
