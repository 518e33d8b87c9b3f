"""
verify-paper-examples: regression run over the published worked examples.

Rebuilds every half-plane and half-sphere example from its Pell solution,
checks the Pell chain for the spheres, the greedy distinct set, the K₂ˢ gate
and the S⁰/ψ invariance over a bounded shell of Γ_R. Each check is recorded
as PASS or FAIL with a short detail line.
"""
from __future__ import annotations

import argparse
import logging
from fractions import Fraction

from arith.exact import QuadElem
from arith.quatalg import AlgebraParams, Quaternion, enumerate_norm_elements, k2s_check, standard_order
from config import Settings
from errors import ScarcheckError
from geometry.hyp3 import Line, image_of_trace, psi_map, s0
from geometry.itgs import construct_halfplane, construct_sphere, greedy_distinct_set, pro7_necessary

logger = logging.getLogger(__name__)

WORKED_PARAMS = AlgebraParams(-2, 13)

PASS = "PASS"
FAIL = "FAIL"

# (t, u) → (Pell x, Pell y, printed ξ, printed η)
HALFPLANES = {
    (0, 1): (10, 3, (10, 3), (-3, 0)),
    (1, 0): (25, 4, (25, 0), (4, 4)),
    (2, 3): (10, 1, (10, 3), (1, 2)),
}

# (a₁, r²) → (X, Y, note)
SPHERES = [
    ((Fraction(2, 3), 1), Fraction(3), 359, 54, None),
    ((7, 3), Fraction(64), 106133, 3458, "printed element garbled; derived element verified"),
    ((5, 2), Fraction(30), 19603, 2574, None),
]

# t_max → excluded t
GREEDY = {
    500: [2, 11, 12, 70, 109, 225, 408],
    24000: [
        2, 11, 12, 70, 109, 225, 408, 524, 1015, 1079, 1746,
        2378, 2765, 4120, 5859, 8030, 10681, 13860, 16647, 17615, 21994,
    ],
}


class Recorder:
    def __init__(self) -> None:
        self.results: list[dict] = []

    def record(self, name: str, ok: bool, detail: str = "") -> None:
        logger.log(logging.INFO if ok else logging.ERROR, "%s %s %s", PASS if ok else FAIL, name, detail)
        self.results.append({"name": name, "status": PASS if ok else FAIL, "detail": detail})

    def check(self, name: str, fn) -> None:
        try:
            ok, detail = fn()
        except ScarcheckError as exc:
            ok, detail = False, f"{exc.code}: {exc.message}"
        self.record(name, ok, detail)


# ─── Half-planes ──────────────────────────────────────────────────────────────

def _check_halfplane(params: AlgebraParams, t: int, u: int):
    x, y, printed_xi, printed_eta = HALFPLANES[(t, u)]
    a = params.a
    cert = construct_halfplane(t, u, params)
    printed = Quaternion(QuadElem(*printed_xi, a), QuadElem(*printed_eta, a), params)
    if (cert.pell.x, cert.pell.y) != (x, y):
        return False, f"Pell {cert.pell.x, cert.pell.y}, expected {x, y}"
    if printed == cert.gamma:
        return True, f"γ = {cert.gamma}"
    # printed element with the opposite Ω sign fixes the mirror line
    mirror = Line.through(cert.surface.trace.point.conj(), cert.surface.trace.direction.conj())
    if printed.norm() == 1 and image_of_trace(printed, mirror) == mirror:
        logger.warning("P(%d, %d): printed element carries the opposite Ω sign", t, u)
        return True, f"sign variant: printed {printed} fixes the mirror line, constructed γ = {cert.gamma}"
    return False, f"printed {printed} does not match γ = {cert.gamma}"


# ─── Half-spheres ─────────────────────────────────────────────────────────────

def _check_sphere(params: AlgebraParams, center, r_sq, x, y, note):
    a1 = QuadElem(*center, params.a)
    cert = construct_sphere(a1, r_sq, params)
    if (cert.pell.x, cert.pell.y) != (x, y):
        return False, f"Pell {cert.pell.x, cert.pell.y}, expected {x, y}"
    chain = pro7_necessary(cert.surface, cert.gamma)
    if not chain.ok:
        return False, "a(1 − 4b|ζ|²) ≠ (X² − 4)Y²"
    detail = f"γ = {cert.gamma}, ε = {cert.epsilon}"
    if note:
        logger.warning("S(%s, %s): %s", a1, r_sq, note)
        detail = f"{note}; {detail}"
    return True, detail


# ─── Invariance ───────────────────────────────────────────────────────────────

def _check_s0(params: AlgebraParams, bound: Fraction):
    trace = s0(params).trace
    elements = enumerate_norm_elements(standard_order(params), 1, bound)
    for gamma in elements:
        if image_of_trace(gamma, trace) != trace:
            return False, f"{gamma} moves S⁰"
        x = psi_map(gamma)
        if x.z.norm() + x.t_sq != Fraction(1, params.b):
            return False, f"ψ({gamma}) is off S⁰"
    return True, f"{len(elements)} elements with N(η) ≤ {bound}"


def run_verify_paper_examples(args: argparse.Namespace, settings: Settings) -> dict:
    params = WORKED_PARAMS
    rec = Recorder()
    for t, u in HALFPLANES:
        rec.check(f"halfplane P({t},{u})", lambda t=t, u=u: _check_halfplane(params, t, u))
    for center, r_sq, x, y, note in SPHERES:
        rec.check(
            f"sphere S({QuadElem(*center, params.a)}, {r_sq})",
            lambda c=center, r=r_sq, x=x, y=y, n=note: _check_sphere(params, c, r, x, y, n),
        )
    excluded = greedy_distinct_set(params.a, max(GREEDY)).excluded
    for t_max, expected in GREEDY.items():
        found = [t for t in excluded if t <= t_max]
        rec.record(f"greedy set t ≤ {t_max}", found == expected, str(found))
    gate = k2s_check(params.a, params.b)
    rec.record("K2s gate", gate.member, str(gate.symbols))
    rec.check("S⁰ and ψ invariance", lambda: _check_s0(params, settings.eta_norm_bound))
    failed = sum(r["status"] == FAIL for r in rec.results)
    return {"examples": rec.results, "passed": len(rec.results) - failed, "failed": failed, "ok": failed == 0}
