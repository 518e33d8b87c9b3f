"""
Shared pytest fixtures.

Everything runs in the class-(K₂ˢ) algebra (−2, 13 / Q) unless a test builds
its own parameters. Randomized properties draw from a seeded
``random.Random`` so failures reproduce.
"""
from __future__ import annotations

import random
from fractions import Fraction

import pytest

from arith.exact import QuadElem
from arith.quatalg import AlgebraParams, Quaternion, enumerate_norm_elements, standard_order


# ─── Environment ──────────────────────────────────────────────────────────────

@pytest.fixture(autouse=True)
def _clean_env(monkeypatch):
    """Keep a developer's .env overrides out of the suite."""
    for key in ("SCARCHECK_PRIME_SEARCH_BOUND", "SCARCHECK_LOG_LEVEL"):
        monkeypatch.delenv(key, raising=False)


# ─── Algebra ──────────────────────────────────────────────────────────────────

@pytest.fixture
def params() -> AlgebraParams:
    return AlgebraParams(-2, 13)


@pytest.fixture
def order(params):
    return standard_order(params)


@pytest.fixture
def rng() -> random.Random:
    return random.Random(20240611)


def quad(x, y=0, a: int = -2) -> QuadElem:
    return QuadElem(Fraction(x), Fraction(y), a)


@pytest.fixture
def gamma01(params) -> Quaternion:
    """10 + 3√−2 + 3Ω, the norm-1 element fixing P(0,1)."""
    return Quaternion(quad(10, 3), quad(3), params)


@pytest.fixture(scope="session")
def norm_one_elements():
    """All norm-1 elements of I₀ with N(η) ≤ 60."""
    return enumerate_norm_elements(standard_order(AlgebraParams(-2, 13)), 1, 60)


def random_quaternion(rng: random.Random, params: AlgebraParams, span: int = 6) -> Quaternion:
    """Integral element with η ≠ 0, Tr ≠ 0 and nonzero norm."""
    while True:
        xi = QuadElem(rng.randint(-span, span), rng.randint(-span, span), params.a)
        eta = QuadElem(rng.randint(-span, span), rng.randint(-span, span), params.a)
        alpha = Quaternion(xi, eta, params)
        if not eta.is_zero() and alpha.trace() != 0 and alpha.norm() != 0:
            return alpha
