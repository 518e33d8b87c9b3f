"""Central config: .env defaults, the key=value config file and the runtime Settings model."""
from __future__ import annotations

import logging
import os
from fractions import Fraction
from pathlib import Path
from typing import Any, Literal, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, ConfigDict, ValidationError, field_validator, model_validator

from arith.exact import is_squarefree
from arith.quatalg import k2s_check
from errors import DomainError, UsageError

load_dotenv()

logger = logging.getLogger(__name__)


# ─── Algebra defaults ─────────────────────────────────────────────────────────
DEFAULT_A = int(os.getenv("SCARCHECK_A", "-2"))
DEFAULT_B = int(os.getenv("SCARCHECK_B", "13"))

# ─── Search bounds ────────────────────────────────────────────────────────────
DEFAULT_ETA_NORM_BOUND = os.getenv("SCARCHECK_ETA_NORM_BOUND", "50")
DEFAULT_PRIME_SEARCH_BOUND = 10**6
DEFAULT_HIT_PRIME_BOUND = int(os.getenv("SCARCHECK_HIT_PRIME_BOUND", "30"))
PRIME_SEARCH_BOUND_ENV = "SCARCHECK_PRIME_SEARCH_BOUND"

# ─── Logging ──────────────────────────────────────────────────────────────────
LOG_LEVEL = os.getenv("SCARCHECK_LOG_LEVEL", "INFO").upper()

CONFIG_KEYS = ("a", "b", "order", "eta_norm_bound", "prime_search_bound", "hit_prime_bound")


# ─── Settings ─────────────────────────────────────────────────────────────────

class Settings(BaseModel):
    """Validated runtime parameters shared by every command."""

    model_config = ConfigDict(frozen=True, arbitrary_types_allowed=True)

    a: int = DEFAULT_A
    b: int = DEFAULT_B
    order: Literal["I0"] = "I0"
    eta_norm_bound: Fraction = Fraction(DEFAULT_ETA_NORM_BOUND)
    prime_search_bound: int = DEFAULT_PRIME_SEARCH_BOUND
    hit_prime_bound: int = DEFAULT_HIT_PRIME_BOUND
    allow_non_k2s: bool = False
    k1s: bool = False

    @field_validator("eta_norm_bound", mode="before")
    @classmethod
    def _parse_bound(cls, value: Any) -> Fraction:
        try:
            bound = Fraction(str(value).strip()) if not isinstance(value, Fraction) else value
        except (ValueError, ZeroDivisionError) as exc:
            raise ValueError(f"not a rational: {value!r}") from exc
        if bound < 0:
            raise ValueError("eta_norm_bound must be non-negative")
        return bound

    @field_validator("prime_search_bound", "hit_prime_bound")
    @classmethod
    def _positive(cls, value: int) -> int:
        if value < 2:
            raise ValueError("bounds must be at least 2")
        return value

    @model_validator(mode="after")
    def _class_gate(self) -> "Settings":
        if self.a in (0, 1) or not is_squarefree(self.a):
            raise ValueError(f"a must be squarefree and not 0 or 1, got {self.a}")
        if self.b <= 0 or not is_squarefree(self.b):
            raise ValueError(f"b must be a positive squarefree integer, got {self.b}")
        if self.a > 0:
            if not self.k1s:
                raise ValueError("a > 0 is the K1s regime; pass --k1s to enable it")
        elif not self.allow_non_k2s:
            result = k2s_check(self.a, self.b)
            if not result.member:
                raise ValueError(f"({self.a}, {self.b}) is not in class K2s: {'; '.join(result.reasons)}")
        return self


def read_config_file(path: str | Path) -> dict[str, str]:
    """key=value pairs from ``path``; unknown keys are an error."""
    path = Path(path)
    if not path.is_file():
        raise UsageError(f"config file not found: {path}")
    values = {k.strip(): v for k, v in dotenv_values(path).items() if v is not None}
    unknown = sorted(set(values) - set(CONFIG_KEYS))
    if unknown:
        raise UsageError(f"unknown config keys in {path}: {', '.join(unknown)}")
    return values


def load_settings(
    config_path: Optional[str | Path] = None,
    overrides: Optional[dict[str, Any]] = None,
) -> Settings:
    """Defaults < config file < command-line overrides < SCARCHECK_PRIME_SEARCH_BOUND."""
    merged: dict[str, Any] = {}
    if config_path:
        merged.update(read_config_file(config_path))
    merged.update({k: v for k, v in (overrides or {}).items() if v is not None})
    env_bound = os.getenv(PRIME_SEARCH_BOUND_ENV)
    if env_bound:
        merged["prime_search_bound"] = env_bound
        logger.debug("prime search bound %s from %s", env_bound, PRIME_SEARCH_BOUND_ENV)
    try:
        return Settings(**merged)
    except ValidationError as exc:
        messages = "; ".join(err["msg"] for err in exc.errors())
        raise DomainError(f"invalid settings: {messages}") from exc
