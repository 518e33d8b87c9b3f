"""
Tests for settings precedence and validation (config.py).
"""
from __future__ import annotations

from fractions import Fraction

import pydantic
import pytest

import config
from config import PRIME_SEARCH_BOUND_ENV, Settings, load_settings, read_config_file
from errors import DomainError, UsageError


@pytest.fixture
def config_file(tmp_path):
    path = tmp_path / "scarcheck.cfg"
    path.write_text("# bounds for the nightly run\neta_norm_bound=25/2\nhit_prime_bound=11\n")
    return path


class TestDefaults:
    def test_values(self):
        settings = load_settings()
        assert (settings.a, settings.b) == (config.DEFAULT_A, config.DEFAULT_B)
        assert settings.order == "I0"
        assert settings.prime_search_bound == 10**6

    def test_frozen(self):
        settings = load_settings()
        with pytest.raises(pydantic.ValidationError):
            settings.a = -1


class TestConfigFile:
    def test_read(self, config_file):
        assert read_config_file(config_file) == {"eta_norm_bound": "25/2", "hit_prime_bound": "11"}

    def test_values_applied(self, config_file):
        settings = load_settings(config_file)
        assert settings.eta_norm_bound == Fraction(25, 2)
        assert settings.hit_prime_bound == 11

    def test_missing(self, tmp_path):
        with pytest.raises(UsageError):
            read_config_file(tmp_path / "absent.cfg")

    def test_unknown_key(self, tmp_path):
        path = tmp_path / "bad.cfg"
        path.write_text("a=-2\nverbose=1\n")
        with pytest.raises(UsageError) as exc:
            read_config_file(path)
        assert "verbose" in exc.value.message


class TestPrecedence:
    def test_override_beats_file(self, config_file):
        settings = load_settings(config_file, {"eta_norm_bound": "7", "hit_prime_bound": None})
        assert settings.eta_norm_bound == 7
        assert settings.hit_prime_bound == 11

    def test_env_bound_beats_override(self, monkeypatch):
        monkeypatch.setenv(PRIME_SEARCH_BOUND_ENV, "5000")
        settings = load_settings(overrides={"prime_search_bound": 100})
        assert settings.prime_search_bound == 5000


class TestValidation:
    def test_outside_class(self):
        with pytest.raises(DomainError) as exc:
            load_settings(overrides={"a": -1, "b": 13})
        assert "K2s" in exc.value.message

    def test_outside_class_allowed(self):
        settings = load_settings(overrides={"a": -1, "b": 13, "allow_non_k2s": True})
        assert settings.a == -1

    def test_real_field_needs_flag(self):
        with pytest.raises(DomainError):
            load_settings(overrides={"a": 2, "b": 3})
        assert load_settings(overrides={"a": 2, "b": 3, "k1s": True}).a == 2

    def test_not_squarefree(self):
        with pytest.raises(DomainError):
            load_settings(overrides={"a": -8, "allow_non_k2s": True})

    def test_bad_bounds(self):
        with pytest.raises(DomainError):
            load_settings(overrides={"eta_norm_bound": "lots"})
        with pytest.raises(DomainError):
            load_settings(overrides={"eta_norm_bound": "-1"})
        with pytest.raises(DomainError):
            load_settings(overrides={"prime_search_bound": 1})

    def test_order(self):
        with pytest.raises(DomainError):
            load_settings(overrides={"order": "I1"})

    def test_direct_model(self):
        assert Settings(eta_norm_bound="3/2").eta_norm_bound == Fraction(3, 2)
