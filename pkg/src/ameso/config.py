"""
Ameso Configuration
Tunable caps and tolerances, overridable from the environment
"""

import os
from dataclasses import dataclass
from typing import Callable, TypeVar

from .errors import ArgumentError

T = TypeVar("T", int, float)


def _env(name: str, default: T, kind: Callable[[str], T]) -> T:
    raw = os.environ.get(name, "")
    if not raw.strip():
        return default
    try:
        return kind(raw)
    except ValueError:
        raise ArgumentError(f"{name}={raw!r} is not a valid {kind.__name__}") from None


def _env_int(name: str, default: int) -> int:
    return _env(name, default, int)


def _env_float(name: str, default: float) -> float:
    return _env(name, default, float)


@dataclass(frozen=True)
class Settings:
    """
    Oracle caps and comparison tolerances

    Args:
        point_cap: Largest domain the oracle will enumerate for set checks
        pair_cap: Largest number of unordered pairs the certificate may inspect
        real_tolerance: Absolute epsilon for comparisons of real-valued objectives
        auto_c_cap: Largest domain for which the CLI derives C from the oracle
        seed: Default seed for generated bench suites
    """
    point_cap: int = 10_000
    pair_cap: int = 100_000_000
    real_tolerance: float = 1e-9
    auto_c_cap: int = 2_000
    seed: int = 0

    @classmethod
    def from_env(cls) -> "Settings":
        base = cls()
        return cls(
            point_cap=_env_int("AMESO_POINT_CAP", base.point_cap),
            pair_cap=_env_int("AMESO_PAIR_CAP", base.pair_cap),
            real_tolerance=_env_float("AMESO_TOLERANCE", base.real_tolerance),
            auto_c_cap=_env_int("AMESO_AUTO_C_CAP", base.auto_c_cap),
            seed=_env_int("AMESO_SEED", base.seed),
        )


DEFAULT_SETTINGS = Settings()
