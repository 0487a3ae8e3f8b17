"""Runtime limits, overridable through environment variables.

``MAHLER_MAX_LEVEL``   largest m allowed for a root exp(2 pi i j / 2^m) (default 10)
``MAHLER_BITS``        working precision of the radial numerics (default 256)
``MAHLER_MAX_DEGREE``  largest polynomial degree taylor_shift may be asked to recentre
"""

from __future__ import annotations

import os

DEFAULT_MAX_LEVEL = 10
DEFAULT_BITS = 256
DEFAULT_MAX_DEGREE = 2**14 - 1
# Largest expansion order for the local (truncated-product) Taylor route.
DEFAULT_MAX_ORDER = 512


def _env_int(name: str, default: int) -> int:
    raw = os.environ.get(name)
    if raw is None or raw.strip() == "":
        return default
    try:
        return int(raw)
    except ValueError:
        raise ValueError(f"environment variable {name} must be an integer, got {raw!r}")


def max_level() -> int:
    return _env_int("MAHLER_MAX_LEVEL", DEFAULT_MAX_LEVEL)


def default_bits() -> int:
    return _env_int("MAHLER_BITS", DEFAULT_BITS)


def max_degree() -> int:
    return _env_int("MAHLER_MAX_DEGREE", DEFAULT_MAX_DEGREE)
