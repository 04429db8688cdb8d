"""Size limits shared by the library and the command line."""

from __future__ import annotations

import contextlib
import os
from dataclasses import dataclass, replace


class SizeBoundError(ValueError):
    """A construction or search would exceed a configured size bound."""


@dataclass(frozen=True)
class Limits:
    max_group_order: int = 10000
    max_iso_order: int = 64
    max_series_order: int = 8
    max_k: int = 4


def _from_env() -> Limits:
    value = os.environ.get("ORBICHAR_MAX_GROUP")
    if value:
        return Limits(max_group_order=int(value))
    return Limits()


_current = _from_env()


def limits() -> Limits:
    return _current


@contextlib.contextmanager
def override(**changes):
    """Temporarily replace some limits, e.g. ``with override(max_group_order=50000):``."""
    global _current
    saved = _current
    _current = replace(saved, **changes)
    try:
        yield _current
    finally:
        _current = saved


def set_limits(**changes) -> None:
    global _current
    _current = replace(_current, **changes)
