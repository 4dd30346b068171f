"""Registry of memoization caches.

Everything in this package is pure, but several hot paths (PBW normal
forms, Lambda tables, D-element recursions) memoize aggressively.  Tests
that deliberately corrupt structure constants need a way to flush all of
that state at once, so every cache dict registers itself here.
"""

from __future__ import annotations

_REGISTRY: list[dict] = []


def register(cache: dict) -> dict:
    _REGISTRY.append(cache)
    return cache


def clear_all() -> None:
    for cache in _REGISTRY:
        cache.clear()
