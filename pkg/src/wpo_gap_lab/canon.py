"""Canonical total comparison on the value types used as poset elements.

The key is bookkeeping only: it fixes a deterministic entry order for
multisets and enumerations and is never used as a domain order.
"""

from __future__ import annotations


def canon_key(v) -> tuple:
    key = getattr(v, "sort_key", None)
    if key is not None:
        return key
    if isinstance(v, bool):
        return (0, int(v))
    if isinstance(v, int):
        return (0, v)
    if isinstance(v, str):
        return (1, v)
    if isinstance(v, tuple):
        return (2, tuple(canon_key(e) for e in v))
    if isinstance(v, frozenset):
        return (3, tuple(sorted(canon_key(e) for e in v)))
    if v is None:
        return (4,)
    raise TypeError(f"no canonical key for {type(v).__name__}")


def canon_sorted(values) -> tuple:
    return tuple(sorted(values, key=canon_key))
