"""Build truth tables from a family name plus a parameter mapping.

Shared by the service, the CLI client, and sweep generators so every
entry point constructs functions identically.
"""

from __future__ import annotations

from typing import Optional

from . import families
from .core import TruthTable

FAMILY_NAMES = (
    "and", "or", "parity", "dictator", "majority", "tribes",
    "example-h", "compose", "iterate", "random",
)


def _need(params: dict, key: str, family: str) -> object:
    value = params.get(key)
    if value is None:
        raise ValueError(f"family {family!r} needs parameter {key!r}")
    return value


def build_family(name: str, params: Optional[dict] = None) -> TruthTable:
    """Construct one named function; raises ValueError on bad parameters."""
    params = params or {}
    if name == "and":
        return families.make_and(int(_need(params, "n", name)))
    if name == "or":
        return families.make_or(int(_need(params, "n", name)))
    if name == "parity":
        n = int(_need(params, "n", name))
        mask = params.get("mask")
        mask = (1 << n) - 1 if mask is None else int(mask)
        return families.make_parity(n, mask)
    if name == "dictator":
        return families.make_dictator(int(_need(params, "n", name)),
                                      int(_need(params, "k", name)))
    if name == "majority":
        return families.make_majority(int(_need(params, "n", name)))
    if name == "tribes":
        m = int(_need(params, "m", name))
        count = params.get("count")
        if count is None:
            tp = families.TribesParams.with_default_count(m)
        else:
            tp = families.TribesParams(m, int(count))
        return families.make_tribes(tp)
    if name == "example-h":
        return families.make_example_h()
    if name == "compose":
        outer = _need(params, "outer", name)
        inner = _need(params, "inner", name)
        if not isinstance(outer, TruthTable) or not isinstance(inner, TruthTable):
            raise ValueError("compose needs outer and inner truth tables")
        return families.compose(outer, inner)
    if name == "iterate":
        inner = _need(params, "inner", name)
        if not isinstance(inner, TruthTable):
            raise ValueError("iterate needs an inner truth table")
        return families.iterate_compose(inner, int(_need(params, "depth", name)))
    if name == "random":
        return families.make_random(int(_need(params, "n", name)),
                                    int(params.get("seed", 0)))
    raise ValueError(f"unknown family {name!r}; choose from {FAMILY_NAMES}")
