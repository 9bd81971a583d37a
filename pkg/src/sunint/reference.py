"""Loader for the packaged reference coefficient tables.

The JSON file stores each table entry as an expression string in N exactly as
transcribed; parsing canonicalizes them, so comparisons against computed
tables are semantic, independent of how either side was factored.
"""

from __future__ import annotations

import json
from functools import lru_cache
from importlib import resources

from .exactmath import RatFuncN, parse_ratfunc
from .partitions import Partition


@lru_cache(maxsize=None)
def _raw() -> dict:
    path = resources.files("sunint.data").joinpath("reference_tables.json")
    return json.loads(path.read_text(encoding="utf-8"))


def reference_families() -> list[str]:
    return sorted(_raw().keys())


def reference_weights(family: str) -> list[int]:
    return sorted(int(k) for k in _raw()[family])


def reference_table(family: str, n: int) -> dict[Partition, RatFuncN]:
    """The packaged table for one family and weight, parsed and canonical."""
    raw = _raw()[family][str(n)]
    return {Partition.from_string(key): parse_ratfunc(text)
            for key, text in raw.items()}
