"""Asynchronous early-output dual-bit adders: generation, simulation, analysis."""

import json

from ._core import (
    AsyncAddError,
    Netlist,
    area,
    depth,
    encode_1of4,
    encode_dual_rail,
    eval_dbfa,
    from_json,
    gen_dbfa,
    gen_rca,
    run_cycle,
    variants,
    verify,
    compare_markdown,
)
from ._core import compare_json as _compare_json


def compare(width, n=1000, seed=0, exhaustive=False):
    """Four-variant comparison report as a dict."""
    return json.loads(_compare_json(width, n, seed, exhaustive))


__all__ = [
    "AsyncAddError",
    "Netlist",
    "area",
    "compare",
    "compare_markdown",
    "depth",
    "encode_1of4",
    "encode_dual_rail",
    "eval_dbfa",
    "from_json",
    "gen_dbfa",
    "gen_rca",
    "run_cycle",
    "variants",
    "verify",
]
