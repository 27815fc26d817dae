"""Interaction-closed Markov universes: exact construction and analysis."""

from iclosure._core import (
    IclError,
    Universe,
    analyze,
    build_universe,
    coinciding_universe,
    example_universe,
    load_universe,
    sample,
    save_universe,
    sweep,
    transfer_entropy,
    universe_from_dict,
    verify,
)

__all__ = [
    "IclError",
    "Universe",
    "analyze",
    "build_universe",
    "coinciding_universe",
    "example_universe",
    "load_universe",
    "sample",
    "save_universe",
    "sweep",
    "transfer_entropy",
    "universe_from_dict",
    "verify",
]
