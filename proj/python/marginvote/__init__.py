"""Margin-based voting rules: tabulation, axiom checks and canonical profiles."""

import json

from ._core import (
    MarginvoteError,
    Profile,
    canonicalize,
    condorcet_winner,
    debord,
    equalize_h2h,
    load_profile,
    margins,
    profile_from_json,
    rule_names,
    run_rule,
    smith_set,
    support,
    to_dot,
)
from . import _core

__all__ = [
    "MarginvoteError",
    "Profile",
    "canonicalize",
    "check_axiom",
    "condorcet_winner",
    "debord",
    "equalize_h2h",
    "load_profile",
    "margins",
    "profile_from_json",
    "rule_names",
    "run_rule",
    "scan_irv",
    "scan_minimax",
    "smith_set",
    "support",
    "to_dot",
]


def check_axiom(rule, axiom, pool, seed=0, budget=1000, jobs=1):
    """Search for witnesses that `rule` violates `axiom`; returns the report as a dict."""
    return json.loads(_core.check_axiom(rule, axiom, list(pool), seed, budget, jobs))


def scan_minimax(paths, jobs=1):
    return json.loads(_core.scan_minimax([str(p) for p in paths], jobs))


def scan_irv(paths, budget=3, jobs=1):
    return json.loads(_core.scan_irv([str(p) for p in paths], budget, jobs))
