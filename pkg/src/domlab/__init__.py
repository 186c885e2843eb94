"""
domlab - exact graph-protection invariants

This package computes, exactly and with certificates:
- domination, secure domination and eternal domination numbers
- foolproof eternal domination (n - minimal degree, cross-checked by a fixed point)
- the autonomous domination number, via the move graph of dominating sets
- a guard-protocol simulator with uniform, greedy, scripted and oracle adversaries
"""

__version__ = "1.0.0"

# Bumped whenever a change could alter a computed record; invalidates the result cache.
ENGINE_VERSION = "1"
