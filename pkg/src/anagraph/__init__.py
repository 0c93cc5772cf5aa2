"""Anagram-free graph coloring toolkit.

Submodules: core (types and the anagram predicate), words, detect,
construct, color, attack, posa, rrg, serialize, cli.
"""

__version__ = "0.1.0"
