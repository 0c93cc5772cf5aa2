"""Anagram-free words over small alphabets.

A word contains an abelian square when two adjacent blocks of equal length
use every symbol equally often.  Detection, backtracking generation, and
exhaustive extremal search all hinge on one fact: anagram-freeness is closed
under taking prefixes, so a growing word only ever needs its suffix windows
re-checked.
"""
from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass

from .util import derive_seed, splitmix64

_SYMBOL_CHARS = "0123456789abcdefghijklmnopqrstuvwxyz"


@dataclass(frozen=True)
class Word:
    symbols: tuple
    alphabet_size: int

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be >= 1")
        if any(not (0 <= s < self.alphabet_size) for s in self.symbols):
            raise ValueError("symbol out of range")

    def __len__(self):
        return len(self.symbols)

    def __str__(self):
        if self.alphabet_size > len(_SYMBOL_CHARS):
            return ",".join(str(s) for s in self.symbols)
        return "".join(_SYMBOL_CHARS[s] for s in self.symbols)

    @staticmethod
    def parse(text: str, alphabet_size: int | None = None) -> "Word":
        symbols = tuple(_SYMBOL_CHARS.index(ch) for ch in text)
        k = alphabet_size if alphabet_size is not None else (max(symbols) + 1 if symbols else 1)
        return Word(symbols, k)


def find_abelian_square(word: Word):
    """First abelian square as (start, half_length), or None.

    "First" means lexicographically smallest (start, half_length); scans use
    prefix counts so each window costs O(alphabet).
    """
    symbols = word.symbols
    n = len(symbols)
    k = word.alphabet_size
    prefix = [(0,) * k]
    for s in symbols:
        last = prefix[-1]
        prefix.append(last[:s] + (last[s] + 1,) + last[s + 1:])
    for start in range(n - 1):
        for half in range(1, (n - start) // 2 + 1):
            lo, mid, hi = prefix[start], prefix[start + half], prefix[start + 2 * half]
            if all(lo[c] + hi[c] == 2 * mid[c] for c in range(k)):
                return (start, half)
    return None


def _suffix_square_free(symbols, hashes, k, weights) -> bool:
    """Check only the even windows ending at the last symbol.

    ``hashes[i]`` is the weighted prefix sum of the first i symbols; a window
    [i, L) is an abelian square iff its half-sums match, tested via the hash
    identity and confirmed exactly on a hit.
    """
    L = len(symbols)
    for i in range(L - 2, -1, -2):
        mid = (i + L) // 2
        if hashes[L] + hashes[i] == 2 * hashes[mid]:
            if Counter(symbols[i:mid]) == Counter(symbols[mid:L]):
                return False
    return True


_WEIGHTS_CACHE: dict = {}


def _weights(k: int) -> tuple:
    if k not in _WEIGHTS_CACHE:
        _WEIGHTS_CACHE[k] = tuple(splitmix64(0xA5A5 + 7 * c) for c in range(k))
    return _WEIGHTS_CACHE[k]


@dataclass(frozen=True)
class GenerationResult:
    ok: bool
    word: Word | None
    longest: Word
    steps: int
    target: int


def generate_anagram_free_word(k: int, target: int, budget: int = 10**8, seed: int = 0) -> GenerationResult:
    """Backtracking search for an anagram-free word of length >= target.

    Symbols at each position are tried in a seeded random order, which
    diversifies restarts after backtracking.  Deterministic for a fixed seed.
    Exhausting either the budget or the whole search tree yields a failure
    report carrying the longest word found.
    """
    if k < 1 or target < 1:
        raise ValueError("need k >= 1 and target >= 1")
    rng = random.Random(derive_seed(seed, "words.generate", k, target))
    weights = _weights(k)

    symbols: list = []
    hashes = [0]
    # candidate stacks per depth: symbols not yet tried at that position
    pending = [rng.sample(range(k), k)]
    best: tuple = ()
    steps = 0

    while pending:
        if steps >= budget:
            break
        if len(symbols) >= target:
            word = Word(tuple(symbols), k)
            return GenerationResult(True, word, word, steps, target)
        if not pending[-1]:
            pending.pop()
            if symbols:
                symbols.pop()
                hashes.pop()
            continue
        s = pending[-1].pop()
        steps += 1
        symbols.append(s)
        hashes.append(hashes[-1] + weights[s])
        if _suffix_square_free(symbols, hashes, k, weights):
            if len(symbols) > len(best):
                best = tuple(symbols)
            pending.append(rng.sample(range(k), k))
        else:
            symbols.pop()
            hashes.pop()

    longest = Word(best, k)
    return GenerationResult(False, None, longest, steps, target)


@dataclass(frozen=True)
class MaxLengthResult:
    length: int
    witness: Word
    exact: bool
    nodes: int


def max_anagram_free_length(k: int, cap: int = 64) -> MaxLengthResult:
    """Exact maximum length of an anagram-free word over k symbols.

    Exhaustive DFS over the prefix tree of anagram-free words.  If any branch
    reaches ``cap`` the search stops and the result is a ">= cap" marker
    (exact=False); alphabets of four or more symbols admit unbounded words,
    so they always terminate this way.
    """
    if k < 1:
        raise ValueError("need k >= 1")
    weights = _weights(k)
    best: tuple = ()
    nodes = 0
    symbols: list = []
    hashes = [0]
    pending = [list(range(k - 1, -1, -1))]

    while pending:
        if not pending[-1]:
            pending.pop()
            if symbols:
                symbols.pop()
                hashes.pop()
            continue
        s = pending[-1].pop()
        symbols.append(s)
        hashes.append(hashes[-1] + weights[s])
        nodes += 1
        if _suffix_square_free(symbols, hashes, k, weights):
            if len(symbols) > len(best):
                best = tuple(symbols)
            if len(symbols) >= cap:
                return MaxLengthResult(len(best), Word(best, k), False, nodes)
            pending.append(list(range(k - 1, -1, -1)))
        else:
            symbols.pop()
            hashes.pop()

    return MaxLengthResult(len(best), Word(best, k), True, nodes)
