"""Seed-string synthesis: strings with a chosen alphabet size and exact LZW complexity."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lzw import Alphabet, IncrementalLzw, lzw_complexity

MAX_RESTARTS = 100


class GenerationFailure(RuntimeError):
    def __init__(self, spec: "SeedSpec", closest: int):
        self.spec = spec
        self.closest = closest
        super().__init__(
            f"could not reach complexity {spec.target_complexity} within "
            f"{spec.max_length} characters (closest achieved: {closest})"
        )


class BatchGenerationFailure(RuntimeError):
    def __init__(self, failures: list[tuple[int, GenerationFailure]]):
        self.failures = failures
        detail = "; ".join(f"spec[{i}]: {e}" for i, e in failures)
        super().__init__(f"{len(failures)} spec(s) failed: {detail}")


@dataclass(frozen=True)
class SeedSpec:
    alphabet_size: int
    target_complexity: int
    max_length: int = 2400
    rng_seed: int = 0

    def __post_init__(self):
        if self.alphabet_size < 1:
            raise ValueError("alphabet_size must be positive")
        if self.target_complexity < self.alphabet_size:
            raise ValueError("target complexity must be >= alphabet size")
        if self.max_length < self.target_complexity:
            raise ValueError("max_length must be >= target complexity")


@dataclass(frozen=True)
class SeedString:
    text: str
    alphabet: Alphabet
    complexity: int


def generate_seed(spec: SeedSpec) -> SeedString:
    """Build a string whose LZW complexity equals the target exactly.

    Starts from a random permutation of the full alphabet (complexity k, all
    symbols covered) and appends uniformly random symbols, tracking complexity
    incrementally.  Each append raises complexity by at most 1, so the target
    is hit exactly, never overshot.
    """
    a = Alphabet.default(spec.alphabet_size)
    rng = np.random.default_rng(spec.rng_seed)
    closest = 0
    for _ in range(MAX_RESTARTS):
        order = rng.permutation(spec.alphabet_size)
        chars = [a.symbols[i] for i in order]
        tracker = IncrementalLzw(a)
        for c in chars:
            tracker.push(c)
        while tracker.complexity < spec.target_complexity and len(chars) < spec.max_length:
            c = a.symbols[rng.integers(spec.alphabet_size)]
            chars.append(c)
            tracker.push(c)
        closest = max(closest, tracker.complexity)
        if tracker.complexity == spec.target_complexity:
            text = "".join(chars)
            return SeedString(text=text, alphabet=a, complexity=lzw_complexity(text, a))
    raise GenerationFailure(spec, closest)


def batch_generate(specs: list[SeedSpec]) -> list[SeedString]:
    """Element-wise generate_seed; failures aggregated with their indices."""
    out = []
    failures = []
    for i, spec in enumerate(specs):
        try:
            out.append(generate_seed(spec))
        except GenerationFailure as e:
            failures.append((i, e))
    if failures:
        raise BatchGenerationFailure(failures)
    return out
