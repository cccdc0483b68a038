"""Sliding-window one-hot datasets built from repeated seed strings.

The seed string is repeated (whole copies) to reach a minimum length, the
trailing n characters become the validation string v, and the leading
|s| - n characters are traversed with a width-n window to give m = |s| - 2n
(window, next-char) pairs, split 95/5 into train and test.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .lzw import Alphabet
from .seedgen import SeedString


@dataclass(frozen=True)
class DatasetSpec:
    min_length: int
    window: int
    test_fraction: float = 0.05

    def __post_init__(self):
        if self.min_length <= 2 * self.window:
            raise ValueError("min_length must exceed twice the window")
        if not 0.0 < self.test_fraction < 1.0:
            raise ValueError("test_fraction must be in (0, 1)")


@dataclass(frozen=True)
class EncodedDataset:
    X_train: np.ndarray  # (m_train, n, p)
    y_train: np.ndarray  # (m_train, p)
    X_test: np.ndarray   # (m_test, n, p)
    y_test: np.ndarray   # (m_test, p)
    v: str
    alphabet: Alphabet
    m: int
    s: str
    window: int

    @property
    def train_window(self) -> str:
        """Last n characters of the training portion; the forecast seed window."""
        n = self.window
        return self.s[len(self.s) - 2 * n : len(self.s) - n]


def repeat_to_length(seed: SeedString, min_length: int) -> str:
    """Shortest whole-number-of-copies repetition reaching min_length."""
    if not seed.text:
        raise ValueError("seed string is empty")
    if min_length < 1:
        raise ValueError("min_length must be positive")
    reps = -(-min_length // len(seed.text))
    return seed.text * reps


def one_hot(sym: str, a: Alphabet) -> np.ndarray:
    v = np.zeros(a.size)
    v[a.position(sym)] = 1.0
    return v


def encode_string(s: str, a: Alphabet) -> np.ndarray:
    """One-hot encode a string to shape (len(s), p)."""
    idx = np.fromiter((a.position(c) for c in s), dtype=np.intp, count=len(s))
    out = np.zeros((len(s), a.size))
    out[np.arange(len(s)), idx] = 1.0
    return out


def decode_one_hot(v: np.ndarray, a: Alphabet) -> str:
    """Argmax symbol; ties break to the lowest index."""
    if len(v) != a.size:
        raise ValueError(f"vector length {len(v)} != alphabet size {a.size}")
    return a.symbols[int(np.argmax(v))]


def build_dataset(seed: SeedString, spec: DatasetSpec, rng_seed: int = 0) -> EncodedDataset:
    s = repeat_to_length(seed, spec.min_length)
    n = spec.window
    a = seed.alphabet
    if len(s) <= 2 * n:
        raise ValueError(f"repeated string of length {len(s)} too short for window {n}")
    m = len(s) - 2 * n
    v = s[-n:]
    enc = encode_string(s, a)
    # Windows over the leading |s| - n characters; target is the next char.
    X = np.stack([enc[i : i + n] for i in range(m)])
    y = enc[n : n + m]
    # 5% test rows sampled uniformly; the data is periodic, so position carries
    # no information and random sampling avoids phase bias.
    rng = np.random.default_rng(rng_seed)
    n_test = round(spec.test_fraction * m)
    test_idx = np.sort(rng.choice(m, size=n_test, replace=False))
    mask = np.zeros(m, dtype=bool)
    mask[test_idx] = True
    return EncodedDataset(
        X_train=X[~mask],
        y_train=y[~mask],
        X_test=X[mask],
        y_test=y[mask],
        v=v,
        alphabet=a,
        m=m,
        s=s,
        window=n,
    )
