"""Autoregressive forecasting from a trained network and forecast scoring."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .dataset import encode_string
from .lzw import Alphabet
from .rnn import NetworkParams, forward_batch
from .textmetrics import SimilarityScore, similarity


@dataclass(frozen=True)
class ForecastResult:
    predicted: str
    scores: SimilarityScore
    horizon: int


def forecast(net: NetworkParams, seed_window: str, horizon: int, a: Alphabet) -> str:
    """Greedy argmax generation: predict, append, slide the window by one."""
    if a.size != net.input_size:
        raise ValueError(
            f"alphabet size {a.size} != network input size {net.input_size}"
        )
    window = encode_string(seed_window, a)
    out = []
    for _ in range(horizon):
        probs = forward_batch(net, window[None])[0]
        idx = int(np.argmax(probs))
        out.append(a.symbols[idx])
        step = np.zeros((1, a.size))
        step[0, idx] = 1.0
        window = np.vstack([window[1:], step])
    return "".join(out)


def score_forecast(predicted: str, v: str) -> SimilarityScore:
    return similarity(predicted, v)


def forecast_and_score(net: NetworkParams, seed_window: str, v: str,
                       horizon: int, a: Alphabet) -> ForecastResult:
    predicted = forecast(net, seed_window, horizon, a)
    return ForecastResult(
        predicted=predicted, scores=score_forecast(predicted, v), horizon=horizon
    )
