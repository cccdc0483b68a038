"""seqlab: a laboratory for training from-scratch LSTM/GRU networks on
symbol strings of controlled LZW complexity and scoring their forecasts."""

from .lzw import (
    Alphabet,
    LzwEncoding,
    lzw_complexity,
    lzw_decode,
    lzw_encode,
)
from .seedgen import SeedSpec, SeedString, batch_generate, generate_seed
from .dataset import (
    DatasetSpec,
    EncodedDataset,
    build_dataset,
    decode_one_hot,
    one_hot,
    repeat_to_length,
)
from .textmetrics import SimilarityScore, dl_similarity, jw_similarity, similarity
from .forecast import ForecastResult, forecast, score_forecast
from .rnn import TrainConfig, TrainReport, train

__all__ = [
    "Alphabet", "LzwEncoding", "lzw_encode", "lzw_decode", "lzw_complexity",
    "SeedSpec", "SeedString", "generate_seed", "batch_generate",
    "DatasetSpec", "EncodedDataset", "build_dataset", "repeat_to_length",
    "one_hot", "decode_one_hot",
    "SimilarityScore", "dl_similarity", "jw_similarity", "similarity",
    "ForecastResult", "forecast", "score_forecast",
    "TrainConfig", "TrainReport", "train",
]

__version__ = "0.1.0"
