import numpy as np
import pytest

from seqlab.dataset import (
    DatasetSpec,
    build_dataset,
    decode_one_hot,
    encode_string,
    one_hot,
    repeat_to_length,
)
from seqlab.lzw import Alphabet, AlphabetMismatchError, lzw_complexity
from seqlab.seedgen import SeedString


def _seed(text, symbols):
    a = Alphabet.from_string(symbols)
    return SeedString(text=text, alphabet=a, complexity=lzw_complexity(text, a))

ABC = _seed("abc", "abc")


def test_repeat_paper_example():
    assert len(repeat_to_length(ABC, 100)) == 102


def test_repeat_single_char():
    assert repeat_to_length(_seed("a", "a"), 5) == "aaaaa"


def test_repeat_whole_copies():
    assert repeat_to_length(_seed("ab", "ab"), 3) == "abab"


def test_paper_example_shapes():
    ds = build_dataset(ABC, DatasetSpec(min_length=100, window=10))
    assert len(ds.s) == 102
    assert ds.m == 82
    assert ds.v == "cabcabcabc"
    assert len(ds.X_train) + len(ds.X_test) == 82
    assert ds.X_train.shape[1:] == (10, 3)
    assert ds.y_train.shape[1:] == (3,)


def test_paper_example_first_pair():
    ds = build_dataset(ABC, DatasetSpec(min_length=100, window=10))
    a = ds.alphabet
    first_window = "".join(decode_one_hot(r, a) for r in
                           np.vstack([ds.X_train[0]]))
    # Row 0 of the full pair list is (abcabcabca, b); it lands in train or
    # test depending on the split draw, so rebuild the full ordered pairs.
    enc = encode_string(ds.s, a)
    assert "".join(a.symbols[i] for i in enc[:10].argmax(axis=1)) == "abcabcabca"
    assert a.symbols[int(enc[10].argmax())] == "b"
    assert len(first_window) == 10


def test_one_hot_vectors():
    a = Alphabet.from_string("abc")
    assert one_hot("a", a).tolist() == [1.0, 0.0, 0.0]
    assert one_hot("b", a).tolist() == [0.0, 1.0, 0.0]
    assert one_hot("c", a).tolist() == [0.0, 0.0, 1.0]
    with pytest.raises(AlphabetMismatchError):
        one_hot("z", a)


def test_decode_argmax_and_tie_break():
    a = Alphabet.from_string("abc")
    assert decode_one_hot(np.array([0.1, 0.7, 0.2]), a) == "b"
    assert decode_one_hot(np.array([0.5, 0.5, 0.0]), a) == "a"


def test_row_sums_and_reconstruction():
    ds = build_dataset(ABC, DatasetSpec(min_length=100, window=10))
    for X in (ds.X_train, ds.X_test):
        assert np.all(X.sum(axis=2) == 1.0)
    a = ds.alphabet
    enc = encode_string(ds.s, a)
    # window 0 plus all targets reproduce s without its first and last n chars
    targets = "".join(a.symbols[i] for i in enc[10 : 10 + ds.m].argmax(axis=1))
    assert targets == ds.s[10:-10]


def test_split_sizes():
    ds = build_dataset(ABC, DatasetSpec(min_length=100, window=10))
    assert len(ds.X_test) == round(0.05 * ds.m)
    assert len(ds.X_train) == ds.m - len(ds.X_test)


def test_split_determinism():
    d1 = build_dataset(ABC, DatasetSpec(min_length=100, window=10), rng_seed=4)
    d2 = build_dataset(ABC, DatasetSpec(min_length=100, window=10), rng_seed=4)
    assert np.array_equal(d1.X_test, d2.X_test)


def test_validation_disjoint_from_targets():
    ds = build_dataset(ABC, DatasetSpec(min_length=100, window=10))
    # last target is character |s|-n-1; v starts at |s|-n
    assert ds.s[-10:] == ds.v
    last_target_pos = 10 + ds.m - 1
    assert last_target_pos == len(ds.s) - 10 - 1


def test_train_window_precedes_validation():
    ds = build_dataset(ABC, DatasetSpec(min_length=100, window=10))
    assert ds.train_window + ds.v == ds.s[-20:]


def test_spec_validation():
    with pytest.raises(ValueError):
        DatasetSpec(min_length=20, window=10)
    with pytest.raises(ValueError):
        DatasetSpec(min_length=100, window=10, test_fraction=1.5)
