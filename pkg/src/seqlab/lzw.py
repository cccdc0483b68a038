"""LZW encoding/decoding over explicit alphabets, and the LZW complexity measure.

Dictionary indices start at 1 with the alphabet occupying slots 1..p.  The
dictionary grows without bound (no 12-bit cap); strings here are short and the
encoder is used as a compressibility measure, not a file compressor.
"""

from __future__ import annotations

from dataclasses import dataclass, field

DEFAULT_SYMBOLS = (
    "abcdefghijklmnopqrstuvwxyz"
    "ABCDEFGHIJKLMNOPQRSTUVWXYZ"
    "0123456789"
)


class AlphabetMismatchError(ValueError):
    """A character of the input string is not in the alphabet."""


class EmptyInputError(ValueError):
    """Encoding requires a non-empty string."""


class CorruptStreamError(ValueError):
    """A code in an LZW stream is out of range for its decode position."""


@dataclass(frozen=True)
class Alphabet:
    """An ordered set of distinct single-character symbols."""

    symbols: tuple[str, ...]
    index: dict[str, int] = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(set(self.symbols)) != len(self.symbols):
            raise ValueError("alphabet symbols must be distinct")
        if any(len(c) != 1 for c in self.symbols):
            raise ValueError("alphabet symbols must be single characters")
        object.__setattr__(
            self, "index", {c: i for i, c in enumerate(self.symbols)}
        )

    @property
    def size(self) -> int:
        return len(self.symbols)

    def __contains__(self, c: str) -> bool:
        return c in self.index

    def position(self, c: str) -> int:
        try:
            return self.index[c]
        except KeyError:
            raise AlphabetMismatchError(f"symbol {c!r} not in alphabet") from None

    @classmethod
    def default(cls, k: int) -> "Alphabet":
        """First k characters of a-z, A-Z, 0-9 (supports k up to 62)."""
        if not 1 <= k <= len(DEFAULT_SYMBOLS):
            raise ValueError(f"alphabet size must be in 1..{len(DEFAULT_SYMBOLS)}")
        return cls(tuple(DEFAULT_SYMBOLS[:k]))

    @classmethod
    def from_string(cls, symbols: str) -> "Alphabet":
        return cls(tuple(symbols))


@dataclass(frozen=True)
class LzwEncoding:
    codes: tuple[int, ...]
    dict_size_final: int


def lzw_encode(s: str, a: Alphabet) -> LzwEncoding:
    """Greedy longest-match LZW over alphabet `a`, codes 1-based."""
    if not s:
        raise EmptyInputError("cannot encode an empty string")
    table = {c: i + 1 for i, c in enumerate(a.symbols)}
    next_code = a.size + 1
    codes = []
    w = ""
    for c in s:
        if c not in a:
            raise AlphabetMismatchError(f"symbol {c!r} not in alphabet")
        wc = w + c
        if wc in table:
            w = wc
        else:
            codes.append(table[w])
            table[wc] = next_code
            next_code += 1
            w = c
    codes.append(table[w])
    return LzwEncoding(codes=tuple(codes), dict_size_final=next_code - 1)


def lzw_decode(e: LzwEncoding, a: Alphabet) -> str:
    """Inverse of lzw_encode, including the self-referential fresh-code case."""
    codes = e.codes
    if not codes:
        return ""
    table = {i + 1: c for i, c in enumerate(a.symbols)}
    next_code = a.size + 1
    if codes[0] not in table:
        raise CorruptStreamError(f"first code {codes[0]} out of range")
    prev = table[codes[0]]
    out = [prev]
    for code in codes[1:]:
        if code in table:
            entry = table[code]
        elif code == next_code:
            # The just-created entry, referenced before its first char is known.
            entry = prev + prev[0]
        else:
            raise CorruptStreamError(f"code {code} out of range (dict size {next_code - 1})")
        out.append(entry)
        table[next_code] = prev + entry[0]
        next_code += 1
        prev = entry
    return "".join(out)


def lzw_complexity(s: str, a: Alphabet) -> int:
    """Length of the LZW code array for s."""
    return len(lzw_encode(s, a).codes)


class IncrementalLzw:
    """Per-character LZW complexity tracker.

    Appending one character changes the complexity by 0 or +1, which the seed
    generator exploits to hit a target complexity exactly.
    """

    def __init__(self, a: Alphabet):
        self._a = a
        self._table = {c: i + 1 for i, c in enumerate(a.symbols)}
        self._next_code = a.size + 1
        self._emitted = 0
        self._w = ""

    @property
    def complexity(self) -> int:
        """Complexity of the string consumed so far, counting the pending flush."""
        return self._emitted + (1 if self._w else 0)

    def push(self, c: str) -> int:
        if c not in self._a:
            raise AlphabetMismatchError(f"symbol {c!r} not in alphabet")
        wc = self._w + c
        if wc in self._table:
            self._w = wc
        else:
            self._emitted += 1
            self._table[wc] = self._next_code
            self._next_code += 1
            self._w = c
        return self.complexity
