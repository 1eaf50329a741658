"""Execution traces and their LZ78 encoding with per-instruction bit costs.

Cost model: phrase ``i`` (1-based) costs ``ceil(log2 i)`` index bits plus a
fixed ``w = ceil(log2 |alphabet|)`` bits for its extension token. A trailing
partial phrase, which ends on an existing dictionary entry, pays the index
only. Each token of a phrase is charged the phrase cost divided evenly.
"""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import NamedTuple, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, ParseError


@dataclass(frozen=True)
class Trace:
    tokens: tuple[str, ...]

    @cached_property
    def alphabet(self) -> tuple[str, ...]:
        """Distinct tokens in order of first occurrence."""
        return tuple(dict.fromkeys(self.tokens))

    @property
    def length(self) -> int:
        return len(self.tokens)

    def __len__(self) -> int:
        return len(self.tokens)

    def codes(self) -> np.ndarray:
        lookup = {tok: i for i, tok in enumerate(self.alphabet)}
        return np.fromiter((lookup[t] for t in self.tokens), dtype=np.int64, count=len(self.tokens))


def read_trace(document: str | bytes, opcode_only: bool = False) -> Trace:
    """One token per line; blank lines and ``#`` comment lines are skipped.

    Lines are taken verbatim (only the line terminator is dropped). With
    ``opcode_only`` a line is reduced to its first whitespace-separated field.
    """
    if isinstance(document, bytes):
        try:
            document = document.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8 at byte offset {exc.start}") from None
    tokens = []
    for line in document.splitlines():
        if not line.strip() or line.startswith("#"):
            continue
        tokens.append(line.split()[0] if opcode_only else line)
    return Trace(tuple(tokens))


def read_trace_file(path, opcode_only: bool = False) -> Trace:
    with open(path, "rb") as fh:
        return read_trace(fh.read(), opcode_only=opcode_only)


class Phrase(NamedTuple):
    index: int
    token: str | None
    length: int
    bits: int


def symbol_width(alphabet_size: int) -> int:
    return (alphabet_size - 1).bit_length() if alphabet_size > 1 else 0


@dataclass(frozen=True, eq=False)
class Lz78Encoding:
    """Phrase list in columnar form plus the per-token bit charges.

    ``phrase_index[i]`` is the dictionary entry phrase ``i + 1`` extends
    (0 = empty phrase); ``phrase_token[i]`` indexes ``alphabet`` or is -1
    for a trailing partial phrase.
    """

    alphabet: tuple[str, ...]
    phrase_index: np.ndarray
    phrase_token: np.ndarray
    phrase_length: np.ndarray
    phrase_bits: np.ndarray
    per_symbol_bits: np.ndarray
    total_bits: int

    @property
    def length(self) -> int:
        return int(self.per_symbol_bits.shape[0])

    @property
    def width(self) -> int:
        return symbol_width(len(self.alphabet))

    @property
    def phrases(self) -> list[Phrase]:
        return [Phrase(int(i), None if t < 0 else self.alphabet[t], int(n), int(b))
                for i, t, n, b in zip(self.phrase_index, self.phrase_token,
                                      self.phrase_length, self.phrase_bits)]

    def exact_symbol_bits(self) -> list[Fraction]:
        """Per-token charges as exact rationals."""
        out = []
        for n, b in zip(self.phrase_length.tolist(), self.phrase_bits.tolist()):
            out.extend([Fraction(b, n)] * n)
        return out

    @classmethod
    def from_phrases(cls, phrases: Sequence[Phrase], alphabet: Sequence[str] | None = None
                     ) -> "Lz78Encoding":
        """Wrap an explicit phrase list (not validated; see :func:`lz78_decode`)."""
        if alphabet is None:
            alphabet = tuple(dict.fromkeys(p.token for p in phrases if p.token is not None))
        lookup = {tok: i for i, tok in enumerate(alphabet)}
        idx = np.array([p.index for p in phrases], dtype=np.int64)
        tok = np.array([-1 if p.token is None else lookup[p.token] for p in phrases],
                       dtype=np.int64)
        length = np.array([p.length for p in phrases], dtype=np.int64)
        bits = np.array([p.bits for p in phrases], dtype=np.int64)
        per = _spread(bits, length)
        return cls(tuple(alphabet), idx, tok, length, bits, per, int(bits.sum()))


def _spread(bits: np.ndarray, length: np.ndarray) -> np.ndarray:
    if length.size == 0:
        return np.zeros(0)
    return np.repeat(bits / length, length)


def lz78_encode(t: Trace) -> Lz78Encoding:
    """Incremental LZ78 parse of the token sequence with bit accounting."""
    alphabet = t.alphabet
    codes = t.codes()
    parent, ext, length = _kernels.lz78_parse(codes, max(len(alphabet), 1))
    w = symbol_width(len(alphabet))
    positions = np.arange(1, parent.shape[0] + 1, dtype=np.int64)
    bits = _kernels.ceil_log2(positions) + np.where(ext >= 0, w, 0)
    bits = bits.astype(np.int64)
    per = _spread(bits, length)
    return Lz78Encoding(alphabet, parent, ext, length, bits, per, int(bits.sum()))


def lz78_decode(e: Lz78Encoding) -> Trace:
    """Rebuild the token sequence, validating the phrase structure."""
    n = e.phrase_index.shape[0]
    # dictionary entry j stored as (parent entry, token code, length)
    parent = [0]
    token = [-1]
    size = [0]
    out: list[int] = []
    for i in range(n):
        idx = int(e.phrase_index[i])
        code = int(e.phrase_token[i])
        pos = i + 1
        if not 0 <= idx < pos or idx >= len(parent):
            raise ParseError(f"phrase {pos} refers to dictionary entry {idx} "
                             "that does not precede it")
        if code < 0 and i != n - 1:
            raise ParseError(f"phrase {pos} has no extension token but is not last")
        if code >= len(e.alphabet):
            raise ParseError(f"phrase {pos} has token code {code} outside the alphabet")
        expected = size[idx] + (1 if code >= 0 else 0)
        if int(e.phrase_length[i]) != expected:
            raise ParseError(f"phrase {pos} declares length {int(e.phrase_length[i])}, "
                             f"structure gives {expected}")
        chunk = []
        j = idx
        while j:
            chunk.append(token[j])
            j = parent[j]
        out.extend(reversed(chunk))
        if code >= 0:
            out.append(code)
            parent.append(idx)
            token.append(code)
            size.append(expected)
    alphabet = e.alphabet
    return Trace(tuple(alphabet[c] for c in out))


def exe_rate_estimate(e: Lz78Encoding) -> float:
    """Average encoded bits per instruction."""
    if e.length == 0:
        raise DomainError("empty trace has no rate")
    return e.total_bits / e.length


def rates_csv(e: Lz78Encoding) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "token_bits"])
    for i, b in enumerate(e.per_symbol_bits.tolist()):
        w.writerow([i, repr(b)])
    return buf.getvalue()
