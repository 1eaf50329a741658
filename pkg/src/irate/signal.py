"""Bit-rate signals, their spectra, distances and coverage."""

from __future__ import annotations

import csv
import io
from dataclasses import dataclass
from typing import Iterable, Mapping, Sequence

import numpy as np

from . import _kernels
from .errors import DomainError, ParseError

DEFAULT_BLOCKS = 1000
DEFAULT_WINDOW = 5


@dataclass(frozen=True, eq=False)
class BitRateSignal:
    """Block-averaged bit rates; ``block_size`` is the nominal block length."""

    values: np.ndarray
    block_size: int = 1

    def __post_init__(self):
        v = np.asarray(self.values, dtype=np.float64)
        if v.ndim != 1:
            raise DomainError("signal must be one-dimensional")
        if not np.all(np.isfinite(v)) or np.any(v < 0):
            raise DomainError("signal values must be finite and non-negative")
        v.setflags(write=False)
        object.__setattr__(self, "values", v)

    @property
    def N(self) -> int:
        return int(self.values.shape[0])

    def __len__(self) -> int:
        return self.N

    @property
    def mean(self) -> float:
        return float(self.values.mean()) if self.N else 0.0

    def centered(self) -> np.ndarray:
        return self.values - self.mean


def as_signal(x) -> BitRateSignal:
    return x if isinstance(x, BitRateSignal) else BitRateSignal(np.asarray(x, dtype=float))


def block_signal(per_symbol_bits, blocks: int = DEFAULT_BLOCKS) -> BitRateSignal:
    """Cut the rate sequence into ``blocks`` consecutive blocks and average each.

    Blocks hold ``floor(L / blocks)`` instructions; the last block also takes
    the remainder.
    """
    rates = np.ascontiguousarray(per_symbol_bits, dtype=np.float64)
    if blocks < 1:
        raise DomainError("need at least one block")
    if rates.shape[0] < blocks:
        raise DomainError(f"fewer instructions than blocks ({rates.shape[0]} < {blocks})")
    return BitRateSignal(_kernels.block_means(rates, int(blocks)), rates.shape[0] // blocks)


def dft(x) -> np.ndarray:
    """N-point DFT: radix-2 FFT for powers of two, direct summation otherwise."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    if n == 0:
        return x.copy()
    if n & (n - 1) == 0:
        return _kernels.fft_radix2(x)
    return _kernels.dft_direct(x)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """DFT of a mean-removed signal.

    ``magnitudes`` are raw ``|X(k)|``; ``smoothed`` is their centered circular
    moving average of width ``window`` (equal to ``magnitudes`` when 1).
    """

    coefficients: np.ndarray
    magnitudes: np.ndarray
    smoothed: np.ndarray
    window: int

    @property
    def N(self) -> int:
        return int(self.coefficients.shape[0])

    @property
    def normalized_frequencies(self) -> np.ndarray:
        return np.arange(self.N) / self.N

    def peak_frequency(self) -> float:
        """Normalized frequency of the largest smoothed magnitude in ``(0, 1/2]``.

        Bin 0 is skipped: it is zero before smoothing, and the circular window
        only folds neighbouring bins into it.
        """
        half = self.N // 2 + 1
        return float((1 + np.argmax(self.smoothed[1:half])) / self.N)


def spectrum(x, window: int = 1) -> Spectrum:
    x = as_signal(x)
    n = x.N
    if n < 2:
        raise DomainError("spectrum needs at least two samples")
    if not (isinstance(window, (int, np.integer)) and window >= 1 and window % 2 == 1
            and window <= n):
        raise DomainError(f"window must be odd and within [1, {n}], got {window}")
    X = dft(x.centered())
    # the mean-removed signal sums to zero; drop the rounding residue
    X[0] = 0.0
    mags = np.abs(X)
    smooth = mags.copy() if window == 1 else _kernels.circular_moving_average(mags, int(window))
    return Spectrum(X, mags, smooth, int(window))


def _check_lengths(signals: Sequence[BitRateSignal]):
    lengths = {s.N for s in signals}
    if len(lengths) > 1:
        raise DomainError(f"signal lengths differ: {sorted(lengths)}")


def distance(x, y) -> float:
    """Squared distance ``||x_r - y_r||^2`` via ``||x - y||^2 + N (m_x - m_y)^2``."""
    # same kernel as the coverage matrix, so Cover({x, y}) == distance(x, y) exactly
    return float(pairwise_distances([x, y])[0, 1])


def direct_distance(x, y) -> float:
    """Squared distance computed directly on the raw signals."""
    x, y = as_signal(x), as_signal(y)
    _check_lengths([x, y])
    d = x.values - y.values
    return float(d @ d)


@dataclass(frozen=True, eq=False)
class CoverageReport:
    ids: tuple[str, ...]
    pairwise: np.ndarray
    cover: float
    relative: dict | None = None

    def to_dict(self) -> dict:
        d = {"cover": self.cover,
             "pairwise": [[a, b, float(self.pairwise[i, j])]
                          for i, a in enumerate(self.ids) for j, b in enumerate(self.ids)]}
        if self.relative is not None:
            d["relative"] = self.relative
        return d


def pairwise_distances(signals: Sequence[BitRateSignal]) -> np.ndarray:
    signals = [as_signal(s) for s in signals]
    if not signals:
        return np.zeros((0, 0))
    _check_lengths(signals)
    centered = np.vstack([s.centered() for s in signals])
    means = np.array([s.mean for s in signals])
    return _kernels.pairwise_split_distance(centered, means)


def cover(signals: Mapping[str, BitRateSignal] | Iterable[BitRateSignal]) -> CoverageReport:
    """Half the sum of squared distances over all ordered pairs of tests."""
    if isinstance(signals, Mapping):
        ids = tuple(str(k) for k in signals)
        sigs = [as_signal(v) for v in signals.values()]
    else:
        sigs = [as_signal(v) for v in signals]
        ids = tuple(str(i) for i in range(len(sigs)))
    if not sigs:
        raise DomainError("coverage needs at least one signal")
    D = pairwise_distances(sigs)
    return CoverageReport(ids, D, float(np.triu(D, 1).sum()))


def cover_rel(t, T: Iterable) -> float:
    """Sum of squared distances from ``t`` to each member of ``T``."""
    T = [as_signal(s) for s in T]
    if not T:
        raise DomainError("relative coverage needs a non-empty test set")
    t = as_signal(t)
    return float(sum(distance(t, s) for s in T))


def stats(x) -> dict:
    x = as_signal(x)
    if x.N < 1:
        raise DomainError("empty signal")
    c = x.centered()
    return {"mean": x.mean, "variance": float(c @ c / x.N)}


# ---------------------------------------------------------------------------
# CSV formats

def signal_csv(x: BitRateSignal) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["index", "rate"])
    for i, v in enumerate(x.values.tolist()):
        w.writerow([i, repr(v)])
    return buf.getvalue()


def read_signal_csv(text: str) -> BitRateSignal:
    rows = list(csv.reader(io.StringIO(text)))
    if not rows or rows[0] != ["index", "rate"]:
        raise ParseError("signal CSV must start with header 'index,rate'")
    vals = []
    for k, row in enumerate(rows[1:], start=1):
        if not row:
            continue
        try:
            i, v = int(row[0]), float(row[1])
        except (ValueError, IndexError):
            raise ParseError(f"bad signal CSV row {k}: {row!r}") from None
        if i != len(vals):
            raise ParseError(f"signal CSV row {k} has index {i}, expected {len(vals)}")
        vals.append(v)
    return BitRateSignal(np.array(vals))


def spectrum_csv(s: Spectrum) -> str:
    buf = io.StringIO()
    w = csv.writer(buf, lineterminator="\n")
    w.writerow(["normalized_frequency", "magnitude"])
    for f, m in zip(s.normalized_frequencies.tolist(), s.smoothed.tolist()):
        w.writerow([repr(f), repr(m)])
    return buf.getvalue()
