"""Pure numpy/Python reference implementations of the hot kernels.

Every function here has a twin of the same signature in ``_numba``.
"""

import numpy as np

NAME = "numpy"


def power_iterate(B, tol, max_iter):
    """Collatz-Wielandt power iteration for a primitive non-negative matrix.

    Returns ``(estimate, residual, iterations, converged)`` where residual is
    the width of the bracket ``min_i (Bx)_i/x_i <= rho <= max_i (Bx)_i/x_i``.
    """
    n = B.shape[0]
    x = np.ones(n)
    est = 0.0
    width = np.inf
    for it in range(1, max_iter + 1):
        y = B @ x
        if np.any(x <= 0.0):
            return est, width, it, False
        r = y / x
        lo = r.min()
        hi = r.max()
        est = 0.5 * (lo + hi)
        width = hi - lo
        top = y.max()
        if top <= 0.0:
            return 0.0, 0.0, it, True
        x = y / top
        if width <= tol * max(1.0, hi):
            return est, width, it, True
    return est, width, max_iter, False


def lz78_parse(codes, k):
    """Incremental LZ78 parse of integer symbols in ``[0, k)``.

    Returns ``(parent, ext, length)``: for phrase i (0-based) the dictionary
    index it extends (0 = empty phrase, j = phrase j 1-based), its extension
    symbol (-1 for a trailing partial phrase) and its length in symbols.
    """
    trie = {}
    parent = []
    ext = []
    length = []
    node = 0
    depth = 0
    next_id = 1
    for c in codes.tolist():
        key = (node, c)
        child = trie.get(key)
        if child is not None:
            node = child
            depth += 1
            continue
        trie[key] = next_id
        next_id += 1
        parent.append(node)
        ext.append(c)
        length.append(depth + 1)
        node = 0
        depth = 0
    if depth:
        parent.append(node)
        ext.append(-1)
        length.append(depth)
    return (np.asarray(parent, dtype=np.int64), np.asarray(ext, dtype=np.int64),
            np.asarray(length, dtype=np.int64))


def ceil_log2(a):
    """Exact ceil(log2 a) for positive integers (0 for a == 1)."""
    a = np.asarray(a, dtype=np.int64)
    _, e = np.frexp((a - 1).astype(np.float64))
    return e.astype(np.int64)


def block_means(values, blocks):
    """Means over ``blocks`` consecutive blocks; the last one absorbs the remainder."""
    n = values.shape[0]
    s = n // blocks
    bounds = np.arange(blocks + 1, dtype=np.int64) * s
    bounds[-1] = n
    csum = np.concatenate(([0.0], np.cumsum(values, dtype=np.float64)))
    sizes = np.diff(bounds)
    return (csum[bounds[1:]] - csum[bounds[:-1]]) / sizes


def dft_direct(x):
    """O(N^2) DFT, evaluated in row chunks to bound memory."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    out = np.empty(n, dtype=np.complex128)
    j = np.arange(n)
    step = max(1, min(n, (1 << 22) // max(n, 1)))
    for start in range(0, n, step):
        k = np.arange(start, min(n, start + step))
        # reduce k*j mod n in integers before scaling keeps the phase accurate
        phase = (np.outer(k, j) % n) * (-2.0 * np.pi / n)
        out[start:start + k.size] = np.exp(1j * phase) @ x
    return out


def fft_radix2(x):
    """Iterative radix-2 decimation-in-time FFT; ``len(x)`` must be a power of two."""
    x = np.asarray(x, dtype=np.complex128)
    n = x.shape[0]
    bits = n.bit_length() - 1
    idx = np.arange(n)
    rev = np.zeros(n, dtype=np.int64)
    for b in range(bits):
        rev |= ((idx >> b) & 1) << (bits - 1 - b)
    a = x[rev].copy()
    size = 2
    while size <= n:
        half = size // 2
        tw = np.exp(-2j * np.pi * np.arange(half) / size)
        a = a.reshape(-1, size)
        even = a[:, :half].copy()
        odd = a[:, half:] * tw
        a[:, :half] = even + odd
        a[:, half:] = even - odd
        a = a.reshape(-1)
        size *= 2
    return a


def circular_moving_average(m, w):
    """Centered moving average of odd width ``w`` with circular wrap."""
    n = m.shape[0]
    h = w // 2
    out = np.zeros(n)
    for d in range(-h, h + 1):
        out += np.roll(m, -d)
    return out / w


def pairwise_split_distance(centered, means):
    """Pairwise ``||x - y||^2 + N (m_x - m_y)^2`` over rows of mean-removed signals."""
    t, n = centered.shape
    out = np.zeros((t, t))
    for i in range(t):
        diff = centered[i + 1:] - centered[i]
        d = np.einsum("ij,ij->i", diff, diff) + n * (means[i + 1:] - means[i]) ** 2
        out[i, i + 1:] = d
        out[i + 1:, i] = d
    return out
