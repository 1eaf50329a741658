"""numba-compiled twins of the kernels in ``_numpy``."""

import numpy as np
from numba import njit, types
from numba.typed import Dict

NAME = "numba"

_opts = {"cache": True, "nogil": True}


@njit(**_opts)
def power_iterate(B, tol, max_iter):
    n = B.shape[0]
    x = np.ones(n)
    y = np.empty(n)
    est = 0.0
    width = np.inf
    for it in range(1, max_iter + 1):
        for i in range(n):
            acc = 0.0
            for j in range(n):
                acc += B[i, j] * x[j]
            y[i] = acc
        lo = np.inf
        hi = -np.inf
        top = 0.0
        for i in range(n):
            if x[i] <= 0.0:
                return est, width, it, False
            r = y[i] / x[i]
            if r < lo:
                lo = r
            if r > hi:
                hi = r
            if y[i] > top:
                top = y[i]
        est = 0.5 * (lo + hi)
        width = hi - lo
        if top <= 0.0:
            return 0.0, 0.0, it, True
        for i in range(n):
            x[i] = y[i] / top
        if width <= tol * max(1.0, hi):
            return est, width, it, True
    return est, width, max_iter, False


@njit(**_opts)
def _lz78_parse(codes, k):
    n = codes.shape[0]
    trie = Dict.empty(key_type=types.int64, value_type=types.int64)
    parent = np.empty(n, dtype=np.int64)
    ext = np.empty(n, dtype=np.int64)
    length = np.empty(n, dtype=np.int64)
    p = 0
    node = 0
    depth = 0
    next_id = 1
    for t in range(n):
        c = codes[t]
        key = node * k + c
        child = trie.get(key, -1)
        if child >= 0:
            node = child
            depth += 1
            continue
        trie[key] = next_id
        next_id += 1
        parent[p] = node
        ext[p] = c
        length[p] = depth + 1
        p += 1
        node = 0
        depth = 0
    if depth > 0:
        parent[p] = node
        ext[p] = -1
        length[p] = depth
        p += 1
    return parent[:p].copy(), ext[:p].copy(), length[:p].copy()


def lz78_parse(codes, k):
    return _lz78_parse(np.ascontiguousarray(codes, dtype=np.int64), max(int(k), 1))


@njit(**_opts)
def _ceil_log2(a):
    out = np.empty(a.shape[0], dtype=np.int64)
    for i in range(a.shape[0]):
        v = a[i] - 1
        b = 0
        while v > 0:
            v >>= 1
            b += 1
        out[i] = b
    return out


def ceil_log2(a):
    return _ceil_log2(np.ascontiguousarray(a, dtype=np.int64))


@njit(**_opts)
def block_means(values, blocks):
    n = values.shape[0]
    s = n // blocks
    out = np.empty(blocks)
    pos = 0
    for b in range(blocks):
        end = n if b == blocks - 1 else pos + s
        acc = 0.0
        for i in range(pos, end):
            acc += values[i]
        out[b] = acc / (end - pos)
        pos = end
    return out


@njit(**_opts)
def _dft_direct(x):
    n = x.shape[0]
    tw = np.empty(n, dtype=np.complex128)
    for j in range(n):
        tw[j] = np.exp(-2j * np.pi * j / n)
    out = np.empty(n, dtype=np.complex128)
    for k in range(n):
        acc = 0j
        m = 0
        for j in range(n):
            acc += x[j] * tw[m]
            m += k
            if m >= n:
                m -= n
        out[k] = acc
    return out


def dft_direct(x):
    return _dft_direct(np.ascontiguousarray(x, dtype=np.complex128))


@njit(**_opts)
def _fft_radix2(x):
    n = x.shape[0]
    a = x.copy()
    j = 0
    for i in range(1, n):
        bit = n >> 1
        while j & bit:
            j ^= bit
            bit >>= 1
        j |= bit
        if i < j:
            a[i], a[j] = a[j], a[i]
    size = 2
    while size <= n:
        half = size // 2
        for k in range(half):
            w = np.exp(-2j * np.pi * k / size)
            for start in range(0, n, size):
                u = a[start + k]
                v = a[start + k + half] * w
                a[start + k] = u + v
                a[start + k + half] = u - v
        size *= 2
    return a


def fft_radix2(x):
    return _fft_radix2(np.ascontiguousarray(x, dtype=np.complex128))


@njit(**_opts)
def circular_moving_average(m, w):
    n = m.shape[0]
    h = w // 2
    out = np.empty(n)
    for i in range(n):
        acc = 0.0
        for d in range(-h, h + 1):
            acc += m[(i + d) % n]
        out[i] = acc / w
    return out


@njit(**_opts)
def pairwise_split_distance(centered, means):
    t, n = centered.shape
    out = np.zeros((t, t))
    for i in range(t):
        for j in range(i + 1, t):
            acc = 0.0
            for k in range(n):
                d = centered[i, k] - centered[j, k]
                acc += d * d
            dm = means[i] - means[j]
            out[i, j] = acc + n * (dm * dm)
            out[j, i] = out[i, j]
    return out
