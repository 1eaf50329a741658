"""Information rate of a transition system.

The rate is the growth exponent of the number of enter->exit paths. It is
computed two ways: exactly from the Perron root of the cleaned adjacency
matrix, and by big-integer path counting (used as an oracle).
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import _kernels
from .errors import DomainError, RateConvergenceError
from .system import TransitionSystem, clean, scc_indices

TOL = 1e-12
MAX_ITER = 100_000


@dataclass(frozen=True)
class RateResult:
    rho: float
    rate: float
    iterations: int = 0
    converged: bool = True
    residual: float = 0.0

    def to_dict(self) -> dict:
        return {"rho": self.rho, "lambda": self.rate}


@dataclass(frozen=True)
class PathCount:
    n: int
    count: int


def adjacency_matrix(ts: TransitionSystem) -> np.ndarray:
    """Adjacency counts; parallel labeled edges add their multiplicity."""
    A = np.zeros((ts.n_states, ts.n_states))
    for e in ts.edges:
        A[ts.index[e.src], ts.index[e.dst]] += 1.0
    return A


def rate_from_rho(rho: float) -> float:
    # log 0 = 0 by convention; rates never go negative
    return math.log2(rho) if rho > 1.0 else 0.0


def spectral_radius(ts: TransitionSystem, tol: float = TOL, max_iter: int = MAX_ITER
                    ) -> tuple[float, int, float]:
    """Spectral radius of the raw adjacency matrix of ``ts``.

    Each non-trivial SCC block B is irreducible, so B + I is primitive and the
    shifted power iteration converges geometrically; the radius of the whole
    matrix is the maximum over blocks. Working blockwise also sidesteps the
    slow algebraic convergence that equal-radius SCC chains (Jordan blocks)
    would cause on the full matrix.

    Returns ``(rho, iterations, residual)``; the residual is the relative
    width of the final Collatz-Wielandt bracket.
    """
    if ts.empty or not ts.edges:
        return 0.0, 0, 0.0
    A = adjacency_matrix(ts)
    rho = 0.0
    iterations = 0
    residual = 0.0
    for comp in scc_indices(ts.n_states, ts.successors):
        if len(comp) == 1:
            i = comp[0]
            # 1x1 block: its entry is the self-loop multiplicity
            if A[i, i] > rho:
                rho = float(A[i, i])
            continue
        B = A[np.ix_(comp, comp)] + np.eye(len(comp))
        est, width, its, ok = _kernels.power_iterate(B, tol, max_iter)
        iterations += its
        if not ok:
            raise RateConvergenceError(
                f"power iteration did not converge in {max_iter} iterations "
                f"(estimate {est - 1.0:.12g}, bracket width {width:.3g})",
                estimate=max(rho, est - 1.0), residual=width)
        # the stopping rule bounds the bracket width relative to the shifted root
        residual = max(residual, width / max(1.0, est))
        rho = max(rho, est - 1.0)
    return rho, iterations, residual


def spectral_rate(ts: TransitionSystem, tol: float = TOL, max_iter: int = MAX_ITER) -> RateResult:
    """Rate of ``ts`` from the Perron root of its cleaned adjacency matrix."""
    c = clean(ts)
    rho, its, res = spectral_radius(c, tol, max_iter)
    return RateResult(rho=rho, rate=rate_from_rho(rho), iterations=its, converged=True, residual=res)


def path_counts(ts: TransitionSystem, n_max: int) -> list[int]:
    """Exact enter->exit walk counts for every length 0..n_max."""
    if n_max < 0:
        raise DomainError("length must be non-negative")
    if ts.empty:
        return [0] * (n_max + 1)
    succ = ts.successors
    n = ts.n_states
    v = [0] * n
    v[ts.index[ts.enter]] = 1
    exit_i = ts.index[ts.exit]
    out = [v[exit_i]]
    for _ in range(n_max):
        w = [0] * n
        for u, c in enumerate(v):
            if c:
                for t, _ in succ[u]:
                    w[t] += c
        v = w
        out.append(v[exit_i])
    return out


def count_paths(ts: TransitionSystem, n: int) -> PathCount:
    """Number of length-``n`` walks from enter to exit."""
    return PathCount(n, path_counts(ts, n)[n])


def rate_estimate_from_counts(ts: TransitionSystem, n_lo: int, n_hi: int) -> float:
    """Least-squares slope of log2 S(n) over the non-zero counts in ``[n_lo, n_hi]``."""
    if not 0 <= n_lo < n_hi:
        raise DomainError("need 0 <= n_lo < n_hi")
    counts = path_counts(ts, n_hi)
    pts = [(n, math.log2(counts[n])) for n in range(n_lo, n_hi + 1) if counts[n] > 0]
    if len(pts) < 2:
        return 0.0
    xs = np.array([p[0] for p in pts], dtype=float)
    ys = np.array([p[1] for p in pts])
    xc = xs - xs.mean()
    return float(xc @ (ys - ys.mean()) / (xc @ xc))
