"""Greedy edge deletion search for θ-information-rich components (θ-IRCs)."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .errors import DomainError
from .rate import spectral_rate
from .system import Edge, TransitionSystem, clean, live_states, scc_indices

RATE_TOL = 1e-9


@dataclass(frozen=True)
class RichComponent:
    """A subgraph of ``parent`` carrying at least ``theta`` of its rate.

    ``trace_log`` records, in order, every edge the search tried and whether
    the deletion stuck (``"deleted"``) or was undone (``"restored"``).
    ``rate_calls`` counts the rate computations made by the deletion loop
    (at most one per edge); ``prune_calls`` those of the pruning pass.
    """

    parent: TransitionSystem
    kept_states: tuple[str, ...]
    kept_edges: tuple[Edge, ...]
    entry: str
    exit: str
    rate: float
    theta: float
    trace_log: tuple[tuple[Edge, str], ...] = ()
    rate_calls: int = 0
    prune_calls: int = 0

    def as_system(self) -> TransitionSystem:
        return TransitionSystem(self.kept_states, self.entry, self.exit, self.kept_edges)

    def to_dict(self, with_log: bool = False) -> dict:
        d = {
            "kept_states": list(self.kept_states),
            "kept_edges": [_edge_dict(e) for e in self.kept_edges],
            "entry": self.entry,
            "exit": self.exit,
            "lambda": self.rate,
        }
        if with_log:
            d["log"] = [{"edge": _edge_dict(e), "action": a} for e, a in self.trace_log]
        return d


@dataclass(frozen=True)
class Verdict:
    rate_ok: bool
    minimal: bool
    witness: Edge | None = None
    component_rate: float = 0.0
    parent_rate: float = 0.0

    def __bool__(self) -> bool:
        return self.rate_ok and self.minimal


def _edge_dict(e: Edge) -> dict:
    d = {"from": e.src, "to": e.dst}
    if e.label is not None:
        d["label"] = e.label
    return d


def _check_theta(theta: float):
    if not 0.0 <= theta <= 1.0:
        raise DomainError(f"theta must lie in [0, 1], got {theta}")


def find_irc(M: TransitionSystem, theta: float, order: Sequence[int] | None = None,
             prune: bool = True) -> RichComponent:
    """Run the deletion search on ``M`` and return the richest surviving SCC.

    Edges of ``clean(M)`` are tried once each, in canonical order unless
    ``order`` (a permutation of their indices) is given. A deletion is kept
    when the remaining system, with M's enter and exit, still has rate at
    least ``theta * rate(M)``. The result is the surviving SCC of maximal
    rate (ties go to the smallest state index); its smallest-index state
    serves as both entry and exit.

    That SCC can still hold an edge whose deletion only failed the test
    because it cut the SCC off from M's enter or exit; measured from the
    component's own entry the rate survives. With ``prune`` (the default)
    such edges are removed in one further canonical-order pass, leaving the
    component of the entry, so the result is single-edge minimal.
    """
    _check_theta(theta)
    base = clean(M)
    lam = spectral_rate(M).rate
    if theta > 0 and lam <= 0.0:
        raise DomainError("rate is zero; any subgraph is a θ-IRC")
    threshold = theta * lam - RATE_TOL

    edges = list(base.edges)
    if order is None:
        order = range(len(edges))
    elif sorted(order) != list(range(len(edges))):
        raise DomainError("order must be a permutation of the cleaned edge indices")
    alive = [True] * len(edges)
    log = []
    calls = 0
    current = base
    for k in order:
        alive[k] = False
        trial = base.with_edges(e for e, a in zip(edges, alive) if a)
        if not _is_live_edge(current, edges[k]):
            # the edge is on no enter->exit path, so removing it cannot move the rate
            log.append((edges[k], "deleted"))
            current = trial
            continue
        calls += 1
        if spectral_rate(trial).rate >= threshold:
            log.append((edges[k], "deleted"))
            current = trial
        else:
            alive[k] = True
            log.append((edges[k], "restored"))

    comp, rate = _richest_scc(current)
    extra = 0
    if prune:
        comp, rate, extra = _prune(comp, rate, current, threshold, log)
    return RichComponent(parent=M, kept_states=tuple(sorted(comp.states, key=M.index.__getitem__)),
                         kept_edges=comp.edges, entry=comp.enter, exit=comp.exit, rate=rate,
                         theta=theta, trace_log=tuple(log), rate_calls=calls,
                         prune_calls=extra)


def _is_live_edge(ts: TransitionSystem, e: Edge) -> bool:
    live = live_states(ts)
    return bool(live) and live[ts.index[e.src]] and live[ts.index[e.dst]]


def _richest_scc(final: TransitionSystem) -> tuple[TransitionSystem, float]:
    best = None
    best_rate = -1.0
    for comp in scc_indices(final.n_states, final.successors):
        names = [final.states[i] for i in comp]
        sub = final.induced(names, enter=names[0], exit=names[0])
        r = spectral_rate(sub).rate if sub.edges else 0.0
        # strict improvement only, so ties resolve to the smallest index
        if r > best_rate + 1e-12:
            best, best_rate = sub, r
    if best is None:
        raise DomainError("system has no enter->exit path")
    return best, best_rate


def _prune(comp: TransitionSystem, rate: float, final: TransitionSystem, threshold: float, log
           ) -> tuple[TransitionSystem, float, int]:
    calls = 0
    for e in comp.edges:
        if e not in comp.edges:
            continue
        rest = clean(comp.with_edges(x for x in comp.edges if x != e))
        if rest.empty or not rest.edges:
            continue
        # if the entry's remaining cycles are still live in final - e, their
        # rate is bounded by rate(final - e), already known to be too low
        cut = final.with_edges(x for x in final.edges if x != e)
        live = live_states(cut)
        if live and live[cut.index[comp.enter]]:
            continue
        calls += 1
        r = spectral_rate(rest).rate
        if r >= threshold:
            comp, rate = rest, r
            log.append((e, "pruned"))
    return comp, rate, calls


def verify_irc(M: TransitionSystem, C: RichComponent | TransitionSystem, theta: float) -> Verdict:
    """Check the rate condition and single-edge minimality of a component.

    The component's rate is measured between its own entry and exit. It is
    minimal when removing any one of its edges drops that rate below
    ``theta * rate(M)``; the first edge that does not is the witness.
    """
    _check_theta(theta)
    sub = C.as_system() if isinstance(C, RichComponent) else C
    parent_edges = set(M.edges)
    if not set(sub.states) <= set(M.states) or not set(sub.edges) <= parent_edges:
        raise DomainError("component is not a subgraph of the system")
    lam = spectral_rate(M).rate
    threshold = theta * lam - RATE_TOL
    lam_c = spectral_rate(sub).rate
    rate_ok = lam_c >= threshold
    witness = None
    for k, e in enumerate(sub.edges):
        rest = sub.with_edges(sub.edges[:k] + sub.edges[k + 1:])
        if spectral_rate(rest).rate >= threshold:
            witness = e
            break
    return Verdict(rate_ok=rate_ok, minimal=witness is None, witness=witness,
                   component_rate=lam_c, parent_rate=lam)
