"""Synchronous composition of two transition systems.

A path of ``M1 || M2`` is a word over unpaired M1 states, unpaired M2
states and synchronization pairs whose two projections are enter->exit
paths of M1 and of M2. Those words form a regular language; this module
builds its DFA and runs the edge-deletion search on the pair of systems.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from .errors import DomainError
from .irc import RATE_TOL, RichComponent, Verdict, _check_theta
from .rate import RateResult, path_counts, spectral_rate
from .system import Edge, SyncPairSet, TransitionSystem, clean

NOT_STARTED = None
Symbol = tuple  # (state of M1 or None, state of M2 or None)


def symbol_label(sym: Symbol) -> str:
    p, q = sym
    if q is None:
        return f"1:{p}"
    if p is None:
        return f"2:{q}"
    return f"({p},{q})"


def _state_id(c1, c2) -> str:
    return f"⟨{'⊥' if c1 is None else c1}|{'⊥' if c2 is None else c2}⟩"


@dataclass(frozen=True)
class SyncProduct:
    """Cleaned DFA accepting the paths of ``M1 || M2``.

    ``symbols`` maps every edge label of ``system`` to its path symbol.
    ``raw_states`` is the reachable state count before cleaning.
    """

    system: TransitionSystem
    symbols: dict
    raw_states: int

    def word_counts(self, n_max: int) -> list[int]:
        # deterministic, so accepted words of length n = enter->exit paths of length n
        return path_counts(self.system, n_max)


def path_alphabet(M1: TransitionSystem, M2: TransitionSystem, pairs: SyncPairSet) -> list[Symbol]:
    """The alphabet Q̂1 ∪ Π ∪ Q̂2 in canonical order."""
    for a, b in pairs.pairs:
        if a not in M1.index:
            raise DomainError(f"pair references unknown state {a!r} of the first system")
        if b not in M2.index:
            raise DomainError(f"pair references unknown state {b!r} of the second system")
    syms: list[Symbol] = [(p, None) for p in M1.states if p not in pairs.first]
    syms += sorted(((a, b) for a, b in pairs.pairs), key=lambda ab: M1.index[ab[0]])
    syms += [(None, q) for q in M2.states if q not in pairs.second]
    return syms


def _step(cur, target, enter, moves) -> bool:
    if cur is NOT_STARTED:
        return target == enter
    return (cur, target) in moves


def build_sync_product(M1: TransitionSystem, M2: TransitionSystem,
                       pairs: SyncPairSet | None = None) -> SyncProduct:
    """DFA over path symbols whose states record each machine's progress."""
    pairs = pairs or SyncPairSet()
    if M1.empty or M2.empty:
        empty = TransitionSystem.empty_system(_state_id(None, None), _state_id(M1.exit, M2.exit))
        return SyncProduct(empty, {}, 0)
    syms = path_alphabet(M1, M2, pairs)
    moves1 = {(e.src, e.dst) for e in M1.edges}
    moves2 = {(e.src, e.dst) for e in M2.edges}

    start = (NOT_STARTED, NOT_STARTED)
    order = [start]
    seen = {start}
    edges = []
    queue = deque([start])
    while queue:
        c1, c2 = queue.popleft()
        for p, q in syms:
            n1, n2 = c1, c2
            if p is not None:
                if not _step(c1, p, M1.enter, moves1):
                    continue
                n1 = p
            if q is not None:
                if not _step(c2, q, M2.enter, moves2):
                    continue
                n2 = q
            nxt = (n1, n2)
            edges.append(((c1, c2), nxt, (p, q)))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)

    accept = (M1.exit, M2.exit)
    labels = {symbol_label(s): s for s in syms}
    if len(labels) != len(syms):
        raise DomainError("state ids make path-symbol labels ambiguous")
    if accept not in seen:
        empty = TransitionSystem.empty_system(_state_id(*start), _state_id(*accept))
        return SyncProduct(empty, labels, len(order))
    ts = TransitionSystem(
        tuple(_state_id(*s) for s in order), _state_id(*start), _state_id(*accept),
        tuple(Edge(_state_id(*a), _state_id(*b), symbol_label(s)) for a, b, s in edges))
    return SyncProduct(clean(ts), labels, len(order))


def sync_rate(M1: TransitionSystem, M2: TransitionSystem, pairs: SyncPairSet | None = None
              ) -> RateResult:
    return spectral_rate(build_sync_product(M1, M2, pairs).system)


@dataclass(frozen=True)
class SyncIrc:
    """θ-IRC of a synchronous composition: one component per machine.

    Both components keep their machine's enter and exit; their ``rate`` is
    the composed rate ``rate(M1' || M2')``. Unpacks as ``(first, second)``.
    """

    first: RichComponent
    second: RichComponent
    rate: float
    parent_rate: float
    theta: float
    trace_log: tuple[tuple[int, Edge, str], ...]
    rate_calls: int

    def __iter__(self):
        return iter((self.first, self.second))

    def to_dict(self, with_log: bool = False) -> dict:
        d = {"first": self.first.to_dict(), "second": self.second.to_dict(),
             "lambda": self.rate, "lambda_parent": self.parent_rate}
        for part in (d["first"], d["second"]):
            del part["lambda"]
        if with_log:
            d["log"] = [{"machine": m, "edge": {"from": e.src, "to": e.dst, "label": e.label},
                         "action": a} for m, e, a in self.trace_log]
        return d


def _component(M: TransitionSystem, kept: list[Edge], rate: float, theta: float, log
               ) -> RichComponent:
    sub = M.with_edges(kept)
    keep = set(clean(sub).states) | {M.enter, M.exit}
    states = tuple(s for s in M.states if s in keep)
    return RichComponent(parent=M, kept_states=states, kept_edges=tuple(kept), entry=M.enter,
                         exit=M.exit, rate=rate, theta=theta, trace_log=tuple(log))


def find_sync_irc(M1: TransitionSystem, M2: TransitionSystem, pairs: SyncPairSet | None,
                  theta: float) -> SyncIrc:
    """Edge-deletion search over both machines (all M1 edges, then all M2 edges)."""
    _check_theta(theta)
    pairs = pairs or SyncPairSet()
    lam = sync_rate(M1, M2, pairs).rate
    if lam <= 0.0:
        raise DomainError("composed rate is zero")
    threshold = theta * lam - RATE_TOL
    alive = [[True] * len(M1.edges), [True] * len(M2.edges)]
    machines = (M1, M2)
    log = []
    calls = 0
    final_rate = lam
    for m in (0, 1):
        for k, e in enumerate(machines[m].edges):
            alive[m][k] = False
            subs = [M.with_edges(x for x, a in zip(M.edges, al) if a)
                    for M, al in zip(machines, alive)]
            calls += 1
            r = sync_rate(subs[0], subs[1], pairs).rate
            if r >= threshold:
                final_rate = r
                log.append((m + 1, e, "deleted"))
            else:
                alive[m][k] = True
                log.append((m + 1, e, "restored"))
    kept = [[x for x, a in zip(M.edges, al) if a] for M, al in zip(machines, alive)]
    comps = [_component(M, kept[m], final_rate, theta,
                        [(e, a) for mm, e, a in log if mm == m + 1])
             for m, M in enumerate(machines)]
    return SyncIrc(comps[0], comps[1], final_rate, lam, theta, tuple(log), calls)


def verify_sync_irc(M1: TransitionSystem, M2: TransitionSystem, pairs: SyncPairSet | None,
                    result: SyncIrc, theta: float) -> Verdict:
    """Rate condition plus single-edge minimality on either side."""
    pairs = pairs or SyncPairSet()
    lam = sync_rate(M1, M2, pairs).rate
    threshold = theta * lam - RATE_TOL
    s1 = M1.with_edges(result.first.kept_edges)
    s2 = M2.with_edges(result.second.kept_edges)
    got = sync_rate(s1, s2, pairs).rate
    witness = None
    for m, sub in ((0, s1), (1, s2)):
        for k, e in enumerate(sub.edges):
            cut = sub.with_edges(sub.edges[:k] + sub.edges[k + 1:])
            pair = (cut, s2) if m == 0 else (s1, cut)
            if sync_rate(pair[0], pair[1], pairs).rate >= threshold:
                witness = e
                break
        if witness is not None:
            break
    return Verdict(rate_ok=got >= threshold, minimal=witness is None, witness=witness,
                   component_rate=got, parent_rate=lam)
