"""θ-information-rich input sets (θ-IRIs) as automata.

An IRI is the set of input words ``w(α γ β)`` where α is a fixed simple
path from enter into a θ-IRC, γ ranges over the IRC's internal paths and β
is a fixed simple path from the IRC to exit.
"""

from __future__ import annotations

import logging
from collections import deque
from dataclasses import dataclass

from .errors import DomainError
from .irc import RichComponent, find_irc
from .rate import spectral_rate
from .system import SUPER_EXIT, Edge, TransitionSystem, clean

log = logging.getLogger(__name__)


@dataclass(frozen=True)
class IriAutomaton:
    """Automaton accepting a θ-IRI.

    ``system`` carries input labels (ε = ``None``); ``path_system`` is the
    same graph before any projection (identical for unconstrained IRIs).
    ``origin[k]`` is the source edge behind edge ``k`` of ``system``.
    ``rate`` is measured on the path graph, not on the word set.
    """

    system: TransitionSystem
    path_system: TransitionSystem
    irc: RichComponent
    alpha: tuple[Edge, ...]
    beta: tuple[Edge, ...]
    origin: tuple[Edge, ...]
    rate: float
    theta: float


@dataclass(frozen=True)
class PathAutomaton:
    """Product of a labeled system M with a DFA for an input language L.

    Its edge labels are path symbols; ``edge_info[label]`` gives the
    underlying M edge (``None`` for the acceptance ε-step) and the input
    symbol consumed (``None`` for ε).
    """

    system: TransitionSystem
    edge_info: dict

    def project(self, ts: TransitionSystem | None = None) -> TransitionSystem:
        """Relabel path symbols to the input symbols they carry."""
        ts = self.system if ts is None else ts
        return ts.relabel(lambda lab: self.edge_info[lab][1])


def shortest_path(ts: TransitionSystem, src: str, dst: str) -> tuple[Edge, ...]:
    """BFS-shortest path as an edge tuple, lexicographically least by state index.

    Parallel edges resolve to the one earliest in edge order.
    """
    if src == dst:
        return ()
    s, t = ts.index[src], ts.index[dst]
    # per source, one edge per target: the earliest, visited by target index
    nbrs = []
    for u in range(ts.n_states):
        first = {}
        for v, k in ts.successors[u]:
            first.setdefault(v, k)
        nbrs.append(sorted(first.items()))
    parent: dict[int, int] = {s: -1}
    queue = deque([s])
    while queue:
        u = queue.popleft()
        for v, k in nbrs[u]:
            if v not in parent:
                parent[v] = k
                if v == t:
                    queue.clear()
                    break
                queue.append(v)
    if t not in parent:
        raise DomainError(f"no path from {src!r} to {dst!r}")
    path = []
    v = t
    while v != s:
        e = ts.edges[parent[v]]
        path.append(e)
        v = ts.index[e.src]
    return tuple(reversed(path))


def _assemble(base: TransitionSystem, irc: RichComponent, alpha, beta):
    """Glue α, the IRC and β into one system over fresh state copies."""
    def g(s):
        return f"γ:{s}"

    states = [f"α{i}:{e.src}" for i, e in enumerate(alpha)]
    edges, origin = [], []
    for i, e in enumerate(alpha):
        dst = states[i + 1] if i + 1 < len(alpha) else g(irc.entry)
        edges.append(Edge(states[i], dst, e.label))
        origin.append(e)
    states += [g(s) for s in irc.kept_states]
    for e in irc.kept_edges:
        edges.append(Edge(g(e.src), g(e.dst), e.label))
        origin.append(e)
    prev = g(irc.exit)
    for j, e in enumerate(beta):
        cur = f"β{j + 1}:{e.dst}"
        states.append(cur)
        edges.append(Edge(prev, cur, e.label))
        origin.append(e)
        prev = cur
    enter = states[0] if alpha else g(irc.entry)
    ts = TransitionSystem(tuple(states), enter, prev, tuple(edges))
    return ts, tuple(origin)


def find_iri(M: TransitionSystem, theta: float) -> IriAutomaton:
    """θ-IRI of a labeled system: α ⊕ θ-IRC ⊕ β with original labels."""
    if not 0.0 < theta <= 1.0:
        raise DomainError(f"theta must lie in (0, 1], got {theta}")
    irc = find_irc(M, theta)
    base = clean(M)
    alpha = shortest_path(base, base.enter, irc.entry)
    beta = shortest_path(base, irc.exit, base.exit)
    ts, origin = _assemble(base, irc, alpha, beta)
    return IriAutomaton(system=ts, path_system=ts, irc=irc, alpha=alpha, beta=beta,
                        origin=origin, rate=spectral_rate(ts).rate, theta=theta)


def normalize_accepting(L: TransitionSystem, accepting) -> TransitionSystem:
    """Join several accepting states under a fresh exit ``⊲`` with ε-edges."""
    accepting = [s for s in L.states if s in set(accepting)]
    if not accepting:
        raise DomainError("no accepting state")
    if len(accepting) == 1:
        return TransitionSystem(L.states, L.enter, accepting[0], L.edges)
    if SUPER_EXIT in L.index:
        raise DomainError(f"state id {SUPER_EXIT!r} is reserved")
    log.info("normalized %d accepting states under fresh exit %s", len(accepting), SUPER_EXIT)
    return TransitionSystem(L.states + (SUPER_EXIT,), L.enter, SUPER_EXIT,
                            L.edges + tuple(Edge(s, SUPER_EXIT) for s in accepting))


def dfa_view(L: TransitionSystem) -> tuple[dict, frozenset[str]]:
    """Transition map and accepting set of a deterministic labeled system.

    ε-edges are allowed only into an exit state without outgoing edges (the
    shape :func:`normalize_accepting` produces); their sources accept.
    """
    delta = {}
    accepting = {L.exit}
    for e in L.edges:
        if e.label is None:
            if e.dst != L.exit or any(x.src == L.exit for x in L.edges):
                raise DomainError(f"input language automaton has an ε-edge {e}; "
                                  "remove ε-moves upstream")
            accepting.add(e.src)
            continue
        key = (e.src, e.label)
        if key in delta and delta[key] != e.dst:
            raise DomainError(f"input language automaton is nondeterministic at {key}")
        delta[key] = e.dst
    return delta, frozenset(accepting)


def find_iri_language(L: TransitionSystem, theta: float, accepting=None) -> IriAutomaton:
    """θ-IRI of a regular language given by a deterministic labeled system."""
    if accepting is not None:
        L = normalize_accepting(L, accepting)
    dfa_view(L)
    if spectral_rate(L).rate <= 0.0:
        raise DomainError("language has rate zero")
    return find_iri(L, theta)


def build_constrained_path_automaton(M: TransitionSystem, L: TransitionSystem) -> PathAutomaton:
    """Paths of M from enter to exit whose input word lies in L.

    States pair an M state with an L state; an ε-labeled M edge leaves the
    L coordinate in place. Edge labels name the M edge taken (``e<k>``).
    """
    delta, accepting = dfa_view(L)
    if M.empty:
        return PathAutomaton(TransitionSystem.empty_system(M.enter, M.exit), {})

    def sid(u, l):
        return f"⟨{u}|{l}⟩"

    start = (M.enter, L.enter)
    seen = {start}
    order = [start]
    edges = []
    queue = deque([start])
    while queue:
        u, l = queue.popleft()
        for v, k in M.successors[M.index[u]]:
            a = M.edges[k].label
            nl = l if a is None else delta.get((l, a))
            if nl is None:
                continue
            nxt = (M.states[v], nl)
            edges.append(Edge(sid(u, l), sid(*nxt), f"e{k}"))
            if nxt not in seen:
                seen.add(nxt)
                order.append(nxt)
                queue.append(nxt)
    info = {f"e{k}": (e, e.label) for k, e in enumerate(M.edges)}
    finals = [s for s in order if s[0] == M.exit and s[1] in accepting]
    states = [sid(*s) for s in order]
    if not finals:
        return PathAutomaton(TransitionSystem.empty_system(sid(*start), sid(M.exit, L.exit)), info)
    if len(finals) == 1:
        exit_id = sid(*finals[0])
    else:
        exit_id = SUPER_EXIT
        states.append(exit_id)
        info["acc"] = (None, None)
        edges.extend(Edge(sid(*f), exit_id, "acc") for f in finals)
    ts = TransitionSystem(tuple(states), sid(*start), exit_id, tuple(edges))
    return PathAutomaton(clean(ts), info)


def find_iri_constrained(M: TransitionSystem, L: TransitionSystem, theta: float) -> IriAutomaton:
    """θ-IRI of M restricted to inputs from L, projected to the input alphabet."""
    pa = build_constrained_path_automaton(M, L)
    if pa.system.empty or spectral_rate(pa.system).rate <= 0.0:
        raise DomainError("constrained rate is zero")
    iri = find_iri(pa.system, theta)
    projected = pa.project(iri.system)
    origin = tuple(pa.edge_info[e.label][0] for e in iri.system.edges)
    return IriAutomaton(system=projected, path_system=iri.system, irc=iri.irc, alpha=iri.alpha,
                        beta=iri.beta, origin=origin, rate=iri.rate, theta=theta)
