"""Finite state transition systems: data model, JSON I/O, cleaning, SCCs, composition."""

from __future__ import annotations

import json
from collections import deque
from dataclasses import dataclass, field
from functools import cached_property
from typing import Iterable, NamedTuple, Sequence

from .errors import ParseError

EPSILON = None

CHOICE_ENTER = "⊞"
CHOICE_EXIT = "⊠"
SUPER_ENTER = "⊳"
SUPER_EXIT = "⊲"


class Edge(NamedTuple):
    src: str
    dst: str
    label: str | None = EPSILON

    def __str__(self) -> str:
        lab = "ε" if self.label is None else self.label
        return f"{self.src}-{lab}->{self.dst}"


@dataclass(frozen=True)
class TransitionSystem:
    """Directed graph with a designated enter and exit state.

    State order is significant: a state's position in ``states`` is its
    internal index and the tie-break order used by every algorithm here.
    Edge order is likewise canonical. ``empty`` marks the degenerate system
    whose enter cannot reach its exit; it has no states.
    """

    states: tuple[str, ...]
    enter: str
    exit: str
    edges: tuple[Edge, ...] = ()
    empty: bool = False

    def __post_init__(self):
        object.__setattr__(self, "states", tuple(self.states))
        object.__setattr__(self, "edges", tuple(Edge(*e) for e in self.edges))
        if len(set(self.states)) != len(self.states):
            seen = set()
            dup = next(s for s in self.states if s in seen or seen.add(s))
            raise ParseError(f"duplicate state {dup!r}")
        if self.empty:
            if self.states or self.edges:
                raise ParseError("empty-flagged system must have no states")
            return
        index = self.index
        for name, s in (("enter", self.enter), ("exit", self.exit)):
            if s not in index:
                raise ParseError(f"unknown state {s!r} used as {name}")
        seen_edges = set()
        for e in self.edges:
            for s in (e.src, e.dst):
                if s not in index:
                    raise ParseError(f"unknown state {s!r} in edge {e}")
            if e in seen_edges:
                raise ParseError(f"duplicate edge {e}")
            seen_edges.add(e)

    @classmethod
    def empty_system(cls, enter: str, exit: str) -> "TransitionSystem":
        return cls((), enter, exit, (), empty=True)

    @cached_property
    def index(self) -> dict[str, int]:
        return {s: i for i, s in enumerate(self.states)}

    @property
    def n_states(self) -> int:
        return len(self.states)

    @cached_property
    def alphabet(self) -> frozenset[str]:
        return frozenset(e.label for e in self.edges if e.label is not None)

    @cached_property
    def successors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        """Per state index, the ``(dst_index, edge_index)`` pairs in edge order."""
        out: list[list[tuple[int, int]]] = [[] for _ in self.states]
        for k, e in enumerate(self.edges):
            out[self.index[e.src]].append((self.index[e.dst], k))
        return tuple(tuple(x) for x in out)

    @cached_property
    def predecessors(self) -> tuple[tuple[tuple[int, int], ...], ...]:
        out: list[list[tuple[int, int]]] = [[] for _ in self.states]
        for k, e in enumerate(self.edges):
            out[self.index[e.dst]].append((self.index[e.src], k))
        return tuple(tuple(x) for x in out)

    @property
    def is_labeled(self) -> bool:
        return any(e.label is not None for e in self.edges)

    def with_edges(self, edges: Iterable[Edge]) -> "TransitionSystem":
        """Same states, enter and exit; different edge set."""
        if self.empty:
            return self
        return TransitionSystem(self.states, self.enter, self.exit, tuple(edges))

    def induced(self, keep: Iterable[str], enter: str | None = None,
                exit: str | None = None) -> "TransitionSystem":
        """Induced subsystem on ``keep`` (original order preserved)."""
        keep = set(keep)
        states = tuple(s for s in self.states if s in keep)
        edges = tuple(e for e in self.edges if e.src in keep and e.dst in keep)
        return TransitionSystem(states, self.enter if enter is None else enter,
                                self.exit if exit is None else exit, edges)

    def relabel(self, mapping) -> "TransitionSystem":
        """Apply ``mapping`` (callable on labels) to every edge label."""
        return self.with_edges(Edge(e.src, e.dst, mapping(e.label)) for e in self.edges)


@dataclass(frozen=True)
class SyncPairSet:
    """Synchronization pairs between states of two systems.

    Each state may appear in at most one pair on its side.
    """

    pairs: frozenset[tuple[str, str]] = field(default_factory=frozenset)

    def __post_init__(self):
        pairs = frozenset(tuple(p) for p in self.pairs)
        object.__setattr__(self, "pairs", pairs)
        left = [p[0] for p in pairs]
        right = [p[1] for p in pairs]
        for side, xs in (("first", left), ("second", right)):
            if len(set(xs)) != len(xs):
                dup = next(x for x in xs if xs.count(x) > 1)
                raise ParseError(f"state {dup!r} of the {side} system appears in more than one pair")

    @cached_property
    def first(self) -> dict[str, str]:
        return {a: b for a, b in self.pairs}

    @cached_property
    def second(self) -> dict[str, str]:
        return {b: a for a, b in self.pairs}

    def __len__(self) -> int:
        return len(self.pairs)

    def __iter__(self):
        return iter(sorted(self.pairs))


# ---------------------------------------------------------------------------
# JSON I/O

_SYSTEM_KEYS = {"states", "enter", "exit", "edges"}
_EDGE_KEYS = {"from", "to", "label"}


def _load_json(text: str | bytes):
    if isinstance(text, bytes):
        try:
            text = text.decode("utf-8")
        except UnicodeDecodeError as exc:
            raise ParseError(f"invalid UTF-8 at byte {exc.start}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"malformed JSON: {exc}") from None


def _expect_str(value, what: str) -> str:
    if not isinstance(value, str):
        raise ParseError(f"{what} must be a string, got {value!r}")
    return value


def parse_system(text: str | bytes, normalize: bool = False) -> TransitionSystem:
    """Parse the transition-system JSON document.

    With ``normalize=True``, ``enter`` and ``exit`` may also be arrays of
    state ids; several entering (exit) states are then joined under a fresh
    super-enter ``⊳`` (super-exit ``⊲``) with ε-edges.
    """
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    unknown = set(doc) - _SYSTEM_KEYS
    if unknown:
        raise ParseError(f"unknown key {sorted(unknown)[0]!r}")
    for key in ("states", "enter", "exit"):
        if key not in doc:
            raise ParseError(f"missing {key!r}")
    states = doc["states"]
    if not isinstance(states, list):
        raise ParseError("'states' must be an array")
    states = [_expect_str(s, "state id") for s in states]
    known = set(states)

    edges = []
    for i, item in enumerate(doc.get("edges", [])):
        if not isinstance(item, dict):
            raise ParseError(f"edge #{i} must be an object")
        bad = set(item) - _EDGE_KEYS
        if bad:
            raise ParseError(f"unknown key {sorted(bad)[0]!r} in edge #{i}")
        if "from" not in item or "to" not in item:
            raise ParseError(f"edge #{i} needs 'from' and 'to'")
        src = _expect_str(item["from"], f"edge #{i} 'from'")
        dst = _expect_str(item["to"], f"edge #{i} 'to'")
        label = item.get("label")
        if label is not None:
            label = _expect_str(label, f"edge #{i} 'label'")
        edges.append(Edge(src, dst, label))

    enter, exit_ = doc["enter"], doc["exit"]
    extra_states = []
    if normalize:
        enters = enter if isinstance(enter, list) else [enter]
        exits = exit_ if isinstance(exit_, list) else [exit_]
        enters = [_expect_str(s, "enter") for s in enters]
        exits = [_expect_str(s, "exit") for s in exits]
        for s in enters + exits:
            if s not in known:
                raise ParseError(f"unknown state {s!r}")
        if not enters or not exits:
            raise ParseError("enter and exit must be non-empty")
        if len(enters) > 1:
            extra_states.append(SUPER_ENTER)
            edges = [Edge(SUPER_ENTER, s) for s in enters] + edges
            enter = SUPER_ENTER
        else:
            enter = enters[0]
        if len(exits) > 1:
            extra_states.append(SUPER_EXIT)
            edges = edges + [Edge(s, SUPER_EXIT) for s in exits]
            exit_ = SUPER_EXIT
        else:
            exit_ = exits[0]
    else:
        enter = _expect_str(enter, "enter")
        exit_ = _expect_str(exit_, "exit")
    for s in extra_states:
        if s in known:
            raise ParseError(f"state id {s!r} is reserved for normalization")
    return TransitionSystem(tuple(states) + tuple(extra_states), enter, exit_, tuple(edges))


def system_to_dict(ts: TransitionSystem) -> dict:
    edges = []
    for e in ts.edges:
        d = {"from": e.src, "to": e.dst}
        if e.label is not None:
            d["label"] = e.label
        edges.append(d)
    return {"states": list(ts.states), "enter": ts.enter, "exit": ts.exit, "edges": edges}


def dump_system(ts: TransitionSystem) -> str:
    return json.dumps(system_to_dict(ts), ensure_ascii=False, indent=1)


def parse_pairs(text: str | bytes) -> SyncPairSet:
    doc = _load_json(text)
    if not isinstance(doc, dict):
        raise ParseError("top-level value must be an object")
    unknown = set(doc) - {"pairs"}
    if unknown:
        raise ParseError(f"unknown key {sorted(unknown)[0]!r}")
    raw = doc.get("pairs", [])
    if not isinstance(raw, list):
        raise ParseError("'pairs' must be an array")
    pairs = []
    for p in raw:
        if not (isinstance(p, list) and len(p) == 2):
            raise ParseError(f"pair {p!r} must be a two-element array")
        pairs.append((_expect_str(p[0], "pair state"), _expect_str(p[1], "pair state")))
    if len(set(pairs)) != len(pairs):
        raise ParseError("duplicate pair")
    return SyncPairSet(frozenset(pairs))


# ---------------------------------------------------------------------------
# graph algorithms

def _bfs(start: int, adj) -> list[bool]:
    seen = [False] * len(adj)
    seen[start] = True
    queue = deque([start])
    while queue:
        u = queue.popleft()
        for v, _ in adj[u]:
            if not seen[v]:
                seen[v] = True
                queue.append(v)
    return seen


def live_states(ts: TransitionSystem) -> list[bool]:
    """Mask of states lying on some enter->exit path."""
    if ts.empty:
        return []
    fwd = _bfs(ts.index[ts.enter], ts.successors)
    bwd = _bfs(ts.index[ts.exit], ts.predecessors)
    return [a and b for a, b in zip(fwd, bwd)]


def clean(ts: TransitionSystem) -> TransitionSystem:
    """Induced subsystem on the states that lie on an enter->exit path.

    Returns an empty-flagged system when exit is unreachable from enter.
    """
    if ts.empty:
        return ts
    live = live_states(ts)
    if not live[ts.index[ts.exit]]:
        return TransitionSystem.empty_system(ts.enter, ts.exit)
    if all(live):
        return ts
    return ts.induced(s for s, ok in zip(ts.states, live) if ok)


def scc_indices(n: int, succ) -> list[list[int]]:
    """Tarjan's algorithm (iterative) over ``succ[u] -> iterable of (v, _)``.

    Components are returned ordered by their smallest member, members sorted.
    """
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: list[int] = []
    comps: list[list[int]] = []
    counter = 0
    for root in range(n):
        if index[root] != -1:
            continue
        work = [(root, iter(succ[root]))]
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        while work:
            u, it = work[-1]
            advanced = False
            for v, _ in it:
                if index[v] == -1:
                    index[v] = low[v] = counter
                    counter += 1
                    stack.append(v)
                    on_stack[v] = True
                    work.append((v, iter(succ[v])))
                    advanced = True
                    break
                if on_stack[v]:
                    low[u] = min(low[u], index[v])
            if advanced:
                continue
            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[u])
            if low[u] == index[u]:
                comp = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    comp.append(w)
                    if w == u:
                        break
                comps.append(sorted(comp))
    comps.sort(key=lambda c: c[0])
    return comps


def scc_decompose(ts: TransitionSystem) -> list[tuple[str, ...]]:
    """Maximal strongly connected components, ordered by smallest state index."""
    if ts.empty:
        return []
    return [tuple(ts.states[i] for i in comp)
            for comp in scc_indices(ts.n_states, ts.successors)]


def is_trivial_scc(ts: TransitionSystem, comp: Sequence[str]) -> bool:
    """A singleton without a self-loop."""
    if len(comp) != 1:
        return False
    s = comp[0]
    return not any(e.src == s and e.dst == s for e in ts.edges)


# ---------------------------------------------------------------------------
# composition

def _disjoint(m1: TransitionSystem, m2: TransitionSystem):
    if set(m1.states) & set(m2.states) or (m1.empty or m2.empty) and (
            {m1.enter, m1.exit} & {m2.enter, m2.exit}):
        def pre(m, tag):
            if m.empty:
                return TransitionSystem.empty_system(tag + m.enter, tag + m.exit)
            return TransitionSystem(tuple(tag + s for s in m.states), tag + m.enter, tag + m.exit,
                                    tuple(Edge(tag + e.src, tag + e.dst, e.label) for e in m.edges))
        return pre(m1, "1:"), pre(m2, "2:")
    return m1, m2


def compose(m1: TransitionSystem, m2: TransitionSystem, mode: str = "sequential") -> TransitionSystem:
    """Sequential ``(M1;M2)`` or nondeterministic-choice ``(M1 □ M2)`` composition.

    Overlapping state ids are disambiguated by prefixing ``1:`` / ``2:``.
    Choice adds a fresh enter ``⊞`` and a fresh joint exit ``⊠``.
    """
    m1, m2 = _disjoint(m1, m2)
    if mode == "sequential":
        if m1.empty or m2.empty:
            return TransitionSystem.empty_system(m1.enter, m2.exit)
        return TransitionSystem(m1.states + m2.states, m1.enter, m2.exit,
                                m1.edges + (Edge(m1.exit, m2.enter),) + m2.edges)
    if mode == "choice":
        parts = [m for m in (m1, m2) if not m.empty]
        if not parts:
            return TransitionSystem.empty_system(CHOICE_ENTER, CHOICE_EXIT)
        states = [CHOICE_ENTER]
        edges = []
        for m in parts:
            if CHOICE_ENTER in m.index or CHOICE_EXIT in m.index:
                raise ParseError("state ids ⊞/⊠ are reserved for choice composition")
            states.extend(m.states)
            edges.append(Edge(CHOICE_ENTER, m.enter))
        for m in parts:
            edges.extend(m.edges)
        for m in parts:
            edges.append(Edge(m.exit, CHOICE_EXIT))
        states.append(CHOICE_EXIT)
        return TransitionSystem(tuple(states), CHOICE_ENTER, CHOICE_EXIT, tuple(edges))
    raise ValueError(f"unknown composition mode {mode!r}")


# ---------------------------------------------------------------------------
# word-level view (labels as input symbols, ε-edges silent)

def _eps_closure(ts: TransitionSystem, states: Iterable[int]) -> frozenset[int]:
    out = set(states)
    stack = list(out)
    while stack:
        u = stack.pop()
        for v, k in ts.successors[u]:
            if ts.edges[k].label is None and v not in out:
                out.add(v)
                stack.append(v)
    return frozenset(out)


def _move(ts: TransitionSystem, states: frozenset[int], symbol: str) -> frozenset[int]:
    nxt = {v for u in states for v, k in ts.successors[u] if ts.edges[k].label == symbol}
    return _eps_closure(ts, nxt)


def accepts(ts: TransitionSystem, word: Sequence[str]) -> bool:
    """Whether some enter->exit path of ``ts`` carries ``word`` as its labels."""
    if ts.empty:
        return False
    cur = _eps_closure(ts, [ts.index[ts.enter]])
    for a in word:
        cur = _move(ts, cur, a)
        if not cur:
            return False
    return ts.index[ts.exit] in cur


def accepted_words(ts: TransitionSystem, max_len: int) -> list[tuple[str, ...]]:
    """All label words of length <= ``max_len`` accepted by ``ts``, shortlex order."""
    if ts.empty:
        return []
    alphabet = sorted(ts.alphabet)
    exit_i = ts.index[ts.exit]
    out = []
    frontier = [((), _eps_closure(ts, [ts.index[ts.enter]]))]
    for length in range(max_len + 1):
        nxt = []
        for word, cur in frontier:
            if exit_i in cur:
                out.append(word)
            if length == max_len:
                continue
            for a in alphabet:
                s = _move(ts, cur, a)
                if s:
                    nxt.append((word + (a,), s))
        frontier = nxt
    return out
