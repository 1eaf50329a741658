import itertools

import numpy as np
import pytest

from helpers import LOG2_PHI, chain, complete2, fib, pendant_fib, random_system, ts
from irate.errors import DomainError
from irate.irc import RichComponent, find_irc, verify_irc
from irate.rate import spectral_rate
from irate.system import Edge, clean


def _best_by_exhaustion(M, theta):
    """All edge subsets of M, as subsystems rooted anywhere, that pass both checks."""
    lam = spectral_rate(M).rate
    good = []
    for k in range(1, len(M.edges) + 1):
        for sub in itertools.combinations(M.edges, k):
            states = sorted({s for e in sub for s in e[:2]}, key=M.index.get)
            C = ts(states, states[0], states[0], sub)
            if verify_irc(M, C, theta):
                good.append(frozenset(sub))
    return lam, good


def test_pendant_fibonacci_theta_one():
    M = pendant_fib()
    c = find_irc(M, 1.0)
    assert set(c.kept_states) == {"a", "b"}
    assert set(c.kept_edges) == {Edge("a", "a", "x"), Edge("a", "b", "y"), Edge("b", "a", "z")}
    assert c.entry == c.exit == "a"
    assert c.rate == pytest.approx(LOG2_PHI, abs=1e-9)
    v = verify_irc(M, c, 1.0)
    assert v.rate_ok and v.minimal and v.witness is None
    lam, good = _best_by_exhaustion(M, 1.0)
    assert frozenset(c.kept_edges) in good


def test_fibonacci_is_minimal_even_for_small_theta():
    assert verify_irc(fib(), fib(), 0.01)


def test_theta_zero_deletes_everything():
    c = find_irc(fib(), 0.0)
    assert c.kept_edges == () and len(c.kept_states) == 1 and c.rate == 0.0
    assert all(a == "deleted" for _, a in c.trace_log)
    assert verify_irc(fib(), c, 0.0)


def test_zero_rate_rejected():
    with pytest.raises(DomainError, match="rate is zero"):
        find_irc(chain(3), 0.5)


def test_theta_out_of_range():
    with pytest.raises(DomainError):
        find_irc(fib(), 1.5)


def test_full_system_not_minimal_for_small_theta():
    M = complete2()
    v = verify_irc(M, M, 0.1)
    assert v.rate_ok and not v.minimal
    assert v.witness == M.edges[0]


def test_single_state_component_theta_zero():
    C = ts(["a"], "a", "a", [])
    assert verify_irc(fib(), C, 0.0)


def test_verify_rejects_non_subgraph():
    with pytest.raises(DomainError):
        verify_irc(fib(), ts(["a"], "a", "a", [("a", "a", "q")]), 0.5)


def test_trace_log_and_call_bound():
    M = pendant_fib()
    c = find_irc(M, 0.79)
    assert [e for e, _ in c.trace_log] == list(clean(M).edges)
    assert c.rate_calls <= len(M.edges)


def test_determinism():
    rng = np.random.default_rng(11)
    for _ in range(10):
        M = random_system(rng)
        if spectral_rate(M).rate <= 0:
            continue
        assert find_irc(M, 0.5) == find_irc(M, 0.5)


def test_reverse_order_also_valid():
    rng = np.random.default_rng(5)
    seen = 0
    while seen < 20:
        M = random_system(rng)
        if spectral_rate(M).rate <= 0:
            continue
        seen += 1
        m = len(clean(M).edges)
        for theta in (0.5, 1.0):
            c = find_irc(M, theta, order=list(reversed(range(m))))
            assert verify_irc(M, c, theta)


def test_bad_order_rejected():
    with pytest.raises(DomainError):
        find_irc(fib(), 0.5, order=[0, 0, 1])


def test_verbatim_search_can_leave_a_non_minimal_component():
    # after the deletion loop the richest SCC here still holds s1->s0: deleting it
    # cut the SCC off from M's enter, yet measured from its own entry the rest is
    # rich enough; the pruning pass removes it
    st = ("s5", "s0", "s4", "s1", "s2", "s3")
    edges = [("s5", "s0"), ("s5", "s1"), ("s5", "s3"), ("s0", "s5"), ("s0", "s4"),
             ("s4", "s4"), ("s4", "s2"), ("s4", "s3"), ("s1", "s0"), ("s1", "s3"),
             ("s2", "s5"), ("s2", "s0"), ("s2", "s4"), ("s2", "s1")]
    M = ts(st, "s5", "s3", edges)
    raw = find_irc(M, 0.79, prune=False)
    v = verify_irc(M, raw, 0.79)
    assert v.rate_ok and not v.minimal and v.witness == Edge("s1", "s0")
    c = find_irc(M, 0.79)
    assert verify_irc(M, c, 0.79)
    assert ("pruned" in {a for _, a in c.trace_log})
    assert set(c.kept_edges) < set(raw.kept_edges)


def test_component_dict_shape():
    d = find_irc(pendant_fib(), 1.0).to_dict(with_log=True)
    assert list(d) == ["kept_states", "kept_edges", "entry", "exit", "lambda", "log"]
    assert d["kept_edges"][0] == {"from": "a", "to": "a", "label": "x"}


def test_as_system_roundtrip():
    c = find_irc(pendant_fib(), 1.0)
    assert isinstance(c, RichComponent)
    assert spectral_rate(c.as_system()).rate == pytest.approx(c.rate)
