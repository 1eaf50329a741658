import pytest

from helpers import fib, pendant_fib, sigma_star, ts
from irate.errors import DomainError
from irate.iri import (build_constrained_path_automaton, dfa_view, find_iri, find_iri_constrained,
                       find_iri_language, normalize_accepting, shortest_path)
from irate.rate import path_counts, spectral_rate
from irate.system import Edge, accepted_words, accepts, clean


def _shape_i_xyz_o(word):
    if len(word) < 2 or word[0] != "i" or word[-1] != "o":
        return False
    mid = "".join(word[1:-1])
    return mid.replace("yz", "").replace("x", "") == ""


def test_pendant_fibonacci_iri():
    M = pendant_fib()
    iri = find_iri(M, 1.0)
    words = accepted_words(iri.system, 6)
    assert words and all(_shape_i_xyz_o(w) for w in words)
    assert words == [w for w in accepted_words(M, 6)]
    assert [e.label for e in iri.alpha] == ["i"] and [e.label for e in iri.beta] == ["o"]
    assert iri.rate == pytest.approx(iri.irc.rate, abs=1e-9)


def test_empty_affixes():
    iri = find_iri(fib(), 1.0)
    assert iri.alpha == () and iri.beta == ()
    assert iri.system.n_states == 2


def test_zero_rate():
    with pytest.raises(DomainError):
        find_iri(ts("ab", "a", "b", [("a", "b", "x")]), 0.5)
    with pytest.raises(DomainError):
        find_iri(fib(), 0.0)


def test_shortest_path_tie_break():
    m = ts("sabt", "s", "t", [("s", "b"), ("s", "a"), ("b", "t", "2"), ("a", "t", "1"),
                              ("a", "t", "0")])
    p = shortest_path(m, "s", "t")
    assert p == (Edge("s", "a"), Edge("a", "t", "1"))


def test_language_single_cycle_has_zero_rate():
    # (ab)* c: one word per length class, so the rate is 0
    L = ts(["p", "q", "f"], "p", "f", [("p", "q", "a"), ("q", "p", "b"), ("p", "f", "c")])
    with pytest.raises(DomainError, match="rate zero"):
        find_iri_language(L, 1.0)


def test_language_two_cycles():
    # (ab | c)* d
    L = ts(["p", "q", "f"], "p", "f", [("p", "q", "a"), ("q", "p", "b"), ("p", "p", "c"),
                                       ("p", "f", "d")])
    iri = find_iri_language(L, 1.0)
    words = accepted_words(iri.system, 8)
    assert words == accepted_words(L, 8)
    assert [e.label for e in iri.beta] == ["d"]


def test_language_finite_rejected():
    L = ts(["p", "q"], "p", "q", [("p", "q", "a")])
    with pytest.raises(DomainError):
        find_iri_language(L, 0.5)


def test_language_sigma_star():
    assert find_iri_language(sigma_star(), 1.0).rate == pytest.approx(1.0, abs=1e-12)


def test_multiple_accepting_states():
    L = ts(["p", "q"], "p", "p", [("p", "q", "a"), ("q", "p", "b"), ("p", "p", "c")])
    N = normalize_accepting(L, ["p", "q"])
    delta, acc = dfa_view(N)
    assert acc == {"p", "q", "⊲"}
    iri = find_iri_language(L, 1.0, accepting=["p", "q"])
    for w in accepted_words(iri.system, 6):
        assert accepts(N, w)


def test_nondeterministic_language_rejected():
    L = ts(["p", "q"], "p", "q", [("p", "q", "a"), ("p", "p", "a")])
    with pytest.raises(DomainError, match="nondeterministic"):
        dfa_view(L)


def test_epsilon_language_rejected():
    L = ts(["p", "q"], "p", "q", [("p", "q"), ("q", "p", "a"), ("q", "q", "a")])
    with pytest.raises(DomainError):
        dfa_view(L)


def test_constrained_even_length():
    M = ts(["s"], "s", "s", [("s", "s", "a")])
    even = ts(["e", "o"], "e", "e", [("e", "o", "a"), ("o", "e", "a")])
    pa = build_constrained_path_automaton(M, even)
    counts = path_counts(pa.system, 8)
    assert counts == [1, 0, 1, 0, 1, 0, 1, 0, 1]


def test_constrained_sigma_star_is_neutral():
    M = pendant_fib()
    pa = build_constrained_path_automaton(M, sigma_star(("i", "x", "y", "z", "o")))
    assert path_counts(pa.system, 10) == path_counts(clean(M), 10)
    iri = find_iri_constrained(M, sigma_star(("i", "x", "y", "z", "o")), 1.0)
    assert accepted_words(iri.system, 7) == accepted_words(find_iri(M, 1.0).system, 7)


def test_constrained_no_z_single_loop_has_zero_rate():
    # without z the only cycle left is the x self-loop: one path per length, rate 0
    no_z = sigma_star(("i", "x", "y", "o"))
    with pytest.raises(DomainError, match="constrained rate is zero"):
        find_iri_constrained(pendant_fib(), no_z, 1.0)


def test_constrained_no_z_two_loops():
    M = ts(["e", "a", "b", "x"], "e", "x",
           [("e", "a", "i"), ("a", "a", "x"), ("a", "a", "w"), ("a", "b", "y"),
            ("b", "a", "z"), ("a", "x", "o")])
    no_z = sigma_star(("i", "x", "w", "y", "o"))
    iri = find_iri_constrained(M, no_z, 1.0)
    words = accepted_words(iri.system, 8)
    assert words and all("z" not in w and "y" not in w for w in words)
    assert all(w[0] == "i" and w[-1] == "o" for w in words)
    assert iri.rate == pytest.approx(1.0, abs=1e-9)
    for e in iri.origin:
        assert e in M.edges


def test_constrained_disjoint():
    with pytest.raises(DomainError):
        find_iri_constrained(pendant_fib(), sigma_star(("q",)), 0.5)
    pa = build_constrained_path_automaton(pendant_fib(), sigma_star(("q",)))
    assert pa.system.empty


def test_constrained_with_epsilon_edges_in_m():
    M = ts(["e", "a", "x"], "e", "x", [("e", "a"), ("a", "a", "p"), ("a", "a", "q"),
                                       ("a", "x", "o")])
    iri = find_iri_constrained(M, sigma_star(("p", "q", "o")), 1.0)
    assert spectral_rate(iri.path_system).rate == pytest.approx(1.0, abs=1e-9)
    for w in accepted_words(iri.system, 5):
        assert accepts(M, w)
