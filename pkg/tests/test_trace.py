from fractions import Fraction

import numpy as np
import pytest

from irate.errors import DomainError, ParseError
from irate.trace import (Lz78Encoding, Phrase, Trace, exe_rate_estimate, lz78_decode, lz78_encode,
                         rates_csv, read_trace, symbol_width)


def enc(s):
    return lz78_encode(Trace(tuple(s)))


def test_read_trace_examples():
    t = read_trace("mov\nadd\nmov\n")
    assert t.tokens == ("mov", "add", "mov") and len(t.alphabet) == 2
    assert read_trace("").length == 0
    assert read_trace("a\n\n# c\nb\n").tokens == ("a", "b")


def test_read_trace_verbatim_and_opcode_only():
    doc = "mov eax, 1\nmov ebx, 2\n"
    assert read_trace(doc).tokens == ("mov eax, 1", "mov ebx, 2")
    assert read_trace(doc, opcode_only=True).tokens == ("mov", "mov")


def test_read_trace_invalid_utf8_offset():
    with pytest.raises(ParseError, match="byte offset 4"):
        read_trace(b"abc\n\xffdef")


def test_aaaa():
    e = enc("aaaa")
    assert [(p.index, p.token, p.length, p.bits) for p in e.phrases] == [
        (0, "a", 1, 0), (1, "a", 2, 1), (1, None, 1, 2)]
    assert e.per_symbol_bits.tolist() == [0.0, 0.5, 0.5, 2.0]
    assert e.total_bits == 3
    assert exe_rate_estimate(e) == 0.75


def test_ababab():
    e = enc("ababab")
    assert [p.bits for p in e.phrases] == [1, 2, 3, 2]
    assert [p.token for p in e.phrases] == ["a", "b", "b", None]
    assert e.total_bits == 8
    assert exe_rate_estimate(e) == pytest.approx(8 / 6)


def test_empty_trace():
    e = enc("")
    assert e.total_bits == 0 and e.length == 0
    assert lz78_decode(e).tokens == ()
    with pytest.raises(DomainError):
        exe_rate_estimate(e)


def test_single_token():
    assert exe_rate_estimate(enc("a")) == 0
    assert exe_rate_estimate(lz78_encode(Trace(("a",)))) == symbol_width(1)


def test_roundtrip_examples():
    for s in ("aaaa", "ababab", "abcabcabcd"):
        assert lz78_decode(enc(s)).tokens == tuple(s)


def test_decode_rejects_forward_reference():
    e = Lz78Encoding.from_phrases([Phrase(0, "a", 1, 0), Phrase(2, "b", 2, 2)])
    with pytest.raises(ParseError, match="does not precede"):
        lz78_decode(e)


def test_decode_rejects_inner_partial_phrase():
    e = Lz78Encoding.from_phrases([Phrase(0, "a", 1, 0), Phrase(1, None, 1, 1),
                                   Phrase(0, "a", 1, 2)])
    with pytest.raises(ParseError, match="not last"):
        lz78_decode(e)


def test_decode_rejects_bad_length():
    e = Lz78Encoding.from_phrases([Phrase(0, "a", 1, 0), Phrase(1, "a", 3, 1)])
    with pytest.raises(ParseError, match="length"):
        lz78_decode(e)


def test_symbol_width():
    assert [symbol_width(k) for k in (0, 1, 2, 3, 4, 5, 256, 257)] == [0, 0, 1, 2, 2, 3, 8, 9]


def test_exact_conservation():
    rng = np.random.default_rng(0)
    t = Trace(tuple(str(x) for x in rng.integers(0, 7, 3000)))
    e = lz78_encode(t)
    assert sum(e.exact_symbol_bits()) == Fraction(e.total_bits)
    assert abs(e.per_symbol_bits.sum() - e.total_bits) < 1e-9


def test_phrase_indices_precede():
    e = enc("abracadabra" * 20)
    assert all(0 <= i < k + 1 for k, i in enumerate(e.phrase_index.tolist()))


def test_rates_csv():
    text = rates_csv(enc("aaaa"))
    assert text == "index,token_bits\n0,0.0\n1,0.5\n2,0.5\n3,2.0\n"


def test_linear_time_order_of_magnitude():
    import time
    rng = np.random.default_rng(1)
    t = Trace(tuple(str(x) for x in rng.integers(0, 32, 200_000)))
    lz78_encode(t)
    t0 = time.perf_counter()
    lz78_encode(t)
    assert 200_000 / (time.perf_counter() - t0) > 2e5
