"""``irate`` command-line front end.

Exit status: 0 on success, 1 on domain errors (one-line diagnostic on
stderr), 2 on usage errors.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .errors import IrateError
from .iri import find_iri, find_iri_constrained
from .irc import find_irc
from .rate import rate_estimate_from_counts, spectral_rate
from .signal import (DEFAULT_BLOCKS, DEFAULT_WINDOW, BitRateSignal, block_signal, cover,
                     cover_rel, distance, read_signal_csv, signal_csv, spectrum, spectrum_csv,
                     stats)
from .sync import find_sync_irc
from .system import SyncPairSet, dump_system, parse_pairs, parse_system
from .trace import exe_rate_estimate, lz78_encode, rates_csv, read_trace_file

DEFAULT_THETA = 0.79


def _theta(text: str) -> float:
    try:
        v = float(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {text!r}") from None
    if not 0.0 <= v <= 1.0:
        raise argparse.ArgumentTypeError("theta must lie in [0, 1]")
    return v


def _positive(text: str) -> int:
    try:
        v = int(text)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not an integer: {text!r}") from None
    if v < 1:
        raise argparse.ArgumentTypeError("must be >= 1")
    return v


def _odd(text: str) -> int:
    v = _positive(text)
    if v % 2 == 0:
        raise argparse.ArgumentTypeError("window must be odd")
    return v


def _window(text: str) -> tuple[int, int]:
    try:
        lo, hi = (int(x) for x in text.split(":"))
    except ValueError:
        raise argparse.ArgumentTypeError("expected n_lo:n_hi") from None
    if not 0 <= lo < hi:
        raise argparse.ArgumentTypeError("need 0 <= n_lo < n_hi")
    return lo, hi


def _rounded(obj):
    if isinstance(obj, float):
        return float(f"{obj:.6f}")
    if isinstance(obj, dict):
        return {k: _rounded(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_rounded(v) for v in obj]
    return obj


def _dumps(obj, human: bool = False) -> str:
    """Compact JSON; ``human`` rounds floats to 6 decimals."""
    return json.dumps(_rounded(obj) if human else obj, ensure_ascii=False,
                      separators=(",", ":"))


def _print_json(args, out, obj):
    out.write(_dumps(obj, args.human) + "\n")


def _read_text(path) -> bytes:
    return Path(path).read_bytes()


def _load_system(path, normalize=False):
    return parse_system(_read_text(path), normalize=normalize)


def _threads() -> int:
    cap = os.environ.get("IRATE_THREADS")
    n = os.cpu_count() or 1
    if cap:
        try:
            n = max(1, min(n, int(cap)))
        except ValueError:
            raise IrateError(f"IRATE_THREADS must be an integer, got {cap!r}") from None
    return n


def _emit(text: str, path, out):
    if path is None:
        out.write(text)
    else:
        Path(path).write_text(text, encoding="utf-8")


def _signal_from_trace(path, blocks, opcode_only=False) -> BitRateSignal:
    enc = lz78_encode(read_trace_file(path, opcode_only))
    return block_signal(enc.per_symbol_bits, blocks)


def _signals(args) -> list[tuple[str, BitRateSignal]]:
    """Signals from ``-t`` traces (encoded in parallel) and ``-s`` signal CSVs, in input order."""
    traces = args.trace or []
    with ThreadPoolExecutor(max_workers=max(1, min(_threads(), len(traces) or 1))) as pool:
        sigs = list(pool.map(lambda p: _signal_from_trace(p, args.blocks, args.opcode_only),
                             traces))
    out = list(zip(traces, sigs))
    for p in args.signal or []:
        out.append((p, read_signal_csv(_read_text(p).decode("utf-8"))))
    return out


# ---------------------------------------------------------------------------
# subcommands

def cmd_rate(args, out):
    ts = _load_system(args.input, args.normalize)
    res = spectral_rate(ts)
    doc = res.to_dict()
    if args.oracle:
        doc["oracle"] = rate_estimate_from_counts(ts, *args.oracle)
    _print_json(args, out, doc)


def cmd_irc(args, out):
    ts = _load_system(args.input, args.normalize)
    comp = find_irc(ts, args.theta)
    _print_json(args, out, comp.to_dict(with_log=args.emit_log))


def cmd_irc_sync(args, out):
    m1 = _load_system(args.input1)
    m2 = _load_system(args.input2)
    pairs = parse_pairs(_read_text(args.pairs)) if args.pairs else SyncPairSet()
    res = find_sync_irc(m1, m2, pairs, args.theta)
    _print_json(args, out, res.to_dict(with_log=args.emit_log))


def cmd_iri(args, out):
    ts = _load_system(args.input, args.normalize)
    if args.lang:
        lang = parse_system(_read_text(args.lang), normalize=True)
        iri = find_iri_constrained(ts, lang, args.theta)
    else:
        iri = find_iri(ts, args.theta)
    doc = dump_system(iri.system) + "\n"
    if args.emit:
        _emit(doc, args.emit, out)
        _print_json(args, out, {"lambda": iri.rate, "lambda_irc": iri.irc.rate,
                                "states": iri.system.n_states, "edges": len(iri.system.edges)})
    else:
        out.write(doc)


def cmd_encode(args, out):
    enc = lz78_encode(read_trace_file(args.trace, args.opcode_only))
    _emit(rates_csv(enc), args.emit, out)
    if args.emit:
        summary = {"length": enc.length, "alphabet": len(enc.alphabet),
                   "phrases": int(enc.phrase_index.shape[0]), "total_bits": enc.total_bits}
        if enc.length:
            summary["exe_rate"] = exe_rate_estimate(enc)
        _print_json(args, out, summary)


def cmd_signal(args, out):
    sig = _signal_from_trace(args.trace, args.blocks, args.opcode_only)
    _emit(signal_csv(sig), args.emit, out)
    if args.emit:
        _print_json(args, out, stats(sig))


def cmd_spectrum(args, out):
    if args.trace:
        sig = _signal_from_trace(args.trace, args.blocks, args.opcode_only)
    else:
        sig = read_signal_csv(_read_text(args.signal).decode("utf-8"))
    sp = spectrum(sig, args.window)
    _emit(spectrum_csv(sp), args.emit, out)
    if args.emit:
        _print_json(args, out, {"peak_frequency": sp.peak_frequency()})


def cmd_distance(args, out):
    sigs = _signals(args)
    if len(sigs) != 2:
        raise IrateError(f"distance needs exactly two inputs, got {len(sigs)}")
    (a, x), (b, y) = sigs
    _print_json(args, out, {"a": a, "b": b, "distance": distance(x, y)})


def cmd_coverage(args, out):
    sigs = _signals(args)
    if len(dict(sigs)) != len(sigs):
        raise IrateError("duplicate input path in coverage set")
    doc = cover(dict(sigs)).to_dict()
    if args.relative_to:
        rel = {}
        for p in args.relative_to:
            t = (_signal_from_trace(p, args.blocks, args.opcode_only) if args.trace
                 else read_signal_csv(_read_text(p).decode("utf-8")))
            rel[p] = cover_rel(t, [s for _, s in sigs])
        doc["relative"] = rel
    _print_json(args, out, doc)


def cmd_pipeline(args, out):
    enc = lz78_encode(read_trace_file(args.trace, args.opcode_only))
    sig = block_signal(enc.per_symbol_bits, args.blocks)
    sp = spectrum(sig, args.window)
    if args.emit_signal:
        _emit(signal_csv(sig), args.emit_signal, out)
    if args.emit_spectrum:
        _emit(spectrum_csv(sp), args.emit_spectrum, out)
    doc = {"length": enc.length, "total_bits": enc.total_bits,
           "exe_rate": exe_rate_estimate(enc), "blocks": sig.N, "block_size": sig.block_size,
           **stats(sig), "peak_frequency": sp.peak_frequency()}
    _print_json(args, out, doc)


# ---------------------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="irate", description="Information rates of programs.")
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--human", action="store_true",
                        help="round JSON numbers to 6 decimals")
    sub = p.add_subparsers(dest="command", required=True, metavar="COMMAND")

    def system_input(sp):
        sp.add_argument("-i", "--input", required=True, help="transition-system JSON")
        sp.add_argument("--normalize", action="store_true",
                        help="accept lists of enter/exit states")

    def trace_opts(sp, many=False):
        if many:
            sp.add_argument("-t", "--trace", action="append", help="trace file (repeatable)")
            sp.add_argument("-s", "--signal", action="append", help="signal CSV (repeatable)")
        sp.add_argument("--blocks", type=_positive, default=DEFAULT_BLOCKS)
        sp.add_argument("--opcode-only", action="store_true",
                        help="use the first field of each line as the token")

    sp = sub.add_parser("rate", parents=[common], help="information rate of a system")
    system_input(sp)
    sp.add_argument("--oracle", type=_window, metavar="N_LO:N_HI",
                    help="also report the path-count slope over this length window")
    sp.set_defaults(func=cmd_rate)

    sp = sub.add_parser("irc", parents=[common], help="θ-information-rich component")
    system_input(sp)
    sp.add_argument("--theta", type=_theta, default=DEFAULT_THETA)
    sp.add_argument("--emit-log", action="store_true")
    sp.set_defaults(func=cmd_irc)

    sp = sub.add_parser("irc-sync", parents=[common], help="θ-IRC of a synchronous composition")
    sp.add_argument("-i1", dest="input1", required=True)
    sp.add_argument("-i2", dest="input2", required=True)
    sp.add_argument("--pairs", help="sync-pair JSON")
    sp.add_argument("--theta", type=_theta, default=DEFAULT_THETA)
    sp.add_argument("--emit-log", action="store_true")
    sp.set_defaults(func=cmd_irc_sync)

    sp = sub.add_parser("iri", parents=[common], help="θ-information-rich inputs")
    system_input(sp)
    sp.add_argument("--lang", help="deterministic input-language automaton JSON")
    sp.add_argument("--theta", type=_theta, default=DEFAULT_THETA)
    sp.add_argument("--emit", help="write the automaton here instead of stdout")
    sp.set_defaults(func=cmd_iri)

    sp = sub.add_parser("encode", parents=[common], help="LZ78 per-instruction bit rates")
    sp.add_argument("-t", "--trace", required=True)
    sp.add_argument("--opcode-only", action="store_true")
    sp.add_argument("--emit", help="rates CSV path (default stdout)")
    sp.set_defaults(func=cmd_encode)

    sp = sub.add_parser("signal", parents=[common], help="block-averaged bit-rate signal")
    sp.add_argument("-t", "--trace", required=True)
    trace_opts(sp)
    sp.add_argument("--emit", help="signal CSV path (default stdout)")
    sp.set_defaults(func=cmd_signal)

    sp = sub.add_parser("spectrum", parents=[common], help="magnitude spectrum of a bit-rate signal")
    src = sp.add_mutually_exclusive_group(required=True)
    src.add_argument("-t", "--trace")
    src.add_argument("-s", "--signal")
    trace_opts(sp)
    sp.add_argument("--window", type=_odd, default=DEFAULT_WINDOW)
    sp.add_argument("--emit", help="spectrum CSV path (default stdout)")
    sp.set_defaults(func=cmd_spectrum)

    sp = sub.add_parser("distance", parents=[common], help="squared distance between two signals")
    trace_opts(sp, many=True)
    sp.set_defaults(func=cmd_distance)

    sp = sub.add_parser("coverage", parents=[common], help="bit-rate coverage of a test set")
    trace_opts(sp, many=True)
    sp.add_argument("-r", "--relative-to", action="append",
                    help="candidate test (same kind as the set inputs)")
    sp.set_defaults(func=cmd_coverage)

    sp = sub.add_parser("pipeline", parents=[common], help="trace -> rates -> signal -> spectrum")
    sp.add_argument("-t", "--trace", required=True)
    trace_opts(sp)
    sp.add_argument("--window", type=_odd, default=DEFAULT_WINDOW)
    sp.add_argument("--emit-signal")
    sp.add_argument("--emit-spectrum")
    sp.set_defaults(func=cmd_pipeline)
    return p


def main(argv=None, out=None) -> int:
    out = sys.stdout if out is None else out
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        if args.command in ("distance", "coverage") and not (args.trace or args.signal):
            parser.error(f"{args.command} needs -t or -s inputs")
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        args.func(args, out)
    except (IrateError, OSError) as exc:
        msg = " ".join(str(exc).split())
        print(f"irate: error: {msg}", file=sys.stderr)
        return 1
    return 0


if __name__ == "__main__":
    sys.exit(main())
