"""Information rates of transition systems, execution traces and bit-rate signals."""

from ._kernels import BACKEND
from .errors import DomainError, IrateError, ParseError, RateConvergenceError
from .iri import (IriAutomaton, PathAutomaton, build_constrained_path_automaton, find_iri,
                  find_iri_constrained, find_iri_language)
from .irc import RichComponent, Verdict, find_irc, verify_irc
from .rate import (PathCount, RateResult, count_paths, path_counts, rate_estimate_from_counts,
                   spectral_radius, spectral_rate)
from .signal import (BitRateSignal, CoverageReport, Spectrum, block_signal, cover, cover_rel,
                     distance, spectrum, stats)
from .sync import SyncIrc, SyncProduct, build_sync_product, find_sync_irc, sync_rate, verify_sync_irc
from .system import (Edge, SyncPairSet, TransitionSystem, accepted_words, accepts, clean,
                     compose, dump_system, parse_pairs, parse_system, scc_decompose)
from .trace import Lz78Encoding, Trace, exe_rate_estimate, lz78_decode, lz78_encode, read_trace

__version__ = "0.1.0"
