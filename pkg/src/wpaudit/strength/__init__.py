"""Passphrase strength: entropy bounds plus a keyboard-trace effort score."""

from dataclasses import dataclass

from .entropy import EntropyParams, InvalidParams, entropy_bits, infer_alpha, keyspace_count, nric_entropy_bits
from .keyboard import (
    KeyboardLayout,
    LayoutError,
    Marker,
    TraceResult,
    UnmappableCharacter,
    layout_from_path,
    load_layout,
    qwerty_layout,
    trace_passphrase,
)

BANDS = ("weak", "moderate", "strong")
# mean per-keystroke effort, in key widths
SCORE_THRESHOLDS = (1.2, 2.5)
# bits; 36 bits is an 8-character PSK drawn from a 23-symbol pool
ENTROPY_THRESHOLDS = (36.0, 60.0)


def _band(value, thresholds):
    for name, limit in zip(BANDS, thresholds):
        if value < limit:
            return name
    return BANDS[-1]


@dataclass(frozen=True)
class StrengthReport:
    passphrase: str
    length: int
    alpha: int
    entropy_bits: float
    score: float
    score_band: str
    entropy_band: str
    band: str
    trace: TraceResult


def strength_report(passphrase: str, layout: KeyboardLayout = None) -> StrengthReport:
    """Entropy over the inferred pool and the trace score; the overall band is
    the weaker of the two."""
    if not passphrase:
        raise InvalidParams("empty passphrase")
    trace = trace_passphrase(passphrase, layout)
    alpha = infer_alpha(passphrase)
    bits = entropy_bits(alpha, len(passphrase))
    score_band = _band(trace.score, SCORE_THRESHOLDS)
    entropy_band = _band(bits, ENTROPY_THRESHOLDS)
    band = BANDS[min(BANDS.index(score_band), BANDS.index(entropy_band))]
    return StrengthReport(passphrase, len(passphrase), alpha, bits, trace.score,
                          score_band, entropy_band, band, trace)
