"""Taxonomy of recovered passphrases, distributions and masking."""

import datetime
import enum
import math
import re
from collections import Counter
from dataclasses import dataclass, field

from .keyspace import PhonePrefixTable, checksum_letter, default_entries
from .keyspace.nric import PREFIXES
from .keyspace.numeric import PHONE_LEADING_DIGITS, PHONE_LENGTH


class TooShortError(ValueError):
    pass


class ClassLabel(str, enum.Enum):
    PHONE = "Phone"
    USER_DEFINED = "UserDefined"
    DICTIONARY = "Dictionary"
    DEFAULT = "Default"
    DATE_OF_SIGNIFICANCE = "DateOfSignificance"
    NRIC = "Nric"


# report order, largest share first in the field data
LABEL_ORDER = (
    ClassLabel.PHONE,
    ClassLabel.USER_DEFINED,
    ClassLabel.DICTIONARY,
    ClassLabel.DEFAULT,
    ClassLabel.DATE_OF_SIGNIFICANCE,
    ClassLabel.NRIC,
)

_PREFIX_FIRST = re.compile(r"([STFGstfg])(\d{7})")
_CHECKSUM_LAST = re.compile(r"(\d{7})([A-Za-z])")
_FULL = re.compile(r"([STFGstfg])(\d{7})([A-Za-z])")


def mask(passphrase: str) -> str:
    """Hide the final ceil(len/2) characters (at least 4) behind ``x``.

    >>> mask("98917654")
    '9891xxxx'
    """
    if len(passphrase) < 8:
        raise TooShortError("only passphrases of 8 or more characters are masked")
    hidden = max(4, math.ceil(len(passphrase) / 2))
    return passphrase[:-hidden] + "x" * hidden


def nric_form(passphrase: str):
    """Name of the NRIC shape matched, or None."""
    m = _FULL.fullmatch(passphrase)
    if m:
        ok = checksum_letter(m.group(1), m.group(2)) == m.group(3).upper()
        return "full" if ok else None
    if _PREFIX_FIRST.fullmatch(passphrase):
        return "prefix-first"
    m = _CHECKSUM_LAST.fullmatch(passphrase)
    if m:
        letter = m.group(2).upper()
        if any(checksum_letter(p, m.group(1)) == letter for p in PREFIXES):
            return "checksum-last"
    return None


# (day, month, year) positions
_DATE_SLICES = {
    "ddmmyyyy": (slice(0, 2), slice(2, 4), slice(4, 8)),
    "mmddyyyy": (slice(2, 4), slice(0, 2), slice(4, 8)),
    "yyyymmdd": (slice(6, 8), slice(4, 6), slice(0, 4)),
}


def parse_date(passphrase: str, formats=("ddmmyyyy",), years=(1900, 2099)):
    if len(passphrase) != 8 or not (passphrase.isdigit() and passphrase.isascii()):
        return None
    for fmt in formats:
        d, m, y = (int(passphrase[s]) for s in _DATE_SLICES[fmt])
        if not years[0] <= y <= years[1]:
            continue
        try:
            return datetime.date(y, m, d)
        except ValueError:
            continue
    return None


@dataclass
class ClassifyContext:
    default_dict: frozenset = field(default_factory=lambda: frozenset(default_entries()))
    dictionary_words: frozenset = frozenset()
    phone_prefix_table: PhonePrefixTable = field(default_factory=PhonePrefixTable)
    nric_validator: object = nric_form
    date_parser: object = parse_date

    def __post_init__(self):
        self.default_dict = frozenset(self.default_dict)
        self.dictionary_words = frozenset(w.lower() for w in self.dictionary_words)


@dataclass(frozen=True)
class ClassifiedPassphrase:
    passphrase: str
    label: ClassLabel
    evidence: str
    masked: str


def _phone_evidence(passphrase, table):
    hit = table.lookup(passphrase) if table else None
    if hit:
        return f"prefix {hit[0]} ({hit[1]})"
    return f"leading digit {passphrase[0]}"


def _dictionary_word(passphrase, words):
    lowered = passphrase.lower()
    if lowered in words:
        return lowered
    for k in range(1, 5):
        if len(lowered) > k and lowered[-k:].isdigit() and lowered[:-k] in words:
            return lowered[:-k]
    return None


def classify(passphrase: str, context: ClassifyContext = None) -> ClassifiedPassphrase:
    """Label by precedence Default, Nric, Phone, DateOfSignificance,
    Dictionary, then UserDefined."""
    if len(passphrase) < 8:
        raise TooShortError(f"passphrase shorter than 8 characters: {len(passphrase)}")
    ctx = context or ClassifyContext()
    masked = mask(passphrase)

    def result(label, evidence):
        return ClassifiedPassphrase(passphrase, label, evidence, masked)

    if passphrase in ctx.default_dict:
        return result(ClassLabel.DEFAULT, "vendor default table")
    form = ctx.nric_validator(passphrase)
    if form:
        return result(ClassLabel.NRIC, f"NRIC {form}")
    if (len(passphrase) == PHONE_LENGTH and passphrase.isdigit() and passphrase.isascii()
            and passphrase[0] in PHONE_LEADING_DIGITS):
        return result(ClassLabel.PHONE, _phone_evidence(passphrase, ctx.phone_prefix_table))
    day = ctx.date_parser(passphrase)
    if day:
        return result(ClassLabel.DATE_OF_SIGNIFICANCE, day.isoformat())
    word = _dictionary_word(passphrase, ctx.dictionary_words)
    if word:
        return result(ClassLabel.DICTIONARY, f"word {word!r}")
    return result(ClassLabel.USER_DEFINED, "no rule matched")


@dataclass(frozen=True)
class Distribution:
    total: int
    counts: dict  # ClassLabel -> int
    percentages: dict  # ClassLabel -> float, 2 dp

    def rows(self):
        return [{"label": lbl.value, "count": self.counts[lbl], "percent": self.percentages[lbl]}
                for lbl in LABEL_ORDER]


def _percentages(counts, total):
    """Largest-remainder rounding to hundredths so the shares sum to 100.00."""
    if not total:
        return {lbl: 0.0 for lbl in counts}
    floors = {lbl: (10000 * n) // total for lbl, n in counts.items()}
    rest = {lbl: (10000 * n) % total for lbl, n in counts.items()}
    short = 10000 - sum(floors.values())
    for lbl in sorted(counts, key=lambda l: (-rest[l], LABEL_ORDER.index(l)))[:short]:
        floors[lbl] += 1
    return {lbl: v / 100 for lbl, v in floors.items()}


def distribution(classified) -> Distribution:
    counts = Counter(c.label for c in classified)
    total = sum(counts.values())
    full = {lbl: counts.get(lbl, 0) for lbl in LABEL_ORDER}
    return Distribution(total, full, _percentages(full, total))


def geo_correlate(classified, phone_prefix_table: PhonePrefixTable) -> Counter:
    """Region histogram for Phone-labelled passphrases (longest prefix wins)."""
    out = Counter()
    for c in classified:
        if c.label is not ClassLabel.PHONE:
            continue
        hit = phone_prefix_table.lookup(c.passphrase) if phone_prefix_table else None
        out[hit[1] if hit else "unmapped"] += 1
    return out

