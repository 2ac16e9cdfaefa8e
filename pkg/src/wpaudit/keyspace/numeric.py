"""Phone-number, plain-digit and calendar-date keyspaces."""

import datetime
from importlib import resources

from .base import (
    Keyspace,
    KeyspaceError,
    KeyspaceKind,
    LengthOutOfRange,
    NonDigitPrefixError,
    OverlappingPrefixError,
    PrefixDigitSpace,
    PrefixTooLongError,
)

PHONE_LENGTH = 8
PHONE_LEADING_DIGITS = "3689"


class YearRangeError(KeyspaceError):
    pass


class MalformedPrefixTable(KeyspaceError):
    pass


def _check_prefixes(prefixes, length):
    prefixes = [str(p) for p in prefixes]
    for p in prefixes:
        if not p.isdigit() or not p.isascii():
            raise NonDigitPrefixError(f"prefix {p!r} is not a digit string")
        if len(p) > length:
            raise PrefixTooLongError(f"prefix {p!r} longer than {length} digits")
    for i, a in enumerate(prefixes):
        for j, b in enumerate(prefixes):
            if i != j and b.startswith(a):
                raise OverlappingPrefixError(f"prefix {a!r} overlaps {b!r}")
    return prefixes


def phone_keyspace(prefixes) -> PrefixDigitSpace:
    """8-digit numbers starting with any of ``prefixes``, in list order.

    ``phone_keyspace(["3", "6", "8", "9"])`` covers 40,000,000 numbers;
    a 4-digit area prefix such as ``"6750"`` leaves 10,000.
    """
    prefixes = _check_prefixes(prefixes, PHONE_LENGTH)
    if not prefixes:
        raise KeyspaceError("at least one phone prefix is required")
    return PrefixDigitSpace(prefixes, PHONE_LENGTH, KeyspaceKind.PHONE)


def complement_prefixes(prefixes, length: int):
    """Prefixes covering exactly the ``length``-digit strings not covered by
    ``prefixes``, in ascending numeric order."""
    prefixes = set(_check_prefixes(prefixes, length))

    def walk(base):
        if base in prefixes:
            return []
        if not any(p.startswith(base) for p in prefixes):
            return [base]
        out = []
        for d in "0123456789":
            out.extend(walk(base + d))
        return out

    return walk("")


def digits_keyspace(length: int = 8, exclude_prefixes=()) -> PrefixDigitSpace:
    """All ``length``-digit strings in ascending order.

    ``exclude_prefixes`` drops every string starting with one of them, which
    gives the "remaining 8-digit" space after a phone pass.
    """
    if not 8 <= length <= 63:
        raise LengthOutOfRange(f"digit length must be 8-63, got {length}")
    prefixes = complement_prefixes(exclude_prefixes, length) if exclude_prefixes else [""]
    return PrefixDigitSpace(prefixes, length, KeyspaceKind.DIGITS)


DATE_FORMATS = {
    "ddmmyyyy": "{d:02d}{m:02d}{y:04d}",
    "yyyymmdd": "{y:04d}{m:02d}{d:02d}",
    "mmddyyyy": "{m:02d}{d:02d}{y:04d}",
}


class DateKeyspace(Keyspace):
    kind = KeyspaceKind.DATE

    def __init__(self, first_year: int, last_year: int, fmt: str = "ddmmyyyy"):
        if not (1000 <= first_year <= 9999 and 1000 <= last_year <= 9999):
            raise YearRangeError("years must lie in 1000-9999")
        if first_year > last_year:
            raise YearRangeError(f"first year {first_year} after last year {last_year}")
        if fmt not in DATE_FORMATS:
            raise KeyspaceError(f"unknown date format {fmt!r}")
        self.first_year = first_year
        self.last_year = last_year
        self.fmt = fmt
        self._template = DATE_FORMATS[fmt]
        self._first = datetime.date(first_year, 1, 1).toordinal()
        self._total = datetime.date(last_year, 12, 31).toordinal() - self._first + 1

    def cardinality(self):
        return self._total

    def _render(self, day: datetime.date) -> str:
        return self._template.format(d=day.day, m=day.month, y=day.year)

    def candidate(self, index):
        return self._render(datetime.date.fromordinal(self._first + self._check_index(index)))

    def iter_range(self, start, stop):
        for ordinal in range(self._first + start, self._first + min(stop, self._total)):
            yield self._render(datetime.date.fromordinal(ordinal))

    def describe(self):
        return f"date:{self.first_year}-{self.last_year}"


def date_keyspace(first_year: int, last_year: int, fmt: str = "ddmmyyyy") -> DateKeyspace:
    return DateKeyspace(first_year, last_year, fmt)


class PhonePrefixTable(dict):
    """Digit prefix -> region label, resolved by longest match."""

    def __setitem__(self, prefix, region):
        if not (prefix.isdigit() and prefix.isascii() and 1 <= len(prefix) <= PHONE_LENGTH):
            raise MalformedPrefixTable(f"bad phone prefix {prefix!r}")
        if prefix[0] not in PHONE_LEADING_DIGITS:
            raise MalformedPrefixTable(f"phone prefix {prefix!r} must start with 3, 6, 8 or 9")
        super().__setitem__(prefix, region)

    def lookup(self, number: str):
        for n in range(min(len(number), PHONE_LENGTH), 0, -1):
            region = self.get(number[:n])
            if region is not None:
                return number[:n], region
        return None


def load_prefix_table(stream) -> PhonePrefixTable:
    """Read ``prefix<TAB>region`` lines; ``#`` starts a comment line."""
    table = PhonePrefixTable()
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.lstrip().startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 2 or not fields[1].strip():
            raise MalformedPrefixTable(f"line {lineno}: expected prefix<TAB>region")
        try:
            table[fields[0].strip()] = fields[1].strip()
        except MalformedPrefixTable as exc:
            raise MalformedPrefixTable(f"line {lineno}: {exc}") from None
    return table


def default_prefix_table() -> PhonePrefixTable:
    text = resources.files("wpaudit.data").joinpath("sg_phone_prefixes.tsv").read_text("utf-8")
    return load_prefix_table(text.splitlines())
