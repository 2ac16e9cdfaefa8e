"""Dictionary keyspaces: vendor defaults and line-oriented wordlists."""

import enum
import io
import os
from bisect import bisect_right
from dataclasses import dataclass
from importlib import resources

from ..crypto import MAX_PASSPHRASE, MIN_PASSPHRASE
from .base import Keyspace, KeyspaceError, KeyspaceKind, ListKeyspace


class MalformedDefaultsFile(KeyspaceError):
    pass


class SourceReadError(KeyspaceError):
    pass


class Rule(str, enum.Enum):
    APPEND_DIGITS = "append-digits"  # word + "0" .. word + "9"
    CASE_TOGGLE = "case-toggle"  # first letter toggled, whole word swapped
    CONCAT_PAIRS = "concat-pairs"  # every ordered pair of words, self-pairs included


def parse_rules(text: str):
    """``"append-digits,concat-pairs"`` -> frozenset of Rule; ``"all"`` enables all."""
    if text in ("", "all"):
        return frozenset(Rule) if text == "all" else frozenset()
    try:
        return frozenset(Rule(r.strip()) for r in text.split(",") if r.strip())
    except ValueError as exc:
        raise KeyspaceError(f"unknown rule in {text!r}") from exc


def _valid(word: str) -> bool:
    return MIN_PASSPHRASE <= len(word) <= MAX_PASSPHRASE


def _printable(word: str) -> bool:
    return all(" " <= ch <= "~" for ch in word)


def _single_variants(word: str, rules):
    yield word
    if Rule.CASE_TOGGLE in rules and word:
        yield word[0].swapcase() + word[1:]
        yield word.swapcase()
    if Rule.APPEND_DIGITS in rules:
        for d in "0123456789":
            yield word + d


def _read_lines(source):
    if isinstance(source, (str, os.PathLike)):
        try:
            with open(source, "rb") as fh:
                yield from fh
        except OSError as exc:
            raise SourceReadError(f"cannot read wordlist {source}: {exc}") from exc
        return
    try:
        yield from source
    except (OSError, UnicodeDecodeError) as exc:
        raise SourceReadError(f"wordlist stream failed: {exc}") from exc


class WordlistKeyspace(Keyspace):
    """Candidates from a wordlist, optionally expanded by rules.

    Construction makes one pass over the source.  Lines are decoded as
    ASCII; lines that are not printable ASCII are dropped.  Word-level
    variants (the word itself, case toggles, appended digits) come first in
    file order, deduplicated, and anything outside 8-63 characters is
    skipped.  With ``concat-pairs`` the pair block follows: for each left
    word in file order, right words ordered by (length, file order), keeping
    only pairs whose joined length is valid.  The pair block is indexed
    arithmetically and is not deduplicated.

    ``skipped`` counts source lines whose own text was not a usable
    candidate (too short, too long, or not ASCII).
    """

    def __init__(self, source, rules=frozenset(), name: str = None):
        self.rules = frozenset(Rule(r) for r in rules)
        self.kind = KeyspaceKind.WORDLIST_WITH_RULES if self.rules else KeyspaceKind.WORDLIST
        self.name = name or (os.fspath(source) if isinstance(source, (str, os.PathLike)) else "<stream>")
        self.skipped = 0
        self.lines_read = 0

        words = []
        seen_words = set()
        singles = []
        seen = set()
        for raw in _read_lines(source):
            self.lines_read += 1
            if isinstance(raw, bytes):
                raw = raw.rstrip(b"\r\n")
                try:
                    word = raw.decode("ascii")
                except UnicodeDecodeError:
                    self.skipped += 1
                    continue
            else:
                word = raw.rstrip("\r\n")
            if not _printable(word) or not _valid(word):
                self.skipped += 1
            if not _printable(word) or not word:
                continue
            if word in seen_words:
                continue
            seen_words.add(word)
            words.append(word)
            for variant in _single_variants(word, self.rules):
                if _valid(variant) and variant not in seen:
                    seen.add(variant)
                    singles.append(variant)
        self._singles = singles

        self._pair_words = []
        self._by_len = []
        self._len_start = {}
        self._pair_offsets = []
        self._pair_lo = []
        self._pair_total = 0
        if Rule.CONCAT_PAIRS in self.rules and words:
            self._build_pairs([w for w in words if len(w) < MAX_PASSPHRASE])

    def _build_pairs(self, words):
        by_len = sorted(words, key=len)  # stable: file order inside a length
        lengths = [len(w) for w in by_len]
        total = 0
        for left in words:
            lo = max(MIN_PASSPHRASE - len(left), 1)
            hi = MAX_PASSPHRASE - len(left)
            a = bisect_right(lengths, lo - 1)
            b = bisect_right(lengths, hi)
            if b > a:
                self._pair_words.append(left)
                self._pair_offsets.append(total)
                self._pair_lo.append(a)
                total += b - a
        self._by_len = by_len
        self._pair_counts = [
            nxt - cur for cur, nxt in zip(self._pair_offsets, self._pair_offsets[1:] + [total])
        ]
        self._pair_total = total

    def cardinality(self):
        return len(self._singles) + self._pair_total

    def _pair(self, k):
        block = bisect_right(self._pair_offsets, k) - 1
        right = self._by_len[self._pair_lo[block] + k - self._pair_offsets[block]]
        return self._pair_words[block] + right

    def candidate(self, index):
        index = self._check_index(index)
        if index < len(self._singles):
            return self._singles[index]
        return self._pair(index - len(self._singles))

    def iter_range(self, start, stop):
        stop = min(stop, self.cardinality())
        n_single = len(self._singles)
        for i in range(start, min(stop, n_single)):
            yield self._singles[i]
        k = max(start, n_single) - n_single
        end = stop - n_single
        if k >= end:
            return
        block = bisect_right(self._pair_offsets, k) - 1
        while k < end:
            left = self._pair_words[block]
            base = self._pair_offsets[block]
            lo = self._pair_lo[block]
            upto = min(end, base + self._pair_counts[block])
            for j in range(k - base, upto - base):
                yield left + self._by_len[lo + j]
            k = upto
            block += 1

    def describe(self):
        suffix = ":" + ",".join(sorted(r.value for r in self.rules)) if self.rules else ""
        return f"wordlist:{self.name}{suffix}"


def wordlist_keyspace(source, rules=frozenset()) -> WordlistKeyspace:
    if isinstance(source, (list, tuple)):
        source = iter(source)
    return WordlistKeyspace(source, rules)


@dataclass(frozen=True)
class VendorDefault:
    manufacturer: str
    model: str
    psk: str
    wps_pin: str


def load_vendor_defaults(stream):
    """Parse ``manufacturer<TAB>model<TAB>psk<TAB>wps-pin`` lines."""
    rows = []
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        fields = line.split("\t")
        if len(fields) != 4:
            raise MalformedDefaultsFile(f"line {lineno}: expected 4 tab-separated fields, got {len(fields)}")
        rows.append(VendorDefault(*(f.strip() for f in fields)))
    return rows


def builtin_vendor_defaults():
    text = resources.files("wpaudit.data").joinpath("vendor_defaults.tsv").read_text("utf-8")
    return load_vendor_defaults(io.StringIO(text))


def default_entries(extra_rows=()):
    """PSKs and WPS PINs in table order, first occurrence kept."""
    out = []
    seen = set()
    for row in list(builtin_vendor_defaults()) + list(extra_rows):
        for value in (row.psk, row.wps_pin):
            if value and value not in seen and _valid(value) and _printable(value):
                seen.add(value)
                out.append(value)
    return out


def default_dict_keyspace(user_file=None) -> ListKeyspace:
    """Built-in router defaults plus an optional user-supplied vendor file."""
    extra = []
    if user_file is not None:
        if isinstance(user_file, (str, os.PathLike)):
            with open(user_file, encoding="utf-8") as fh:
                extra = load_vendor_defaults(fh)
        else:
            extra = load_vendor_defaults(user_file)
    return ListKeyspace(default_entries(extra), KeyspaceKind.DEFAULT_DICT)
