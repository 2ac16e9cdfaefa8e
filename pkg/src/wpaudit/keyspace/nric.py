"""Singapore NRIC numbers: modulo-11 checksum letter and candidate spaces.

The checksum is ``(offset + digits . (2 7 6 5 4 3 2)) mod 11`` with offset 0
for S/F and 4 for T/G; the remainder picks a letter from the row for the
prefix family.
"""

import enum
import re
from dataclasses import dataclass

from .base import Keyspace, KeyspaceError, KeyspaceKind

WEIGHTS = (2, 7, 6, 5, 4, 3, 2)
OFFSETS = {"S": 0, "F": 0, "T": 4, "G": 4}
# indexed by remainder 0..10
LETTERS_ST = "JZIHGFEDCBA"
LETTERS_FG = "XWUTRQPNMLK"
PREFIXES = "STFG"
DIGIT_SPACE = 10 ** 7

_FULL_RE = re.compile(r"([STFGstfg])(\d{7})([A-Za-z])")


class InvalidPrefixError(KeyspaceError):
    pass


class EmptyPrefixSetError(KeyspaceError):
    pass


class NricForm(str, enum.Enum):
    PREFIX_FIRST_8 = "prefix-first"
    CHECKSUM_LAST_8 = "checksum-last"
    FULL_9 = "full"


class CaseMode(str, enum.Enum):
    UPPER_ONLY = "upper"
    BOTH_CASES = "both"


def _norm_prefix(prefix: str) -> str:
    p = str(prefix).upper()
    if p not in OFFSETS:
        raise InvalidPrefixError(f"NRIC prefix must be one of S, T, F, G; got {prefix!r}")
    return p


def checksum_letter(prefix: str, digits) -> str:
    p = _norm_prefix(prefix)
    digits = str(digits)
    if len(digits) != 7 or not digits.isdigit() or not digits.isascii():
        raise KeyspaceError(f"NRIC body must be 7 digits, got {digits!r}")
    total = OFFSETS[p] + sum(w * int(d) for w, d in zip(WEIGHTS, digits))
    table = LETTERS_ST if p in "ST" else LETTERS_FG
    return table[total % 11]


@dataclass(frozen=True)
class NricNumber:
    prefix: str
    digits: str
    checksum: str

    def __post_init__(self):
        if checksum_letter(self.prefix, self.digits) != self.checksum.upper():
            raise KeyspaceError(f"checksum mismatch for {self}")

    @classmethod
    def build(cls, prefix, digits) -> "NricNumber":
        p = _norm_prefix(prefix)
        return cls(p, str(digits), checksum_letter(p, digits))

    @classmethod
    def parse(cls, text: str) -> "NricNumber":
        m = _FULL_RE.fullmatch(text)
        if not m:
            raise KeyspaceError(f"not an NRIC-shaped string: {text!r}")
        return cls(m.group(1).upper(), m.group(2), m.group(3).upper())

    def __str__(self):
        return f"{self.prefix}{self.digits}{self.checksum}"


def is_valid_nric(text: str) -> bool:
    m = _FULL_RE.fullmatch(text)
    return bool(m) and checksum_letter(m.group(1), m.group(2)) == m.group(3).upper()


class NricKeyspace(Keyspace):
    """Ordered by prefix (as given), then case variant, then the 7-digit body."""

    def __init__(self, form: NricForm, prefixes="STFG", case_mode: CaseMode = CaseMode.UPPER_ONLY):
        self.form = NricForm(form)
        self.case_mode = CaseMode(case_mode)
        seen = []
        for p in prefixes:
            p = _norm_prefix(p)
            if p not in seen:
                seen.append(p)
        if not seen:
            raise EmptyPrefixSetError("NRIC keyspace needs at least one prefix")
        self.prefixes = tuple(seen)
        self.kind = {
            NricForm.PREFIX_FIRST_8: KeyspaceKind.NRIC_PREFIX_FIRST,
            NricForm.CHECKSUM_LAST_8: KeyspaceKind.NRIC_CHECKSUM_LAST,
            NricForm.FULL_9: KeyspaceKind.NRIC_FULL,
        }[self.form]
        lowers = (False, True) if self.case_mode is CaseMode.BOTH_CASES else (False,)
        self._variants = [(p, lower) for p in self.prefixes for lower in lowers]

    def cardinality(self):
        return len(self._variants) * DIGIT_SPACE

    def _render(self, prefix, lower, body):
        if self.form is NricForm.PREFIX_FIRST_8:
            text = prefix + body
        elif self.form is NricForm.CHECKSUM_LAST_8:
            text = body + checksum_letter(prefix, body)
        else:
            text = prefix + body + checksum_letter(prefix, body)
        return text.lower() if lower else text

    def candidate(self, index):
        variant, n = divmod(self._check_index(index), DIGIT_SPACE)
        prefix, lower = self._variants[variant]
        return self._render(prefix, lower, f"{n:07d}")

    def iter_range(self, start, stop):
        stop = min(stop, self.cardinality())
        while start < stop:
            variant, n = divmod(start, DIGIT_SPACE)
            prefix, lower = self._variants[variant]
            end = min(stop, (variant + 1) * DIGIT_SPACE)
            for k in range(n, n + end - start):
                yield self._render(prefix, lower, f"{k:07d}")
            start = end

    def describe(self):
        return f"nric:{self.form.value}:{''.join(self.prefixes)}"


def nric_keyspace(form, prefixes="STFG", case_mode=CaseMode.UPPER_ONLY) -> NricKeyspace:
    return NricKeyspace(form, prefixes, case_mode)
