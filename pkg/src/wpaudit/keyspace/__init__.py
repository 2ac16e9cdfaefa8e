"""Candidate generators for structured WPA2 passphrase guessing."""

import re

from .base import (
    Keyspace,
    KeyspaceError,
    KeyspaceKind,
    LengthOutOfRange,
    ListKeyspace,
    NonDigitPrefixError,
    OverlappingPrefixError,
    PrefixDigitSpace,
    PrefixTooLongError,
    WindowedKeyspace,
    ZeroPartsError,
    split,
    split_ranges,
)
from .nric import (
    CaseMode,
    EmptyPrefixSetError,
    InvalidPrefixError,
    NricForm,
    NricKeyspace,
    NricNumber,
    checksum_letter,
    is_valid_nric,
    nric_keyspace,
)
from .numeric import (
    DateKeyspace,
    MalformedPrefixTable,
    PhonePrefixTable,
    YearRangeError,
    complement_prefixes,
    date_keyspace,
    default_prefix_table,
    digits_keyspace,
    load_prefix_table,
    phone_keyspace,
)
from .wordlist import (
    MalformedDefaultsFile,
    Rule,
    SourceReadError,
    VendorDefault,
    WordlistKeyspace,
    builtin_vendor_defaults,
    default_dict_keyspace,
    default_entries,
    load_vendor_defaults,
    parse_rules,
    wordlist_keyspace,
)

_WINDOW_RE = re.compile(r"@(\d+)-(\d+)$")


def parse_keyspace_spec(spec: str, defaults_file=None) -> Keyspace:
    """Build a keyspace from the command-line mini-language.

    ``phone:3,6,8,9``  ``digits:8`` (``digits:8:-3,6,8,9`` excludes prefixes)
    ``nric:<prefix-first|checksum-last|full>:<letters>[:both]``
    ``date:1900-2019[:yyyymmdd]``  ``defaults``  ``wordlist:<path>[:rules]``

    Any spec may end in ``@start-stop`` to restrict it to that index window.
    """
    window = _WINDOW_RE.search(spec)
    if window:
        spec = spec[: window.start()]
    ks = _parse(spec, defaults_file)
    if window:
        ks = ks.window(int(window.group(1)), int(window.group(2)))
    return ks


def _parse(spec, defaults_file):
    head, _, rest = spec.partition(":")
    try:
        if head == "phone":
            return phone_keyspace([p for p in rest.split(",") if p])
        if head == "digits":
            length, _, excl = rest.partition(":")
            exclude = [p for p in excl.lstrip("-").split(",") if p] if excl else []
            return digits_keyspace(int(length or 8), exclude)
        if head == "nric":
            parts = rest.split(":")
            form = NricForm(parts[0]) if parts[0] else NricForm.FULL_9
            letters = parts[1] if len(parts) > 1 and parts[1] else "STFG"
            case = CaseMode.BOTH_CASES if len(parts) > 2 and parts[2] == "both" else CaseMode.UPPER_ONLY
            return nric_keyspace(form, letters, case)
        if head == "date":
            years, _, fmt = rest.partition(":")
            first, _, last = years.partition("-")
            return date_keyspace(int(first), int(last or first), fmt or "ddmmyyyy")
        if head == "defaults":
            return default_dict_keyspace(rest or defaults_file)
        if head == "wordlist":
            path, sep, rules = rest.rpartition(":")
            if not sep or not _looks_like_rules(rules):
                path, rules = rest, ""
            return WordlistKeyspace(path, parse_rules(rules))
    except (ValueError, OSError) as exc:
        if isinstance(exc, KeyspaceError):
            raise
        raise KeyspaceError(f"bad keyspace spec {spec!r}: {exc}") from exc
    raise KeyspaceError(f"unknown keyspace spec {spec!r}")


def _looks_like_rules(text):
    names = {r.value for r in Rule} | {"all"}
    return all(part in names for part in text.split(",")) and bool(text)
