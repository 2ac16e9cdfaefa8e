import random

import pytest

from oracles import nric_checksum_ref
from wpaudit.keyspace import (
    CaseMode,
    EmptyPrefixSetError,
    InvalidPrefixError,
    KeyspaceKind,
    NricForm,
    NricNumber,
    checksum_letter,
    is_valid_nric,
    nric_keyspace,
)
from wpaudit.keyspace.nric import LETTERS_FG, LETTERS_ST


@pytest.mark.parametrize("prefix,digits,letter", [
    ("S", "1234567", "D"),  # 106 mod 11 = 7
    ("T", "0000000", "G"),  # (0 + 4) mod 11 = 4
    ("F", "0000000", "X"),
    ("s", "1234567", "D"),
])
def test_checksum_examples(prefix, digits, letter):
    assert checksum_letter(prefix, digits) == letter


def test_checksum_matches_printed_table():
    rng = random.Random(11)
    for _ in range(2000):
        p = rng.choice("STFG")
        d = f"{rng.randrange(10 ** 7):07d}"
        assert checksum_letter(p, d) == nric_checksum_ref(p, d)


def test_checksum_bad_prefix():
    with pytest.raises(InvalidPrefixError):
        checksum_letter("A", "1234567")


def test_nric_number():
    n = NricNumber.build("S", "1234567")
    assert str(n) == "S1234567D"
    assert NricNumber.parse("s1234567d") == n
    assert is_valid_nric("S1234567D")
    assert not is_valid_nric("S1234567E")


def test_full9_cardinality_and_membership():
    ks = nric_keyspace(NricForm.FULL_9, "STFG", CaseMode.UPPER_ONLY)
    assert ks.cardinality() == 40_000_000
    assert ks.kind is KeyspaceKind.NRIC_FULL
    s_only = nric_keyspace(NricForm.FULL_9, "S")
    assert s_only.candidate(1_234_567) == "S1234567D"


def test_prefix_first():
    ks = nric_keyspace(NricForm.PREFIX_FIRST_8, "S")
    assert ks.cardinality() == 10_000_000
    assert ks.candidate(1_234_567) == "S1234567"


def test_checksum_last_and_cases():
    ks = nric_keyspace(NricForm.CHECKSUM_LAST_8, "ST", CaseMode.BOTH_CASES)
    assert ks.cardinality() == 4 * 10 ** 7
    assert ks.candidate(1_234_567) == "1234567D"
    assert ks.candidate(10 ** 7 + 1_234_567) == "1234567d"
    assert ks.candidate(2 * 10 ** 7) == "0000000G"


def test_checksum_last_never_collides_across_prefixes():
    # same digits give the same weighted sum; distinct prefixes map it to
    # distinct letters for every possible remainder
    for r in range(11):
        letters = {LETTERS_ST[r], LETTERS_ST[(r + 4) % 11], LETTERS_FG[r], LETTERS_FG[(r + 4) % 11]}
        assert len(letters) == 4


def test_empty_prefix_set():
    with pytest.raises(EmptyPrefixSetError):
        nric_keyspace(NricForm.FULL_9, "")


def test_iter_range_crosses_prefix_boundary():
    ks = nric_keyspace(NricForm.FULL_9, "SG", CaseMode.UPPER_ONLY)
    start = 10 ** 7 - 2
    assert list(ks.iter_range(start, start + 4)) == [ks.candidate(i) for i in range(start, start + 4)]
    assert ks.candidate(10 ** 7).startswith("G0000000")


def test_generated_full9_validate_and_mutations_fail():
    ks = nric_keyspace(NricForm.FULL_9, "STFG")
    rng = random.Random(5)
    for i in rng.sample(range(ks.cardinality()), 1000):
        nric = ks.candidate(i)
        assert is_valid_nric(nric)
        pos = rng.randrange(1, 8)
        for d in "0123456789":
            if d != nric[pos]:
                assert not is_valid_nric(nric[:pos] + d + nric[pos + 1:])
