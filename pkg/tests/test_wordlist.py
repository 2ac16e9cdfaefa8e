import io

import pytest

from wpaudit.keyspace import (
    KeyspaceKind,
    MalformedDefaultsFile,
    Rule,
    SourceReadError,
    WordlistKeyspace,
    default_dict_keyspace,
    wordlist_keyspace,
)


def test_length_filter():
    ks = wordlist_keyspace(["password1", "short"])
    assert ks.cardinality() == 1
    assert ks.skipped == 1
    assert list(ks) == ["password1"]
    assert ks.kind is KeyspaceKind.WORDLIST


def test_empty_source():
    assert wordlist_keyspace([]).cardinality() == 0
    assert list(wordlist_keyspace([])) == []


def test_concat_pairs_makes_short_words_usable():
    ks = wordlist_keyspace(["pass"], {Rule.CONCAT_PAIRS})
    assert "passpass" in list(ks)
    assert ks.skipped == 1
    assert ks.kind is KeyspaceKind.WORDLIST_WITH_RULES


def test_rules_by_hand():
    ks = wordlist_keyspace(["monkey12", "abc", "defgh"], {Rule.APPEND_DIGITS, Rule.CASE_TOGGLE, Rule.CONCAT_PAIRS})
    got = list(ks)
    singles = (["monkey12", "Monkey12", "MONKEY12"] + [f"monkey12{d}" for d in range(10)])
    # pairs: left words in file order, right words by (length, file order), 8..63 joined
    pairs = ["monkey12abc", "monkey12defgh", "monkey12monkey12", "abcdefgh", "abcmonkey12",
             "defghabc", "defghdefgh", "defghmonkey12"]
    assert got == singles + pairs
    assert ks.cardinality() == len(got)


def test_singles_deduplicated():
    ks = wordlist_keyspace(["password", "password", "password1"], {Rule.APPEND_DIGITS})
    got = list(ks)
    assert len(got) == len(set(got)) == ks.cardinality()


def test_bytes_lines_and_crlf(tmp_path):
    path = tmp_path / "words.txt"
    path.write_bytes(b"iloveyou\r\nsunshine\n\xff\xfe-bad-bytes\ntiny\n")
    ks = WordlistKeyspace(path)
    assert list(ks) == ["iloveyou", "sunshine"]
    assert ks.skipped == 2
    assert ks.lines_read == 4


def test_missing_file():
    with pytest.raises(SourceReadError):
        WordlistKeyspace("/nonexistent/words.txt")


def test_random_access_matches_iteration():
    words = [f"w{i}" * (1 + i % 5) for i in range(40)]
    ks = wordlist_keyspace(words, {Rule.CONCAT_PAIRS, Rule.APPEND_DIGITS})
    full = list(ks)
    assert len(full) == ks.cardinality()
    assert [ks.candidate(i) for i in range(len(full))] == full
    for a, b in [(0, 7), (5, 400), (len(full) - 9, len(full))]:
        assert list(ks.iter_range(a, b)) == full[a:b]
    assert all(8 <= len(c) <= 63 for c in full)


def test_defaults_builtin():
    ks = default_dict_keyspace()
    items = list(ks)
    assert "25203738" in items
    assert "prolink12345" in items
    assert items.count("25203738") == 1
    assert items[0] == "0001543795"


def test_defaults_with_user_file():
    base = list(default_dict_keyspace())
    assert list(default_dict_keyspace(io.StringIO(""))) == base
    extra = io.StringIO("Acme\tR1\tacmewifi99\t12345670\nAcme\tR2\t\t99887766\n")
    assert list(default_dict_keyspace(extra)) == base + ["acmewifi99", "12345670", "99887766"]
    with pytest.raises(MalformedDefaultsFile):
        default_dict_keyspace(io.StringIO("Acme\tR1\tonly-three\n"))
