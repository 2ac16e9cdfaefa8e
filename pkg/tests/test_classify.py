import pytest
from hypothesis import given
from hypothesis import strategies as st

from fixtures import context, labelled_set
from wpaudit.classify import (
    LABEL_ORDER,
    ClassLabel,
    ClassifyContext,
    TooShortError,
    classify,
    distribution,
    geo_correlate,
    mask,
    nric_form,
    parse_date,
)
from wpaudit.keyspace import default_entries, load_prefix_table
from wpaudit.keyspace.numeric import PhonePrefixTable

L = ClassLabel


@pytest.mark.parametrize("text,label", [
    ("25203738", L.DEFAULT),
    ("prolink12345", L.DEFAULT),
    ("S1234567", L.NRIC),
    ("S1234567D", L.NRIC),
    ("1234567D", L.NRIC),
    ("98765432", L.PHONE),
    ("30121990", L.PHONE),  # phone-shaped wins over the date reading
    ("01011990", L.DATE_OF_SIGNIFICANCE),
    ("password123", L.DICTIONARY),
    ("Sunshine", L.DICTIONARY),
    ("S1234567E", L.USER_DEFINED),  # bad checksum
    ("6567412345", L.USER_DEFINED),  # ten digits is not a phone number
    ("password12345", L.USER_DEFINED),  # more than 4 trailing digits
    ("x9#kq!ww", L.USER_DEFINED),
])
def test_labels(text, label):
    assert classify(text, context()).label is label


def test_classify_short():
    with pytest.raises(TooShortError):
        classify("1234567")


@pytest.mark.parametrize("text,masked", [
    ("98917654", "9891xxxx"),
    ("6567412345", "65674xxxxx"),
    ("aaaaaaaa", "aaaaxxxx"),
    ("abcdefghijk", "abcdexxxxxx"),
])
def test_mask(text, masked):
    assert mask(text) == masked
    assert classify(text).masked == masked


def test_mask_too_short():
    with pytest.raises(TooShortError):
        mask("abc")


@given(st.text(alphabet=st.characters(min_codepoint=33, max_codepoint=126), min_size=8, max_size=63))
def test_mask_reveals_at_most_half(text):
    m = mask(text)
    assert len(m) == len(text)
    shown = len(text) - max(4, -(-len(text) // 2))
    assert m[shown:] == "x" * (len(text) - shown)
    assert m[:shown] == text[:shown] and shown <= len(text) // 2


@given(st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), min_size=8, max_size=20))
def test_classify_total_and_label_evidence(text):
    ctx = context()
    c = classify(text, ctx)
    assert c.label in LABEL_ORDER
    assert c == classify(text, ctx)
    if c.label is L.DEFAULT:
        assert text in default_entries()
    if c.label is L.NRIC:
        assert nric_form(text) in {"full", "prefix-first", "checksum-last"}


def test_nric_forms():
    assert nric_form("S1234567D") == "full"
    assert nric_form("s1234567d") == "full"
    assert nric_form("T1234567") == "prefix-first"
    assert nric_form("1234567D") == "checksum-last"
    assert nric_form("1234567Y") is None


def test_parse_date():
    assert parse_date("29021996").isoformat() == "1996-02-29"
    assert parse_date("29021997") is None
    assert parse_date("19961231", formats=("yyyymmdd",)).month == 12
    assert parse_date("٠١٠١١٩٩٠") is None


def test_fixture_labels_round_trip():
    counts = {L.PHONE: 20, L.USER_DEFINED: 15, L.DICTIONARY: 10, L.DEFAULT: 5, L.DATE_OF_SIGNIFICANCE: 4, L.NRIC: 3}
    for text, label in labelled_set(counts, seed=9):
        assert classify(text, context()).label is label


def test_distribution_of_published_counts():
    # 88/53/30/14/8/4 out of 197 produce the published split exactly
    counts = {L.PHONE: 88, L.USER_DEFINED: 53, L.DICTIONARY: 30, L.DEFAULT: 14, L.DATE_OF_SIGNIFICANCE: 8, L.NRIC: 4}
    dist = distribution([classify(t, context()) for t, _ in labelled_set(counts)])
    assert dist.total == 197
    assert dist.percentages == {L.PHONE: 44.67, L.USER_DEFINED: 26.90, L.DICTIONARY: 15.23,
                                L.DEFAULT: 7.11, L.DATE_OF_SIGNIFICANCE: 4.06, L.NRIC: 2.03}


def test_distribution_edges():
    empty = distribution([])
    assert empty.total == 0
    assert all(v == 0 for v in empty.counts.values())
    assert all(v == 0.0 for v in empty.percentages.values())
    one = distribution([classify("98765432")] * 3)
    assert one.percentages[L.PHONE] == 100.0
    assert sum(one.percentages.values()) == 100.0


@given(st.lists(st.sampled_from(LABEL_ORDER), min_size=1, max_size=2000))
def test_percentages_sum_to_100(labels):
    from collections import Counter
    counts = Counter(labels)
    fixture = labelled_set(counts)
    dist = distribution([classify(t, context()) for t, _ in fixture])
    assert abs(sum(dist.percentages.values()) - 100.0) <= 0.02
    for lbl in LABEL_ORDER:
        assert abs(dist.percentages[lbl] - 100 * counts[lbl] / len(labels)) < 0.01 + 1e-9


def test_geo_correlate():
    central = load_prefix_table(["645\tCentral"])
    assert geo_correlate([classify("64571234")], central) == {"Central": 1}
    nested = load_prefix_table(["6\tResidential", "675\tNorth"])
    assert geo_correlate([classify("67501234"), classify("61234567")], nested) == {"North": 1, "Residential": 1}
    got = geo_correlate([classify("98765432"), classify("x9#kq!ww")], PhonePrefixTable())
    assert got == {"unmapped": 1}


def test_phone_evidence_uses_table():
    ctx = ClassifyContext(phone_prefix_table=load_prefix_table(["645\tCentral"]))
    assert "Central" in classify("64571234", ctx).evidence
