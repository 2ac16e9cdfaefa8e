import os
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from oracles import eapol_frame, mic_ref, pmk_ref, pmkid_ref
from wpaudit import crypto
from wpaudit.crypto import HandshakeMaterial, KeyVersion
from wpaudit.formats import HashTarget

AP = bytes.fromhex("001122334455")
STA = bytes.fromhex("66778899aabb")

# frozen from the independent oracle (oracles.pmk_ref / pmkid_ref)
PMK_PASSWORD_IEEE = "f42c6fc52df0ebef9ebb4b90b38a5f902e83fe1b135a70e23aed762e9710a12e"
PMK_88888888_TESTAP = "a2f6b0388c7c70b1f503f753b1326c64366450501e12e85fb6f4e0ca7588da7d"
PMKID_88888888_TESTAP = "7a2b3ad8f83499e8bfcb730c0aeba81a"
PMKID_88888888_TESTAP_STA_FLIPPED = "0595155fa299807f986df18bf596eaf1"

passphrases = st.text(alphabet=st.characters(min_codepoint=32, max_codepoint=126), min_size=8, max_size=63)


def make_target(passphrase, essid=b"TestAP", ap=AP, sta=STA):
    pmk = pmk_ref(passphrase, essid)
    return HashTarget(pmkid_ref(pmk, ap, sta), ap, sta, essid)


def test_derive_pmk_reference_vector():
    assert crypto.derive_pmk("password", "IEEE").hex() == PMK_PASSWORD_IEEE
    assert pmk_ref("password", b"IEEE").hex() == PMK_PASSWORD_IEEE


def test_derive_pmk_deterministic():
    assert crypto.derive_pmk("88888888", b"TestAP") == crypto.derive_pmk("88888888", b"TestAP")
    assert crypto.derive_pmk("88888888", b"TestAP").hex() == PMK_88888888_TESTAP


@pytest.mark.parametrize("bad", ["1234567", "", "x" * 64])
def test_derive_pmk_length(bad):
    with pytest.raises(crypto.PassphraseLengthError):
        crypto.derive_pmk(bad, b"TestAP")


@pytest.mark.parametrize("bad", ["pässword", "pass\tword", "pass\x7fword"])
def test_derive_pmk_non_ascii(bad):
    with pytest.raises(crypto.NonAsciiError):
        crypto.derive_pmk(bad, b"TestAP")


def test_compute_pmkid_example():
    pmk = crypto.derive_pmk("88888888", "TestAP")
    assert crypto.compute_pmkid(pmk, "00:11:22:33:44:55", "66:77:88:99:aa:bb").hex() == PMKID_88888888_TESTAP
    assert crypto.compute_pmkid(pmk, AP, STA) == crypto.compute_pmkid(pmk, AP, STA)


def test_compute_pmkid_sta_bit_flip():
    pmk = bytes.fromhex(PMK_88888888_TESTAP)
    flipped = STA[:5] + bytes([STA[5] ^ 1])
    got = crypto.compute_pmkid(pmk, AP, flipped)
    assert got.hex() == PMKID_88888888_TESTAP_STA_FLIPPED
    assert got != crypto.compute_pmkid(pmk, AP, STA)


def test_compute_pmkid_random_oracle_agreement():
    rng = random.Random(7)
    for _ in range(200):
        pmk, ap, sta = rng.randbytes(32), rng.randbytes(6), rng.randbytes(6)
        assert crypto.compute_pmkid(pmk, ap, sta) == pmkid_ref(pmk, ap, sta)


def test_compute_pmkid_rejects_short_pmk():
    with pytest.raises(crypto.CryptoError):
        crypto.compute_pmkid(bytes(16), AP, STA)


def test_mac_parsing():
    assert crypto.parse_mac("00-11-22-33-44-55") == AP
    assert crypto.parse_mac("001122334455") == AP
    assert crypto.format_mac(AP) == "00:11:22:33:44:55"
    with pytest.raises(crypto.CryptoError):
        crypto.parse_mac("00:11:22")


def test_verify_pmkid_round_trip_and_mismatch():
    target = make_target("88888888")
    assert crypto.verify_pmkid_candidate("88888888", target)
    assert not crypto.verify_pmkid_candidate("00000000", target)


def test_verify_pmkid_short_candidate_is_skipped():
    stats = crypto.VerifyStats()
    assert not crypto.verify_pmkid_candidate("1234567", make_target("88888888"), stats)
    assert (stats.tried, stats.skipped) == (1, 1)


@settings(max_examples=15, deadline=None)
@given(passphrases)
def test_verify_round_trip_property(passphrase):
    pmk = crypto.derive_pmk(passphrase, b"prop")
    target = HashTarget(crypto.compute_pmkid(pmk, AP, STA), AP, STA, b"prop")
    assert crypto.verify_pmkid_candidate(passphrase, target)


def synth_material(passphrase, essid=b"HomeNet", key_version=2, seed=1):
    rng = random.Random(seed)
    anonce, snonce = rng.randbytes(32), rng.randbytes(32)
    ap, sta = rng.randbytes(6), rng.randbytes(6)
    frame = eapol_frame(snonce, key_version)
    mic = mic_ref(pmk_ref(passphrase, essid), ap, sta, anonce, snonce, frame, key_version)
    return HandshakeMaterial(anonce, snonce, ap, sta, frame, mic, key_version)


@pytest.mark.parametrize("version", [KeyVersion.HMAC_MD5, KeyVersion.HMAC_SHA1_128])
def test_verify_handshake(version):
    material = synth_material("correcthorse", key_version=version)
    assert crypto.verify_handshake_candidate("correcthorse", material, b"HomeNet")
    assert not crypto.verify_handshake_candidate("wronghorse", material, b"HomeNet")


def test_verify_handshake_corrupted_mic():
    m = synth_material("correcthorse")
    bad = HandshakeMaterial(m.ap_nonce, m.sta_nonce, m.mac_ap, m.mac_sta, m.eapol_frame,
                            bytes([m.mic[0] ^ 0x80]) + m.mic[1:], m.key_version)
    assert not crypto.verify_handshake_candidate("correcthorse", bad, b"HomeNet")


def test_verify_handshake_unsupported_version():
    m = synth_material("correcthorse")
    aes = HandshakeMaterial(m.ap_nonce, m.sta_nonce, m.mac_ap, m.mac_sta, m.eapol_frame, m.mic, 3)
    with pytest.raises(crypto.UnsupportedKeyVersion):
        crypto.verify_handshake_candidate("correcthorse", aes, b"HomeNet")


def test_handshake_material_invariants():
    with pytest.raises(crypto.CryptoError):
        HandshakeMaterial(bytes(31), bytes(32), AP, STA, b"", bytes(16))
    with pytest.raises(crypto.CryptoError):
        HandshakeMaterial(bytes(32), bytes(32), AP, STA, b"", bytes(15))


def test_prf_matches_oracle():
    from oracles import prf_ref

    key, data = os.urandom(32), os.urandom(76)
    assert crypto.prf(key, b"Pairwise key expansion", data, 64) == prf_ref(key, b"Pairwise key expansion", data, 64)


def test_no_collisions_among_distinct_candidates():
    target = make_target("zz-not-in-sample")
    pmks = {}
    for i in range(10_000):
        cand = f"{i:08d}"
        pmks[cand] = crypto.derive_pmk(cand, target.essid)
    assert not any(crypto.compute_pmkid(p, AP, STA) == target.pmkid for p in pmks.values())
    assert len({crypto.compute_pmkid(p, AP, STA) for p in pmks.values()}) == len(pmks)
