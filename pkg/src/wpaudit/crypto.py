"""WPA2-PSK key derivation: PMK, PMKID and 4-way handshake MIC checks."""

import enum
import hashlib
import hmac
from dataclasses import dataclass

PBKDF2_ITERATIONS = 4096
PMK_LEN = 32
PMKID_LEN = 16
MIN_PASSPHRASE = 8
MAX_PASSPHRASE = 63
MAX_ESSID = 32

PMK_NAME = b"PMK Name"
PTK_LABEL = b"Pairwise key expansion"


class CryptoError(ValueError):
    pass


class PassphraseLengthError(CryptoError):
    pass


class NonAsciiError(CryptoError):
    pass


class UnsupportedKeyVersion(CryptoError):
    pass


class KeyVersion(enum.IntEnum):
    HMAC_MD5 = 1
    HMAC_SHA1_128 = 2


@dataclass
class VerifyStats:
    """Running tally shared by the verify functions."""

    tried: int = 0
    skipped: int = 0


def parse_mac(text) -> bytes:
    """Accept 6 raw bytes, 12 hex digits, or hex pairs split by ':' or '-'."""
    if isinstance(text, (bytes, bytearray)):
        if len(text) != 6:
            raise CryptoError(f"MAC address must be 6 bytes, got {len(text)}")
        return bytes(text)
    cleaned = text.strip().replace(":", "").replace("-", "")
    if len(cleaned) != 12:
        raise CryptoError(f"malformed MAC address: {text!r}")
    try:
        return bytes.fromhex(cleaned)
    except ValueError:
        raise CryptoError(f"malformed MAC address: {text!r}") from None


def format_mac(mac: bytes, sep: str = ":") -> str:
    return sep.join(f"{b:02x}" for b in mac)


def check_passphrase(passphrase: str) -> bytes:
    """Return the ASCII bytes of a valid WPA2 passphrase or raise."""
    if not MIN_PASSPHRASE <= len(passphrase) <= MAX_PASSPHRASE:
        raise PassphraseLengthError(
            f"passphrase must be {MIN_PASSPHRASE}-{MAX_PASSPHRASE} characters, got {len(passphrase)}"
        )
    if not all(" " <= ch <= "~" for ch in passphrase):
        raise NonAsciiError("passphrase must be printable ASCII")
    return passphrase.encode("ascii")


def _essid_bytes(essid) -> bytes:
    if isinstance(essid, str):
        essid = essid.encode("utf-8")
    if len(essid) > MAX_ESSID:
        raise CryptoError(f"ESSID longer than {MAX_ESSID} bytes")
    return bytes(essid)


def derive_pmk(passphrase: str, essid) -> bytes:
    """PBKDF2-HMAC-SHA1(passphrase, essid, 4096 iterations, 32 bytes)."""
    return hashlib.pbkdf2_hmac(
        "sha1", check_passphrase(passphrase), _essid_bytes(essid), PBKDF2_ITERATIONS, PMK_LEN
    )


def compute_pmkid(pmk: bytes, mac_ap, mac_sta) -> bytes:
    if len(pmk) != PMK_LEN:
        raise CryptoError(f"PMK must be {PMK_LEN} bytes")
    data = PMK_NAME + parse_mac(mac_ap) + parse_mac(mac_sta)
    return hmac.new(pmk, data, hashlib.sha1).digest()[:PMKID_LEN]


def verify_pmkid_candidate(candidate: str, target, stats: VerifyStats = None) -> bool:
    """Check one candidate against a target carrying pmkid, MACs and essid.

    Candidates that are not valid WPA2 passphrases count as skipped and
    never match.
    """
    if stats is not None:
        stats.tried += 1
    try:
        pmk = derive_pmk(candidate, target.essid)
    except CryptoError:
        if stats is not None:
            stats.skipped += 1
        return False
    return hmac.compare_digest(compute_pmkid(pmk, target.mac_ap, target.mac_sta), target.pmkid)


def prf(key: bytes, label: bytes, data: bytes, nbytes: int) -> bytes:
    """IEEE 802.11 PRF built from HMAC-SHA1 blocks."""
    out = b""
    i = 0
    while len(out) < nbytes:
        out += hmac.new(key, label + b"\x00" + data + bytes([i]), hashlib.sha1).digest()
        i += 1
    return out[:nbytes]


@dataclass(frozen=True)
class HandshakeMaterial:
    ap_nonce: bytes
    sta_nonce: bytes
    mac_ap: bytes
    mac_sta: bytes
    eapol_frame: bytes  # MIC field already zeroed
    mic: bytes
    key_version: int = KeyVersion.HMAC_SHA1_128

    def __post_init__(self):
        for name in ("ap_nonce", "sta_nonce"):
            if len(getattr(self, name)) != 32:
                raise CryptoError(f"{name} must be 32 bytes")
        if len(self.mic) != 16:
            raise CryptoError("mic must be 16 bytes")
        object.__setattr__(self, "mac_ap", parse_mac(self.mac_ap))
        object.__setattr__(self, "mac_sta", parse_mac(self.mac_sta))


def kck_from_pmk(pmk: bytes, material: HandshakeMaterial) -> bytes:
    macs = sorted((material.mac_ap, material.mac_sta))
    nonces = sorted((material.ap_nonce, material.sta_nonce))
    return prf(pmk, PTK_LABEL, macs[0] + macs[1] + nonces[0] + nonces[1], 16)


def handshake_mic(pmk: bytes, material: HandshakeMaterial) -> bytes:
    kck = kck_from_pmk(pmk, material)
    if material.key_version == KeyVersion.HMAC_MD5:
        return hmac.new(kck, material.eapol_frame, hashlib.md5).digest()
    if material.key_version == KeyVersion.HMAC_SHA1_128:
        return hmac.new(kck, material.eapol_frame, hashlib.sha1).digest()[:16]
    raise UnsupportedKeyVersion(f"key descriptor version {material.key_version} not supported")


def verify_handshake_candidate(candidate: str, material: HandshakeMaterial, essid,
                               stats: VerifyStats = None) -> bool:
    if material.key_version not in (KeyVersion.HMAC_MD5, KeyVersion.HMAC_SHA1_128):
        raise UnsupportedKeyVersion(f"key descriptor version {material.key_version} not supported")
    if stats is not None:
        stats.tried += 1
    try:
        pmk = derive_pmk(candidate, essid)
    except CryptoError:
        if stats is not None:
            stats.skipped += 1
        return False
    return hmac.compare_digest(handshake_mic(pmk, material), material.mic)
