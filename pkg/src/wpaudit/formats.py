"""Capture-line parsing, OUI vendor lookup and report writers.

Two PMKID line forms are accepted::

    PMKID*MAC_AP*MAC_STA*ESSID_HEX            (legacy, hashcat mode 16800)
    WPA*01*PMKID*MAC_AP*MAC_STA*ESSID_HEX***  (hashcat mode 22000)

plus ``WPA*02`` EAPOL lines from the 22000 format for handshake targets.
Hex is accepted in either case and written in lowercase.
"""

import hmac
import json
from collections import Counter
from dataclasses import dataclass

from . import crypto

UNKNOWN_VENDOR = "Unknown"

# EAPOL-Key frame offsets (802.1X header included)
_EAPOL_KEY_INFO = slice(5, 7)
_EAPOL_NONCE = slice(17, 49)
_EAPOL_MIC = slice(81, 97)


class FormatError(ValueError):
    def __init__(self, message, lineno=None):
        self.lineno = lineno
        super().__init__(f"line {lineno}: {message}" if lineno is not None else message)


class FieldCountError(FormatError):
    pass


class HexDecodeError(FormatError):
    pass


class FieldLengthError(FormatError):
    pass


class UnsupportedLineType(FormatError):
    pass


class MalformedOuiLine(FormatError):
    pass


@dataclass(frozen=True)
class HashTarget:
    pmkid: bytes
    mac_ap: bytes
    mac_sta: bytes
    essid: bytes
    source_line: int = 0

    def __post_init__(self):
        if len(self.pmkid) != crypto.PMKID_LEN:
            raise FieldLengthError("PMKID must be 16 bytes", self.source_line)
        if len(self.mac_ap) != 6 or len(self.mac_sta) != 6:
            raise FieldLengthError("MAC addresses must be 6 bytes", self.source_line)
        if len(self.essid) > crypto.MAX_ESSID:
            raise FieldLengthError("ESSID longer than 32 bytes", self.source_line)

    def matches(self, pmk: bytes) -> bool:
        return hmac.compare_digest(crypto.compute_pmkid(pmk, self.mac_ap, self.mac_sta), self.pmkid)

    def to_line(self, form: str = "modern") -> str:
        return serialize_pmkid_line(self, form)


@dataclass(frozen=True)
class HandshakeTarget:
    material: crypto.HandshakeMaterial
    essid: bytes
    source_line: int = 0

    @property
    def mac_ap(self):
        return self.material.mac_ap

    @property
    def mac_sta(self):
        return self.material.mac_sta

    def matches(self, pmk: bytes) -> bool:
        return hmac.compare_digest(crypto.handshake_mic(pmk, self.material), self.material.mic)


def _hex(field, name, nbytes, lineno, exact=True):
    try:
        raw = bytes.fromhex(field)
    except ValueError:
        raise HexDecodeError(f"{name} is not valid hex", lineno) from None
    if len(field) != 2 * len(raw) or (exact and len(raw) != nbytes) or len(raw) > nbytes:
        raise FieldLengthError(f"{name} must be {'' if exact else 'at most '}{nbytes} bytes", lineno)
    return raw


def _text(line, lineno):
    if isinstance(line, (bytes, bytearray)):
        try:
            line = bytes(line).decode("ascii")
        except UnicodeDecodeError:
            raise HexDecodeError("line is not ASCII", lineno) from None
    line = line.rstrip("\r\n")
    if any(ch.isspace() for ch in line):
        raise HexDecodeError("unexpected whitespace in line", lineno)
    return line


def parse_pmkid_line(line, lineno: int = 0) -> HashTarget:
    line = _text(line, lineno)
    fields = line.split("*")
    if fields[0] == "WPA":
        if len(fields) < 2 or fields[1] != "01":
            if len(fields) >= 2 and fields[1] == "02":
                raise UnsupportedLineType("WPA*02 is a handshake line, not a PMKID line", lineno)
            raise UnsupportedLineType("unknown WPA line type", lineno)
        if len(fields) != 9:
            raise FieldCountError(f"expected 9 fields in WPA*01 line, got {len(fields)}", lineno)
        if any(fields[6:8]):
            raise FieldCountError("WPA*01 line carries handshake fields", lineno)
        if fields[8]:
            _hex(fields[8], "message pair", 1, lineno)
        body = fields[2:6]
    else:
        if len(fields) != 4:
            raise FieldCountError(f"expected 4 fields, got {len(fields)}", lineno)
        body = fields
    pmkid = _hex(body[0], "PMKID", crypto.PMKID_LEN, lineno)
    mac_ap = _hex(body[1], "AP MAC", 6, lineno)
    mac_sta = _hex(body[2], "station MAC", 6, lineno)
    essid = _hex(body[3], "ESSID", crypto.MAX_ESSID, lineno, exact=False)
    return HashTarget(pmkid, mac_ap, mac_sta, essid, lineno)


def serialize_pmkid_line(target: HashTarget, form: str = "modern") -> str:
    body = f"{target.pmkid.hex()}*{target.mac_ap.hex()}*{target.mac_sta.hex()}*{target.essid.hex()}"
    if form == "legacy":
        return body
    if form == "modern":
        return f"WPA*01*{body}***"
    raise ValueError(f"unknown line form {form!r}")


def parse_handshake_line(line, lineno: int = 0) -> HandshakeTarget:
    """Parse ``WPA*02*MIC*MAC_AP*MAC_STA*ESSID*ANONCE*EAPOL*MESSAGEPAIR``.

    The station nonce and key descriptor version are read out of the EAPOL
    frame; its MIC field is zeroed before storage.
    """
    line = _text(line, lineno)
    fields = line.split("*")
    if fields[:2] != ["WPA", "02"]:
        raise UnsupportedLineType("not a WPA*02 line", lineno)
    if len(fields) != 9:
        raise FieldCountError(f"expected 9 fields in WPA*02 line, got {len(fields)}", lineno)
    mic = _hex(fields[2], "MIC", 16, lineno)
    mac_ap = _hex(fields[3], "AP MAC", 6, lineno)
    mac_sta = _hex(fields[4], "station MAC", 6, lineno)
    essid = _hex(fields[5], "ESSID", crypto.MAX_ESSID, lineno, exact=False)
    anonce = _hex(fields[6], "ANonce", 32, lineno)
    eapol = bytearray(_hex(fields[7], "EAPOL", 256, lineno, exact=False))
    if len(eapol) < _EAPOL_MIC.stop:
        raise FieldLengthError("EAPOL frame too short", lineno)
    key_info = int.from_bytes(eapol[_EAPOL_KEY_INFO], "big")
    snonce = bytes(eapol[_EAPOL_NONCE])
    eapol[_EAPOL_MIC] = bytes(16)
    material = crypto.HandshakeMaterial(anonce, snonce, mac_ap, mac_sta, bytes(eapol), mic, key_info & 0x7)
    return HandshakeTarget(material, essid, lineno)


def serialize_handshake_line(target: HandshakeTarget, message_pair: int = 0) -> str:
    m = target.material
    return (f"WPA*02*{m.mic.hex()}*{m.mac_ap.hex()}*{m.mac_sta.hex()}*{target.essid.hex()}"
            f"*{m.ap_nonce.hex()}*{m.eapol_frame.hex()}*{message_pair:02x}")


def parse_capture_line(line, lineno: int = 0):
    text = _text(line, lineno)
    if text.startswith("WPA*02*"):
        return parse_handshake_line(text, lineno)
    return parse_pmkid_line(text, lineno)


def load_capture(stream):
    """Parse every non-blank line; return (targets, errors) without stopping
    at bad lines."""
    targets, errors = [], []
    for lineno, line in enumerate(stream, 1):
        if isinstance(line, bytes):
            line = line.decode("ascii", errors="replace")
        if not line.strip():
            continue
        try:
            targets.append(parse_capture_line(line.strip(), lineno))
        except (FormatError, crypto.CryptoError) as exc:
            errors.append(exc if isinstance(exc, FormatError) else FormatError(str(exc), lineno))
    return targets, errors


class OuiTable:
    """3-byte MAC prefix -> manufacturer name."""

    def __init__(self, entries=None):
        self._entries = dict(entries or {})
        self.duplicates = 0

    def __len__(self):
        return len(self._entries)

    def add(self, prefix: bytes, name: str):
        if prefix in self._entries:
            self.duplicates += 1
        self._entries[prefix] = name

    def lookup(self, mac) -> str:
        mac = crypto.parse_mac(mac) if not isinstance(mac, (bytes, bytearray)) else bytes(mac)
        return self._entries.get(mac[:3], UNKNOWN_VENDOR)


def load_oui(stream) -> OuiTable:
    """Read ``XX-XX-XX<TAB>Manufacturer`` lines; later duplicates win."""
    table = OuiTable()
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line.strip() or line.startswith("#"):
            continue
        prefix, sep, name = line.partition("\t")
        parts = prefix.strip().replace(":", "-").split("-")
        if not sep or not name.strip() or len(parts) != 3 or any(len(p) != 2 for p in parts):
            raise MalformedOuiLine("expected XX-XX-XX<TAB>Manufacturer", lineno)
        try:
            raw = bytes.fromhex("".join(parts))
        except ValueError:
            raise MalformedOuiLine("OUI prefix is not hex", lineno) from None
        table.add(raw, name.strip())
    return table


def vendor_report(targets, oui: OuiTable) -> Counter:
    return Counter(oui.lookup(t.mac_ap) for t in targets)


def write_table(rows, columns, stream):
    """Tab-separated rows under a header line."""
    stream.write("\t".join(columns) + "\n")
    for row in rows:
        stream.write("\t".join(_cell(row.get(c)) for c in columns) + "\n")


def _cell(value):
    if value is None:
        return "-"
    if isinstance(value, float):
        return f"{value:.2f}"
    return str(value)


def write_json(tree, stream):
    json.dump(tree, stream, indent=2, sort_keys=False)
    stream.write("\n")
