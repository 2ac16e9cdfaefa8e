"""Keyboard vector-space trace of a passphrase.

Each character is located on a two-layer QWERTY grid (layer 0 unshifted,
layer 1 reached with Shift).  Consecutive key presses are joined by
displacement vectors; path lengths are accumulated separately for the left
and right halves of the keyboard.
"""

import math
import os
from dataclasses import dataclass, field
from importlib import resources


class LayoutError(ValueError):
    pass


class UnmappableCharacter(LayoutError):
    def __init__(self, char, position):
        super().__init__(f"character {char!r} at position {position} is not on the keyboard layout")
        self.char = char
        self.position = position


@dataclass(frozen=True)
class Key:
    char: str
    col: int
    row: int
    layer: int
    x: float  # column plus the row's stagger offset
    y: float


@dataclass
class KeyboardLayout:
    keys: dict  # char -> Key
    stagger: dict = field(default_factory=dict)
    layer_cost: float = 2.0
    cross_half_cost: float = 1.5
    half_column: int = 6

    def half(self, key: Key) -> str:
        return "left" if key.col < self.half_column else "right"

    def locate(self, char: str) -> Key:
        return self.keys[char]

    def cell(self, col, row, layer):
        for key in self.keys.values():
            if (key.col, key.row, key.layer) == (col, row, layer):
                return key
        return None


def load_layout(stream) -> KeyboardLayout:
    """Parse the tab-separated layout format (see ``data/qwerty.tsv``)."""
    keys = {}
    stagger = {}
    consts = {}
    cells = []
    for lineno, line in enumerate(stream, 1):
        line = line.rstrip("\r\n")
        if not line or line.startswith("#"):
            continue
        fields = line.split("\t")
        try:
            if fields[0] == "@stagger":
                stagger[int(fields[1])] = float(fields[2])
            elif fields[0].startswith("@"):
                consts[fields[0][1:]] = float(fields[1])
            else:
                col, row = int(fields[0]), int(fields[1])
                cells.append((lineno, col, row, fields[2], fields[3] if len(fields) > 3 else ""))
        except (IndexError, ValueError):
            raise LayoutError(f"layout line {lineno}: cannot parse {line!r}") from None
    for lineno, col, row, lower, upper in cells:
        x = col + stagger.get(row, 0.0)
        for layer, char in enumerate((lower, upper)):
            if char == "SPACE":
                char = " "
            if not char:
                continue
            if len(char) != 1:
                raise LayoutError(f"layout line {lineno}: cell holds {char!r}, expected one character")
            if char in keys:
                raise LayoutError(f"layout line {lineno}: {char!r} appears twice")
            keys[char] = Key(char, col, row, layer, x, float(row))
    return KeyboardLayout(
        keys=keys,
        stagger=stagger,
        layer_cost=consts.get("layer_cost", 2.0),
        cross_half_cost=consts.get("cross_half_cost", 1.5),
        half_column=int(consts.get("half_column", 6)),
    )


_DEFAULT = None


def qwerty_layout() -> KeyboardLayout:
    global _DEFAULT
    if _DEFAULT is None:
        text = resources.files("wpaudit.data").joinpath("qwerty.tsv").read_text("utf-8")
        _DEFAULT = load_layout(text.splitlines())
    return _DEFAULT


def layout_from_path(path) -> KeyboardLayout:
    with open(os.fspath(path), encoding="utf-8") as fh:
        return load_layout(fh)


@dataclass(frozen=True)
class Marker:
    char: str
    x: float
    y: float
    z: int
    seq: int  # 1-based position in the passphrase
    col: int
    row: int
    half: str


@dataclass(frozen=True)
class TraceResult:
    markers: tuple
    left_half_path_length: float
    right_half_path_length: float
    layer_transitions: int
    cross_half_count: int
    total_vector: tuple
    score: float

    @property
    def path_length(self) -> float:
        return self.left_half_path_length + self.right_half_path_length

    def marker_map(self, half: str, layer: int = 0) -> dict:
        """(row, col) -> sequence numbers placed in that cell."""
        out = {}
        for m in self.markers:
            if m.half == half and m.z == layer:
                out.setdefault((m.row, m.col), []).append(m.seq)
        return out


def trace_passphrase(passphrase: str, layout: KeyboardLayout = None) -> TraceResult:
    layout = layout or qwerty_layout()
    markers = []
    for i, ch in enumerate(passphrase):
        try:
            key = layout.locate(ch)
        except KeyError:
            raise UnmappableCharacter(ch, i) from None
        markers.append(Marker(ch, key.x, key.y, key.layer, i + 1, key.col, key.row, layout.half(key)))

    paths = {"left": 0.0, "right": 0.0}
    transitions = 0
    crossings = 0
    for a, b in zip(markers, markers[1:]):
        if a.z != b.z:
            transitions += 1
        if a.half != b.half:
            crossings += 1
        else:
            paths[a.half] += math.hypot(b.x - a.x, b.y - a.y)

    if markers:
        first, last = markers[0], markers[-1]
        total = (last.x - first.x, last.y - first.y, float(last.z - first.z))
    else:
        total = (0.0, 0.0, 0.0)
    steps = max(len(markers) - 1, 1)
    effort = (paths["left"] + paths["right"] + layout.layer_cost * transitions
              + layout.cross_half_cost * crossings)
    return TraceResult(
        markers=tuple(markers),
        left_half_path_length=paths["left"],
        right_half_path_length=paths["right"],
        layer_transitions=transitions,
        cross_half_count=crossings,
        total_vector=total,
        score=effort / steps if len(markers) > 1 else 0.0,
    )
