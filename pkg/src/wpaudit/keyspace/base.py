import enum
from bisect import bisect_right
from itertools import islice


class KeyspaceError(ValueError):
    pass


class OverlappingPrefixError(KeyspaceError):
    pass


class NonDigitPrefixError(KeyspaceError):
    pass


class PrefixTooLongError(KeyspaceError):
    pass


class LengthOutOfRange(KeyspaceError):
    pass


class ZeroPartsError(KeyspaceError):
    pass


class KeyspaceKind(str, enum.Enum):
    PHONE = "phone"
    DIGITS = "digits"
    NRIC_PREFIX_FIRST = "nric-prefix-first"
    NRIC_CHECKSUM_LAST = "nric-checksum-last"
    NRIC_FULL = "nric-full"
    DEFAULT_DICT = "defaults"
    WORDLIST = "wordlist"
    WORDLIST_WITH_RULES = "wordlist-rules"
    DATE = "date"


class Keyspace:
    """An ordered, finite, indexable space of candidate passphrases.

    Subclasses provide ``cardinality()`` and ``candidate(i)``; overriding
    ``iter_range`` is worthwhile whenever sequential generation is cheaper
    than repeated random access.  Instances must not change after
    construction so that workers can share them freely.
    """

    kind: KeyspaceKind

    def cardinality(self) -> int:
        raise NotImplementedError

    def candidate(self, index: int) -> str:
        raise NotImplementedError

    def iter_range(self, start: int, stop: int):
        for i in range(start, stop):
            yield self.candidate(i)

    def __iter__(self):
        return self.iter_range(0, self.cardinality())

    def base_index(self, index: int) -> int:
        """Map a local index to the index in the unwindowed keyspace."""
        return index

    def window(self, start: int, stop: int = None) -> "Keyspace":
        return WindowedKeyspace(self, start, stop)

    def describe(self) -> str:
        return self.kind.value

    def _check_index(self, index: int) -> int:
        n = self.cardinality()
        if index < 0:
            index += n
        if not 0 <= index < n:
            raise IndexError(f"candidate index {index} out of range for {n} candidates")
        return index


class WindowedKeyspace(Keyspace):
    """A contiguous slice of another keyspace; reported indexes stay global."""

    def __init__(self, inner: Keyspace, start: int, stop: int = None):
        total = inner.cardinality()
        stop = total if stop is None else min(stop, total)
        if start < 0 or start > stop:
            raise KeyspaceError(f"bad window [{start}, {stop}) for {total} candidates")
        self.inner = inner
        self.kind = inner.kind
        self.start = start
        self.stop = stop

    def cardinality(self):
        return self.stop - self.start

    def candidate(self, index):
        return self.inner.candidate(self.start + self._check_index(index))

    def iter_range(self, start, stop):
        return self.inner.iter_range(self.start + start, self.start + stop)

    def base_index(self, index):
        return self.inner.base_index(self.start + index)

    def describe(self):
        return f"{self.inner.describe()}@{self.start}-{self.stop}"


class PrefixDigitSpace(Keyspace):
    """All ``length``-digit strings that extend one of ``prefixes``.

    Blocks follow the order of ``prefixes``; inside a block the suffix
    counts up numerically.
    """

    def __init__(self, prefixes, length: int, kind: KeyspaceKind):
        self.kind = kind
        self.length = length
        self.prefixes = tuple(prefixes)
        self._offsets = []
        total = 0
        for p in self.prefixes:
            self._offsets.append(total)
            total += 10 ** (length - len(p))
        self._total = total

    def cardinality(self):
        return self._total

    def candidate(self, index):
        index = self._check_index(index)
        block = bisect_right(self._offsets, index) - 1
        prefix = self.prefixes[block]
        width = self.length - len(prefix)
        suffix = index - self._offsets[block]
        return f"{prefix}{suffix:0{width}d}" if width else prefix

    def iter_range(self, start, stop):
        stop = min(stop, self._total)
        if start >= stop:
            return
        block = bisect_right(self._offsets, start) - 1
        while start < stop:
            prefix = self.prefixes[block]
            width = self.length - len(prefix)
            base = self._offsets[block]
            end = min(stop, base + 10 ** width)
            if width:
                for n in range(start - base, end - base):
                    yield f"{prefix}{n:0{width}d}"
            else:
                yield prefix
            start = end
            block += 1

    def index_of(self, candidate: str) -> int:
        for prefix, base in zip(self.prefixes, self._offsets):
            if len(candidate) == self.length and candidate.startswith(prefix) and candidate.isdigit():
                rest = candidate[len(prefix):]
                return base + (int(rest) if rest else 0)
        raise ValueError(f"{candidate!r} not in keyspace")


class ListKeyspace(Keyspace):
    def __init__(self, items, kind: KeyspaceKind):
        self.kind = kind
        self.items = tuple(items)

    def cardinality(self):
        return len(self.items)

    def candidate(self, index):
        return self.items[self._check_index(index)]

    def iter_range(self, start, stop):
        return islice(self.items, start, stop)


def split_ranges(total: int, parts: int):
    """Yield ``parts`` contiguous (start, stop) pairs covering [0, total)."""
    if parts < 1:
        raise ZeroPartsError("parts must be at least 1")
    size, extra = divmod(total, parts)
    start = 0
    for i in range(parts):
        stop = start + size + (1 if i < extra else 0)
        yield start, stop
        start = stop


def split(keyspace, parts: int):
    """Balanced partition of a keyspace (or a bare count) into index ranges.

    >>> split(10, 3)
    [(0, 4), (4, 7), (7, 10)]
    """
    total = keyspace if isinstance(keyspace, int) else keyspace.cardinality()
    return list(split_ranges(total, parts))
