import math
import string
from dataclasses import dataclass


class InvalidParams(ValueError):
    pass


# 10 + 26 + 26 + 18 = the 80-symbol pool for 8-character PSKs
POOL_DIGITS = 10
POOL_LOWER = 26
POOL_UPPER = 26
POOL_SYMBOLS = 18


@dataclass(frozen=True)
class EntropyParams:
    alpha: int  # symbols per position
    c: int  # passphrase length
    n: int = 0  # characters already known to the attacker

    def __post_init__(self):
        if self.alpha < 1:
            raise InvalidParams("alpha must be at least 1")
        if self.c < 1:
            raise InvalidParams("length must be at least 1")
        if not 0 <= self.n < self.c:
            raise InvalidParams("known characters must satisfy 0 <= n < c")


def entropy_bits(alpha, c=None, n=0) -> float:
    """Bits of entropy for ``c - n`` unknown positions over ``alpha`` symbols.

    Accepts an :class:`EntropyParams` or the three numbers directly.
    ``entropy_bits(10, 8)`` is the 8-digit PIN figure of about 26.58 bits.
    """
    params = alpha if isinstance(alpha, EntropyParams) else EntropyParams(alpha, c, n)
    return (params.c - params.n) * math.log2(params.alpha)


def keyspace_count(alpha: int, c: int) -> int:
    if alpha < 1 or c < 1:
        raise InvalidParams("alpha and length must be at least 1")
    return alpha ** c


def infer_alpha(passphrase: str) -> int:
    """Size of the character pool implied by the classes present."""
    alpha = 0
    if any(ch in string.digits for ch in passphrase):
        alpha += POOL_DIGITS
    if any(ch in string.ascii_lowercase for ch in passphrase):
        alpha += POOL_LOWER
    if any(ch in string.ascii_uppercase for ch in passphrase):
        alpha += POOL_UPPER
    if any(not ch.isascii() or not ch.isalnum() for ch in passphrase):
        alpha += POOL_SYMBOLS
    return alpha


def nric_entropy_bits(letter_pool: int = POOL_LOWER + POOL_UPPER) -> float:
    """One letter from ``letter_pool`` plus seven free digits.

    The default pool of 52 (either case) gives about 28.95 bits.
    """
    if letter_pool < 1:
        raise InvalidParams("letter pool must be at least 1")
    return math.log2(letter_pool) + entropy_bits(POOL_DIGITS, 7)
