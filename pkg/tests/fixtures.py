"""Synthetic passphrase sets with a known label for each entry."""

import random

from wpaudit.classify import ClassLabel, ClassifyContext
from wpaudit.keyspace import checksum_letter, default_entries

WORDS = ["password", "sunshine", "dragon", "monkey", "iloveyou", "princess", "football", "shadow"]


def context():
    return ClassifyContext(dictionary_words=WORDS)


def make_one(label, rng):
    if label is ClassLabel.PHONE:
        return rng.choice("3689") + f"{rng.randrange(10 ** 7):07d}"
    if label is ClassLabel.DEFAULT:
        return rng.choice(default_entries())
    if label is ClassLabel.NRIC:
        p, d = rng.choice("STFG"), f"{rng.randrange(10 ** 7):07d}"
        return p + d + checksum_letter(p, d)
    if label is ClassLabel.DATE_OF_SIGNIFICANCE:
        return f"{rng.randint(1, 28):02d}{rng.randint(1, 12):02d}{rng.randint(1950, 2019)}"
    if label is ClassLabel.DICTIONARY:
        return rng.choice(WORDS) + str(rng.randrange(10, 10000))
    return "".join(rng.choice("abcdefhjkmnpqrtuvwxyz!#%") for _ in range(rng.randint(9, 14))) + "!"


def labelled_set(counts, seed=0):
    """counts: ClassLabel -> n.  Returns a shuffled list of (passphrase, label)."""
    rng = random.Random(seed)
    items = [(make_one(lbl, rng), lbl) for lbl, n in counts.items() for _ in range(n)]
    rng.shuffle(items)
    return items
