"""WPA2-PSK passphrase audit toolkit.

PMKID computation and cracking over structured keyspaces, passphrase
strength scoring, and classification of recovered passphrases.
"""

__version__ = "0.1.0"
