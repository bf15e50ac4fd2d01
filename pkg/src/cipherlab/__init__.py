"""
CipherLab - Stream-Cipher Laboratory

Keystream generators (LFSR, Geffe, RC4), stream and classical ciphers,
a natural-language obfuscation layer, the cryptanalytic attacks that
target them, and a channel simulator that measures how much the
language layer actually degrades frequency-based attacks.
"""

__version__ = "1.0.0"
