"""Seeded deterministic random source shared by the dealers.

``random.Random`` would do for reproducibility, but a Mersenne Twister state
is recoverable from its output, which is a poor fit for a dealer picking
secret primes. ``HashDRBG`` keeps the familiar ``random.Random`` API
(``randrange``, ``randbelow`` via ``randrange``, ``choice`` ...) on top of
SHA-256 in counter mode.
"""

import hashlib
import random

__all__ = ["HashDRBG", "seed_bytes", "seed_fingerprint"]


def seed_bytes(seed):
    """Normalise a seed given as bytes, str or int to bytes."""
    if isinstance(seed, (bytes, bytearray)):
        return bytes(seed)
    if isinstance(seed, str):
        return seed.encode("utf-8")
    if isinstance(seed, int):
        if seed < 0:
            raise ValueError("integer seed must be non-negative")
        return seed.to_bytes(max(1, (seed.bit_length() + 7) // 8), "big")
    raise TypeError(f"unsupported seed type {type(seed).__name__}")


def seed_fingerprint(seed) -> str:
    """Short public digest of a seed, safe to store in metadata."""
    return hashlib.sha256(b"gsss-fingerprint" + seed_bytes(seed)).hexdigest()[:16]


class HashDRBG(random.Random):
    """SHA-256 counter-mode generator with the ``random.Random`` interface."""

    def __init__(self, seed=b"", domain: bytes = b""):
        self._domain = domain
        super().__init__(seed)

    def seed(self, a=b"", version=2):
        self._key = hashlib.sha256(b"gsss-drbg" + self._domain + b"\x00" + seed_bytes(a)).digest()
        self._counter = 0
        self._buffer = b""

    def _take(self, n: int) -> bytes:
        while len(self._buffer) < n:
            block = hashlib.sha256(self._key + self._counter.to_bytes(8, "big")).digest()
            self._counter += 1
            self._buffer += block
        out, self._buffer = self._buffer[:n], self._buffer[n:]
        return out

    def getrandbits(self, k: int) -> int:
        if k < 0:
            raise ValueError("number of bits must be non-negative")
        if k == 0:
            return 0
        nbytes = (k + 7) // 8
        return int.from_bytes(self._take(nbytes), "big") >> (nbytes * 8 - k)

    def random(self) -> float:
        return self.getrandbits(53) * (2.0 ** -53)

    def randbytes(self, n: int) -> bytes:
        return self._take(n)

    def getstate(self):
        return (self._domain, self._key, self._counter, self._buffer)

    def setstate(self, state):
        self._domain, self._key, self._counter, self._buffer = state
