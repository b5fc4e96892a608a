"""Arbitrary-precision modular arithmetic primitives.

Python ints are already arbitrary-precision, so ``Natural`` and
``SignedExponent`` are plain ``int`` aliases: a Natural is a value >= 0, a
SignedExponent may be negative (exponent differences such as e2 - 2*e1 are
usually negative before reduction).

All randomness flows through an explicitly passed ``random.Random``
instance.  ``seeded_rng(seed)`` gives a deterministic source for
reproducible runs; ``system_rng()`` gives an OS-entropy source
(``random.SystemRandom`` is a ``random.Random`` subclass, so one type
annotation covers both).
"""

from __future__ import annotations

import math
import random
from dataclasses import dataclass

import gmpy2

from .errors import NotInvertible, Unsatisfiable

Natural = int
SignedExponent = int

RandomSource = random.Random

MR_ROUNDS = 64  # Miller-Rabin error probability <= 4**-64 < 2**-80


def system_rng() -> RandomSource:
    """OS-entropy randomness source (not seedable)."""
    return random.SystemRandom()


def seeded_rng(seed: int) -> RandomSource:
    """Deterministic randomness source for reproducible key material."""
    return random.Random(seed)


@dataclass(frozen=True)
class SamplingRange:
    """Half-open integer range [lo, hi) used for all key-material draws."""

    lo: Natural
    hi: Natural

    def __post_init__(self):
        if self.lo < 0 or self.hi <= self.lo:
            raise ValueError(f"invalid sampling range [{self.lo}, {self.hi})")

    @property
    def width(self) -> Natural:
        return self.hi - self.lo


def mod_inv(a: Natural, m: Natural) -> Natural:
    """Return x with (a*x) % m == 1 and 0 < x < m.

    Raises NotInvertible when gcd(a, m) != 1; callers treat that as a
    degenerate sample and redraw.
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    try:
        return pow(a, -1, m)
    except ValueError:
        raise NotInvertible(f"{a} has no inverse mod {m}") from None


def pow_fp(base: Natural, e: SignedExponent, p: Natural) -> Natural:
    """base**e mod p for a prime p, allowing negative exponents.

    For base coprime to p the exponent is first reduced mod (p-1)
    (Fermat), which both resolves negative exponents and keeps huge
    exponent differences cheap.  A base divisible by p short-circuits:
    0, except that e == 0 gives 1.
    """
    if base % p == 0:
        if e == 0:
            return 1
        if e < 0:
            raise NotInvertible(f"0 has no inverse mod {p}")
        return 0
    e_red = e % (p - 1)
    return pow(base % p, e_red, p)


def is_probable_prime(n: Natural, rounds: int = MR_ROUNDS) -> bool:
    """Miller-Rabin probable-primality test (gmpy2-backed)."""
    if n < 2:
        return False
    return bool(gmpy2.is_prime(n, rounds))


# Product of odd primes below 1000; one gcd rejects ~85% of odd composites
# before a full primality test runs.
_SMALL_PRIME_PRODUCT = math.prod(n for n in range(3, 1000) if gmpy2.is_prime(n))


def gen_prime(bits: int, rng: RandomSource) -> Natural:
    """Random probable prime of exactly `bits` bits (top bit set).

    Candidates are drawn from `rng` (so the output is deterministic for a
    seeded source), pre-filtered by a small-prime gcd, then confirmed by
    Miller-Rabin with error probability <= 2**-80.
    """
    if bits < 8:
        raise ValueError("bits must be >= 8")
    while True:
        cand = rng.getrandbits(bits) | (1 << (bits - 1)) | 1
        if bits > 16 and math.gcd(cand, _SMALL_PRIME_PRODUCT) != 1:
            continue
        if is_probable_prime(cand):
            return cand


def sample_range(r: SamplingRange, rng: RandomSource) -> Natural:
    """Uniform draw from [r.lo, r.hi).

    random.Random.randrange is rejection-based (getrandbits plus retry),
    so the draw is bias-free even when the width is not a power of two.
    """
    return rng.randrange(r.lo, r.hi)


def sample_unit(p: Natural, r: SamplingRange, rng: RandomSource) -> Natural:
    """Uniform draw from [r.lo, r.hi) conditioned on being a unit mod p.

    Resamples until the draw is not divisible by p.  Only a singleton
    range consisting of one multiple of p can make that impossible; that
    case raises Unsatisfiable instead of looping forever.
    """
    if r.width == 1 and r.lo % p == 0:
        raise Unsatisfiable(f"every element of [{r.lo}, {r.hi}) divides by {p}")
    while True:
        s = sample_range(r, rng)
        if s % p != 0:
            return s
