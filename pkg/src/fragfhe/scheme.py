"""Key generation, fragmentation, encryption and decryption.

The scheme is symmetric.  A plaintext m in Z_p is split into three
fragments with m1 + m2 + m3 = m (mod p), and each fragment is masked by
its own position key k_i = a_i * k^(e_i) (mod p), embedded in Z_n
(n = p*q, with q and hence p hidden from anyone holding only ciphertexts)
under an additive noise multiple of p:

    c_i = m_i * k_i + r_i * p  (mod n)

The noise term vanishes on reduction mod p, so decryption is exact at any
homomorphic depth.  Homomorphic multiplication additionally needs public
regulators (t1..t6, d1..d3) produced here alongside the position keys; see
``fragfhe.homomorphic`` for how they are consumed.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import NamedTuple

from .errors import InvalidProfile, MessageOutOfRange
from .numeric import (
    Natural,
    RandomSource,
    SamplingRange,
    gen_prime,
    is_probable_prime,
    mod_inv,
    pow_fp,
    sample_range,
    sample_unit,
    system_rng,
)

# Modulus size giving the classical security level of lambda bits under
# factoring-hardness sizing.
PRODUCTION_MODULUS_BITS = {80: 1024, 128: 3072}


@dataclass(frozen=True)
class Params:
    """Public system parameters.

    ``r1``/``r2`` bound every random draw made by keygen and encrypt; the
    gap r2 - r1 must be at least 2**lam at production strength so that
    noise and fragment masks have enough entropy.
    """

    lam: int
    p: Natural
    q: Natural
    n: Natural
    r1: Natural
    r2: Natural
    toy: bool = False

    @property
    def delta(self) -> Natural:
        return self.r2 - self.r1

    @property
    def sampling_range(self) -> SamplingRange:
        return SamplingRange(self.r1, self.r2)


class Fragments(NamedTuple):
    """Additive shares of a plaintext: m1 + m2 + m3 = m (mod p)."""

    m1: Natural
    m2: Natural
    m3: Natural


@dataclass(frozen=True)
class KeyWitness:
    """Generation scalars retained for test oracles and analysis runs.

    A deployment would discard these after keygen; they reconstruct every
    key component, so they are as sensitive as the secret key itself.
    """

    k: Natural
    e: tuple[Natural, Natural, Natural]
    a: tuple[Natural, Natural, Natural]
    b: tuple[Natural, Natural, Natural, Natural, Natural, Natural]


@dataclass(frozen=True)
class SecretKey:
    p: Natural
    position_keys: tuple[Natural, Natural, Natural]
    inv_mod_p: tuple[Natural, Natural, Natural]
    witness: KeyWitness | None = None


@dataclass(frozen=True)
class EvaluationKey:
    """Public material consumed by homomorphic multiplication."""

    n: Natural
    t: tuple[Natural, Natural, Natural, Natural, Natural, Natural]
    d: tuple[Natural, Natural, Natural]


@dataclass(frozen=True)
class CiphertextWitness:
    """Test-mode plaintext trace attached to a ciphertext.

    ``fragments`` are the per-position plaintext shares (mod p) and
    ``noises`` the masking multipliers of fresh encryptions; homomorphic
    operations propagate fragments but drop noises once they stop being a
    simple sum.  Witnesses are never serialized.
    """

    p: Natural
    fragments: tuple[Natural, Natural, Natural]
    noises: tuple[Natural, Natural, Natural] | None = None


@dataclass(frozen=True)
class Ciphertext:
    n: Natural
    c: tuple[Natural, Natural, Natural]
    depth_hint: int = 0
    witness: CiphertextWitness | None = None


def setup(
    lam: int,
    profile: str = "production",
    rng: RandomSource | None = None,
    *,
    p: Natural | None = None,
    q: Natural | None = None,
    r1: Natural | None = None,
    r2: Natural | None = None,
) -> Params:
    """Build system parameters.

    production: p and q are generated so that n = p*q has exactly the
    modulus size registered for `lam`, and the sampling bounds are pinned
    to [2**lam, 2**(lam+1)) so the range width equals 2**lam.

    toy: caller supplies small primes (and optionally bounds); size checks
    are skipped and the result is flagged ``toy=True``.  Toy parameters
    carry no security whatsoever.
    """
    if profile == "production":
        if lam not in PRODUCTION_MODULUS_BITS:
            raise InvalidProfile(
                f"unsupported production security level {lam}; "
                f"choose one of {sorted(PRODUCTION_MODULUS_BITS)}"
            )
        if p is not None or q is not None:
            raise InvalidProfile("production primes are generated, not supplied")
        rng = rng or system_rng()
        n_bits = PRODUCTION_MODULUS_BITS[lam]
        half = n_bits // 2
        prime_p = gen_prime(half, rng)
        while True:
            prime_q = gen_prime(half, rng)
            if prime_q != prime_p and (prime_p * prime_q).bit_length() == n_bits:
                break
        return Params(
            lam=lam,
            p=prime_p,
            q=prime_q,
            n=prime_p * prime_q,
            r1=1 << lam,
            r2=1 << (lam + 1),
            toy=False,
        )

    if profile == "toy":
        if lam < 8:
            raise InvalidProfile("toy security level must be >= 8")
        if p is None or q is None:
            raise InvalidProfile("toy profile requires explicit primes p and q")
        if p == q:
            raise InvalidProfile("p and q must be distinct")
        for prime in (p, q):
            if not is_probable_prime(prime):
                raise InvalidProfile(f"{prime} is not prime")
        lo = r1 if r1 is not None else 1 << lam
        hi = r2 if r2 is not None else 1 << (lam + 1)
        if lo >= hi:
            raise InvalidProfile(f"invalid sampling bounds [{lo}, {hi})")
        return Params(lam=lam, p=p, q=q, n=p * q, r1=lo, r2=hi, toy=True)

    raise InvalidProfile(f"unknown profile {profile!r}")


def keygen(params: Params, rng: RandomSource) -> tuple[SecretKey, EvaluationKey]:
    """Generate the secret position keys and the public regulators.

    Draw order is fixed (a1..a3, b1..b3, then k, e1..e3, then one noise
    per position key, then one per regulator) so that seeded runs are
    reproducible.  Scalars that must be invertible mod p are drawn with
    resampling; exponents and noise need no such constraint.
    """
    p, n = params.p, params.n
    rng_range = params.sampling_range

    a = tuple(sample_unit(p, rng_range, rng) for _ in range(3))
    b123 = tuple(sample_unit(p, rng_range, rng) for _ in range(3))
    # Derived cross-position scalars; units mod p since all factors are.
    b4 = a[1] * b123[1] * mod_inv(a[0], p) % p
    b5 = a[0] * b123[0] * mod_inv(a[2], p) % p
    b6 = a[2] * b123[2] * mod_inv(a[1], p) % p
    b = (*b123, b4, b5, b6)

    k = sample_unit(p, rng_range, rng)
    e = tuple(sample_range(rng_range, rng) for _ in range(3))

    position_keys = []
    for i in range(3):
        noise = sample_range(rng_range, rng)
        position_keys.append(((a[i] * pow_fp(k, e[i], p) % p) + noise * p) % n)

    # Exponent regulators: the power of k that rewrites a fragment-product
    # exponent into the target position's exponent.  Inner value reduced
    # mod p before the noise embedding, exactly like the position keys.
    t_exponents = (
        e[1] - 2 * e[0],
        e[2] - 2 * e[1],
        e[0] - 2 * e[2],
        e[2] - e[0] - e[1],
        e[1] - e[0] - e[2],
        e[0] - e[1] - e[2],
    )
    t = []
    for j in range(6):
        noise = sample_range(rng_range, rng)
        t.append(((b[j] * pow_fp(k, t_exponents[j], p) % p) + noise * p) % n)

    # Coefficient regulators: rescale each accumulated product back to the
    # target position's own coefficient.
    d = (
        a[0] * mod_inv(a[2] * a[2] * b123[2] % p, p) % p,
        a[1] * mod_inv(a[0] * a[0] * b123[0] % p, p) % p,
        a[2] * mod_inv(a[1] * a[1] * b123[1] % p, p) % p,
    )

    inv_mod_p = tuple(mod_inv(ki % p, p) for ki in position_keys)

    sk = SecretKey(
        p=p,
        position_keys=tuple(position_keys),
        inv_mod_p=inv_mod_p,
        witness=KeyWitness(k=k, e=e, a=a, b=b),
    )
    ek = EvaluationKey(n=n, t=tuple(t), d=d)
    return sk, ek


def fragment(m: Natural, p: Natural, rng: RandomSource) -> Fragments:
    """Split m into three shares summing to m mod p.

    m1 and m2 are uniform over Z_p^*; m3 absorbs the remainder.  The
    split is fresh randomness on every call, which is what makes
    encryption probabilistic.
    """
    if not 0 <= m < p:
        raise MessageOutOfRange(f"message {m} not in [0, {p})")
    unit_range = SamplingRange(1, p)
    m1 = sample_range(unit_range, rng)
    m2 = sample_range(unit_range, rng)
    return Fragments(m1, m2, (m - m1 - m2) % p)


def fragment_wide(m: Natural, params: Params, rng: RandomSource) -> Fragments:
    """Compatibility splitter: shares drawn from [r1, r2), folded mod n.

    Decrypts identically to ``fragment`` because p divides n, but the
    shares are not confined to Z_p.  Kept for interoperability with the
    wide encoding; ``fragment`` is the default.
    """
    if not 0 <= m < params.p:
        raise MessageOutOfRange(f"message {m} not in [0, {params.p})")
    m1 = sample_range(params.sampling_range, rng)
    m2 = sample_range(params.sampling_range, rng)
    return Fragments(m1, m2, (m - m1 - m2) % params.n)


def encrypt(
    sk: SecretKey,
    params: Params,
    m: Natural,
    rng: RandomSource,
    *,
    retain_witness: bool = False,
    wide_fragments: bool = False,
) -> Ciphertext:
    """Encrypt m < p into a ciphertext triple.

    Per position: c_i = m_i * k_i + r_i * p (mod n) with fresh noise
    r_i from [r1, r2).  Draw order is the two fragment shares first, then
    one noise value per position.
    """
    if not 0 <= m < params.p:
        raise MessageOutOfRange(f"message {m} not in [0, {params.p})")
    if wide_fragments:
        frags = fragment_wide(m, params, rng)
    else:
        frags = fragment(m, params.p, rng)

    noises = []
    c = []
    for i in range(3):
        r_i = sample_range(params.sampling_range, rng)
        noises.append(r_i)
        c.append((frags[i] * sk.position_keys[i] + r_i * params.p) % params.n)

    witness = None
    if retain_witness:
        witness = CiphertextWitness(
            p=params.p,
            fragments=tuple(f % params.p for f in frags),
            noises=tuple(noises),
        )
    return Ciphertext(n=params.n, c=tuple(c), depth_hint=0, witness=witness)


def decrypt(sk: SecretKey, ct: Ciphertext) -> Natural:
    """Recover the plaintext: sum of c_i * (k_i mod p)^-1 over the positions.

    Total on any input; a ciphertext produced under a different key simply
    decrypts to an unrelated residue.
    """
    return sum(c_i * inv for c_i, inv in zip(ct.c, sk.inv_mod_p)) % sk.p


def decrypt_fragments(sk: SecretKey, ct: Ciphertext) -> Fragments:
    """Per-position plaintext shares, without the final summation."""
    return Fragments(*((c_i % sk.p) * inv % sk.p for c_i, inv in zip(ct.c, sk.inv_mod_p)))
