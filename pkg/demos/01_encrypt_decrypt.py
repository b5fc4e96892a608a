"""A first walk through the scheme: parameters, keys, fragments, roundtrip.

Run:  python demos/01_encrypt_decrypt.py
"""

from fragfhe import (
    decrypt,
    decrypt_fragments,
    encrypt,
    keygen,
    seeded_rng,
    setup,
)

# A deterministic randomness source so the walkthrough prints the same
# numbers every run.  Use system_rng() for real key material.
rng = seeded_rng(2024)

# Toy parameters: tiny primes, no security, instant math.  The production
# profile (setup(128, "production", rng)) generates a 3072-bit modulus.
params = setup(16, "toy", rng, p=10007, q=10009)
print(f"p = {params.p}, q = {params.q}, n = p*q = {params.n}")
print(f"noise/scalar sampling range: [{params.r1}, {params.r2})")

# Keygen produces three secret position keys k_i = a_i * k^(e_i) mod p
# (noise-embedded in Z_n) plus the public regulators used only by
# homomorphic multiplication.
sk, ek = keygen(params, rng)
print(f"\nposition keys (secret): {sk.position_keys}")
print(f"exponent regulators t1..t6 (public): {ek.t}")
print(f"coefficient regulators d1..d3 (public): {ek.d}")

# Encryption fragments the message: m1 + m2 + m3 = m (mod p), then masks
# each fragment with its position key and a fresh multiple of p.
m = 4242
ct = encrypt(sk, params, m, rng, retain_witness=True)
print(f"\nencrypting m = {m}")
print(f"fragments: {ct.witness.fragments} (sum mod p = {sum(ct.witness.fragments) % params.p})")
print(f"ciphertext: {ct.c}")

# Decryption strips the masks per position and sums the fragments.
print(f"per-position decryption: {tuple(decrypt_fragments(sk, ct))}")
print(f"decrypt(ct) = {decrypt(sk, ct)}")
assert decrypt(sk, ct) == m

# Encryption is probabilistic: the same message encrypts differently
# every time because the fragmentation itself is random.
ct2 = encrypt(sk, params, m, rng)
print(f"\nsecond encryption of {m}: {ct2.c}")
print(f"ciphertexts equal? {ct.c == ct2.c}   decryptions equal? "
      f"{decrypt(sk, ct) == decrypt(sk, ct2)}")
