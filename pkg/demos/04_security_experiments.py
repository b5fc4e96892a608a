"""The empirical security harness, narrated.

Each experiment is an executable counterpart of a security property:
distribution sanity checks for the two masking mechanisms, the generic
CCA malleability attack, the underdetermination of fragment recovery,
and regulator-forgery trials.  Statistical passes are necessary, not
sufficient: they check the implementation's distribution shapes, they do
not prove hardness.

Run:  python demos/04_security_experiments.py
"""

from fragfhe import (
    cca_malleability_demo,
    dual_binding_forgery_trial,
    encrypt,
    h_add,
    h_mul,
    hidden_modulus_chisq,
    keygen,
    kpa_underdetermination,
    masking_uniformity_exhaustive,
    noise_vanishing_check,
    seeded_rng,
    setup,
)

rng = seeded_rng(31337)
params = setup(16, "toy", rng, p=10007, q=10009)
sk, ek = keygen(params, rng)

# 1. Fragment masking: multiplying Z_p^* by a fixed secret unit is a
#    bijection, so masked fragments are exactly uniform.  Exhaustive, not
#    sampled: the statistic must be identically zero.
report = masking_uniformity_exhaustive(params.p, sk.position_keys[0] % params.p)
print(report.to_text())

# 2. Noise embedding: x + r*p mod n should look uniform on Z_n to anyone
#    who cannot factor n.  Checked by chi-square at a bucketable size.
small = setup(16, "toy", rng, p=251, q=241)
print(hidden_modulus_chisq(small, 200_000, rng).to_text())

#    ... and a broken sampler must be caught: with a constant r the
#    support collapses to p-1 values and the test flags it.
degenerate = setup(16, "toy", rng, p=251, q=241, r1=1 << 16, r2=(1 << 16) + 1)
print(hidden_modulus_chisq(degenerate, 200_000, rng).to_text())

# 3. CCA insecurity, demonstrated rather than claimed: add Enc(0) to the
#    challenge, hand the (different) ciphertext to the decryption oracle,
#    read the plaintext.  Works every single time.
print(cca_malleability_demo(sk, params, ek, 3, 7, rng).to_text())

# 4. Known-plaintext attack on fragments: each observed total constrains
#    three shares by one equation, so the attacker's system stays
#    underdetermined no matter how many pairs they collect.
print(kpa_underdetermination(5, sk, params, rng).to_text())

# 5. Dual binding: replace one (t, d) regulator pair with random values
#    and the product ciphertext decrypts correctly only by a 1/p fluke.
print(dual_binding_forgery_trial(sk, params, ek, 5000, rng).to_text())
print(dual_binding_forgery_trial(sk, params, ek, 200, rng, tamper=False).to_text())

# 6. No noise accumulation: after a pile of mixed operations, every
#    component still reduces mod p to fragment * position key.
ct = encrypt(sk, params, 5, rng, retain_witness=True)
for _ in range(25):
    other = encrypt(sk, params, rng.randrange(params.p), rng, retain_witness=True)
    ct = h_add(ct, other, params.n) if rng.randrange(2) else h_mul(ct, other, ek)
print(f"noise vanishing after 25 mixed ops: {noise_vanishing_check(sk, ct)}")
