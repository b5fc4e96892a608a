"""Computing on ciphertexts: addition, multiplication, deep chains.

Run:  python demos/02_homomorphic_computing.py
"""

from fragfhe import (
    decrypt,
    encrypt,
    h_add,
    h_mul,
    h_mul_plain,
    interposition_target,
    keygen,
    seeded_rng,
    setup,
)

rng = seeded_rng(7)
params = setup(16, "toy", rng, p=10007, q=10009)
sk, ek = keygen(params, rng)

enc = lambda m: encrypt(sk, params, m, rng)

# Addition is componentwise: nothing moves between positions.
a, b = enc(1200), enc(34)
print(f"1200 + 34   -> {decrypt(sk, h_add(a, b, params.n))}")

# Multiplication routes every pairwise fragment product to a new
# position.  The rule table is public and fixed:
for i, j in ((1, 1), (2, 2), (3, 3), (1, 2), (2, 3), (1, 3)):
    rule = interposition_target(i, j)
    print(f"  P{i} x P{j} -> P{rule.target}  (t{rule.t_index}, d{rule.d_index})")

print(f"56 * 78     -> {decrypt(sk, h_mul(enc(56), enc(78), ek))}  "
      f"(mod {params.p}; 56*78 = {56 * 78 % params.p} mod p)")

# Scalar multiplication needs no regulators at all.
print(f"777 * 9     -> {decrypt(sk, h_mul_plain(enc(777), 9, params.n))}")

# There is no noise budget.  Chain multiplications as deep as you like;
# the only constraint is whether you want to read the result as an
# integer (then the true product must stay below p) or as a residue.
acc = enc(1)
for _ in range(100):
    acc = h_mul(acc, enc(1), ek)
print(f"\n1^100 after a 100-deep multiplication chain -> {decrypt(sk, acc)} "
      f"(depth_hint = {acc.depth_hint})")

# 2^13 = 8192 < p, so the result reads as an exact integer.
acc = enc(1)
for _ in range(13):
    acc = h_mul(acc, enc(2), ek)
print(f"2^13 homomorphically -> {decrypt(sk, acc)}")

# One step further and the integer wraps: the residue is still exactly
# 2^14 mod p, which is the documented capacity behavior.
acc = h_mul(acc, enc(2), ek)
print(f"2^14 homomorphically -> {decrypt(sk, acc)} (= 2^14 mod {params.p}; "
      f"true integer 16384 exceeded p)")

# Mixed expression: (x + y) * z - computed without ever seeing x, y, z.
x, y, z = 11, 22, 33
result = decrypt(sk, h_mul(h_add(enc(x), enc(y), params.n), enc(z), ek))
print(f"\n(11 + 22) * 33 -> {result} (expected {(x + y) * z})")
