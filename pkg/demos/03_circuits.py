"""Arithmetic circuits: the text format, both evaluators, capacity reports.

Run:  python demos/03_circuits.py
"""

from fragfhe import (
    capacity_check,
    decrypt,
    encrypt,
    eval_encrypted,
    eval_plain,
    keygen,
    parse_circuit,
    render_circuit,
    seeded_rng,
    setup,
)

rng = seeded_rng(99)
params = setup(16, "toy", rng, p=10007, q=10009)
sk, ek = keygen(params, rng)

# The circuit language is four statements: in / add / mul / cmul / out.
source = """
# polynomial 3*x^2 + x*y + 5
in x
in y
x2 = mul x x
threex2 = cmul 3 x2
xy = mul x y
in five          # constants can also enter as inputs
s1 = add threex2 xy
s2 = add s1 five
out s2
"""
circuit = parse_circuit(source)
print("parsed circuit:")
print(render_circuit(circuit))

# Evaluate in the clear and over ciphertexts; the two always agree.
values = {"x": 6, "y": 7, "five": 5}
plain = eval_plain(circuit, values, params.p)
cts = {name: encrypt(sk, params, v, rng) for name, v in values.items()}
encrypted = eval_encrypted(circuit, cts, ek)
print(f"plain evaluation:      {plain}")
print(f"encrypted evaluation:  {decrypt(sk, encrypted)} (depth {encrypted.depth_hint})")

# Capacity: interval bounds tell you whether the result can be read as
# an exact integer (true value below p) or only as a residue mod p.
report = capacity_check(circuit, input_bound=10, p=params.p)
print(f"\ncapacity with inputs in [0, 10]: bound={report.max_product_bound}, "
      f"mul_depth={report.mul_depth}, exact-integer safe: {report.bound_ok}")

report = capacity_check(circuit, input_bound=100, p=params.p)
print(f"capacity with inputs in [0, 100]: bound={report.max_product_bound}, "
      f"exact-integer safe: {report.bound_ok} (residues stay correct regardless)")
