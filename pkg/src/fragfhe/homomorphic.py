"""Homomorphic addition and dual-regulator multiplication.

Addition is componentwise: positions, key exponents and coefficients are
untouched, so nothing needs regulating.

Multiplication is where the position machinery earns its keep.  The
product of two masked fragments m_i k_i * m_j' k_j carries the combined
exponent e_i + e_j and the combined coefficient a_i a_j, neither of which
matches any decryptable position.  Instead of inverting those factors
(which would expose the base secret k), each pairwise product is shifted
onto a fresh target position: an exponent regulator t rewrites the power
of k into the target's exponent, and the target's coefficient regulator d
normalizes the scalar.  Same-position pairs shift cyclically to the next
position; cross-position pairs land on the remaining third one:

    (1,1) -t1-> 2      (2,2) -t2-> 3      (3,3) -t3-> 1
    (1,2) -t4-> 3      (2,3) -t6-> 1      (1,3) -t5-> 2

Every output position therefore accumulates exactly three of the nine
fragment products, and the three position sums together restore m * m'.
Fragments are reshuffled forever but exponents never leave {e1, e2, e3},
so multiplicative depth is unlimited.
"""

from __future__ import annotations

from dataclasses import dataclass

from .errors import ModulusMismatch
from .numeric import Natural
from .scheme import Ciphertext, CiphertextWitness, EvaluationKey

POSITIONS = (1, 2, 3)


@dataclass(frozen=True)
class InterpositionRule:
    """Where the product of two source positions lands, and via which regulators."""

    source_pair: tuple[int, int]
    target: int
    t_index: int  # 1-based index into EvaluationKey.t
    d_index: int  # 1-based index into EvaluationKey.d


INTERPOSITION_RULES = (
    InterpositionRule((1, 1), target=2, t_index=1, d_index=2),
    InterpositionRule((2, 2), target=3, t_index=2, d_index=3),
    InterpositionRule((3, 3), target=1, t_index=3, d_index=1),
    InterpositionRule((1, 2), target=3, t_index=4, d_index=3),
    InterpositionRule((2, 3), target=1, t_index=6, d_index=1),
    InterpositionRule((1, 3), target=2, t_index=5, d_index=2),
)

_RULE_BY_PAIR = {rule.source_pair: rule for rule in INTERPOSITION_RULES}


def interposition_target(i: int, j: int) -> InterpositionRule:
    """Look up the rule for an (order-insensitive) pair of source positions."""
    if i not in POSITIONS or j not in POSITIONS:
        raise ValueError(f"positions must be in {POSITIONS}, got ({i}, {j})")
    return _RULE_BY_PAIR[(min(i, j), max(i, j))]


def _combined_witness_add(a: Ciphertext, b: Ciphertext) -> CiphertextWitness | None:
    wa, wb = a.witness, b.witness
    if wa is None or wb is None or wa.p != wb.p:
        return None
    fragments = tuple((x + y) % wa.p for x, y in zip(wa.fragments, wb.fragments))
    noises = None
    if wa.noises is not None and wb.noises is not None:
        noises = tuple(x + y for x, y in zip(wa.noises, wb.noises))
    return CiphertextWitness(p=wa.p, fragments=fragments, noises=noises)


def h_add(a: Ciphertext, b: Ciphertext, n: Natural) -> Ciphertext:
    """Componentwise sum mod n; decrypts to (m + m') mod p."""
    if a.n != n or b.n != n:
        raise ModulusMismatch(f"ciphertext moduli {a.n}, {b.n} != {n}")
    return Ciphertext(
        n=n,
        c=tuple((x + y) % n for x, y in zip(a.c, b.c)),
        depth_hint=max(a.depth_hint, b.depth_hint),
        witness=_combined_witness_add(a, b),
    )


def h_mul(a: Ciphertext, b: Ciphertext, ek: EvaluationKey) -> Ciphertext:
    """Regulated product; decrypts to (m * m') mod p.

    Per rule, the two cross products share one regulator, so they are
    summed before the multiply: t * (c_i c_j' + c_j c_i') is the same
    value mod n as applying t to each product separately.
    """
    n = ek.n
    if a.n != n or b.n != n:
        raise ModulusMismatch(f"ciphertext moduli {a.n}, {b.n} != {n}")

    acc = [0, 0, 0]  # one accumulator per target position
    for rule in INTERPOSITION_RULES:
        i, j = rule.source_pair[0] - 1, rule.source_pair[1] - 1
        if i == j:
            term = a.c[i] * b.c[i] % n
        else:
            term = (a.c[i] * b.c[j] + a.c[j] * b.c[i]) % n
        acc[rule.target - 1] = (acc[rule.target - 1] + term * ek.t[rule.t_index - 1]) % n
    c = tuple(acc[l] * ek.d[l] % n for l in range(3))

    witness = None
    wa, wb = a.witness, b.witness
    if wa is not None and wb is not None and wa.p == wb.p:
        # The fragment shares follow the same accumulation, minus the
        # regulators (which exist only to cancel key material).
        p = wa.p
        frag_acc = [0, 0, 0]
        for rule in INTERPOSITION_RULES:
            i, j = rule.source_pair[0] - 1, rule.source_pair[1] - 1
            if i == j:
                term = wa.fragments[i] * wb.fragments[i]
            else:
                term = wa.fragments[i] * wb.fragments[j] + wa.fragments[j] * wb.fragments[i]
            frag_acc[rule.target - 1] = (frag_acc[rule.target - 1] + term) % p
        witness = CiphertextWitness(p=p, fragments=tuple(frag_acc), noises=None)

    return Ciphertext(
        n=n,
        c=c,
        depth_hint=a.depth_hint + b.depth_hint + 1,
        witness=witness,
    )


def h_mul_plain(a: Ciphertext, scalar: Natural, n: Natural) -> Ciphertext:
    """Scale by a public scalar; decrypts to (m * scalar) mod p.

    Componentwise scaling preserves every position's key factor, so no
    regulators are involved and the multiplication depth does not grow.
    """
    if a.n != n:
        raise ModulusMismatch(f"ciphertext modulus {a.n} != {n}")
    witness = None
    if a.witness is not None:
        w = a.witness
        witness = CiphertextWitness(
            p=w.p,
            fragments=tuple(f * scalar % w.p for f in w.fragments),
            noises=None if w.noises is None else tuple(r * scalar for r in w.noises),
        )
    return Ciphertext(
        n=n,
        c=tuple(c_i * scalar % n for c_i in a.c),
        depth_hint=a.depth_hint,
        witness=witness,
    )
