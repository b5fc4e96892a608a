"""Empirical security experiments.

These are executable sanity checks of the distributional claims the
scheme's confidentiality rests on, plus demonstrations of its known
non-properties (CCA malleability) and tamper behavior (regulator
forgery).  A passing statistical test here is necessary but not
sufficient evidence for the underlying assumption: the harness validates
that the implementation produces the right distribution shapes at desk
scale, it does not establish cryptographic hardness.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass

from scipy.stats import chi2

from .errors import InsufficientSamples, MissingWitness, NotUnit
from .homomorphic import INTERPOSITION_RULES, h_add, h_mul
from .numeric import Natural, RandomSource, is_probable_prime
from .scheme import Ciphertext, EvaluationKey, Fragments, Params, SecretKey, decrypt, encrypt, fragment

# Verdict threshold: below this p-value a distribution is flagged as
# distinguishable from uniform (false-alarm rate 0.1% per run).
SIGNIFICANCE = 1e-3

MAX_EXHAUSTIVE_P = 1 << 16
MAX_BUCKETED_N = 1 << 20
MIN_SAMPLES_PER_BUCKET = 50


@dataclass(frozen=True)
class DistributionReport:
    test_name: str
    sample_count: int
    statistic: float
    degrees_of_freedom: int
    p_value: float

    @property
    def verdict(self) -> str:
        return "distinguishable" if self.p_value < SIGNIFICANCE else "consistent-with-uniform"

    def to_text(self) -> str:
        return (
            f"{self.test_name}: chi2={self.statistic:.2f} "
            f"(dof={self.degrees_of_freedom}, samples={self.sample_count}), "
            f"p-value={self.p_value:.4g} -> {self.verdict}"
        )

    def to_kv(self) -> str:
        return "\n".join(
            [
                f"{self.test_name}.samples={self.sample_count}",
                f"{self.test_name}.statistic={self.statistic!r}",
                f"{self.test_name}.dof={self.degrees_of_freedom}",
                f"{self.test_name}.p_value={self.p_value!r}",
                f"{self.test_name}.verdict={self.verdict}",
            ]
        )


@dataclass(frozen=True)
class ForgeryReport:
    trials: int
    successes: int
    strategy: str

    def __post_init__(self):
        if self.successes > self.trials:
            raise ValueError("successes cannot exceed trials")

    @property
    def rate(self) -> float:
        return self.successes / self.trials if self.trials else 0.0

    def to_text(self) -> str:
        return f"{self.strategy}: {self.successes}/{self.trials} trials succeeded"

    def to_kv(self, prefix: str) -> str:
        return "\n".join(
            [
                f"{prefix}.trials={self.trials}",
                f"{prefix}.successes={self.successes}",
                f"{prefix}.rate={self.rate!r}",
            ]
        )


@dataclass(frozen=True)
class FragmentSystemReport:
    """What a known-plaintext attacker can pin down about the fragments.

    Knowing each total m only constrains (m1, m2, m3) to sum to it; with
    L observed ciphertexts that is L equations over 2L free unknowns
    (m3 is eliminated), leaving p**L consistent assignments.  The report
    carries at least two explicit distinct ones as evidence.
    """

    ciphertext_count: int
    unknowns: int
    equations: int
    p: Natural
    assignments: tuple[tuple[Fragments, ...], ...]
    consistent: bool

    def to_text(self) -> str:
        return (
            f"fragment recovery from {self.ciphertext_count} known plaintexts: "
            f"{self.equations} equations in {self.unknowns} unknowns; "
            f"{len(self.assignments)} distinct consistent assignments exhibited "
            f"(solution space p^L = {self.p}^{self.ciphertext_count})"
        )

    def to_kv(self) -> str:
        return "\n".join(
            [
                f"kpa.ciphertexts={self.ciphertext_count}",
                f"kpa.unknowns={self.unknowns}",
                f"kpa.equations={self.equations}",
                f"kpa.assignments_exhibited={len(self.assignments)}",
                f"kpa.consistent={int(self.consistent)}",
            ]
        )


def masking_uniformity_exhaustive(p: Natural, k_i: Natural) -> DistributionReport:
    """Exhaustive check that u -> u * k_i is a bijection on Z_p^*.

    Multiplication by a fixed unit permutes Z_p^*, so the masked values
    hit every residue exactly once; the chi-square statistic against the
    flat distribution is identically zero.  Anything else is an
    implementation bug, not a statistical fluctuation.
    """
    if p > MAX_EXHAUSTIVE_P:
        raise ValueError(f"exhaustive enumeration capped at p <= {MAX_EXHAUSTIVE_P}")
    if not is_probable_prime(p):
        raise ValueError(f"{p} is not prime")
    if k_i % p == 0:
        raise NotUnit(f"k_i = {k_i} is 0 mod {p}")

    image = sorted(u * k_i % p for u in range(1, p))
    exact = image == list(range(1, p))
    return DistributionReport(
        test_name="masking_uniformity",
        sample_count=p - 1,
        statistic=0.0 if exact else float("inf"),
        degrees_of_freedom=p - 2,
        p_value=1.0 if exact else 0.0,
    )


def hidden_modulus_chisq(
    params: Params,
    samples: int,
    rng: RandomSource,
    buckets: int = 64,
    control_uniform: bool = False,
) -> DistributionReport:
    """Chi-square test of c = x + r*p (mod n) against uniform on Z_n.

    Draws x uniform from Z_p^* and r uniform from [r1, r2), buckets the
    results into equal-width bins and compares with the flat expectation.
    With ``control_uniform`` the samples are drawn uniformly from Z_n
    instead, as a null-hypothesis control.
    """
    if params.n > MAX_BUCKETED_N:
        raise ValueError(f"bucketed test needs toy parameters (n <= {MAX_BUCKETED_N})")
    if buckets < 64:
        raise ValueError("need at least 64 buckets for a meaningful comparison")
    if samples < MIN_SAMPLES_PER_BUCKET * buckets:
        raise InsufficientSamples(
            f"need >= {MIN_SAMPLES_PER_BUCKET * buckets} samples for {buckets} buckets"
        )

    p, n, r1, r2 = params.p, params.n, params.r1, params.r2
    counts = [0] * buckets
    if control_uniform:
        for _ in range(samples):
            counts[rng.randrange(n) * buckets // n] += 1
    else:
        for _ in range(samples):
            c = (rng.randrange(1, p) + rng.randrange(r1, r2) * p) % n
            counts[c * buckets // n] += 1

    # Bucket b covers [ceil(b*n/k), ceil((b+1)*n/k)); widths differ by at
    # most one residue, and the expectation accounts for that exactly.
    statistic = 0.0
    for b in range(buckets):
        width = -(-(b + 1) * n // buckets) - -(-b * n // buckets)
        expected = samples * width / n
        statistic += (counts[b] - expected) ** 2 / expected
    dof = buckets - 1
    return DistributionReport(
        test_name="hidden_modulus_uniformity" if not control_uniform else "uniform_control",
        sample_count=samples,
        statistic=statistic,
        degrees_of_freedom=dof,
        p_value=float(chi2.sf(statistic, dof)),
    )


def cca_malleability_demo(
    sk: SecretKey,
    params: Params,
    ek: EvaluationKey,
    m0: Natural,
    m1: Natural,
    rng: RandomSource,
    trials: int = 100,
) -> ForgeryReport:
    """Recover the challenge bit via one decryption query on a mauled ciphertext.

    The adversary adds a fresh encryption of zero to the challenge; the
    result is a different ciphertext of the same plaintext, which the
    decryption oracle happily opens.  Succeeds every time; homomorphic
    schemes are malleable by design and cannot be CCA-secure.
    """
    if m0 == m1:
        raise ValueError("challenge messages must differ")
    successes = 0
    for _ in range(trials):
        hidden = rng.randrange(2)
        challenge = encrypt(sk, params, m1 if hidden else m0, rng)
        mauled = h_add(challenge, encrypt(sk, params, 0, rng), ek.n)
        if mauled.c == challenge.c:
            # Fresh noise makes a collision essentially impossible; a hit
            # would mean the "different ciphertext" premise failed.
            continue
        recovered = decrypt(sk, mauled)
        guess = 1 if recovered == m1 else 0
        if guess == hidden:
            successes += 1
    return ForgeryReport(
        trials=trials,
        successes=successes,
        strategy="cca_malleability: decrypt(HAdd(challenge, Enc(0)))",
    )


def kpa_underdetermination(
    count: int, sk: SecretKey, params: Params, rng: RandomSource
) -> FragmentSystemReport:
    """Show the fragment system of known-plaintext pairs is underdetermined.

    Encrypts ``count`` known messages, then exhibits two distinct fragment
    assignments (the true one and an independent re-fragmentation) that
    both satisfy every observed total, witnessing a solution space of
    size p**count rather than a unique solution.
    """
    p = params.p
    messages = [rng.randrange(p) for _ in range(count)]
    cts = [encrypt(sk, params, m, rng, retain_witness=True) for m in messages]

    if count == 0:
        return FragmentSystemReport(
            ciphertext_count=0, unknowns=0, equations=0, p=p, assignments=(), consistent=True
        )

    true_assignment = tuple(Fragments(*ct.witness.fragments) for ct in cts)
    alt = []
    for m, true_frags in zip(messages, true_assignment):
        candidate = fragment(m, p, rng)
        while candidate == true_frags:
            candidate = fragment(m, p, rng)
        alt.append(candidate)
    assignments = (true_assignment, tuple(alt))

    consistent = all(
        sum(frags) % p == m
        for assignment in assignments
        for m, frags in zip(messages, assignment)
    )
    return FragmentSystemReport(
        ciphertext_count=count,
        unknowns=2 * count,
        equations=count,
        p=p,
        assignments=assignments,
        consistent=consistent,
    )


_D_INDEX_FOR_T = {rule.t_index: rule.d_index for rule in INTERPOSITION_RULES}


def dual_binding_forgery_trial(
    sk: SecretKey,
    params: Params,
    ek: EvaluationKey,
    trials: int,
    rng: RandomSource,
    tamper: bool = True,
) -> ForgeryReport:
    """Replace one regulator pair with random values and count lucky decryptions.

    Each trial swaps a randomly chosen (t_i, d_i) pair for fresh random
    values, multiplies two fresh encryptions and checks whether the
    product still decrypts correctly.  A forged pair corrupts one output
    position, so success degrades to the 1/p collision rate of hitting
    the right fragment by accident.  With ``tamper=False`` this doubles
    as the correctness control: every trial must succeed.
    """
    p, n = params.p, ek.n
    successes = 0
    for _ in range(trials):
        working_ek = ek
        if tamper:
            t_index = rng.randrange(1, 7)
            d_index = _D_INDEX_FOR_T[t_index]
            while True:
                t_star = rng.randrange(n)
                d_star = rng.randrange(p)
                if (t_star, d_star) != (ek.t[t_index - 1], ek.d[d_index - 1]):
                    break
            t_new = list(ek.t)
            d_new = list(ek.d)
            t_new[t_index - 1] = t_star
            d_new[d_index - 1] = d_star
            working_ek = dataclasses.replace(ek, t=tuple(t_new), d=tuple(d_new))

        m_a, m_b = rng.randrange(p), rng.randrange(p)
        product = h_mul(
            encrypt(sk, params, m_a, rng), encrypt(sk, params, m_b, rng), working_ek
        )
        if decrypt(sk, product) == m_a * m_b % p:
            successes += 1
    return ForgeryReport(
        trials=trials,
        successes=successes,
        strategy="dual_binding_forgery" if tamper else "dual_binding_control",
    )


def noise_vanishing_check(sk: SecretKey, ct: Ciphertext) -> bool:
    """Verify each component reduces mod p to its fragment times the position key.

    This is exactly the statement that the r*p masking terms contribute
    nothing mod p, at whatever homomorphic depth the ciphertext has
    reached.  Needs the plaintext trace retained by test-mode encryption.
    """
    if ct.witness is None:
        raise MissingWitness("ciphertext was not encrypted with retain_witness=True")
    w = ct.witness
    return all(
        (c_i - f_i * k_i) % sk.p == 0
        for c_i, f_i, k_i in zip(ct.c, w.fragments, sk.position_keys)
    )
