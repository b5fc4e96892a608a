"""fragfhe: symmetric FHE via plaintext fragmentation and position shifting.

A plaintext in Z_p is split into three additive fragments, each masked by
a secret position key inside Z_n (n = p*q with p hidden by additive noise
multiples of p).  Addition is componentwise; multiplication shifts every
pairwise fragment product onto a fresh position through public exponent
and coefficient regulators, so key exponents never accumulate and there
is no noise budget: depth is limited only by the integer product of the
plaintexts staying below p.

Quick start::

    from fragfhe import setup, keygen, encrypt, decrypt, h_add, h_mul, seeded_rng

    rng = seeded_rng(1)
    params = setup(16, "toy", rng, p=10007, q=10009)
    sk, ek = keygen(params, rng)
    ct = h_mul(encrypt(sk, params, 6, rng), encrypt(sk, params, 7, rng), ek)
    assert decrypt(sk, ct) == 42
"""

from .analysis import (
    DistributionReport,
    ForgeryReport,
    FragmentSystemReport,
    cca_malleability_demo,
    dual_binding_forgery_trial,
    hidden_modulus_chisq,
    kpa_underdetermination,
    masking_uniformity_exhaustive,
    noise_vanishing_check,
)
from .bench import BenchRow, bench_run
from .circuit import (
    CapacityReport,
    Circuit,
    Gate,
    capacity_check,
    eval_encrypted,
    eval_plain,
    parse_circuit,
    render_circuit,
)
from .errors import (
    ArityMismatch,
    FileFormatError,
    FragFheError,
    InsufficientSamples,
    InvalidProfile,
    MessageOutOfRange,
    MissingWitness,
    ModulusMismatch,
    NotInvertible,
    NotUnit,
    ParseError,
    Unsatisfiable,
    ValidationError,
)
from .homomorphic import (
    INTERPOSITION_RULES,
    InterpositionRule,
    h_add,
    h_mul,
    h_mul_plain,
    interposition_target,
)
from .numeric import (
    RandomSource,
    SamplingRange,
    gen_prime,
    is_probable_prime,
    mod_inv,
    pow_fp,
    sample_range,
    sample_unit,
    seeded_rng,
    system_rng,
)
from .scheme import (
    Ciphertext,
    CiphertextWitness,
    EvaluationKey,
    Fragments,
    KeyWitness,
    Params,
    SecretKey,
    decrypt,
    decrypt_fragments,
    encrypt,
    fragment,
    fragment_wide,
    keygen,
    setup,
)
from .serialization import (
    ciphertext_from_bytes,
    ciphertext_to_bytes,
    eval_key_from_bytes,
    eval_key_to_bytes,
    load_key_bytes,
    params_from_bytes,
    params_to_bytes,
    secret_key_from_bytes,
    secret_key_to_bytes,
)

__version__ = "0.1.0"
