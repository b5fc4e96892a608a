"""Command-line interface.

Subcommands: keygen, encrypt, decrypt, add, mul, eval, bench, analyze.
Results go to stdout, diagnostics to stderr.  Exit codes: 0 success,
1 usage error, 2 file-format error, 3 parameter validation error.
Passing ``--seed`` makes a run fully deterministic, byte for byte.
"""

from __future__ import annotations

import argparse
import sys
from pathlib import Path

from . import analysis
from .bench import bench_run, format_table, to_kv
from .circuit import eval_encrypted, parse_circuit
from .errors import (
    ArityMismatch,
    FileFormatError,
    FragFheError,
    InvalidProfile,
    MessageOutOfRange,
    ModulusMismatch,
    ParseError,
)
from .homomorphic import h_add, h_mul
from .numeric import RandomSource, seeded_rng, system_rng
from .scheme import decrypt, encrypt, keygen, setup
from .serialization import (
    ciphertext_from_bytes,
    ciphertext_to_bytes,
    eval_key_from_bytes,
    eval_key_to_bytes,
    params_from_bytes,
    params_to_bytes,
    secret_key_from_bytes,
    secret_key_to_bytes,
    write_private,
)

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_FILE_FORMAT = 2
EXIT_PARAMETER = 3

DEFAULT_TOY_LAMBDA = 16
DEFAULT_ANALYZE_P = 10007
DEFAULT_ANALYZE_Q = 10009
# Small enough for the bucketed hidden-modulus test (needs n <= 2^20).
BUCKET_TOY_P = 251
BUCKET_TOY_Q = 241


class UsageError(FragFheError):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise UsageError(message)


def _rng_from(args) -> RandomSource:
    return seeded_rng(args.seed) if args.seed is not None else system_rng()


def _add_profile_flags(sub):
    sub.add_argument("--profile", choices=("production", "toy"), default="production")
    sub.add_argument("--lambda", dest="lam", type=int, default=None)
    sub.add_argument("--toy-p", type=int, default=None)
    sub.add_argument("--toy-q", type=int, default=None)
    sub.add_argument("--r1", type=int, default=None)
    sub.add_argument("--r2", type=int, default=None)


def _setup_from_args(args, rng):
    lam = args.lam
    if lam is None:
        lam = 128 if args.profile == "production" else DEFAULT_TOY_LAMBDA
    if args.profile == "toy" and (args.toy_p is None or args.toy_q is None):
        raise UsageError("toy profile requires --toy-p and --toy-q")
    return setup(
        lam,
        args.profile,
        rng,
        p=args.toy_p,
        q=args.toy_q,
        r1=args.r1,
        r2=args.r2,
    )


def _read_message(args) -> int:
    raw = args.message if args.message is not None else sys.stdin.read()
    raw = raw.strip()
    if not raw or not raw.isdigit():
        raise UsageError(f"message must be a decimal natural, got {raw!r}")
    return int(raw)


def _write_result(data: bytes, out: str | None) -> None:
    if out is None:
        sys.stdout.write(data.decode("ascii"))
    else:
        Path(out).write_bytes(data)


def _load_ct(path: str):
    return ciphertext_from_bytes(Path(path).read_bytes())


def build_parser() -> _Parser:
    parser = _Parser(prog="fragfhe", description=__doc__)
    subs = parser.add_subparsers(dest="command", required=True)

    kg = subs.add_parser("keygen", help="generate params, secret key, evaluation key")
    _add_profile_flags(kg)
    kg.add_argument("--seed", type=int, default=None)
    kg.add_argument("--sk", default="sk.key", help="secret key output path")
    kg.add_argument("--ek", default="ek.key", help="evaluation key output path")
    kg.add_argument("--params", default="params.key", help="params output path")
    kg.add_argument(
        "--store-witnesses",
        action="store_true",
        help="retain generation scalars in the secret key file (toy default)",
    )

    enc = subs.add_parser("encrypt", help="encrypt a decimal message")
    enc.add_argument("message", nargs="?", default=None, help="decimal; stdin if omitted")
    enc.add_argument("--sk", required=True)
    enc.add_argument("--params", required=True)
    enc.add_argument("--seed", type=int, default=None)
    enc.add_argument("--out", default=None, help="ciphertext path (stdout if omitted)")
    enc.add_argument("--wide-fragments", action="store_true")

    dec = subs.add_parser("decrypt", help="decrypt a ciphertext file")
    dec.add_argument("ciphertext", nargs="?", default=None, help="path; stdin if omitted")
    dec.add_argument("--sk", required=True)

    add = subs.add_parser("add", help="homomorphic addition of two ciphertext files")
    add.add_argument("ct_a")
    add.add_argument("ct_b")
    add.add_argument("--out", default=None)

    mul = subs.add_parser("mul", help="homomorphic multiplication of two ciphertext files")
    mul.add_argument("ct_a")
    mul.add_argument("ct_b")
    mul.add_argument("--ek", required=True)
    mul.add_argument("--out", default=None)

    ev = subs.add_parser("eval", help="evaluate a circuit file over named ciphertexts")
    ev.add_argument("circuit")
    ev.add_argument("--ek", required=True)
    ev.add_argument(
        "--in",
        dest="inputs",
        action="append",
        default=[],
        metavar="NAME=FILE",
        help="bind a circuit input to a ciphertext file (repeatable)",
    )
    ev.add_argument("--out", default=None)

    bench = subs.add_parser("bench", help="time the core operations")
    _add_profile_flags(bench)
    bench.add_argument("--iterations", type=int, default=30)
    bench.add_argument("--seed", type=int, default=None)

    an = subs.add_parser("analyze", help="run the empirical security experiments")
    an.add_argument("--toy-p", type=int, default=DEFAULT_ANALYZE_P)
    an.add_argument("--toy-q", type=int, default=DEFAULT_ANALYZE_Q)
    an.add_argument("--seed", type=int, default=None)
    an.add_argument("--samples", type=int, default=200_000)
    an.add_argument("--trials", type=int, default=2000)

    return parser


def _cmd_keygen(args) -> int:
    rng = _rng_from(args)
    params = _setup_from_args(args, rng)
    sk, ek = keygen(params, rng)
    include_witness = args.store_witnesses or params.toy
    write_private(args.params, params_to_bytes(params))
    write_private(args.sk, secret_key_to_bytes(sk, include_witness=include_witness))
    Path(args.ek).write_bytes(eval_key_to_bytes(ek))
    print(f"wrote {args.params}, {args.sk}, {args.ek}", file=sys.stderr)
    return EXIT_OK


def _cmd_encrypt(args) -> int:
    m = _read_message(args)
    sk = secret_key_from_bytes(Path(args.sk).read_bytes())
    params = params_from_bytes(Path(args.params).read_bytes())
    ct = encrypt(sk, params, m, _rng_from(args), wide_fragments=args.wide_fragments)
    _write_result(ciphertext_to_bytes(ct), args.out)
    return EXIT_OK


def _cmd_decrypt(args) -> int:
    sk = secret_key_from_bytes(Path(args.sk).read_bytes())
    if args.ciphertext is None:
        data = sys.stdin.buffer.read()
    else:
        data = Path(args.ciphertext).read_bytes()
    print(decrypt(sk, ciphertext_from_bytes(data)))
    return EXIT_OK


def _cmd_add(args) -> int:
    a, b = _load_ct(args.ct_a), _load_ct(args.ct_b)
    if a.n != b.n:
        raise ModulusMismatch("ciphertexts live under different moduli")
    _write_result(ciphertext_to_bytes(h_add(a, b, a.n)), args.out)
    return EXIT_OK


def _cmd_mul(args) -> int:
    a, b = _load_ct(args.ct_a), _load_ct(args.ct_b)
    ek = eval_key_from_bytes(Path(args.ek).read_bytes())
    _write_result(ciphertext_to_bytes(h_mul(a, b, ek)), args.out)
    return EXIT_OK


def _cmd_eval(args) -> int:
    circuit = parse_circuit(Path(args.circuit).read_text(encoding="utf-8"))
    ek = eval_key_from_bytes(Path(args.ek).read_bytes())
    bound = {}
    for item in args.inputs:
        name, sep, path = item.partition("=")
        if not sep or not name or not path:
            raise UsageError(f"--in expects NAME=FILE, got {item!r}")
        bound[name] = _load_ct(path)
    result = eval_encrypted(circuit, bound, ek)
    _write_result(ciphertext_to_bytes(result), args.out)
    return EXIT_OK


def _cmd_bench(args) -> int:
    rng = _rng_from(args)
    params = _setup_from_args(args, rng)
    rows = bench_run(params, iterations=args.iterations, rng=rng)
    print(format_table(rows, params))
    print()
    print(to_kv(rows))
    return EXIT_OK


def _cmd_analyze(args) -> int:
    rng = _rng_from(args)
    params = setup(
        DEFAULT_TOY_LAMBDA, "toy", rng, p=args.toy_p, q=args.toy_q
    )
    sk, ek = keygen(params, rng)
    reports = []

    if params.p <= analysis.MAX_EXHAUSTIVE_P:
        for idx in range(3):
            reports.append(
                analysis.masking_uniformity_exhaustive(
                    params.p, sk.position_keys[idx] % params.p
                )
            )
    else:
        print(f"p > 2^16; masking check run at p={BUCKET_TOY_P} instead", file=sys.stderr)
        for unit in (2, 3, 5):
            reports.append(analysis.masking_uniformity_exhaustive(BUCKET_TOY_P, unit))

    bucket_params = setup(
        DEFAULT_TOY_LAMBDA, "toy", rng, p=BUCKET_TOY_P, q=BUCKET_TOY_Q
    )
    reports.append(analysis.hidden_modulus_chisq(bucket_params, args.samples, rng))
    degenerate = setup(
        DEFAULT_TOY_LAMBDA,
        "toy",
        rng,
        p=BUCKET_TOY_P,
        q=BUCKET_TOY_Q,
        r1=1 << 16,
        r2=(1 << 16) + 1,
    )
    reports.append(analysis.hidden_modulus_chisq(degenerate, args.samples, rng))
    reports.append(
        analysis.hidden_modulus_chisq(bucket_params, args.samples, rng, control_uniform=True)
    )

    cca = analysis.cca_malleability_demo(sk, params, ek, 3, 7, rng)
    kpa = analysis.kpa_underdetermination(5, sk, params, rng)
    forged = analysis.dual_binding_forgery_trial(sk, params, ek, args.trials, rng)
    control = analysis.dual_binding_forgery_trial(
        sk, params, ek, min(args.trials, 200), rng, tamper=False
    )

    ct = encrypt(sk, params, rng.randrange(params.p), rng, retain_witness=True)
    for _ in range(10):
        other = encrypt(sk, params, rng.randrange(params.p), rng, retain_witness=True)
        ct = h_add(ct, other, params.n) if rng.randrange(2) else h_mul(ct, other, ek)
    noise_ok = analysis.noise_vanishing_check(sk, ct)

    for report in reports:
        print(report.to_text())
    print(cca.to_text())
    print(kpa.to_text())
    print(forged.to_text())
    print(control.to_text())
    print(f"noise_vanishing after 10 mixed ops: {'ok' if noise_ok else 'FAILED'}")
    print()
    for report in reports:
        print(report.to_kv())
    print(cca.to_kv("cca"))
    print(kpa.to_kv())
    print(forged.to_kv("dual_binding.forged"))
    print(control.to_kv("dual_binding.control"))
    print(f"noise_vanishing.ok={int(noise_ok)}")
    return EXIT_OK


_COMMANDS = {
    "keygen": _cmd_keygen,
    "encrypt": _cmd_encrypt,
    "decrypt": _cmd_decrypt,
    "add": _cmd_add,
    "mul": _cmd_mul,
    "eval": _cmd_eval,
    "bench": _cmd_bench,
    "analyze": _cmd_analyze,
}


def main(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
        return _COMMANDS[args.command](args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (FileFormatError, ParseError) as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_FILE_FORMAT
    except OSError as exc:
        print(f"file error: {exc}", file=sys.stderr)
        return EXIT_FILE_FORMAT
    except (
        InvalidProfile,
        MessageOutOfRange,
        ModulusMismatch,
        ArityMismatch,
        ValueError,
        FragFheError,
    ) as exc:
        print(f"parameter error: {exc}", file=sys.stderr)
        return EXIT_PARAMETER


if __name__ == "__main__":
    sys.exit(main())
