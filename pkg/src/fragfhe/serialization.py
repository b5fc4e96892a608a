"""Canonical text serialization of params, keys and ciphertexts.

Formats are line oriented, UTF-8, LF line endings, and bit-exact: loading
a canonical file and saving it again reproduces the identical bytes.
Every numeric field is a lowercase big-endian hex natural without leading
zeros, written as ``name=hex`` in a fixed field order.

Key files (magic ``FRAGFHE1``), second line ``kind=<kind>``:

    kind=params   lambda, p, q, r1, r2, toy        (toy is 0 or 1)
    kind=secret   p, k1..k3, inv1..inv3
                  [, k, e1..e3, a1..a3, b1..b6]    (witness block, optional)
    kind=eval     n, t1..t6, d1..d3

Ciphertext files (magic ``FRAGCT1``): n, c1..c3 in hex, then ``depth`` as
decimal.  Components are range-checked against n on load.
"""

from __future__ import annotations

import os
import re
from pathlib import Path

from .errors import FileFormatError, InvalidProfile
from .numeric import Natural
from .scheme import Ciphertext, EvaluationKey, KeyWitness, Params, SecretKey

KEY_MAGIC = "FRAGFHE1"
CT_MAGIC = "FRAGCT1"

_HEX_RE = re.compile(r"(0|[1-9a-f][0-9a-f]*)\Z")
_DEC_RE = re.compile(r"(0|[1-9][0-9]*)\Z")

_PARAMS_FIELDS = ("lambda", "p", "q", "r1", "r2", "toy")
_SECRET_FIELDS = ("p", "k1", "k2", "k3", "inv1", "inv2", "inv3")
_WITNESS_FIELDS = ("k", "e1", "e2", "e3", "a1", "a2", "a3", "b1", "b2", "b3", "b4", "b5", "b6")
_EVAL_FIELDS = ("n", "t1", "t2", "t3", "t4", "t5", "t6", "d1", "d2", "d3")


def _hex(value: Natural) -> str:
    return format(value, "x")


def _emit(magic: str, pairs: list[tuple[str, str]]) -> bytes:
    lines = [magic] + [f"{name}={value}" for name, value in pairs]
    return ("\n".join(lines) + "\n").encode("ascii")


def _split_lines(data: bytes, magic: str) -> list[str]:
    try:
        text = data.decode("utf-8")
    except UnicodeDecodeError as exc:
        raise FileFormatError(f"not valid UTF-8: {exc}") from None
    if "\r" in text:
        raise FileFormatError("CR line endings are not canonical")
    if not text.endswith("\n"):
        raise FileFormatError("missing trailing newline")
    lines = text[:-1].split("\n")
    if not lines or lines[0] != magic:
        raise FileFormatError(f"bad magic; expected {magic!r}")
    return lines[1:]


def _parse_fields(lines: list[str]) -> list[tuple[str, str]]:
    pairs = []
    for line in lines:
        name, sep, value = line.partition("=")
        if not sep or not name:
            raise FileFormatError(f"malformed line {line!r}")
        pairs.append((name, value))
    return pairs


def _take(pairs: list[tuple[str, str]], expected: tuple[str, ...], pattern=_HEX_RE) -> list[int]:
    """Consume exactly the expected field names, in order, as integers."""
    if len(pairs) < len(expected):
        raise FileFormatError(f"missing fields; expected {expected}")
    values = []
    for (name, raw), want in zip(pairs, expected):
        if name != want:
            raise FileFormatError(f"expected field {want!r}, found {name!r}")
        if not pattern.match(raw):
            raise FileFormatError(f"non-canonical value for {name!r}: {raw!r}")
        values.append(int(raw, 16 if pattern is _HEX_RE else 10))
    del pairs[: len(expected)]
    return values


def _expect_kind(pairs: list[tuple[str, str]], kind: str) -> None:
    if not pairs or pairs[0] != ("kind", kind):
        found = pairs[0] if pairs else None
        raise FileFormatError(f"expected kind={kind}, found {found}")
    del pairs[0]


def _expect_empty(pairs: list[tuple[str, str]]) -> None:
    if pairs:
        raise FileFormatError(f"unexpected trailing field {pairs[0][0]!r}")


# -- params ----------------------------------------------------------------


def params_to_bytes(params: Params) -> bytes:
    pairs = [
        ("kind", "params"),
        ("lambda", _hex(params.lam)),
        ("p", _hex(params.p)),
        ("q", _hex(params.q)),
        ("r1", _hex(params.r1)),
        ("r2", _hex(params.r2)),
        ("toy", _hex(int(params.toy))),
    ]
    return _emit(KEY_MAGIC, pairs)


def params_from_bytes(data: bytes) -> Params:
    pairs = _parse_fields(_split_lines(data, KEY_MAGIC))
    _expect_kind(pairs, "params")
    lam, p, q, r1, r2, toy = _take(pairs, _PARAMS_FIELDS)
    _expect_empty(pairs)
    if toy not in (0, 1):
        raise FileFormatError("toy flag must be 0 or 1")
    params = Params(lam=lam, p=p, q=q, n=p * q, r1=r1, r2=r2, toy=bool(toy))
    _validate_params(params)
    return params


def _validate_params(params: Params) -> None:
    if params.p == params.q:
        raise InvalidProfile("p and q must be distinct")
    if params.r1 >= params.r2:
        raise InvalidProfile("require r1 < r2")
    if not params.toy:
        if params.delta < (1 << params.lam):
            raise InvalidProfile("production bounds require r2 - r1 >= 2^lambda")


# -- secret key --------------------------------------------------------------


def secret_key_to_bytes(sk: SecretKey, include_witness: bool | None = None) -> bytes:
    """Serialize; the witness block is included iff present, unless forced off."""
    if include_witness is None:
        include_witness = sk.witness is not None
    if include_witness and sk.witness is None:
        raise ValueError("secret key holds no witness data to serialize")
    pairs = [("kind", "secret"), ("p", _hex(sk.p))]
    pairs += [(f"k{i+1}", _hex(v)) for i, v in enumerate(sk.position_keys)]
    pairs += [(f"inv{i+1}", _hex(v)) for i, v in enumerate(sk.inv_mod_p)]
    if include_witness:
        w = sk.witness
        pairs.append(("k", _hex(w.k)))
        pairs += [(f"e{i+1}", _hex(v)) for i, v in enumerate(w.e)]
        pairs += [(f"a{i+1}", _hex(v)) for i, v in enumerate(w.a)]
        pairs += [(f"b{i+1}", _hex(v)) for i, v in enumerate(w.b)]
    return _emit(KEY_MAGIC, pairs)


def secret_key_from_bytes(data: bytes) -> SecretKey:
    pairs = _parse_fields(_split_lines(data, KEY_MAGIC))
    _expect_kind(pairs, "secret")
    p, k1, k2, k3, i1, i2, i3 = _take(pairs, _SECRET_FIELDS)
    witness = None
    if pairs:
        k, e1, e2, e3, a1, a2, a3, b1, b2, b3, b4, b5, b6 = _take(pairs, _WITNESS_FIELDS)
        witness = KeyWitness(k=k, e=(e1, e2, e3), a=(a1, a2, a3), b=(b1, b2, b3, b4, b5, b6))
    _expect_empty(pairs)
    return SecretKey(p=p, position_keys=(k1, k2, k3), inv_mod_p=(i1, i2, i3), witness=witness)


# -- evaluation key ----------------------------------------------------------


def eval_key_to_bytes(ek: EvaluationKey) -> bytes:
    pairs = [("kind", "eval"), ("n", _hex(ek.n))]
    pairs += [(f"t{i+1}", _hex(v)) for i, v in enumerate(ek.t)]
    pairs += [(f"d{i+1}", _hex(v)) for i, v in enumerate(ek.d)]
    return _emit(KEY_MAGIC, pairs)


def eval_key_from_bytes(data: bytes) -> EvaluationKey:
    pairs = _parse_fields(_split_lines(data, KEY_MAGIC))
    _expect_kind(pairs, "eval")
    n, t1, t2, t3, t4, t5, t6, d1, d2, d3 = _take(pairs, _EVAL_FIELDS)
    _expect_empty(pairs)
    return EvaluationKey(n=n, t=(t1, t2, t3, t4, t5, t6), d=(d1, d2, d3))


# -- ciphertext --------------------------------------------------------------


def ciphertext_to_bytes(ct: Ciphertext) -> bytes:
    pairs = [
        ("n", _hex(ct.n)),
        ("c1", _hex(ct.c[0])),
        ("c2", _hex(ct.c[1])),
        ("c3", _hex(ct.c[2])),
        ("depth", str(ct.depth_hint)),
    ]
    return _emit(CT_MAGIC, pairs)


def ciphertext_from_bytes(data: bytes) -> Ciphertext:
    pairs = _parse_fields(_split_lines(data, CT_MAGIC))
    n, c1, c2, c3 = _take(pairs, ("n", "c1", "c2", "c3"))
    (depth,) = _take(pairs, ("depth",), pattern=_DEC_RE)
    _expect_empty(pairs)
    for c_i in (c1, c2, c3):
        if c_i >= n:
            raise FileFormatError(f"component {c_i:#x} is not reduced mod n")
    return Ciphertext(n=n, c=(c1, c2, c3), depth_hint=depth)


# -- generic dispatch and file helpers ---------------------------------------


def load_key_bytes(data: bytes):
    """Dispatch a key file by its kind line; returns (kind, object)."""
    lines = _split_lines(data, KEY_MAGIC)
    if not lines or not lines[0].startswith("kind="):
        raise FileFormatError("missing kind line")
    kind = lines[0].partition("=")[2]
    if kind == "params":
        return kind, params_from_bytes(data)
    if kind == "secret":
        return kind, secret_key_from_bytes(data)
    if kind == "eval":
        return kind, eval_key_from_bytes(data)
    raise FileFormatError(f"unknown kind {kind!r}")


def write_private(path: str | Path, data: bytes) -> None:
    """Write a file that should not be world-readable (best effort)."""
    path = Path(path)
    path.write_bytes(data)
    try:
        os.chmod(path, 0o600)
    except OSError:
        pass
