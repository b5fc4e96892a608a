"""Arithmetic circuits: text format, parsing, evaluation, capacity bounds.

Circuit source is line oriented (UTF-8, ``#`` starts a comment):

    in <name>                  declare an input wire
    <wire> = add <a> <b>       sum of two earlier wires
    <wire> = mul <a> <b>       product of two earlier wires
    <wire> = cmul <scalar> <a> scale an earlier wire by a decimal constant
    out <wire>                 designate the single output; ends the file

Wires must be defined before use and each name is defined once.  The same
circuit object can be evaluated over Z_p in the clear or gate-by-gate over
ciphertexts; the two always agree after decryption.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import ArityMismatch, ParseError, ValidationError
from .homomorphic import h_add, h_mul, h_mul_plain
from .numeric import Natural
from .scheme import Ciphertext, EvaluationKey

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*\Z")
_SCALAR_RE = re.compile(r"(0|[1-9][0-9]*)\Z")

GATE_OPS = ("add", "mul", "cmul")


@dataclass(frozen=True)
class Gate:
    wire: str
    op: str  # one of GATE_OPS
    args: tuple[str, ...]  # two source wires for add/mul, one for cmul
    scalar: Natural | None = None  # cmul only


@dataclass(frozen=True)
class Circuit:
    inputs: tuple[str, ...]
    gates: tuple[Gate, ...]
    output: str


def _check_name(token: str, line_no: int) -> str:
    if not _NAME_RE.match(token):
        raise ParseError(f"invalid wire name {token!r}", line_no)
    return token


def parse_circuit(text: str) -> Circuit:
    """Parse and validate circuit source."""
    inputs: list[str] = []
    gates: list[Gate] = []
    defined: set[str] = set()
    output: str | None = None

    for line_no, raw in enumerate(text.splitlines(), start=1):
        stmt = raw.split("#", 1)[0].strip()
        if not stmt:
            continue
        if output is not None:
            raise ParseError("statement after 'out'", line_no)
        tokens = stmt.split()

        if tokens[0] == "in":
            if len(tokens) != 2:
                raise ParseError("expected 'in <name>'", line_no)
            name = _check_name(tokens[1], line_no)
            if name in defined:
                raise ValidationError(f"duplicate wire {name!r}", name, line_no)
            inputs.append(name)
            defined.add(name)
            continue

        if tokens[0] == "out":
            if len(tokens) != 2:
                raise ParseError("expected 'out <wire>'", line_no)
            name = _check_name(tokens[1], line_no)
            if name not in defined:
                raise ValidationError(f"unknown output wire {name!r}", name, line_no)
            output = name
            continue

        if len(tokens) < 2 or tokens[1] != "=":
            raise ParseError(f"unrecognized statement {stmt!r}", line_no)
        wire = _check_name(tokens[0], line_no)
        if wire in defined:
            raise ValidationError(f"duplicate wire {wire!r}", wire, line_no)
        op = tokens[2] if len(tokens) > 2 else ""

        if op in ("add", "mul"):
            if len(tokens) != 5:
                raise ParseError(f"expected '<wire> = {op} <a> <b>'", line_no)
            args = (tokens[3], tokens[4])
            scalar = None
        elif op == "cmul":
            if len(tokens) != 5:
                raise ParseError("expected '<wire> = cmul <scalar> <a>'", line_no)
            if not _SCALAR_RE.match(tokens[3]):
                raise ParseError(f"invalid scalar {tokens[3]!r}", line_no)
            scalar = int(tokens[3])
            args = (tokens[4],)
        else:
            raise ParseError(f"unknown gate {op!r}", line_no)

        for arg in args:
            _check_name(arg, line_no)
            if arg not in defined:
                raise ValidationError(f"wire {arg!r} used before definition", arg, line_no)
        gates.append(Gate(wire=wire, op=op, args=args, scalar=scalar))
        defined.add(wire)

    if output is None:
        raise ParseError("missing 'out' statement")
    return Circuit(inputs=tuple(inputs), gates=tuple(gates), output=output)


def render_circuit(circuit: Circuit) -> str:
    """Canonical textual form: inputs, gates, out; one statement per line."""
    lines = [f"in {name}" for name in circuit.inputs]
    for g in circuit.gates:
        if g.op == "cmul":
            lines.append(f"{g.wire} = cmul {g.scalar} {g.args[0]}")
        else:
            lines.append(f"{g.wire} = {g.op} {g.args[0]} {g.args[1]}")
    lines.append(f"out {circuit.output}")
    return "\n".join(lines) + "\n"


def _check_assignment(circuit: Circuit, assignment: dict) -> None:
    declared = set(circuit.inputs)
    supplied = set(assignment)
    if declared != supplied:
        missing = sorted(declared - supplied)
        extra = sorted(supplied - declared)
        raise ArityMismatch(f"inputs mismatch: missing {missing}, unexpected {extra}")


def eval_plain(circuit: Circuit, inputs: dict[str, Natural], p: Natural) -> Natural:
    """Evaluate over Z_p in the clear (the ground-truth oracle)."""
    _check_assignment(circuit, inputs)
    values = {name: inputs[name] % p for name in circuit.inputs}
    for g in circuit.gates:
        if g.op == "add":
            values[g.wire] = (values[g.args[0]] + values[g.args[1]]) % p
        elif g.op == "mul":
            values[g.wire] = values[g.args[0]] * values[g.args[1]] % p
        else:
            values[g.wire] = g.scalar * values[g.args[0]] % p
    return values[circuit.output]


def eval_encrypted(
    circuit: Circuit, inputs: dict[str, Ciphertext], ek: EvaluationKey
) -> Ciphertext:
    """Evaluate gate by gate over ciphertexts under the evaluation key."""
    _check_assignment(circuit, inputs)
    values = dict(inputs)
    for g in circuit.gates:
        if g.op == "add":
            values[g.wire] = h_add(values[g.args[0]], values[g.args[1]], ek.n)
        elif g.op == "mul":
            values[g.wire] = h_mul(values[g.args[0]], values[g.args[1]], ek)
        else:
            values[g.wire] = h_mul_plain(values[g.args[0]], g.scalar, ek.n)
    return values[circuit.output]


@dataclass(frozen=True)
class CapacityReport:
    """Whether results can be read as exact integers rather than residues.

    Arithmetic mod p is exact at any depth; the only thing that can go
    wrong is interpreting a residue as an integer after the true integer
    value outgrew p.  ``max_product_bound`` is a conservative interval
    bound on the output assuming every input lies in [0, input_bound].
    """

    mul_depth: int
    bound_ok: bool
    max_product_bound: Natural
    p: Natural


def capacity_check(circuit: Circuit, input_bound: Natural, p: Natural) -> CapacityReport:
    """Propagate per-wire interval bounds and the MUL-weighted depth.

    A violation is a warning, not a refusal: evaluation stays correct
    mod p regardless, so callers decide whether wraparound matters.
    """
    if input_bound < 1:
        raise ValueError("input_bound must be >= 1")
    bound = {name: input_bound for name in circuit.inputs}
    depth = {name: 0 for name in circuit.inputs}
    for g in circuit.gates:
        if g.op == "add":
            bound[g.wire] = bound[g.args[0]] + bound[g.args[1]]
            depth[g.wire] = max(depth[g.args[0]], depth[g.args[1]])
        elif g.op == "mul":
            bound[g.wire] = bound[g.args[0]] * bound[g.args[1]]
            depth[g.wire] = max(depth[g.args[0]], depth[g.args[1]]) + 1
        else:
            bound[g.wire] = g.scalar * bound[g.args[0]]
            depth[g.wire] = depth[g.args[0]]
    out_bound = bound[circuit.output]
    return CapacityReport(
        mul_depth=depth[circuit.output],
        bound_ok=out_bound < p,
        max_product_bound=out_bound,
        p=p,
    )
