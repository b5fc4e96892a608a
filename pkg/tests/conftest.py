"""Shared fixtures: parameter profiles, keys, and a random-circuit maker."""

import random

import pytest

from fragfhe import keygen, seeded_rng, setup
from fragfhe.circuit import Circuit, Gate


@pytest.fixture(scope="session")
def tiny():
    """p=31, q=37: small enough for exhaustive plaintext sweeps."""
    rng = seeded_rng(101)
    params = setup(8, "toy", rng, p=31, q=37)
    sk, ek = keygen(params, rng)
    return params, sk, ek


@pytest.fixture(scope="session")
def toy():
    """p=10007, q=10009: the default experimentation scale."""
    rng = seeded_rng(202)
    params = setup(16, "toy", rng, p=10007, q=10009)
    sk, ek = keygen(params, rng)
    return params, sk, ek


@pytest.fixture(scope="session")
def bucket_toy():
    """n small enough (60491) for the bucketed uniformity test."""
    rng = seeded_rng(303)
    params = setup(16, "toy", rng, p=251, q=241)
    sk, ek = keygen(params, rng)
    return params, sk, ek


@pytest.fixture(scope="session")
def production():
    """Full-size 3072-bit modulus; generated once per session."""
    rng = seeded_rng(404)
    params = setup(128, "production", rng)
    sk, ek = keygen(params, rng)
    return params, sk, ek


def random_circuit(rng: random.Random, n_inputs: int, n_gates: int) -> Circuit:
    """Random topologically-ordered circuit over add/mul/cmul gates."""
    inputs = tuple(f"x{i}" for i in range(n_inputs))
    wires = list(inputs)
    gates = []
    for g in range(n_gates):
        op = rng.choice(("add", "mul", "cmul"))
        wire = f"w{g}"
        if op == "cmul":
            gates.append(
                Gate(wire=wire, op=op, args=(rng.choice(wires),), scalar=rng.randrange(64))
            )
        else:
            gates.append(
                Gate(wire=wire, op=op, args=(rng.choice(wires), rng.choice(wires)), scalar=None)
            )
        wires.append(wire)
    return Circuit(inputs=inputs, gates=tuple(gates), output=wires[-1])


@pytest.fixture
def circuit_maker():
    return random_circuit
