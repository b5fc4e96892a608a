"""Tests for circuit parsing, evaluation and capacity tracking."""

import pytest

from fragfhe import (
    ArityMismatch,
    ParseError,
    ValidationError,
    capacity_check,
    decrypt,
    encrypt,
    eval_encrypted,
    eval_plain,
    parse_circuit,
    render_circuit,
    seeded_rng,
)
from conftest import random_circuit


class TestParse:
    def test_minimal_product(self):
        c = parse_circuit("in a\nin b\nw1 = mul a b\nout w1")
        assert c.inputs == ("a", "b")
        assert len(c.gates) == 1
        assert c.gates[0].op == "mul"
        assert c.output == "w1"

    def test_identity_circuit(self):
        c = parse_circuit("in a\nout a")
        assert c.inputs == ("a",)
        assert c.gates == ()
        assert c.output == "a"

    def test_forward_reference_rejected(self):
        with pytest.raises(ParseError) as err:
            parse_circuit("w1 = mul a b\nin a")
        assert err.value.line == 1

    def test_duplicate_wire(self):
        with pytest.raises(ValidationError) as err:
            parse_circuit("in a\nin a\nout a")
        assert err.value.wire == "a"
        assert err.value.line == 2

    def test_duplicate_gate_wire(self):
        src = "in a\nw = add a a\nw = mul a a\nout w"
        with pytest.raises(ValidationError) as err:
            parse_circuit(src)
        assert err.value.wire == "w"

    def test_missing_output(self):
        with pytest.raises(ParseError):
            parse_circuit("in a\nw1 = add a a\n")

    def test_unknown_output_wire(self):
        with pytest.raises(ValidationError) as err:
            parse_circuit("in a\nout nope")
        assert err.value.wire == "nope"

    def test_statement_after_out(self):
        with pytest.raises(ParseError) as err:
            parse_circuit("in a\nout a\nin b")
        assert err.value.line == 3

    def test_bad_scalar(self):
        with pytest.raises(ParseError):
            parse_circuit("in a\nw = cmul 0x5 a\nout w")
        with pytest.raises(ParseError):
            parse_circuit("in a\nw = cmul 007 a\nout w")

    def test_unknown_gate(self):
        with pytest.raises(ParseError) as err:
            parse_circuit("in a\nw = sub a a\nout w")
        assert err.value.line == 2

    def test_bad_name(self):
        with pytest.raises(ParseError):
            parse_circuit("in 5x\nout 5x")

    def test_comments_and_blank_lines(self):
        src = "# product circuit\n\nin a  # left\nin b\n\nw1 = mul a b\nout w1  # done\n"
        c = parse_circuit(src)
        assert c.output == "w1"

    def test_cmul_parses(self):
        c = parse_circuit("in a\nw = cmul 17 a\nout w")
        assert c.gates[0].scalar == 17
        assert c.gates[0].args == ("a",)


class TestRender:
    def test_parse_render_fixpoint(self):
        src = "in a\nin b\nw1 = add a b\nw2 = cmul 5 w1\nw3 = mul w2 a\nout w3\n"
        c = parse_circuit(src)
        assert render_circuit(c) == src
        assert parse_circuit(render_circuit(c)) == c

    def test_random_circuits_roundtrip(self):
        rng = seeded_rng(1)
        for _ in range(25):
            c = random_circuit(rng, rng.randrange(1, 5), rng.randrange(1, 20))
            assert parse_circuit(render_circuit(c)) == c


class TestEvalPlain:
    def test_identity(self):
        c = parse_circuit("in a\nout a")
        assert eval_plain(c, {"a": 5}, 101) == 5

    def test_product(self):
        c = parse_circuit("in a\nin b\nw1 = mul a b\nout w1")
        assert eval_plain(c, {"a": 6, "b": 7}, 101) == 42

    def test_sum_then_product(self):
        c = parse_circuit("in a\nin b\nin c\ns = add a b\nw = mul s c\nout w")
        assert eval_plain(c, {"a": 2, "b": 3, "c": 4}, 101) == 20

    def test_reduction_mod_p(self):
        c = parse_circuit("in a\nin b\nw1 = mul a b\nout w1")
        assert eval_plain(c, {"a": 6, "b": 7}, 5) == 42 % 5

    def test_arity_mismatch(self):
        c = parse_circuit("in a\nin b\nw1 = mul a b\nout w1")
        with pytest.raises(ArityMismatch):
            eval_plain(c, {"a": 6}, 101)
        with pytest.raises(ArityMismatch):
            eval_plain(c, {"a": 6, "b": 7, "c": 8}, 101)


class TestEvalEncrypted:
    def test_matches_plain_on_random_circuits(self, toy):
        params, sk, ek = toy
        rng = seeded_rng(2)
        for _ in range(50):
            c = random_circuit(rng, rng.randrange(1, 4), rng.randrange(1, 21))
            values = {name: rng.randrange(params.p) for name in c.inputs}
            cts = {name: encrypt(sk, params, v, rng) for name, v in values.items()}
            expected = eval_plain(c, values, params.p)
            assert decrypt(sk, eval_encrypted(c, cts, ek)) == expected

    def test_depth_100_chain_of_ones(self, toy):
        params, sk, ek = toy
        lines = ["in a"]
        prev = "a"
        for i in range(100):
            lines.append(f"w{i} = mul {prev} a")
            prev = f"w{i}"
        lines.append(f"out {prev}")
        c = parse_circuit("\n".join(lines))
        assert capacity_check(c, 1, params.p).mul_depth == 100
        ct = encrypt(sk, params, 1, seeded_rng(3))
        result = eval_encrypted(c, {"a": ct}, ek)
        assert decrypt(sk, result) == 1
        assert result.depth_hint >= 100

    def test_power_chain_within_capacity(self, toy):
        # 2^L stays below p for L = 13 at p = 10007? 2^13 = 8192 < 10007.
        params, sk, ek = toy
        L = 13
        lines = ["in one", "in x"]
        prev = "one"
        for i in range(L):
            lines.append(f"w{i} = mul {prev} x")
            prev = f"w{i}"
        lines.append(f"out {prev}")
        c = parse_circuit("\n".join(lines))
        rng = seeded_rng(4)
        cts = {"one": encrypt(sk, params, 1, rng), "x": encrypt(sk, params, 2, rng)}
        assert 2**L < params.p
        assert decrypt(sk, eval_encrypted(c, cts, ek)) == 2**L

    def test_arity_mismatch(self, toy):
        params, sk, ek = toy
        c = parse_circuit("in a\nout a")
        with pytest.raises(ArityMismatch):
            eval_encrypted(c, {}, ek)


class TestCapacity:
    def test_single_mul_within(self):
        c = parse_circuit("in a\nin b\nw = mul a b\nout w")
        report = capacity_check(c, 10, 101)
        assert report.max_product_bound == 100
        assert report.bound_ok
        assert report.mul_depth == 1

    def test_single_mul_violation(self):
        c = parse_circuit("in a\nin b\nw = mul a b\nout w")
        report = capacity_check(c, 11, 101)
        assert report.max_product_bound == 121
        assert not report.bound_ok

    def test_three_mul_chain(self):
        src = "in a\nin b\nin c\nin d\nw1 = mul a b\nw2 = mul w1 c\nw3 = mul w2 d\nout w3"
        report = capacity_check(parse_circuit(src), 2, 17)
        assert report.max_product_bound == 16
        assert report.bound_ok
        assert report.mul_depth == 3

    def test_chain_depth_counts_muls_only(self):
        src = "in a\nw1 = add a a\nw2 = mul w1 a\nw3 = cmul 3 w2\nw4 = mul w3 w2\nout w4"
        report = capacity_check(parse_circuit(src), 2, 10**9)
        assert report.mul_depth == 2

    def test_add_bounds_sum(self):
        c = parse_circuit("in a\nin b\nw = add a b\nout w")
        assert capacity_check(c, 10, 101).max_product_bound == 20

    def test_cmul_scales_bound(self):
        c = parse_circuit("in a\nw = cmul 7 a\nout w")
        assert capacity_check(c, 10, 101).max_product_bound == 70

    def test_bad_bound(self):
        c = parse_circuit("in a\nout a")
        with pytest.raises(ValueError):
            capacity_check(c, 0, 101)

    def test_soundness_on_random_circuits(self, toy):
        # When the report says ok and inputs are within the bound, the
        # decrypted result equals the exact integer value of the circuit.
        params, sk, ek = toy
        rng = seeded_rng(5)
        checked = 0
        while checked < 20:
            c = random_circuit(rng, rng.randrange(1, 4), rng.randrange(1, 8))
            bound = 3
            report = capacity_check(c, bound, params.p)
            if not report.bound_ok:
                continue
            checked += 1
            values = {name: rng.randrange(bound + 1) for name in c.inputs}
            exact = eval_plain(c, values, 10**30)  # huge modulus = integer arithmetic
            assert exact <= report.max_product_bound
            cts = {name: encrypt(sk, params, v, rng) for name, v in values.items()}
            assert decrypt(sk, eval_encrypted(c, cts, ek)) == exact
