"""Smoke tests for the python bindings."""

import pytest

import bitblast

LFSR = """
int len = 32;
__in  bit reg[19];
__out bit stream[len];

void shift_reg() {
    bit fb;
    int j;
    fb = reg[0] ^ reg[1] ^ reg[2] ^ reg[5];
    for (j = 0; j < 18; j = j + 1)
        reg[j] = reg[j + 1];
    reg[18] = fb;
}

void main() {
    int i;
    for (i = 0; i < len; i = i + 1) {
        stream[i] = reg[0];
        shift_reg();
    }
}
"""

XOR_PROG = "__in bit a, b; __out bit o;\nvoid main() { o = a ^ b; }\n"


def test_translate_counts():
    enc = bitblast.translate(LFSR)
    assert enc.num_vars == 32 + 19
    assert enc.num_definitions == 32
    assert enc.inputs == list(range(1, 20))
    assert enc.outputs == list(range(1, 33))
    assert enc.cnf_clauses == 32 * 12


def test_dimacs_and_map():
    enc = bitblast.translate(XOR_PROG)
    dimacs = enc.dimacs()
    assert dimacs.startswith("p cnf 3 4\n")
    assert "c in a = 1" in dimacs
    assert "c out o = 3" in dimacs
    assert enc.map().count("c in") == 2


def test_anf_and_dnf():
    enc = bitblast.translate(XOR_PROG)
    assert enc.anf() == "x3 = x1 + x2\n"
    assert enc.dnf(minimized_cover=False) == "x3 = x1*~x2 | ~x1*x2\n"


def test_minimize_never_grows():
    plain = bitblast.translate(LFSR)
    minimized = bitblast.translate(LFSR, minimize=True)
    assert minimized.cnf_clauses <= plain.cnf_clauses
    assert minimized.cnf_vars <= plain.cnf_vars


def test_run():
    out = bitblast.run(XOR_PROG, {"a": [1], "b": [1]})
    assert out == {"o": [0]}
    out = bitblast.run(XOR_PROG, {"a": [1], "b": [0]})
    assert out == {"o": [1]}


def test_run_lfsr_zero_key():
    out = bitblast.run(LFSR, {"reg": [0] * 19})
    assert out["stream"] == [0] * 32


def test_verify():
    report = bitblast.verify(LFSR, trials=50, seed=7)
    assert report["trials"] == 50
    assert report["failures"] == 0


def test_invert_roundtrip():
    key = [1, 0, 1, 1, 0, 0, 1, 0, 1, 0, 1, 1, 1, 0, 0, 1, 0, 1, 1]
    stream = bitblast.run(LFSR, {"reg": key})
    result = bitblast.invert(LFSR, stream)
    assert result["status"] == "sat"
    assert result["regenerates"] is True
    regenerated = bitblast.run(LFSR, result["inputs"])
    assert regenerated == stream


def test_invert_unsat():
    const_zero = "__in bit a; __out bit o;\nvoid main() { o = a & 0; }\n"
    result = bitblast.invert(const_zero, {"o": [1]})
    assert result["status"] == "unsat"


def test_compile_error():
    with pytest.raises(ValueError) as err:
        bitblast.translate("void main() { x = ; }")
    assert "error:" in str(err.value)
