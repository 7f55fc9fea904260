import math
import os
import subprocess
from fractions import Fraction

import pytest

import sosign

EPS = 2.0**-52


def exact(terms):
    total = Fraction(0)
    for term in terms:
        p = Fraction(1)
        for f in term:
            p *= Fraction(f)
        total += p
    return (total > 0) - (total < 0)


def test_cancellation():
    terms = [[1 + EPS, 1 - EPS], [-1.0]]
    assert (1 + EPS) * (1 - EPS) - 1 == 0
    assert sosign.sign(terms) == (-1, "robust")
    assert sosign.robust_sign(terms) == -1
    assert sosign.exact_sign(terms) == -1
    assert sosign.quick_sign(terms) is None


def test_quick_decides_easy_sums():
    assert sosign.sign([[3.0, 4.0], [-5.0]]) == (1, "quick")
    assert sosign.quick_sign([[3.0, 4.0], [-5.0]]) == 1
    assert sosign.sign([]) == (0, "robust")


def test_formats_and_backends():
    eps32 = 2.0**-23
    terms = [[1 + eps32, 1 - eps32], [-1.0]]
    assert sosign.sign(terms, format="binary32")[0] == -1
    if sosign.hardware_rounding_available():
        assert sosign.sign(terms, format="binary32", backend="hardware")[0] == -1
    with pytest.raises(ValueError):
        sosign.sign([[0.1]], format="binary32")


def test_errors():
    with pytest.raises(sosign.NonFiniteError):
        sosign.sign([[math.inf]])
    with pytest.raises(sosign.CapacityError):
        sosign.sign([[1.0] * 26], format="binary32")
    with pytest.raises(sosign.Error):
        sosign.sign([[1e300, 1e300]])
    with pytest.raises(sosign.ParseError):
        sosign.parse("1 2 | x")


def test_predicates():
    assert sosign.orient2d([[0, 0], [1, 0], [0, 1]]) == 1
    assert sosign.orient2d([[0, 0], [1, 1], [3, 3]]) == 0
    assert sosign.incircle([[0, 0], [1, 0], [0, 1], [0.25, 0.25]]) == 1
    assert sosign.orient3d([[0, 0, 0], [1, 0, 0], [0, 1, 0], [0, 0, 1]]) == -1
    with pytest.raises(ValueError):
        sosign.orient2d([[0, 0], [1, 0]])


def test_generated_corpora_match_rational_arithmetic():
    for family in ["collinear", "near-collinear", "underflow", "cancellation", "random"]:
        for terms, expected in sosign.generate(family, 40, seed=7):
            assert exact(terms) == expected
            assert sosign.sign(terms)[0] == expected


def test_splits():
    c, e = sosign.split_sub(1.0, 1.0 + 2**-30)
    assert Fraction(c) - Fraction(e) == Fraction(2**-30)
    c, d, k = sosign.split_prod(2.0**-600, 2.0**-500)
    assert (Fraction(c) - Fraction(d)) / Fraction(2) ** (1023 * k) == Fraction(2) ** -1100
    assert k > 0


def test_constants():
    c = sosign.constants()
    assert c["tau"] == 2.0**-969
    assert c["sigma"] == 2.0**1023
    assert sosign.constants("binary32")["capacity"] == 2**23


def test_text_round_trip():
    terms = [[0.5, -3.0], [2.0**-1074]]
    text = "# expected: -1\n" + sosign.format_expression(terms) + "\n"
    [(parsed, expected)] = sosign.parse(text)
    assert parsed == terms
    assert expected == -1


@pytest.mark.skipif("SOSIGN_CLI" not in os.environ, reason="command-line tool location not given")
def test_cli_agrees():
    out = subprocess.run([os.environ["SOSIGN_CLI"], "sign"], input="0x1.0000000000001p+0 0x1.ffffffffffffep-1 | -1\n",
                         capture_output=True, text=True, check=True)
    assert out.stdout.split() == ["-1", "robust"]
