"""Smoke tests for the python bindings: reference values and verdicts."""

from fractions import Fraction

import pytest

import ostrolib


def frac(s):
    return Fraction(s)


def test_generate_prefixes():
    assert ostrolib.generate("sylvester:1", depth=5)["prefix"] == ["1", "2", "6", "42", "1806"]
    assert ostrolib.generate("power:2", depth=4)["prefix"] == ["2", "8", "128", "32768"]
    assert ostrolib.generate("prime-chain", depth=4)["prefix"] == ["2", "7", "59", "3541"]


def test_validate_passes():
    rep = ostrolib.validate("sylvester:2", depth=10)
    assert rep["all_pass"]
    assert rep["fail"] == 0


def test_expand_and_reconstruct():
    assert ostrolib.expand("5/7") == {"q": ["1", "3", "21"], "terminated": True}
    assert frac(ostrolib.reconstruct("explicit:1,3,21", 3)) == Fraction(5, 7)
    with pytest.raises(Exception):
        ostrolib.expand("3/2")


def test_invalid_sequence_raises():
    with pytest.raises(ostrolib.InvalidSequenceError):
        ostrolib.generate("explicit:2,5")


def test_cylinder_mass_and_cdf():
    assert frac(ostrolib.cylinder_mass("uniform", "101")) == Fraction(1, 8)
    f = ostrolib.cdf("sylvester:1", "uniform", "3/10", tol="1e-9")
    assert frac(f["lo"]) == Fraction(1, 2) == frac(f["hi"])


def test_locate():
    assert ostrolib.locate("sylvester:1", "2/3", depth=3) == {
        "status": "located",
        "word": "111",
    }
    out = ostrolib.locate("sylvester:1", "1/1000", depth=6)
    assert out["status"] == "outside"


def test_verdicts():
    assert ostrolib.classify_kakutani("half-minus-quarter-sqrt")["verdict"] == "singular"
    assert ostrolib.classify_kakutani("half-minus-geometric")["verdict"] == "equivalent"
    assert ostrolib.classify_continuity("uniform")["verdict"] == "continuous"
    assert ostrolib.classify_infinite("nested")["verdict"] == "singular"


def test_dimension_profiles():
    rep = ostrolib.dim_mu_nustar("const:0.3", n=256)
    assert rep["analytic_limit"]["value"].startswith("0.8812908")
    uni = ostrolib.dim_mu_nur("uniform", n=64)
    assert all(value == "1" for _, value in uni["checkpoints"])


def test_probe_above_bound():
    rep = ostrolib.coefficient_probe("sylvester:1", n_lo=2, n_hi=4)
    assert rep["all_above_bound"]


def test_sampling_deterministic():
    a = ostrolib.sample("sylvester:1", "uniform", depth=8, seed=7, count=16)
    b = ostrolib.sample("sylvester:1", "uniform", depth=8, seed=7, count=16)
    assert a == b
    assert all(Fraction(v) <= 2 for v in a)


def test_covering_volumes():
    rep = ostrolib.autoconv_cover("sylvester:1", m=2, n=3, alphas=["1/2"])
    assert rep["count_exact"] == "27"
    assert rep["length_exact"] == "4/21"  # 8/42
