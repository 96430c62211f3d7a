from fractions import Fraction

import pytest

import taut2


def test_masses():
    assert taut2.total_mass("elliptic", 7) == 7
    assert taut2.total_mass("genus2", 3) == 27
    assert taut2.total_mass("genus2", 5, jobs=2) == 125


def test_histogram_is_twist_symmetric():
    hist = taut2.histogram("genus2", 3)
    assert sum(hist.values()) == 27
    for (a1, a2), mass in hist.items():
        assert isinstance(mass, (int, Fraction))
        assert hist[(-a1, a2)] == mass


def test_traces():
    assert taut2.trace_ec("a1", (10, 0), 5) == -4831
    assert taut2.trace_ec("a2", (0, 0), 5) == 150
    assert taut2.hecke_trace(12, 2) == -24
    assert taut2.hecke_trace(24, 2) == 1080


def test_invariant_theory():
    assert taut2.weyl_dim(1, 0) == 4
    assert taut2.multiplicity_in_tensor_power(10, 10, 20) == 16796
    assert taut2.invariant_poincare(2) == [1, 0, 3, 0, 1]
    assert taut2.determine_N("") == (20, 11)
    assert taut2.determine_N("a3=noninj") == (12, 7)
    assert taut2.inner_verdict(20, 0) == ("vanishes", "fweight-Tate-obstruction")


def test_errors():
    with pytest.raises(ValueError):
        taut2.trace_ec("m2", (1, 2), 5)
    with pytest.raises(ValueError):
        taut2.total_mass("genus2", 4)


def test_cli_roundtrip():
    code, rec, _ = taut2.run("analyze", "N")
    assert code == 0
    assert rec["outputs"]["N"] == 20
    code, _, err = taut2.run("inner", "--lambda", "30,0")
    assert code == 1
    assert "20" in err
