"""One test per acceptance criterion, coefficient-exact, at the default scale."""
import pytest

from orbivertex.acceptance import AcceptanceConfig, run

CFG = AcceptanceConfig()


def _check(key):
    res = run(key, CFG)
    print(res.line())
    assert res.ok, res.failures


def test_01_three_method_vertex_agreement():
    _check("oracle")


def test_02_macmahon_baseline():
    _check("macmahon")


def test_03_bz2_gerbe_expansion():
    _check("bz2")


def test_04_local_football_closed_form():
    _check("football")


def test_05_vertex_symmetries():
    _check("symmetry")


def test_06_football_chi_and_root_of_unity_identity():
    _check("chi")


def test_07_sign_coherence():
    _check("signs")


def test_08_operator_algebra():
    _check("operators")


def test_09_crepant_resolution_smoke_check():
    _check("crepant")


def test_10_schur_layer():
    _check("schur")


@pytest.mark.parametrize("key", ["macmahon", "signs"])
def test_checks_are_reproducible(key):
    a, b = run(key, CFG), run(key, CFG)
    assert (a.ok, a.detail) == (b.ok, b.detail)
