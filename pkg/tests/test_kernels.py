import numpy as np
import pytest

from pentaks._kernels import available_backends, backend_name, get_backend
from pentaks.pentagram3 import PentagramParams, build_family
from pentaks.spectral import eigensystem


@pytest.fixture(scope="module")
def parameter_cloud():
    rng = np.random.default_rng(42)
    n = 4096
    a = rng.uniform(0.0, np.pi / 2, n)
    b = rng.uniform(0.0, np.pi / 2, n)
    mu = rng.uniform(0.0, 2 * np.pi, n)
    nu = rng.uniform(0.0, 2 * np.pi, n)
    return a, b, mu, nu


@pytest.mark.parametrize("name", available_backends())
def test_backend_matches_full_construction(name, parameter_cloud):
    kernel = get_backend(name)
    a, b, mu, nu = (arr[:200] for arr in parameter_cloud)
    overlap, lam = kernel.family_spectra(a, b, mu, nu)
    for i in range(a.size):
        pentagram = build_family(PentagramParams(a[i], b[i], mu[i], nu[i]))
        assert abs(pentagram.overlap_sum - overlap[i]) < 1e-10
        spectrum, _ = eigensystem(pentagram.operator)
        assert np.max(np.abs(np.array(spectrum.eigenvalues) - lam[i])) < 1e-8


def test_backends_agree(parameter_cloud):
    names = available_backends()
    if len(names) < 2:
        pytest.skip("compiled backend not built")
    results = {}
    for name in names:
        results[name] = get_backend(name).family_spectra(*parameter_cloud)
    (o1, l1), (o2, l2) = results["cython"], results["python"]
    assert np.max(np.abs(o1 - o2)) < 1e-12
    # deflated close pairs may differ in the last bits between the two
    # arithmetic orderings; both stay far inside the 1e-8 spectrum contract
    assert np.max(np.abs(l1 - l2)) < 1e-10


@pytest.mark.parametrize("name", available_backends())
def test_singular_corner_limit(name):
    kernel = get_backend(name)
    half_pi = np.array([np.pi / 2])
    overlap, lam = kernel.family_spectra(half_pi, half_pi, np.zeros(1), np.zeros(1))
    assert abs(overlap[0] - 2.0) < 1e-12
    assert np.max(np.abs(lam[0] - np.array([2.0, 2.0, 1.0]))) < 1e-9


def test_env_var_selects_backend(monkeypatch):
    monkeypatch.setenv("PENTAKS_BACKEND", "python")
    assert backend_name() == "python"
    monkeypatch.delenv("PENTAKS_BACKEND")


def test_unknown_backend_rejected():
    with pytest.raises(ValueError):
        get_backend("fortran")
