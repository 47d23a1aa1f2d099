import numpy as np
import pytest

from magnonics.model import SystemParams, build_drift, drift_spectral_abscissa

# acceptance-criterion lines collected by tests/test_acceptance.py
ACCEPTANCE_LINES = []


def random_stable_params(rng, margin=0.0, symmetric=False):
    """Draw parameters until the drift matrix has abscissa below ``-margin``."""
    while True:
        g1 = rng.uniform(0.0, 4.0)
        kw = dict(
            delta_d=rng.uniform(-3, 3),
            delta_o1=rng.uniform(-3, 3),
            kappa_o1=rng.uniform(0.05, 1.0),
            g1=g1,
            lam=rng.uniform(0.0, 0.5),
            r=rng.uniform(0.0, 2.5),
            n_o1=rng.uniform(0.0, 3.0),
        )
        if symmetric:
            kw.update(delta_o2=kw["delta_o1"], kappa_o2=kw["kappa_o1"], g2=g1, n_o2=kw["n_o1"])
        else:
            kw.update(
                delta_o2=rng.uniform(-3, 3),
                kappa_o2=rng.uniform(0.05, 1.0),
                g2=rng.uniform(0.0, 4.0),
                n_o2=rng.uniform(0.0, 3.0),
            )
        p = SystemParams(**kw)
        if drift_spectral_abscissa(build_drift(p)) < -margin:
            return p


def tmsv(s):
    """Two-mode squeezed vacuum, vacuum variance 1/2."""
    a = np.cosh(2 * s) / 2
    c = np.sinh(2 * s) / 2
    return np.array([
        [a, 0, c, 0],
        [0, a, 0, -c],
        [c, 0, a, 0],
        [0, -c, 0, a],
    ])


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
