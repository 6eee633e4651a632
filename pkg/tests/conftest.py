import numpy as np
import pytest

from pqc.ensembles import (
    POLYHEDRAL_KEYSETS,
    gell_mann_ensemble,
    pauli_ensemble,
    polyhedral_ensemble,
    weyl_ensemble,
)


def random_hermitian(d, rng, scale=1.0):
    g = rng.standard_normal((d, d)) + 1j * rng.standard_normal((d, d))
    return scale * (g + g.conj().T) / 2


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


def builtin_ensembles():
    """Every ensemble the library claims is complete, keyed by label."""
    out = {"pauli": pauli_ensemble()}
    for solid in POLYHEDRAL_KEYSETS.values():
        e = polyhedral_ensemble(solid)
        out[e.label] = e
    out["gell-mann"] = gell_mann_ensemble()
    for d in (2, 3, 4, 5):
        out[f"weyl-{d}"] = weyl_ensemble(d)
    return out


_acceptance_results = {}


def pytest_runtest_logreport(report):
    if report.when != "call" and not (report.when == "setup" and report.failed):
        return
    marker = getattr(report, "acceptance", None)
    if marker is None:
        return
    number, title = marker
    prev = _acceptance_results.get(number, (title, True))
    _acceptance_results[number] = (title, prev[1] and report.passed)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    mark = item.get_closest_marker("acceptance")
    if mark is not None:
        report.acceptance = tuple(mark.args)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance_results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_acceptance_results):
        title, ok = _acceptance_results[number]
        terminalreporter.write_line(f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {title}")
