from datetime import date

import numpy as np
import pytest

from gmfrbeta.returns import RiskFreeSeries, write_prices, write_risk_free
from gmfrbeta.synthetic import month_starts, moment_matched_sample, prices_from_returns

# -- acceptance summary ---------------------------------------------------------

_ACCEPTANCE: dict[int, tuple[str, str]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(number, title): acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    report = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    number, title = marker.args
    if report.when == "call" or (report.when == "setup" and report.outcome != "passed"):
        _ACCEPTANCE[number] = ("PASS" if report.passed else "FAIL", title)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(_ACCEPTANCE):
        status, title = _ACCEPTANCE[number]
        terminalreporter.write_line(f"[{status}] {number:2d}. {title}")


# -- shared fixtures ------------------------------------------------------------

@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture(scope="session")
def att_pairs():
    """60 (market, AT&T-like) excess returns with r = 0.32, sd ratio = 2.34."""
    return moment_matched_sample(60, 0.32, 2.34, sd_m=0.045, mean_m=0.012,
                                 mean_i=0.015, rng=1995)


@pytest.fixture
def fixture_dir(tmp_path, att_pairs):
    """Index, two assets, a zero and a non-zero risk-free file, as CSVs."""
    x, y = att_pairs
    x2, y2 = moment_matched_sample(60, 0.6, 1.4, sd_m=0.045, mean_m=0.012,
                                   mean_i=0.01, rng=7)
    # second asset shares the index: rebuild its returns against x
    u = (x - x.mean()) / x.std(ddof=1)
    w = (y2 - y2.mean()) - ((y2 - y2.mean()) @ u) / (u @ u) * u
    w /= w.std(ddof=1)
    ibm = 0.01 + 1.4 * 0.045 * (0.6 * u + np.sqrt(1 - 0.36) * w)
    write_prices(tmp_path / "SPX.csv", prices_from_returns(x))
    write_prices(tmp_path / "T.csv", prices_from_returns(y))
    write_prices(tmp_path / "IBM.csv", prices_from_returns(ibm))
    ends = month_starts(date(1995, 2, 1), 60)
    write_risk_free(tmp_path / "rf_zero.csv", RiskFreeSeries(ends, np.zeros(60)))
    write_risk_free(tmp_path / "rf.csv",
                    RiskFreeSeries(ends, np.linspace(0.003, 0.005, 60)))
    return tmp_path
