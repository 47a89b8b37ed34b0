import pytest

from quartic_pms.effective_frequency import OscillatorParams
from quartic_pms.oracle import BasisSpec, exact_spectrum


@pytest.fixture(scope="session")
def unit():
    return OscillatorParams(1.0, 1.0)


@pytest.fixture(scope="session")
def spectrum_g1(unit):
    # 800 states keep the Boltzmann tail negligible down to beta = 0.1.
    return exact_spectrum(unit, BasisSpec(size=800))


ACCEPTANCE_LINES = {}


@pytest.fixture
def criterion():
    """Record and print one PASS/FAIL line, then assert."""

    def report(number, ok, detail):
        line = f"criterion {number:>2}: {'PASS' if ok else 'FAIL'}  {detail}"
        ACCEPTANCE_LINES[number] = line
        print(line)
        assert ok, line

    return report


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for number in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[number])
