import pytest

from psoset import as_bounded_trellis, build_psoset
from psoset.textio import bundled_text, load_bundled, parse_table

ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)


@pytest.fixture
def chain3():
    return as_bounded_trellis(load_bundled("chain3"))


@pytest.fixture
def chain2():
    return as_bounded_trellis(build_psoset(["0", "1"], [("0", "1")]))


@pytest.fixture
def diamond():
    return as_bounded_trellis(load_bundled("diamond"))


@pytest.fixture
def cycle4():
    return load_bundled("example_2_1")


@pytest.fixture
def trellis14():
    return as_bounded_trellis(load_bundled("example_3_1"))


@pytest.fixture
def nontrellis():
    return load_bundled("nontrellis")


@pytest.fixture
def n_witness():
    return as_bounded_trellis(load_bundled("n_witness"))


@pytest.fixture
def m_witness():
    return as_bounded_trellis(load_bundled("m_witness"))


@pytest.fixture
def reference_table(trellis14):
    """The golden table, transcribed by hand, independent of the construction."""
    return parse_table(bundled_text("reference_table.csv"), trellis14)
