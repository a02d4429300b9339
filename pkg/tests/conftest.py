import pytest

from qcauchy.constructors.categories import cyclic_group
from qcauchy.constructors.quantales import (
    example_e7_quantale,
    free_quantaloid,
    group_quantale,
    interval_quantale,
    locale_quantale,
    rel_quantaloid,
)
from qcauchy.lattice import chain, diamond


def build_fixtures():
    return {
        "e7": example_e7_quantale(),
        "interval3": interval_quantale(3),
        "freeZ2": free_quantaloid(cyclic_group(2), canonical_involution=True),
        "groupZ2": group_quantale(cyclic_group(2)),
        "groupZ3": group_quantale(cyclic_group(3)),
        "M2": locale_quantale(diamond()),
    }


_FIXTURES = build_fixtures()


@pytest.fixture(scope="session")
def fixtures():
    return _FIXTURES


@pytest.fixture(scope="session")
def e7():
    return _FIXTURES["e7"]


@pytest.fixture(scope="session")
def iq3():
    return _FIXTURES["interval3"]


@pytest.fixture(scope="session")
def z3():
    return _FIXTURES["groupZ3"]


@pytest.fixture(scope="session")
def fz2():
    return _FIXTURES["freeZ2"]


@pytest.fixture(scope="session")
def chain2_quantale():
    return locale_quantale(chain(2))


@pytest.fixture(scope="session")
def rel12():
    return rel_quantaloid([1, 2])


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    if mod is None or not mod.RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(mod.RESULTS):
        terminalreporter.write_line(mod.RESULTS[n])
