import pytest

from toricbound.families import FamilySpec, build

CRITERIA = {
    1: "Hilbert bases of the hypersurface and Veronese cones",
    2: "class groups of the hypersurface and Veronese rings, orthants, simplicial cones",
    3: "scaled primorial ring: class group Z/6 and tensor containment with D = 3",
    4: "Veronese sharpness at r = ceil(E/D)",
    5: "hypersurface equality and refined containment chain",
    6: "pure height one product formula and principality",
    7: "partition containment on tensor products",
    8: "face relaxation vs saturation oracle and closed forms",
    9: "ceiling/multiplier equivalence on the Veronese grid",
}

_outcomes: dict[int, list[bool]] = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance(n): acceptance criterion number n")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes.setdefault(marker.args[0], []).append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, label in CRITERIA.items():
        results = _outcomes.get(n)
        if results is None:
            status = "NOT RUN"
        else:
            status = "PASS" if all(results) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {label}")


@pytest.fixture(scope="session")
def family():
    def make(kind, n=2, D=2, **kw):
        return build(FamilySpec(kind, n, D, **kw))
    return make


@pytest.fixture(scope="session")
def H2(family):
    return family("hypersurface", 2, 2)


@pytest.fixture(scope="session")
def V2(family):
    return family("veronese", 2, 2)


@pytest.fixture(scope="session")
def V3(family):
    return family("veronese", 2, 3)
