import pytest

from schurgrr.groups import cyclic, dihedral


@pytest.fixture
def D7():
    return dihedral(7)


@pytest.fixture
def Z8():
    return cyclic(8)


def small_groups(max_order=16):
    out = [cyclic(n) for n in range(1, max_order + 1)]
    out += [dihedral(n) for n in range(3, max_order // 2 + 1)]
    return out


_acceptance = {}


def pytest_runtest_logreport(report):
    if "test_acceptance.py::test_criterion_" not in report.nodeid:
        return
    name = report.nodeid.split("::")[-1].removeprefix("test_criterion_")
    if report.when == "call" or report.outcome != "passed":
        prior = _acceptance.get(name, (True, 0.0))
        _acceptance[name] = (prior[0] and report.outcome == "passed", prior[1] + report.duration)


def pytest_terminal_summary(terminalreporter):
    if not _acceptance:
        return
    terminalreporter.section("acceptance criteria")
    for name, (ok, secs) in sorted(_acceptance.items(), key=lambda kv: int(kv[0].split("_")[0])):
        number, _, label = name.partition("_")
        terminalreporter.write_line(f"criterion {number} {'PASS' if ok else 'FAIL'} ({secs:.2f}s) {label}")
