import re

_CRITERIA = {}
_TITLES = {
    1: "Darboux bases and symplectic complements",
    2: "linear reduction",
    3: "Lagrangian reduction",
    4: "equivariant linear model",
    5: "quadratic momentum map",
    6: "Delzant fixtures",
    7: "quantization counts",
    8: "quantization commutes with reduction",
    9: "stratification",
    10: "CLI determinism and exit codes",
}


def pytest_runtest_logreport(report):
    m = re.search(r"test_acceptance\.py::test_criterion_(\d+)_", report.nodeid)
    if not m:
        return
    k = int(m.group(1))
    if report.when == "call" or report.failed:
        _CRITERIA[k] = _CRITERIA.get(k, True) and report.passed


def pytest_terminal_summary(terminalreporter):
    if not _CRITERIA:
        return
    terminalreporter.section("acceptance criteria")
    for k in sorted(_CRITERIA):
        status = "PASS" if _CRITERIA[k] else "FAIL"
        terminalreporter.write_line(f"criterion {k:2d} ({_TITLES.get(k, '?')}): {status}")
