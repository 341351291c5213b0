from collections import defaultdict

import pytest

CRITERIA = {
    1: "trichotomy agreement, m in [4, 200], every class and point",
    2: "cardinality law |FM| * |H| = phi(m)",
    3: "worked instances",
    4: "small-m guard, m <= 4",
    5: "lattice transfer, CM classes, m <= 50",
    6: "isomorphism-criterion coherence, m <= 100",
    7: "congruence roots: fast path vs exhaustive scan, m <= 10^5",
    8: "Gamma_0(m) suite",
    9: "determinism and golden files",
}

_outcomes: dict[int, list[bool]] = defaultdict(list)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    marker = item.get_closest_marker("criterion")
    if marker is None:
        return
    if rep.when == "call" or (rep.when == "setup" and not rep.passed):
        _outcomes[marker.args[0]].append(rep.passed)


def pytest_terminal_summary(terminalreporter):
    if not _outcomes:
        return
    terminalreporter.section("acceptance criteria")
    for n, title in CRITERIA.items():
        runs = _outcomes.get(n)
        if not runs:
            status = "NOT RUN"
        else:
            status = "PASS" if all(runs) else "FAIL"
        terminalreporter.write_line(f"criterion {n}: {status}  {title}")
