import sys
from pathlib import Path

import pytest

from edgeideal import betti

sys.path.insert(0, str(Path(__file__).parent))

from acceptance_log import ACCEPTANCE, DIAGRAM_LOG  # noqa: E402


def _audit(d, g):
    DIAGRAM_LOG["count"] += 1
    if not betti.check_propagation(d) or not betti.strand_bounds_hold(d):
        DIAGRAM_LOG["violations"].append((g.n, g.edges(), d.to_json()))


def pytest_addoption(parser):
    parser.addoption("--runslow", action="store_true", default=False, help="run the slow suite")


def pytest_configure(config):
    config.addinivalue_line("markers", "slow: long-running checks, enabled with --runslow")
    betti.add_observer(_audit)


def pytest_collection_modifyitems(config, items):
    # acceptance runs last so its audit criterion sees every diagram of the session
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")
    if config.getoption("--runslow"):
        return
    skip = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip)


def pytest_sessionfinish(session, exitstatus):
    if DIAGRAM_LOG["violations"] and session.exitstatus == 0:
        session.exitstatus = 1


def pytest_terminal_summary(terminalreporter):
    tr = terminalreporter
    if ACCEPTANCE:
        tr.section("acceptance criteria")
        for key in sorted(ACCEPTANCE):
            ok, text = ACCEPTANCE[key]
            tr.write_line(f"[{'PASS' if ok else 'FAIL'}] criterion {key}: {text}")
    tr.section("diagram audit")
    bad = DIAGRAM_LOG["violations"]
    tr.write_line(f"{DIAGRAM_LOG['count']} engine diagrams checked for propagation and strand bounds; "
                  f"{len(bad)} violations")
    for n, edges, js in bad[:10]:
        tr.write_line(f"  violation: n={n} edges={edges} diagram={js}")
