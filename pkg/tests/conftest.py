from __future__ import annotations

import pytest

from squashfitts import bundled_dataset, derive_trial, run_analysis


@pytest.fixture(scope="session")
def bundled():
    return bundled_dataset()


@pytest.fixture(scope="session")
def derived36(bundled):
    return [derive_trial(t) for t in bundled.trials]


@pytest.fixture(scope="session")
def report(bundled):
    return run_analysis(bundled)


# --- acceptance-gate reporting -------------------------------------------
# Tests marked @pytest.mark.acceptance(criterion=N, title=...) get one
# aggregated PASS/FAIL line per criterion in the terminal summary.

def pytest_configure(config):
    config._acceptance_results = {}


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    if rep.when != "call":
        return
    marker = item.get_closest_marker("acceptance")
    if marker is None:
        return
    criterion = marker.kwargs.get("criterion")
    title = marker.kwargs.get("title", "")
    if hasattr(rep, "wasxfail"):
        status = "xfail" if rep.outcome in ("skipped", "passed") else "failed"
    else:
        status = rep.outcome
    store = item.config._acceptance_results
    store.setdefault((criterion, title), []).append((item.name, status))


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = getattr(config, "_acceptance_results", None)
    if not results:
        return
    tr = terminalreporter
    tr.write_sep("=", "acceptance criteria")
    for (criterion, title), entries in sorted(results.items()):
        statuses = [s for _, s in entries]
        if any(s == "failed" for s in statuses):
            verdict = "FAIL"
        elif any(s == "xfail" for s in statuses):
            n = sum(1 for s in statuses if s == "xfail")
            verdict = f"PASS ({n} documented xfail)"
        else:
            verdict = "PASS"
        tr.write_line(f"[criterion {criterion}] {verdict} - {title}")
