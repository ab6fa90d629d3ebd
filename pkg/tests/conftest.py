import pytest


def pytest_addoption(parser):
    parser.addoption("--deep", action="store_true", default=False,
                     help="run the long distance computations for the large worked examples")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--deep"):
        return
    skip = pytest.mark.skip(reason="long-running; pass --deep")
    for item in items:
        if "deep" in item.keywords:
            item.add_marker(skip)


# one line per acceptance criterion, filled by tests/test_acceptance.py
ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    skipped = [r for r in terminalreporter.stats.get("skipped", []) if "test_acceptance" in r.nodeid]
    if not ACCEPTANCE_LINES and not skipped:
        return
    terminalreporter.section("acceptance criteria")
    for line in ACCEPTANCE_LINES:
        terminalreporter.write_line(line)
    for r in skipped:
        terminalreporter.write_line(f"[SKIP] {r.nodeid.split('::')[-1]} (long-running; pass --deep)")
