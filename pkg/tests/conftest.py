import os
import sys
import time

import pytest

sys.path.insert(0, os.path.dirname(__file__))

_ACCEPTANCE = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(num, title): numbered acceptance criterion")
    config.addinivalue_line("markers", "long: long-running target, opt in with PLANEPART_LONG=1")


def pytest_collection_modifyitems(config, items):
    if os.environ.get("PLANEPART_LONG") == "1":
        return
    skip = pytest.mark.skip(reason="long-running; set PLANEPART_LONG=1")
    for item in items:
        if "long" in item.keywords:
            item.add_marker(skip)


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    num, title = mark.args
    # the call phase decides; a failed or skipped setup stands in for it
    if rep.when == "call" or (rep.when == "setup" and rep.outcome != "passed"):
        status = {"passed": "PASS", "failed": "FAIL", "skipped": "SKIP"}[rep.outcome]
        _ACCEPTANCE[num] = (title, status, rep.duration)


def pytest_terminal_summary(terminalreporter):
    if not _ACCEPTANCE:
        return
    tr = terminalreporter
    tr.section("acceptance criteria")
    for num, (title, status, dur) in sorted(_ACCEPTANCE.items(), key=lambda kv: (int(str(kv[0]).rstrip("abc")), str(kv[0]))):
        tr.write_line(f"criterion {num:>2}  {status}  {dur:8.2f}s  {title}")


BUILD_SECONDS = {}


@pytest.fixture(scope="session")
def pp20k():
    from planepart.partitions import pp_exact
    start = time.perf_counter()
    table = pp_exact(20_001)
    BUILD_SECONDS["pp20k"] = time.perf_counter() - start
    return table


@pytest.fixture(scope="session")
def family60():
    from planepart.family import generate_family
    return generate_family(60)


@pytest.fixture
def clock():
    start = time.perf_counter()
    return lambda: time.perf_counter() - start
