import pytest

_results: dict[int, dict] = {}


def pytest_addoption(parser):
    parser.addoption("--large", action="store_true", default=False,
                     help="run the long reproductions (the Z[i] rows k = 4 and sqrt(18))")


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(n, title): acceptance criterion number")


def pytest_collection_modifyitems(config, items):
    large = config.getoption("--large")
    skip = pytest.mark.skip(reason="needs --large")
    for item in items:
        m = item.get_closest_marker("criterion")
        if m is not None:
            item.user_properties.append(("criterion", (m.args[0], m.args[1])))
        if not large and "large" in item.keywords:
            item.add_marker(skip)


def pytest_runtest_logreport(report):
    crit = dict(report.user_properties).get("criterion")
    if crit is None:
        return
    if report.when != "call" and report.outcome == "passed":
        return
    n, title = crit
    entry = _results.setdefault(n, {"title": title, "parts": []})
    entry["parts"].append((report.nodeid.split("::")[-1], report.outcome))


def pytest_terminal_summary(terminalreporter):
    if not _results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(_results):
        entry = _results[n]
        outcomes = [o for _, o in entry["parts"]]
        if "failed" in outcomes:
            status = "FAIL"
        elif "passed" in outcomes:
            status = "PASS"
        else:
            status = "SKIP"
        skipped = [name for name, o in entry["parts"] if o == "skipped"]
        note = f" (skipped: {', '.join(skipped)})" if skipped and status != "SKIP" else ""
        terminalreporter.write_line(f"criterion {n}: {status}  {entry['title']}{note}")
