"""Collects acceptance-criterion outcomes and prints one line per criterion."""
import pytest
from hypothesis import settings

# exact arithmetic on larger draws is slow but not wrong
settings.register_profile("exact", deadline=None)
settings.load_profile("exact")

_criteria = {}


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    mark = item.get_closest_marker("criterion")
    if mark is None:
        return
    number, title = mark.args
    entry = _criteria.setdefault(number, {"title": title, "ok": True, "ran": False, "note": ""})
    if rep.failed:
        entry["ok"] = False
        entry["note"] = rep.longrepr.reprcrash.message if hasattr(rep.longrepr, "reprcrash") else "error"
    if rep.when == "call":
        entry["ran"] = True
        for key, value in item.user_properties:
            if key == "timing":
                entry["timing"] = value


def pytest_terminal_summary(terminalreporter):
    if not _criteria:
        return
    terminalreporter.write_sep("=", "acceptance criteria")
    for number in sorted(_criteria):
        e = _criteria[number]
        status = "PASS" if e["ok"] and e["ran"] else "FAIL"
        line = f"{status}  {number}. {e['title']}"
        if "timing" in e:
            line += f"  [{e['timing']}]"
        if status == "FAIL" and e["note"]:
            line += f"  -- {e['note'].splitlines()[0]}"
        terminalreporter.write_line(line)
