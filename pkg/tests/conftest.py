import pytest
from hypothesis import settings

from curvekit.construction import default_schedule, generate
from curvekit.surface import base_chart

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


@pytest.fixture(scope="session")
def chart():
    return base_chart()


@pytest.fixture(scope="session")
def bundle10():
    return generate(10, default_schedule())


@pytest.fixture(scope="session")
def bundle12():
    return generate(12, default_schedule())


# acceptance summary: one line per criterion, printed at the end of the run
_ACCEPTANCE = pytest.StashKey[dict]()


def pytest_configure(config):
    config.addinivalue_line("markers", "criterion(number, title): an acceptance criterion")
    config.stash[_ACCEPTANCE] = {}


@pytest.hookimpl(wrapper=True)
def pytest_runtest_makereport(item, call):
    rep = yield
    mark = item.get_closest_marker("criterion")
    if mark is not None and (rep.when == "call" or rep.failed or rep.skipped):
        number, title = mark.args
        detail = dict(item.user_properties).get("detail", "")
        results = item.config.stash[_ACCEPTANCE]
        if rep.when == "call" or number not in results:
            results[number] = (title, rep.passed, detail)
    return rep


def pytest_terminal_summary(terminalreporter, config):
    results = config.stash.get(_ACCEPTANCE, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(results):
        title, ok, detail = results[number]
        line = f"criterion {number:2d} {'PASS' if ok else 'FAIL'}  {title}"
        terminalreporter.write_line(line + (f"  [{detail}]" if detail else ""))
