from __future__ import annotations

import pytest
from hypothesis import settings

from enriques_salem.salem import SpectralRadius

import support

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

_ACCEPTANCE_KEY = pytest.StashKey[dict]()


def _install_lambda_log():
    # every enclosure, cached or deserialized, passes through __init__
    original = SpectralRadius.__init__
    if getattr(original, "_logged", False):
        return

    def init(self, *args, **kwargs):
        original(self, *args, **kwargs)
        support.LAMBDA_LOWER_BOUNDS.append(self.lower)

    init._logged = True
    SpectralRadius.__init__ = init


_install_lambda_log()


def pytest_configure(config):
    config.stash[_ACCEPTANCE_KEY] = {}


def pytest_collection_modifyitems(config, items):
    # the acceptance gate reads the lambda log, so it runs after everything else
    items.sort(key=lambda item: item.path.name == "test_acceptance.py")


@pytest.fixture
def acceptance(request):
    results = request.config.stash[_ACCEPTANCE_KEY]

    def record(criterion: str, ok: bool, detail: str = "") -> None:
        results[criterion] = (ok, detail)
        print(f"{criterion}: {'PASS' if ok else 'FAIL'} {detail}")

    return record


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    results = config.stash.get(_ACCEPTANCE_KEY, {})
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for name in sorted(results, key=lambda s: int(s.split()[0][1:])):
        ok, detail = results[name]
        terminalreporter.write_line(f"{'PASS' if ok else 'FAIL'}  {name}  {detail}")
