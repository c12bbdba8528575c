import os
import sys

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from heckeforge.rootdata import PRESETS, preset  # noqa: E402

ALL_GROUPS = list(PRESETS)
RANK1 = ["SL2", "PGL2", "GL2"]


@pytest.fixture(params=ALL_GROUPS)
def any_group(request):
    return preset(request.param)


@pytest.fixture(autouse=True)
def _no_disk_cache(monkeypatch):
    monkeypatch.delenv("HECKEFORGE_CACHE_DIR", raising=False)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
