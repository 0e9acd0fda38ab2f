import os
import sys
import tempfile

import pytest
from hypothesis import settings

# keep the volume cache out of the user's home unless a path is given
if not os.environ.get("WPMODULI_CACHE"):
    os.environ["WPMODULI_CACHE"] = os.path.join(tempfile.mkdtemp(prefix="wpmoduli-test-"), "volumes.txt")

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")


@pytest.fixture
def fresh_cache(tmp_path):
    """A private on-disk cache, installed as the process default for one test."""
    from wpmoduli.volumes import VolumeCache, set_default_cache
    from wpmoduli.volumes.core import default_cache

    old = default_cache()
    cache = VolumeCache(old.budget, tmp_path / "cache.txt")
    set_default_cache(cache)
    yield cache
    set_default_cache(old)


def pytest_terminal_summary(terminalreporter):
    mod = sys.modules.get("test_acceptance")
    lines = getattr(mod, "RESULTS", None)
    if lines:
        terminalreporter.section("acceptance criteria")
        for n in sorted(lines):
            terminalreporter.write_line(lines[n])
