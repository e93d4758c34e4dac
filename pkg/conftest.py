import pytest

from milnordeg.utils import clear_settings

collect_ignore = ["examples"]


@pytest.fixture(autouse=True)
def fresh_settings(monkeypatch):
    """Environment settings are cached; every test starts from the defaults"""
    for name in ("MILNORDEG_BUDGET", "MILNORDEG_MAX_K", "MILNORDEG_MAX_DEPTH"):
        monkeypatch.delenv(name, raising=False)

    clear_settings()
    yield
    clear_settings()
