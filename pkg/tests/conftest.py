import pytest

from detcascade.polycore import CoeffField, make_ring, projective_ring


@pytest.fixture(autouse=True)
def _isolated_cache(tmp_path, monkeypatch):
    # keep CLI runs from touching the user's cache directory
    monkeypatch.setenv("CASCADE_CACHE_DIR", str(tmp_path / "gb-cache"))
    monkeypatch.delenv("CASCADE_PRIME", raising=False)
    monkeypatch.delenv("CASCADE_SEED", raising=False)


@pytest.fixture
def gf():
    return CoeffField.prime()


@pytest.fixture
def qq():
    return CoeffField.rationals()


@pytest.fixture
def p3():
    return projective_ring(3)


@pytest.fixture
def xyz():
    return make_ring(["x", "y", "z"])
