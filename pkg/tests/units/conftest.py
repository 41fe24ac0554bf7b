import pytest

from kahler_lattice.common.config_handler import CACHE_DIR_ENV, ConfigHandler
from kahler_lattice.lattice.model import IntClass, ManifoldModel, RayClass


@pytest.fixture(autouse=True)
def isolated_config(tmp_path, monkeypatch):
    """Keep the user's ~/.kahler/config.yaml and cache directory out of every test."""
    monkeypatch.setattr(ConfigHandler, "DEFAULT_GLOBAL_CONFIG_PATH", str(tmp_path / "kahler" / "config.yaml"))
    monkeypatch.delenv(CACHE_DIR_ENV, raising=False)
    return tmp_path / "kahler" / "config.yaml"


@pytest.fixture
def blowup():
    """Factory for Blowup(k)."""
    return ManifoldModel.blowup


@pytest.fixture
def sphere():
    return ManifoldModel.sphere_bundle()


@pytest.fixture
def cls():
    """``cls(model, a, b1, ...)`` builds an integral class."""

    def build(model, *coeffs):
        return IntClass.of(model, coeffs)

    return build


@pytest.fixture
def ray():
    def build(model, *coeffs):
        return RayClass.of(model, coeffs)

    return build
