import functools

import pytest

from permtri import make_field


@functools.lru_cache(maxsize=None)
def _tower(p, h):
    return make_field(p, h)


@pytest.fixture(scope="session")
def tower():
    """Session-cached tower factory: tower(p, h) -> FieldTower."""
    return _tower
