import pytest

from grmjacobi import Field, GrmCode

_CODES: dict[tuple[int, int, int], GrmCode] = {}


def get_code(p: int, k: int, m: int) -> GrmCode:
    """Shared code instances so value tables are built once per session."""
    key = (p, k, m)
    if key not in _CODES:
        _CODES[key] = GrmCode(Field(p, k), m)
    return _CODES[key]


@pytest.fixture
def code_3_2() -> GrmCode:
    return get_code(3, 1, 2)


@pytest.fixture
def code_2_2() -> GrmCode:
    return get_code(2, 1, 2)
