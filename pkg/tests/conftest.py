from __future__ import annotations

import pytest

from degwild.wild import constructB_build


@pytest.fixture(scope="session")
def cb5():
    """Construction B at the default desk-scale parameters."""
    return constructB_build(5, window=36, level=8)
