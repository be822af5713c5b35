import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from zoo import triangle_gf2  # noqa: E402


@pytest.fixture
def triangle():
    return triangle_gf2()
