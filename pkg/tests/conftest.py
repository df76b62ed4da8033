import sys
from pathlib import Path

import pytest

sys.path.insert(0, str(Path(__file__).parent))

from nlscd.grid import RadialGrid


@pytest.fixture(scope="session")
def grid2000():
    return RadialGrid.default(2000)


@pytest.fixture(scope="session")
def grid1200():
    return RadialGrid.default(1200)
