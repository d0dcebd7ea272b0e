import os
from pathlib import Path

import pytest


@pytest.fixture(scope="session")
def data_dir() -> Path:
    """Fixture corpus location; point FCGKIT_DATA_DIR at a real corpus to rerun against it."""
    override = os.environ.get("FCGKIT_DATA_DIR")
    return Path(override) if override else Path(__file__).parent / "data"
