from __future__ import annotations

import pytest
from hypothesis import settings

from grouplab.catalog import curated_catalog

settings.register_profile("suite", derandomize=True, max_examples=50)
settings.load_profile("suite")


@pytest.fixture(scope="session")
def catalog24():
    return curated_catalog(24)


@pytest.fixture(scope="session")
def catalog16():
    return curated_catalog(16)


@pytest.fixture(scope="session")
def catalog12():
    return curated_catalog(12)
