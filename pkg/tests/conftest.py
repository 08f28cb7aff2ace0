from __future__ import annotations

import pytest
from hypothesis import HealthCheck, settings

from app.moments import new_series_cache

settings.register_profile(
    "suckers-bet",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.too_slow],
)
settings.load_profile("suckers-bet")


@pytest.fixture(scope="session")
def series_cache():
    return new_series_cache()
