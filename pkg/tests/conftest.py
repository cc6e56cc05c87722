import os
import random

import pytest


@pytest.fixture(scope="session")
def seed() -> int:
    return int(os.environ.get("CUBARTIN_SEED", "0"))


@pytest.fixture()
def rng(seed) -> random.Random:
    return random.Random(seed)
