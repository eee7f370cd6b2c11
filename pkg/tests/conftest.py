import os
import sys

sys.path.insert(0, os.path.dirname(__file__))

import pytest  # noqa: E402

from adeg.field import PrimeField  # noqa: E402


@pytest.fixture
def F():
    return PrimeField(7919)
