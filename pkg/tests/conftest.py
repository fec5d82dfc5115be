import logging
import os

import pytest

DATA = os.path.join(os.path.dirname(os.path.abspath(__file__)), "data")


@pytest.fixture(autouse=True)
def root_log_level():
    # `--debug` and `--quiet` change the root level for the whole process.
    level = logging.getLogger("").level
    yield
    logging.getLogger("").setLevel(level)


@pytest.fixture(params=[1, 2, 3])
def seed(request):
    return request.param


@pytest.fixture
def data_dir():
    return DATA


@pytest.fixture
def quintic_dir():
    return os.path.join(DATA, "quintic")


@pytest.fixture
def quintic(quintic_dir):
    from fanoverify.dataset import load_dataset

    return load_dataset(quintic_dir)
