import pytest

from scramblefit.config import ModelConfig
from scramblefit.model import DifficultyModel
from scramblefit.session import simulate_participants
from scramblefit.words import default_tasks


@pytest.fixture(scope="session")
def default_config():
    return ModelConfig.default()


@pytest.fixture(scope="session")
def model(default_config):
    return DifficultyModel(default_config)


@pytest.fixture(scope="session")
def tasks():
    return default_tasks()


@pytest.fixture(scope="session")
def sim_records(tasks):
    """48 participants x 28 tasks = 1,344 records, fixed seed."""
    return simulate_participants(48, 101, tasks)
