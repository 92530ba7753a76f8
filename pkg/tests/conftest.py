"""Shared fixtures: one generated dataset and one trained desk-scale net
per session, so the heavy setup cost is paid once."""

import numpy as np
import pytest

from stochbar.network import NetworkSpec, build_network
from stochbar.synth import load_or_generate
from stochbar.train import train_reference_network

DESK_DIMS = [784, 64, 32, 10]
DATA_SEED = 7
TRAIN_SEED = 3


@pytest.fixture(scope="session")
def digit_data(tmp_path_factory):
    root = tmp_path_factory.mktemp("digits")
    return load_or_generate(root, 6000, 2000, DATA_SEED)


@pytest.fixture(scope="session")
def digit_dir(tmp_path_factory):
    root = tmp_path_factory.mktemp("digit_files")
    load_or_generate(root, 800, 300, DATA_SEED)
    return root


@pytest.fixture(scope="session")
def desk_weights(digit_data):
    train, _ = digit_data
    return train_reference_network(
        train.flat(), train.labels, DESK_DIMS, epochs=8, seed=TRAIN_SEED
    )


@pytest.fixture(scope="session")
def desk_net(desk_weights):
    return build_network(desk_weights, NetworkSpec(dims=tuple(DESK_DIMS)))


@pytest.fixture
def announce(capsys):
    """Print a line that survives pytest's output capture."""

    def _announce(line: str) -> None:
        with capsys.disabled():
            print(line)

    return _announce


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
