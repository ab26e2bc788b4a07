"""Shared fixtures: dressed sets are expensive enough to build once per session."""

import numpy as np
import pytest

from llasym import ModelParams, dress_all


@pytest.fixture(scope="session")
def dressed_11():
    return dress_all(ModelParams(c=1.0, h=1.0), n_nodes=96)


@pytest.fixture(scope="session")
def dressed_41():
    return dress_all(ModelParams(c=4.0, h=1.0), n_nodes=96)


@pytest.fixture(scope="session")
def dressed_162():
    return dress_all(ModelParams(c=16.0, h=2.0), n_nodes=96)


@pytest.fixture(scope="session")
def dressed_tonks():
    """Near-impenetrable coupling: free-fermion limit to ~1e-6."""
    return dress_all(ModelParams(c=1e6, h=1.0), n_nodes=96)


@pytest.fixture(scope="session")
def rng():
    return np.random.default_rng(20240817)
