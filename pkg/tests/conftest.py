import numpy as np
import pytest

from qinv.reflection_group import generate_closure, group_generators


@pytest.fixture(scope="session")
def W():
    return generate_closure(group_generators("W"))


@pytest.fixture(scope="session")
def W_nu():
    return generate_closure(group_generators("W+nu"))


@pytest.fixture(scope="session")
def W_tilde():
    return generate_closure(group_generators("Wtilde"))


@pytest.fixture
def rng():
    return np.random.default_rng(12345)
