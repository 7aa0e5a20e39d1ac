import numpy as np
import pytest

from intergraph import all_subgroups, build, make_field
from intergraph.datasets import load_preset


def pytest_addoption(parser):
    parser.addoption(
        "--runslow", action="store_true", default=False, help="run slow tests"
    )


def pytest_collection_modifyitems(config, items):
    if config.getoption("--runslow"):
        return
    skip_slow = pytest.mark.skip(reason="needs --runslow")
    for item in items:
        if "slow" in item.keywords:
            item.add_marker(skip_slow)


@pytest.fixture(scope='function', autouse=True)
def set_seed():
    np.random.seed(0)


@pytest.fixture(scope='session')
def gf9():
    return make_field(3, 2)


@pytest.fixture(scope='session')
def gf16():
    return make_field(2, 4)


@pytest.fixture(scope='session')
def a5_preset():
    return load_preset("a5")


@pytest.fixture(scope='session')
def a5_lattice(a5_preset):
    return all_subgroups(a5_preset.group)


@pytest.fixture(scope='session')
def a5_graph(a5_lattice):
    return build(a5_lattice)


@pytest.fixture(scope='session')
def s3_lattice():
    return all_subgroups(load_preset("s3").group)


@pytest.fixture(scope='session')
def psl2_7_lattice():
    return all_subgroups(load_preset("psl2_7").group)


@pytest.fixture(scope="session")
def tmp_folder(tmpdir_factory):
    folder = tmpdir_factory.mktemp("intergraph_reports")
    return str(folder)
