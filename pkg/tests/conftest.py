import pytest

from tsckit import synthetic


@pytest.fixture(scope="session")
def gunpoint_dir(tmp_path_factory):
    """GunPoint-shaped stand-in written as archive-style .ts files."""
    data_dir = tmp_path_factory.mktemp("data")
    train, test = synthetic.gunpoint_standin()
    synthetic.write_problem(data_dir, train, test)
    return data_dir


@pytest.fixture(scope="session")
def desk_problems():
    return {
        "constant": synthetic.constant_level_problem(),
        "spectral": synthetic.spectral_problem(),
        "planted": synthetic.planted_shapelet_problem(),
    }
