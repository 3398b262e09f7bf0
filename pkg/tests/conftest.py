import pytest

from gainslab import Polarization, solve_singularity


@pytest.fixture(scope="session")
def ss20_te():
    return solve_singularity(3.4, 20.0, 400e-6, Polarization.TE,
                             target_wavelength=1500e-9)


@pytest.fixture(scope="session")
def ss20_tm():
    return solve_singularity(3.4, 20.0, 400e-6, Polarization.TM,
                             target_wavelength=1500e-9)


@pytest.fixture(scope="session")
def ss80_te():
    return solve_singularity(3.4, 80.0, 400e-6, Polarization.TE,
                             target_wavelength=1500e-9)


@pytest.fixture(scope="session")
def ss80_tm():
    return solve_singularity(3.4, 80.0, 400e-6, Polarization.TM,
                             target_wavelength=1500e-9)
