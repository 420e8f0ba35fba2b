import os

import pytest

from folclass import GF
from folclass.derivation import LieCase
from folclass.enumerator import verify_completeness


def _jobs():
    env = os.environ.get("FOLCLASS_JOBS")
    if env:
        return max(1, int(env))
    return 1


@pytest.fixture(scope="session")
def F2():
    return GF(2)


@pytest.fixture(scope="session")
def F4():
    spec = GF(4)
    spec.tables()
    return spec


@pytest.fixture(scope="session")
def F8():
    spec = GF(8)
    spec.tables()
    return spec


@pytest.fixture(scope="session")
def F16():
    return GF(16)


@pytest.fixture(scope="session")
def F9():
    return GF(9)


@pytest.fixture(scope="session")
def gf4_reports(F4):
    return {case: verify_completeness(F4, case, max_ext=6, jobs=_jobs()) for case in LieCase}


@pytest.fixture(scope="session")
def gf8_reports(F8):
    return {case: verify_completeness(F8, case, max_ext=6, jobs=_jobs()) for case in LieCase}
