import pytest

from hadsplit import delete_allones_transform, twin_sylvester


@pytest.fixture(scope="session")
def twin16():
    """Order-16 twin partition; reports carry (16,4,4,0) and twice (16,6,2,-2)."""
    return twin_sylvester(2)


@pytest.fixture(scope="session")
def split_16_9(twin16):
    """The (16, 9, 1, -3) split obtained by deleting the all-ones row."""
    return delete_allones_transform(twin16.h, twin16.reports[1])
