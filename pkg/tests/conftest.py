import pytest

from fixitylab.zoo import resolve_group


@pytest.fixture(scope="session")
def group_cache():
    """One shared PermGroup per selector; context caching keys on identity."""
    cache = {}

    def get(selector: str):
        if selector not in cache:
            cache[selector] = resolve_group(selector)[1]
        return cache[selector]

    return get


@pytest.fixture(scope="session")
def psl2_9(group_cache):
    return group_cache("psl2_9")


@pytest.fixture(scope="session")
def sym4(group_cache):
    return group_cache("sym_4")


@pytest.fixture(scope="session")
def alt5(group_cache):
    return group_cache("alt_5")
