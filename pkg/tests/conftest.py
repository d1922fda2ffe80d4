import pytest
from hypothesis import HealthCheck, settings

# every property runs 1000 derandomized cases
settings.register_profile(
    "detsolve",
    max_examples=1000,
    derandomize=True,
    deadline=None,
    suppress_health_check=[HealthCheck.too_slow, HealthCheck.data_too_large],
)
settings.load_profile("detsolve")

PROPERTY_KEY = pytest.StashKey[dict]()


def _is_property(item):
    return getattr(getattr(item, "obj", None), "is_hypothesis_test", False)


def pytest_collection_modifyitems(config, items):
    # acceptance last, so criterion 9 can report on the property tests of this session
    items.sort(key=lambda it: it.path.name == "test_acceptance.py")
    config.stash[PROPERTY_KEY] = {
        "ids": {it.nodeid for it in items if _is_property(it)},
        "ran": 0,
        "failed": [],
    }


@pytest.hookimpl(hookwrapper=True)
def pytest_runtest_makereport(item, call):
    outcome = yield
    rep = outcome.get_result()
    state = item.config.stash.get(PROPERTY_KEY, None)
    if state is None or item.nodeid not in state["ids"]:
        return
    if rep.when == "call" or (rep.when == "setup" and rep.failed):
        state["ran"] += 1
        if rep.failed:
            state["failed"].append(item.nodeid)
