import pytest

from drgq.catalogue import CATALOGUE, build_bundle


@pytest.fixture(scope="session")
def bundles():
    """One fully analyzed bundle per catalogue member, shared session-wide.

    Q-polynomial reports are computed lazily inside each bundle and cached,
    so the expensive sweeps run at most once per session.
    """
    return {spec: build_bundle(spec) for spec in CATALOGUE}
