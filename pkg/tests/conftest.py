import pytest

from icosa.elliptic import E0
from icosa.icosahedral import ideals_for, resolve_traces


@pytest.fixture(scope="session")
def traces_10k():
    """Traces at every good ideal of norm <= 10^4, degenerate resolvents tolerated."""
    return resolve_traces(E0, ideals_for(10**4), strict=False)


@pytest.fixture(scope="session")
def traces_200(traces_10k):
    return [t for t in traces_10k if t.ideal.norm <= 200]
