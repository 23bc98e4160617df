import hypothesis
import pytest

from thundersynth.backends import warmup

hypothesis.settings.register_profile("ci", deadline=None, max_examples=60)
hypothesis.settings.load_profile("ci")


@pytest.fixture(scope="session", autouse=True)
def warm_kernels():
    # Pay the JIT cost before any timed assertion runs.
    warmup()
