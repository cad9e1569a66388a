import os
import tempfile

import pytest

# keep test runs away from the user's cache
os.environ.setdefault("FFCUBIC_CACHE", tempfile.mkdtemp(prefix="ffcubic-test-cache-"))

from ffcubic.ffield import make_field  # noqa: E402


@pytest.fixture(scope="session")
def ctx():
    return make_field(5)


@pytest.fixture(scope="session")
def ctx11():
    return make_field(11)


@pytest.fixture(scope="session")
def alpha(ctx):
    """The generator x of GF(25) = GF(5)[x]/(x^2+2), as a code."""
    return ctx.from_vec(0, 1)
