"""Shared fixtures: the packaged knot table loads once per session."""

import pytest

from jonesmod.knotdb import load_db


@pytest.fixture(scope="session")
def db():
    return load_db()
