import json
from pathlib import Path

import pytest

ADAPTER_ROOT = Path(__file__).parent.parent


@pytest.fixture(scope="session")
def fixture_table():
    return json.loads((ADAPTER_ROOT / "fixtures" / "parses.json").read_text())


@pytest.fixture(scope="session")
def schemas():
    out = {}
    for path in (ADAPTER_ROOT / "schemas").glob("*.json"):
        out[path.stem] = json.loads(path.read_text())
    return out


@pytest.fixture(scope="session")
def client(fixture_table):
    from fastapi.testclient import TestClient

    from parse_adapter.backends import FixtureBackend
    from parse_adapter.service import create_app

    backend = FixtureBackend(fixture_table)
    return TestClient(create_app(backend))
