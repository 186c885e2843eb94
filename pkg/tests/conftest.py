"""Shared fixtures: catalog graphs, engines and labelled vertex sets"""

import logging

import pytest
from hypothesis import HealthCheck, settings

from domlab.core.engine import InvariantEngine
from domlab.graph.graph import Graph
from domlab.graph.spec import generate

settings.register_profile(
    "domlab",
    deadline=None,
    max_examples=60,
    suppress_health_check=[HealthCheck.function_scoped_fixture, HealthCheck.too_slow],
)
settings.load_profile("domlab")


@pytest.fixture(autouse=True)
def isolated_environment(monkeypatch, tmp_path):
    """Keep every test away from the user's cache and config files"""
    monkeypatch.delenv("DOMLAB_CONFIG", raising=False)
    monkeypatch.setenv("DOMLAB_CACHE", str(tmp_path / "cache.jsonl"))
    monkeypatch.chdir(tmp_path)


@pytest.fixture(autouse=True)
def restore_root_logger():
    """Drop handlers installed by setup_logging during a test"""
    root = logging.getLogger()
    handlers, level = list(root.handlers), root.level
    yield
    for handler in list(root.handlers):
        if handler not in handlers:
            root.removeHandler(handler)
            handler.close()
    root.setLevel(level)


@pytest.fixture
def house9() -> Graph:
    return generate("house9")


@pytest.fixture
def paw2() -> Graph:
    return generate("paw2")


@pytest.fixture
def path4() -> Graph:
    return generate("path:4")


@pytest.fixture
def engine_for():
    cache = {}

    def build(spec: str, node_cap=None) -> InvariantEngine:
        key = (spec, node_cap)
        if key not in cache:
            cache[key] = InvariantEngine(generate(spec), node_cap, spec=spec)
        return cache[key]

    return build

