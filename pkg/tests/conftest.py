import json
import os
import sys
from functools import lru_cache

import pytest

sys.path.insert(0, os.path.dirname(__file__))

from hopfduality.algebra import DEFAULT_SEED  # noqa: E402
from hopfduality.duality import dualize  # noqa: E402
from hopfduality.groups import hopf_from_spec  # noqa: E402

CRITERIA = {
    1: "axiom suite over the fleet and twisted examples",
    2: "duality table C(G) <-> W*(G)",
    3: "reflexivity of both sides",
    4: "Pontryagin reconstruction",
    5: "twisted counterexample",
    6: "standard iff generator",
    7: "triple dual",
    8: "functor laws and D o E = id",
    9: "determinism",
}


@lru_cache(maxsize=None)
def _cached(spec_json: str, side: str):
    Mh, G = hopf_from_spec(json.loads(spec_json), side, DEFAULT_SEED)
    return Mh, G


def algebra_for(spec: dict, side: str = "function"):
    return _cached(json.dumps(spec, sort_keys=True), side)


@lru_cache(maxsize=None)
def _cached_dual(spec_json: str, side: str):
    return dualize(_cached(spec_json, side)[0], DEFAULT_SEED)


def dual_for(spec: dict, side: str = "function"):
    return _cached_dual(json.dumps(spec, sort_keys=True), side)


@pytest.fixture
def acceptance(request):
    """Record the outcome of one acceptance criterion: ``with acceptance(3): ...``."""
    store = request.config.stash.setdefault(_KEY, {})

    class _Rec:
        def __init__(self, k):
            self.k = k
            self.detail = ""

        def __call__(self, k):
            return _Rec(k)

        def __enter__(self):
            return self

        def __exit__(self, exc_type, exc, tb):
            ok = exc_type is None
            store[self.k] = (ok, self.detail if ok else f"{exc_type.__name__}: {exc}".splitlines()[0])
            print(_line(self.k, *store[self.k]))
            return False

    return _Rec(None)


_KEY = pytest.StashKey[dict]()


def _line(k, ok, detail):
    return f"criterion {k} [{'PASS' if ok else 'FAIL'}] {CRITERIA[k]}" + (f" -- {detail}" if detail else "")


def pytest_terminal_summary(terminalreporter, exitstatus, config):
    store = config.stash.get(_KEY, {})
    if not store:
        return
    terminalreporter.section("acceptance")
    for k in CRITERIA:
        if k in store:
            terminalreporter.write_line(_line(k, *store[k]))
        else:
            terminalreporter.write_line(f"criterion {k} [NOT RUN] {CRITERIA[k]}")
