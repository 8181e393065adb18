"""Regression checks against values frozen by scripts/freeze_baselines.py."""
import json
from pathlib import Path

import pytest

import freeze_baselines

BASE = json.loads((Path(__file__).parent / "baselines.json").read_text())


@pytest.fixture(scope="module")
def fresh():
    return freeze_baselines.compute()


def test_keys_match(fresh):
    assert set(fresh) == set(BASE)


@pytest.mark.parametrize("key", sorted(BASE))
def test_value_matches(fresh, key):
    if isinstance(BASE[key], bool):
        assert fresh[key] is BASE[key]
    else:
        assert fresh[key] == pytest.approx(BASE[key], rel=1e-9, abs=1e-15)
