from __future__ import annotations

import json
from fractions import Fraction

import pytest

from g2forge.reproduce import TARGETS, reproduce


@pytest.mark.parametrize("target", list(TARGETS))
def test_targets_pass(target):
    rep = reproduce(target)
    assert rep.checks and rep.passed, [c.to_json() for c in rep.checks if not c.passed]
    data = json.loads(json.dumps(rep.to_json()))
    assert data["counts"]["fail"] == 0 and data["counts"]["pass"] == len(rep.checks)


def test_sweep_override_drops_points_outside_domain():
    rep = reproduce("prop4.7", {"mu": [Fraction(-5, 8), Fraction(3)]})
    assert [c.item for c in rep.checks] == ["MT1", "MT2 (mu=-5/8)", "MT3 (mu=3)"]
    assert rep.passed


def test_unknown_target():
    with pytest.raises(KeyError):
        reproduce("prop9.9")
