import json
import os
from pathlib import Path

import pytest

import eaforage

CONFIG_DIR = Path(os.environ.get("EAFORAGE_CONFIG_DIR", Path(__file__).resolve().parents[2] / "configs"))


def paper():
    return (CONFIG_DIR / "paper.cfg").read_text()


def test_default_config_round_trips():
    text = eaforage.default_config()
    cfg = json.loads(text)
    assert cfg["n_robots"] == 5
    assert eaforage.config_hash(text) == eaforage.config_hash(paper())


def test_run_is_deterministic():
    a = eaforage.run(paper(), seed=3, iterations=200)
    b = eaforage.run(paper(), seed=3, iterations=200)
    assert a["trace"] == b["trace"]
    assert a["metrics"]["ticks"] == 200
    assert len(a["final_energy"]) == 5
    assert all(0.0 <= e <= 100.0 for e in a["final_energy"])


def test_bad_config_raises():
    cfg = json.loads(paper())
    cfg["n_stations"] = 0
    cfg["stations"] = []
    with pytest.raises(eaforage.ConfigError):
        eaforage.run(json.dumps(cfg))
    with pytest.raises(eaforage.ConfigError):
        eaforage.load_config(CONFIG_DIR / "no_such.cfg")


def test_unknown_strategy():
    with pytest.raises(ValueError):
        eaforage.run(paper(), strategy="teleport")


def test_summary_table():
    csv = eaforage.summary(paper(), ["proposed", "baseline"], seeds="1..2")
    lines = csv.strip().splitlines()
    assert lines[0] == "Performance Indices,Proposed w/ deadlock avoidance,Baseline"
    assert len(lines) == 8


def test_energy_helpers():
    assert eaforage.energy_tick(100.0, 0.0) == pytest.approx(99.9)
    assert eaforage.energy_tick(0.05, 0.0) == 0.0
    assert eaforage.recharge_tick(99.8) == 100.0
    assert eaforage.parse_seeds("2..4") == [2, 3, 4]
