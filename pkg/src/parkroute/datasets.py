"""Bundled example data: a 31-node demo city, one survey, default weights.

city31.json is generate_example_network(seed=42), committed so the demo
network every user sees is the same file. survey50.json holds 50 survey
responses in one batch; weights.json is the weight vector used by the demos.
"""
from __future__ import annotations

from importlib.resources import files
from pathlib import Path

from .network import RoadNetwork, parse_network
from .objectives import WeightVector, parse_weights
from .weights import SurveyCounts, parse_survey


def _data(name: str):
    return files("parkroute").joinpath("data").joinpath(name)


def city31_path() -> Path:
    return Path(str(_data("city31.json")))


def survey50_path() -> Path:
    return Path(str(_data("survey50.json")))


def default_weights_path() -> Path:
    return Path(str(_data("weights.json")))


def load_city31() -> RoadNetwork:
    return parse_network(_data("city31.json").read_text())


def load_survey50() -> SurveyCounts:
    return parse_survey(_data("survey50.json").read_text())


def load_default_weights() -> WeightVector:
    return parse_weights(_data("weights.json").read_text())
