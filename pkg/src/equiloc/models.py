"""Shipped fixed-point models and GKM graphs (JSON files under ``data/``)."""

from __future__ import annotations

import json
from importlib import resources


def _read(filename: str) -> dict:
    return json.loads(resources.files("equiloc").joinpath("data", filename).read_text())


def builtin_names() -> list[str]:
    return sorted(p.name for p in resources.files("equiloc").joinpath("data").iterdir()
                  if p.name.endswith(".json"))


def load_builtin_model(name: str):
    from .localize import model_from_dict

    return model_from_dict(_read(f"{name}.json"))


def load_builtin_graph(name: str):
    from .gkm import graph_from_dict

    return graph_from_dict(_read(f"{name}.graph.json"))


def s2():
    return load_builtin_model("s2")


def cp2():
    return load_builtin_model("cp2")
