"""Access to the bundled equation documents."""

from __future__ import annotations

import json
from importlib import resources

from .mahler import MahlerEquation

NAMES = (
    "powers2",
    "powers3",
    "cantor5",
    "log2floor",
    "thue_morse",
    "singular_zero",
    "singular_pole",
)

REGULAR_AT_HALF = ("powers2", "powers3", "cantor5", "thue_morse")


def load_doc(name: str) -> dict:
    if name not in NAMES:
        raise KeyError(f"unknown corpus equation {name!r}; have {NAMES}")
    path = resources.files("mahlerkit").joinpath("data", f"{name}.json")
    return json.loads(path.read_text("utf-8"))


def load(name: str) -> MahlerEquation:
    return MahlerEquation.from_json_dict(load_doc(name))


def load_all() -> dict[str, MahlerEquation]:
    return {name: load(name) for name in NAMES}
