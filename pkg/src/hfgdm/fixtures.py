"""Access to the bundled case-study fixture documents."""

from __future__ import annotations

from importlib import resources

BUNDLED = ("smartphone.json",)


def is_bundled(name: str) -> bool:
    return name in BUNDLED


def read_text(name: str) -> str:
    """Raw JSON text of a bundled fixture document."""
    if not is_bundled(name):
        raise FileNotFoundError(name)
    return resources.files("hfgdm.data").joinpath(name).read_text("utf-8")
