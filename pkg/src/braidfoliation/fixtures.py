"""Bundled example tilings."""

from __future__ import annotations

from importlib import resources

from braidfoliation.document import loads
from braidfoliation.tiling import Tiling

FIXTURES = {
    "disc_three_aa": "three aa tiles around vertex 2; a disc bounded by a 4-braid",
    "disc_two_pockets": "disc_three_aa with a pocket at vertex 1 and at vertex 2",
    "disc_four_pockets": "disc_two_pockets with a second pocket at vertex 1 and at vertex 2",
    "torus_checkerboard": "four bb tiles forming a closed torus (no boundary)",
}


def fixture_text(name: str) -> str:
    if name not in FIXTURES:
        raise KeyError(f"unknown fixture {name!r}; known: {', '.join(FIXTURES)}")
    return resources.files("braidfoliation").joinpath("data", f"{name}.json").read_text()


def load_fixture(name: str) -> Tiling:
    return loads(fixture_text(name))
