"""Bundled Hadamard matrices: all classes of order <= 20 plus the order-36 pair."""

from __future__ import annotations

from functools import lru_cache
from importlib import resources

from .signmatrix import SignMatrix

NAMES = (
    "H1", "H2", "H4", "H8", "H12", "H12-switched",
    "H16.0", "H16.1", "H16.2", "H16.3", "H16.4",
    "H20.0", "H20.1", "H20.2",
    "H36", "H36-switched", "H36.n", "H36.n-switched",
)  # fmt: skip

ALIASES = {
    "H'12": "H12-switched",
    "H′12": "H12-switched",
    "H'36": "H36-switched",
    "H′36": "H36-switched",
    "H'36.n": "H36.n-switched",
    "H′36.n": "H36.n-switched",
}

ORDER16 = ("H16.0", "H16.1", "H16.2", "H16.3", "H16.4")
ORDER20 = ("H20.0", "H20.1", "H20.2")


def resolve(name: str) -> str:
    name = ALIASES.get(name, name)
    if name not in NAMES:
        raise KeyError(f"unknown fixture {name!r}")
    return name


@lru_cache(maxsize=None)
def load(name: str) -> SignMatrix:
    from .io import parse_matrix

    text = resources.files(__package__).joinpath("data", f"{resolve(name)}.txt").read_text()
    return parse_matrix(text, "plusminus")


def raw_text(name: str) -> str:
    return resources.files(__package__).joinpath("data", f"{resolve(name)}.txt").read_text()


def all_fixtures() -> dict[str, SignMatrix]:
    return {n: load(n) for n in NAMES}
