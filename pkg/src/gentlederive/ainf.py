"""Quivers of type A infinity-infinity: vertices are the integers.

Each edge {i, i+1} is either ascending (i -> i+1) or descending (i+1 -> i).
``Linear`` is ascending everywhere.  ``Zigzag(p, q)`` is ascending on [0, q],
descending on [-p, 0] and periodic with period p + q, so sources sit at
multiples of p + q and sinks at q modulo p + q.
"""
from __future__ import annotations

from dataclasses import dataclass


@dataclass(frozen=True)
class AInfQuiver:
    p: int = 0
    q: int = 1

    def __post_init__(self):
        if self.p < 0 or self.q < 1:
            raise ValueError("need p >= 0 and q >= 1")

    @property
    def period(self) -> int:
        return self.p + self.q

    @property
    def is_linear(self) -> bool:
        return self.p == 0

    def ascending(self, i: int) -> bool:
        """Orientation of the edge {i, i+1}."""
        return i % self.period < self.q

    def arrow(self, i: int) -> tuple[int, int]:
        return (i, i + 1) if self.ascending(i) else (i + 1, i)

    def sigma_step(self) -> int:
        """How far the standard automorphism moves a vertex (to the left)."""
        return 1 if self.is_linear else self.period

    def orientation_word(self, lo: int, hi: int) -> str:
        return "".join("+" if self.ascending(i) else "-" for i in range(lo, hi))

    def name(self) -> str:
        return "Linear" if self.is_linear else f"Zigzag({self.p},{self.q})"


def Linear() -> AInfQuiver:
    return AInfQuiver(0, 1)


def Zigzag(p: int, q: int) -> AInfQuiver:
    if p < 1:
        raise ValueError("Zigzag needs p >= 1; use Linear for p = 0")
    return AInfQuiver(p, q)
