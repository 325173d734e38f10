"""Surfaces obtained by gluing a convex 2N-gon, and Z^N homology bookkeeping.

Opposite sides and all corners of the polygon are identified.  Even N gives a
smooth genus N/2 surface, odd N a genus (N-1)/2 surface pinched at one point.
Either way the Euler characteristic is 2 - N.
"""

from __future__ import annotations

from dataclasses import dataclass


class UnsupportedSurfaceError(ValueError):
    pass


@dataclass(frozen=True)
class PolygonSurface:
    side_pairs: int
    genus: int
    smooth: bool
    euler_char: int

    def __str__(self):
        kind = "smooth" if self.smooth else "pinched"
        return f"N={self.side_pairs} genus={self.genus} {kind} chi={self.euler_char}"


def make_surface(side_pairs: int) -> PolygonSurface:
    if not isinstance(side_pairs, int) or side_pairs < 2:
        raise UnsupportedSurfaceError(f"need at least 2 side pairs, got {side_pairs!r}")
    smooth = side_pairs % 2 == 0
    genus = side_pairs // 2 if smooth else (side_pairs - 1) // 2
    return PolygonSurface(side_pairs, genus, smooth, 2 - side_pairs)


def h1_rank(surface: PolygonSurface) -> int:
    """Rank of the crossing-vector lattice (one coordinate per side pair)."""
    return surface.side_pairs


@dataclass(frozen=True)
class HomologyClass:
    """Signed crossing counts with the N side pairs of the polygon."""

    coords: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "HomologyClass":
        return cls((0,) * n)

    def __add__(self, other: "HomologyClass") -> "HomologyClass":
        if len(self.coords) != len(other.coords):
            raise ValueError("homology classes of different rank")
        return HomologyClass(tuple(a + b for a, b in zip(self.coords, other.coords)))

    def __neg__(self) -> "HomologyClass":
        return HomologyClass(tuple(-a for a in self.coords))

    def __sub__(self, other: "HomologyClass") -> "HomologyClass":
        return self + (-other)

    def is_zero(self) -> bool:
        return not any(self.coords)

    def __str__(self):
        return "(" + ",".join(str(c) for c in self.coords) + ")"
