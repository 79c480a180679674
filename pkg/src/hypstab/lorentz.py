"""Lorentzian linear algebra for the hyperboloid model of hyperbolic space.

Vectors live in Minkowski space with signature (-, +, ..., +), timelike
coordinate first.  Hyperbolic space of dimension d is realized as the upper
sheet of the unit timelike hyperboloid <x, x> = -1, x1 >= 1, inside the
(d+1)-dimensional Minkowski space.  Dimension is carried by the coordinate
tuple itself; mixing dimensions is rejected, not broadcast.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterator, Sequence, Union

__all__ = ["LorentzVector", "minkowski_inner", "on_hyperboloid"]

CoordsLike = Union["LorentzVector", Sequence[float]]


@dataclass(frozen=True)
class LorentzVector:
    """Point or tangent vector in Minkowski space, timelike coordinate first."""

    coords: tuple[float, ...]

    def __post_init__(self) -> None:
        coords = tuple(float(c) for c in self.coords)
        if len(coords) < 2:
            raise ValueError("LorentzVector needs at least two coordinates")
        object.__setattr__(self, "coords", coords)

    @property
    def dim(self) -> int:
        return len(self.coords)

    def __iter__(self) -> Iterator[float]:
        return iter(self.coords)

    def __getitem__(self, i: int) -> float:
        return self.coords[i]

    def __len__(self) -> int:
        return len(self.coords)


def _coords(x: CoordsLike) -> tuple[float, ...]:
    if isinstance(x, LorentzVector):
        return x.coords
    return tuple(float(c) for c in x)


def minkowski_inner(x: CoordsLike, y: CoordsLike) -> float:
    """Indefinite product -x1*y1 + sum_{i>=2} xi*yi.

    Accepts LorentzVector or any coordinate sequence.  The arguments must
    have equal dimension; a mismatch raises ValueError.
    """
    xc = _coords(x)
    yc = _coords(y)
    if len(xc) != len(yc):
        raise ValueError(f"dimension mismatch: {len(xc)} vs {len(yc)}")
    acc = -xc[0] * yc[0]
    for xi, yi in zip(xc[1:], yc[1:]):
        acc += xi * yi
    return acc


def on_hyperboloid(x: CoordsLike, tol: float) -> bool:
    """True iff x lies on the upper unit hyperboloid within tolerance tol.

    Checks |<x, x> + 1| <= tol together with x1 >= 1 - tol.
    """
    if not tol > 0.0:
        raise ValueError(f"tol must be positive, got {tol}")
    xc = _coords(x)
    return abs(minkowski_inner(xc, xc) + 1.0) <= tol and xc[0] >= 1.0 - tol
