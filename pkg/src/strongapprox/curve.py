"""Finite model of a curve over a p-adic field.

A curve is reduced to the only data the inner-type computations consume: a
registry of closed points with their residue degrees, the declared index
I(X), and the set of m for which Pic⁰(X)/m = 0 is asserted. The model is
declared, never computed from equations, and the Pic⁰ flag is trusted.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import reduce
from math import gcd
from typing import Iterable, Mapping

from .errors import ModelInconsistencyError, UnknownPlaceError, ValidationError

__all__ = [
    "Place",
    "Curve",
    "Divisor",
    "divisor_degree",
    "index_of_set",
    "make_projective_line",
]


@dataclass(frozen=True)
class Place:
    id: str
    degree: int

    def __post_init__(self) -> None:
        if not isinstance(self.id, str) or not self.id:
            raise ValidationError(f"place id must be a non-empty string, got {self.id!r}")
        if not isinstance(self.degree, int) or isinstance(self.degree, bool) or self.degree < 1:
            raise ValidationError(f"place {self.id!r}: degree must be a positive integer, got {self.degree!r}")


@dataclass(frozen=True)
class Curve:
    """Declared curve data.

    ``pic0_trivial_mod`` lists the m with Pic⁰(X)/m = 0; ``pic0_trivial_all``
    asserts it for every m (true for the projective line).
    """

    index: int
    places: tuple[Place, ...]
    pic0_trivial_mod: frozenset[int] = frozenset()
    pic0_trivial_all: bool = False
    label: str = ""
    _by_id: dict[str, Place] = field(init=False, repr=False, compare=False)

    def __post_init__(self) -> None:
        if not isinstance(self.index, int) or isinstance(self.index, bool) or self.index < 1:
            raise ValidationError(f"index must be a positive integer, got {self.index!r}")
        object.__setattr__(self, "places", tuple(self.places))
        object.__setattr__(self, "pic0_trivial_mod", frozenset(self.pic0_trivial_mod))
        for m in self.pic0_trivial_mod:
            if not isinstance(m, int) or m < 1:
                raise ValidationError(f"pic0_trivial_mod entries must be positive integers, got {m!r}")
        by_id: dict[str, Place] = {}
        for place in self.places:
            if place.id in by_id:
                raise ValidationError(f"duplicate place id {place.id!r}")
            if place.degree % self.index:
                raise ModelInconsistencyError(
                    f"index {self.index} does not divide degree {place.degree} of place {place.id!r}"
                )
            by_id[place.id] = place
        object.__setattr__(self, "_by_id", by_id)

    def place(self, place_id: str) -> Place:
        try:
            return self._by_id[place_id]
        except KeyError:
            raise UnknownPlaceError(place_id) from None

    def __contains__(self, place_id: object) -> bool:
        return place_id in self._by_id

    def place_ids(self) -> list[str]:
        """Registered ids in the deterministic scan order used everywhere."""
        return sorted(self._by_id)

    def pic0_trivial(self, m: int) -> bool:
        # Pic⁰(X)/1 = 0 holds for any curve
        return m == 1 or self.pic0_trivial_all or m in self.pic0_trivial_mod


class Divisor:
    """A finitely supported formal sum Σ n_v·v, stored sparsely (no zero coefficients)."""

    __slots__ = ("_coefficients",)

    def __init__(self, coefficients: Mapping[str, int] | None = None) -> None:
        coeffs = {}
        for place_id, n in (coefficients or {}).items():
            if not isinstance(n, int) or isinstance(n, bool):
                raise ValidationError(f"coefficient of {place_id!r} must be an integer, got {n!r}")
            if n:
                coeffs[place_id] = n
        self._coefficients = coeffs

    @property
    def coefficients(self) -> dict[str, int]:
        return dict(self._coefficients)

    def support(self) -> frozenset[str]:
        return frozenset(self._coefficients)

    def items(self):
        return sorted(self._coefficients.items())

    def __add__(self, other: Divisor) -> Divisor:
        if not isinstance(other, Divisor):
            return NotImplemented
        out = dict(self._coefficients)
        for place_id, n in other._coefficients.items():
            out[place_id] = out.get(place_id, 0) + n
        return Divisor(out)

    def __neg__(self) -> Divisor:
        return Divisor({k: -n for k, n in self._coefficients.items()})

    def __eq__(self, other: object) -> bool:
        return isinstance(other, Divisor) and self._coefficients == other._coefficients

    def __hash__(self) -> int:
        return hash(frozenset(self._coefficients.items()))

    def __repr__(self) -> str:
        return f"Divisor({dict(self.items())!r})"

    def check(self, curve: Curve) -> None:
        for place_id in self._coefficients:
            curve.place(place_id)


def divisor_degree(curve: Curve, z: Divisor) -> int:
    return sum(n * curve.place(place_id).degree for place_id, n in z.items())


def index_of_set(curve: Curve, S: Iterable[str]) -> int:
    """I(S): gcd of the degrees of the places in S."""
    degrees = [curve.place(place_id).degree for place_id in S]
    if not degrees:
        raise ValidationError("the index of an empty set of places is undefined")
    return reduce(gcd, degrees)


def make_projective_line(prime_label: str, max_degree: int) -> Curve:
    """𝐏¹ over the p-adic field named by ``prime_label``, with one synthetic
    place ``deg<d>`` of each degree d in 1..max_degree."""
    if max_degree < 1:
        raise ValidationError(f"max_degree must be at least 1, got {max_degree}")
    places = [Place(f"deg{d}", d) for d in range(1, max_degree + 1)]
    return Curve(index=1, places=tuple(places), pic0_trivial_all=True, label=f"P1/{prime_label}")
