"""Exact arithmetic on ℚ/ℤ and ℤ/m.

Everything here is integer-only. ``QZElem`` is kept in lowest terms with
``0 <= numerator < denominator`` so that structural equality is equality in
ℚ/ℤ; the zero element is always ``0/1``.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .errors import PreconditionError

__all__ = [
    "QZElem",
    "ZModM",
    "qz_add",
    "qz_neg",
    "qz_order",
    "qz_scale",
    "lcm",
    "subgroup_contains",
    "subgroup_elements",
]


def lcm(a: int, b: int) -> int:
    return a // gcd(a, b) * b if a and b else 0


@dataclass(frozen=True)
class QZElem:
    """An element of ℚ/ℤ in lowest terms."""

    numerator: int
    denominator: int

    def __post_init__(self) -> None:
        if self.denominator < 1:
            raise PreconditionError(f"denominator must be positive, got {self.denominator}")
        if not 0 <= self.numerator < self.denominator:
            raise PreconditionError(
                f"numerator must lie in [0, {self.denominator}), got {self.numerator}"
            )
        if gcd(self.numerator, self.denominator) != 1 or (
            self.numerator == 0 and self.denominator != 1
        ):
            raise PreconditionError(
                f"{self.numerator}/{self.denominator} is not in lowest terms; use QZElem.of"
            )

    @classmethod
    def of(cls, numerator: int, denominator: int = 1) -> QZElem:
        """Reduce ``numerator/denominator`` modulo ℤ into canonical form."""
        if denominator == 0:
            raise PreconditionError("denominator must be non-zero")
        if denominator < 0:
            numerator, denominator = -numerator, -denominator
        numerator %= denominator
        g = gcd(numerator, denominator)
        return cls(numerator // g, denominator // g)

    @classmethod
    def zero(cls) -> QZElem:
        return cls(0, 1)

    def is_zero(self) -> bool:
        return self.numerator == 0

    def __add__(self, other: QZElem) -> QZElem:
        if not isinstance(other, QZElem):
            return NotImplemented
        return qz_add(self, other)

    def __neg__(self) -> QZElem:
        return qz_neg(self)

    def __sub__(self, other: QZElem) -> QZElem:
        if not isinstance(other, QZElem):
            return NotImplemented
        return qz_add(self, qz_neg(other))

    def __mul__(self, k: int) -> QZElem:
        if not isinstance(k, int):
            return NotImplemented
        return qz_scale(self, k)

    __rmul__ = __mul__

    def __str__(self) -> str:
        return f"{self.numerator}/{self.denominator}"


def qz_add(a: QZElem, b: QZElem) -> QZElem:
    d = lcm(a.denominator, b.denominator)
    return QZElem.of(a.numerator * (d // a.denominator) + b.numerator * (d // b.denominator), d)


def qz_neg(a: QZElem) -> QZElem:
    return QZElem.of(-a.numerator, a.denominator)


def qz_scale(a: QZElem, k: int) -> QZElem:
    return QZElem.of(k * a.numerator, a.denominator)


def qz_order(a: QZElem) -> int:
    # lowest terms make the order exactly the denominator
    return a.denominator


@dataclass(frozen=True)
class ZModM:
    """A residue class ``value mod modulus`` with ``0 <= value < modulus``."""

    value: int
    modulus: int

    def __post_init__(self) -> None:
        if self.modulus < 1:
            raise PreconditionError(f"modulus must be positive, got {self.modulus}")
        if not 0 <= self.value < self.modulus:
            raise PreconditionError(f"value must lie in [0, {self.modulus}), got {self.value}")

    @classmethod
    def of(cls, value: int, modulus: int) -> ZModM:
        if modulus < 1:
            raise PreconditionError(f"modulus must be positive, got {modulus}")
        return cls(value % modulus, modulus)

    def _check(self, other: ZModM) -> None:
        if other.modulus != self.modulus:
            raise PreconditionError(
                f"moduli differ: {self.modulus} vs {other.modulus}"
            )

    def __add__(self, other: ZModM) -> ZModM:
        if not isinstance(other, ZModM):
            return NotImplemented
        self._check(other)
        return ZModM((self.value + other.value) % self.modulus, self.modulus)

    def __neg__(self) -> ZModM:
        return ZModM((-self.value) % self.modulus, self.modulus)

    def __sub__(self, other: ZModM) -> ZModM:
        if not isinstance(other, ZModM):
            return NotImplemented
        return self + (-other)

    def __mul__(self, k: int) -> ZModM:
        if not isinstance(k, int):
            return NotImplemented
        return ZModM((self.value * k) % self.modulus, self.modulus)

    __rmul__ = __mul__

    def order(self) -> int:
        return self.modulus // gcd(self.value, self.modulus)

    def __str__(self) -> str:
        return f"{self.value} mod {self.modulus}"


def subgroup_contains(modulus: int, generator: ZModM, target: ZModM) -> bool:
    """Is ``target`` in the cyclic subgroup of ℤ/modulus generated by ``generator``?"""
    if generator.modulus != modulus or target.modulus != modulus:
        raise PreconditionError(
            f"expected modulus {modulus}, got generator mod {generator.modulus} "
            f"and target mod {target.modulus}"
        )
    # gcd(0, m) = m, so the trivial subgroup is handled without a special case
    return target.value % gcd(generator.value, modulus) == 0


def subgroup_elements(modulus: int, generator: int) -> frozenset[int]:
    """Enumerate ``{k * generator mod modulus}``; the brute-force counterpart of
    :func:`subgroup_contains`."""
    return frozenset((k * generator) % modulus for k in range(modulus))
