"""Constant Brauer classes and the local symbol calculus.

A constant class is an element [A₀] of Br k ≅ ℚ/ℤ pulled back to the curve.
Its exponent over the function field K and over each completion K_v depend
only on degrees: passing to κ(v) multiplies the class by deg(v), and the
kernel of Br k → Br K is the cyclic subgroup of order I(X).

The symbol part models H¹(K_v, μ_m) ≅ (ℤ/m)³ in the basis π^r δ^s u^t and,
when K_v holds a primitive m-th root of unity ω, ₘBr(K_v) ≅ (ℤ/m)³ in the
basis (δ,u)_ω, (π,δ)_ω, (π,u)_ω.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd

from .arith import QZElem, ZModM, qz_order
from .curve import Curve, Divisor, Place, divisor_degree
from .errors import HypothesisError, PreconditionError, ValidationError

__all__ = [
    "BrauerClass",
    "SymbolH1",
    "SymbolH2",
    "exponent_over_K",
    "local_exponent",
    "lift_to_full_exponent",
    "lichtenbaum_pair",
    "rost_residue",
    "residue",
    "specialize",
    "inflation",
    "h1_valuation",
    "h1_residue_class",
]


@dataclass(frozen=True)
class BrauerClass:
    """A constant class [A₀] ∈ Br k; ``base_exponent`` is its order m₀."""

    base_class: QZElem

    @classmethod
    def of(cls, numerator: int, denominator: int) -> BrauerClass:
        return cls(QZElem.of(numerator, denominator))

    @property
    def base_exponent(self) -> int:
        return qz_order(self.base_class)

    def __str__(self) -> str:
        return str(self.base_class)


def exponent_over_K(A: BrauerClass, c: Curve) -> int:
    m0 = A.base_exponent
    return m0 // gcd(c.index, m0)


def local_exponent(A: BrauerClass, v: Place) -> int:
    """m_v, the exponent of A ⊗ K_v and the order of H¹(K_v, SL₁(A))."""
    m0 = A.base_exponent
    return m0 // gcd(v.degree, m0)


def lift_to_full_exponent(A: BrauerClass, c: Curve) -> BrauerClass:
    """A class [A₁] = [A₀] + α with α ∈ ker(Br k → Br K) and order m·I(X).

    Kernel elements α = j/I(X) are scanned by increasing j, first among those
    of order exactly I(X), then among all of them. The first family does not
    always contain a valid α (for [A₀] = 1/2 and I(X) = 2 it only offers
    1/2, which kills the class), the second always does.
    """
    index = c.index
    target = exponent_over_K(A, c) * index
    exact = [j for j in range(index) if gcd(j, index) == 1]
    rest = [j for j in range(index) if gcd(j, index) != 1]
    for j in exact + rest:
        candidate = A.base_class + QZElem.of(j, index)
        if qz_order(candidate) == target:
            return BrauerClass(candidate)
    raise AssertionError(f"no lift of {A} of order {target}")  # pragma: no cover


def lichtenbaum_pair(A: BrauerClass, z: Divisor, c: Curve) -> QZElem:
    """Evaluation pairing of a constant class with a divisor: (deg z)·[A₀]."""
    return A.base_class * divisor_degree(c, z)


def rost_residue(A: BrauerClass, v: Place, valuation: int) -> QZElem:
    """Contribution of a class of valuation n at v to f_H.

    The Rost invariant of [x] is (x) ∪ [A]; its residue at v is n·v*[A] in
    Br κ(v), and corestriction to Br k multiplies the constant evaluation by
    deg(v).
    """
    evaluated = A.base_class * valuation
    return evaluated * v.degree


# -- symbol calculus ---------------------------------------------------------


def _same_modulus(modulus: int, *parts: ZModM) -> None:
    if modulus < 1:
        raise ValidationError(f"modulus must be positive, got {modulus}")
    for part in parts:
        if part.modulus != modulus:
            raise ValidationError(
                f"symbol component modulus {part.modulus} does not match {modulus}"
            )


@dataclass(frozen=True)
class SymbolH1:
    """π^r δ^s u^t in K_v^×/K_v^{×m}."""

    modulus: int
    r_pi: ZModM
    r_delta: ZModM
    r_u: ZModM

    def __post_init__(self) -> None:
        _same_modulus(self.modulus, self.r_pi, self.r_delta, self.r_u)

    @classmethod
    def of(cls, r: int, s: int, t: int, m: int) -> SymbolH1:
        return cls(m, ZModM.of(r, m), ZModM.of(s, m), ZModM.of(t, m))


@dataclass(frozen=True)
class SymbolH2:
    """r(δ,u)_ω + s(π,δ)_ω + t(π,u)_ω in ₘBr(K_v).

    ``has_primitive_root`` records whether the ambient K_v contains a
    primitive m-th root of unity; the presentation is only valid if it does.
    """

    modulus: int
    c_du: ZModM
    c_pd: ZModM
    c_pu: ZModM
    has_primitive_root: bool = False

    def __post_init__(self) -> None:
        _same_modulus(self.modulus, self.c_du, self.c_pd, self.c_pu)

    @classmethod
    def of(cls, r: int, s: int, t: int, m: int, has_primitive_root: bool = True) -> SymbolH2:
        return cls(m, ZModM.of(r, m), ZModM.of(s, m), ZModM.of(t, m), has_primitive_root)

    def __add__(self, other: SymbolH2) -> SymbolH2:
        if not isinstance(other, SymbolH2):
            return NotImplemented
        if other.modulus != self.modulus:
            raise PreconditionError(f"moduli differ: {self.modulus} vs {other.modulus}")
        return SymbolH2(
            self.modulus,
            self.c_du + other.c_du,
            self.c_pd + other.c_pd,
            self.c_pu + other.c_pu,
            self.has_primitive_root and other.has_primitive_root,
        )


def _require_root(x: SymbolH2) -> None:
    if not x.has_primitive_root:
        raise HypothesisError(
            f"K_v must contain a primitive {x.modulus}-th root of unity for the symbol presentation"
        )


def residue(x: SymbolH2) -> tuple[ZModM, ZModM]:
    """∂_v: returns the exponents (s, t) of δ̄^s ū^t in H¹(κ(v), μ_m)."""
    _require_root(x)
    return x.c_pd, x.c_pu


def specialize(x: SymbolH2) -> ZModM:
    """The retraction s_π: returns r, the coefficient of (δ̄, ū)_ω̄ in ₘBr κ(v)."""
    _require_root(x)
    return x.c_du


def inflation(r: ZModM, has_primitive_root: bool = True) -> SymbolH2:
    """Embed r·(δ̄,ū)_ω̄ ∈ ₘBr κ(v) into ₘBr(K_v)."""
    m = r.modulus
    return SymbolH2(m, r, ZModM(0, m), ZModM(0, m), has_primitive_root)


def h1_valuation(x: SymbolH1) -> ZModM:
    """Valuation of π^r δ^s u^t modulo m, i.e. its image r in H⁰(κ(v), ℤ/m)."""
    return x.r_pi


def h1_residue_class(x: SymbolH1) -> tuple[ZModM, ZModM]:
    """The unit part δ̄^s ū^t in κ(v)^×/κ(v)^{×m}."""
    return x.r_delta, x.r_u
