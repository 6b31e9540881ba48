"""Outer type A: H = SU(A, τ) for A over a quadratic extension L/K.

Places of K are totally split, inert or ramified in L. At a totally split
place H becomes SL₁(A_{K_v}) and the inner-type description applies; at an
inert place with A unramified the image of 2R_H vanishes; at a ramified
place the class has exponent at most 2. A totally split place carrying an
unramified class of exponent ≥ 3 therefore produces a value that inert
S-places cannot cancel. That is a sufficient condition for failure only;
nothing here ever concludes that strong approximation holds.
"""

from __future__ import annotations

from collections.abc import Iterable, Mapping
from dataclasses import dataclass, field
from enum import Enum

from .arith import QZElem, ZModM, qz_order
from .curve import Curve, Place
from .errors import (
    ModelInconsistencyError,
    PreconditionError,
    UnknownPlaceError,
    UnsupportedCaseError,
    ValidationError,
)
from .inner import AdelicClass

__all__ = [
    "ExtensionMode",
    "RamificationType",
    "QuadExtension",
    "LocalData",
    "OuterProblem",
    "RostImage",
    "OuterVerdict",
    "classify_place",
    "two_rost_image",
    "ramified_bound",
    "check_outer_failure",
]


class ExtensionMode(str, Enum):
    CONSTANT_UNRAMIFIED = "constant_unramified"
    DECLARED = "declared"


class RamificationType(str, Enum):
    TOTALLY_SPLIT = "totally_split"
    INERT = "inert"
    RAMIFIED = "ramified"


# scenario spelling → type
DECLARED_NAMES = {
    "split": RamificationType.TOTALLY_SPLIT,
    "totally_split": RamificationType.TOTALLY_SPLIT,
    "inert": RamificationType.INERT,
    "ramified": RamificationType.RAMIFIED,
}


@dataclass(frozen=True)
class QuadExtension:
    mode: ExtensionMode
    declared_types: Mapping[str, RamificationType] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "mode", ExtensionMode(self.mode))
        object.__setattr__(
            self,
            "declared_types",
            {pid: RamificationType(t) for pid, t in dict(self.declared_types).items()},
        )

    def __hash__(self) -> int:
        return hash((self.mode, tuple(sorted(self.declared_types.items()))))


@dataclass(frozen=True)
class LocalData:
    """Local class data at v: whether [A_{L_v}] is unramified at ṽ, and its exponent."""

    unramified: bool
    exponent: int

    def __post_init__(self) -> None:
        if not isinstance(self.exponent, int) or isinstance(self.exponent, bool) or self.exponent < 1:
            raise ValidationError(f"local exponent must be a positive integer, got {self.exponent!r}")


@dataclass(frozen=True)
class OuterProblem:
    curve: Curve
    extension: QuadExtension
    local_data: Mapping[str, LocalData] = field(default_factory=dict)

    def __post_init__(self) -> None:
        object.__setattr__(self, "local_data", dict(self.local_data))
        for pid in sorted(self.local_data):
            self.curve.place(pid)
        if self.extension.mode is ExtensionMode.DECLARED:
            for pid in sorted(self.extension.declared_types):
                self.curve.place(pid)
            for pid in self.curve.place_ids():
                if pid not in self.extension.declared_types:
                    raise ValidationError(f"declared mode has no ramification type for place {pid!r}")

    def __hash__(self) -> int:
        return hash((self.curve.index, self.extension, tuple(sorted(self.local_data.items()))))

    def data(self, place_id: str) -> LocalData:
        try:
            return self.local_data[place_id]
        except KeyError:
            raise ValidationError(f"no local data for place {place_id!r}") from None


class ImageKind(str, Enum):
    ZERO = "zero"
    CYCLIC = "cyclic"
    BOUNDED_BY_2 = "bounded_by_2"


@dataclass(frozen=True)
class RostImage:
    """Image of 2R_H on H¹(K_v, H): zero, cyclic of ``order``, or of order ≤ 2."""

    kind: ImageKind
    order: int | None = None

    def max_order(self) -> int:
        if self.kind is ImageKind.ZERO:
            return 1
        if self.kind is ImageKind.BOUNDED_BY_2:
            return 2
        return self.order

    def __str__(self) -> str:
        if self.kind is ImageKind.CYCLIC:
            return f"cyclic of order {self.order}"
        return "zero" if self.kind is ImageKind.ZERO else "order <= 2"


@dataclass(frozen=True)
class OuterVerdict:
    """``failure_proven`` is False whenever the criterion is inapplicable;
    that is never a proof that strong approximation holds."""

    failure_proven: bool
    reason: str
    v0: str | None = None
    witness: AdelicClass | None = None
    witness_order: int | None = None
    s_order_bound: int | None = None


def classify_place(e: QuadExtension, v: Place) -> RamificationType:
    if e.mode is ExtensionMode.CONSTANT_UNRAMIFIED:
        # k' embeds in κ(v) exactly when 2 | [κ(v):k]
        return RamificationType.TOTALLY_SPLIT if v.degree % 2 == 0 else RamificationType.INERT
    try:
        return e.declared_types[v.id]
    except KeyError:
        raise UnknownPlaceError(v.id) from None


def two_rost_image(p: OuterProblem, v: Place) -> RostImage:
    kind = classify_place(p.extension, v)
    if kind is RamificationType.RAMIFIED:
        return RostImage(ImageKind.BOUNDED_BY_2, 2)
    data = p.data(v.id)
    if not data.unramified:
        raise UnsupportedCaseError(
            f"place {v.id!r} is {kind.value} with a class ramified at the place above it; "
            "the image of 2R_H is not determined there"
        )
    if kind is RamificationType.INERT:
        return RostImage(ImageKind.ZERO)
    return RostImage(ImageKind.CYCLIC, data.exponent)


def ramified_bound(p: OuterProblem, v: Place) -> int:
    if classify_place(p.extension, v) is not RamificationType.RAMIFIED:
        raise PreconditionError(f"place {v.id!r} is not ramified in L/K")
    exponent = p.data(v.id).exponent
    if exponent > 2:
        # Cor(Res α₀) = 2α₀ = 0 forces exponent ≤ 2
        raise ModelInconsistencyError(
            f"ramified place {v.id!r} declares exponent {exponent}, but the exponent is at most 2"
        )
    return min(exponent, 2)


def check_ramified_bounds(p: OuterProblem) -> None:
    """Enforce the exponent ≤ 2 bound at every ramified place with local data."""
    for pid in p.curve.place_ids():
        v = p.curve.place(pid)
        if pid in p.local_data and classify_place(p.extension, v) is RamificationType.RAMIFIED:
            ramified_bound(p, v)


def check_outer_failure(p: OuterProblem, S: Iterable[str]) -> OuterVerdict:
    excluded = sorted(set(S))
    if not excluded:
        raise ValidationError("the excluded set S must be non-empty")
    check_ramified_bounds(p)

    reason = None
    for pid in excluded:
        v = p.curve.place(pid)
        kind = classify_place(p.extension, v)
        two_rost_image(p, v)  # rejects combinations the theory leaves open
        if reason is None and not (kind is RamificationType.INERT and p.data(pid).unramified):
            reason = f"S contains {pid!r}, which is {kind.value}, not inert with unramified class"
    if reason is not None:
        return OuterVerdict(False, reason)
    # 2R_H vanishes at every S-place, so R_H contributes elements of order <= 2
    s_bound = 2

    for pid in p.curve.place_ids():
        if pid in excluded or pid not in p.local_data:
            continue
        v = p.curve.place(pid)
        data = p.local_data[pid]
        if (
            classify_place(p.extension, v) is RamificationType.TOTALLY_SPLIT
            and data.unramified
            and data.exponent >= 3
        ):
            witness = AdelicClass.of({pid: ZModM.of(1, data.exponent)})
            contribution = witness_contribution(data.exponent, 1)
            order = qz_order(contribution)
            if not order > s_bound:
                raise AssertionError("witness contribution does not dominate the S-places")
            return OuterVerdict(
                True,
                f"totally split place {pid!r} carries an unramified class of exponent "
                f"{data.exponent} >= 3 and every S-place is inert with unramified class",
                v0=pid,
                witness=witness,
                witness_order=order,
                s_order_bound=s_bound,
            )
    return OuterVerdict(
        False, "no totally split place outside S has an unramified class of exponent >= 3"
    )


def witness_contribution(exponent: int, valuation: int) -> QZElem:
    """Residue of R_H at a split place v₀ for a torsor of the given valuation.

    H¹(K_{v₀}, H) ≅ ℤ/m_{v₀} is generated by the uniformizer class, whose
    residue v₀*[A] has order m_{v₀}; we represent it by 1/m_{v₀}.
    """
    return QZElem.of(valuation, exponent)
