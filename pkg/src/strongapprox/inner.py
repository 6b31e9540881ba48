"""Strong approximation for Z = SL_n/SL₁(A) with A a constant class.

Local torsors are H¹(K_v, SL₁(A)) ≅ ℤ/m_v, recorded by the valuation of a
representative. Summing the Rost invariants through the Weil reciprocity
complex gives

    f_H((n_v)_v) = Σ n_v·deg(v)   mod m·I(X),

which is divisible by I(X); its quotient in ℤ/m is what the decision uses.
Under Pic⁰(X)/m = 0 a family (n_v) off S comes from a global torsor exactly
when that quotient lies in the subgroup generated by I(S)/I(X), so the
defect of strong approximation away from S is cyclic of order
gcd(I(S)/I(X), m).
"""

from __future__ import annotations

import itertools
from collections.abc import Iterable, Mapping, Sequence
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd, prod

from .arith import ZModM, subgroup_contains, subgroup_elements
from .brauer import BrauerClass, exponent_over_K, local_exponent
from .curve import Curve, index_of_set
from .errors import (
    BudgetExceededError,
    HypothesisError,
    ModelInconsistencyError,
    PreconditionError,
    ValidationError,
    WitnessNotFoundError,
)

__all__ = [
    "AdelicClass",
    "SAProblem",
    "SAVerdict",
    "FHValue",
    "ExactnessReport",
    "DEFAULT_BUDGET",
    "f_H",
    "decide_sa",
    "construct_witness",
    "global_image_contains",
    "verify_exact_sequence",
]

DEFAULT_BUDGET = 10**6
SHADOW_LABEL = "finite-support shadow check"


@dataclass(frozen=True)
class AdelicClass:
    """A finitely supported family (n_v mod m_v) off S, sorted by place id.

    Zero entries are dropped so that equal classes compare equal.
    """

    entries: tuple[tuple[str, ZModM], ...] = ()

    def __post_init__(self) -> None:
        cleaned = sorted((pid, n) for pid, n in dict(self.entries).items() if n.value)
        object.__setattr__(self, "entries", tuple(cleaned))

    @classmethod
    def of(cls, entries: Mapping[str, ZModM]) -> AdelicClass:
        return cls(tuple(entries.items()))

    def as_dict(self) -> dict[str, ZModM]:
        return dict(self.entries)

    def support(self) -> frozenset[str]:
        return frozenset(pid for pid, _ in self.entries)

    def __add__(self, other: AdelicClass) -> AdelicClass:
        if not isinstance(other, AdelicClass):
            return NotImplemented
        out = self.as_dict()
        for pid, n in other.entries:
            out[pid] = out[pid] + n if pid in out else n
        return AdelicClass.of(out)


@dataclass(frozen=True)
class SAProblem:
    curve: Curve
    brauer: BrauerClass
    excluded: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "excluded", frozenset(self.excluded))
        for pid in sorted(self.excluded):
            self.curve.place(pid)

    @property
    def m(self) -> int:
        return exponent_over_K(self.brauer, self.curve)

    def has_pic0_hypothesis(self) -> bool:
        return self.curve.pic0_trivial(self.m)

    def require_pic0(self) -> None:
        if not self.has_pic0_hypothesis():
            raise HypothesisError(
                f"Pic⁰(X)/{self.m} = 0 is not asserted for this curve; "
                "the global image cannot be characterised"
            )

    def local_modulus(self, place_id: str) -> int:
        return local_exponent(self.brauer, self.curve.place(place_id))

    def s_generator(self) -> ZModM:
        """I(S)/I(X) in ℤ/m; zero when S is empty (no S-entries to absorb anything)."""
        if not self.excluded:
            return ZModM(0, self.m)
        return ZModM.of(index_of_set(self.curve, self.excluded) // self.curve.index, self.m)


@dataclass(frozen=True)
class FHValue:
    """f_H as Σ n_v·deg v mod m·I(X) and its quotient by I(X) in ℤ/m."""

    total: ZModM
    reduced: ZModM


@dataclass(frozen=True)
class SAVerdict:
    """Outcome of :func:`decide_sa`.

    ``witness_status`` is ``"none"`` when SA holds, ``"found"`` when a witness
    was built and ``"unavailable"`` when the registered places cannot realise
    one (the defect order is still exact).
    """

    holds: bool
    defect_order: int
    witness: AdelicClass | None
    exponent: int
    index: int
    index_s: int
    witness_status: str = "none"

    @property
    def generator_multiple(self) -> int:
        """k such that k·R_H generates the defect group."""
        return self.exponent // self.defect_order


def _check_class(p: SAProblem, a: AdelicClass) -> None:
    for pid, n in a.entries:
        if pid in p.excluded:
            raise ValidationError(f"adelic class has an entry at excluded place {pid!r}")
        m_v = p.local_modulus(pid)
        if n.modulus != m_v:
            raise ValidationError(
                f"entry at {pid!r} has modulus {n.modulus}, local exponent is {m_v}"
            )


def f_H(p: SAProblem, a: AdelicClass) -> FHValue:
    _check_class(p, a)
    m, index = p.m, p.curve.index
    total = sum(n.value * p.curve.place(pid).degree for pid, n in a.entries)
    # every degree is a multiple of I(X), so the quotient is exact
    return FHValue(ZModM.of(total, m * index), ZModM.of(total // index, m))


def global_image_contains(p: SAProblem, a: AdelicClass) -> bool:
    """Does ``a`` come from H¹(K, H) once S-entries are allowed to absorb it?"""
    p.require_pic0()
    value = f_H(p, a).reduced
    return subgroup_contains(p.m, p.s_generator(), value)


def construct_witness(p: SAProblem) -> AdelicClass:
    """A single-place class off S that no global torsor can match.

    Places are scanned in id order and the first whose degree/I(X) escapes
    the subgroup generated by I(S)/I(X) in ℤ/m is used with n_v = 1.
    """
    if not p.excluded:
        raise ValidationError("the excluded set S must be non-empty")
    m = p.m
    gen = p.s_generator()
    if gcd(gen.value, m) == 1:
        raise PreconditionError("strong approximation holds; no witness exists")
    for pid in p.curve.place_ids():
        if pid in p.excluded:
            continue
        value = ZModM.of(p.curve.place(pid).degree // p.curve.index, m)
        if not subgroup_contains(m, gen, value):
            witness = AdelicClass.of({pid: ZModM.of(1, p.local_modulus(pid))})
            if global_image_contains(p, witness):
                raise AssertionError(f"witness at {pid!r} lies in the global image")
            return witness
    raise WitnessNotFoundError(
        "no registered place outside S has a degree escaping the subgroup generated "
        "by I(S)/I(X); register more places to exhibit a witness"
    )


def decide_sa(p: SAProblem) -> SAVerdict:
    if not p.excluded:
        raise ValidationError("the excluded set S must be non-empty")
    p.require_pic0()
    index = p.curve.index
    index_s = index_of_set(p.curve, p.excluded)
    if index_s % index:
        raise ModelInconsistencyError(f"I(X) = {index} does not divide I(S) = {index_s}")
    m = p.m
    defect = gcd(index_s // index, m)
    if defect == 1:
        return SAVerdict(True, 1, None, m, index, index_s, "none")
    try:
        witness = construct_witness(p)
    except WitnessNotFoundError:
        return SAVerdict(False, defect, None, m, index, index_s, "unavailable")
    return SAVerdict(False, defect, witness, m, index, index_s, "found")


# -- brute-force exactness oracle --------------------------------------------


@dataclass
class ExactnessReport:
    """Result of the exhaustive finite-support check.

    ``defect_values_total`` is the number of cosets of the S-subgroup in ℤ/m
    found by enumeration; ``defect_values_covered`` lists the cosets (by
    smallest representative) hit by the enumerated support.
    """

    passed: bool
    support: list[str]
    moduli: list[int]
    tuples: int
    image: list[int]
    expected_image: list[int]
    kernel_size: int
    defect_values_total: int
    defect_values_covered: list[int]
    counterexample: dict[str, int] | None = None
    failures: list[str] = field(default_factory=list)
    label: str = SHADOW_LABEL

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "passed": self.passed,
            "support": list(self.support),
            "moduli": list(self.moduli),
            "tuples": self.tuples,
            "image": list(self.image),
            "expected_image": list(self.expected_image),
            "kernel_size": self.kernel_size,
            "defect_values_total": self.defect_values_total,
            "defect_values_covered": list(self.defect_values_covered),
            "counterexample": None if self.counterexample is None else dict(self.counterexample),
            "failures": list(self.failures),
        }

    @classmethod
    def from_dict(cls, data: Mapping) -> ExactnessReport:
        return cls(
            passed=data["passed"],
            support=list(data["support"]),
            moduli=list(data["moduli"]),
            tuples=data["tuples"],
            image=list(data["image"]),
            expected_image=list(data["expected_image"]),
            kernel_size=data["kernel_size"],
            defect_values_total=data["defect_values_total"],
            defect_values_covered=list(data["defect_values_covered"]),
            counterexample=None if data["counterexample"] is None else dict(data["counterexample"]),
            failures=list(data["failures"]),
            label=data["label"],
        )


def _generated_subgroup(modulus: int, generators: Iterable[int]) -> frozenset[int]:
    """Closure of ``{0} ∪ generators`` under addition in ℤ/modulus."""
    gens = [g % modulus for g in generators]
    seen = {0}
    frontier = [0]
    while frontier:
        x = frontier.pop()
        for g in gens:
            y = (x + g) % modulus
            if y not in seen:
                seen.add(y)
                frontier.append(y)
    return frozenset(seen)


@dataclass(frozen=True)
class _Chunk:
    problem: SAProblem
    support: tuple[str, ...]
    moduli: tuple[int, ...]
    first_values: tuple[int, ...]
    s_subgroup: frozenset[int]


@dataclass
class _Partial:
    image: set[int]
    covered: set[int]
    kernel: int
    count: int
    counterexample: tuple[tuple[int, ...], str] | None


def _scan_chunk(chunk: _Chunk) -> _Partial:
    p = chunk.problem
    m, index = p.m, p.curve.index
    degrees = [p.curve.place(pid).degree for pid in chunk.support]
    coset_rep = {x: min((x + h) % m for h in chunk.s_subgroup) for x in range(m)}
    image: set[int] = set()
    covered: set[int] = set()
    kernel = count = 0
    counterexample = None
    rest = [range(mv) for mv in chunk.moduli[1:]]
    for first in chunk.first_values:
        for tail in itertools.product(*rest):
            values = (first, *tail)
            count += 1
            a = AdelicClass.of(
                {pid: ZModM(n, mv) for pid, n, mv in zip(chunk.support, values, chunk.moduli)}
            )
            fh = f_H(p, a)
            direct = sum(n * d for n, d in zip(values, degrees))
            reduced = fh.reduced.value
            image.add(reduced)
            covered.add(coset_rep[reduced])
            in_kernel = reduced in chunk.s_subgroup
            kernel += in_kernel
            problem = None
            if fh.total.value != direct % (m * index) or reduced != (direct // index) % m:
                problem = "f_H disagrees with the direct degree sum"
            elif global_image_contains(p, a) != in_kernel:
                problem = "global_image_contains disagrees with the enumerated kernel"
            if problem and counterexample is None:
                counterexample = (values, problem)
    return _Partial(image, covered, kernel, count, counterexample)


def verify_exact_sequence(
    p: SAProblem,
    support_bound: int,
    support: Sequence[str] | None = None,
    budget: int = DEFAULT_BUDGET,
    workers: int = 1,
) -> ExactnessReport:
    """Exhaustively check the ℤ/m shadow of the strong approximation sequence.

    Every class on the chosen support (at most ``support_bound`` places off
    S, by default the first ones in id order) is enumerated, and the report
    records whether

    1. the image of f_H/I(X) is the subgroup generated by the support degrees,
    2. the classes mapping to the trivial defect value are exactly those
       :func:`global_image_contains` accepts,
    3. |⊕ ℤ/m_v| = |kernel| · |covered defect values|.

    This only checks finite shadows of the adelic statement. The output does
    not depend on ``workers``: chunks are contiguous in lexicographic order
    and merged in that order.
    """
    if support_bound < 0:
        raise ValidationError(f"support_bound must be non-negative, got {support_bound}")
    p.require_pic0()
    if support is None:
        chosen = [pid for pid in p.curve.place_ids() if pid not in p.excluded][:support_bound]
    else:
        chosen = list(support)
        if len(chosen) > support_bound:
            raise ValidationError(
                f"support has {len(chosen)} places, more than the bound {support_bound}"
            )
        if len(set(chosen)) != len(chosen):
            raise ValidationError("support lists a place twice")
        for pid in chosen:
            p.curve.place(pid)
            if pid in p.excluded:
                raise ValidationError(f"support place {pid!r} lies in S")
    moduli = [p.local_modulus(pid) for pid in chosen]
    total = prod(moduli)
    if total > budget:
        raise BudgetExceededError(
            f"enumerating {total} tuples exceeds the budget of {budget}"
        )

    m, index = p.m, p.curve.index
    s_subgroup = subgroup_elements(m, p.s_generator().value)
    cosets = {min((x + h) % m for h in s_subgroup) for x in range(m)}
    expected = _generated_subgroup(m, (p.curve.place(pid).degree // index for pid in chosen))

    if not chosen:
        partials = [_Partial({0}, {min(s_subgroup)}, 1, 1, None)]
    else:
        first_range = list(range(moduli[0]))
        n_chunks = max(1, min(workers, len(first_range)))
        size = -(-len(first_range) // n_chunks)
        chunks = [
            _Chunk(p, tuple(chosen), tuple(moduli), tuple(first_range[i : i + size]), s_subgroup)
            for i in range(0, len(first_range), size)
        ]
        if workers > 1 and len(chunks) > 1:
            with ProcessPoolExecutor(max_workers=min(workers, len(chunks))) as pool:
                partials = list(pool.map(_scan_chunk, chunks))
        else:
            partials = [_scan_chunk(c) for c in chunks]

    image: set[int] = set()
    covered: set[int] = set()
    kernel = count = 0
    counterexample = None
    for part in partials:
        image |= part.image
        covered |= part.covered
        kernel += part.kernel
        count += part.count
        if counterexample is None and part.counterexample is not None:
            counterexample = part.counterexample

    failures = []
    if counterexample is not None:
        failures.append(counterexample[1])
    if image != expected:
        failures.append("image of f_H differs from the subgroup generated by the support degrees")
    if count != total or total != kernel * len(covered):
        failures.append("|⊕ ℤ/m_v| differs from |kernel| · |covered defect values|")

    return ExactnessReport(
        passed=not failures,
        support=chosen,
        moduli=moduli,
        tuples=count,
        image=sorted(image),
        expected_image=sorted(expected),
        kernel_size=kernel,
        defect_values_total=len(cosets),
        defect_values_covered=sorted(covered),
        counterexample=None
        if counterexample is None
        else dict(zip(chosen, counterexample[0])),
        failures=failures,
    )
