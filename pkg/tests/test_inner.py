import itertools
import random
from math import gcd

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from strongapprox.arith import ZModM, subgroup_elements
from strongapprox.brauer import BrauerClass
from strongapprox.curve import Curve, Place, make_projective_line
from strongapprox.errors import (
    BudgetExceededError,
    HypothesisError,
    PreconditionError,
    ValidationError,
    WitnessNotFoundError,
)
from strongapprox.inner import (
    AdelicClass,
    SAProblem,
    construct_witness,
    decide_sa,
    f_H,
    global_image_contains,
    verify_exact_sequence,
)

from conftest import curve_with_degrees


def cls(**entries):
    return AdelicClass.of({k: ZModM(*v) for k, v in entries.items()})


# -- f_H -------------------------------------------------------------------------


def test_f_H_examples():
    curve = curve_with_degrees(1, [1, 2, 3])
    p = SAProblem(curve, BrauerClass.of(1, 2), frozenset())
    assert f_H(p, cls(p0=(1, 2))).reduced == ZModM(1, 2)
    assert f_H(p, AdelicClass()).reduced == ZModM(0, 2)
    # deg 2 place has m_v = 1, so its entry is 0 and only the deg 3 place contributes
    assert f_H(p, AdelicClass.of({"p1": ZModM(0, 1), "p2": ZModM(1, 2)})).reduced == ZModM(1, 2)


def test_f_H_with_nontrivial_index():
    # I(X) = 2, A₀ = 1/6: m = 3, f_H lives in ℤ/6 and its quotient in ℤ/3
    curve = curve_with_degrees(2, [2, 4])
    p = SAProblem(curve, BrauerClass.of(1, 6), frozenset())
    # m_v: 6/gcd(2,6) = 3 and 6/gcd(4,6) = 3
    fh = f_H(p, cls(p0=(1, 3), p1=(2, 3)))
    assert fh.total == ZModM(10 % 6, 6)
    assert fh.reduced == ZModM(5 % 3, 3)


def test_f_H_validates_class():
    curve = curve_with_degrees(1, [1, 2])
    p = SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p1"}))
    # m_v at the degree-1 place is 2, not 3
    with pytest.raises(ValidationError):
        f_H(p, cls(p0=(1, 3)))


def test_f_H_rejects_excluded_support():
    curve = curve_with_degrees(1, [1, 3])
    p = SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p1"}))
    with pytest.raises(ValidationError):
        f_H(p, cls(p1=(1, 2)))


def test_f_H_is_a_homomorphism():
    curve = curve_with_degrees(1, [1, 2, 3])
    for m0 in (2, 3, 4, 6):
        p = SAProblem(curve, BrauerClass.of(1, m0), frozenset())
        moduli = [p.local_modulus(f"p{i}") for i in range(3)]
        tuples = list(itertools.product(*(range(mv) for mv in moduli)))
        for x in tuples:
            for y in tuples:
                ax = AdelicClass.of({f"p{i}": ZModM(n, mv) for i, (n, mv) in enumerate(zip(x, moduli))})
                ay = AdelicClass.of({f"p{i}": ZModM(n, mv) for i, (n, mv) in enumerate(zip(y, moduli))})
                assert f_H(p, ax + ay).total == f_H(p, ax).total + f_H(p, ay).total


def test_weil_reciprocity_shadow_randomised():
    rng = random.Random(7)
    for _ in range(200):
        index = rng.randint(1, 4)
        m0 = rng.randint(1, 12)
        degrees = [index * rng.randint(1, 6) for _ in range(5)] + [index]
        curve = curve_with_degrees(index, degrees)
        p = SAProblem(curve, BrauerClass.of(1, m0), frozenset())
        m = p.m
        coeffs = [rng.randint(-30, 30) for _ in range(5)]
        deg = sum(n * d for n, d in zip(coeffs, degrees))
        # fix the degree-I(X) place so the total degree is ≡ 0 mod m·I(X)
        last = (-deg // index) % m + m * rng.randint(-3, 3)
        coeffs.append(last)
        assert sum(n * d for n, d in zip(coeffs, degrees)) % (m * index) == 0
        a = AdelicClass.of({f"p{i}": ZModM.of(n, p.local_modulus(f"p{i}")) for i, n in enumerate(coeffs)})
        assert f_H(p, a).total.value == 0


# -- decide_sa / witness -----------------------------------------------------------


def test_decide_sa_paper_example(p1_example):
    verdict = decide_sa(p1_example)
    assert not verdict.holds
    assert verdict.defect_order == 2
    assert verdict.witness == cls(deg1=(1, 2))
    assert verdict.witness_status == "found"
    assert verdict.generator_multiple == 1


def test_decide_sa_holds_with_degree_one_place():
    curve = make_projective_line("Qp", 6)
    p = SAProblem(curve, BrauerClass.of(1, 2), frozenset({"deg1"}))
    verdict = decide_sa(p)
    assert verdict.holds and verdict.defect_order == 1 and verdict.witness is None


def test_decide_sa_gcd_example():
    curve = curve_with_degrees(1, [1, 4])
    verdict = decide_sa(SAProblem(curve, BrauerClass.of(1, 6), frozenset({"p1"})))
    assert verdict.defect_order == 2


def test_decide_sa_errors():
    curve = make_projective_line("Qp", 2)
    with pytest.raises(ValidationError):
        decide_sa(SAProblem(curve, BrauerClass.of(1, 2), frozenset()))
    no_pic = Curve(1, (Place("a", 1), Place("b", 2)))
    with pytest.raises(HypothesisError):
        decide_sa(SAProblem(no_pic, BrauerClass.of(1, 2), frozenset({"b"})))


def test_construct_witness_gcd_example():
    # m = 6, I(S) = 4: ⟨4⟩ = {0, 2, 4} in ℤ/6 by enumeration, so 1 escapes
    assert subgroup_elements(6, 4) == {0, 2, 4}
    curve = curve_with_degrees(1, [1, 4])
    p = SAProblem(curve, BrauerClass.of(1, 6), frozenset({"p1"}))
    w = construct_witness(p)
    assert w == cls(p0=(1, 6))
    assert f_H(p, w).reduced == ZModM(1, 6)
    assert not global_image_contains(p, w)


def test_construct_witness_when_sa_holds():
    curve = make_projective_line("Qp", 3)
    with pytest.raises(PreconditionError):
        construct_witness(SAProblem(curve, BrauerClass.of(1, 2), frozenset({"deg1"})))


def test_witness_unavailable_is_reported():
    # every place off S has even degree, so no witness can be built from the sample
    curve = curve_with_degrees(1, [2, 4])
    p = SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p0"}))
    with pytest.raises(WitnessNotFoundError):
        construct_witness(p)
    verdict = decide_sa(p)
    assert not verdict.holds and verdict.defect_order == 2
    assert verdict.witness is None and verdict.witness_status == "unavailable"


@settings(max_examples=200, deadline=None)
@given(
    st.integers(1, 12),
    st.integers(1, 4),
    st.lists(st.integers(1, 6), min_size=1, max_size=3),
)
def test_witness_never_global(m, index, s_multiples):
    degrees = [index * k for k in s_multiples] + [index * k for k in range(1, 7)]
    curve = curve_with_degrees(index, degrees)
    S = frozenset(f"p{i}" for i in range(len(s_multiples)))
    p = SAProblem(curve, BrauerClass.of(1, m * index), S)
    assert p.m == m
    verdict = decide_sa(p)
    assert verdict.holds == (verdict.defect_order == 1)
    if verdict.witness is not None:
        assert not global_image_contains(p, verdict.witness)


# -- global image -----------------------------------------------------------------


def test_global_image_examples():
    curve = curve_with_degrees(1, [1, 1, 2])
    a = cls(p0=(1, 2))
    assert global_image_contains(SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p1"})), AdelicClass())
    assert global_image_contains(SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p1"})), a)
    assert not global_image_contains(SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p2"})), a)


def test_global_image_needs_pic0():
    curve = Curve(1, (Place("a", 1), Place("b", 2)))
    with pytest.raises(HypothesisError):
        global_image_contains(SAProblem(curve, BrauerClass.of(1, 2), frozenset({"b"})), AdelicClass())


# -- exactness oracle -------------------------------------------------------------


def test_verify_single_degree_one_place():
    curve = curve_with_degrees(1, [1, 2])
    p = SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p1"}))
    rep = verify_exact_sequence(p, 1)
    assert rep.passed
    assert rep.tuples == 2
    assert rep.defect_values_covered == [0, 1]
    assert rep.defect_values_total == 2


def test_verify_degrees_two_and_three():
    # A₀ = 1/6: m_v = 3 at deg 2 and 2 at deg 3, so 6 tuples; S = {deg 6} gives I(S) = 6
    curve = curve_with_degrees(1, [2, 3, 6])
    p = SAProblem(curve, BrauerClass.of(1, 6), frozenset({"p2"}))
    rep = verify_exact_sequence(p, 2, ["p0", "p1"])
    assert rep.passed
    assert rep.moduli == [3, 2] and rep.tuples == 6
    assert rep.image == list(range(6))
    assert rep.kernel_size == 1 and rep.defect_values_total == 6


def test_verify_empty_support():
    curve = curve_with_degrees(1, [1, 2])
    p = SAProblem(curve, BrauerClass.of(1, 2), frozenset({"p1"}))
    rep = verify_exact_sequence(p, 0)
    assert rep.passed and rep.image == [0] and rep.support == []


def test_verify_budget_and_support_checks():
    curve = curve_with_degrees(1, [1, 1, 1, 2])
    p = SAProblem(curve, BrauerClass.of(1, 101), frozenset({"p3"}))
    with pytest.raises(BudgetExceededError):
        verify_exact_sequence(p, 3, budget=10**6)
    with pytest.raises(ValidationError):
        verify_exact_sequence(p, 1, ["p0", "p1"])
    with pytest.raises(ValidationError):
        verify_exact_sequence(p, 1, ["p3"])


def test_verify_parallel_matches_serial():
    curve = curve_with_degrees(1, [1, 2, 3, 4])
    p = SAProblem(curve, BrauerClass.of(1, 12), frozenset({"p3"}))
    serial = verify_exact_sequence(p, 3, workers=1)
    parallel = verify_exact_sequence(p, 3, workers=4)
    assert serial == parallel
    assert serial.passed and serial.tuples == 12 * 6 * 4


def test_defect_count_matches_gcd_formula():
    for m in range(1, 13):
        for index in range(1, 5):
            for ratio in range(1, 12 // index + 1):
                index_s = index * ratio
                degrees = [index_s, index, 2 * index, 3 * index]
                curve = curve_with_degrees(index, degrees)
                p = SAProblem(curve, BrauerClass.of(1, m * index), frozenset({"p0"}))
                rep = verify_exact_sequence(p, 3, ["p1", "p2", "p3"])
                assert rep.passed, rep.failures
                assert len(rep.defect_values_covered) == gcd(ratio, m)
                assert decide_sa(p).defect_order == gcd(ratio, m)
