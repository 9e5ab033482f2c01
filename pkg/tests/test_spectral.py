import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spectral_floer.complex import FloerComplex, NovikovChain, Orbit, level, time_reversal
from spectral_floer.errors import (
    BoxTooSmall,
    ExplosionGuard,
    MissingClass,
    NotACycle,
    PreconditionEpsilonTooLarge,
    ZeroClass,
)
from spectral_floer.generators import random_complex, random_continuity_pair
from spectral_floer.novikov import GammaGroup
from spectral_floer.spectral import (
    HomologyClassSpec,
    axiom_suite,
    brute_force_spectral,
    continuity_check,
    gap_bound_check,
    gap_window,
    is_homologous,
    oracle_sign,
    spectral_number,
    spectrality_check,
)

from conftest import down


def gen(g, label, cap=None, coeff=1):
    return NovikovChain.generator(g, label, cap, coeff)


def test_single_generator(g1):
    c = FloerComplex(g1, [Orbit("x", Fraction(3, 4), 0)], {})
    r = spectral_number(HomologyClassSpec(c, gen(g1, "x")))
    assert r.rho == Fraction(3, 4) and r.witness == gen(g1, "x") and r.moves == 0


def test_three_generator_example(g1, three):
    cls = HomologyClassSpec(three, gen(g1, "x"), "x")
    r = spectral_number(cls)
    assert r.rho == 1
    assert r.witness == gen(g1, "y")
    assert r.beta == gen(g1, "z")
    assert level(r.witness, three) == r.rho
    assert is_homologous(three, r.witness, cls.representative)
    assert spectrality_check(r)
    assert brute_force_spectral(cls, 2) == 1


def test_oracle_is_one_sided_over_f2(g1):
    # dz = 2x - y: over Q the class of x drops to y/2, over F_2 it cannot move
    c = FloerComplex(g1, [Orbit("x", 2, 0), Orbit("y", 1, 0), Orbit("z", 3, 1)],
                     {"z": {"x": down(g1, ((0,), 2)), "y": down(g1, ((0,), -1))}}, box=0)
    cls = HomologyClassSpec(c, gen(g1, "x"))
    assert spectral_number(cls).rho == 1
    assert brute_force_spectral(cls, 2) == 2
    assert oracle_sign(spectral_number(cls), 2) is None


def test_zero_boundary_oracle(g1):
    c = FloerComplex(g1, [Orbit("x", 5, 0)], {})
    assert brute_force_spectral(HomologyClassSpec(c, gen(g1, "x")), 3) == 5


def test_explosion_guard(g1, three):
    with pytest.raises(ExplosionGuard):
        brute_force_spectral(HomologyClassSpec(three, gen(g1, "x")), 3, radius=3, limit=10)


def test_not_a_cycle_and_zero_class(g1, three):
    with pytest.raises(NotACycle):
        spectral_number(HomologyClassSpec(three, gen(g1, "z")))
    boundary = gen(g1, "x") - gen(g1, "y")
    with pytest.raises(ZeroClass):
        spectral_number(HomologyClassSpec(three, boundary))


def test_box_too_small_flag(g1):
    # dz = x q^1; at radius 0 the cap-0 generator x has its killer z q^{-1} outside the box
    c = FloerComplex(g1, [Orbit("x", 0, 0), Orbit("y", -5, 0), Orbit("z", 2, 1)],
                     {"z": {"x": down(g1, ((1,), 1))}}, box=0)
    cls = HomologyClassSpec(c, gen(g1, "x") + gen(g1, "y"))
    r = spectral_number(cls)
    assert r.upper_bound_only and r.rho == 0
    with pytest.raises(BoxTooSmall):
        spectral_number(cls, strict=True)
    assert spectral_number(cls, radius=1).rho == -5


def test_spectrality_examples(g1, three):
    r = spectral_number(HomologyClassSpec(three, gen(g1, "x")))
    assert spectrality_check(r)
    r.rho = Fraction(1, 7)
    assert not spectrality_check(r)


def test_gap_examples():
    w = gap_window([1, Fraction(2, 5)], Fraction(1, 100), (-1, 1))
    assert w.gap == Fraction(3, 5) and w.v == 1
    assert w.lower == Fraction(99, 100) and w.upper == Fraction(101, 100)
    assert (w.coarse_lower, w.coarse_upper) == (Fraction(7, 10), Fraction(13, 10))
    one = gap_window([2], Fraction(1, 10), (0, 1))
    assert one.gap == 2
    assert (one.lower, one.upper, one.literal_upper) == (Fraction(19, 10), 2, Fraction(21, 10))
    with pytest.raises(PreconditionEpsilonTooLarge):
        gap_window([1, Fraction(2, 5)], Fraction(1, 5), (-1, 1))
    ok, _ = gap_bound_check([1, Fraction(2, 5)], Fraction(1, 100), (-1, 1), 1)
    assert ok


def test_continuity_examples(g1, three):
    from spectral_floer.complex import ChainMapData, shift_actions

    one = down(g1, ((0,), 1))
    ident = {lab: {lab: one} for lab in three.labels()}
    h = ChainMapData(three, three, ident, 0)
    cls = HomologyClassSpec(three, gen(g1, "x"))
    res = continuity_check(cls, cls, h, h)
    assert res.ok and res.difference == 0
    k = shift_actions(three, Fraction(-3, 4), "K")
    hk = ChainMapData(three, k, ident, Fraction(-3, 4))
    kh = ChainMapData(k, three, ident, Fraction(3, 4))
    res = continuity_check(cls, HomologyClassSpec(k, gen(g1, "x")), hk, kh)
    assert res.ok and res.difference == Fraction(-3, 4)
    with pytest.raises(MissingClass):
        continuity_check(cls, None, hk, kh)


@given(st.integers(0, 10 ** 6), st.booleans())
def test_continuity_random(seed, constant):
    inst = random_continuity_pair(random.Random(seed), constant=constant)
    res = continuity_check(inst.class_h, inst.class_k, inst.h_hk, inst.h_kh)
    assert res.ok
    if constant:
        assert res.difference == -inst.constant


@given(st.integers(0, 10 ** 6))
def test_greedy_never_above_level_and_matches_oracle(seed):
    inst = random_complex(random.Random(seed))
    for cls in inst.classes:
        r = spectral_number(cls)
        assert r.rho <= level(cls.representative, cls.complex)
        if r.moves == 0:
            assert r.rho == level(cls.representative, cls.complex)
        assert is_homologous(cls.complex, r.witness, cls.representative)
        try:
            brute = brute_force_spectral(cls, 3)
        except ExplosionGuard:
            continue
        assert r.rho <= brute
        sign = oracle_sign(r, 3)
        if sign is not None:
            rep = cls.representative.scale(sign)
            assert brute_force_spectral(HomologyClassSpec(cls.complex, rep), 3) == r.rho


@given(st.integers(0, 10 ** 6))
def test_axiom_suite_random(seed):
    inst = random_complex(random.Random(seed), max_orbits=5)
    rep = axiom_suite(inst.complex, inst.classes, seed)
    assert rep.ok, [c.line() for c in rep.failures()]


def test_novikov_shift_sign(g1, three):
    r = spectral_number(HomologyClassSpec(three, gen(g1, "x", (1,))), center=(1,))
    assert r.rho == 1 - g1.area((1,))


def test_reversed_spectral_numbers():
    g = GammaGroup([1], [0])
    c = FloerComplex(g, [Orbit("a", 1, 0), Orbit("b", -2, 2)], {}, dim=2)
    rc = time_reversal(c)
    assert spectral_number(HomologyClassSpec(rc, gen(g, "a"))).rho == -1
