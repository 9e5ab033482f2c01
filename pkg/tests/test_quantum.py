import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spectral_floer.complex import validate_complex
from spectral_floer.errors import (
    DegenerateMorseFunction,
    DirectionMismatch,
    ModelMismatch,
    MorseBoundaryNotSquareZero,
    ZeroClass,
)
from spectral_floer.generators import random_two_term_class
from spectral_floer.models import (
    point_model,
    sphere_group,
    sphere_model,
    sphere_morse,
    torus_model,
    torus_morse,
)
from spectral_floer.novikov import Direction, GammaGroup
from spectral_floer.quantum import (
    BoundedFunctional,
    CohomologyModel,
    CriticalPoint,
    MorseData,
    QuantumElement,
    bounded_check,
    check_morse,
    flat,
    fundamental_cycle,
    morse_gap_check,
    pairing,
    pullback,
    qh_valuation,
    quantum_product,
    quantum_complex_from_morse,
    sharp,
    sigma_chain_map_check,
    sigma_embed,
    top_degree_unique,
    validate_model,
)
from spectral_floer.spectral import HomologyClassSpec, spectral_number

F = Fraction
SG = sphere_group()
SPHERE = sphere_model(SG)
TG = GammaGroup([F(1, 2)], [0])
TORUS = torus_model(TG)


def b(model, name, exp=(0,), coeff=1):
    return QuantumElement.basis(model, name, exp, coeff)


def test_builtin_models_validate():
    for m in (SPHERE, TORUS, point_model(SG)):
        rep = validate_model(m)
        assert rep.ok, [c.line() for c in rep.failures()]


def test_bad_grading_rejected():
    bad = CohomologyModel(GammaGroup([-1], [1]), 2, [("1", 0), ("p", 2)], [[0, 1], [1, 0]],
                          {(0, 0, (0,)): [1, 0], (0, 1, (0,)): [0, 1], (1, 0, (0,)): [0, 1],
                           (1, 1, (1,)): [1, 0]}, 2, "bad")
    assert "grading" in validate_model(bad).failed_names()


def test_product_examples():
    p = b(SPHERE, "p")
    assert quantum_product(b(SPHERE, "1"), p) == p
    assert quantum_product(p, p) == b(SPHERE, "1", (1,))
    assert quantum_product(b(TORUS, "a"), b(TORUS, "b")) == b(TORUS, "vol")
    assert quantum_product(b(TORUS, "b"), b(TORUS, "a")) == b(TORUS, "vol", coeff=-1)
    with pytest.raises(ModelMismatch):
        quantum_product(p, b(TORUS, "a"))


def sphere_classes():
    term = st.tuples(st.sampled_from(["1", "p"]), st.integers(-2, 2), st.integers(-3, 3).filter(bool))
    return st.lists(term, min_size=1, max_size=3).map(
        lambda ts: sum((b(SPHERE, n, (e,), c) for n, e, c in ts[1:]), b(SPHERE, *ts[0][:1], (ts[0][1],), ts[0][2])))


@given(sphere_classes(), sphere_classes(), sphere_classes())
def test_associative_and_unital(x, y, z):
    one = b(SPHERE, "1")
    assert quantum_product(one, x) == x == quantum_product(x, one)
    assert quantum_product(quantum_product(x, y), z) == quantum_product(x, quantum_product(y, z))


@given(sphere_classes(), sphere_classes())
def test_valuation_additive(x, y):
    xy = quantum_product(x, y)
    if x and y and xy:
        assert qh_valuation(xy) >= qh_valuation(x) + qh_valuation(y)


def test_valuation_examples():
    assert qh_valuation(b(SPHERE, "1")) == 0
    g = GammaGroup([1], [0])
    m = CohomologyModel(g, 0, [("1", 0)], [[1]], {(0, 0, (0,)): [1]})
    a = QuantumElement.basis(m, "1", (1,)) + QuantumElement.basis(m, "1", (-1,))
    assert qh_valuation(a) == -1
    with pytest.raises(ZeroClass):
        qh_valuation(QuantumElement(m))


def test_grading_of_products():
    p = b(SPHERE, "p")
    assert quantum_product(p, p).degrees() == {4}
    assert p.degrees() == {2}


def test_pairing_examples():
    pt = point_model(SG)
    one = QuantumElement.basis(pt, "1")
    assert pairing(one, flat(one)) == 1
    assert pairing(b(SPHERE, "1"), flat(b(SPHERE, "p"))) == 1
    assert pairing(b(SPHERE, "1", (1,)), flat(b(SPHERE, "p", (2,)))) == 0
    assert pairing(b(SPHERE, "p", (1,), 3), flat(b(SPHERE, "1", (1,), 2))) == 6
    with pytest.raises(DirectionMismatch):
        pairing(flat(one), one)


@given(sphere_classes())
def test_flat_sharp_roundtrip(x):
    assert sharp(flat(x)) == x
    assert flat(x).direction is Direction.DOWN


def test_gram_matrix_full_rank():
    from spectral_floer import linalg

    assert linalg.rank(TORUS.pairing, 4) == 4


def test_morse_complex_examples():
    circle = MorseData([CriticalPoint("lo", F(0), 0), CriticalPoint("hi", F(1), 1)], {"lo": {"hi": 0}}, 1)
    c = quantum_complex_from_morse(circle, F(1, 10), GammaGroup([1], [0]))
    assert validate_complex(c).ok and len(c.orbits) == 2
    c = quantum_complex_from_morse(sphere_morse(), F(1, 10), SG)
    assert validate_complex(c).ok
    assert [o.base_degree for o in c.orbits] == [2, 2, 1, 0]
    assert c.orbit("m1").base_action == F(1, 10)
    shifted = MorseData([CriticalPoint(p.name, p.value + 3, p.index) for p in sphere_morse().points],
                        sphere_morse().incidence, 2)
    c2 = quantum_complex_from_morse(shifted, F(1, 10), SG)
    assert all(c2.orbit(o.label).base_action == o.base_action - F(3, 10) for o in c.orbits)
    assert c2.boundary == c.boundary
    assert top_degree_unique(c)
    assert fundamental_cycle(sphere_morse(), c).labels() == ["m1", "m2"]


def test_morse_rejections():
    bad = MorseData([CriticalPoint("a", F(0), 0), CriticalPoint("b", F(1), 1), CriticalPoint("c", F(2), 2)],
                    {"a": {"b": 1}, "b": {"c": 1}}, 2)
    with pytest.raises(MorseBoundaryNotSquareZero):
        quantum_complex_from_morse(bad, F(1, 10), SG)
    tie = MorseData([CriticalPoint("a", F(0), 0), CriticalPoint("b", F(0), 1)], {}, 1)
    assert "distinct_adjacent_values" in check_morse(tie).failed_names()
    with pytest.raises(DegenerateMorseFunction):
        quantum_complex_from_morse(tie, F(1, 10), SG)


@pytest.mark.parametrize("eps", [F(1, 10), F(1, 100), F(1, 1000)])
def test_normalization(eps):
    for morse, g in ((sphere_morse(), SG), (torus_morse(), TG)):
        c = quantum_complex_from_morse(morse, eps, g)
        r = spectral_number(HomologyClassSpec(c, fundamental_cycle(morse, c)))
        assert r.rho == -eps * morse.f_bounds[0] == eps


def test_gap_example():
    m = CohomologyModel(GammaGroup([F(-1, 5)], [0]), 2, [("1", 0), ("vol", 2)], [[0, 1], [1, 0]],
                        {(0, 0, (0,)): [1, 0], (0, 1, (0,)): [0, 1], (1, 0, (0,)): [0, 1]})
    morse = MorseData([CriticalPoint("lo", F(-1), 0), CriticalPoint("hi", F(1), 2)], {}, 2,
                      {"1": {"lo": F(1)}, "vol": {"hi": F(1)}})
    a = QuantumElement.basis(m, "1", (5,)) + QuantumElement.basis(m, "1", (2,))
    out = morse_gap_check(morse, a, F(1, 100))
    assert out.window.levels == [1, F(2, 5)]
    assert out.ok and F(99, 100) <= out.rho <= F(101, 100)


@given(st.integers(0, 10 ** 6), st.booleans())
def test_gap_random(seed, sphere):
    model, morse = (SPHERE, sphere_morse()) if sphere else (TORUS, torus_morse())
    inst = random_two_term_class(random.Random(seed), model, morse)
    out = morse_gap_check(morse, inst.element, inst.eps)
    assert out.ok
    assert out.window.coarse_lower <= out.rho <= out.window.coarse_upper


def test_bounded_examples(three):
    g = three.group
    mu = sigma_embed(three, {("x", (0,)): F(1)}, margin=1)
    assert mu.threshold == -1
    assert bounded_check(mu)[0]
    assert bounded_check(pullback(mu))[0]
    bad = BoundedFunctional(three, {("x", (k,)): F(1) for k in range(-1, 2)}, F(0))
    ok, viol = bounded_check(bad)
    assert not ok and viol == [("x", (0,)), ("x", (1,))]
    assert g.area((1,)) == 1


def test_sigma_chain_map(three):
    rep = sigma_chain_map_check(three, {("x", (0,)): F(1), ("y", (1,)): F(-1)})
    assert rep.ok
    wrong = {"x": {"z": three.entry("z", "x")}, "y": {"z": three.entry("z", "x")}}
    rep = sigma_chain_map_check(three, {("x", (0,)): F(1), ("y", (0,)): F(1)}, wrong)
    assert rep.failed_names() == {"sigma_chain_map"}
