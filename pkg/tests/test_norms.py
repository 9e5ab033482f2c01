import random
from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from spectral_floer import document
from spectral_floer.complex import FloerComplex, NovikovChain, Orbit, time_reversal
from spectral_floer.errors import EmptyLiftList, EmptyList, NotNormalized, TransportNotBijective
from spectral_floer.norms import (
    SampledHamiltonian,
    compose_hamiltonians,
    gamma,
    gamma_tilde,
    hofer_quantities,
    inverse_hamiltonian,
    invert_transport,
    is_positive,
    osc,
    partial_order,
    time_reversal_H,
    trapezoid,
)
from spectral_floer.novikov import GammaGroup
from spectral_floer.report import run
from spectral_floer.spectral import HomologyClassSpec, spectral_number

F = Fraction
POINTS = [("a", 1), ("b", 2), ("c", 1)]


def two_point(steps=3):
    return SampledHamiltonian([("a", 1), ("b", 1)], [[1, -1]] * (steps + 1))


@st.composite
def hamiltonians(draw, points=POINTS):
    steps = draw(st.integers(1, 4))
    vals = st.fractions(-5, 5, max_denominator=6)
    rows = [[draw(vals) for _ in points] for _ in range(steps + 1)]
    return SampledHamiltonian(points, rows).renormalized()


@st.composite
def transports(draw, steps):
    labels = [p for p, _ in POINTS]
    out = []
    for _ in range(steps + 1):
        perm = draw(st.permutations(labels))
        out.append(dict(zip(labels, perm)))
    return out


def test_zero_hamiltonian():
    q = hofer_quantities(SampledHamiltonian(POINTS, [[0, 0, 0]] * 3))
    assert (q.hofer_norm, q.e_plus, q.e_minus) == (0, 0, 0)


def test_two_point():
    q = hofer_quantities(two_point())
    assert (q.hofer_norm, q.e_plus, q.e_minus) == (2, 1, 1)


def test_not_normalized():
    with pytest.raises(NotNormalized):
        hofer_quantities(SampledHamiltonian(POINTS, [[1, 0, 0]] * 2))


def test_trapezoid_exact_on_constants_and_lines():
    assert trapezoid([F(7, 3)] * 5) == F(7, 3)
    assert trapezoid([F(i, 4) for i in range(5)]) == F(1, 2)


@given(hamiltonians())
def test_energy_split_and_reversal(h):
    q = hofer_quantities(h)
    assert 0 <= q.e_plus + q.e_minus <= q.hofer_norm
    r = hofer_quantities(time_reversal_H(h))
    assert (r.e_plus, r.e_minus, r.hofer_norm) == (q.e_minus, q.e_plus, q.hofer_norm)
    assert time_reversal_H(time_reversal_H(h)) == h


def test_reversal_swaps_profiles():
    h = SampledHamiltonian(POINTS, [[2, -1, 0], [0, 0, 0], [-4, 1, 2]])
    r = time_reversal_H(h)
    assert r.values[0] == (4, -1, -2) and r.values[2] == (-2, 1, 0)
    zero = SampledHamiltonian(POINTS, [[0, 0, 0]] * 2)
    assert time_reversal_H(zero) == zero


@given(hamiltonians())
def test_compose_with_zero(f):
    zero = SampledHamiltonian(POINTS, [[0] * 3] * len(f.values))
    assert compose_hamiltonians(f, zero) == f


@given(st.data())
def test_inverse_law(data):
    f = data.draw(hamiltonians())
    flow = data.draw(transports(f.steps))
    fbar = inverse_hamiltonian(f, flow)
    out = compose_hamiltonians(f, fbar, invert_transport(flow))
    assert all(v == 0 for row in out.values for v in row)


def test_constant_dies_under_normalization():
    f = SampledHamiltonian(POINTS, [[1, -1, 1], [3, -1, -1]])
    c = SampledHamiltonian(POINTS, [[F(5, 2)] * 3] * 2)
    assert compose_hamiltonians(f, c).renormalized() == f


def test_transport_must_be_bijective():
    f = SampledHamiltonian(POINTS, [[1, -1, 1], [1, -1, 1]])
    bad = [{"a": "a", "b": "a", "c": "c"}] * 2
    with pytest.raises(TransportNotBijective):
        compose_hamiltonians(f, f, bad)
    with pytest.raises(TransportNotBijective):
        compose_hamiltonians(f, f, bad[:1])


def test_gamma_examples():
    assert gamma_tilde(F(1, 2), F(1, 2)) == 1
    assert gamma([1, F(3, 4)]) == F(3, 4)
    with pytest.raises(EmptyLiftList):
        gamma([])


def test_trivial_complex_gamma_zero():
    g = GammaGroup([-1], [2])
    c = FloerComplex(g, [Orbit("M", 0, 0)], {}, box=1, dim=0, name="triv")
    one = NovikovChain.generator(g, "M")
    rc = time_reversal(c)
    r = spectral_number(HomologyClassSpec(c, one)).rho
    rr = spectral_number(HomologyClassSpec(rc, one)).rho
    assert gamma_tilde(r, rr) == 0


def test_sphere_gamma_fixture(data_dir):
    doc = document.load(data_dir / "sphere.json")
    for eps in (10, 100, 1000):
        res = run(doc, ["gamma", f"sphere_e{eps}"])
        assert res.ok, res.render()
        assert res.values["gamma_tilde"] == F(2, eps)
        assert res.values["e_plus"] + res.values["e_minus"] == F(2, eps)
        assert res.values["rho_1"] <= res.values["e_minus"]


@given(st.integers(0, 10 ** 6))
def test_gamma_symmetric_on_random_complexes(seed):
    from spectral_floer.generators import random_complex

    inst = random_complex(random.Random(seed), 4, radius=1)
    c = inst.complex
    rc = time_reversal(c)
    assert time_reversal(rc).boundary == c.boundary
    for cls in inst.classes:
        r = spectral_number(cls).rho
        assert spectral_number(HomologyClassSpec(time_reversal(rc), cls.representative)).rho == r


def test_positivity():
    assert is_positive(0) and is_positive(F(-1, 3)) and not is_positive(F(1, 4))
    assert partial_order(F(-1)) == "f >= g"
    assert partial_order(F(1, 2)) == "f >= g fails"


@given(st.lists(st.fractions(-9, 9, max_denominator=5), min_size=1), st.fractions(-3, 3))
def test_osc(values, c):
    assert osc(values) == osc([v + c for v in values]) >= 0


def test_osc_examples():
    assert osc([2, 2]) == 0
    assert osc([-1, 0, 2]) == 3
    with pytest.raises(EmptyList):
        osc([])
