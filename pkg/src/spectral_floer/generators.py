"""Seeded random instances: complexes, continuity pairs, products and quantum classes.

Complexes are built as ``phi d0 phi^{-1}`` where ``d0`` pairs orbits
elementarily and ``phi = 1 + N`` with ``N`` strictly lowering the action and
nilpotent, so every instance is a valid filtered complex with known homology.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional

from .complex import (
    ChainMapData,
    FloerComplex,
    Orbit,
    _matmul_entry,
    validate_complex,
)
from .novikov import Direction, GammaGroup, NovikovElement
from .products import PantsProductData, homotopy_perturb, tensor_product
from .quantum import CohomologyModel, MorseData, QuantumElement
from .spectral import HomologyClassSpec

DOWN = Direction.DOWN
OMEGAS = (Fraction(1), Fraction(1, 2), Fraction(3, 2), Fraction(2))

Matrix = Dict[str, Dict[str, NovikovElement]]


def random_group(rng: random.Random, chern=(0, 1)) -> GammaGroup:
    return GammaGroup([rng.choice(OMEGAS)], [rng.choice(chern)])


def _rat(rng, lo=-3, hi=3, den=(1, 2, 3, 4)) -> Fraction:
    d = rng.choice(den)
    return Fraction(rng.randint(lo * d, hi * d), d)


def _mono(group, exp, c) -> NovikovElement:
    return NovikovElement(group, DOWN, {tuple(exp): c})


def _caps_for(c: FloerComplex, src: str, tgt: str, shift: int, radius: int, strict=True):
    """Caps C in the box with deg(tgt q^C) = deg(src) + shift and action below (or at) src."""
    g = c.group
    out = []
    for a in range(-radius, radius + 1):
        cap = (a,) * g.rank
        if c.degree((tgt, cap)) != c.orbit(src).base_degree + shift:
            continue
        act = c.action((tgt, cap))
        top = c.orbit(src).base_action
        if act < top or (not strict and act <= top):
            out.append(cap)
    return out


def _inverse_unipotent(n_mat: Matrix, group, labels, steps) -> Matrix:
    """(1 + N)^{-1} = sum of (-N)^k for nilpotent N."""
    one = NovikovElement.one(group)
    ident = {z: {z: one} for z in labels}
    total = {z: dict(col) for z, col in ident.items()}
    power = ident
    neg = {s: {t: -e for t, e in col.items()} for s, col in n_mat.items()}
    for _ in range(steps):
        power = _matmul_entry(neg, power, group)
        if not power:
            break
        for s, col in power.items():
            for t, e in col.items():
                d = total.setdefault(s, {})
                d[t] = d[t] + e if t in d else e
    return {s: {t: e for t, e in col.items() if e} for s, col in total.items()}


def _plus_identity(n_mat: Matrix, group, labels) -> Matrix:
    one = NovikovElement.one(group)
    out = {s: dict(col) for s, col in n_mat.items()}
    for z in labels:
        d = out.setdefault(z, {})
        d[z] = d[z] + one if z in d else one
    return {s: {t: e for t, e in col.items() if e} for s, col in out.items()}


def _random_lowering(rng, c: FloerComplex, radius, density=0.5, target: Optional[FloerComplex] = None) -> Matrix:
    """Degree-preserving entries z -> y q^C with y earlier in orbit order and lower action."""
    target = target or c
    g = c.group
    labels = c.labels()
    n: Matrix = {}
    for i, z in enumerate(labels):
        for y in labels[:i]:
            if rng.random() > density:
                continue
            caps = [cap for cap in _caps_for(target, z, y, 0, radius)
                    if target.action((y, cap)) < target.orbit(z).base_action]
            if caps:
                n.setdefault(z, {})[y] = _mono(g, rng.choice(caps), rng.choice((1, -1, 2, Fraction(1, 2))))
    return n


@dataclass
class RandomInstance:
    complex: FloerComplex
    classes: List[HomologyClassSpec]
    phi: Matrix


def random_complex(rng: random.Random, max_orbits=6, radius=None, group=None, name="R",
                   density=0.5) -> RandomInstance:
    for _ in range(200):
        inst = _try_complex(rng, max_orbits, radius, group, name, density)
        if inst is not None:
            return inst
    raise RuntimeError("could not generate a valid random complex")


def _try_complex(rng, max_orbits, radius, group, name, density):
    g = group or random_group(rng)
    r = rng.choice((1, 2)) if radius is None else radius
    n = rng.randint(2, max_orbits)
    orbits = [Orbit(f"z{i}", _rat(rng), rng.randint(0, 2)) for i in range(n)]
    # distinct actions keep the generator order transparent
    if len({o.base_action for o in orbits}) < n:
        return None
    orbits.sort(key=lambda o: o.base_action)
    c0 = FloerComplex(g, orbits, {}, box=r, degree_factor=2, dim=2, name=name)
    labels = c0.labels()
    free = list(labels)
    rng.shuffle(free)
    d0: Matrix = {}
    used = set()
    for z in free:
        if z in used:
            continue
        partners = [x for x in free if x not in used and x != z]
        rng.shuffle(partners)
        for x in partners:
            caps = _caps_for(c0, z, x, -1, r)
            if caps and rng.random() < 0.7:
                d0[z] = {x: _mono(g, rng.choice(caps), rng.choice((1, -1, 2)))}
                used |= {z, x}
                break
    base = c0.with_boundary(d0)
    n_mat = _random_lowering(rng, base, r, density)
    phi = _plus_identity(n_mat, g, labels)
    phi_inv = _inverse_unipotent(n_mat, g, labels, n)
    bd = _matmul_entry(phi, _matmul_entry(d0, phi_inv, g), g)
    c = base.with_boundary(bd)
    if not validate_complex(c).ok:
        return None
    cycles = [z for z in labels if z not in used]
    classes = []
    for k, u in enumerate(cycles):
        vec = {}
        for t, e in phi.get(u, {}).items():
            for exp, v in e.terms.items():
                vec[(t, exp)] = vec.get((t, exp), Fraction(0)) + v
        # add a random boundary so the reduction has work to do
        gens = [x for x in c.boxed_generators() if c.degree(x) == c.orbit(u).base_degree + 1]
        for x in rng.sample(gens, min(2, len(gens))):
            sign = rng.choice((1, -1))
            for y, v in c.boundary_of(x).items():
                vec[y] = vec.get(y, Fraction(0)) + sign * v
        rep = c.chain({k2: v for k2, v in vec.items() if v})
        if rep:
            classes.append(HomologyClassSpec(c, rep, f"{name}.{u}"))
    return RandomInstance(c, classes, phi)


@dataclass
class ContinuityInstance:
    h: FloerComplex
    k: FloerComplex
    h_hk: ChainMapData
    h_kh: ChainMapData
    class_h: HomologyClassSpec
    class_k: HomologyClassSpec
    constant: Optional[Fraction] = None


def random_continuity_pair(rng: random.Random, constant=False, max_orbits=5) -> ContinuityInstance:
    while True:
        inst = random_complex(rng, max_orbits, radius=1, group=random_group(rng, (0,)), name="H")
        if inst.classes:
            break
    H = inst.complex
    g = H.group
    cls = rng.choice(inst.classes)
    if constant:
        cval = _rat(rng, -2, 2)
        shifts = {z: -cval for z in H.labels()}
    else:
        cval = None
        shifts = {z: _rat(rng, -1, 1, (2, 3, 4)) for z in H.labels()}
    for _ in range(200):
        orbits = [Orbit(o.label, o.base_action + shifts[o.label], o.base_degree) for o in H.orbits]
        shell = FloerComplex(g, orbits, {}, box=H.box, degree_factor=H.degree_factor, dim=H.dim, name="K")
        n_mat = {} if constant else _random_lowering(rng, shell, 1, 0.4)
        psi = _plus_identity(n_mat, g, H.labels())
        psi_inv = _inverse_unipotent(n_mat, g, H.labels(), len(H.orbits))
        bd = _matmul_entry(psi, _matmul_entry(H.boundary, psi_inv, g), g)
        K = shell.with_boundary(bd)
        if validate_complex(K).ok:
            break
        shifts = {z: v / 2 for z, v in shifts.items()}
    else:
        raise RuntimeError("could not perturb the complex")
    probe_hk = ChainMapData(H, K, psi, Fraction(10 ** 6))
    probe_kh = ChainMapData(K, H, psi_inv, Fraction(10 ** 6))
    up = probe_hk.actual_shift()
    down = probe_kh.actual_shift()
    if constant:
        up = down = None
    slack = Fraction(rng.choice((0, 0, 1)), 4)
    s_plus = (up if up is not None else -cval) + (0 if constant else slack)
    s_kh = (down if down is not None else cval) + (0 if constant else slack)
    h_hk = ChainMapData(H, K, psi, s_plus, "h_HK")
    h_kh = ChainMapData(K, H, psi_inv, s_kh, "h_KH")
    rep_k = K.chain(h_hk.apply_vec(cls.representative.generators()))
    return ContinuityInstance(H, K, h_hk, h_kh, cls, HomologyClassSpec(K, rep_k, cls.name), cval)


@dataclass
class ProductInstance:
    product: PantsProductData
    class_a: HomologyClassSpec
    class_b: HomologyClassSpec


def random_product(rng: random.Random, max_orbits=3) -> ProductInstance:
    g = random_group(rng, (0,))
    while True:
        a = random_complex(rng, max_orbits, radius=1, group=g, name="A")
        b = random_complex(rng, max_orbits, radius=1, group=g, name="B")
        if a.classes and b.classes:
            break
    p = tensor_product(a.complex, b.complex, "tensor")
    t = p.target
    tol = rng.choice((Fraction(0), Fraction(1, 10), Fraction(1, 2)))
    hom = {}
    for x in a.complex.labels():
        for y in b.complex.labels():
            if rng.random() > 0.5:
                continue
            ox, oy = a.complex.orbit(x), b.complex.orbit(y)
            want = ox.base_degree + oy.base_degree + 1
            bound = ox.base_action + oy.base_action + tol
            opts = [(z, (e,)) for z in t.labels() for e in (-1, 0, 1)
                    if t.degree((z, (e,))) == want and t.action((z, (e,))) <= bound]
            if opts:
                z, cap = rng.choice(opts)
                hom[(x, y)] = t.chain({(z, cap): Fraction(rng.choice((1, -1, 2)))})
    p = homotopy_perturb(p, hom, tol, "perturbed tensor")
    return ProductInstance(p, rng.choice(a.classes), rng.choice(b.classes))


@dataclass
class GapInstance:
    element: QuantumElement
    morse: MorseData
    eps: Fraction
    levels: List[Fraction]


def random_two_term_class(rng: random.Random, model: CohomologyModel, morse: MorseData,
                          epsilons=(Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000), Fraction(1, 10000))
                          ) -> GapInstance:
    """Two basis classes at distinct exponents, with the largest listed eps meeting the gap precondition."""
    g = model.group
    names = [n for n, _ in model.basis if n in morse.cycles]
    fmin, fmax = morse.f_bounds
    size = max(fmax - fmin, abs(fmin), abs(fmax))
    while True:
        e1, e2 = (tuple(rng.randint(-3, 3) for _ in range(g.rank)) for _ in range(2))
        l1, l2 = sorted((-g.area(e1), -g.area(e2)), reverse=True)
        if l1 == l2 or l1 == 0:
            continue
        gap = min(l1 - l2, abs(l1))
        ok = [e for e in epsilons if e * size < gap / 2]
        if not ok:
            continue
        a = (QuantumElement.basis(model, rng.choice(names), e1, rng.choice((1, -1, 2, Fraction(1, 3))))
             + QuantumElement.basis(model, rng.choice(names), e2, rng.choice((1, -2, 3))))
        return GapInstance(a, morse, rng.choice(ok), [l1, l2])
