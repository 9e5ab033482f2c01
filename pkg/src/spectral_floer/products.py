"""Pants-product data on pairs of complexes and the triangle inequality.

A product is given by its values on pairs of orbits with trivial caps and is
extended bilinearly and Novikov-equivariantly: the product of ``x q^A`` and
``y q^B`` is ``(x * y) q^{A+B}``.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .checks import ValidationReport
from .complex import FloerComplex, GenVector, NovikovChain, Orbit, _add_into, _shift
from .errors import InputError, ZeroClass
from .novikov import NovikovElement, as_fraction
from .spectral import HomologyClassSpec, spectral_number


class PantsProductData:
    def __init__(self, sources: Tuple[FloerComplex, FloerComplex], target: FloerComplex,
                 constants: Mapping[Tuple[str, str], NovikovChain], tolerance=0,
                 degree_shift: int = 0, name: str = ""):
        self.sources = tuple(sources)
        self.target = target
        self.tolerance = as_fraction(tolerance)
        if self.tolerance < 0:
            raise InputError("product tolerance must be nonnegative")
        self.degree_shift = int(degree_shift)
        self.name = name
        self.constants: Dict[Tuple[str, str], NovikovChain] = {}
        for (a, b), ch in constants.items():
            self.sources[0].orbit(a)
            self.sources[1].orbit(b)
            target.check_chain(ch, InputError)
            if ch:
                self.constants[(a, b)] = ch

    def product_vec(self, u: Mapping, v: Mapping) -> GenVector:
        out: GenVector = {}
        for (x, ca), a in u.items():
            for (y, cb), b in v.items():
                ch = self.constants.get((x, y))
                if ch is None:
                    continue
                s = _shift(ca, cb)
                for (z, cz), c in ch.generators().items():
                    _add_into(out, (z, _shift(cz, s)), a * b * c)
        return out


def product_apply(p: PantsProductData, alpha: NovikovChain, beta: NovikovChain) -> NovikovChain:
    p.sources[0].check_chain(alpha)
    p.sources[1].check_chain(beta)
    return p.target.chain(p.product_vec(alpha.generators(), beta.generators()))


def _sign(c: FloerComplex, label) -> int:
    return -1 if c.orbit(label).base_degree % 2 else 1


def validate_product(p: PantsProductData) -> ValidationReport:
    """Grading, level contract at the declared tolerance, and the Leibniz rule with Koszul signs."""
    rep = ValidationReport(f"product {p.name}")
    c1, c2 = p.sources
    t = p.target
    zero = t.group.zero
    grading, levels = [], []
    for (x, y), ch in sorted(p.constants.items()):
        want = c1.orbit(x).base_degree + c2.orbit(y).base_degree - p.degree_shift
        bound = c1.orbit(x).base_action + c2.orbit(y).base_action + p.tolerance
        for gen in sorted(ch.generators(), key=t.key):
            if t.degree(gen) != want:
                grading.append((x, y, gen, t.degree(gen), want))
            if t.action(gen) > bound:
                levels.append((x, y, gen, t.action(gen), bound))
    for x, y, gen, d, w in grading:
        rep.add("product_grading", False, f"target degree {d}, expected {w}", f"{x}*{y} -> {gen[0]} q^{list(gen[1])}")
    if not grading:
        rep.add("product_grading", True)
    for x, y, gen, a, b in levels:
        rep.add("level_contract", False, f"action {a} exceeds {b}", f"{x}*{y} -> {gen[0]} q^{list(gen[1])}")
    if not levels:
        rep.add("level_contract", True, f"tolerance {p.tolerance}")

    bad = []
    for x in c1.labels():
        for y in c2.labels():
            gx = {(x, zero): Fraction(1)}
            gy = {(y, zero): Fraction(1)}
            lhs = t.apply_boundary_vec(p.product_vec(gx, gy))
            rhs = p.product_vec(c1.apply_boundary_vec(gx), gy)
            for g, v in p.product_vec(gx, c2.apply_boundary_vec(gy)).items():
                _add_into(rhs, g, _sign(c1, x) * v)
            if lhs != rhs:
                bad.append((x, y))
    for x, y in bad:
        rep.add("leibniz", False, "d(x*y) differs from dx*y + (-1)^|x| x*dy", f"{x}*{y}")
    if not bad:
        rep.add("leibniz", True, "Koszul sign (-1)^deg(x)")
    return rep


@dataclass
class TriangleResult:
    ok: bool
    rho_a: Fraction
    rho_b: Fraction
    rho_ab: Optional[Fraction]
    tolerance: Fraction
    vacuous: bool = False

    @property
    def slack(self):
        if self.rho_ab is None:
            return None
        return self.rho_a + self.rho_b + self.tolerance - self.rho_ab


def triangle_report(p: PantsProductData, class_a: HomologyClassSpec, class_b: HomologyClassSpec,
                    radius=None) -> TriangleResult:
    ra = spectral_number(class_a, radius)
    rb = spectral_number(class_b, radius)
    prod = product_apply(p, ra.witness, rb.witness)
    try:
        rab = spectral_number(HomologyClassSpec(p.target, prod, "product"), radius).rho
    except ZeroClass:
        return TriangleResult(True, ra.rho, rb.rho, None, p.tolerance, vacuous=True)
    return TriangleResult(rab <= ra.rho + rb.rho + p.tolerance, ra.rho, rb.rho, rab, p.tolerance)


# -- constructions -------------------------------------------------------------

def pair_label(x: str, y: str) -> str:
    return f"{x}|{y}"


def tensor_complex(c1: FloerComplex, c2: FloerComplex, name: str = "") -> FloerComplex:
    """Tensor product complex with d(x|y) = dx|y + (-1)^|x| x|dy."""
    if c1.group != c2.group:
        raise InputError("tensor factors must share a group")
    g = c1.group
    orbits = [Orbit(pair_label(x.label, y.label), x.base_action + y.base_action, x.base_degree + y.base_degree)
              for x in c1.orbits for y in c2.orbits]
    bd: Dict[str, Dict[str, NovikovElement]] = {}

    def put(src, tgt, el):
        col = bd.setdefault(src, {})
        col[tgt] = col[tgt] + el if tgt in col else el

    for x in c1.orbits:
        for y in c2.orbits:
            src = pair_label(x.label, y.label)
            for x2, el in c1.boundary.get(x.label, {}).items():
                put(src, pair_label(x2, y.label), el)
            for y2, el in c2.boundary.get(y.label, {}).items():
                put(src, pair_label(x.label, y2), el.scale(_sign(c1, x.label)))
    dim = c1.dim + c2.dim if c1.dim is not None and c2.dim is not None else None
    box = max(b for b in (c1.box, c2.box) if b is not None) if (c1.box, c2.box) != (None, None) else None
    return FloerComplex(g, orbits, bd, box=box, degree_factor=c1.degree_factor, dim=dim,
                        name=name or f"{c1.name}x{c2.name}")


def tensor_product(c1: FloerComplex, c2: FloerComplex, name: str = "") -> PantsProductData:
    t = tensor_complex(c1, c2)
    consts = {(x, y): NovikovChain.generator(c1.group, pair_label(x, y))
              for x in c1.labels() for y in c2.labels()}
    return PantsProductData((c1, c2), t, consts, 0, 0, name)


def unit_product(unit_complex: FloerComplex, unit_label: str, c: FloerComplex, name: str = "") -> PantsProductData:
    """Left multiplication by a unit generator: e * z = z."""
    e = unit_complex.orbit(unit_label)
    consts = {(unit_label, z): NovikovChain.generator(c.group, z) for z in c.labels()}
    tol = max(Fraction(0), -e.base_action)
    return PantsProductData((unit_complex, c), c, consts, tol, e.base_degree, name)


def homotopy_perturb(p: PantsProductData, homotopy: Mapping[Tuple[str, str], NovikovChain],
                     tolerance=None, name: str = "") -> PantsProductData:
    """Replace m by m + dH + HD, where D(x, y) = (dx, y) + (-1)^|x| (x, dy).

    The result satisfies the Leibniz rule whenever m does.
    """
    c1, c2 = p.sources
    t = p.target
    zero = t.group.zero

    def h_vec(u: Mapping, v: Mapping) -> GenVector:
        out: GenVector = {}
        for (x, ca), a in u.items():
            for (y, cb), b in v.items():
                ch = homotopy.get((x, y))
                if ch is None:
                    continue
                s = _shift(ca, cb)
                for (z, cz), c in ch.generators().items():
                    _add_into(out, (z, _shift(cz, s)), a * b * c)
        return out

    consts = {}
    for x in c1.labels():
        for y in c2.labels():
            gx = {(x, zero): Fraction(1)}
            gy = {(y, zero): Fraction(1)}
            acc = p.product_vec(gx, gy)
            hxy = h_vec(gx, gy)
            for g, v in t.apply_boundary_vec(hxy).items():
                _add_into(acc, g, v)
            for g, v in h_vec(c1.apply_boundary_vec(gx), gy).items():
                _add_into(acc, g, v)
            for g, v in h_vec(gx, c2.apply_boundary_vec(gy)).items():
                _add_into(acc, g, _sign(c1, x) * v)
            if acc:
                consts[(x, y)] = t.chain(acc)
    tol = p.tolerance if tolerance is None else tolerance
    return PantsProductData((c1, c2), t, consts, tol, p.degree_shift, name or p.name)
