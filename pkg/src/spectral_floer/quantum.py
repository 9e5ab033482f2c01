"""Quantum cohomology models, Morse-model chain complexes and bounded functionals.

A class is stored as ``exponent -> coefficient vector`` over the model basis.
Upward classes read an exponent ``A`` as ``q^{-A}``; downward (homology)
elements read it as ``q^{A}`` and their vectors are taken in the basis of
Poincare duals ``PD(e_j)``.  Flat and sharp therefore only retag the direction.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from . import linalg
from .checks import ValidationReport
from .complex import FloerComplex, Generator, GenVector, NovikovChain, Orbit, _add_into
from .errors import (
    DegenerateMorseFunction,
    DirectionMismatch,
    InputError,
    ModelMismatch,
    MorseBoundaryNotSquareZero,
    ZeroClass,
)
from .novikov import Direction, Exponent, GammaGroup, NovikovElement, as_fraction
from .spectral import HomologyClassSpec, gap_bound_check, spectral_number

Vector = Tuple[Fraction, ...]


class CohomologyModel:
    def __init__(self, group: GammaGroup, dim: int, basis: Sequence[Tuple[str, int]],
                 pairing: Sequence[Sequence], constants: Mapping[Tuple[int, int, Exponent], Sequence],
                 degree_factor: int = 2, name: str = ""):
        self.group = group
        self.dim = int(dim)
        self.basis = [(str(n), int(d)) for n, d in basis]
        self.name = name
        self.degree_factor = int(degree_factor)
        n = len(self.basis)
        self.pairing = [[as_fraction(x) for x in row] for row in pairing]
        if len(self.pairing) != n or any(len(r) != n for r in self.pairing):
            raise InputError(f"pairing matrix of model {name!r} must be {n}x{n}")
        self.constants: Dict[Tuple[int, int, Exponent], Vector] = {}
        for (i, j, exp), vec in constants.items():
            vec = tuple(as_fraction(x) for x in vec)
            if len(vec) != n:
                raise InputError(f"structure constant ({i}, {j}, {list(exp)}) has wrong length")
            if any(vec):
                self.constants[(int(i), int(j), group.check_exponent(exp))] = vec

    @property
    def size(self):
        return len(self.basis)

    def index(self, name) -> int:
        for i, (n, _) in enumerate(self.basis):
            if n == name:
                return i
        raise InputError(f"model {self.name!r} has no basis element {name!r}")

    @property
    def unit_index(self) -> int:
        return next(i for i, (_, d) in enumerate(self.basis) if d == 0)

    def zero_vector(self):
        return (Fraction(0),) * self.size

    def basis_vector(self, i):
        return tuple(Fraction(int(k == i)) for k in range(self.size))


def validate_model(m: CohomologyModel) -> ValidationReport:
    rep = ValidationReport(f"model {m.name}")
    g = m.group
    bad = []
    for (i, j, exp), vec in sorted(m.constants.items()):
        for k, v in enumerate(vec):
            if v and m.basis[k][1] != m.basis[i][1] + m.basis[j][1] - m.degree_factor * g.chern(exp):
                bad.append(f"{m.basis[i][0]}*{m.basis[j][0]} q^-{list(exp)} -> {m.basis[k][0]}")
    for b in bad:
        rep.add("grading", False, "degree equation fails", b)
    if not bad:
        rep.add("grading", True)
    rep.add("pairing_nondegenerate", linalg.rank(m.pairing, m.size) == m.size)
    u = m.unit_index
    unit_ok = all(m.constants.get((u, j, g.zero)) == m.basis_vector(j) and
                  m.constants.get((j, u, g.zero)) == m.basis_vector(j) for j in range(m.size))
    unit_ok &= not any(i == u and exp != g.zero for (i, _, exp) in m.constants)
    rep.add("unit", unit_ok, f"{m.basis[u][0]} is a two-sided unit of the classical part")
    raise_ok = all(g.area(exp) < 0 for (_, _, exp) in m.constants if exp != g.zero)
    rep.add("corrections_raise_valuation", raise_ok, "every quantum correction has omega(-C) > 0")
    return rep


class QuantumElement:
    """Finite sum of basis vectors times Novikov monomials."""

    def __init__(self, model: CohomologyModel, terms: Mapping = (), direction=Direction.UP):
        self.model = model
        self.direction = direction
        clean: Dict[Exponent, Vector] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exp, vec in items:
            exp = model.group.check_exponent(exp)
            vec = tuple(as_fraction(x) for x in vec)
            if len(vec) != model.size:
                raise InputError("coefficient vector has the wrong length")
            if exp in clean:
                vec = tuple(a + b for a, b in zip(clean[exp], vec))
            if any(vec):
                clean[exp] = vec
            else:
                clean.pop(exp, None)
        self.terms = clean

    @classmethod
    def basis(cls, model, name, exp=None, coeff=1, direction=Direction.UP):
        i = model.index(name)
        exp = model.group.zero if exp is None else tuple(exp)
        vec = tuple(Fraction(coeff) * x for x in model.basis_vector(i))
        return cls(model, {exp: vec}, direction)

    def __bool__(self):
        return bool(self.terms)

    def _check(self, other):
        if self.model is not other.model:
            raise ModelMismatch("classes belong to different models")
        if self.direction != other.direction:
            raise DirectionMismatch("classes have different directions")

    def __add__(self, other):
        self._check(other)
        return QuantumElement(self.model, list(self.terms.items()) + list(other.terms.items()), self.direction)

    def scale(self, c):
        c = as_fraction(c)
        return QuantumElement(self.model, {e: tuple(c * x for x in v) for e, v in self.terms.items()},
                              self.direction)

    def __eq__(self, other):
        if not isinstance(other, QuantumElement):
            return NotImplemented
        return self.model is other.model and self.direction == other.direction and self.terms == other.terms

    def degrees(self):
        g, f = self.model.group, self.model.degree_factor
        return {self.model.basis[i][1] + f * g.chern(exp)
                for exp, vec in self.terms.items() for i, x in enumerate(vec) if x}

    def __repr__(self):
        parts = []
        for exp, vec in sorted(self.terms.items()):
            for i, x in enumerate(vec):
                if x:
                    parts.append(f"{x}*{self.model.basis[i][0]}*q^{list(exp)}")
        return " + ".join(parts) or "0"


QuantumClass = QuantumElement


def quantum_product(a: QuantumElement, b: QuantumElement) -> QuantumElement:
    a._check(b)
    if a.direction is not Direction.UP:
        raise DirectionMismatch("the quantum product acts on upward classes")
    m = a.model
    out: Dict[Exponent, List[Fraction]] = {}
    for (i, j, c), vec in m.constants.items():
        for ea, va in a.terms.items():
            if not va[i]:
                continue
            for eb, vb in b.terms.items():
                s = va[i] * vb[j]
                if not s:
                    continue
                exp = tuple(x + y + z for x, y, z in zip(ea, eb, c))
                acc = out.setdefault(exp, [Fraction(0)] * m.size)
                for k, x in enumerate(vec):
                    acc[k] += s * x
    return QuantumElement(m, {e: tuple(v) for e, v in out.items()}, Direction.UP)


def qh_valuation(a: QuantumElement):
    """min of omega(-A) over the support."""
    if not a:
        raise ZeroClass("valuation of the zero class")
    return min(-a.model.group.area(e) for e in a.terms)


def flat(a: QuantumElement) -> QuantumElement:
    if a.direction is not Direction.UP:
        raise DirectionMismatch("flat takes an upward class")
    return QuantumElement(a.model, a.terms, Direction.DOWN)


def sharp(b: QuantumElement) -> QuantumElement:
    if b.direction is not Direction.DOWN:
        raise DirectionMismatch("sharp takes a downward element")
    return QuantumElement(b.model, b.terms, Direction.UP)


def pairing(a: QuantumElement, b: QuantumElement) -> Fraction:
    """Sum over matching exponents of the Poincare pairing of the coefficient vectors."""
    if a.model is not b.model:
        raise ModelMismatch("classes belong to different models")
    if a.direction is not Direction.UP or b.direction is not Direction.DOWN:
        raise DirectionMismatch("pairing needs an upward class and a downward element")
    P = a.model.pairing
    total = Fraction(0)
    for exp, va in a.terms.items():
        vb = b.terms.get(exp)
        if vb is None:
            continue
        for i, x in enumerate(va):
            if x:
                total += x * sum((P[i][j] * y for j, y in enumerate(vb) if y), Fraction(0))
    return total


# -- Morse model ---------------------------------------------------------------

@dataclass
class CriticalPoint:
    name: str
    value: Fraction
    index: int


@dataclass
class MorseData:
    """Critical points of f, the Morse boundary of -f, and cycles for the Poincare duals."""

    points: List[CriticalPoint]
    incidence: Dict[str, Dict[str, int]]
    dim: int
    cycles: Dict[str, Dict[str, Fraction]] = field(default_factory=dict)

    def point(self, name) -> CriticalPoint:
        for p in self.points:
            if p.name == name:
                return p
        raise InputError(f"unknown critical point {name!r}")

    @property
    def f_bounds(self):
        vals = [p.value for p in self.points]
        return min(vals), max(vals)


def check_morse(m: MorseData) -> ValidationReport:
    rep = ValidationReport("morse data")
    sq: Dict[Tuple[str, str], int] = {}
    for s, col in m.incidence.items():
        for mid, a in col.items():
            for t, b in m.incidence.get(mid, {}).items():
                sq[(s, t)] = sq.get((s, t), 0) + a * b
    bad = sorted(k for k, v in sq.items() if v)
    for s, t in bad:
        rep.add("morse_square_zero", False, f"coefficient {sq[(s, t)]}", f"{s} -> {t}")
    if not bad:
        rep.add("morse_square_zero", True)
    idx_bad = []
    for s, col in m.incidence.items():
        for t, a in col.items():
            if a and m.point(t).index != m.point(s).index + 1:
                idx_bad.append((s, t))
            if a and not m.point(t).value > m.point(s).value:
                idx_bad.append((s, t))
    for s, t in idx_bad:
        rep.add("morse_incidence", False, "entry must raise the index of f by one and increase f", f"{s} -> {t}")
    if not idx_bad:
        rep.add("morse_incidence", True)
    same = [(p.name, q.name) for p in m.points for q in m.points
            if q.index == p.index + 1 and p.value == q.value]
    for a, b in same:
        rep.add("distinct_adjacent_values", False, "equal critical values at adjacent indices", f"{a}, {b}")
    if not same:
        rep.add("distinct_adjacent_values", True)
    return rep


def quantum_complex_from_morse(morse: MorseData, eps, group: GammaGroup, degree_factor: int = 2,
                               box: Optional[int] = 1, name: str = "") -> FloerComplex:
    """Complex of -eps*f tensored with the Novikov ring: action -eps*f(p), degree dim - index_f(p)."""
    eps = as_fraction(eps)
    rep = check_morse(morse)
    if "morse_square_zero" in rep.failed_names():
        raise MorseBoundaryNotSquareZero("; ".join(c.line() for c in rep.failures()))
    if rep.failures():
        raise DegenerateMorseFunction("; ".join(c.line() for c in rep.failures()))
    orbits = [Orbit(p.name, -eps * p.value, morse.dim - p.index) for p in morse.points]
    bd = {}
    for s, col in morse.incidence.items():
        for t, a in col.items():
            if a:
                bd.setdefault(s, {})[t] = NovikovElement.monomial(group, Direction.DOWN, None, a)
    return FloerComplex(group, orbits, bd, box=box, degree_factor=degree_factor, dim=morse.dim, name=name)


def fundamental_cycle(morse: MorseData, c: FloerComplex) -> NovikovChain:
    """Sum of the minima of f, the top-degree generators."""
    return c.chain({(p.name, c.group.zero): Fraction(1) for p in morse.points if p.index == 0})


def top_degree_unique(c: FloerComplex, radius=None) -> bool:
    """No boundary of a boxed generator touches a cap-zero top-degree generator."""
    top = {(o.label, c.group.zero) for o in c.orbits if o.base_degree == c.dim}
    for g in c.boxed_generators(radius):
        if c.degree(g) == c.dim + 1:
            if top & set(c.boundary_of(g)):
                return False
    return True


def flat_representative(morse: MorseData, c: FloerComplex, a: QuantumElement) -> NovikovChain:
    """Novikov cycle representing flat(a): each PD(e_j) q^A becomes the Morse cycle of e_j shifted by A."""
    b = flat(a) if a.direction is Direction.UP else a
    out: GenVector = {}
    for exp, vec in b.terms.items():
        for j, x in enumerate(vec):
            if not x:
                continue
            name = a.model.basis[j][0]
            if name not in morse.cycles:
                raise InputError(f"no Morse cycle supplied for the dual of {name!r}")
            for p, cval in morse.cycles[name].items():
                _add_into(out, (p, exp), x * as_fraction(cval))
    return c.chain(out)


@dataclass
class GapOutcome:
    ok: bool
    rho: Fraction
    window: object


def morse_gap_check(morse: MorseData, a: QuantumElement, eps, box: Optional[int] = None) -> GapOutcome:
    """Spectral number of flat(a) on the Morse model against the gap window."""
    m = a.model
    radius = box if box is not None else max([abs(x) for e in a.terms for x in e] + [1])
    c = quantum_complex_from_morse(morse, eps, m.group, m.degree_factor, radius, "morse")
    rep = flat_representative(morse, c, a)
    rho = spectral_number(HomologyClassSpec(c, rep, "a")).rho
    levels = [-m.group.area(e) for e in a.terms]
    ok, window = gap_bound_check(levels, eps, morse.f_bounds, rho)
    return GapOutcome(ok, rho, window)


# -- bounded functionals -------------------------------------------------------

@dataclass
class BoundedFunctional:
    """Linear functional on the chain complex, given by its values on capped generators."""

    complex: FloerComplex
    values: Dict[Generator, Fraction]
    threshold: Fraction
    name: str = ""

    def __call__(self, vec: Mapping[Generator, Fraction]) -> Fraction:
        return sum((self.values.get(g, Fraction(0)) * c for g, c in vec.items()), Fraction(0))


def bounded_check(mu: BoundedFunctional, radius=None):
    """Every generator with -omega(A) <= threshold must get value zero.

    Returns (ok, list of violating generators).
    """
    g = mu.complex.group
    gens = set(mu.complex.boxed_generators(radius)) | set(mu.values)
    bad = sorted(x for x in gens if mu.values.get(x) and -g.area(x[1]) <= mu.threshold)
    return not bad, bad


def pullback(mu: BoundedFunctional, radius=None) -> BoundedFunctional:
    """The functional g -> mu(boundary g) on boxed generators."""
    c = mu.complex
    vals = {}
    for x in c.boxed_generators(radius):
        v = mu(c.boundary_of(x))
        if v:
            vals[x] = v
    caps = [e for col in c.boundary.values() for el in col.values() for e in el.terms]
    drop = min((c.group.area(e) for e in caps), default=Fraction(0))
    return BoundedFunctional(c, vals, mu.threshold + drop, f"pullback({mu.name})")


def cochain_valuation(c: FloerComplex, cochain: Mapping[Generator, Fraction]):
    if not any(cochain.values()):
        raise ZeroClass("valuation of the zero cochain")
    return min(-c.group.area(cap) for (_, cap), v in cochain.items() if v)


def sigma_embed(c: FloerComplex, cochain: Mapping[Generator, Fraction], margin=Fraction(1)) -> BoundedFunctional:
    """The functional pairing with a quantum cochain sum of x* q^{-A}, threshold v(a) - margin."""
    vals = {g: as_fraction(v) for g, v in cochain.items() if v}
    return BoundedFunctional(c, vals, cochain_valuation(c, vals) - as_fraction(margin), "sigma")


def default_coboundary(c: FloerComplex):
    """Transpose of the boundary: x -> {z: entry} for each entry of d z in x."""
    out: Dict[str, Dict[str, NovikovElement]] = {}
    for z, col in c.boundary.items():
        for x, el in col.items():
            out.setdefault(x, {})[z] = el
    return out


def apply_coboundary(c: FloerComplex, cochain: Mapping[Generator, Fraction], delta=None) -> GenVector:
    """delta(x* q^{-A}) contains coeff * z* q^{-(A - C)} for each term coeff*q^C of delta[x][z]."""
    delta = default_coboundary(c) if delta is None else delta
    out: GenVector = {}
    for (x, cap), v in cochain.items():
        for z, el in delta.get(x, {}).items():
            for exp, coeff in el.terms.items():
                _add_into(out, (z, tuple(a - b for a, b in zip(cap, exp))), v * coeff)
    return out


def sigma_chain_map_check(c: FloerComplex, cochain: Mapping[Generator, Fraction], delta=None,
                          margin=Fraction(1), radius=None) -> ValidationReport:
    """Compare sigma(delta a) with the pullback of sigma(a) on every boxed generator."""
    rep = ValidationReport("sigma chain map")
    left = apply_coboundary(c, cochain, delta)
    mu = sigma_embed(c, cochain, margin)
    gens = set(c.boxed_generators(radius)) | set(left)
    bad = []
    for g in sorted(gens, key=c.key):
        lv = left.get(g, Fraction(0))
        rv = mu(c.boundary_of(g))
        if lv != rv:
            bad.append((g, lv, rv))
    for g, lv, rv in bad:
        rep.add("sigma_chain_map", False, f"sigma(delta a) = {lv}, pullback = {rv}", f"{g[0]} q^{list(g[1])}")
    if not bad:
        rep.add("sigma_chain_map", True)
    ok, viol = bounded_check(pullback(mu, radius), radius)
    rep.add("pullback_bounded", ok, "", ", ".join(f"{x[0]} q^{list(x[1])}" for x in viol) or None)
    return rep
