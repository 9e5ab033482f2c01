"""Filtered chain complexes of capped generators over the downward Novikov ring.

A generator is a pair ``(label, cap)``.  Its action is
``base_action - omega(cap)`` and its degree is
``base_degree - degree_factor * c1(cap)``.  The boundary matrix stores, for
each source orbit, the Novikov coefficient of every target orbit; applying it
to a capped generator shifts all caps by the generator's own cap.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Tuple

from . import linalg
from .checks import ValidationReport
from .errors import (
    AmbiguousLeadingTerm,
    DegreeMismatch,
    DuplicateLabel,
    InfiniteWindowPopulation,
    InputError,
    ShiftBoundViolated,
    SourceMismatch,
)
from .novikov import (
    INF,
    Direction,
    Exponent,
    GammaGroup,
    NovikovElement,
    as_fraction,
    box_exponents,
    leading_term,
)

Generator = Tuple[str, Exponent]
GenVector = Dict[Generator, Fraction]

DOWN = Direction.DOWN


@dataclass(frozen=True)
class Orbit:
    label: str
    base_action: Fraction
    base_degree: int

    def __post_init__(self):
        object.__setattr__(self, "base_action", as_fraction(self.base_action))
        object.__setattr__(self, "base_degree", int(self.base_degree))


def _add_into(acc: GenVector, gen: Generator, c: Fraction):
    v = acc.get(gen, Fraction(0)) + c
    if v:
        acc[gen] = v
    else:
        acc.pop(gen, None)


def _shift(cap: Exponent, by: Exponent) -> Exponent:
    return tuple(a + b for a, b in zip(cap, by))


class NovikovChain:
    """A chain: orbit label -> downward Novikov coefficient."""

    __slots__ = ("group", "_coeffs")

    def __init__(self, group: GammaGroup, coeffs: Mapping[str, NovikovElement] = ()):
        self.group = group
        out = {}
        items = coeffs.items() if isinstance(coeffs, Mapping) else coeffs
        for label, el in items:
            if el.direction is not DOWN:
                raise InputError("chain coefficients must be downward Novikov elements")
            if label in out:
                el = out[label] + el
            if el:
                out[label] = el
            else:
                out.pop(label, None)
        self._coeffs = out

    @classmethod
    def from_generators(cls, group: GammaGroup, gens: Mapping[Generator, Fraction]):
        per: Dict[str, Dict[Exponent, Fraction]] = {}
        for (label, cap), c in gens.items():
            if c:
                d = per.setdefault(label, {})
                d[cap] = d.get(cap, Fraction(0)) + Fraction(c)
        return cls(group, {lab: NovikovElement(group, DOWN, t) for lab, t in per.items()})

    @classmethod
    def generator(cls, group, label, cap=None, coeff=1):
        cap = group.zero if cap is None else tuple(cap)
        return cls.from_generators(group, {(label, cap): Fraction(coeff)})

    @classmethod
    def zero(cls, group):
        return cls(group)

    def generators(self) -> GenVector:
        return {(lab, cap): c for lab, el in self._coeffs.items() for cap, c in el.terms.items()}

    def coefficient(self, label) -> NovikovElement:
        return self._coeffs.get(label, NovikovElement(self.group, DOWN))

    def labels(self):
        return sorted(self._coeffs)

    def items(self):
        return sorted(self._coeffs.items())

    def __bool__(self):
        return bool(self._coeffs)

    def __add__(self, other):
        return NovikovChain(self.group, list(self._coeffs.items()) + list(other._coeffs.items()))

    def __neg__(self):
        return NovikovChain(self.group, {k: -v for k, v in self._coeffs.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c):
        return NovikovChain(self.group, {k: v.scale(c) for k, v in self._coeffs.items()})

    def shift(self, exp: Exponent):
        """Multiply every coefficient by ``q^exp``."""
        return NovikovChain(self.group, {k: v.shift(tuple(exp)) for k, v in self._coeffs.items()})

    def times(self, el: NovikovElement):
        return NovikovChain(self.group, {k: v * el for k, v in self._coeffs.items()})

    def __eq__(self, other):
        if not isinstance(other, NovikovChain):
            return NotImplemented
        return self.group == other.group and self._coeffs == other._coeffs

    def __hash__(self):
        return hash(frozenset(self.generators().items()))

    def __repr__(self):
        if not self._coeffs:
            return "0"
        return " + ".join(f"({v})*{k}" for k, v in self.items())


class FloerComplex:
    def __init__(self, group: GammaGroup, orbits: Iterable[Orbit],
                 boundary: Mapping[str, Mapping[str, NovikovElement]] = (),
                 box: Optional[int] = 1, degree_factor: int = 2,
                 dim: Optional[int] = None, name: str = ""):
        self.group = group
        self.orbits: List[Orbit] = list(orbits)
        self.name = name
        self.box = box
        self.degree_factor = int(degree_factor)
        self.dim = dim
        self._by_label: Dict[str, Orbit] = {}
        self._index: Dict[str, int] = {}
        for i, o in enumerate(self.orbits):
            if o.label in self._by_label:
                raise DuplicateLabel(f"orbit label {o.label!r} appears twice")
            self._by_label[o.label] = o
            self._index[o.label] = i
        self.boundary: Dict[str, Dict[str, NovikovElement]] = {}
        items = boundary.items() if isinstance(boundary, Mapping) else boundary
        for src, col in items:
            self.orbit(src)
            clean = {}
            for tgt, el in col.items():
                self.orbit(tgt)
                if el.direction is not DOWN:
                    raise InputError("boundary entries must be downward Novikov elements")
                if el:
                    clean[tgt] = el
            if clean:
                self.boundary[src] = clean

    # -- lookup -----------------------------------------------------------
    def orbit(self, label: str) -> Orbit:
        try:
            return self._by_label[label]
        except KeyError:
            raise InputError(f"unknown orbit {label!r} in complex {self.name!r}") from None

    def has_orbit(self, label) -> bool:
        return label in self._by_label

    def labels(self) -> List[str]:
        return [o.label for o in self.orbits]

    def index(self, label) -> int:
        return self._index[label]

    def action(self, gen: Generator) -> Fraction:
        label, cap = gen
        return self.orbit(label).base_action - self.group.area(cap)

    def degree(self, gen: Generator) -> int:
        label, cap = gen
        return self.orbit(label).base_degree - self.degree_factor * self.group.chern(cap)

    def key(self, gen: Generator):
        """Total order refining the action filtration."""
        return (self.action(gen), self._index[gen[0]], gen[1])

    def entry(self, src, tgt) -> NovikovElement:
        return self.boundary.get(src, {}).get(tgt, NovikovElement(self.group, DOWN))

    def with_boundary(self, boundary, **kw) -> "FloerComplex":
        args = dict(group=self.group, orbits=self.orbits, boundary=boundary, box=self.box,
                    degree_factor=self.degree_factor, dim=self.dim, name=self.name)
        args.update(kw)
        return FloerComplex(**args)

    def boxed_generators(self, radius: Optional[int] = None, center=None) -> List[Generator]:
        radius = self.box if radius is None else radius
        if radius is None:
            raise InfiniteWindowPopulation("no exponent box configured for this complex")
        caps = list(box_exponents(self.group.rank, radius))
        if center is not None:
            caps = [_shift(cap, center) for cap in caps]
        gens = [(o.label, cap) for o in self.orbits for cap in caps]
        return sorted(gens, key=self.key)

    def boundary_of(self, gen: Generator) -> GenVector:
        label, cap = gen
        out: GenVector = {}
        for tgt, el in self.boundary.get(label, {}).items():
            for exp, c in el.terms.items():
                _add_into(out, (tgt, _shift(cap, exp)), c)
        return out

    def apply_boundary_vec(self, vec: Mapping[Generator, Fraction]) -> GenVector:
        out: GenVector = {}
        for gen, c in vec.items():
            for g2, c2 in self.boundary_of(gen).items():
                _add_into(out, g2, c * c2)
        return out

    def level_of(self, vec: Mapping[Generator, Fraction]):
        if not vec:
            return INF
        return max(self.action(g) for g in vec)

    def leading(self, vec: Mapping[Generator, Fraction]) -> Optional[Generator]:
        if not vec:
            return None
        return max(vec, key=self.key)

    def chain(self, vec: Mapping[Generator, Fraction]) -> NovikovChain:
        return NovikovChain.from_generators(self.group, vec)

    def check_chain(self, alpha: NovikovChain, exc=SourceMismatch):
        for lab in alpha.labels():
            if lab not in self._by_label:
                raise exc(f"orbit {lab!r} is not in complex {self.name!r}")

    def spectrum_certificate(self, value, radius: Optional[int] = None):
        """Some ``(label, cap)`` whose action equals ``value``, or None."""
        value = Fraction(value)
        for o in self.orbits:
            cap = self.group.lattice_offset(o.base_action - value,
                                            self.box if radius is None else radius)
            if cap is not None:
                return (o.label, cap)
        return None

    def __repr__(self):
        return f"FloerComplex({self.name!r}, {len(self.orbits)} orbits)"


# -- operations ---------------------------------------------------------------

def level(alpha: NovikovChain, c: FloerComplex):
    """Maximum action over the support; the zero chain has level +inf."""
    return c.level_of(alpha.generators())


def boundary_apply(alpha: NovikovChain, c: FloerComplex) -> NovikovChain:
    c.check_chain(alpha)
    out = {}
    for src, coeff in alpha.items():
        for tgt, el in c.boundary.get(src, {}).items():
            out.setdefault(tgt, []).append(coeff * el)
    acc = {}
    for tgt, parts in out.items():
        tot = parts[0]
        for p in parts[1:]:
            tot = tot + p
        acc[tgt] = tot
    return NovikovChain(c.group, acc)


def _matmul_entry(a: Mapping[str, Mapping[str, NovikovElement]],
                  b: Mapping[str, Mapping[str, NovikovElement]], group):
    """(a . b)[src][tgt] = sum over mid of a[mid][tgt] * b[src][mid] (column convention)."""
    out: Dict[str, Dict[str, NovikovElement]] = {}
    for src, col in b.items():
        for mid, e1 in col.items():
            for tgt, e2 in a.get(mid, {}).items():
                d = out.setdefault(src, {})
                prod = e1 * e2
                d[tgt] = d[tgt] + prod if tgt in d else prod
    return {s: {t: e for t, e in col.items() if e} for s, col in out.items()}


def validate_complex(c: FloerComplex) -> ValidationReport:
    rep = ValidationReport(f"complex {c.name}")
    g = c.group
    # boundary squares to zero, checked orbit pair by orbit pair
    sq = _matmul_entry(c.boundary, c.boundary, g)
    bad = [(s, t) for s in c.labels() for t in sorted(sq.get(s, {}))]
    for s, t in bad:
        rep.add("boundary_square_zero", False, f"coefficient {sq[s][t]!r}", f"{s} -> {t}")
    if not bad:
        rep.add("boundary_square_zero", True)

    strict_bad, deg_bad, lead_bad = [], [], []
    for src in c.labels():
        z = c.orbit(src)
        for tgt, el in sorted(c.boundary.get(src, {}).items()):
            x = c.orbit(tgt)
            for exp in sorted(el.terms):
                act = x.base_action - g.area(exp)
                if not act < z.base_action:
                    strict_bad.append((src, tgt, exp, act, z.base_action))
                deg = x.base_degree - c.degree_factor * g.chern(exp)
                if deg != z.base_degree - 1:
                    deg_bad.append((src, tgt, exp, deg, z.base_degree))
            try:
                leading_term(el)
            except AmbiguousLeadingTerm as e:
                lead_bad.append((src, tgt, str(e)))
    for src, tgt, exp, act, top in strict_bad:
        rep.add("strict_filtration", False, f"target action {act} is not below source action {top}",
                f"{src} -> {tgt} q^{list(exp)}")
    if not strict_bad:
        rep.add("strict_filtration", True)
    for src, tgt, exp, deg, top in deg_bad:
        rep.add("degree_minus_one", False, f"target degree {deg}, source degree {top}",
                f"{src} -> {tgt} q^{list(exp)}")
    if not deg_bad:
        rep.add("degree_minus_one", True)
    for src, tgt, msg in lead_bad:
        rep.add("unique_leading_term", False, msg, f"{src} -> {tgt}")
    if not lead_bad:
        rep.add("unique_leading_term", True)
    return rep


class ChainMapData:
    """A Novikov-linear map between complexes with a declared level-shift bound."""

    def __init__(self, source: FloerComplex, target: FloerComplex,
                 matrix: Mapping[str, Mapping[str, NovikovElement]], shift_bound, name=""):
        self.source = source
        self.target = target
        self.name = name
        self.shift_bound = as_fraction(shift_bound)
        self.matrix: Dict[str, Dict[str, NovikovElement]] = {}
        for src, col in matrix.items():
            source.orbit(src)
            clean = {}
            for tgt, el in col.items():
                target.orbit(tgt)
                if el:
                    clean[tgt] = el
            if clean:
                self.matrix[src] = clean
        worst = self.actual_shift()
        if worst is not None and worst > self.shift_bound:
            raise ShiftBoundViolated(
                f"chain map {name!r} raises level by {worst}, above declared bound {self.shift_bound}")

    def actual_shift(self):
        """Largest entrywise level increase, or None for the zero map."""
        worst = None
        g = self.target.group
        for src, col in self.matrix.items():
            a = self.source.orbit(src).base_action
            for tgt, el in col.items():
                b = self.target.orbit(tgt).base_action
                for exp in el.terms:
                    d = b - g.area(exp) - a
                    worst = d if worst is None or d > worst else worst
        return worst

    def apply_vec(self, vec: Mapping[Generator, Fraction]) -> GenVector:
        out: GenVector = {}
        for (lab, cap), c in vec.items():
            for tgt, el in self.matrix.get(lab, {}).items():
                for exp, c2 in el.terms.items():
                    _add_into(out, (tgt, _shift(cap, exp)), c * c2)
        return out


def apply_chain_map(h: ChainMapData, alpha: NovikovChain) -> NovikovChain:
    h.source.check_chain(alpha)
    return h.target.chain(h.apply_vec(alpha.generators()))


def compose_chain_maps(second: ChainMapData, first: ChainMapData, name="") -> ChainMapData:
    if first.target is not second.source and first.target.name != second.source.name:
        raise SourceMismatch("composite maps do not chain together")
    mat = _matmul_entry(second.matrix, first.matrix, first.source.group)
    return ChainMapData(first.source, second.target, mat,
                        first.shift_bound + second.shift_bound, name or f"{second.name}*{first.name}")


def validate_chain_map(h: ChainMapData) -> ValidationReport:
    rep = ValidationReport(f"chain map {h.name}")
    g = h.source.group
    left = _matmul_entry(h.target.boundary, h.matrix, g)
    right = _matmul_entry(h.matrix, h.source.boundary, g)
    bad = []
    for src in h.source.labels():
        l, r = left.get(src, {}), right.get(src, {})
        for tgt in sorted(set(l) | set(r)):
            zero = NovikovElement(g, DOWN)
            if l.get(tgt, zero) != r.get(tgt, zero):
                bad.append((src, tgt))
    for src, tgt in bad:
        rep.add("chain_map_identity", False, "boundary does not commute with the map", f"{src} -> {tgt}")
    if not bad:
        rep.add("chain_map_identity", True)
    deg_bad = []
    for src, col in sorted(h.matrix.items()):
        d0 = h.source.orbit(src).base_degree
        for tgt, el in sorted(col.items()):
            for exp in sorted(el.terms):
                d1 = h.target.degree((tgt, exp))
                if d1 != d0:
                    deg_bad.append((src, tgt, exp, d1, d0))
    for src, tgt, exp, d1, d0 in deg_bad:
        rep.add("chain_map_degree_zero", False, f"degree {d0} maps to {d1}", f"{src} -> {tgt} q^{list(exp)}")
    if not deg_bad:
        rep.add("chain_map_degree_zero", True)
    worst = h.actual_shift()
    rep.add("shift_bound", worst is None or worst <= h.shift_bound,
            f"largest entry shift {worst}, declared {h.shift_bound}")
    return rep


@dataclass
class WindowedHomology:
    degree: int
    dimension: int
    basis: List[NovikovChain]
    generators: List[Generator]
    truncated: bool


def windowed_homology(c: FloerComplex, lam, mu, k: int, radius: Optional[int] = None) -> WindowedHomology:
    """Homology in degree ``k`` of the quotient of the action window ``(lam, mu]``.

    Only boxed generators are counted.  ``truncated`` is set when a boundary
    from inside the window lands on an in-window generator outside the box.
    """
    lam = lam if lam in (INF, -INF) else as_fraction(lam)
    mu = mu if mu in (INF, -INF) else as_fraction(mu)
    if not lam < mu:
        raise InputError(f"empty window ({lam}, {mu}]")
    radius = c.box if radius is None else radius
    if radius is None:
        raise InfiniteWindowPopulation("windowed homology needs an exponent box")
    inside = [g for g in c.boxed_generators(radius) if lam < c.action(g) <= mu]
    inset = set(inside)
    by_deg: Dict[int, List[Generator]] = {}
    for g in inside:
        by_deg.setdefault(c.degree(g), []).append(g)
    truncated = False

    def matrix(d):
        # rows: generators of degree d-1, columns: generators of degree d
        nonlocal truncated
        src = by_deg.get(d, [])
        tgt = by_deg.get(d - 1, [])
        idx = {g: i for i, g in enumerate(tgt)}
        m = [[Fraction(0)] * len(src) for _ in tgt]
        for j, g in enumerate(src):
            for g2, val in c.boundary_of(g).items():
                if lam < c.action(g2) <= mu:
                    if g2 in inset:
                        m[idx[g2]][j] = val
                    else:
                        truncated = True
        return m, src, tgt

    dk, src_k, tgt_k = matrix(k)
    dk1, src_k1, _ = matrix(k + 1)
    n = len(src_k)
    cycles = linalg.nullspace(dk, n) if n else []
    bounds = linalg.transpose(dk1, len(src_k1)) if src_k1 and n else []
    bounds = [b for b in bounds if any(b)]
    if not tgt_k:
        cycles = [[Fraction(int(i == j)) for i in range(n)] for j in range(n)]
    chosen = linalg.complement_basis(bounds, cycles, n)
    basis = [c.chain({src_k[i]: v[i] for i in range(n) if v[i]}) for v in chosen]
    return WindowedHomology(k, len(basis), basis, src_k, truncated)


def time_reversal(c: FloerComplex) -> FloerComplex:
    """Negate actions, send degree k to dim - k and transpose the boundary.

    The generator ``x q^A`` of the reversed complex stands for ``x q^{-A}`` of
    ``c``; under that identification a transposed entry keeps its exponent.
    """
    if c.dim is None:
        raise InputError(f"complex {c.name!r} needs a dimension to be reversed")
    g = c.group
    orbits = [Orbit(o.label, -o.base_action, c.dim - o.base_degree) for o in c.orbits]
    bd: Dict[str, Dict[str, NovikovElement]] = {}
    for src, col in c.boundary.items():
        for tgt, el in col.items():
            bd.setdefault(tgt, {})[src] = el
    name = c.name[:-len("~")] if c.name.endswith("~") else c.name + "~"
    return FloerComplex(g, orbits, bd, box=c.box, degree_factor=c.degree_factor, dim=c.dim, name=name)


def shift_actions(c: FloerComplex, amount, name=None) -> FloerComplex:
    """Translate every base action by ``amount``; the boundary is unchanged."""
    amount = as_fraction(amount)
    orbits = [Orbit(o.label, o.base_action + amount, o.base_degree) for o in c.orbits]
    return FloerComplex(c.group, orbits, c.boundary, box=c.box, degree_factor=c.degree_factor,
                        dim=c.dim, name=name or c.name)


def apply_loop_action(c: FloerComplex, shift, relabel: Optional[Mapping[str, Tuple[str, Exponent]]] = None,
                      name=None):
    """Transport a complex along a loop: actions move by ``shift``.

    ``relabel`` sends orbit ``z`` to ``(z', B_z)``: the capped generator
    ``z`` corresponds to ``z' q^{B_z}`` in the new complex.  Returns the new
    complex and a function transporting chains.
    """
    shift = as_fraction(shift)
    g = c.group
    if relabel is None:
        relabel = {o.label: (o.label, g.zero) for o in c.orbits}
    relabel = {k: (v[0], g.check_exponent(v[1])) for k, v in relabel.items()}
    if set(relabel) != set(c.labels()) or len({v[0] for v in relabel.values()}) != len(relabel):
        raise InputError("relabeling must be a bijection of the orbit set")
    offsets = {c.degree_factor * g.chern(b) for _, b in relabel.values()}
    if len(offsets) > 1:
        raise DegreeMismatch(f"relabeling shifts degrees non-uniformly: {sorted(offsets)}")
    orbits = []
    for o in c.orbits:
        new, b = relabel[o.label]
        orbits.append(Orbit(new, o.base_action + shift + g.area(b),
                            o.base_degree + c.degree_factor * g.chern(b)))
    orbits.sort(key=lambda o: c.index(next(k for k, v in relabel.items() if v[0] == o.label)))
    bd = {}
    for src, col in c.boundary.items():
        ns, bs = relabel[src]
        for tgt, el in col.items():
            nt, bt = relabel[tgt]
            off = tuple(x - y for x, y in zip(bt, bs))
            bd.setdefault(ns, {})[nt] = el.shift(off)
    new_c = FloerComplex(g, orbits, bd, box=c.box, degree_factor=c.degree_factor, dim=c.dim,
                         name=name or c.name)

    def transport(alpha: NovikovChain) -> NovikovChain:
        out = {}
        for (lab, cap), v in alpha.generators().items():
            nl, b = relabel[lab]
            out[(nl, _shift(cap, b))] = v
        return new_c.chain(out)

    return new_c, transport
