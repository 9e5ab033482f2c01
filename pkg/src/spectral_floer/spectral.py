"""Spectral numbers: the smallest level among boxed representatives of a class.

The reduction kernel works on sparse generator vectors.  Boundary columns of
boxed generators are brought to distinct leading generators (a persistence
style column reduction), after which the class representative is reduced by
repeatedly cancelling its leading generator.  Once the leading generator is
not a pivot, no combination of columns can lower the level, so the result is
the exact minimum over the box.
"""

from __future__ import annotations

import enum
import itertools
import random
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Tuple

from .checks import ValidationReport
from .complex import (
    ChainMapData,
    FloerComplex,
    Generator,
    GenVector,
    NovikovChain,
    _add_into,
    apply_loop_action,
    boundary_apply,
    level,
    shift_actions,
)
from .errors import (
    BoxTooSmall,
    ExplosionGuard,
    MissingClass,
    NotACycle,
    PreconditionEpsilonTooLarge,
    ZeroClass,
)
from .novikov import INF, as_fraction


class Method(enum.Enum):
    GREEDY = "greedy-reduction"
    BRUTE = "brute-force"


@dataclass
class HomologyClassSpec:
    complex: FloerComplex
    representative: NovikovChain
    name: str = ""

    def __post_init__(self):
        self.complex.check_chain(self.representative)


@dataclass
class SpectralResult:
    rho: Fraction
    witness: NovikovChain
    certificate: Optional[Generator]
    method: Method
    beta: NovikovChain
    moves: int = 0
    upper_bound_only: bool = False
    complex: Optional[FloerComplex] = field(default=None, repr=False)


def _axpy(acc: GenVector, c: Fraction, vec: GenVector):
    for g, v in vec.items():
        _add_into(acc, g, c * v)


def _columns(c: FloerComplex, alpha: GenVector, radius):
    degrees = {c.degree(g) + 1 for g in alpha}
    cols = []
    for g in c.boxed_generators(radius):
        if c.degree(g) in degrees:
            img = c.boundary_of(g)
            if img:
                cols.append((g, img))
    return cols


class ReducedBoundary:
    """Boundary columns of a boxed degree range with distinct leading generators."""

    def __init__(self, c: FloerComplex, degrees, radius=None, center=None):
        self.complex = c
        self.pivots: Dict[Generator, Tuple[GenVector, GenVector]] = {}
        cols = []
        for g in c.boxed_generators(radius, center):
            if c.degree(g) in degrees:
                img = c.boundary_of(g)
                if img:
                    cols.append((c.level_of(img), c.key(g), g, img))
        cols.sort(key=lambda t: (t[0], t[1]))
        for _, _, g, img in cols:
            vec, combo = dict(img), {g: Fraction(1)}
            while vec:
                lead = c.leading(vec)
                if lead not in self.pivots:
                    self.pivots[lead] = (vec, combo)
                    break
                pv, pc = self.pivots[lead]
                f = vec[lead] / pv[lead]
                _axpy(vec, -f, pv)
                _axpy(combo, -f, pc)

    def reduce(self, alpha: GenVector):
        """Return (reduced vector, beta, moves) with reduced = alpha - boundary(beta)."""
        c = self.complex
        vec, beta, moves = dict(alpha), {}, 0
        while vec:
            lead = c.leading(vec)
            if lead not in self.pivots:
                break
            pv, pc = self.pivots[lead]
            f = vec[lead] / pv[lead]
            _axpy(vec, -f, pv)
            _axpy(beta, f, pc)
            moves += 1
        return vec, beta, moves


def _require_cycle(cls: HomologyClassSpec):
    c = cls.complex
    if boundary_apply(cls.representative, c):
        raise NotACycle(f"representative of {cls.name or 'class'} is not a cycle")


def _escapes_box(c: FloerComplex, lead: Generator, radius, center=None) -> bool:
    """True when a generator outside the box has ``lead`` as its boundary's leading generator."""
    radius = c.box if radius is None else radius
    center = center or c.group.zero
    x, cap = lead
    for z, col in c.boundary.items():
        el = col.get(x)
        if el is None:
            continue
        for d in el.terms:
            src = (z, tuple(a - b for a, b in zip(cap, d)))
            if all(abs(a - o) <= radius for a, o in zip(src[1], center)):
                continue
            if c.leading(c.boundary_of(src)) == lead:
                return True
    return False


def spectral_number(cls: HomologyClassSpec, radius: Optional[int] = None,
                    strict: bool = False, center=None) -> SpectralResult:
    _require_cycle(cls)
    c = cls.complex
    alpha = cls.representative.generators()
    if not alpha:
        raise ZeroClass(f"class {cls.name!r} has the zero representative")
    red = ReducedBoundary(c, {c.degree(g) + 1 for g in alpha}, radius, center)
    vec, beta, moves = red.reduce(alpha)
    if not vec:
        raise ZeroClass(f"class {cls.name!r} is a boundary within the box")
    lead = c.leading(vec)
    flagged = _escapes_box(c, lead, radius, center)
    if flagged and strict:
        raise BoxTooSmall(f"a generator outside the box could lower the level of {cls.name!r}")
    rho = c.action(lead)
    return SpectralResult(rho=rho, witness=c.chain(vec), certificate=c.spectrum_certificate(rho, radius),
                          method=Method.GREEDY, beta=c.chain(beta), moves=moves,
                          upper_bound_only=flagged, complex=c)


def brute_force_spectral(cls: HomologyClassSpec, p: int = 2, radius: Optional[int] = None,
                         limit: int = 1 << 16):
    """Minimum level of ``alpha - boundary(beta)`` over beta with coefficients in {0..p-1}.

    Levels are evaluated over the rationals, so the answer is an upper bound
    for the exact spectral number.
    """
    _require_cycle(cls)
    c = cls.complex
    alpha = cls.representative.generators()
    cols = _columns(c, alpha, radius)
    n = len(cols)
    if p ** n > limit:
        raise ExplosionGuard(f"{p}^{n} candidate chains exceed the limit {limit}")
    best = INF
    for coeffs in itertools.product(range(p), repeat=n):
        vec = dict(alpha)
        for k, (_, img) in zip(coeffs, cols):
            if k:
                _axpy(vec, Fraction(-k), img)
        lv = c.level_of(vec)
        if lv < best:
            best = lv
    return best


def oracle_sign(r: SpectralResult, p: int) -> Optional[int]:
    """+1 if the greedy preimage has coefficients in {0..p-1}, -1 if its negation does, else None.

    On such instances the F_p enumeration of ``brute_force_spectral`` (run on
    the representative times the returned sign) must reproduce rho exactly.
    """
    coeffs = list(r.beta.generators().values())
    if all(c.denominator == 1 and 0 <= c < p for c in coeffs):
        return 1
    if all(c.denominator == 1 and 0 <= -c < p for c in coeffs):
        return -1
    return None


def spectrality_check(r: SpectralResult, c: Optional[FloerComplex] = None, radius=None) -> bool:
    """Exact membership of rho in the action spectrum (orbit actions shifted by the period lattice)."""
    c = c or r.complex
    cert = c.spectrum_certificate(r.rho, radius)
    return cert is not None and c.action(cert) == r.rho


# -- gap bounds ----------------------------------------------------------------

@dataclass
class GapWindow:
    levels: List[Fraction]
    v: Fraction
    gap: Fraction
    lower: Fraction
    upper: Fraction
    literal_upper: Fraction
    coarse_lower: Fraction
    coarse_upper: Fraction

    def contains(self, rho) -> bool:
        return self.lower <= rho <= self.upper and self.coarse_lower <= rho <= self.coarse_upper


def gap_window(levels, eps, f_bounds) -> GapWindow:
    """Window for the spectral number of a class whose terms sit at ``levels``.

    ``levels`` are the values omega(-A) of the supported exponents.  The upper
    end uses -eps*min f, the level of the fundamental cycle of the Morse model.
    """
    lv = sorted({as_fraction(x) for x in levels}, reverse=True)
    if not lv:
        raise ZeroClass("gap window of the zero class")
    eps = as_fraction(eps)
    fmin, fmax = (as_fraction(x) for x in f_bounds)
    l1 = lv[0]
    c = abs(l1) if len(lv) == 1 else min(l1 - lv[1], abs(l1))
    spread = eps * max(fmax - fmin, abs(fmin), abs(fmax))
    if not spread < c / 2:
        raise PreconditionEpsilonTooLarge(f"eps-size {spread} is not below half the gap {c}/2")
    l2 = lv[1] if len(lv) > 1 else None
    lower = l1 - eps * fmax
    upper = l1 - eps * fmin
    literal = l1 + eps * fmax
    if l2 is not None:
        lower = max(lower, l2 + eps * fmin)
        upper = max(upper, l2 - eps * fmin)
        literal = max(literal, l2 + eps * fmin)
    return GapWindow(lv, l1, c, lower, upper, literal, l1 - c / 2, l1 + c / 2)


def gap_bound_check(levels, eps, f_bounds, rho) -> Tuple[bool, GapWindow]:
    w = gap_window(levels, eps, f_bounds)
    return w.contains(rho), w


# -- continuity ----------------------------------------------------------------

def is_homologous(c: FloerComplex, a: NovikovChain, b: NovikovChain, radius=None) -> bool:
    diff = (a - b).generators()
    if not diff:
        return True
    red = ReducedBoundary(c, {c.degree(g) + 1 for g in diff}, radius)
    vec, _, _ = red.reduce(diff)
    return not vec


@dataclass
class ContinuityResult:
    ok: bool
    rho_h: Fraction
    rho_k: Fraction
    s_minus: Fraction
    s_plus: Fraction
    transported: bool

    @property
    def difference(self):
        return self.rho_k - self.rho_h


def continuity_check(class_h: Optional[HomologyClassSpec], class_k: Optional[HomologyClassSpec],
                     h_hk: ChainMapData, h_kh: ChainMapData) -> ContinuityResult:
    """Check s- <= rho_K - rho_H <= s+ with s+ = shift(H->K) and s- = -shift(K->H)."""
    if class_h is None or class_k is None:
        raise MissingClass("continuity needs the class on both complexes")
    rh = spectral_number(class_h).rho
    rk = spectral_number(class_k).rho
    s_plus = h_hk.shift_bound
    s_minus = -h_kh.shift_bound
    image = h_hk.target.chain(h_hk.apply_vec(class_h.representative.generators()))
    transported = is_homologous(class_k.complex, image, class_k.representative)
    return ContinuityResult(s_minus <= rk - rh <= s_plus and transported, rh, rk, s_minus, s_plus, transported)


# -- axiom bundle --------------------------------------------------------------

def axiom_suite(c: FloerComplex, classes: List[HomologyClassSpec], seed: int = 0,
                loop_shift=Fraction(3, 2)) -> ValidationReport:
    """Executable forms of the spectral-number axioms on one complex."""
    rng = random.Random(seed)
    rep = ValidationReport(f"axioms {c.name}")
    g = c.group
    for cls in classes:
        tag = cls.name
        try:
            base = spectral_number(cls)
        except ZeroClass as e:
            rep.add("nonzero_class", False, str(e), tag)
            continue
        rep.add("spectrality", spectrality_check(base, c), f"rho = {base.rho}", tag)

        ok = True
        for lam in (Fraction(2), Fraction(-3), Fraction(1, 5)):
            r = spectral_number(HomologyClassSpec(c, cls.representative.scale(lam), tag)).rho
            ok &= r == base.rho
        rep.add("projective_invariance", ok, f"scalars 2, -3, 1/5 keep rho = {base.rho}", tag)

        gens = [x for x in c.boxed_generators() if c.degree(x) == _degree(c, cls) + 1]
        beta = {x: Fraction(rng.randint(-2, 2)) for x in rng.sample(gens, min(3, len(gens)))}
        moved = cls.representative.generators()
        _axpy(moved, Fraction(1), c.apply_boundary_vec(beta))
        r = spectral_number(HomologyClassSpec(c, c.chain(moved), tag)).rho
        rep.add("representative_independence", r == base.rho, f"rho after adding a boundary: {r}", tag)

        if g.rank:
            exp = tuple([1] + [0] * (g.rank - 1))
            r = spectral_number(HomologyClassSpec(c, cls.representative.shift(exp), tag), center=exp).rho
            rep.add("novikov_shift", r == base.rho - g.area(exp),
                    f"rho(q^B a) = {r}, expected {base.rho - g.area(exp)}", tag)

        k = Fraction(-5, 7)
        r = spectral_number(HomologyClassSpec(shift_actions(c, k), cls.representative, tag)).rho
        rep.add("constant_shift", r == base.rho + k, f"adding {-k} to H moves rho by {r - base.rho}", tag)

        c1, t1 = apply_loop_action(c, loop_shift)
        r1 = spectral_number(HomologyClassSpec(c1, t1(cls.representative), tag)).rho
        c2, t2 = apply_loop_action(c1, -2 * loop_shift)
        r2 = spectral_number(HomologyClassSpec(c2, t2(t1(cls.representative)), tag)).rho
        rep.add("loop_shift", r1 == base.rho + loop_shift and r2 == base.rho - loop_shift,
                f"shifts {loop_shift} then {-2 * loop_shift} give {r1 - base.rho}, {r2 - base.rho}", tag)
    return rep


def _degree(c: FloerComplex, cls: HomologyClassSpec) -> int:
    degs = {c.degree(x) for x in cls.representative.generators()}
    return min(degs) if degs else 0
