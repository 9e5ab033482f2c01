"""Workspace documents: JSON text with exact rationals, loaded into engine objects.

Rationals are strings ``"num/den"``; Novikov elements are lists of
``[exponent, num, den]`` triples; chains are lists of ``[orbit, element]``.
Decimal numbers are rejected.  :func:`dumps` writes a canonical layout, so
``dumps(loads(dumps(doc)))`` reproduces its input byte for byte.
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Optional

from .complex import ChainMapData, FloerComplex, NovikovChain, Orbit, time_reversal
from .errors import DanglingReference, DuplicateLabel, InputError, ParseError
from .norms import SampledHamiltonian
from .novikov import Direction, GammaGroup, NovikovElement
from .products import PantsProductData
from .quantum import (
    BoundedFunctional,
    CohomologyModel,
    CriticalPoint,
    MorseData,
    fundamental_cycle,
    quantum_complex_from_morse,
)
from .spectral import HomologyClassSpec

SECTIONS = ("group", "models", "complexes", "chain_maps", "products", "classes",
            "functionals", "sigma", "hamiltonians", "tasks")

_RATIONAL = re.compile(r"^\s*(-?\d+)\s*(?:/\s*(\d+)\s*)?$")


# -- scalar conversions --------------------------------------------------------

def frac_str(x) -> str:
    x = Fraction(x)
    return f"{x.numerator}/{x.denominator}"


def parse_rational(value, where="") -> Fraction:
    if isinstance(value, bool):
        raise ParseError(f"expected a rational at {where}, got a boolean")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        m = _RATIONAL.match(value)
        if m:
            den = int(m.group(2)) if m.group(2) else 1
            if den == 0:
                raise ParseError(f"zero denominator at {where}")
            return Fraction(int(m.group(1)), den)
    raise ParseError(f"expected a rational \"num/den\" at {where}, got {value!r}")


def parse_bound(value, where=""):
    """A rational or one of the strings "inf", "+inf", "-inf"."""
    if isinstance(value, str) and value.strip() in ("inf", "+inf", "-inf"):
        return float("-inf") if value.strip().startswith("-") else float("inf")
    return parse_rational(value, where)


def _int(value, where) -> int:
    if isinstance(value, bool) or not isinstance(value, int):
        raise ParseError(f"expected an integer at {where}, got {value!r}")
    return value


def _str(value, where) -> str:
    if not isinstance(value, str):
        raise ParseError(f"expected a string at {where}, got {value!r}")
    return value


def _list(value, where) -> list:
    if not isinstance(value, list):
        raise ParseError(f"expected a list at {where}")
    return value


def _obj(value, where) -> dict:
    if not isinstance(value, dict):
        raise ParseError(f"expected an object at {where}")
    return value


# -- element / chain codecs ----------------------------------------------------

def element_to_json(el: NovikovElement):
    return [[list(exp), c.numerator, c.denominator] for exp, c in el.items()]


def element_from_json(group: GammaGroup, data, where, direction=Direction.DOWN) -> NovikovElement:
    terms = {}
    for k, t in enumerate(_list(data, where)):
        w = f"{where}[{k}]"
        t = _list(t, w)
        if len(t) != 3:
            raise ParseError(f"expected [exponent, num, den] at {w}")
        exp = tuple(_int(a, w) for a in _list(t[0], w))
        if len(exp) != group.rank:
            raise ParseError(f"exponent at {w} has length {len(exp)}, group rank is {group.rank}")
        num, den = _int(t[1], w), _int(t[2], w)
        if den == 0:
            raise ParseError(f"zero denominator at {w}")
        terms[exp] = terms.get(exp, Fraction(0)) + Fraction(num, den)
    return NovikovElement(group, direction, terms)


def chain_to_json(ch: NovikovChain):
    return [[lab, element_to_json(el)] for lab, el in ch.items()]


def chain_from_json(group, data, where, complex_: Optional[FloerComplex] = None) -> NovikovChain:
    parts = []
    for k, item in enumerate(_list(data, where)):
        w = f"{where}[{k}]"
        item = _list(item, w)
        if len(item) != 2:
            raise ParseError(f"expected [orbit, element] at {w}")
        lab = _str(item[0], w)
        if complex_ is not None and not complex_.has_orbit(lab):
            raise DanglingReference(f"orbit {lab!r} at {w} is not in complex {complex_.name!r}")
        parts.append((lab, element_from_json(group, item[1], w)))
    return NovikovChain(group, parts)


def gen_values_to_json(values: Dict):
    return [[lab, list(cap), frac_str(v)] for (lab, cap), v in sorted(values.items())]


def gen_values_from_json(group, data, where, c: FloerComplex):
    out = {}
    for k, item in enumerate(_list(data, where)):
        w = f"{where}[{k}]"
        item = _list(item, w)
        if len(item) != 3:
            raise ParseError(f"expected [orbit, exponent, rational] at {w}")
        lab = _str(item[0], w)
        if not c.has_orbit(lab):
            raise DanglingReference(f"orbit {lab!r} at {w} is not in complex {c.name!r}")
        cap = tuple(_int(a, w) for a in _list(item[1], w))
        if len(cap) != group.rank:
            raise ParseError(f"exponent at {w} has the wrong length")
        out[(lab, cap)] = out.get((lab, cap), Fraction(0)) + parse_rational(item[2], w)
    return {g: v for g, v in out.items() if v}


def matrix_to_json(matrix):
    return [[s, t, element_to_json(el)] for s in sorted(matrix) for t, el in sorted(matrix[s].items())]


def _matrix_from_json(group, data, where, src_c: FloerComplex, tgt_c: FloerComplex):
    out: Dict[str, Dict[str, NovikovElement]] = {}
    for k, item in enumerate(_list(data, where)):
        w = f"{where}[{k}]"
        item = _list(item, w)
        if len(item) != 3:
            raise ParseError(f"expected [source, target, element] at {w}")
        s, t = _str(item[0], w), _str(item[1], w)
        if not src_c.has_orbit(s):
            raise DanglingReference(f"orbit {s!r} at {w} is not in complex {src_c.name!r}")
        if not tgt_c.has_orbit(t):
            raise DanglingReference(f"orbit {t!r} at {w} is not in complex {tgt_c.name!r}")
        el = element_from_json(group, item[2], w)
        col = out.setdefault(s, {})
        col[t] = col[t] + el if t in col else el
    return out


# -- document ------------------------------------------------------------------

@dataclass
class ComplexEntry:
    complex: FloerComplex
    morse: Optional[MorseData] = None
    epsilon: Optional[Fraction] = None
    unit_class: Optional[str] = None
    reverse_unit: Optional[NovikovChain] = None
    coboundary: Optional[Dict[str, Dict[str, NovikovElement]]] = None
    hamiltonian: Optional[str] = None
    trivial_map: Optional[str] = None
    duality_product: Optional[str] = None


@dataclass
class SigmaFixture:
    name: str
    complex: FloerComplex
    cochain: Dict
    margin: Fraction


@dataclass
class WorkspaceDocument:
    group: GammaGroup
    models: Dict[str, CohomologyModel] = field(default_factory=dict)
    complexes: Dict[str, ComplexEntry] = field(default_factory=dict)
    chain_maps: Dict[str, ChainMapData] = field(default_factory=dict)
    products: Dict[str, PantsProductData] = field(default_factory=dict)
    classes: Dict[str, HomologyClassSpec] = field(default_factory=dict)
    functionals: Dict[str, BoundedFunctional] = field(default_factory=dict)
    sigma: Dict[str, SigmaFixture] = field(default_factory=dict)
    hamiltonians: Dict[str, SampledHamiltonian] = field(default_factory=dict)
    tasks: List[str] = field(default_factory=list)
    raw: Dict[str, Any] = field(default_factory=dict)
    errors: List[str] = field(default_factory=list)

    def complex(self, name: str) -> FloerComplex:
        if name in self.complexes:
            return self.complexes[name].complex
        if name.endswith("~") and name[:-1] in self.complexes:
            c = time_reversal(self.complexes[name[:-1]].complex)
            self.complexes[name] = ComplexEntry(c)
            return c
        raise DanglingReference(f"unknown complex {name!r}")

    def entry(self, name) -> ComplexEntry:
        self.complex(name)
        return self.complexes[name]

    def lookup(self, section: str, name: str):
        table = getattr(self, section)
        if name not in table:
            raise DanglingReference(f"unknown {section[:-1] if section.endswith('s') else section} {name!r}")
        return table[name]


def _named(items, where):
    seen = {}
    for k, item in enumerate(_list(items, where)):
        w = f"{where}[{k}]"
        item = _obj(item, w)
        name = _str(item.get("name"), f"{w}.name")
        if name in seen:
            raise DuplicateLabel(f"duplicate name {name!r} in {where}")
        seen[name] = (item, w)
    return seen


def _check_keys(item: dict, allowed, where):
    extra = sorted(set(item) - set(allowed))
    if extra:
        raise ParseError(f"unknown field(s) {extra} at {where}")


def _morse_from_json(data, where) -> MorseData:
    data = _obj(data, where)
    _check_keys(data, ("dim", "points", "incidence", "cycles", "epsilon"), where)
    pts = []
    names = set()
    for k, p in enumerate(_list(data.get("points", []), f"{where}.points")):
        w = f"{where}.points[{k}]"
        p = _list(p, w)
        if len(p) != 3:
            raise ParseError(f"expected [name, value, index] at {w}")
        nm = _str(p[0], w)
        if nm in names:
            raise DuplicateLabel(f"duplicate critical point {nm!r}")
        names.add(nm)
        pts.append(CriticalPoint(nm, parse_rational(p[1], w), _int(p[2], w)))
    inc: Dict[str, Dict[str, int]] = {}
    for k, e in enumerate(_list(data.get("incidence", []), f"{where}.incidence")):
        w = f"{where}.incidence[{k}]"
        e = _list(e, w)
        if len(e) != 3:
            raise ParseError(f"expected [source, target, count] at {w}")
        s, t = _str(e[0], w), _str(e[1], w)
        for x in (s, t):
            if x not in names:
                raise DanglingReference(f"critical point {x!r} at {w} is undefined")
        inc.setdefault(s, {})[t] = inc.get(s, {}).get(t, 0) + _int(e[2], w)
    cycles = {}
    for k, e in enumerate(_list(data.get("cycles", []), f"{where}.cycles")):
        w = f"{where}.cycles[{k}]"
        e = _list(e, w)
        if len(e) != 2:
            raise ParseError(f"expected [basis name, [[point, rational], ...]] at {w}")
        cyc = {}
        for j, pc in enumerate(_list(e[1], w)):
            pc = _list(pc, f"{w}[{j}]")
            if len(pc) != 2:
                raise ParseError(f"expected [point, rational] at {w}[{j}]")
            nm = _str(pc[0], w)
            if nm not in names:
                raise DanglingReference(f"critical point {nm!r} at {w} is undefined")
            cyc[nm] = parse_rational(pc[1], w)
        cycles[_str(e[0], w)] = cyc
    return MorseData(pts, inc, _int(data.get("dim"), f"{where}.dim"), cycles)


def morse_to_json(m: MorseData, eps) -> dict:
    return {
        "dim": m.dim,
        "epsilon": frac_str(eps),
        "points": [[p.name, frac_str(p.value), p.index] for p in m.points],
        "incidence": [[s, t, v] for s in sorted(m.incidence) for t, v in sorted(m.incidence[s].items()) if v],
        "cycles": [[b, [[p, frac_str(v)] for p, v in sorted(cyc.items())]] for b, cyc in sorted(m.cycles.items())],
    }


def build(raw: dict, box: Optional[int] = None, degree_factor: Optional[int] = None) -> WorkspaceDocument:
    """Resolve a parsed document into engine objects."""
    raw = _obj(raw, "document")
    _check_keys(raw, SECTIONS, "document")
    if "group" not in raw:
        raise ParseError("document has no group section")
    gdata = _obj(raw["group"], "group")
    _check_keys(gdata, ("omega", "c1"), "group")
    omega = [parse_rational(w, f"group.omega[{k}]") for k, w in enumerate(_list(gdata.get("omega", []), "group.omega"))]
    c1 = [_int(c, f"group.c1[{k}]") for k, c in enumerate(_list(gdata.get("c1", []), "group.c1"))]
    if len(omega) != len(c1):
        raise ParseError("group.omega and group.c1 must have the same length")
    group = GammaGroup(omega, c1)
    doc = WorkspaceDocument(group, raw=raw)

    for name, (item, w) in _named(raw.get("models", []), "models").items():
        _check_keys(item, ("name", "dim", "degree_factor", "basis", "pairing", "constants"), w)
        basis = [(_str(b[0], w), _int(b[1], w)) for b in _list(item.get("basis", []), f"{w}.basis")]
        names = [b[0] for b in basis]
        if len(set(names)) != len(names):
            raise DuplicateLabel(f"duplicate basis name in {w}")
        pairing = [[parse_rational(x, f"{w}.pairing") for x in _list(r, f"{w}.pairing")]
                   for r in _list(item.get("pairing", []), f"{w}.pairing")]
        consts = {}
        for k, e in enumerate(_list(item.get("constants", []), f"{w}.constants")):
            ww = f"{w}.constants[{k}]"
            e = _list(e, ww)
            if len(e) != 4:
                raise ParseError(f"expected [i, j, exponent, vector] at {ww}")
            for nm in (e[0], e[1]):
                if nm not in names:
                    raise DanglingReference(f"basis element {nm!r} at {ww} is undefined")
            exp = tuple(_int(a, ww) for a in _list(e[2], ww))
            vec = [parse_rational(x, ww) for x in _list(e[3], ww)]
            consts[(names.index(e[0]), names.index(e[1]), exp)] = vec
        doc.models[name] = CohomologyModel(group, _int(item.get("dim"), f"{w}.dim"), basis, pairing, consts,
                                           _int(item.get("degree_factor", 2), w), name)

    pending = []
    for name, (item, w) in _named(raw.get("complexes", []), "complexes").items():
        _check_keys(item, ("name", "dim", "box", "degree_factor", "orbits", "boundary", "morse",
                           "unit_class", "reverse_unit", "coboundary", "hamiltonian", "trivial_map",
                           "duality_product"), w)
        cbox = item.get("box", 1)
        cbox = None if cbox is None else _int(cbox, f"{w}.box")
        if box is not None:
            cbox = box
        factor = _int(item.get("degree_factor", 2), f"{w}.degree_factor")
        if degree_factor is not None:
            factor = degree_factor
        if factor not in (1, 2):
            raise ParseError(f"degree factor at {w} must be 1 or 2")
        dim = item.get("dim")
        dim = None if dim is None else _int(dim, f"{w}.dim")
        entry = ComplexEntry(None)
        if "morse" in item:
            if "orbits" in item or "boundary" in item:
                raise ParseError(f"{w} gives both Morse data and explicit orbits")
            morse = _morse_from_json(item["morse"], f"{w}.morse")
            eps = parse_rational(item["morse"].get("epsilon"), f"{w}.morse.epsilon")
            c = quantum_complex_from_morse(morse, eps, group, factor, cbox, name)
            entry = ComplexEntry(c, morse, eps)
        else:
            orbits = []
            for k, o in enumerate(_list(item.get("orbits", []), f"{w}.orbits")):
                ww = f"{w}.orbits[{k}]"
                o = _list(o, ww)
                if len(o) != 3:
                    raise ParseError(f"expected [label, action, degree] at {ww}")
                orbits.append(Orbit(_str(o[0], ww), parse_rational(o[1], ww), _int(o[2], ww)))
            shell = FloerComplex(group, orbits, {}, box=cbox, degree_factor=factor, dim=dim, name=name)
            bd = _matrix_from_json(group, item.get("boundary", []), f"{w}.boundary", shell, shell)
            entry = ComplexEntry(shell.with_boundary(bd))
        c = entry.complex
        if "coboundary" in item:
            entry.coboundary = _matrix_from_json(group, item["coboundary"], f"{w}.coboundary", c, c)
        for key in ("unit_class", "hamiltonian", "trivial_map", "duality_product"):
            if key in item:
                setattr(entry, key, _str(item[key], f"{w}.{key}"))
        doc.complexes[name] = entry
        pending.append((name, item, w))

    for name, (item, w) in _named(raw.get("classes", []), "classes").items():
        _check_keys(item, ("name", "complex", "representative"), w)
        cname = _str(item.get("complex"), f"{w}.complex")
        c = doc.complex(cname)
        rep = chain_from_json(group, item.get("representative", []), f"{w}.representative", c)
        doc.classes[name] = HomologyClassSpec(c, rep, name)

    for name, item, w in pending:
        entry = doc.complexes[name]
        if "reverse_unit" in item:
            rc = doc.complex(name + "~")
            entry.reverse_unit = chain_from_json(group, item["reverse_unit"], f"{w}.reverse_unit", rc)
        if entry.unit_class is not None and entry.unit_class not in doc.classes:
            raise DanglingReference(f"unit class {entry.unit_class!r} of {name!r} is undefined")

    for name, (item, w) in _named(raw.get("chain_maps", []), "chain_maps").items():
        _check_keys(item, ("name", "source", "target", "shift_bound", "matrix"), w)
        s = doc.complex(_str(item.get("source"), f"{w}.source"))
        t = doc.complex(_str(item.get("target"), f"{w}.target"))
        mat = _matrix_from_json(group, item.get("matrix", []), f"{w}.matrix", s, t)
        doc.chain_maps[name] = ChainMapData(s, t, mat, parse_rational(item.get("shift_bound"), f"{w}.shift_bound"), name)

    for name, (item, w) in _named(raw.get("products", []), "products").items():
        _check_keys(item, ("name", "sources", "target", "tolerance", "degree_shift", "constants"), w)
        srcs = _list(item.get("sources"), f"{w}.sources")
        if len(srcs) != 2:
            raise ParseError(f"{w}.sources needs two complexes")
        c1, c2 = (doc.complex(_str(s, f"{w}.sources")) for s in srcs)
        t = doc.complex(_str(item.get("target"), f"{w}.target"))
        consts = {}
        for k, e in enumerate(_list(item.get("constants", []), f"{w}.constants")):
            ww = f"{w}.constants[{k}]"
            e = _list(e, ww)
            if len(e) != 3:
                raise ParseError(f"expected [orbit, orbit, chain] at {ww}")
            x, y = _str(e[0], ww), _str(e[1], ww)
            if not c1.has_orbit(x):
                raise DanglingReference(f"orbit {x!r} at {ww} is not in {c1.name!r}")
            if not c2.has_orbit(y):
                raise DanglingReference(f"orbit {y!r} at {ww} is not in {c2.name!r}")
            consts[(x, y)] = chain_from_json(group, e[2], ww, t)
        doc.products[name] = PantsProductData((c1, c2), t, consts,
                                              parse_rational(item.get("tolerance", "0/1"), f"{w}.tolerance"),
                                              _int(item.get("degree_shift", 0), f"{w}.degree_shift"), name)

    for name, (item, w) in _named(raw.get("functionals", []), "functionals").items():
        _check_keys(item, ("name", "complex", "threshold", "values"), w)
        c = doc.complex(_str(item.get("complex"), f"{w}.complex"))
        vals = gen_values_from_json(group, item.get("values", []), f"{w}.values", c)
        doc.functionals[name] = BoundedFunctional(c, vals, parse_rational(item.get("threshold"), f"{w}.threshold"), name)

    for name, (item, w) in _named(raw.get("sigma", []), "sigma").items():
        _check_keys(item, ("name", "complex", "margin", "cochain"), w)
        cname = _str(item.get("complex"), f"{w}.complex")
        c = doc.complex(cname)
        co = gen_values_from_json(group, item.get("cochain", []), f"{w}.cochain", c)
        doc.sigma[name] = SigmaFixture(name, c, co, parse_rational(item.get("margin", "1/1"), f"{w}.margin"))

    for name, (item, w) in _named(raw.get("hamiltonians", []), "hamiltonians").items():
        _check_keys(item, ("name", "points", "values"), w)
        pts = [(_str(p[0], w), parse_rational(p[1], w)) for p in _list(item.get("points", []), f"{w}.points")]
        vals = [[parse_rational(v, f"{w}.values") for v in _list(r, f"{w}.values")]
                for r in _list(item.get("values", []), f"{w}.values")]
        doc.hamiltonians[name] = SampledHamiltonian(pts, vals, name)

    for name, entry in doc.complexes.items():
        if entry.hamiltonian is not None and entry.hamiltonian not in doc.hamiltonians:
            raise DanglingReference(f"hamiltonian {entry.hamiltonian!r} of {name!r} is undefined")
        if entry.trivial_map is not None and entry.trivial_map not in doc.chain_maps:
            raise DanglingReference(f"chain map {entry.trivial_map!r} of {name!r} is undefined")
        if entry.duality_product is not None and entry.duality_product not in doc.products:
            raise DanglingReference(f"product {entry.duality_product!r} of {name!r} is undefined")

    doc.tasks = [_str(t, f"tasks[{k}]") for k, t in enumerate(_list(raw.get("tasks", []), "tasks"))]
    return doc


def unit_chain(doc: WorkspaceDocument, name: str) -> Optional[NovikovChain]:
    """Representative of the unit class on a complex, if known."""
    entry = doc.entry(name)
    if entry.unit_class is not None:
        return doc.classes[entry.unit_class].representative
    if entry.morse is not None:
        return fundamental_cycle(entry.morse, entry.complex)
    return None


def reverse_unit_chain(doc: WorkspaceDocument, name: str) -> Optional[NovikovChain]:
    entry = doc.entry(name)
    if entry.reverse_unit is not None:
        return entry.reverse_unit
    if entry.morse is not None:
        top = entry.morse.dim
        c = doc.complex(name + "~")
        return c.chain({(p.name, c.group.zero): Fraction(1) for p in entry.morse.points if p.index == top})
    return None


# -- text layer ----------------------------------------------------------------

class _FloatLiteral(Exception):
    pass


def _reject_float(text):
    raise _FloatLiteral(text)


def _locate_float(text: str):
    """Line and column of the first decimal number outside strings."""
    line, col, i, n = 1, 1, 0, len(text)
    in_str = False
    num = re.compile(r"-?\d+(\.\d+)?([eE][+-]?\d+)?")
    while i < n:
        ch = text[i]
        if in_str:
            if ch == "\\":
                i += 2
                col += 2
                continue
            if ch == '"':
                in_str = False
        elif ch == '"':
            in_str = True
        elif ch == "-" or ch.isdigit():
            m = num.match(text, i)
            if m and (m.group(1) or m.group(2)):
                return line, col
            if m:
                col += m.end() - i
                i = m.end()
                continue
        if ch == "\n":
            line, col = line + 1, 1
        else:
            col += 1
        i += 1
    return None, None


def parse_text(text: str) -> dict:
    try:
        return json.loads(text, parse_float=_reject_float)
    except _FloatLiteral as e:
        line, col = _locate_float(text)
        raise ParseError(f"decimal number {e.args[0]} is not allowed; write rationals as \"num/den\"",
                         line, col) from None
    except json.JSONDecodeError as e:
        raise ParseError(e.msg, e.lineno, e.colno) from None


def loads(text: str, box=None, degree_factor=None) -> WorkspaceDocument:
    return build(parse_text(text), box, degree_factor)


def load(path, box=None, degree_factor=None) -> WorkspaceDocument:
    with open(path, encoding="utf-8") as fh:
        return loads(fh.read(), box, degree_factor)


_KEY_ORDER = ["name", "complex", "source", "target", "sources", "dim", "box", "degree_factor", "epsilon",
              "omega", "c1", "basis", "pairing", "constants", "orbits", "boundary", "morse", "points",
              "incidence", "cycles", "coboundary", "unit_class", "reverse_unit", "hamiltonian",
              "trivial_map", "duality_product", "shift_bound", "tolerance", "degree_shift", "threshold",
              "margin", "representative", "matrix", "values", "cochain"]


def _key_rank(k):
    return (_KEY_ORDER.index(k), k) if k in _KEY_ORDER else (len(_KEY_ORDER), k)


def _inline(v) -> str:
    return json.dumps(v, ensure_ascii=False, separators=(", ", ": "))


def _fmt(v, depth: int) -> str:
    pad, inner = "  " * depth, "  " * (depth + 1)
    if isinstance(v, dict):
        if not v:
            return "{}"
        keys = sorted(v, key=_key_rank) if depth else [k for k in SECTIONS if k in v]
        body = ",\n".join(f"{inner}{json.dumps(k)}: {_fmt(v[k], depth + 1)}" for k in keys)
        return "{\n" + body + "\n" + pad + "}"
    if isinstance(v, list):
        if not v or not any(isinstance(x, (list, dict)) for x in v):
            return _inline(v)
        body = ",\n".join(inner + (_fmt(x, depth + 1) if isinstance(x, dict) else _inline(x)) for x in v)
        return "[\n" + body + "\n" + pad + "]"
    return _inline(v)


def canonical(raw: dict) -> dict:
    """Normalize rationals to "num/den" throughout a parsed document."""
    out = json.loads(json.dumps(raw))

    def rat(x, where):
        return frac_str(parse_rational(x, where))

    g = out.get("group", {})
    if "omega" in g:
        g["omega"] = [rat(x, "group.omega") for x in g["omega"]]
    for m in out.get("models", []):
        if "pairing" in m:
            m["pairing"] = [[rat(x, "pairing") for x in r] for r in m["pairing"]]
        if "constants" in m:
            m["constants"] = [[e[0], e[1], e[2], [rat(x, "constants") for x in e[3]]] for e in m["constants"]]
    for c in out.get("complexes", []):
        if "orbits" in c:
            c["orbits"] = [[o[0], rat(o[1], "orbits"), o[2]] for o in c["orbits"]]
        if "morse" in c:
            mo = c["morse"]
            mo["epsilon"] = rat(mo["epsilon"], "epsilon")
            mo["points"] = [[p[0], rat(p[1], "points"), p[2]] for p in mo.get("points", [])]
            mo["cycles"] = [[b, [[p, rat(v, "cycles")] for p, v in cyc]] for b, cyc in mo.get("cycles", [])]
    for cm in out.get("chain_maps", []):
        cm["shift_bound"] = rat(cm["shift_bound"], "shift_bound")
    for p in out.get("products", []):
        if "tolerance" in p:
            p["tolerance"] = rat(p["tolerance"], "tolerance")
    for f in out.get("functionals", []):
        f["threshold"] = rat(f["threshold"], "threshold")
        f["values"] = [[v[0], v[1], rat(v[2], "values")] for v in f.get("values", [])]
    for s in out.get("sigma", []):
        if "margin" in s:
            s["margin"] = rat(s["margin"], "margin")
        s["cochain"] = [[v[0], v[1], rat(v[2], "cochain")] for v in s.get("cochain", [])]
    for h in out.get("hamiltonians", []):
        h["points"] = [[p[0], rat(p[1], "points")] for p in h.get("points", [])]
        h["values"] = [[rat(x, "values") for x in r] for r in h.get("values", [])]
    return out


def dumps(doc) -> str:
    raw = doc.raw if isinstance(doc, WorkspaceDocument) else doc
    return _fmt(canonical(raw), 0) + "\n"


def save(doc, path):
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(dumps(doc))


# -- builders used by fixture scripts and tests ---------------------------------

def group_to_json(g: GammaGroup) -> dict:
    return {"omega": [frac_str(w) for w in g.omega], "c1": list(g.c1)}


def complex_to_json(c: FloerComplex, **extra) -> dict:
    d = {"name": c.name, "box": c.box, "degree_factor": c.degree_factor,
         "orbits": [[o.label, frac_str(o.base_action), o.base_degree] for o in c.orbits],
         "boundary": matrix_to_json(c.boundary)}
    if c.dim is not None:
        d["dim"] = c.dim
    d.update(extra)
    return d


def chain_map_to_json(h: ChainMapData) -> dict:
    return {"name": h.name, "source": h.source.name, "target": h.target.name,
            "shift_bound": frac_str(h.shift_bound), "matrix": matrix_to_json(h.matrix)}


def product_to_json(p: PantsProductData) -> dict:
    return {"name": p.name, "sources": [p.sources[0].name, p.sources[1].name], "target": p.target.name,
            "tolerance": frac_str(p.tolerance), "degree_shift": p.degree_shift,
            "constants": [[x, y, chain_to_json(ch)] for (x, y), ch in sorted(p.constants.items())]}


def class_to_json(name: str, complex_name: str, rep: NovikovChain) -> dict:
    return {"name": name, "complex": complex_name, "representative": chain_to_json(rep)}


def hamiltonian_to_json(h: SampledHamiltonian) -> dict:
    return {"name": h.name, "points": [[p, frac_str(w)] for p, w in h.points],
            "values": [[frac_str(v) for v in row] for row in h.values]}


def model_to_json(m: CohomologyModel) -> dict:
    names = [b[0] for b in m.basis]
    return {"name": m.name, "dim": m.dim, "degree_factor": m.degree_factor,
            "basis": [[n, d] for n, d in m.basis],
            "pairing": [[frac_str(x) for x in r] for r in m.pairing],
            "constants": [[names[i], names[j], list(e), [frac_str(x) for x in v]]
                          for (i, j, e), v in sorted(m.constants.items())]}
