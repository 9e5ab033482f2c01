"""Task dispatch and report rendering for workspace documents."""

from __future__ import annotations

import json
import shlex
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Sequence

from .checks import Check, ValidationReport
from .complex import boundary_apply, time_reversal, validate_chain_map, validate_complex, windowed_homology
from .document import WorkspaceDocument, frac_str, parse_bound, reverse_unit_chain, unit_chain
from .errors import InputError, UnknownTask, ZeroClass
from .norms import gamma_tilde, hofer_quantities, time_reversal_H
from .products import triangle_report, validate_product
from .quantum import (
    bounded_check,
    check_morse,
    fundamental_cycle,
    sigma_chain_map_check,
    top_degree_unique,
    validate_model,
)
from .spectral import HomologyClassSpec, axiom_suite, spectral_number, spectrality_check

TASKS = ("validate", "spectral", "spectrum", "axioms", "triangle", "gamma", "hofer", "windowed-homology")


def _value(x):
    if isinstance(x, Fraction):
        return frac_str(x)
    if isinstance(x, float):
        return "inf" if x > 0 else "-inf"
    return x


@dataclass
class TaskResult:
    task: str
    checks: List[Check] = field(default_factory=list)
    values: Dict[str, Any] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def take(self, rep: ValidationReport):
        self.checks.extend(rep.checks)

    def add(self, name, ok, detail="", where=None):
        self.checks.append(Check(name, bool(ok), detail, where))


@dataclass
class Report:
    results: List[TaskResult]

    @property
    def ok(self) -> bool:
        return all(r.ok for r in self.results)

    def text(self) -> str:
        out = []
        for r in self.results:
            out.append(f"== {r.task} ==")
            for k, v in r.values.items():
                out.append(f"  {k}: {_render(v)}")
            for c in r.checks:
                out.append("  " + c.line())
        out.append("OK" if self.ok else "FAILED")
        return "\n".join(out) + "\n"

    def json(self) -> str:
        data = {"ok": self.ok, "tasks": [
            {"task": r.task, "ok": r.ok, "values": {k: _jsonable(v) for k, v in r.values.items()},
             "checks": [c.as_dict() for c in r.checks]} for r in self.results]}
        return json.dumps(data, indent=2, sort_keys=False) + "\n"


def _jsonable(v):
    if isinstance(v, dict):
        return {str(k): _jsonable(x) for k, x in v.items()}
    if isinstance(v, (list, tuple)):
        return [_jsonable(x) for x in v]
    return _value(v) if isinstance(v, (Fraction, float)) else (v if isinstance(v, (int, str, bool)) or v is None else str(v))


def _render(v):
    if isinstance(v, dict):
        return ", ".join(f"{k}={_render(x)}" for k, x in v.items())
    if isinstance(v, (list, tuple)):
        return "[" + ", ".join(_render(x) for x in v) + "]"
    return str(_value(v))


def _chain_text(ch) -> str:
    parts = []
    for (lab, cap), c in sorted(ch.generators().items()):
        capt = f" q^{list(cap)}" if any(cap) else ""
        parts.append(f"{frac_str(c)} {lab}{capt}")
    return " + ".join(parts) or "0"


# -- individual tasks ----------------------------------------------------------

def task_validate(doc: WorkspaceDocument, args, seed) -> TaskResult:
    res = TaskResult("validate")
    for name, m in doc.models.items():
        res.take(_prefixed(validate_model(m), f"model {name}"))
    for name, entry in list(doc.complexes.items()):
        if name.endswith("~") and name[:-1] in doc.complexes:
            continue
        res.take(_prefixed(validate_complex(entry.complex), f"complex {name}"))
        if entry.morse is not None:
            res.take(_prefixed(check_morse(entry.morse), f"complex {name}"))
            res.add("fundamental_cycle_unique", top_degree_unique(entry.complex), "", f"complex {name}")
    for name, h in doc.chain_maps.items():
        res.take(_prefixed(validate_chain_map(h), f"chain map {name}"))
    for name, p in doc.products.items():
        res.take(_prefixed(validate_product(p), f"product {name}"))
    for name, mu in doc.functionals.items():
        ok, bad = bounded_check(mu)
        res.add("bounded_threshold", ok, f"threshold {mu.threshold}",
                f"functional {name}" + ("" if ok else ": " + ", ".join(f"{x[0]} q^{list(x[1])}" for x in bad)))
    for name, s in doc.sigma.items():
        delta = doc.complexes[s.complex.name].coboundary if s.complex.name in doc.complexes else None
        res.take(_prefixed(sigma_chain_map_check(s.complex, s.cochain, delta, s.margin), f"sigma {name}"))
    for name, cls in doc.classes.items():
        res.add("class_is_cycle", not boundary_apply(cls.representative, cls.complex), "", f"class {name}")
    for name, h in doc.hamiltonians.items():
        res.add("hamiltonian_normalized", h.normalized, "", f"hamiltonian {name}")
    return res


def _prefixed(rep: ValidationReport, prefix: str) -> ValidationReport:
    out = ValidationReport(rep.subject)
    for c in rep.checks:
        where = f"{prefix}: {c.where}" if c.where else prefix
        out.checks.append(Check(c.name, c.ok, c.detail, where))
    return out


def task_spectral(doc, args, seed) -> TaskResult:
    if len(args) != 1:
        raise InputError("usage: spectral <class>")
    cls = doc.lookup("classes", args[0])
    res = TaskResult(f"spectral {args[0]}")
    r = spectral_number(cls)
    res.values["rho"] = r.rho
    res.values["witness"] = _chain_text(r.witness)
    res.values["beta"] = _chain_text(r.beta)
    res.values["method"] = r.method.value
    res.values["certificate"] = f"{r.certificate[0]} q^{list(r.certificate[1])}" if r.certificate else "none"
    res.values["degree_factor"] = cls.complex.degree_factor
    if r.upper_bound_only:
        res.values["note"] = "upper bound only: the exponent box is too small"
    res.add("spectrality", spectrality_check(r, cls.complex), f"rho = {r.rho}", args[0])
    return res


def task_spectrum(doc, args, seed) -> TaskResult:
    if len(args) != 1:
        raise InputError("usage: spectrum <complex>")
    c = doc.complex(args[0])
    res = TaskResult(f"spectrum {args[0]}")
    rhos = {}
    for name, cls in doc.classes.items():
        if cls.complex is c:
            try:
                r = spectral_number(cls)
            except ZeroClass:
                rhos[name] = "zero class"
                continue
            rhos[name] = r.rho
            res.add("spectrality", spectrality_check(r, c), f"rho = {r.rho}", name)
    res.values["rho"] = rhos
    return res


def _morse_classes(doc, name):
    entry = doc.entry(name)
    out = [cls for cls in doc.classes.values() if cls.complex is entry.complex]
    if entry.morse is not None and not any(cls.name == "fundamental" for cls in out):
        out.insert(0, HomologyClassSpec(entry.complex, fundamental_cycle(entry.morse, entry.complex), "fundamental"))
    return out


def task_axioms(doc, args, seed) -> TaskResult:
    if len(args) != 1:
        raise InputError("usage: axioms <complex>")
    name = args[0]
    entry = doc.entry(name)
    c = entry.complex
    res = TaskResult(f"axioms {name}")
    res.take(_prefixed(validate_complex(c), name))
    classes = _morse_classes(doc, name)
    res.take(axiom_suite(c, classes, seed))
    if entry.morse is not None:
        fmin, _ = entry.morse.f_bounds
        rho = spectral_number(HomologyClassSpec(c, fundamental_cycle(entry.morse, c), "fundamental")).rho
        res.add("normalization", rho == -entry.epsilon * fmin,
                f"rho(fundamental) = {rho}, -eps*min f = {-entry.epsilon * fmin}", "fundamental")
    for pname, p in doc.products.items():
        if p.sources[0] is c or p.sources[1] is c:
            res.take(_prefixed(validate_product(p), f"product {pname}"))
    for hname, h in doc.chain_maps.items():
        if h.source is c or h.target is c:
            res.take(_prefixed(validate_chain_map(h), f"chain map {hname}"))
            for cls in classes:
                if h.source is c:
                    img = h.target.chain(h.apply_vec(cls.representative.generators()))
                    try:
                        r_img = spectral_number(HomologyClassSpec(h.target, img)).rho
                    except ZeroClass:
                        continue
                    r0 = spectral_number(cls).rho
                    res.add("monotone_under_map", r_img <= r0 + h.shift_bound,
                            f"{r_img} <= {r0} + {h.shift_bound}", f"{hname}: {cls.name}")
    return res


def task_triangle(doc, args, seed) -> TaskResult:
    if len(args) != 3:
        raise InputError("usage: triangle <product> <classA> <classB>")
    p = doc.lookup("products", args[0])
    a, b = doc.lookup("classes", args[1]), doc.lookup("classes", args[2])
    res = TaskResult("triangle " + " ".join(args))
    res.take(_prefixed(validate_product(p), f"product {args[0]}"))
    t = triangle_report(p, a, b)
    res.values.update(rho_a=t.rho_a, rho_b=t.rho_b, rho_ab=t.rho_ab if t.rho_ab is not None else "zero class",
                      tolerance=t.tolerance)
    res.add("triangle_inequality", t.ok,
            "product class is zero" if t.vacuous else f"{t.rho_ab} <= {t.rho_a} + {t.rho_b} + {t.tolerance}")
    return res


def gamma_data(doc, name):
    c = doc.complex(name)
    unit = unit_chain(doc, name)
    runit = reverse_unit_chain(doc, name)
    if unit is None or runit is None:
        raise InputError(f"complex {name!r} needs unit_class and reverse_unit for gamma")
    rc = doc.complex(name + "~")
    r1 = spectral_number(HomologyClassSpec(c, unit, "1"))
    r2 = spectral_number(HomologyClassSpec(rc, runit, "1~"))
    return c, rc, unit, runit, r1, r2


def task_gamma(doc, args, seed) -> TaskResult:
    if len(args) != 1:
        raise InputError("usage: gamma <complex>")
    name = args[0]
    entry = doc.entry(name)
    c, rc, unit, runit, r1, r2 = gamma_data(doc, name)
    res = TaskResult(f"gamma {name}")
    gt = gamma_tilde(r1.rho, r2.rho)
    res.values.update(rho_1=r1.rho, rho_reversed_1=r2.rho, gamma_tilde=gt)
    res.add("spectrality", spectrality_check(r1, c) and spectrality_check(r2, rc))
    back = spectral_number(HomologyClassSpec(time_reversal(rc), unit, "1")).rho
    res.add("gamma_symmetric", gamma_tilde(r2.rho, back) == gt, "gamma~ of the reversed complex agrees")
    if entry.duality_product is not None:
        p = doc.products[entry.duality_product]
        res.take(_prefixed(validate_product(p), f"product {p.name}"))
        t = triangle_report(p, HomologyClassSpec(c, unit, "1"), HomologyClassSpec(rc, runit, "1~"))
        res.add("triangle_inequality", t.ok, f"{t.rho_ab} <= {t.rho_a} + {t.rho_b} + {t.tolerance}")
        if t.ok and not t.vacuous:
            res.add("gamma_nonnegative", gt >= -p.tolerance, f"gamma~ = {gt}, tolerance {p.tolerance}")
    if entry.hamiltonian is not None:
        hq = hofer_quantities(doc.hamiltonians[entry.hamiltonian])
        res.values.update(e_plus=hq.e_plus, e_minus=hq.e_minus, hofer_norm=hq.hofer_norm)
        res.add("gamma_below_energy", gt <= hq.e_plus + hq.e_minus, f"{gt} <= {hq.e_plus} + {hq.e_minus}")
        if entry.trivial_map is not None:
            h = doc.chain_maps[entry.trivial_map]
            if h.shift_bound == hq.e_minus and h.target is c:
                res.add("rho_below_e_minus", r1.rho <= hq.e_minus, f"{r1.rho} <= {hq.e_minus}")
            else:
                res.add("rho_below_e_minus", False, "trivial map must target this complex with shift E-")
    return res


def task_hofer(doc, args, seed) -> TaskResult:
    if len(args) != 1:
        raise InputError("usage: hofer <hamiltonian>")
    h = doc.lookup("hamiltonians", args[0])
    res = TaskResult(f"hofer {args[0]}")
    q = hofer_quantities(h)
    qr = hofer_quantities(time_reversal_H(h))
    res.values.update(hofer_norm=q.hofer_norm, e_plus=q.e_plus, e_minus=q.e_minus)
    res.add("energy_split", 0 <= q.e_plus + q.e_minus <= q.hofer_norm,
            f"0 <= {q.e_plus} + {q.e_minus} <= {q.hofer_norm}")
    res.add("reversal_swaps_energies", qr.e_plus == q.e_minus and qr.e_minus == q.e_plus)
    return res


def task_windowed(doc, args, seed) -> TaskResult:
    if len(args) != 4:
        raise InputError("usage: windowed-homology <complex> <lambda> <mu> <k>")
    c = doc.complex(args[0])
    lam, mu = parse_bound(args[1], "lambda"), parse_bound(args[2], "mu")
    try:
        k = int(args[3])
    except ValueError:
        raise InputError(f"degree must be an integer, got {args[3]!r}") from None
    wh = windowed_homology(c, lam, mu, k)
    res = TaskResult("windowed-homology " + " ".join(args))
    res.values.update(dimension=wh.dimension, basis=[_chain_text(b) for b in wh.basis])
    if wh.truncated:
        res.values["note"] = "window truncated by the exponent box"
    return res


DISPATCH = {
    "validate": task_validate,
    "spectral": task_spectral,
    "spectrum": task_spectrum,
    "axioms": task_axioms,
    "triangle": task_triangle,
    "gamma": task_gamma,
    "hofer": task_hofer,
    "windowed-homology": task_windowed,
}


def run(doc: WorkspaceDocument, task: Sequence[str], seed: int = 0) -> TaskResult:
    if isinstance(task, str):
        task = shlex.split(task)
    if not task:
        raise UnknownTask("empty task")
    fn = DISPATCH.get(task[0])
    if fn is None:
        raise UnknownTask(f"unknown task {task[0]!r}; expected one of {', '.join(TASKS)}")
    return fn(doc, list(task[1:]), seed)


def run_all(doc: WorkspaceDocument, tasks, seed: int = 0) -> Report:
    return Report([run(doc, t, seed) for t in tasks])
