"""Regenerate the shipped workspace documents under src/spectral_floer/data.

Run from the repository root:  python3 tools/make_fixtures.py
Output is canonical, so rerunning leaves the files byte-identical.
"""

from __future__ import annotations

import random
from fractions import Fraction
from pathlib import Path

from spectral_floer.complex import FloerComplex, NovikovChain, Orbit
from spectral_floer.document import (
    chain_map_to_json,
    chain_to_json,
    class_to_json,
    complex_to_json,
    frac_str,
    gen_values_to_json,
    hamiltonian_to_json,
    matrix_to_json,
    model_to_json,
    morse_to_json,
    product_to_json,
    save,
)
from spectral_floer.generators import random_complex, random_product
from spectral_floer.novikov import Direction, GammaGroup, NovikovElement
from spectral_floer.products import tensor_product, unit_product
from spectral_floer.models import point_model, sphere_model, sphere_morse, torus_model, torus_morse

DATA = Path(__file__).resolve().parents[1] / "src" / "spectral_floer" / "data"
EPSILONS = (Fraction(1, 10), Fraction(1, 100), Fraction(1, 1000))
F = Fraction


def el(group, *terms):
    """Downward element from (exponent, coefficient) pairs."""
    return NovikovElement(group, Direction.DOWN, {tuple(e): F(c) for e, c in terms})


def gen(group, label, coeff=1, cap=None):
    return NovikovChain.generator(group, label, cap, coeff)


def doc(group, **sections):
    out = {"group": {"omega": [frac_str(w) for w in group.omega], "c1": list(group.c1)}}
    out.update({k: v for k, v in sections.items() if v})
    return out


def renamed(d, name):
    d = dict(d)
    d["name"] = name
    return d


# -- Morse models --------------------------------------------------------------

def morse_complex_json(name, morse, eps, box=1, **extra):
    d = {"name": name, "box": box, "degree_factor": 2, "morse": morse_to_json(morse, eps)}
    d.update(extra)
    return d


# -- documents -----------------------------------------------------------------

def sphere_doc():
    g = GammaGroup([F(-1)], [2])
    morse = sphere_morse()
    trivial = FloerComplex(g, [Orbit("m", 0, 2), Orbit("M", 0, 0)], {}, box=1, degree_factor=2, dim=2,
                           name="trivial")
    complexes = [complex_to_json(trivial)]
    classes = [class_to_json("trivial.unit", "trivial", gen(g, "m"))]
    chain_maps, products, hams, tasks = [], [], [], ["validate"]
    weights = [("m1", 1), ("m2", 2), ("s", 3), ("M", 2)]
    for eps in EPSILONS:
        tag = f"e{eps.denominator}"
        name = f"sphere_{tag}"
        complexes.append(morse_complex_json(name, morse, eps, hamiltonian=f"H_{tag}", trivial_map=f"triv_{tag}",
                                            duality_product=f"duality_{tag}"))
        classes.append(class_to_json(f"{name}.fundamental", name, gen(g, "m1") + gen(g, "m2")))
        classes.append(class_to_json(f"{name}.point", name, gen(g, "M")))
        vals = [eps * p.value for p in morse.points]
        hams.append({"name": f"H_{tag}", "points": [[p, str(w)] for p, w in weights],
                     "values": [[frac_str(v) for v in vals]] * 3})
        chain_maps.append({"name": f"triv_{tag}", "source": "trivial", "target": name,
                           "shift_bound": frac_str(eps),
                           "matrix": [["M", "M", [[[0], 1, 1]]], ["m", "m1", [[[0], 1, 1]]],
                                      ["m", "m2", [[[0], 1, 1]]]]})
        products.append({"name": f"duality_{tag}", "sources": [name, name + "~"], "target": "trivial",
                         "tolerance": "0/1", "degree_shift": 2,
                         "constants": [["m1", "M", [["m", [[[0], 1, 1]]]]],
                                       ["m2", "M", [["m", [[[0], 1, 1]]]]]]})
        products.append({"name": f"unit_{tag}", "sources": ["trivial", name], "target": name,
                         "tolerance": "0/1", "degree_shift": 2,
                         "constants": [["m", z.name, [[z.name, [[[0], 1, 1]]]]] for z in morse.points]})
        tasks += [f"axioms {name}", f"gamma {name}", f"spectral {name}.fundamental",
                  f"triangle unit_{tag} trivial.unit {name}.fundamental",
                  f"triangle unit_{tag} trivial.unit {name}.point"]
    tasks += ["hofer H_e10", "spectrum sphere_e10"]
    return doc(g, models=[model_to_json(sphere_model(g))], complexes=complexes, chain_maps=chain_maps,
               products=products, classes=classes, hamiltonians=hams, tasks=tasks)


def torus_doc():
    g = GammaGroup([F(1, 2)], [0])
    morse = torus_morse()
    complexes, classes, tasks = [], [], ["validate"]
    for eps in EPSILONS:
        name = f"torus_e{eps.denominator}"
        complexes.append(morse_complex_json(name, morse, eps))
        for b, cyc in sorted(morse.cycles.items()):
            rep = NovikovChain(g, [(p, el(g, ((0,), c))) for p, c in sorted(cyc.items())])
            classes.append(class_to_json(f"{name}.{b}", name, rep))
        tasks += [f"axioms {name}", f"spectrum {name}"]
    return doc(g, models=[model_to_json(torus_model(g))], complexes=complexes, classes=classes, tasks=tasks)


def models_doc():
    g = GammaGroup([F(-1)], [2])
    return doc(g, models=[model_to_json(m) for m in (sphere_model(g), point_model(g), torus_model(g))],
               tasks=["validate"])


def three_generator_complex(g, name="three"):
    orbits = [Orbit("x", 2, 0), Orbit("y", 1, 0), Orbit("z", F(5, 2), 1)]
    return FloerComplex(g, orbits, {"z": {"x": el(g, ((0,), 1)), "y": el(g, ((0,), -1))}}, box=1,
                        degree_factor=2, dim=None, name=name)


def three_generator_doc():
    g = GammaGroup([F(1)], [0])
    c = three_generator_complex(g)
    # windowed-homology example: x (action 1, deg 0), z (action 2, deg 1), dz = x; caps pinned to zero
    w = FloerComplex(g, [Orbit("x", 1, 0), Orbit("z", 2, 1)], {"z": {"x": el(g, ((0,), 1))}}, box=0,
                     degree_factor=2, name="window")
    classes = [class_to_json("three.x", "three", gen(g, "x")),
               class_to_json("three.y", "three", gen(g, "y"))]
    functionals = [{"name": "mu_ok", "complex": "three", "threshold": "-2/1",
                    "values": gen_values_to_json({("x", (1,)): F(1), ("y", (0,)): F(2)})}]
    sigma = [{"name": "sigma_three", "complex": "three", "margin": "1/1",
              "cochain": gen_values_to_json({("x", (0,)): F(1), ("y", (1,)): F(-1)})}]
    tasks = ["validate", "spectral three.x", "spectrum three", "axioms three",
             "windowed-homology window 0 3 0", "windowed-homology window 0 3 1",
             "windowed-homology window 3/2 3 1"]
    return doc(g, complexes=[complex_to_json(c), complex_to_json(w)], classes=classes,
               functionals=functionals, sigma=sigma, tasks=tasks)


def products_doc():
    g = GammaGroup([F(1)], [0])
    three = three_generator_complex(g)
    single = FloerComplex(g, [Orbit("e", 0, 0)], {}, box=1, degree_factor=2, name="unit")
    complexes = [complex_to_json(three), complex_to_json(single)]
    classes = [class_to_json("three.x", "three", gen(g, "x")), class_to_json("three.y", "three", gen(g, "y")),
               class_to_json("unit.e", "unit", gen(g, "e"))]
    products, tasks = [], ["validate"]

    p = tensor_product(three, three, "three_sq")
    products.append(product_to_json(p))
    classes.append(class_to_json("three_sq.x", p.target.name, gen(g, "x|x")))
    complexes.append(complex_to_json(p.target))
    tasks.append("triangle three_sq three.x three.y")

    products.append(product_to_json(unit_product(single, "e", three, "unit_three")))
    tasks.append("triangle unit_three unit.e three.x")

    # a lambda = 1/10 product whose one entry sits 1/20 above the sum of levels
    lam = {"name": "lambda_pass", "sources": ["unit", "three"], "target": "three", "tolerance": "1/10",
           "degree_shift": 0,
           "constants": [["e", "x", [["x", [[[0], 1, 1]]]]], ["e", "y", [["y", [[[0], 1, 1]]]]],
                         ["e", "z", [["z", [[[0], 1, 1]]]]]]}
    shifted = Orbit("e", F(-1, 20), 0)
    lowered = FloerComplex(g, [shifted], {}, box=1, degree_factor=2, name="unit_low")
    complexes.append(complex_to_json(lowered))
    classes.append(class_to_json("unit_low.e", "unit_low", gen(g, "e")))
    lam["sources"] = ["unit_low", "three"]
    products.append(lam)
    tasks.append("triangle lambda_pass unit_low.e three.x")

    rng = random.Random(20240)
    k = 0
    while k < 8:
        inst = random_product(rng)
        if not inst.class_a or not inst.class_b:
            continue
        p = inst.product
        a, b, t = p.sources[0], p.sources[1], p.target
        if a.group != g:
            continue
        na, nb, nt = f"r{k}a", f"r{k}b", f"r{k}t"
        complexes += [renamed(complex_to_json(a), na), renamed(complex_to_json(b), nb), renamed(complex_to_json(t), nt)]
        pj = product_to_json(p)
        pj.update(name=f"random_{k}", sources=[na, nb], target=nt)
        products.append(pj)
        classes.append(class_to_json(f"{na}.c", na, inst.class_a.representative))
        classes.append(class_to_json(f"{nb}.c", nb, inst.class_b.representative))
        tasks.append(f"triangle random_{k} {na}.c {nb}.c")
        k += 1
    return doc(g, complexes=complexes, products=products, classes=classes, tasks=tasks)


def norms_doc():
    g = GammaGroup([F(1)], [0])
    hams = [
        {"name": "two_point", "points": [["a", "1/1"], ["b", "1/1"]], "values": [["1/1", "-1/1"]] * 2},
        {"name": "zero", "points": [["a", "1/1"], ["b", "1/1"]], "values": [["0/1", "0/1"]] * 2},
        {"name": "varying", "points": [["a", "1/1"], ["b", "2/1"], ["c", "1/1"]],
         "values": [["2/1", "-1/1", "0/1"], ["1/2", "0/1", "-1/2"], ["-3/1", "1/1", "1/1"],
                    ["0/1", "0/1", "0/1"]]},
    ]
    return doc(g, hamiltonians=hams, tasks=["validate", "hofer two_point", "hofer zero", "hofer varying"])


# -- failing fixtures, one per validator ---------------------------------------

def bad_docs():
    g = GammaGroup([F(1)], [0])
    out = {}
    chain3 = FloerComplex(g, [Orbit("a", 3, 2), Orbit("b", 2, 1), Orbit("c", 1, 0)],
                          {"a": {"b": el(g, ((0,), 1))}, "b": {"c": el(g, ((0,), 1))}}, box=1, name="square")
    out["bad_square"] = doc(g, complexes=[complex_to_json(chain3)], tasks=["validate"])
    filt = FloerComplex(g, [Orbit("x", 2, 0), Orbit("z", 1, 1)], {"z": {"x": el(g, ((0,), 1))}}, box=1,
                        name="filtration")
    out["bad_filtration"] = doc(g, complexes=[complex_to_json(filt)], tasks=["validate"])
    deg = FloerComplex(g, [Orbit("x", 1, 1), Orbit("z", 2, 1)], {"z": {"x": el(g, ((0,), 1))}}, box=1,
                       name="degree")
    out["bad_degree"] = doc(g, complexes=[complex_to_json(deg)], tasks=["validate"])

    three = three_generator_complex(g)
    p = product_to_json(tensor_product(three, three, "broken"))
    p["constants"] = [c for c in p["constants"] if (c[0], c[1]) != ("z", "x")]
    out["bad_leibniz"] = doc(g, complexes=[complex_to_json(three), complex_to_json(tensor_product(three, three).target)],
                             products=[p], tasks=["validate"])

    single = FloerComplex(g, [Orbit("e", F(-1, 5), 0)], {}, box=1, name="unit_high")
    lam = {"name": "lambda_fail", "sources": ["unit_high", "three"], "target": "three", "tolerance": "1/10",
           "degree_shift": 0,
           "constants": [["e", "x", [["x", [[[0], 1, 1]]]]], ["e", "y", [["y", [[[0], 1, 1]]]]],
                         ["e", "z", [["z", [[[0], 1, 1]]]]]]}
    out["bad_level"] = doc(g, complexes=[complex_to_json(three), complex_to_json(single)], products=[lam],
                           tasks=["validate"])

    cj = complex_to_json(three)
    # transpose with the wrong sign on one entry
    cj["coboundary"] = matrix_to_json({"x": {"z": el(g, ((0,), 1))}, "y": {"z": el(g, ((0,), 1))}})
    sigma = [{"name": "sigma_bad", "complex": "three", "margin": "1/1",
              "cochain": gen_values_to_json({("x", (0,)): F(1), ("y", (0,)): F(1)})}]
    out["bad_sigma"] = doc(g, complexes=[cj], sigma=sigma, tasks=["validate"])

    mu = [{"name": "mu_bad", "complex": "three", "threshold": "0/1",
           "values": gen_values_to_json({("x", (-1,)): F(1), ("x", (0,)): F(1), ("y", (1,)): F(1)})}]
    out["bad_bounded"] = doc(g, complexes=[complex_to_json(three)], functionals=mu, tasks=["validate"])
    return out


def main(out=None):
    out = Path(out) if out is not None else DATA
    out.mkdir(parents=True, exist_ok=True)
    docs = {"sphere": sphere_doc(), "torus": torus_doc(), "models": models_doc(),
            "three_generator": three_generator_doc(), "products": products_doc(), "norms": norms_doc()}
    docs.update(bad_docs())
    for name, d in docs.items():
        save(d, out / f"{name}.json")
        print(f"wrote {name}.json")


if __name__ == "__main__":
    import sys

    main(sys.argv[1] if len(sys.argv) > 1 else None)
