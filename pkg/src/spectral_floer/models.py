"""Small Morse functions and cohomology models used by fixtures and tests.

These are authored toy data: incidence numbers and structure constants are
chosen to be consistent, not computed from geometry.
"""

from __future__ import annotations

from fractions import Fraction

from .novikov import GammaGroup
from .quantum import CohomologyModel, CriticalPoint, MorseData

F = Fraction


def sphere_morse() -> MorseData:
    """Two minima, one saddle, one maximum; the two flow lines from the saddle to the maximum cancel."""
    pts = [CriticalPoint("m1", F(-1), 0), CriticalPoint("m2", F(-1, 2), 0),
           CriticalPoint("s", F(0), 1), CriticalPoint("M", F(1), 2)]
    inc = {"m1": {"s": 1}, "m2": {"s": -1}}
    cycles = {"1": {"m1": F(1), "m2": F(1)}, "p": {"M": F(1)}}
    return MorseData(pts, inc, 2, cycles)


def torus_morse() -> MorseData:
    pts = [CriticalPoint("m1", F(-1), 0), CriticalPoint("m2", F(-1, 2), 0),
           CriticalPoint("s1", F(0), 1), CriticalPoint("s2", F(1, 4), 1),
           CriticalPoint("s3", F(-1, 4), 1), CriticalPoint("M", F(1), 2)]
    inc = {"m1": {"s3": 1}, "m2": {"s3": -1}}
    cycles = {"1": {"m1": F(1), "m2": F(1)}, "a": {"s1": F(1)}, "b": {"s2": F(1)}, "vol": {"M": F(1)}}
    return MorseData(pts, inc, 2, cycles)


def sphere_group() -> GammaGroup:
    return GammaGroup([F(-1)], [2])


def sphere_model(group: GammaGroup) -> CohomologyModel:
    """Basis 1, p with p * p = q^{-A0} * 1; needs omega(A0) < 0 and c1(A0) = 2."""
    consts = {(0, 0, (0,)): [1, 0], (0, 1, (0,)): [0, 1], (1, 0, (0,)): [0, 1], (1, 1, (1,)): [1, 0]}
    return CohomologyModel(group, 2, [("1", 0), ("p", 2)], [[0, 1], [1, 0]], consts, 2, "sphere")


def point_model(group: GammaGroup) -> CohomologyModel:
    return CohomologyModel(group, 0, [("1", 0)], [[1]], {(0, 0, (0,)): [1]}, 2, "point")


def torus_model(group: GammaGroup) -> CohomologyModel:
    basis = [("1", 0), ("a", 1), ("b", 1), ("vol", 2)]

    def e(k, s=1):
        return [s if i == k else 0 for i in range(4)]

    consts = {}
    for j in range(4):
        consts[(0, j, (0,))] = e(j)
        consts[(j, 0, (0,))] = e(j)
    consts[(1, 2, (0,))] = e(3)
    consts[(2, 1, (0,))] = e(3, -1)
    pairing = [[0, 0, 0, 1], [0, 0, 1, 0], [0, -1, 0, 0], [1, 0, 0, 0]]
    return CohomologyModel(group, 2, basis, pairing, consts, 2, "torus")
