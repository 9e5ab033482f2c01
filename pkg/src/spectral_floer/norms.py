"""Hofer-type quantities of sampled Hamiltonians and the spectral pseudo-norm."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .errors import EmptyLiftList, EmptyList, InputError, NotNormalized, TransportNotBijective
from .novikov import as_fraction


class SampledHamiltonian:
    """Values H(t_i, x) on a uniform grid t_i = i/T of [0, 1] and a weighted point set."""

    def __init__(self, points: Sequence[Tuple[str, object]], values: Sequence[Sequence], name: str = ""):
        self.points = [(str(p), as_fraction(w)) for p, w in points]
        self.name = name
        if not self.points:
            raise InputError("a sampled Hamiltonian needs at least one point")
        if any(w <= 0 for _, w in self.points):
            raise InputError("point weights must be positive")
        if len({p for p, _ in self.points}) != len(self.points):
            raise InputError("point labels must be distinct")
        self.values = [tuple(as_fraction(v) for v in row) for row in values]
        if len(self.values) < 2:
            raise InputError("need at least two time samples")
        if any(len(r) != len(self.points) for r in self.values):
            raise InputError("every time sample needs one value per point")

    @property
    def steps(self) -> int:
        return len(self.values) - 1

    @property
    def total_weight(self) -> Fraction:
        return sum((w for _, w in self.points), Fraction(0))

    def labels(self):
        return [p for p, _ in self.points]

    def mean(self, i) -> Fraction:
        return sum((w * v for (_, w), v in zip(self.points, self.values[i])), Fraction(0)) / self.total_weight

    @property
    def normalized(self) -> bool:
        return all(self.mean(i) == 0 for i in range(len(self.values)))

    def renormalized(self) -> "SampledHamiltonian":
        rows = []
        for i, row in enumerate(self.values):
            m = self.mean(i)
            rows.append([v - m for v in row])
        return SampledHamiltonian(self.points, rows, self.name)

    def __eq__(self, other):
        return (isinstance(other, SampledHamiltonian) and self.points == other.points
                and self.values == other.values)


@dataclass
class HoferQuantities:
    hofer_norm: Fraction
    e_plus: Fraction
    e_minus: Fraction


def trapezoid(samples: Sequence[Fraction]) -> Fraction:
    """Trapezoid rule on a uniform grid of [0, 1]; exact for constant samples."""
    n = len(samples) - 1
    inner = sum(samples[1:-1], Fraction(0))
    return (inner + (samples[0] + samples[-1]) / 2) / n


def hofer_quantities(H: SampledHamiltonian) -> HoferQuantities:
    if not H.normalized:
        raise NotNormalized(f"Hamiltonian {H.name!r} does not have zero mean at every time sample")
    mx = [max(r) for r in H.values]
    mn = [min(r) for r in H.values]
    return HoferQuantities(trapezoid([a - b for a, b in zip(mx, mn)]), trapezoid(mx), trapezoid([-b for b in mn]))


def time_reversal_H(H: SampledHamiltonian) -> SampledHamiltonian:
    """H~(t, x) = -H(1 - t, x)."""
    return SampledHamiltonian(H.points, [[-v for v in row] for row in reversed(H.values)], H.name)


def _check_transport(H: SampledHamiltonian, transport: Sequence[Dict[str, str]]):
    labels = H.labels()
    if len(transport) != len(H.values):
        raise TransportNotBijective("transport needs one bijection per time sample")
    for i, m in enumerate(transport):
        if sorted(m) != sorted(labels) or sorted(m.values()) != sorted(labels):
            raise TransportNotBijective(f"transport at sample {i} is not a bijection of the point set")


def identity_transport(H: SampledHamiltonian):
    return [{p: p for p in H.labels()} for _ in H.values]


def compose_hamiltonians(F: SampledHamiltonian, G: SampledHamiltonian,
                         transport: Optional[Sequence[Dict[str, str]]] = None) -> SampledHamiltonian:
    """(F#G)(x, t) = F(x, t) + G(transport_t(x), t); transport_t stands in for the inverse flow of F."""
    if F.points != G.points or len(F.values) != len(G.values):
        raise InputError("composed Hamiltonians must share points and time grid")
    transport = identity_transport(F) if transport is None else transport
    _check_transport(F, transport)
    idx = {p: k for k, p in enumerate(F.labels())}
    rows = []
    for i, (rf, rg) in enumerate(zip(F.values, G.values)):
        rows.append([rf[k] + rg[idx[transport[i][p]]] for k, p in enumerate(F.labels())])
    out = SampledHamiltonian(F.points, rows, F.name)
    return out.renormalized() if F.normalized and G.normalized else out


def inverse_hamiltonian(G: SampledHamiltonian, flow: Optional[Sequence[Dict[str, str]]] = None) -> SampledHamiltonian:
    """G-bar(x, t) = -G(flow_t(x), t)."""
    flow = identity_transport(G) if flow is None else flow
    _check_transport(G, flow)
    idx = {p: k for k, p in enumerate(G.labels())}
    rows = [[-row[idx[flow[i][p]]] for p in G.labels()] for i, row in enumerate(G.values)]
    return SampledHamiltonian(G.points, rows, G.name)


def invert_transport(transport: Sequence[Dict[str, str]]):
    return [{v: k for k, v in m.items()} for m in transport]


def gamma_tilde(rho_h_1, rho_hrev_1) -> Fraction:
    return as_fraction(rho_h_1) + as_fraction(rho_hrev_1)


def gamma(lifts: Sequence) -> Fraction:
    """Minimum of gamma-tilde over the supplied lifts (an upper bound for the true infimum)."""
    lifts = [as_fraction(x) for x in lifts]
    if not lifts:
        raise EmptyLiftList("gamma needs at least one lift")
    return min(lifts)


def is_positive(rho_h_1) -> bool:
    return as_fraction(rho_h_1) <= 0


def partial_order(rho_f_ginv_1) -> str:
    """Verdict on f >= g from the supplied value rho(f g^{-1}; 1)."""
    return "f >= g" if is_positive(rho_f_ginv_1) else "f >= g fails"


def osc(values: Sequence) -> Fraction:
    vals = [as_fraction(v) for v in values]
    if not vals:
        raise EmptyList("osc of an empty list")
    return max(vals) - min(vals)
