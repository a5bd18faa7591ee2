"""Hilbert-Kunz functions in positive characteristic and the bridge to the J function."""

from dataclasses import dataclass, field
from fractions import Fraction

from .errors import CharacteristicError, PreconditionError
from .hilbert import INFINITE
from .invariants import limit_colength, multiplicity
from .modules import FPModule, ParamSystem, cyclic, frobenius_power, ideal_as_module
from .poly import PolyRing

DEFAULT_BUDGET = 2_000_000


@dataclass
class HKSeries:
    """Values ``length(A / I^[q])`` for ``q = p, p^2, ...``."""

    characteristic: int
    values: list                      # [(q, length)]
    truncated: bool = False
    notice: str = ""

    @property
    def qs(self):
        return [q for q, _ in self.values]

    @property
    def lengths(self):
        return [v for _, v in self.values]


def _check_char(ring: PolyRing):
    p = ring.characteristic
    if p == 0:
        raise CharacteristicError("Hilbert-Kunz functions need positive characteristic")
    return p


def hk_function(a: FPModule, ideal_gens, e_max: int, budget: int = DEFAULT_BUDGET) -> HKSeries:
    """``length(A / I^[q])`` for ``q = p .. p^e_max`` with ``A`` a cyclic module ``P/K``.

    Stops early, with a notice, once the next length would exceed ``budget``
    (lengths grow roughly by the factor ``q^dim A``).
    """
    if a.rank != 1:
        raise PreconditionError("Hilbert-Kunz functions are defined for quotient rings")
    p = _check_char(a.ring)
    gens = [a.ring(g) for g in ideal_gens]
    dim = a.dim()
    values = []
    q = p
    for e in range(1, e_max + 1):
        if values:
            guess = values[-1][1] * p ** max(dim, 0)
            if guess > budget:
                return HKSeries(p, values, True,
                                f"truncated before q = {q}: expected length {guess} exceeds budget")
        ell = a.expansion(frobenius_power(gens, q)).quotient_length()
        if ell is INFINITE:
            raise PreconditionError("the ideal is not primary to the irrelevant ideal")
        values.append((q, ell))
        q *= p
    return HKSeries(p, values)


@dataclass
class HKEstimate:
    """Last normalised ratio, its change from the previous one, and the Richardson value."""

    value: Fraction
    residual: Fraction
    extrapolated: Fraction
    label: str = "estimate"


def e_hk_estimate(s: HKSeries, dim: int) -> HKEstimate:
    if len(s.values) < 2:
        raise ValueError("at least two points are needed for an estimate")
    (q0, l0), (q1, l1) = s.values[-2], s.values[-1]
    r0 = Fraction(l0, q0 ** dim)
    r1 = Fraction(l1, q1 ** dim)
    p = s.characteristic
    # ratios typically behave like e + c/q; eliminate the 1/q term
    extrapolated = (p * r1 - r0) / (p - 1)
    return HKEstimate(r1, abs(r1 - r0), extrapolated)


@dataclass
class BridgeRow:
    q: int
    J: int
    frobenius_length: int
    direct_length: int

    @property
    def agree(self) -> bool:
        return self.J == self.frobenius_length == self.direct_length


@dataclass
class BridgeTable:
    rows: list = field(default_factory=list)

    @property
    def agree(self) -> bool:
        return all(r.agree for r in self.rows)


def j_hk_bridge(ring: PolyRing, ideal_gens, e_max: int, cap: int = 32) -> BridgeTable:
    """J of the ideal-module ``I`` along ``q``, against ``length(A / n^[q])`` for ``A = R/I``.

    The sop is the variables of ``ring``; ``dim R/I <= dim R - 2`` is required.
    """
    _check_char(ring)
    gens = [ring(g) for g in ideal_gens]
    a = cyclic(ring, gens)
    if a.dim() > ring.nvars - 2:
        raise PreconditionError("the ideal must have codimension at least two")
    m = ideal_as_module(ring, gens)
    x = ParamSystem(m, ring.gens)
    e = multiplicity(m, x)
    d = ring.nvars
    hk = hk_function(a, ring.gens, e_max)
    out = BridgeTable()
    for q, hk_len in hk.values:
        j = q ** d * e - limit_colength(m, x, (q,) * d, cap)
        direct = a.expansion([v ** q for v in ring.gens]).quotient_length()
        out.rows.append(BridgeRow(q, j, hk_len, direct))
    return out
