"""Limit closures, multiplicities, the I and J length functions and related checks."""

import random
from dataclasses import dataclass, field
from itertools import combinations, product
from math import comb, prod

from .errors import NotAParameterSystem, PreconditionError, StabilizationError
from .groebner import Submodule, colon, saturation, submodule_equal
from .hilbert import INFINITE
from .modules import (FPModule, ParamSystem, ext_module, free_resolution, koszul_complex,
                      quotient_by, submodule_as_module)

DEFAULT_CAP = 32


# -- multiplicity -------------------------------------------------------------------

def _elements(m: FPModule, x):
    if isinstance(x, ParamSystem):
        return x.elements
    return tuple(m.ring(e) for e in x)


def multiplicity(m: FPModule, x) -> int:
    """Serre multiplicity as the Euler characteristic of Koszul homology.

    ``x`` may be any sequence with ``M/(x)M`` of finite length; the result is 0
    when ``x`` has more elements than ``dim M``.
    """
    xs = _elements(m, x)
    k = koszul_complex(m, xs)
    total = 0
    for i in range(len(xs) + 1):
        ell = k.homology_length(i)
        if ell is INFINITE:
            raise NotAParameterSystem(f"H_{i} of the Koszul complex has infinite length")
        total += (-1) ** i * ell
    return total


# -- limit closure ----------------------------------------------------------------------

@dataclass
class ChainResult:
    """Outcome of the colon chain ``L_k = (y^{k+1})M : (y_1...y_d)^k``.

    ``colengths`` maps each evaluated ``k`` to ``length(M/L_k)``.
    """

    index: int
    colength: int
    colengths: dict = field(default_factory=dict)

    @property
    def note(self):
        return f"heuristically stabilized at n = {self.index}"


class _Chain:
    def __init__(self, m: FPModule, ys):
        self.m = m
        self.ys = list(ys)
        self.target = prod(self.ys)
        self.cache = {}

    def base(self, k):
        """Preimage of ``(y_1^{k+1}, ..., y_d^{k+1}) M``."""
        return self.m.expansion([y ** (k + 1) for y in self.ys])

    def colength(self, k):
        got = self.cache.get(k)
        if got is None:
            # F/(N:f) has length length(F/N) - length(F/(N + fF))
            n = self.base(k)
            gb = n.gb()
            f = self.target ** k
            whole = gb.quotient_length()
            if whole is INFINITE:
                raise NotAParameterSystem("M/(x)M does not have finite length")
            ext = gb.extend(self.m.ideal_times_free([f]))
            got = whole - ext.quotient_length()
            self.cache[k] = got
        return got

    def submodule(self, k):
        return colon(self.base(k), self.target ** k)


def _stabilize(chain: _Chain, cap: int) -> ChainResult:
    """First ``k`` with ``L_k = L_{k+1}``, confirmed against ``L_{max(2k, k+2)}``.

    The chain is ascending, so equal colengths mean equal submodules.
    """
    k = 1
    while True:
        probe = max(2 * k, k + 2)
        if probe > cap:
            raise StabilizationError(f"limit closure chain not stable up to n = {cap}", cap)
        if chain.colength(k) == chain.colength(k + 1):
            if chain.colength(k) == chain.colength(probe):
                return ChainResult(k, chain.colength(k), dict(sorted(chain.cache.items())))
            k = probe
        else:
            k += 1


def limit_chain(m: FPModule, x, n=None, cap: int = DEFAULT_CAP) -> ChainResult:
    """Stabilization data for the limit closure of ``x^n`` in ``M``."""
    ys = _powers(m, x, n)
    return _stabilize(_Chain(m, ys), cap)


def limit_colength(m: FPModule, x, n=None, cap: int = DEFAULT_CAP) -> int:
    """``length(M / (x^n)^lim_M)``."""
    return limit_chain(m, x, n, cap).colength


def limit_closure(m: FPModule, x, n=None, cap: int = DEFAULT_CAP) -> Submodule:
    """The limit closure of ``x^n`` in ``M`` as a submodule of ``F`` containing the relations."""
    ys = _powers(m, x, n)
    chain = _Chain(m, ys)
    res = _stabilize(chain, cap)
    return chain.submodule(res.index)


def _powers(m, x, n):
    xs = _elements(m, x)
    if n is None:
        return list(xs)
    if len(n) != len(xs):
        raise ValueError("exponent tuple length differs from the number of parameters")
    if any(k < 1 for k in n):
        raise ValueError("exponents must be positive")
    return [e ** k for e, k in zip(xs, n)]


@dataclass
class DDCertificate:
    """Witness that a sequence passed :func:`is_dd_sequence_box` on ``box``."""

    module: FPModule
    sequence: tuple
    box: "ExponentBox"
    passed: bool
    e: list = field(default_factory=list)
    counterexample: object = None
    reason: str = ""

    def __bool__(self):
        return self.passed


def limit_closure_dd(m: FPModule, x, certificate: DDCertificate) -> Submodule:
    """Closed form ``sum_i ((x without x_i)M : x_i) + (x)M`` valid for dd-sequences."""
    xs = _elements(m, x)
    if certificate is None or not certificate.passed or tuple(certificate.sequence) != tuple(xs) \
            or certificate.module is not m:
        raise PreconditionError("a passing dd-sequence certificate for this sequence is required")
    total = m.expansion(xs)
    for i in range(len(xs)):
        rest = xs[:i] + xs[i + 1:]
        total = total + colon(m.expansion(rest), xs[i])
    return total


# -- I and J -------------------------------------------------------------------------------

def quotient_length(m: FPModule, elems):
    return m.expansion(elems).quotient_length()


def I_fun(m: FPModule, x: ParamSystem, n, e=None) -> int:
    e = multiplicity(m, x) if e is None else e
    return quotient_length(m, x.power(n)) - prod(n) * e


def J_fun(m: FPModule, x: ParamSystem, n, e=None, cap: int = DEFAULT_CAP) -> int:
    e = multiplicity(m, x) if e is None else e
    return prod(n) * e - limit_colength(m, x, n, cap)


@dataclass(frozen=True)
class ExponentBox:
    ranges: tuple

    def __post_init__(self):
        for lo, hi in self.ranges:
            if not 1 <= lo <= hi:
                raise ValueError(f"bad range {lo}..{hi}")

    @classmethod
    def cube(cls, d, hi, lo=1):
        return cls(tuple((lo, hi) for _ in range(d)))

    @property
    def d(self):
        return len(self.ranges)

    def __len__(self):
        return prod(hi - lo + 1 for lo, hi in self.ranges)

    def __iter__(self):
        return iter(product(*(range(lo, hi + 1) for lo, hi in self.ranges)))

    def __str__(self):
        return "[" + ", ".join(f"{lo}..{hi}" for lo, hi in self.ranges) + "]"


@dataclass
class TableRow:
    n: tuple
    len_quot: int
    mult: int
    I: int
    J: int
    len_mod_lim: int
    stabilized_at: int


@dataclass
class InvariantTable:
    box: ExponentBox
    multiplicity: int
    rows: list

    HEADER = ("len_quot", "mult", "I", "J", "len_mod_lim")

    def header(self):
        return [f"n{i + 1}" for i in range(self.box.d)] + list(self.HEADER)

    def csv_rows(self):
        return [list(r.n) + [r.len_quot, r.mult, r.I, r.J, r.len_mod_lim] for r in self.rows]

    def column(self, name):
        return {r.n: getattr(r, name) for r in self.rows}


def table_row(m: FPModule, x: ParamSystem, n, e: int, cap: int = DEFAULT_CAP) -> TableRow:
    n = tuple(n)
    ell = quotient_length(m, x.power(n))
    chain = limit_chain(m, x, n, cap)
    mult = prod(n) * e
    return TableRow(n, ell, mult, ell - mult, mult - chain.colength, chain.colength, chain.index)


# workers are forked and read the shared inputs from here; only tuples cross processes
_SHARED = None


def _row_job(n):
    m, x, e, cap = _SHARED
    return table_row(m, x, n, e, cap)


def table(m: FPModule, x: ParamSystem, box: ExponentBox, cap: int = DEFAULT_CAP,
          threads: int = 1) -> InvariantTable:
    """Rows in lexicographic tuple order (independent of ``threads``)."""
    global _SHARED
    if box.d != len(x):
        raise ValueError("box dimension differs from the number of parameters")
    e = multiplicity(m, x)
    points = list(box)
    _SHARED = (m, x, e, cap)
    try:
        if threads > 1 and len(points) > 1:
            import multiprocessing
            from concurrent.futures import ProcessPoolExecutor
            ctx = multiprocessing.get_context("fork")
            with ProcessPoolExecutor(max_workers=threads, mp_context=ctx) as pool:
                rows = list(pool.map(_row_job, points))
        else:
            rows = [_row_job(n) for n in points]
    finally:
        _SHARED = None
    return InvariantTable(box, e, rows)


# -- unmixed component ------------------------------------------------------------------

@dataclass
class UnmixedResult:
    submodule: Submodule
    quotient: FPModule
    checked_powers: tuple
    note: str = ""


def unmixed_component(m: FPModule, x: ParamSystem, cap: int = DEFAULT_CAP,
                      check_powers=(1, 2)) -> UnmixedResult:
    """Largest submodule of dimension ``< dim M``, with certificates.

    Computed as ``0 :_M a(M)^infinity``; certified by containment in the
    limit closures of ``x^[n]`` for ``n`` in ``check_powers``, by
    ``dim U < dim M`` and by equal multiplicities of ``M`` and ``M/U``.
    """
    d = m.dim()
    a = a_ideals(m).product
    u = saturation(m.relations, [g.component(0) for g in a.gens], cap)
    quot = m.with_relations(u)
    for k in check_powers:
        lim = limit_closure(m, x, (k,) * len(x), cap)
        if not u <= lim:
            raise StabilizationError(f"unmixed certificate failed: U not inside lim(x^[{k}])", cap)
    if not u.is_zero() and submodule_as_module(u, m.relations).dim() >= d:
        raise StabilizationError("unmixed certificate failed: dim U is not below dim M", cap)
    if multiplicity(m, x) != multiplicity(quot, x):
        raise StabilizationError("unmixed certificate failed: multiplicity changed", cap)
    return UnmixedResult(u, quot, tuple(check_powers),
                         "U = 0 :_M a(M)^inf, checked against limit closures")


# -- d-sequences ------------------------------------------------------------------------

def _d_sequence_failure(m: FPModule, xs):
    """First ``(i, j)`` (1-based) violating the d-sequence colon condition, or ``None``."""
    s = len(xs)
    for i in range(1, s + 1):
        base = m.expansion(xs[:i - 1])
        for j in range(i, s + 1):
            lhs = colon(base, xs[j - 1])
            rhs = colon(base, xs[i - 1] * xs[j - 1])
            if not submodule_equal(lhs, rhs):
                return (i, j)
    return None


def is_d_sequence(m: FPModule, xs) -> bool:
    """``(x_1..x_{i-1})M : x_j = (x_1..x_{i-1})M : x_i x_j`` for all ``i <= j``."""
    return _d_sequence_failure(m, _elements(m, xs)) is None


def _dd_box(m, xs, box):
    """``None`` when ``xs`` passes the recursive dd test on ``box``, else a failure."""
    for n in box:
        bad = _d_sequence_failure(m, [x ** k for x, k in zip(xs, n)])
        if bad is not None:
            return ("strong d-sequence", n, bad)
    if len(xs) > 1:
        lo, hi = box.ranges[-1]
        sub = ExponentBox(box.ranges[:-1])
        for k in range(lo, hi + 1):
            got = _dd_box(quotient_by(m, [xs[-1] ** k]), xs[:-1], sub)
            if got is not None:
                return ("modulo x_s^%d" % k,) + got
    return None


def dd_coefficients(m: FPModule, xs):
    """``e_0..e_{d-1}``: ``e_i = e(x_1..x_i; 0 :_{M/(x_{i+2}..x_d)M} x_{i+1})``."""
    xs = _elements(m, xs)
    d = len(xs)
    out = []
    for i in range(d):
        base = m.expansion(xs[i + 1:])
        ann = colon(base, xs[i])
        k = submodule_as_module(ann, base)
        if i == 0:
            out.append(k.length())
        else:
            out.append(multiplicity(k, xs[:i]) if k.dim() >= 0 else 0)
    return out


def is_dd_sequence_box(m: FPModule, xs, box: ExponentBox) -> DDCertificate:
    """dd-sequence test on a finite box plus the closed form of the I function.

    Passes only when the recursive colon conditions hold on the box and
    ``I(n) = sum_i n_1...n_i e_i`` holds at every box point.
    """
    xs = tuple(_elements(m, xs))
    if box.d != len(xs):
        raise ValueError("box dimension differs from the sequence length")
    fail = _dd_box(m, xs, box)
    if fail is not None:
        return DDCertificate(m, xs, box, False, counterexample=fail,
                             reason="colon condition failed")
    es = dd_coefficients(m, xs)
    x = ParamSystem(m, xs, check=False)
    e = multiplicity(m, xs)
    for n in box:
        lhs = I_fun(m, x, n, e)
        rhs = sum(prod(n[:i]) * es[i] for i in range(len(xs)))
        if lhs != rhs:
            return DDCertificate(m, xs, box, False, es, (n, lhs, rhs),
                                 "closed form of I disagrees")
    return DDCertificate(m, xs, box, True, es)


# -- annihilators of local cohomology -----------------------------------------------------

@dataclass
class AIdeals:
    """``a_i(M)`` for ``i < dim M`` (``a[i]``), their product, and cohomology lengths."""

    dim: int
    a: list
    product: Submodule
    lengths: list

    def dim_quotient(self) -> int:
        """``dim R/a(M)``."""
        return self.product.quotient_dim()


def a_ideals(m: FPModule) -> AIdeals:
    """``a_i(M) = Ann Ext^{n-i}(M, R)`` from a free resolution.

    ``lengths[i]`` is the length of the i-th local cohomology module
    (equal to the length of the matching Ext module), possibly infinite.
    """
    ring = m.ring
    nv = ring.nvars
    d = m.dim()
    res = free_resolution(m)
    a, lengths = [], []
    whole = Submodule.whole(ring, 1)
    for i in range(max(d, 0)):
        ext = ext_module(res, nv - i)
        if ext.is_zero():
            a.append(whole)
            lengths.append(0)
        else:
            a.append(ext.annihilator())
            lengths.append(ext.length())
    product_ = whole
    for ideal in a:
        gens = [f.component(0) * g.component(0) for f in product_.gens for g in ideal.gens]
        product_ = Submodule.ideal(ring, gens)
    return AIdeals(d, a, product_, lengths)


# -- p-standard systems of parameters -------------------------------------------------------

class NotFound(Exception):
    pass


def _monomials_of_degree(nvars, deg):
    if nvars == 0:
        return [()] if deg == 0 else []
    out = []
    for c in combinations(range(deg + nvars - 1), nvars - 1):
        prev = -1
        exps = []
        for b in c:
            exps.append(b - prev - 1)
            prev = b
        exps.append(deg + nvars - 2 - prev)
        out.append(tuple(exps))
    return out


def _random_element(ideal: Submodule, deg: int, rng, coeffs):
    """Random homogeneous element of degree ``deg`` in ``ideal`` (or zero)."""
    ring = ideal.ring
    total = ring.zero()
    for g in ideal.gb().polynomials():
        ok, gd = g.is_homogeneous()
        if not ok or gd > deg:
            continue
        form = ring.zero()
        for e in _monomials_of_degree(ring.nvars, deg - gd):
            form = form + ring.monomial(e, rng.choice(coeffs))
        total = total + form * g
    return total


def p_standard_sop(m: FPModule, attempts: int = 50, seed: int = 0, max_degree: int = 6):
    """Greedy search for ``x_d in a(M)``, ``x_i in a(M/(x_{i+1}..x_d)M)``.

    Each step draws homogeneous elements of the current ``a`` ideal in
    increasing degree until one drops the dimension by one.  Raises
    :class:`NotFound` when ``dim R/a(M) >= dim M`` or the budget runs out.
    """
    d = m.dim()
    ai = a_ideals(m)
    if ai.dim_quotient() >= d:
        raise NotFound("dim R/a(M) is not below dim M")
    rng = random.Random(seed)
    char = m.ring.characteristic
    top = 100 if char == 0 else min(char - 1, 100)
    coeffs = list(range(1, top + 1))
    chosen = []
    current = m
    used = 0
    for step in range(d):
        a = ai.product if step == 0 else a_ideals(current).product
        target = d - step - 1
        found = None
        for deg in range(1, max_degree + 1):
            for _ in range(3):
                if used >= attempts:
                    raise NotFound("attempt budget exhausted")
                used += 1
                cand = _random_element(a, deg, rng, coeffs)
                if not cand:
                    break
                nxt = quotient_by(current, [cand])
                if nxt.dim() == target:
                    found = (cand, nxt)
                    break
            if found:
                break
        if found is None:
            raise NotFound("no parameter element found in the annihilator ideal")
        chosen.insert(0, found[0])
        current = found[1]
    return ParamSystem(m, chosen)


# -- polynomial-type estimates ------------------------------------------------------------

@dataclass
class TypeEstimate:
    """``column(n) <= C * max(n)^degree`` on the box; ``degree = -1`` encodes minus infinity."""

    degree: int
    constant: int
    label: str = "estimate"


def _type_estimate(column: dict) -> TypeEstimate:
    values = {n: v for n, v in column.items()}
    if all(v == 0 for v in values.values()):
        return TypeEstimate(-1, 0)
    size = {n: max(n) for n in values}
    mid = (min(size.values()) + max(size.values())) // 2
    lower = [n for n in values if size[n] <= mid] or list(values)
    d = len(next(iter(values)))
    for k in range(0, d + 1):
        c = max(-(-values[n] // size[n] ** k) for n in lower)
        c = max(c, 0)
        if all(values[n] <= c * size[n] ** k for n in values):
            return TypeEstimate(k, c)
    return TypeEstimate(d, max(values.values()))


def p_estimate(tbl: InvariantTable) -> TypeEstimate:
    """Box estimate of the polynomial type of the I column."""
    return _type_estimate(tbl.column("I"))


def pf_estimate(tbl: InvariantTable) -> TypeEstimate:
    """Box estimate of the polynomial type of the J column."""
    return _type_estimate(tbl.column("J"))


# -- standard-sop length formulas -------------------------------------------------------------

def buchsbaum_formulas(lengths, d):
    """``(I, J)`` predicted from local cohomology lengths for a standard sop."""
    I = sum(comb(d - 1, i) * lengths[i] for i in range(d))
    J = sum(comb(d - 1, i - 1) * lengths[i] for i in range(1, d))
    return I, J
