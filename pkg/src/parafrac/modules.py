"""Finitely presented graded modules and constructions on them.

A module ``M = F/P`` is stored through its free module ``F = R^rank`` (with
basis degrees) and the relation submodule ``P``.  Submodules of ``M`` are
represented by their preimages in ``F``, i.e. submodules of ``F`` containing
``P``; then ``M/N`` and ``F/N`` coincide.
"""

import warnings
from dataclasses import dataclass, field
from itertools import combinations

from . import hilbert
from .errors import (CharacteristicError, NonHomogeneousError, NotAParameterSystem,
                     PreconditionError, RingMismatchError)
from .groebner import (Submodule, _eliminate, _gen_degrees, minimal_generators, syzygies)
from .hilbert import INFINITE
from .poly import FreeElement, Polynomial, PolyRing


def _homogeneous_degree(f: Polynomial, what="element"):
    ok, d = f.is_homogeneous()
    if not ok:
        raise NonHomogeneousError(f"{what} {f} is not homogeneous")
    return d


class FPModule:
    """``M = R^rank / relations`` with basis vectors in degrees ``degrees``."""

    def __init__(self, ring: PolyRing, rank: int, relations=(), degrees=None, name=None):
        if rank < 1:
            raise ValueError("free rank must be positive")
        self.ring = ring
        self.rank = rank
        self.degrees = tuple(degrees) if degrees is not None else (0,) * rank
        if len(self.degrees) != rank:
            raise ValueError("one degree per generator")
        if isinstance(relations, Submodule):
            if relations.rank != rank or relations.ring != ring:
                raise RingMismatchError("relations live in another free module")
            rels = relations.gens
        else:
            rels = [ring.vector([r]) if isinstance(r, Polynomial) else r for r in relations]
        for r in rels:
            if not r.is_homogeneous(self.degrees)[0]:
                raise NonHomogeneousError(f"relation {r} is not homogeneous")
        self.relations = Submodule(ring, rank, rels, self.degrees)
        if isinstance(relations, Submodule) and relations.shifts == self.degrees:
            self.relations._gbs.update(relations._gbs)
        self.name = name

    def __repr__(self):
        label = f"{self.name}: " if self.name else ""
        return f"FPModule({label}rank={self.rank}, relations={len(self.relations.gens)})"

    # submodules of F ----------------------------------------------------
    def free(self) -> Submodule:
        return Submodule.whole(self.ring, self.rank, self.degrees)

    def submodule(self, gens=()) -> Submodule:
        """Preimage in ``F`` of the submodule generated by ``gens`` (plus the relations)."""
        return self.relations.plus(gens)

    def ideal_times_free(self, elems):
        """Generators of ``(elems) * F``."""
        out = []
        for f in elems:
            f = self.ring(f)
            for i in range(self.rank):
                out.append(f * self.ring.basis_vector(self.rank, i))
        return out

    def expansion(self, elems) -> Submodule:
        """Preimage of ``(elems) M``."""
        return self.relations.plus(self.ideal_times_free(elems))

    # numerical invariants ---------------------------------------------------
    def length(self):
        return self.relations.quotient_length()

    def dim(self) -> int:
        return self.relations.quotient_dim()

    def hilbert_numerator(self):
        return self.relations.gb().hilbert_numerator()

    def degree(self) -> int:
        """Leading coefficient of the Hilbert polynomial (the degree of ``M``)."""
        return hilbert.dim_and_degree(self.hilbert_numerator(), self.ring.nvars)[1]

    def is_zero(self) -> bool:
        return self.relations.quotient_dim() < 0

    def with_relations(self, sub: Submodule, name=None) -> "FPModule":
        return FPModule(self.ring, self.rank, sub, self.degrees, name)


def colength(sub: Submodule):
    """``length(F/sub)``."""
    return sub.quotient_length()


def relative_length(big: Submodule, small: Submodule):
    """``length(big/small)`` for ``small <= big`` via Hilbert series difference."""
    n = big.ring.nvars
    num = hilbert._poly_add(small.gb().hilbert_numerator(), big.gb().hilbert_numerator(), -1)
    return hilbert.length_from_numerator(num, n)


# -- constructors -------------------------------------------------------------------

def cyclic(ring: PolyRing, ideal_gens=(), name=None) -> FPModule:
    """``R/I`` as a rank-one module."""
    gens = [ring(g) for g in ideal_gens]
    for g in gens:
        _homogeneous_degree(g, "ideal generator")
    return FPModule(ring, 1, [g for g in gens if g], (0,), name)


class IdealModule(FPModule):
    """An ideal ``I = (g_1..g_s)`` presented as ``R^s / syz(g)``.

    ``generators`` keeps the inclusion ``I -> R``.
    """

    def __init__(self, ring, gens, name=None):
        gens = [ring(g) for g in gens]
        gens = [g for g in gens if g]
        if not gens:
            raise PreconditionError("the zero ideal has no presentation as a nonzero module")
        degs = tuple(_homogeneous_degree(g, "ideal generator") for g in gens)
        syz = syzygies(gens)
        super().__init__(ring, len(gens), minimal_generators(syz) if syz.gens else [], degs, name)
        self.generators = tuple(gens)

    def quotient_ring_module(self) -> FPModule:
        """``R/I``, the cokernel of the inclusion into ``R``."""
        return cyclic(self.ring, self.generators)


def ideal_as_module(ring: PolyRing, gens, name=None) -> IdealModule:
    return IdealModule(ring, gens, name)


def quotient_by(m: FPModule, elems, name=None) -> FPModule:
    """``M / (elems) M``."""
    elems = [m.ring(e) for e in elems]
    for e in elems:
        _homogeneous_degree(e)
    return FPModule(m.ring, m.rank, m.expansion(elems), m.degrees, name)


def submodule_as_module(z: Submodule, n: Submodule, name=None) -> FPModule:
    """Presentation of the subquotient ``Z/N`` (``N <= Z`` in one free module).

    Generators are minimal generators of ``Z``; relations are the kernel of
    ``R^m -> F/N``.
    """
    ring = z.ring
    gens = [g for g in minimal_generators(Submodule(ring, z.rank, z.gens + n.gens, z.shifts))
            if not n.contains(g)]
    if not gens:
        return FPModule(ring, 1, [ring.vector([1])], (0,), name)
    m = len(gens)
    degs = _gen_degrees(gens, z.shifts)
    pairs = [(g, ring.basis_vector(m, j)) for j, g in enumerate(gens)]
    pairs += [(h, None) for h in n.gens]
    rels = _eliminate(ring, pairs, z.rank, m, z.shifts, degs)
    return FPModule(ring, m, rels, degs, name)


# -- systems of parameters ------------------------------------------------------------

class ParamSystem:
    """An ordered system of parameters ``x_1..x_d`` of a module.

    Construction checks homogeneity, ``d = dim M`` and that ``M/(x)M`` has
    finite length.
    """

    def __init__(self, module: FPModule, elements, name=None, check=True):
        ring = module.ring
        self.module = module
        self.elements = tuple(ring(e) for e in elements)
        self.name = name
        self.degrees = tuple(_homogeneous_degree(e, "parameter") for e in self.elements)
        if check:
            d = module.dim()
            if len(self.elements) != d:
                raise NotAParameterSystem(
                    f"{len(self.elements)} elements given but the module has dimension {d}")
            if any(not e for e in self.elements) and d > 0:
                raise NotAParameterSystem("a parameter is zero")
            if module.expansion(self.elements).quotient_length() is INFINITE:
                raise NotAParameterSystem("M/(x)M does not have finite length")

    def __len__(self):
        return len(self.elements)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"ParamSystem([{', '.join(str(e) for e in self.elements)}])"

    def power(self, n):
        """The sequence ``x_1^{n_1}, ..., x_d^{n_d}``."""
        n = tuple(n)
        if len(n) != len(self.elements):
            raise ValueError("exponent tuple length differs from the number of parameters")
        if any(k < 1 for k in n):
            raise ValueError("exponents must be positive")
        return [e ** k for e, k in zip(self.elements, n)]

    def powered(self, n) -> "ParamSystem":
        return ParamSystem(self.module, self.power(n), check=False)


# -- Koszul complex ---------------------------------------------------------------------

@dataclass
class KoszulComplex:
    """``K(x; M)`` lifted to free modules: ``K_i = F^{C(d,i)}`` modulo copies of ``P``.

    Position ``(subset index, j)`` of ``K_i`` is ``index * rank + j``.
    """

    module: FPModule
    sequence: tuple
    subsets: list = field(default_factory=list)
    shifts: list = field(default_factory=list)

    def __post_init__(self):
        d = len(self.sequence)
        ring = self.module.ring
        degs = [self.sequence[k].total_degree() if self.sequence[k] else 0 for k in range(d)]
        for i in range(d + 1):
            subs = list(combinations(range(d), i))
            self.subsets.append(subs)
            sh = []
            for s in subs:
                base = sum(degs[k] for k in s)
                sh.extend(base + g for g in self.module.degrees)
            self.shifts.append(tuple(sh))
        self._ring = ring

    def rank(self, i):
        return len(self.subsets[i]) * self.module.rank

    def differential(self, i):
        """Images of the basis of ``K_i`` in ``K_{i-1}`` (``1 <= i <= d``)."""
        ring, r = self._ring, self.module.rank
        index = {s: n for n, s in enumerate(self.subsets[i - 1])}
        out = []
        for s in self.subsets[i]:
            for j in range(r):
                terms = {}
                for k, var in enumerate(s):
                    rest = s[:k] + s[k + 1:]
                    pos = index[rest] * r + j
                    sign = 1 if k % 2 == 0 else -1
                    for e, c in self.sequence[var]._terms.items():
                        key = (pos, e)
                        terms[key] = ring.field(terms.get(key, 0) + sign * c)
                        if not terms[key]:
                            del terms[key]
                out.append(FreeElement(ring, self.rank(i - 1), terms))
        return out

    def relation_copies(self, i):
        """``P`` placed in every block of ``K_i``."""
        ring, r = self._ring, self.module.rank
        rank = self.rank(i)
        out = []
        for b in range(len(self.subsets[i])):
            for g in self.module.relations.gens:
                out.append(FreeElement(ring, rank, {(b * r + p, e): c for (p, e), c in g._terms.items()}))
        return out

    def cycles(self, i) -> Submodule:
        """Preimage in ``K_i`` of the cycles (kernel of the differential modulo ``P``)."""
        ring = self._ring
        if i == 0:
            return Submodule.whole(ring, self.rank(0), self.shifts[0])
        rank = self.rank(i)
        pairs = [(img, ring.basis_vector(rank, k)) for k, img in enumerate(self.differential(i))]
        pairs += [(g, None) for g in self.relation_copies(i - 1)]
        gens = _eliminate(ring, pairs, self.rank(i - 1), rank, self.shifts[i - 1], self.shifts[i])
        return Submodule(ring, rank, gens, self.shifts[i])

    def boundaries(self, i) -> Submodule:
        """Image of the next differential plus the relation copies."""
        gens = list(self.relation_copies(i))
        if i < len(self.sequence):
            gens += self.differential(i + 1)
        return Submodule(self._ring, self.rank(i), gens, self.shifts[i])

    def homology_length(self, i):
        return relative_length(self.cycles(i), self.boundaries(i))


def koszul_complex(m: FPModule, xs) -> KoszulComplex:
    xs = tuple(m.ring(x) for x in xs)
    for x in xs:
        _homogeneous_degree(x)
    return KoszulComplex(m, xs)


def koszul_homology_lengths(m: FPModule, x) -> list:
    """``[length H_i(x; M) for i = 0..d]``."""
    if isinstance(x, ParamSystem):
        xs = x.elements
    else:
        xs = ParamSystem(m, x).elements
    k = koszul_complex(m, xs)
    out = []
    for i in range(len(xs) + 1):
        ell = k.homology_length(i)
        if ell is INFINITE:
            raise NotAParameterSystem(f"H_{i} has infinite length")
        out.append(ell)
    return out


# -- free resolutions and Ext -----------------------------------------------------------

@dataclass
class Resolution:
    """``0 <- F_0 <- F_1 <- ...``; ``maps[j]`` lists the images of the basis of ``F_{j+1}``."""

    ring: PolyRing
    degrees: list
    maps: list

    @property
    def ranks(self):
        return [len(d) for d in self.degrees]

    def __len__(self):
        return len(self.maps)


def free_resolution(m: FPModule, max_length: int = None) -> Resolution:
    """Resolution by iterated syzygies, keeping minimal generators at each step."""
    ring = m.ring
    limit = max_length if max_length is not None else ring.nvars + 1
    degrees = [m.degrees]
    maps = []
    current = Submodule(ring, m.rank, minimal_generators(m.relations), m.degrees)
    while current.gens and len(maps) < limit:
        cols = list(current.gens)
        maps.append(cols)
        degrees.append(_gen_degrees(cols, current.shifts))
        syz = syzygies(cols, current.shifts)
        current = Submodule(ring, len(cols), minimal_generators(syz) if syz.gens else [],
                            syz.shifts)
    return Resolution(ring, degrees, maps)


def _rows(cols, nrows, ring, shifts):
    """Rows of the matrix whose columns are ``cols`` (free elements of rank ``nrows``)."""
    ncols = len(cols)
    rows = [dict() for _ in range(nrows)]
    for l, col in enumerate(cols):
        for (p, e), c in col._terms.items():
            rows[p][(l, e)] = c
    return [FreeElement(ring, ncols, t) for t in rows]


@dataclass
class ExtModule:
    """``Ext^j(M, R)`` as ``Z/B`` inside ``R^{rank F_j}`` (dual basis in negative degrees)."""

    index: int
    cycles: Submodule
    boundaries: Submodule

    def length(self):
        return relative_length(self.cycles, self.boundaries)

    def is_zero(self) -> bool:
        return self.cycles <= self.boundaries

    def annihilator(self) -> Submodule:
        from .groebner import annihilator_of_quotient
        if self.is_zero():
            return Submodule.whole(self.cycles.ring, 1)
        return annihilator_of_quotient(self.cycles, self.boundaries)

    def dim(self) -> int:
        if self.is_zero():
            return -1
        return self.annihilator().quotient_dim()


def ext_module(res: Resolution, j: int) -> ExtModule:
    ring = res.ring
    if j < 0 or j >= len(res.degrees):
        z = Submodule(ring, 1, [], (0,))
        return ExtModule(j, z, z)
    rank = len(res.degrees[j])
    dual = tuple(-d for d in res.degrees[j])
    if j < len(res.maps):
        nxt_shifts = tuple(-d for d in res.degrees[j + 1])
        rows = _rows(res.maps[j], rank, ring, nxt_shifts)
        syz = syzygies(rows, nxt_shifts)
        z = Submodule(ring, rank, syz.gens, dual)
    else:
        z = Submodule.whole(ring, rank, dual)
    if j > 0:
        prev = _rows(res.maps[j - 1], len(res.degrees[j - 1]), ring, dual)
        b = Submodule(ring, rank, [r for r in prev if r], dual)
    else:
        b = Submodule(ring, rank, [], dual)
    return ExtModule(j, z, b)


# -- idealization -----------------------------------------------------------------------

def embed(f: Polynomial, target: PolyRing) -> Polynomial:
    """Image of ``f`` in a ring whose variables extend those of ``f.ring``."""
    src = f.ring
    if src == target:
        return f
    if target.variables[:src.nvars] != src.variables or target.field != src.field:
        raise RingMismatchError("target ring does not extend the source ring")
    pad = (0,) * (target.nvars - src.nvars)
    return Polynomial(target, {e + pad: c for e, c in f._terms.items()})


def restrict(f: Polynomial, target: PolyRing) -> Polynomial:
    """Inverse of :func:`embed` for elements free of the extra variables."""
    if f.ring == target:
        return f
    k = target.nvars
    if f.ring.variables[:k] != target.variables:
        raise RingMismatchError("source ring does not extend the target ring")
    if any(any(e[k:]) for e in f._terms):
        raise RingMismatchError("element involves variables outside the target ring")
    return Polynomial(target, {e[:k]: c for e, c in f._terms.items()})


@dataclass
class Idealization:
    """``R x M`` realised as a cyclic module over ``P[t_1..t_s]``.

    ``base`` is the polynomial ring ``P`` and ``base_ideal`` the ideal with
    ``R = P/base_ideal``.
    """

    base: PolyRing
    base_ideal: tuple
    module_part: FPModule
    ring: PolyRing
    new_variables: tuple
    module: FPModule

    def lift(self, f):
        return embed(self.base(f), self.ring)


def idealization(base, m: FPModule, prefix: str = "t", name=None) -> Idealization:
    """The idealization of ``m`` over ``base`` (a polynomial ring or a cyclic module ``P/K``).

    New variables have degree one, so the generators of ``m`` must share a
    degree; their degree is shifted to one (with a warning when it changes).
    """
    if isinstance(base, PolyRing):
        ring0, kgens = base, ()
    elif isinstance(base, FPModule):
        if base.rank != 1:
            raise PreconditionError("the base of an idealization must be a ring or a cyclic module")
        ring0 = base.ring
        kgens = tuple(g.component(0) for g in base.relations.gens)
    else:
        raise TypeError("base must be a PolyRing or a cyclic FPModule")
    if m.ring != ring0:
        raise RingMismatchError("module and base ring differ")
    if len(set(m.degrees)) != 1:
        raise NonHomogeneousError(
            "generators of unequal degrees cannot be idealized with the standard grading")
    if m.degrees[0] != 1:
        warnings.warn(f"idealization: generator degree {m.degrees[0]} shifted to 1",
                      stacklevel=2)
    s = m.rank
    names = []
    k = 1
    while len(names) < s:
        cand = f"{prefix}{k}" if s > 1 else prefix
        while cand in ring0.variables or cand in names:
            cand = "_" + cand
        names.append(cand)
        k += 1
    ring = ring0.extend(names)
    tvars = [ring.var(v) for v in names]
    rels = [embed(g, ring) for g in kgens]
    for i in range(s):
        for j in range(i, s):
            rels.append(tvars[i] * tvars[j])
    for r in m.relations.gens:
        acc = ring.zero()
        for p, comp in enumerate(r.components()):
            if comp:
                acc = acc + embed(comp, ring) * tvars[p]
        if acc:
            rels.append(acc)
    mod = cyclic(ring, rels, name)
    return Idealization(ring0, kgens, m, ring, tuple(names), mod)


# -- Frobenius powers -------------------------------------------------------------------

def is_power_of(q: int, p: int) -> bool:
    if q < 1:
        return False
    while q % p == 0:
        q //= p
    return q == 1


def frobenius_power(ideal_gens, q: int):
    """Generator-wise ``q``-th powers (``q`` a power of the characteristic)."""
    gens = list(ideal_gens)
    if not gens:
        return []
    p = gens[0].ring.characteristic
    if p == 0:
        raise CharacteristicError("Frobenius powers need positive characteristic")
    if not is_power_of(q, p):
        raise ValueError(f"{q} is not a power of the characteristic {p}")
    return [g ** q for g in gens]
