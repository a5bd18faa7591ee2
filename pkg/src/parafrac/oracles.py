"""Degree-by-degree linear algebra, independent of the Groebner engine.

Used to cross-check Groebner-based answers for homogeneous ideals: graded
pieces ``I_D`` are spanned by ``monomial * generator`` products and handled
as explicit coefficient vectors.
"""

import random

from .invariants import _monomials_of_degree
from .poly import Polynomial, PolyRing


class Echelon:
    """Incrementally row-reduced set of sparse vectors over a field."""

    def __init__(self, field):
        self.field = field
        self.rows = {}   # pivot -> row (dict index -> coeff), pivot coefficient 1

    def reduce(self, vec):
        """Fully reduced representative modulo the span."""
        f = self.field
        vec = {k: v for k, v in vec.items() if v}
        out = {}
        while vec:
            piv = min(vec)
            c = vec.pop(piv)
            row = self.rows.get(piv)
            if row is None:
                out[piv] = c
                continue
            for k, v in row.items():
                if k == piv:
                    continue
                w = f.sub(vec.get(k, 0), f.mul(c, v))
                if w:
                    vec[k] = w
                else:
                    vec.pop(k, None)
        return out

    def add(self, vec) -> bool:
        vec = self.reduce(vec)
        if not vec:
            return False
        piv = min(vec)
        inv = self.field.inv(vec[piv])
        self.rows[piv] = {k: self.field.mul(v, inv) for k, v in vec.items()}
        return True

    @property
    def rank(self):
        return len(self.rows)


def graded_piece(ring: PolyRing, gens, deg: int) -> Echelon:
    """Echelon basis of ``I_deg`` for homogeneous generators ``gens``."""
    ech = Echelon(ring.field)
    for g in gens:
        if not g:
            continue
        gd = g.total_degree()
        if gd > deg:
            continue
        for m in _monomials_of_degree(ring.nvars, deg - gd):
            ech.add({tuple(a + b for a, b in zip(e, m)): c for e, c in g._terms.items()})
    return ech


def quotient_dims(ring: PolyRing, gens, upto: int):
    """``dim (R/I)_D`` for ``D = 0..upto``."""
    out = []
    for deg in range(upto + 1):
        total = len(_monomials_of_degree(ring.nvars, deg))
        out.append(total - graded_piece(ring, gens, deg).rank)
    return out


def artinian_length(ring: PolyRing, gens, max_degree: int = 60):
    """Sum of ``dim (R/I)_D`` until a graded piece vanishes (``None`` if it never does)."""
    total = 0
    for deg in range(max_degree + 1):
        mons = len(_monomials_of_degree(ring.nvars, deg))
        k = mons - graded_piece(ring, gens, deg).rank
        if k == 0:
            return total
        total += k
    return None


def in_ideal(ring: PolyRing, gens, f: Polynomial) -> bool:
    """Membership of a homogeneous ``f`` via its graded piece."""
    if not f:
        return True
    ok, deg = f.is_homogeneous()
    if not ok:
        raise ValueError("oracle membership needs a homogeneous element")
    return not graded_piece(ring, gens, deg).reduce(dict(f._terms))


def colon_piece_dim(ring: PolyRing, gens, f: Polynomial, deg: int) -> int:
    """``dim {v in R_deg : f v in I}``, a kernel dimension."""
    fd = f.total_degree()
    target = graded_piece(ring, gens, deg + fd)
    mons = _monomials_of_degree(ring.nvars, deg)
    images = Echelon(ring.field)
    rank = 0
    for m in mons:
        img = {tuple(a + b for a, b in zip(e, m)): c for e, c in f._terms.items()}
        img = target.reduce(img)
        if images.add(img):
            rank += 1
    return len(mons) - rank


def random_homogeneous(ring: PolyRing, deg: int, rng: random.Random, density: float = 0.6):
    terms = {}
    p = ring.field.characteristic
    for m in _monomials_of_degree(ring.nvars, deg):
        if rng.random() < density:
            c = ring.field(rng.randint(1, p - 1) if p else rng.randint(-5, 5))
            if c:
                terms[m] = c
    return Polynomial(ring, terms)


def random_ideal(ring: PolyRing, rng: random.Random, ngens=(1, 4), degs=(1, 4)):
    out = []
    for _ in range(rng.randint(*ngens)):
        g = random_homogeneous(ring, rng.randint(*degs), rng)
        if g:
            out.append(g)
    return out or [ring.gens[0]]
