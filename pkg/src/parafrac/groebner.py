"""Groebner bases for submodules of free modules over a polynomial ring.

Internally a vector is a ``dict`` mapping encoded terms (see ``orders``) to
coefficients.  The leading term is ``max(vec)``; multiplying by a monomial is
an integer shift of every key.  Everything below the public classes works on
that representation.
"""

from functools import cached_property

from . import hilbert
from .errors import RingMismatchError
from .hilbert import INFINITE
from .orders import (MonomialOrder, PositionOverTerm, Schreyer, divides_packed,
                     module_encoder, pack)
from .poly import FreeElement, Polynomial, PolyRing


# -- low-level kernel ---------------------------------------------------------

class _Kernel:
    """Coefficient arithmetic specialised once per field."""

    def __init__(self, field):
        self.field = field
        self.p = field.characteristic

    def inv(self, c):
        return pow(c, -1, self.p) if self.p else 1 / c

    def scale(self, vec, c):
        p = self.p
        if p:
            return {k: v * c % p for k, v in vec.items()}
        return {k: v * c for k, v in vec.items()}

    def axpy(self, dst, src, c, shift):
        """``dst -= c * x^shift * src`` in place."""
        p = self.p
        get = dst.get
        if p:
            nc = p - c
            for k, v in src.items():
                k += shift
                w = (get(k, 0) + nc * v) % p
                if w:
                    dst[k] = w
                else:
                    dst.pop(k, None)
        else:
            for k, v in src.items():
                k += shift
                w = get(k, 0) - c * v
                if w:
                    dst[k] = w
                else:
                    dst.pop(k, None)


class _Basis:
    """Reducer set: monic vectors indexed by the position of their leading term."""

    def __init__(self, enc):
        self.enc = enc
        self.vecs = []
        self.exps = []
        self.reps = []
        self.by_pos = {}

    def add(self, vec, rep=None):
        pos, exps, packed = self.enc.info(max(vec))
        idx = len(self.vecs)
        self.vecs.append(vec)
        self.exps.append(exps)
        self.reps.append(rep)
        self.by_pos.setdefault(pos, []).append((packed, idx))
        return idx

    def find(self, pos, packed):
        lst = self.by_pos.get(pos)
        if lst:
            guard = self.enc.guard
            for small, idx in lst:
                if ((packed | guard) - small) & guard == guard:
                    return idx
        return None


def _reduce(vec, basis, kern, full, rep=None, rep_enc=None):
    """Normal form of ``vec`` against ``basis``.

    ``full=False`` stops at the first irreducible leading term.  When ``rep``
    is given it is updated alongside with the reducers' ``reps`` (for lifting).
    Returns ``(remainder, rep)``.
    """
    enc = basis.enc
    info = enc.info
    ring_key = enc.ring.key
    mult = enc.mult
    vecs, gexps, reps = basis.vecs, basis.exps, basis.reps
    vec = dict(vec)
    rem = {}
    rep_shift = rep_enc.shift if rep_enc is not None else None
    while vec:
        k = max(vec)
        pos, exps, packed = info(k)
        idx = basis.find(pos, packed)
        if idx is None:
            if not full:
                vec.update(rem)
                return vec, rep
            rem[k] = vec.pop(k)
            continue
        t = tuple(a - b for a, b in zip(exps, gexps[idx]))
        c = vec[k]
        kern.axpy(vec, vecs[idx], c, ring_key(t) * mult)
        if rep is not None:
            kern.axpy(rep, reps[idx], c, rep_shift(t))
    return rem, rep


def _degree(vec, enc, shifts):
    best = None
    for k in vec:
        pos, exps, _ = enc.info(k)
        d = sum(exps) + shifts[pos]
        if best is None or d > best:
            best = d
    return best


def _monic(vec, kern, rep=None):
    c = vec[max(vec)]
    if c == 1:
        return vec, rep
    inv = kern.inv(c)
    return kern.scale(vec, inv), (kern.scale(rep, inv) if rep is not None else None)


def _buchberger(inputs, enc, kern, shifts, reps=None, rep_enc=None, initial=None):
    """Reduced Groebner basis of ``inputs`` (list of vector dicts).

    Normal selection strategy (smallest lcm degree first), Gebauer-Moeller
    pair update; the coprime criterion is used only for ideals (rank 1),
    where it is valid.  ``initial`` is an already reduced basis (list of
    ``(vec, rep)``) extended by the inputs.  Returns a list of ``(vec, rep)``
    sorted by ascending leading term.
    """
    track = reps is not None
    rank1 = enc.rank == 1
    guard = enc.guard
    store = []       # (vec, rep, pos, exps, packed, lead_key)
    active = []      # indices into store, in insertion order
    pairs = []       # (degree, lcm_key, i, j, lcm_packed, pos)
    basis = _Basis(enc)
    basis_slot = {}  # store index -> basis index

    def lcm(a, b):
        return tuple(x if x > y else y for x, y in zip(a, b))

    def push(vec, rep):
        k = max(vec)
        pos, exps, packed = enc.info(k)
        idx = len(store)
        store.append((vec, rep, pos, exps, packed, k))
        return idx

    def rebuild_basis():
        nonlocal basis
        basis = _Basis(enc)
        basis_slot.clear()
        for i in active:
            basis_slot[i] = basis.add(store[i][0], store[i][1])

    def update(h):
        _, _, hpos, hexps, hpacked, _ = store[h]
        cands = []
        for g in active:
            if store[g][2] != hpos:
                continue
            gexps = store[g][3]
            l = lcm(gexps, hexps)
            coprime = rank1 and all(not (a and b) for a, b in zip(gexps, hexps))
            cands.append((g, l, coprime))
        # Gebauer-Moeller: drop (g, h) when another new pair's lcm divides its lcm
        kept = []
        for n, (g, l, coprime) in enumerate(cands):
            if coprime:
                kept.append((g, l, coprime))
                continue
            lp = pack(l)
            dominated = False
            for g2, l2, _ in cands[n + 1:]:
                if divides_packed(pack(l2), lp, guard):
                    dominated = True
                    break
            if not dominated:
                for g2, l2, _ in kept:
                    if divides_packed(pack(l2), lp, guard):
                        dominated = True
                        break
            if not dominated:
                kept.append((g, l, coprime))
        # old pairs whose lcm is a proper multiple in the h-direction
        survivors = []
        for pr in pairs:
            deg, lkey, i, j, lpk, ppos = pr
            if ppos == hpos and divides_packed(hpacked, lpk, guard):
                li = pack(lcm(store[i][3], hexps))
                lj = pack(lcm(store[j][3], hexps))
                if li != lpk and lj != lpk:
                    continue
            survivors.append(pr)
        pairs[:] = survivors
        for g, l, coprime in kept:
            if coprime:
                continue
            pairs.append((sum(l) + shifts[hpos], enc.encode(hpos, l), g, h, pack(l), hpos))
        # remove elements whose leading term is divisible by lm(h)
        active[:] = [g for g in active
                     if not (store[g][2] == hpos and divides_packed(hpacked, store[g][4], guard))]
        active.append(h)
        rebuild_basis()

    if initial:
        for vec, rep in initial:
            active.append(push(vec, rep))
        rebuild_basis()

    todo = []
    for n, v in enumerate(inputs):
        if v:
            todo.append((_degree(v, enc, shifts), max(v), n))
    todo.sort()
    queue = [(d, 0, k, n) for d, k, n in todo]
    qpos = 0
    while qpos < len(queue) or pairs:
        # pick the smallest of the next input and the best pair
        best_pair = min(pairs) if pairs else None
        take_input = qpos < len(queue) and (best_pair is None or queue[qpos][0] <= best_pair[0])
        if take_input:
            _, _, _, n = queue[qpos]
            qpos += 1
            vec = dict(inputs[n])
            rep = dict(reps[n]) if track else None
        else:
            pairs.remove(best_pair)
            _, lkey, i, j, _, ppos = best_pair
            vi, ri, _, ei, _, _ = store[i]
            vj, rj, _, ej, _, _ = store[j]
            l = lcm(ei, ej)
            ti = tuple(a - b for a, b in zip(l, ei))
            tj = tuple(a - b for a, b in zip(l, ej))
            si = enc.shift(ti)
            sj = enc.shift(tj)
            vec = {k + si: c for k, c in vi.items()}
            kern.axpy(vec, vj, 1, sj)
            rep = None
            if track:
                rsi, rsj = rep_enc.shift(ti), rep_enc.shift(tj)
                rep = {k + rsi: c for k, c in ri.items()}
                kern.axpy(rep, rj, 1, rsj)
        if not vec:
            continue
        vec, rep = _reduce(vec, basis, kern, False, rep, rep_enc)
        if not vec:
            continue
        vec, rep = _monic(vec, kern, rep)
        h = push(vec, rep)
        update(h)

    # interreduce: leading terms of the active set are already minimal
    result = []
    final = sorted(active, key=lambda i: store[i][5])
    red = _Basis(enc)
    for i in final:
        red.add(store[i][0], store[i][1])
    for n, i in enumerate(final):
        vec, rep = store[i][0], store[i][1]
        lead = max(vec)
        c = vec[lead]
        tail = dict(vec)
        del tail[lead]
        # reduce the tail against every element (its own lead cannot divide tail terms)
        tail_rep = None
        if track:
            tail_rep = dict(rep)
        tail, tail_rep = _reduce(tail, red, kern, True, tail_rep, rep_enc) if tail else (tail, tail_rep)
        tail[lead] = c
        result.append((tail, tail_rep))
        red.vecs[n] = tail
        red.reps[n] = tail_rep
    return result


# -- conversions ----------------------------------------------------------------

def _to_vec(v: FreeElement, enc):
    return {enc.encode(p, e): c for (p, e), c in v._terms.items()}


def _from_vec(vec, enc, ring, rank):
    terms = {}
    for k, c in vec.items():
        terms[enc.decode(k)] = c
    return FreeElement(ring, rank, terms)


def _as_free(x, ring=None, rank=None):
    if isinstance(x, FreeElement):
        return x
    if isinstance(x, Polynomial):
        return x.ring.vector([x])
    raise TypeError(f"expected a polynomial or free-module element, got {type(x).__name__}")


def _default_order(ring):
    return PositionOverTerm(ring.order)


# -- public types -----------------------------------------------------------------

class GroebnerBasis:
    """Reduced Groebner basis of a submodule of ``ring^rank``.

    ``elements`` are monic and sorted by ascending leading term.
    """

    def __init__(self, ring: PolyRing, rank: int, order: MonomialOrder, vecs, shifts=None,
                 reps=None):
        self.ring = ring
        self.rank = rank
        self.order = order
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        self.enc = module_encoder(order, ring.nvars, rank)
        self._vecs = [v for v in vecs]
        self._reps = reps
        self.reduced = True
        self._kern = _Kernel(ring.field)
        self._basis = _Basis(self.enc)
        for v in self._vecs:
            self._basis.add(v)

    @cached_property
    def elements(self):
        return tuple(_from_vec(v, self.enc, self.ring, self.rank) for v in self._vecs)

    def polynomials(self):
        """The elements as polynomials (rank-1 bases only)."""
        if self.rank != 1:
            raise ValueError("not an ideal basis")
        return [e.component(0) for e in self.elements]

    def __len__(self):
        return len(self._vecs)

    def __iter__(self):
        return iter(self.elements)

    def __repr__(self):
        return f"GroebnerBasis({[str(e) if self.rank > 1 else str(e.component(0)) for e in self.elements]})"

    def leading_terms(self):
        """``[(pos, exps)]`` of the elements."""
        return [self.enc.decode(max(v)) for v in self._vecs]

    def leads_by_position(self):
        out = {p: [] for p in range(self.rank)}
        for pos, exps in self.leading_terms():
            out[pos].append(exps)
        return out

    def _vec(self, v):
        v = _as_free(v)
        if v.ring != self.ring or v.rank != self.rank:
            raise RingMismatchError("element does not live in this free module")
        return _to_vec(v, self.enc)

    def normal_form(self, v):
        vec, _ = _reduce(self._vec(v), self._basis, self._kern, True)
        out = _from_vec(vec, self.enc, self.ring, self.rank)
        if isinstance(v, Polynomial):
            return out.component(0)
        return out

    def reduces_to_zero(self, v) -> bool:
        vec, _ = _reduce(self._vec(v), self._basis, self._kern, False)
        return not vec

    def contains(self, v) -> bool:
        return self.reduces_to_zero(v)

    def extend(self, gens, shifts=None) -> "GroebnerBasis":
        """Basis of the submodule generated by this basis and ``gens``."""
        vecs = [self._vec(g) for g in gens]
        vecs = [v for v in vecs if v]
        if not vecs:
            return self
        out = _buchberger(vecs, self.enc, self._kern, self.shifts,
                          initial=[(v, None) for v in self._vecs])
        return GroebnerBasis(self.ring, self.rank, self.order, [v for v, _ in out], self.shifts)

    # quotient combinatorics --------------------------------------------------
    def std_monomials(self, limit=None):
        """Standard ``(pos, exps)`` pairs, or ``INFINITE``."""
        out = []
        for pos, leads in self.leads_by_position().items():
            mons = hilbert.standard_monomials(leads, self.ring.nvars, limit)
            if mons is INFINITE:
                return INFINITE
            out.extend((pos, m) for m in mons)
        return out

    def is_finite_length(self) -> bool:
        return all(hilbert.is_artinian(leads, self.ring.nvars)
                   for leads in self.leads_by_position().values())

    def hilbert_numerator(self, shifts=None):
        shifts = self.shifts if shifts is None else shifts
        total = {}
        n = self.ring.nvars
        for pos, leads in self.leads_by_position().items():
            num = hilbert.hilbert_numerator(leads, n)
            total = hilbert._poly_add(total, num, 1, shifts[pos])
        return total

    def quotient_length(self):
        """Length of ``F / span(basis)``; ``INFINITE`` when not Artinian."""
        if not self.is_finite_length():
            return INFINITE
        return hilbert.length_from_numerator(self.hilbert_numerator(), self.ring.nvars)

    def quotient_dim(self) -> int:
        n = self.ring.nvars
        return max((hilbert.monomial_dim(leads, n)
                    for leads in self.leads_by_position().values()), default=-1)

    def same_as(self, other: "GroebnerBasis") -> bool:
        return (self.ring == other.ring and self.rank == other.rank
                and self.enc is other.enc and self._vecs == other._vecs)


def buchberger(gens, order: MonomialOrder = None, ring: PolyRing = None, rank: int = None,
               shifts=None) -> GroebnerBasis:
    """Reduced Groebner basis of the submodule generated by ``gens``.

    ``gens`` may be polynomials (an ideal) or free-module elements.  For an
    empty list ``ring`` and ``rank`` must be supplied.
    """
    gens = [_as_free(g) for g in gens]
    if gens:
        ring = gens[0].ring
        rank = gens[0].rank
        for g in gens:
            if g.ring != ring or g.rank != rank:
                raise RingMismatchError("generators live in different free modules")
    if ring is None or rank is None:
        raise ValueError("empty generator list needs ring and rank")
    if order is None:
        order = _default_order(ring)
    enc = module_encoder(order, ring.nvars, rank)
    shifts = tuple(shifts) if shifts is not None else (0,) * rank
    kern = _Kernel(ring.field)
    vecs = [_to_vec(g, enc) for g in gens]
    out = _buchberger([v for v in vecs if v], enc, kern, shifts)
    return GroebnerBasis(ring, rank, order, [v for v, _ in out], shifts)


def normal_form(v, gb: GroebnerBasis):
    return gb.normal_form(v)


class Submodule:
    """Finitely generated submodule of ``ring^rank`` (an ideal when ``rank == 1``).

    ``shifts`` are the degrees of the ambient basis vectors.  Equality is
    mathematical equality of submodules.
    """

    def __init__(self, ring: PolyRing, rank: int, gens=(), shifts=None):
        gens = [_as_free(g) for g in gens]
        for g in gens:
            if g.ring != ring or g.rank != rank:
                raise RingMismatchError("generator outside the ambient free module")
        self.ring = ring
        self.rank = rank
        self.gens = tuple(g for g in gens if g)
        self.shifts = tuple(shifts) if shifts is not None else (0,) * rank
        if len(self.shifts) != rank:
            raise ValueError("one shift per basis vector")
        self._gbs = {}

    @classmethod
    def ideal(cls, ring: PolyRing, polys) -> "Submodule":
        return cls(ring, 1, [ring(p) for p in polys])

    @classmethod
    def whole(cls, ring, rank, shifts=None):
        return cls(ring, rank, [ring.basis_vector(rank, i) for i in range(rank)], shifts)

    def gb(self, order: MonomialOrder = None) -> GroebnerBasis:
        order = order or _default_order(self.ring)
        got = self._gbs.get(order)
        if got is None:
            got = buchberger(self.gens, order, self.ring, self.rank, self.shifts)
            self._gbs[order] = got
        return got

    def with_gb(self, gb: GroebnerBasis) -> "Submodule":
        """Attach an externally computed basis (same submodule) to the cache."""
        self._gbs[gb.order] = gb
        return self

    def _ambient(self, other):
        if not isinstance(other, Submodule):
            raise TypeError("expected a Submodule")
        if other.ring != self.ring or other.rank != self.rank:
            raise RingMismatchError("submodules of different free modules")

    def is_zero(self) -> bool:
        return not self.gens

    def contains(self, v) -> bool:
        return self.gb().reduces_to_zero(v)

    def __contains__(self, v):
        return self.contains(v)

    def __le__(self, other: "Submodule") -> bool:
        self._ambient(other)
        g = other.gb()
        return all(g.reduces_to_zero(x) for x in self.gens)

    def __ge__(self, other):
        return other <= self

    def __eq__(self, other):
        if not isinstance(other, Submodule):
            return NotImplemented
        return submodule_equal(self, other)

    def __hash__(self):
        return hash((self.rank, tuple(frozenset(v.items()) for v in self.gb()._vecs)))

    def __add__(self, other: "Submodule") -> "Submodule":
        self._ambient(other)
        return Submodule(self.ring, self.rank, self.gens + other.gens, self.shifts)

    def plus(self, gens) -> "Submodule":
        return Submodule(self.ring, self.rank, self.gens + tuple(_as_free(g) for g in gens),
                         self.shifts)

    def quotient_length(self):
        return self.gb().quotient_length()

    def quotient_dim(self) -> int:
        return self.gb().quotient_dim()

    def std_monomials(self, limit=None):
        return self.gb().std_monomials(limit)

    def is_homogeneous(self) -> bool:
        return all(g.is_homogeneous(self.shifts)[0] for g in self.gens)

    def generator_degrees(self):
        out = []
        for g in self.gens:
            ok, d = g.is_homogeneous(self.shifts)
            out.append(d if ok else max(g.degrees(self.shifts)))
        return out

    def __repr__(self):
        return f"Submodule(rank={self.rank}, gens={[str(g) for g in self.gens]})"


def submodule_equal(a: Submodule, b: Submodule) -> bool:
    """Mutual inclusion via normal forms against each other's basis."""
    a._ambient(b)
    return a <= b and b <= a


def std_monomials(gb: GroebnerBasis, limit=None):
    return gb.std_monomials(limit)


# -- elimination constructions ---------------------------------------------------

def _eliminate(ring, pairs, tag_rank, kept_rank, tag_shifts, kept_shifts):
    """Kept parts of the submodule of ``tag + kept`` whose tag block vanishes.

    ``pairs`` are ``(tag, kept)`` free elements (either may be ``None``).  The
    tag block occupies the leading positions, so position-over-term ordering
    eliminates it.
    """
    rank = tag_rank + kept_rank
    order = PositionOverTerm(ring.order)
    enc = module_encoder(order, ring.nvars, rank)
    vecs = []
    for tag, kept in pairs:
        vec = {}
        if tag is not None:
            for (p, e), c in tag._terms.items():
                vec[enc.encode(p, e)] = c
        if kept is not None:
            for (p, e), c in kept._terms.items():
                vec[enc.encode(tag_rank + p, e)] = c
        if vec:
            vecs.append(vec)
    shifts = tuple(tag_shifts) + tuple(kept_shifts)
    out = _buchberger(vecs, enc, _Kernel(ring.field), shifts)
    result = []
    for vec, _ in out:
        pos, _ = enc.decode(max(vec))
        if pos >= tag_rank:
            terms = {}
            for k, c in vec.items():
                p, e = enc.decode(k)
                terms[(p - tag_rank, e)] = c
            result.append(FreeElement(ring, kept_rank, terms))
    return result


def intersect(a: Submodule, b: Submodule) -> Submodule:
    a._ambient(b)
    if a.is_zero() or b.is_zero():
        return Submodule(a.ring, a.rank, [], a.shifts)
    pairs = [(g, g) for g in a.gens] + [(h, None) for h in b.gens]
    gens = _eliminate(a.ring, pairs, a.rank, a.rank, a.shifts, a.shifts)
    return Submodule(a.ring, a.rank, gens, a.shifts)


def colon(n: Submodule, f: Polynomial) -> Submodule:
    """``{v : f*v in n}``.

    The block construction pairs ``f*e_i`` (tag) with ``e_i`` (kept) so the
    division by ``f`` is built in; it returns the same module as
    ``(n intersect f*F) / f``.
    """
    f = n.ring(f)
    if f.is_zero():
        raise ValueError("colon by the zero polynomial")
    ring, r = n.ring, n.rank
    fdeg = f.total_degree()
    pairs = []
    for i in range(r):
        e = ring.basis_vector(r, i)
        pairs.append((f * e, e))
    pairs += [(g, None) for g in n.gens]
    kept_shifts = tuple(s + fdeg for s in n.shifts)
    gens = _eliminate(ring, pairs, r, r, n.shifts, kept_shifts)
    return Submodule(ring, r, gens, n.shifts)


def colon_ideal(n: Submodule, ideal) -> Submodule:
    """``{v : I*v in n}`` as the intersection of colons by generators."""
    polys = [n.ring(p) for p in ideal]
    polys = [p for p in polys if p]
    if not polys:
        return Submodule.whole(n.ring, n.rank, n.shifts)
    out = colon(n, polys[0])
    for p in polys[1:]:
        out = intersect(out, colon(n, p))
    return out


def saturation(n: Submodule, ideal, cap: int = 64) -> Submodule:
    cur = n
    for _ in range(cap):
        nxt = colon_ideal(cur, ideal)
        if nxt <= cur:
            return cur
        cur = nxt
    from .errors import StabilizationError
    raise StabilizationError("saturation did not stabilise", cap)


def annihilator_of_quotient(z: Submodule, b: Submodule) -> Submodule:
    """``Ann(Z / B)`` for submodules ``B <= Z`` of one free module (an ideal)."""
    z._ambient(b)
    ring = z.ring
    out = None
    for g in z.gens:
        ok, d = g.is_homogeneous(z.shifts)
        deg = d if ok and d is not None else 0
        pairs = [(g, ring.vector([1]))] + [(h, None) for h in b.gens]
        gens = _eliminate(ring, pairs, z.rank, 1, z.shifts, (deg,))
        ann = Submodule(ring, 1, gens)
        out = ann if out is None else intersect(out, ann)
    if out is None:
        return Submodule.whole(ring, 1)
    return out


def syzygies_by_elimination(gens, shifts=None) -> Submodule:
    """Syzygy module via the tag construction; kept as an independent check."""
    gens = [_as_free(g) for g in gens]
    ring, r = gens[0].ring, gens[0].rank
    m = len(gens)
    shifts = tuple(shifts) if shifts is not None else (0,) * r
    degs = _gen_degrees(gens, shifts)
    pairs = [(g, ring.basis_vector(m, j)) for j, g in enumerate(gens)]
    return Submodule(ring, m, _eliminate(ring, pairs, r, m, shifts, degs), degs)


def _gen_degrees(gens, shifts):
    out = []
    for g in gens:
        ok, d = g.is_homogeneous(shifts)
        out.append(d if ok and d is not None else (max(g.degrees(shifts)) if g else 0))
    return tuple(out)


# -- syzygies by lifting S-pair reductions --------------------------------------

def _lifted_pairs(vecs, enc, kern, zero_exps, one):
    """Syzygies of a Groebner basis ``vecs`` from its S-vector reductions.

    Returns ``(sig_enc, unit, sigs)``: the Schreyer encoder on ``R^len(vecs)``,
    the basis with unit-vector representations (for lifting other reductions)
    and the syzygies as dicts under that encoder.  The syzygies form a
    Groebner basis for the Schreyer order.
    """
    s = len(vecs)
    lead_keys = tuple(max(v) for v in vecs)
    sig_enc = module_encoder(Schreyer(enc, lead_keys), enc.nvars, s)
    unit = _Basis(enc)
    for n, vec in enumerate(vecs):
        unit.add(vec, {sig_enc.encode(n, zero_exps): one})
    leads = [enc.decode(k) for k in lead_keys]
    sigs = []
    for i in range(s):
        pi, ei = leads[i]
        for j in range(i + 1, s):
            pj, ej = leads[j]
            if pi != pj:
                continue
            l = tuple(max(a, b) for a, b in zip(ei, ej))
            ti = tuple(a - b for a, b in zip(l, ei))
            tj = tuple(a - b for a, b in zip(l, ej))
            vec = {k + enc.shift(ti): c for k, c in vecs[i].items()}
            kern.axpy(vec, vecs[j], 1, enc.shift(tj))
            sig = {sig_enc.encode(i, ti): one}
            kern.axpy(sig, {sig_enc.encode(j, tj): one}, 1, 0)
            rem, sig = _reduce(vec, unit, kern, False, sig, sig_enc)
            assert not rem, "S-vector of a Groebner basis must reduce to zero"
            sigs.append(sig)
    return sig_enc, unit, sigs


def syzygies(gens, shifts=None) -> Submodule:
    """First syzygy module of ``gens`` (polynomials or free elements).

    A tracked Buchberger run writes the reduced basis ``G`` as ``G = F*A``.
    Syzygies of ``G`` come from its S-vector reductions and are pulled back
    through ``A``; the relations ``e_j - A*B_j``, where ``f_j = G*B_j``, make up
    the rest.
    """
    gens = [_as_free(g) for g in gens]
    if not gens:
        raise ValueError("syzygies of an empty list")
    ring, r = gens[0].ring, gens[0].rank
    m = len(gens)
    shifts = tuple(shifts) if shifts is not None else (0,) * r
    degs = _gen_degrees(gens, shifts)
    order = _default_order(ring)
    enc = module_encoder(order, ring.nvars, r)
    rep_enc = module_encoder(order, ring.nvars, m)
    kern = _Kernel(ring.field)
    one = ring.field.one
    zero_exps = (0,) * ring.nvars

    def neg(c):
        return (-c) % kern.p if kern.p else -c

    vecs, reps, out = [], [], []
    for j, g in enumerate(gens):
        if g:
            vecs.append(_to_vec(g, enc))
            reps.append({rep_enc.encode(j, zero_exps): one})
        else:
            out.append({rep_enc.encode(j, zero_exps): one})
    if vecs:
        gb = _buchberger(vecs, enc, kern, shifts, reps, rep_enc)
        sig_enc, unit, sigs = _lifted_pairs([v for v, _ in gb], enc, kern, zero_exps, one)
        for sig in sigs:
            acc = {}
            for k, c in sig.items():
                n, t = sig_enc.decode(k)
                kern.axpy(acc, gb[n][1], neg(c), rep_enc.shift(t))
            if acc:
                out.append(acc)
        for j, g in enumerate(gens):
            if not g:
                continue
            # reduction leaves q = -B_j
            rem, q = _reduce(_to_vec(g, enc), unit, kern, False, {}, sig_enc)
            assert not rem
            acc = {rep_enc.encode(j, zero_exps): one}
            for k, c in q.items():
                n, t = sig_enc.decode(k)
                kern.axpy(acc, gb[n][1], neg(c), rep_enc.shift(t))
            if acc:
                out.append(acc)
    elems = [_from_vec(v, rep_enc, ring, m) for v in out]
    return Submodule(ring, m, _dedupe(elems), degs)


def syzygies_of_basis(gb: GroebnerBasis):
    """Syzygies among the elements of ``gb`` and the Schreyer order they are a basis for."""
    ring, s = gb.ring, len(gb)
    one = ring.field.one
    sig_enc, _, sigs = _lifted_pairs(gb._vecs, gb.enc, gb._kern, (0,) * ring.nvars, one)
    degs = _gen_degrees(gb.elements, gb.shifts)
    sub = Submodule(ring, s, [_from_vec(v, sig_enc, ring, s) for v in sigs], degs)
    return sub, sig_enc.order


def _dedupe(elems):
    seen = set()
    out = []
    for e in elems:
        if e and e not in seen:
            seen.add(e)
            out.append(e)
    return out


def minimal_generators(sub: Submodule):
    """A minimal homogeneous generating set, scanning generators by degree."""
    degs = sub.generator_degrees()
    order = sorted(range(len(sub.gens)), key=lambda i: (degs[i], i))
    kept = []
    gb = None
    for i in order:
        g = sub.gens[i]
        if gb is not None and gb.reduces_to_zero(g):
            continue
        kept.append(g)
        if gb is None:
            gb = buchberger([g], None, sub.ring, sub.rank, sub.shifts)
        else:
            gb = gb.extend([g])
    return kept
