"""Monomial orders and their integer encodings.

Every order used by the engine is turned into an *encoder*: an injective map
from (position, exponent vector) to a non-negative ``int`` that is

* order preserving (integer comparison is the monomial order),
* additive in the exponents (multiplying by a monomial ``t`` adds
  ``encoder.shift(t)`` to the key).

Keys are built from base-``2**BITS`` digits, each digit a non-negative linear
form in the exponents (exponents themselves, or partial sums for the
reverse-lexicographic tie breaks), so decoding is plain digit extraction.
"""

from dataclasses import dataclass
from functools import lru_cache

BITS = 16
RADIX = 1 << BITS
MASK = RADIX - 1
# guard-bit packing for divisibility tests; exponents must stay below 2**15
_GUARD_BIT = 1 << (BITS - 1)


class MonomialOrder:
    """Marker base class for order descriptors."""

    is_module_order = False


@dataclass(frozen=True)
class Lex(MonomialOrder):
    def __str__(self):
        return "lex"


@dataclass(frozen=True)
class GrevLex(MonomialOrder):
    def __str__(self):
        return "grevlex"


@dataclass(frozen=True)
class BlockElimination(MonomialOrder):
    """Grevlex on the first ``k`` variables, ties broken by grevlex on the rest.

    Any monomial involving the first block beats every monomial that does not,
    which is what elimination needs.
    """

    k: int

    def __str__(self):
        return f"elim({self.k})"


@dataclass(frozen=True)
class PositionOverTerm(MonomialOrder):
    """Compare basis positions first (``e_0 > e_1 > ...``), then monomials."""

    base: MonomialOrder = GrevLex()
    is_module_order = True

    def __str__(self):
        return f"pot({self.base})"


@dataclass(frozen=True)
class TermOverPosition(MonomialOrder):
    base: MonomialOrder = GrevLex()
    is_module_order = True

    def __str__(self):
        return f"top({self.base})"


@dataclass(frozen=True)
class Schreyer(MonomialOrder):
    """Order on a free module induced by the leading terms of a map into another.

    ``m*e_i`` is compared through the key of ``m * LM(g_i)`` in ``target``
    (an encoder of the target free module); ties go to the smaller index.
    """

    target: object
    lead_keys: tuple
    is_module_order = True

    def __str__(self):
        return "schreyer"


def parse_order(name: str) -> MonomialOrder:
    name = name.strip().lower()
    if name == "lex":
        return Lex()
    if name in ("grevlex", "degrevlex", "dp"):
        return GrevLex()
    if name.startswith("elim(") and name.endswith(")"):
        return BlockElimination(int(name[5:-1]))
    raise ValueError(f"unknown monomial order {name!r}")


# -- ring-level encoders ---------------------------------------------------

def _grevlex_coeffs(n):
    # key = sum_{j=1..n} s_j * RADIX**(j-1) with s_j = e_1 + ... + e_j
    return tuple(sum(RADIX ** (j - 1) for j in range(i + 1, n + 1)) for i in range(n))


def _grevlex_decode(key, n):
    out = []
    prev = 0
    for j in range(n):
        s = (key >> (BITS * j)) & MASK
        out.append(s - prev)
        prev = s
    return tuple(out)


def _lex_coeffs(n):
    return tuple(RADIX ** (n - 1 - i) for i in range(n))


def _lex_decode(key, n):
    return tuple((key >> (BITS * (n - 1 - i))) & MASK for i in range(n))


class RingEncoder:
    """Encoder for monomials of a polynomial ring with ``nvars`` variables."""

    def __init__(self, order: MonomialOrder, nvars: int):
        self.order = order
        self.nvars = nvars
        if isinstance(order, GrevLex):
            self.coeffs = _grevlex_coeffs(nvars)
            self._decode = lambda key: _grevlex_decode(key, nvars)
        elif isinstance(order, Lex):
            self.coeffs = _lex_coeffs(nvars)
            self._decode = lambda key: _lex_decode(key, nvars)
        elif isinstance(order, BlockElimination):
            k = order.k
            if not 0 <= k <= nvars:
                raise ValueError("elimination block larger than the variable count")
            low = nvars - k
            hi_c = _grevlex_coeffs(k)
            lo_c = _grevlex_coeffs(low)
            scale = RADIX ** low
            self.coeffs = tuple(c * scale for c in hi_c) + lo_c

            def dec(key):
                return _grevlex_decode(key // scale, k) + _grevlex_decode(key % scale, low)

            self._decode = dec
        else:
            raise TypeError(f"{order!r} is not a ring order")
        self.width = RADIX ** nvars  # every key is < width

    def key(self, exps) -> int:
        for e in exps:
            if e >= _GUARD_BIT:
                raise OverflowError("exponent too large for the monomial encoding")
        return sum(c * e for c, e in zip(self.coeffs, exps))

    def decode(self, key: int) -> tuple:
        return self._decode(key)


@lru_cache(maxsize=None)
def ring_encoder(order: MonomialOrder, nvars: int) -> RingEncoder:
    return RingEncoder(order, nvars)


def pack(exps) -> int:
    """Guard-bit packing used for fast divisibility tests."""
    p = 0
    for i, e in enumerate(exps):
        p |= e << (BITS * i)
    return p


@lru_cache(maxsize=None)
def guard_mask(nvars: int) -> int:
    return sum(_GUARD_BIT << (BITS * i) for i in range(nvars))


def divides_packed(small: int, big: int, guard: int) -> bool:
    return ((big | guard) - small) & guard == guard


# -- module encoders -------------------------------------------------------

class ModuleEncoder:
    """Encoder for terms ``m * e_pos`` of a free module of rank ``rank``.

    ``shift(exps)`` is the additive key offset for multiplying by ``x^exps``.
    Decoded terms are cached; the cache is per encoder and only ever grows.
    """

    def __init__(self, order: MonomialOrder, nvars: int, rank: int):
        self.order = order
        self.nvars = nvars
        self.rank = rank
        if isinstance(order, Schreyer):
            target = order.target
            if len(order.lead_keys) != rank:
                raise ValueError("Schreyer order needs one lead key per basis vector")
            self.ring = target.ring
            self.mult = target.mult * rank
        elif isinstance(order, (PositionOverTerm, TermOverPosition)):
            self.ring = ring_encoder(order.base, nvars)
            self.mult = rank if isinstance(order, TermOverPosition) else 1
        else:
            # a plain ring order acts on modules position-over-term
            self.ring = ring_encoder(order, nvars)
            self.mult = 1
            order = PositionOverTerm(order)
            self.order = order
        self.kind = type(self.order)
        self._cache = {}
        self.guard = guard_mask(nvars)

    def shift(self, exps) -> int:
        return self.ring.key(exps) * self.mult

    def encode(self, pos: int, exps) -> int:
        if not 0 <= pos < self.rank:
            raise IndexError(f"position {pos} outside a rank-{self.rank} module")
        kind = self.kind
        if kind is PositionOverTerm:
            return (self.rank - 1 - pos) * self.ring.width + self.ring.key(exps)
        if kind is TermOverPosition:
            return self.ring.key(exps) * self.rank + (self.rank - 1 - pos)
        target = self.order.target
        return ((target.shift(exps) + self.order.lead_keys[pos]) * self.rank
                + (self.rank - 1 - pos))

    def _decode(self, key: int):
        kind = self.kind
        if kind is PositionOverTerm:
            width = self.ring.width
            return self.rank - 1 - key // width, self.ring.decode(key % width)
        if kind is TermOverPosition:
            pos = self.rank - 1 - key % self.rank
            return pos, self.ring.decode(key // self.rank)
        pos = self.rank - 1 - key % self.rank
        tkey = key // self.rank - self.order.lead_keys[pos]
        return pos, self.ring.decode(tkey // self.order.target.mult)

    def info(self, key: int):
        """``(pos, exps, packed_exps)`` for ``key``, memoised."""
        got = self._cache.get(key)
        if got is None:
            pos, exps = self._decode(key)
            got = (pos, exps, pack(exps))
            self._cache[key] = got
        return got

    def decode(self, key: int):
        pos, exps, _ = self.info(key)
        return pos, exps

    def cmp(self, a, b) -> int:
        ka, kb = self.encode(*a), self.encode(*b)
        return (ka > kb) - (ka < kb)


def module_encoder(order: MonomialOrder, nvars: int, rank: int) -> ModuleEncoder:
    if isinstance(order, Schreyer):
        return ModuleEncoder(order, nvars, rank)
    return _cached_module_encoder(order, nvars, rank)


@lru_cache(maxsize=256)
def _cached_module_encoder(order, nvars, rank):
    return ModuleEncoder(order, nvars, rank)


def monomial_cmp(order: MonomialOrder, m1, m2, rank: int = None) -> int:
    """Compare two monomials (or ``(pos, exps)`` pairs for module orders).

    Returns -1, 0, 1 for Less, Equal, Greater.
    """
    if order.is_module_order or rank is not None:
        if len(m1[1]) != len(m2[1]):
            raise ValueError("arity mismatch")
        r = rank if rank is not None else max(m1[0], m2[0]) + 1
        enc = module_encoder(order, len(m1[1]), r)
        return enc.cmp(m1, m2)
    if len(m1) != len(m2):
        raise ValueError("arity mismatch")
    enc = ring_encoder(order, len(m1))
    a, b = enc.key(m1), enc.key(m2)
    return (a > b) - (a < b)
