"""Combinatorics of monomial ideals: Hilbert numerators, lengths, dimension.

Laurent polynomials in ``t`` are dicts ``{exponent: coefficient}``.
"""

from itertools import combinations, product


class Infinite:
    """Sentinel for infinite lengths / infinitely many standard monomials."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "Infinite"

    __str__ = lambda self: "infinite"

    def __eq__(self, other):
        return isinstance(other, Infinite)

    def __hash__(self):
        return hash("Infinite")

    def __gt__(self, other):
        return not isinstance(other, Infinite)

    def __ge__(self, other):
        return True

    def __lt__(self, other):
        return False

    def __le__(self, other):
        return isinstance(other, Infinite)

    def __reduce__(self):
        return (Infinite, ())


INFINITE = Infinite()


def _divides(a, b):
    return all(x <= y for x, y in zip(a, b))


def minimalize(gens):
    """Minimal generators of the monomial ideal spanned by ``gens`` (sorted, deduplicated)."""
    gens = sorted(set(gens), key=lambda e: (sum(e), e))
    out = []
    for g in gens:
        if not any(_divides(h, g) for h in out):
            out.append(g)
    return out


def _poly_mul(a, b):
    out = {}
    for i, x in a.items():
        for j, y in b.items():
            out[i + j] = out.get(i + j, 0) + x * y
    return {k: v for k, v in out.items() if v}


def _poly_add(a, b, scale=1, shift=0):
    out = dict(a)
    for k, v in b.items():
        k2 = k + shift
        out[k2] = out.get(k2, 0) + scale * v
        if out[k2] == 0:
            del out[k2]
    return out


def hilbert_numerator(gens, nvars):
    """Numerator ``K(t)`` with ``HS(k[x]/J) = K(t) / (1 - t)^nvars``.

    Pivot recursion ``K(J) = K(J + p) + t^deg(p) K(J : p)`` with ``p`` a pure
    power dividing a non-pure-power minimal generator.
    """
    return _hnum(tuple(minimalize(gens)), nvars)


def _hnum(gens, nvars):
    if not gens:
        return {0: 1}
    if any(sum(g) == 0 for g in gens):
        return {}
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    coprime = True
    seen = set()
    for s in supports:
        if seen & s:
            coprime = False
            break
        seen |= s
    if coprime:
        out = {0: 1}
        for g in gens:
            out = _poly_mul(out, {0: 1, sum(g): -1})
        return out
    counts = [0] * nvars
    for s in supports:
        for i in s:
            counts[i] += 1
    # a non-pure-power generator, using its most frequent variable
    best = None
    for g, s in zip(gens, supports):
        if len(s) > 1:
            i = max(s, key=lambda v: (counts[v], -v))
            if best is None or counts[i] > best[0]:
                best = (counts[i], i, g[i])
    _, i, e = best
    pivot = tuple(e if j == i else 0 for j in range(nvars))
    plus = minimalize(gens + (pivot,))
    colon = minimalize(tuple(g[:i] + (max(g[i] - e, 0),) + g[i + 1:] for g in gens))
    return _poly_add(_hnum(tuple(plus), nvars), _hnum(tuple(colon), nvars), 1, e)


def divide_one_minus_t(poly):
    """``poly / (1 - t)`` or ``None`` when the division is not exact."""
    if not poly:
        return {}
    lo, hi = min(poly), max(poly)
    q = {}
    acc = 0
    for j in range(lo, hi):
        acc += poly.get(j, 0)
        if acc:
            q[j] = acc
    if acc + poly.get(hi, 0) != 0:
        return None
    return q


def evaluate_at_one(poly):
    return sum(poly.values())


def length_from_numerator(num, nvars):
    """Total length of a module with Hilbert series ``num / (1 - t)^nvars``.

    Returns ``INFINITE`` when the series is not a polynomial.
    """
    q = num
    for _ in range(nvars):
        q = divide_one_minus_t(q)
        if q is None:
            return INFINITE
    return evaluate_at_one(q)


def dim_and_degree(num, nvars):
    """Krull dimension and degree (leading Hilbert coefficient) from a numerator.

    The zero module gets dimension -1 and degree 0.
    """
    if not num:
        return -1, 0
    q = num
    k = 0
    while k < nvars:
        nxt = divide_one_minus_t(q)
        if nxt is None:
            break
        q = nxt
        k += 1
    return nvars - k, evaluate_at_one(q)


def hilbert_function(num, nvars, upto):
    """Coefficients of the series ``num / (1 - t)^nvars`` up to degree ``upto``."""
    from math import comb
    out = {}
    for d in range(min(num, default=0), upto + 1):
        total = 0
        for j, c in num.items():
            m = d - j
            if m >= 0:
                total += c * comb(m + nvars - 1, nvars - 1) if nvars else (c if m == 0 else 0)
        out[d] = total
    return out


def monomial_dim(gens, nvars):
    """Dimension of ``k[x]/J`` as the largest variable set avoiding every generator's support."""
    gens = minimalize(gens)
    if any(sum(g) == 0 for g in gens):
        return -1
    supports = [frozenset(i for i, a in enumerate(g) if a) for g in gens]
    for size in range(nvars, -1, -1):
        for subset in combinations(range(nvars), size):
            s = frozenset(subset)
            if not any(sup <= s for sup in supports):
                return size
    return -1


def is_artinian(gens, nvars):
    """Every variable has a pure power among ``gens`` (or ``gens`` contains 1)."""
    if any(sum(g) == 0 for g in gens):
        return True
    have = set()
    for g in gens:
        s = [i for i, a in enumerate(g) if a]
        if len(s) == 1:
            have.add(s[0])
    return len(have) == nvars


def standard_monomials(gens, nvars, limit=None):
    """Monomials outside the ideal, or ``INFINITE`` when there are infinitely many."""
    if any(sum(g) == 0 for g in gens):
        return []
    if not is_artinian(gens, nvars):
        return INFINITE
    bounds = [min(g[i] for g in gens if g[i] and sum(g) == g[i]) for i in range(nvars)]
    out = []
    for e in product(*(range(b) for b in bounds)):
        if not any(_divides(g, e) for g in gens):
            out.append(e)
            if limit is not None and len(out) > limit:
                raise OverflowError("standard monomial enumeration exceeded the limit")
    out.sort(key=lambda e: (sum(e), e))
    return out
