"""Polynomial rings, polynomials, free-module elements and their text syntax."""

import re
from fractions import Fraction

from .errors import ParseError, RingMismatchError
from .field import Field, QQ
from .orders import GrevLex, MonomialOrder, module_encoder, ring_encoder


class PolyRing:
    """``field[variables]`` with a monomial order and the standard grading."""

    def __init__(self, field: Field, variables, order: MonomialOrder = GrevLex()):
        variables = tuple(variables)
        if len(set(variables)) != len(variables):
            raise ValueError("variable names must be distinct")
        for v in variables:
            if not re.fullmatch(r"[A-Za-z_][A-Za-z0-9_]*", v):
                raise ValueError(f"bad variable name {v!r}")
        self.field = field
        self.variables = variables
        self.order = order
        self.nvars = len(variables)
        self.encoder = ring_encoder(order, self.nvars)
        self._index = {v: i for i, v in enumerate(variables)}
        self._zero_exps = (0,) * self.nvars

    # identity -----------------------------------------------------------
    def _ident(self):
        return (self.field, self.variables, self.order)

    def __eq__(self, other):
        return isinstance(other, PolyRing) and self._ident() == other._ident()

    def __hash__(self):
        return hash(self._ident())

    def __repr__(self):
        return f"PolyRing({self.field!r}, {list(self.variables)}, {self.order})"

    def __getstate__(self):
        return {"field": self.field, "variables": self.variables, "order": self.order}

    def __setstate__(self, state):
        self.__init__(state["field"], state["variables"], state["order"])

    @property
    def characteristic(self) -> int:
        return self.field.characteristic

    # element construction -------------------------------------------------
    def __call__(self, value) -> "Polynomial":
        if isinstance(value, Polynomial):
            if value.ring != self:
                raise RingMismatchError("polynomial belongs to another ring")
            return value
        if isinstance(value, str):
            return self.parse(value)
        c = self.field(value)
        if c == 0:
            return self.zero()
        return Polynomial(self, {self._zero_exps: c})

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return Polynomial(self, {self._zero_exps: self.field.one})

    def var(self, name: str) -> "Polynomial":
        i = self.index(name)
        exps = tuple(1 if j == i else 0 for j in range(self.nvars))
        return Polynomial(self, {exps: self.field.one})

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown variable {name!r}") from None

    @property
    def gens(self):
        return tuple(self.var(v) for v in self.variables)

    def monomial(self, exps, coeff=1) -> "Polynomial":
        exps = tuple(exps)
        if len(exps) != self.nvars:
            raise ValueError("arity mismatch")
        c = self.field(coeff)
        return Polynomial(self, {exps: c} if c else {})

    def parse(self, text: str) -> "Polynomial":
        return _PolyParser(self, text).parse()

    def vector(self, components) -> "FreeElement":
        """A free-module element from a list of ring elements."""
        comps = [self(c) for c in components]
        terms = {}
        for pos, p in enumerate(comps):
            for e, c in p._terms.items():
                terms[(pos, e)] = c
        return FreeElement(self, len(comps), terms)

    def basis_vector(self, rank: int, pos: int) -> "FreeElement":
        return FreeElement(self, rank, {(pos, self._zero_exps): self.field.one})

    def extend(self, names) -> "PolyRing":
        """Same field and order kind with extra variables appended."""
        return PolyRing(self.field, self.variables + tuple(names), self.order)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.field, self.variables, order)

    def monomial_str(self, exps) -> str:
        parts = []
        for v, e in zip(self.variables, exps):
            if e == 1:
                parts.append(v)
            elif e > 1:
                parts.append(f"{v}^{e}")
        return "*".join(parts) if parts else "1"


def _format_terms(field, items, mono_str):
    """Render ``[(monomial, coeff)]`` (already in descending order)."""
    if not items:
        return "0"
    out = []
    for i, (m, c) in enumerate(items):
        s = field.signed(c)
        neg = s < 0
        a = -s if neg else s
        ms = mono_str(m)
        if ms == "1":
            body = str(a)
        elif a == 1:
            body = ms
        else:
            body = f"{a}*{ms}"
        if i == 0:
            out.append(("-" if neg else "") + body)
        else:
            out.append((" - " if neg else " + ") + body)
    return "".join(out)


class Polynomial:
    """Immutable sparse polynomial; ``_terms`` maps exponent tuples to non-zero coefficients."""

    __slots__ = ("ring", "_terms", "_sorted")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self._terms = terms
        self._sorted = None

    # basic queries --------------------------------------------------------
    def terms(self):
        """``[(exps, coeff)]`` in descending order for the ring's monomial order."""
        if self._sorted is None:
            key = self.ring.encoder.key
            self._sorted = sorted(self._terms.items(), key=lambda t: key(t[0]), reverse=True)
        return self._sorted

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def __len__(self):
        return len(self._terms)

    def lead_exps(self):
        return self.terms()[0][0]

    def lead_coeff(self):
        return self.terms()[0][1]

    def coefficient(self, exps):
        return self._terms.get(tuple(exps), self.ring.field.zero)

    def total_degree(self) -> int:
        if not self._terms:
            return -1
        return max(sum(e) for e in self._terms)

    def is_homogeneous(self):
        """``(True, degree)`` when all terms share a degree; zero gives ``(True, None)``."""
        degs = {sum(e) for e in self._terms}
        if not degs:
            return True, None
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def is_constant(self) -> bool:
        return all(not any(e) for e in self._terms)

    def variables_used(self):
        used = set()
        for e in self._terms:
            used.update(i for i, a in enumerate(e) if a)
        return used

    # arithmetic -------------------------------------------------------------
    def _coerce(self, other):
        if isinstance(other, Polynomial):
            if other.ring != self.ring:
                raise RingMismatchError("operands live in different rings")
            return other
        if isinstance(other, (int, Fraction)):
            return self.ring(other)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add_dicts(self.ring.field, self._terms, other._terms, 1))

    __radd__ = __add__

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return Polynomial(self.ring, _add_dicts(self.ring.field, self._terms, other._terms, -1))

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __neg__(self):
        f = self.ring.field
        return Polynomial(self.ring, {e: f.neg(c) for e, c in self._terms.items()})

    def __mul__(self, other):
        if isinstance(other, FreeElement):
            return other.__rmul__(self)
        other = self._coerce(other)
        if other is NotImplemented:
            return other
        f = self.ring.field
        out = {}
        for e1, c1 in self._terms.items():
            for e2, c2 in other._terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                out[e] = out.get(e, 0) + c1 * c2
        return Polynomial(self.ring, {e: f(c) for e, c in out.items() if f(c) != 0})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative power")
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def scale(self, c):
        f = self.ring.field
        c = f(c)
        if c == 0:
            return self.ring.zero()
        return Polynomial(self.ring, {e: f.mul(a, c) for e, a in self._terms.items()})

    def monic(self):
        if not self._terms:
            return self
        return self.scale(self.ring.field.inv(self.lead_coeff()))

    def mul_monomial(self, exps):
        return Polynomial(self.ring, {tuple(a + b for a, b in zip(e, exps)): c
                                      for e, c in self._terms.items()})

    def divide_exact(self, divisor: "Polynomial") -> "Polynomial":
        """Exact quotient ``self / divisor``; raises ``ValueError`` when it does not divide."""
        divisor = self._coerce(divisor)
        if divisor.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        f = self.ring.field
        lm, lc = divisor.lead_exps(), divisor.lead_coeff()
        inv = f.inv(lc)
        rem = self
        quot = {}
        while rem:
            e, c = rem.terms()[0]
            d = tuple(a - b for a, b in zip(e, lm))
            if any(x < 0 for x in d):
                raise ValueError("polynomial does not divide exactly")
            q = f.mul(c, inv)
            quot[d] = q
            rem = rem - divisor.mul_monomial(d).scale(q)
        return Polynomial(self.ring, quot)

    def evaluate(self, point):
        f = self.ring.field
        total = f.zero
        for e, c in self._terms.items():
            t = c
            for v, a in zip(point, e):
                if a:
                    t = f.mul(t, f(v) ** a if f is QQ else pow(f(v), a, f.p))
            total = f.add(total, t)
        return total

    # comparisons / printing ----------------------------------------------------
    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = self.ring(other)
        if not isinstance(other, Polynomial):
            return NotImplemented
        return self.ring == other.ring and self._terms == other._terms

    def __hash__(self):
        return hash((self.ring, frozenset(self._terms.items())))

    def __str__(self):
        return _format_terms(self.ring.field, self.terms(), self.ring.monomial_str)

    def __repr__(self):
        return f"Polynomial({self})"

    def __reduce__(self):
        return (Polynomial, (self.ring, dict(self._terms)))


def _add_dicts(field, a, b, sign):
    out = dict(a)
    for e, c in b.items():
        v = field(out.get(e, 0) + sign * c)
        if v == 0:
            out.pop(e, None)
        else:
            out[e] = v
    return out


class FreeElement:
    """Element of a free module ``R^rank``; ``_terms`` maps ``(pos, exps)`` to coefficients."""

    __slots__ = ("ring", "rank", "_terms")

    def __init__(self, ring: PolyRing, rank: int, terms: dict):
        self.ring = ring
        self.rank = rank
        self._terms = terms

    def is_zero(self) -> bool:
        return not self._terms

    def __bool__(self):
        return bool(self._terms)

    def component(self, pos: int) -> Polynomial:
        return Polynomial(self.ring, {e: c for (p, e), c in self._terms.items() if p == pos})

    def components(self):
        comps = [dict() for _ in range(self.rank)]
        for (p, e), c in self._terms.items():
            comps[p][e] = c
        return [Polynomial(self.ring, d) for d in comps]

    def terms(self, order=None):
        """``[((pos, exps), coeff)]`` descending for ``order`` (position-over-term by default)."""
        enc = module_encoder(order or self.ring.order, self.ring.nvars, self.rank)
        return sorted(self._terms.items(), key=lambda t: enc.encode(*t[0]), reverse=True)

    def lead(self, order=None):
        return self.terms(order)[0]

    def degrees(self, shifts=None):
        shifts = shifts or (0,) * self.rank
        return {sum(e) + shifts[p] for (p, e) in self._terms}

    def is_homogeneous(self, shifts=None):
        degs = self.degrees(shifts)
        if not degs:
            return True, None
        if len(degs) == 1:
            return True, degs.pop()
        return False, None

    def _check(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        if other.ring != self.ring or other.rank != self.rank:
            raise RingMismatchError("free-module elements live in different modules")
        return other

    def __add__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeElement(self.ring, self.rank, _add_dicts(self.ring.field, self._terms, other._terms, 1))

    def __sub__(self, other):
        other = self._check(other)
        if other is NotImplemented:
            return other
        return FreeElement(self.ring, self.rank, _add_dicts(self.ring.field, self._terms, other._terms, -1))

    def __neg__(self):
        f = self.ring.field
        return FreeElement(self.ring, self.rank, {k: f.neg(c) for k, c in self._terms.items()})

    def __rmul__(self, scalar):
        if isinstance(scalar, (int, Fraction)):
            scalar = self.ring(scalar)
        if not isinstance(scalar, Polynomial):
            return NotImplemented
        if scalar.ring != self.ring:
            raise RingMismatchError("scalar from another ring")
        f = self.ring.field
        out = {}
        for e1, c1 in scalar._terms.items():
            for (p, e2), c2 in self._terms.items():
                k = (p, tuple(a + b for a, b in zip(e1, e2)))
                out[k] = out.get(k, 0) + c1 * c2
        return FreeElement(self.ring, self.rank, {k: f(c) for k, c in out.items() if f(c) != 0})

    __mul__ = __rmul__

    def __eq__(self, other):
        if not isinstance(other, FreeElement):
            return NotImplemented
        return (self.ring == other.ring and self.rank == other.rank
                and self._terms == other._terms)

    def __hash__(self):
        return hash((self.rank, frozenset(self._terms.items())))

    def __str__(self):
        return "[" + ", ".join(str(c) for c in self.components()) + "]"

    def __repr__(self):
        return f"FreeElement({self})"

    def __reduce__(self):
        return (FreeElement, (self.ring, self.rank, dict(self._terms)))


def poly_arith(a: Polynomial, b: Polynomial, op: str) -> Polynomial:
    if a.ring != b.ring:
        raise RingMismatchError("operands live in different rings")
    if op == "add":
        return a + b
    if op == "sub":
        return a - b
    if op == "mul":
        return a * b
    raise ValueError(f"unknown operation {op!r}")


def is_homogeneous(f):
    return f.is_homogeneous()


# -- parser ------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_][A-Za-z0-9_]*)|(\S))")


class _PolyParser:
    def __init__(self, ring: PolyRing, text: str):
        self.ring = ring
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                break
            if m.group(1) is not None:
                self.tokens.append(("num", int(m.group(1)), m.start(1)))
            elif m.group(2) is not None:
                self.tokens.append(("id", m.group(2), m.start(2)))
            elif m.group(3) is not None:
                self.tokens.append(("op", m.group(3), m.start(3)))
            pos = m.end()
        self.i = 0

    def error(self, msg, col=None):
        if col is None:
            col = self.tokens[self.i][2] if self.i < len(self.tokens) else len(self.text)
        raise ParseError(msg, column=col + 1)

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else None

    def take(self):
        t = self.peek()
        self.i += 1
        return t

    def parse(self) -> Polynomial:
        if not self.tokens:
            self.error("empty polynomial")
        p = self.expr()
        if self.peek() is not None:
            self.error(f"unexpected {self.peek()[1]!r}")
        return p

    def expr(self):
        sign = 1
        t = self.peek()
        if t and t[0] == "op" and t[1] in "+-":
            self.take()
            sign = -1 if t[1] == "-" else 1
        acc = self.term()
        if sign < 0:
            acc = -acc
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] in "+-":
                self.take()
                rhs = self.term()
                acc = acc + rhs if t[1] == "+" else acc - rhs
            else:
                return acc

    def term(self):
        acc = self.factor()
        while True:
            t = self.peek()
            if t and t[0] == "op" and t[1] == "*":
                self.take()
                acc = acc * self.factor()
            elif t and t[0] == "op" and t[1] == "/":
                self.take()
                d = self.factor()
                if not d.is_constant() or d.is_zero():
                    self.error("division only by non-zero constants", t[2])
                acc = acc.scale(self.ring.field.inv(d.coefficient(self.ring._zero_exps)))
            else:
                return acc

    def factor(self):
        base = self.atom()
        t = self.peek()
        if t and t[0] == "op" and t[1] == "^":
            self.take()
            e = self.take()
            if e is None or e[0] != "num":
                self.error("expected a non-negative integer exponent")
            base = base ** e[1]
        return base

    def atom(self):
        t = self.take()
        if t is None:
            self.error("unexpected end of input")
        kind, val, col = t
        if kind == "num":
            return self.ring(val)
        if kind == "id":
            if val not in self.ring._index:
                self.error(f"unknown variable {val!r}", col)
            return self.ring.var(val)
        if val == "(":
            p = self.expr()
            close = self.take()
            if close is None or close[1] != ")":
                self.error("expected ')'", close[2] if close else None)
            return p
        self.i -= 1
        self.error(f"unexpected {val!r}")
