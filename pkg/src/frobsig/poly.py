"""Sparse multivariate polynomials over a coefficient field.

Monomials are plain exponent tuples.  A :class:`PolyRing` fixes the field,
the variable names and the monomial order; :class:`Polynomial` holds a dict
``{monomial: raw coefficient}`` with no zero entries.
"""

from __future__ import annotations

import enum
import re
from dataclasses import dataclass
from typing import Iterable

from .errors import AmbientMismatch, DegreeBudgetExceeded, ParseError, UnknownVariable
from .field import FieldSpec

DEGREE_BUDGET = 2**20
_KEY_BASE = 2**22

Monomial = tuple


class Cmp(enum.IntEnum):
    LT = -1
    EQ = 0
    GT = 1


@dataclass(frozen=True)
class MonomialOrder:
    """grevlex or lex, with an optional variable precedence (highest first)."""

    kind: str = "grevlex"
    precedence: tuple | None = None

    def __post_init__(self):
        if self.kind not in ("grevlex", "lex"):
            raise ValueError(f"unknown monomial order {self.kind!r}")
        if self.precedence is not None:
            object.__setattr__(self, "precedence", tuple(self.precedence))
            if sorted(self.precedence) != list(range(len(self.precedence))):
                raise ValueError("precedence must be a permutation of variable indices")

    def key(self, m: Monomial) -> int:
        """Integer sort key: larger key means larger monomial.

        Exponents are packed in base ``_KEY_BASE``; the degree guard keeps
        every exponent below it, so the packing is order-preserving.
        """
        perm = self.precedence
        if perm is not None:
            if len(perm) != len(m):
                raise AmbientMismatch("monomial length differs from the order's ambient")
            m = tuple(m[i] for i in perm)
        k = 0
        if self.kind == "lex":
            for e in m:
                k = k * _KEY_BASE + e
            return k
        k = sum(m)
        top = _KEY_BASE - 1
        for e in reversed(m):
            k = k * _KEY_BASE + (top - e)
        return k

    def __str__(self):
        return self.kind


GREVLEX = MonomialOrder("grevlex")
LEX = MonomialOrder("lex")


def compare(m1: Monomial, m2: Monomial, order: MonomialOrder = GREVLEX) -> Cmp:
    if len(m1) != len(m2):
        raise AmbientMismatch("monomials live in different ambients")
    k1, k2 = order.key(m1), order.key(m2)
    return Cmp.GT if k1 > k2 else Cmp.LT if k1 < k2 else Cmp.EQ


def divides(a: Monomial, b: Monomial) -> bool:
    return all(x <= y for x, y in zip(a, b))


def mono_mul(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x + y for x, y in zip(a, b))


def mono_div(a: Monomial, b: Monomial) -> Monomial:
    return tuple(x - y for x, y in zip(a, b))


def mono_lcm(a: Monomial, b: Monomial) -> Monomial:
    return tuple(max(x, y) for x, y in zip(a, b))


def _check_degree(deg: int) -> None:
    if deg > DEGREE_BUDGET:
        raise DegreeBudgetExceeded(f"total degree {deg} exceeds {DEGREE_BUDGET}")


@dataclass(frozen=True)
class PolyRing:
    spec: FieldSpec
    variables: tuple
    order: MonomialOrder = GREVLEX

    def __post_init__(self):
        object.__setattr__(self, "variables", tuple(self.variables))
        if len(set(self.variables)) != len(self.variables):
            raise ValueError("variable names must be distinct")
        clash = set(self.variables) & set(self.spec.generators())
        if clash:
            raise ValueError(f"variable names clash with field generators: {sorted(clash)}")

    @property
    def nvars(self) -> int:
        return len(self.variables)

    def key(self, m: Monomial) -> int:
        return self.order.key(m)

    def with_order(self, order: MonomialOrder) -> "PolyRing":
        return PolyRing(self.spec, self.variables, order)

    def with_spec(self, spec: FieldSpec) -> "PolyRing":
        return PolyRing(spec, self.variables, self.order)

    def same_ambient(self, other: "PolyRing") -> bool:
        return self.spec == other.spec and self.variables == other.variables

    def zero(self) -> "Polynomial":
        return Polynomial(self, {})

    def one(self) -> "Polynomial":
        return self.const(self.spec.one)

    def const(self, c) -> "Polynomial":
        if isinstance(c, int):
            c = self.spec.from_int(c)
        if self.spec.is_zero(c):
            return self.zero()
        return Polynomial(self, {(0,) * self.nvars: c})

    def monomial(self, m: Monomial, c=None) -> "Polynomial":
        if c is None:
            c = self.spec.one
        return Polynomial(self, {tuple(m): c})

    def var(self, name: str) -> "Polynomial":
        if name not in self.variables:
            raise UnknownVariable(f"unknown variable {name!r}")
        i = self.variables.index(name)
        return self.monomial(tuple(1 if j == i else 0 for j in range(self.nvars)))

    def gens(self) -> list["Polynomial"]:
        return [self.var(v) for v in self.variables]

    def __call__(self, text: str) -> "Polynomial":
        return parse_polynomial(text, self)

    def fmt_monomial(self, m: Monomial) -> str:
        parts = [
            v if e == 1 else f"{v}^{e}" for v, e in zip(self.variables, m) if e
        ]
        return "*".join(parts) if parts else "1"


class Polynomial:
    """Immutable sparse polynomial; ``terms`` maps monomials to raw coefficients."""

    __slots__ = ("ring", "terms")

    def __init__(self, ring: PolyRing, terms: dict):
        self.ring = ring
        self.terms = terms

    @classmethod
    def from_terms(cls, ring: PolyRing, terms: Iterable) -> "Polynomial":
        K = ring.spec
        out: dict = {}
        for m, c in terms:
            m = tuple(m)
            if len(m) != ring.nvars:
                raise AmbientMismatch("monomial length differs from the ring")
            if isinstance(c, int):
                c = K.from_int(c)
            if m in out:
                c = K.add(out[m], c)
            if K.is_zero(c):
                out.pop(m, None)
            else:
                out[m] = c
        return cls(ring, out)

    # -- queries ---------------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __len__(self):
        return len(self.terms)

    def sorted_terms(self) -> list:
        """Terms in decreasing monomial order."""
        key = self.ring.key
        return sorted(self.terms.items(), key=lambda t: key(t[0]), reverse=True)

    def leading_monomial(self) -> Monomial:
        if not self.terms:
            raise ValueError("the zero polynomial has no leading monomial")
        return max(self.terms, key=self.ring.key)

    def leading_coefficient(self):
        return self.terms[self.leading_monomial()]

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def constant_term(self):
        return self.terms.get((0,) * self.ring.nvars, self.ring.spec.zero)

    def coefficient(self, m: Monomial):
        return self.terms.get(tuple(m), self.ring.spec.zero)

    def is_constant(self) -> bool:
        return all(not any(m) for m in self.terms)

    # -- arithmetic ------------------------------------------------------------

    def _coerce(self, other) -> "Polynomial":
        if isinstance(other, Polynomial):
            if not self.ring.same_ambient(other.ring):
                raise AmbientMismatch("polynomials live in different rings")
            return other
        return self.ring.const(self.ring.spec.coerce(other))

    def __add__(self, other):
        other = self._coerce(other)
        K = self.ring.spec
        out = dict(self.terms)
        for m, c in other.terms.items():
            if m in out:
                s = K.add(out[m], c)
                if K.is_zero(s):
                    del out[m]
                else:
                    out[m] = s
            else:
                out[m] = c
        return Polynomial(self.ring, out)

    __radd__ = __add__

    def __neg__(self):
        K = self.ring.spec
        return Polynomial(self.ring, {m: K.neg(c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        other = self._coerce(other)
        if not self.terms or not other.terms:
            return self.ring.zero()
        _check_degree(self.total_degree() + other.total_degree())
        K = self.ring.spec
        out: dict = {}
        for ma, ca in self.terms.items():
            for mb, cb in other.terms.items():
                m = tuple(x + y for x, y in zip(ma, mb))
                c = K.mul(ca, cb)
                if m in out:
                    c = K.add(out[m], c)
                    if K.is_zero(c):
                        del out[m]
                        continue
                out[m] = c
        return Polynomial(self.ring, out)

    __rmul__ = __mul__

    def scale(self, c) -> "Polynomial":
        K = self.ring.spec
        if K.is_zero(c):
            return self.ring.zero()
        return Polynomial(self.ring, {m: K.mul(v, c) for m, v in self.terms.items()})

    def __truediv__(self, other):
        other = self._coerce(other)
        if not other.is_constant() or not other.terms:
            raise ValueError("can only divide by a nonzero field constant")
        return self.scale(self.ring.spec.inv(other.constant_term()))

    def __pow__(self, n: int):
        if n < 0:
            raise ValueError("negative exponent")
        _check_degree(max(self.total_degree(), 0) * n)
        result, base = self.ring.one(), self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def monic(self) -> "Polynomial":
        if not self.terms:
            return self
        return self.scale(self.ring.spec.inv(self.leading_coefficient()))

    def frobenius_power(self, e: int) -> "Polynomial":
        return frobenius_power_poly(self, e)

    def map_coefficients(self, ring: PolyRing, fn) -> "Polynomial":
        """Move to ``ring`` (same variables), sending each coefficient through ``fn``."""
        if ring.variables != self.ring.variables:
            raise AmbientMismatch("target ring has different variables")
        return Polynomial.from_terms(ring, ((m, fn(c)) for m, c in self.terms.items()))

    def with_ring(self, ring: PolyRing) -> "Polynomial":
        """Same terms, viewed in a ring that differs only in its monomial order."""
        if not ring.same_ambient(self.ring):
            raise AmbientMismatch("target ring has a different ambient")
        return Polynomial(ring, self.terms)

    # -- comparison and display ----------------------------------------------

    def __eq__(self, other):
        if isinstance(other, Polynomial):
            return self.ring.same_ambient(other.ring) and self.terms == other.terms
        if isinstance(other, int):
            return self == self.ring.const(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.ring.variables, frozenset(self.terms.items())))

    def __str__(self):
        if not self.terms:
            return "0"
        K = self.ring.spec
        parts = []
        for m, c in self.sorted_terms():
            cs = K.fmt(c)
            mono = self.ring.fmt_monomial(m)
            if not any(m):
                parts.append(cs if re.fullmatch(r"\w+", cs) else f"({cs})")
            elif K.is_one(c):
                parts.append(mono)
            else:
                if not re.fullmatch(r"\w+", cs):
                    cs = f"({cs})"
                parts.append(f"{cs}*{mono}")
        return " + ".join(parts)

    def __repr__(self):
        return f"Polynomial({self})"


def frobenius_power_poly(f: Polynomial, e: int) -> Polynomial:
    """f^(p^e) computed termwise: exponents scale by p^e, coefficients by Frobenius."""
    if e < 0:
        raise ValueError("Frobenius level must be non-negative")
    K = f.ring.spec
    q = K.p**e
    _check_degree(max(f.total_degree(), 0) * q)
    return Polynomial(
        f.ring,
        {tuple(x * q for x in m): K.frobenius(c, e) for m, c in f.terms.items()},
    )


# -- parsing -------------------------------------------------------------------

_TOKEN = re.compile(r"\s*(?:(\d+)|([A-Za-z_]\w*)|(\*\*|[-+*/^()]))")


def _tokenize(text: str, line: int | None):
    pos, out = 0, []
    text = text.rstrip()
    while pos < len(text):
        m = _TOKEN.match(text, pos)
        if not m or m.end() == pos:
            raise ParseError(f"unexpected character {text[pos]!r}", line, pos + 1)
        col = m.start(m.lastindex) + 1
        if m.group(1):
            out.append(("num", int(m.group(1)), col))
        elif m.group(2):
            out.append(("name", m.group(2), col))
        else:
            op = m.group(3)
            out.append(("op", "^" if op == "**" else op, col))
        pos = m.end()
    out.append(("end", None, len(text) + 1))
    return out


class _Parser:
    def __init__(self, text: str, ring: PolyRing, line: int | None):
        self.ring = ring
        self.line = line
        self.toks = _tokenize(text, line)
        self.i = 0
        self.field_gens = ring.spec.generators()

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def error(self, msg, tok, cls=ParseError):
        raise cls(msg, self.line, tok[2])

    def parse(self) -> Polynomial:
        if self.peek()[0] == "end":
            self.error("empty polynomial", self.peek())
        f = self.expr()
        if self.peek()[0] != "end":
            self.error(f"unexpected token {self.peek()[1]!r}", self.peek())
        return f

    def expr(self) -> Polynomial:
        sign = 1
        if self.peek()[:2] in (("op", "-"), ("op", "+")):
            sign = -1 if self.take()[1] == "-" else 1
        f = self.term()
        if sign < 0:
            f = -f
        while self.peek()[:2] in (("op", "+"), ("op", "-")):
            op = self.take()[1]
            g = self.term()
            f = f + g if op == "+" else f - g
        return f

    def term(self) -> Polynomial:
        f = self.factor()
        while True:
            tok = self.peek()
            if tok[:2] == ("op", "*"):
                self.take()
                f = f * self.factor()
            elif tok[:2] == ("op", "/"):
                self.take()
                g = self.factor()
                if not g or not g.is_constant():
                    self.error("division only by nonzero field constants", tok)
                f = f / g
            elif tok[0] in ("num", "name") or tok[:2] == ("op", "("):
                f = f * self.factor()  # juxtaposition, e.g. 2x
            else:
                return f

    def factor(self) -> Polynomial:
        base = self.atom()
        if self.peek()[:2] == ("op", "^"):
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.error("exponent must be a non-negative integer", tok)
            return base ** tok[1]
        return base

    def atom(self) -> Polynomial:
        tok = self.take()
        kind, val, _ = tok
        if kind == "num":
            return self.ring.const(self.ring.spec.from_int(val))
        if kind == "name":
            if val in self.ring.variables:
                return self.ring.var(val)
            if val in self.field_gens:
                return self.ring.const(self.field_gens[val])
            self.error(f"undeclared variable {val!r}", tok, UnknownVariable)
        if tok[:2] == ("op", "("):
            f = self.expr()
            close = self.take()
            if close[:2] != ("op", ")"):
                self.error("expected ')'", close)
            return f
        self.error(f"unexpected token {val!r}", tok)


def parse_polynomial(text: str, ring: PolyRing, line: int | None = None) -> Polynomial:
    """Parse ``y^2 + x^3``, ``x + t*y``, ``w*x^2`` and friends."""
    return _Parser(text, ring, line).parse()
