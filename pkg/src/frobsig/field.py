"""Coefficient fields: F_p, F_{p^m} and F_p(t_1, ..., t_s).

A field spec owns the arithmetic on *raw* values (an ``int`` residue, a
coefficient tuple, or a reduced fraction of canonical polynomial tuples).
Polynomial and linear-algebra code works on raw values for speed;
:class:`FieldElement` wraps one raw value with its spec for the public API.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from typing import Iterator

from . import _fpoly
from .errors import DivisionByZero, InvalidFieldSpec, NotAPthPower

MAX_CHARACTERISTIC = 31
MAX_EXTENSION_DEGREE = 8


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    return all(n % d for d in range(2, int(n**0.5) + 1))


def _check_characteristic(p: int) -> None:
    if not is_prime(p):
        raise InvalidFieldSpec(f"characteristic {p} is not prime")
    if p > MAX_CHARACTERISTIC:
        raise InvalidFieldSpec(
            f"characteristic {p} exceeds the guard {MAX_CHARACTERISTIC}"
        )


# -- univariate F_p[w] helpers for the extension modulus -----------------------


def _upoly_mod(a: list[int], m: list[int], p: int) -> list[int]:
    """Remainder of ``a`` modulo monic ``m`` (dense, low degree first)."""
    a = list(a)
    dm = len(m) - 1
    for i in range(len(a) - 1, dm - 1, -1):
        c = a[i] % p
        if c:
            for j in range(dm + 1):
                a[i - dm + j] = (a[i - dm + j] - c * m[j]) % p
    out = [x % p for x in a[:dm]]
    return out + [0] * (dm - len(out))


def _upoly_mulmod(a, b, m, p):
    prod = [0] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                prod[i + j] += x * y
    return _upoly_mod(prod, m, p)


def _upoly_gcd(a: list[int], b: list[int], p: int) -> list[int]:
    def trim(f):
        f = [x % p for x in f]
        while f and f[-1] == 0:
            f.pop()
        return f

    a, b = trim(a), trim(b)
    while b:
        inv = pow(b[-1], -1, p)
        while len(a) >= len(b):
            c = a[-1] * inv % p
            off = len(a) - len(b)
            for i, bi in enumerate(b):
                a[off + i] = (a[off + i] - c * bi) % p
            a = trim(a)
            if not a:
                break
        a, b = b, a
    return a


def is_irreducible(modulus: tuple[int, ...], p: int) -> bool:
    """Rabin's test for a monic polynomial given low degree first."""
    m = list(modulus)
    n = len(m) - 1
    if n < 1 or m[-1] % p != 1:
        return False
    if n == 1:
        return True
    primes = [q for q in range(2, n + 1) if n % q == 0 and is_prime(q)]

    def frob_power(k):
        # w^(p^k) mod m
        x = _upoly_mod([0, 1], m, p)
        for _ in range(k):
            r = [1] + [0] * (n - 1)
            base, e = x, p
            while e:
                if e & 1:
                    r = _upoly_mulmod(r, base, m, p)
                base = _upoly_mulmod(base, base, m, p)
                e >>= 1
            x = r
        return x

    for q in primes:
        h = frob_power(n // q)
        h = list(h)
        h[1] = (h[1] - 1) % p if len(h) > 1 else h[1]
        g = _upoly_gcd(m, h, p)
        if len(g) != 1:
            return False
    h = list(frob_power(n))
    h[1] = (h[1] - 1) % p
    return not any(x % p for x in h)


def first_irreducible(p: int, m: int) -> tuple[int, ...]:
    """The first monic irreducible polynomial of degree m, in counting order."""
    if m == 1:
        return (0, 1)
    for tail in itertools.product(range(p), repeat=m):
        cand = tuple(reversed(tail)) + (1,)
        if cand[0] and is_irreducible(cand, p):
            return cand
    raise InvalidFieldSpec(f"no irreducible polynomial of degree {m} over F_{p}")


# -- field specs ---------------------------------------------------------------


class FieldSpec:
    """Common interface; concrete kinds are the three subclasses below."""

    p: int
    kind: str

    def __call__(self, value) -> "FieldElement":
        return FieldElement(self, self.coerce(value))

    # derived operations shared by all kinds
    def sub(self, a, b):
        return self.add(a, self.neg(b))

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        result, base = self.one, a
        while n:
            if n & 1:
                result = self.mul(result, base)
            base = self.mul(base, base)
            n >>= 1
        return result

    def is_zero(self, a) -> bool:
        return a == self.zero

    def is_one(self, a) -> bool:
        return a == self.one

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def generators(self) -> dict:
        """Named field generators usable as coefficients in polynomials."""
        return {}


@dataclass(frozen=True)
class PrimeField(FieldSpec):
    p: int
    kind: str = field(default="prime", init=False)

    def __post_init__(self):
        _check_characteristic(self.p)

    zero = 0
    one = 1

    @property
    def order(self) -> int:
        return self.p

    @property
    def degree(self) -> int:
        return 1

    def coerce(self, value):
        if isinstance(value, FieldElement):
            value = value.value
        return int(value) % self.p

    def from_int(self, n: int):
        return n % self.p

    def add(self, a, b):
        return (a + b) % self.p

    def neg(self, a):
        return (-a) % self.p

    def sub(self, a, b):
        return (a - b) % self.p

    def mul(self, a, b):
        return (a * b) % self.p

    def inv(self, a):
        if a % self.p == 0:
            raise DivisionByZero("inverse of zero")
        return pow(a, -1, self.p)

    def div(self, a, b):
        return (a * self.inv(b)) % self.p

    def frobenius(self, a, e: int = 1):
        return pow(a, self.p**e, self.p)

    def pth_root(self, a):
        return a

    def elements(self) -> Iterator[int]:
        return iter(range(self.p))

    def fmt(self, a) -> str:
        return str(a)

    def to_json(self, a):
        return a

    def __str__(self):
        return f"GF({self.p})"


@dataclass(frozen=True)
class ExtensionField(FieldSpec):
    """F_p[w]/(modulus), modulus monic and given low degree first."""

    p: int
    modulus: tuple
    name: str = "w"
    kind: str = field(default="extension", init=False)

    def __post_init__(self):
        _check_characteristic(self.p)
        m = len(self.modulus) - 1
        if m < 1:
            raise InvalidFieldSpec("extension modulus must have degree >= 1")
        if m > MAX_EXTENSION_DEGREE:
            raise InvalidFieldSpec(
                f"extension degree {m} exceeds the guard {MAX_EXTENSION_DEGREE}"
            )
        object.__setattr__(self, "modulus", tuple(c % self.p for c in self.modulus))
        if not is_irreducible(self.modulus, self.p):
            raise InvalidFieldSpec(
                f"modulus {_fmt_upoly(self.modulus, self.name)} is not irreducible over F_{self.p}"
            )

    @property
    def degree(self) -> int:
        return len(self.modulus) - 1

    @property
    def order(self) -> int:
        return self.p**self.degree

    @property
    def zero(self):
        return (0,) * self.degree

    @property
    def one(self):
        return (1,) + (0,) * (self.degree - 1)

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.spec == self:
                return value.value
            value = value.value
        if isinstance(value, int):
            return self.from_int(value)
        value = tuple(int(c) % self.p for c in value)
        if len(value) != self.degree:
            raise InvalidFieldSpec("coefficient vector has the wrong length")
        return value

    def from_int(self, n: int):
        return (n % self.p,) + (0,) * (self.degree - 1)

    def gen(self):
        if self.degree == 1:
            return (_upoly_mod([0, 1], list(self.modulus), self.p)[0],)
        return (0, 1) + (0,) * (self.degree - 2)

    def generators(self) -> dict:
        return {self.name: self.gen()}

    def add(self, a, b):
        p = self.p
        return tuple((x + y) % p for x, y in zip(a, b))

    def neg(self, a):
        p = self.p
        return tuple((-x) % p for x in a)

    def sub(self, a, b):
        p = self.p
        return tuple((x - y) % p for x, y in zip(a, b))

    def mul(self, a, b):
        return tuple(_upoly_mulmod(a, b, list(self.modulus), self.p))

    def inv(self, a):
        if not any(a):
            raise DivisionByZero("inverse of zero")
        return self.pow(a, self.order - 2)

    def frobenius(self, a, e: int = 1):
        for _ in range(e):
            a = self.pow(a, self.p)
        return a

    def pth_root(self, a):
        # Frobenius has order m on F_{p^m}
        return self.frobenius(a, self.degree - 1)

    def elements(self) -> Iterator[tuple]:
        for digits in itertools.product(range(self.p), repeat=self.degree):
            yield tuple(reversed(digits))

    def fmt(self, a) -> str:
        return _fmt_upoly(a, self.name)

    def to_json(self, a):
        return self.fmt(a)

    def embed_prime(self, a: int):
        return self.from_int(a)

    def __str__(self):
        return f"GF({self.order}) mod {_fmt_upoly(self.modulus, self.name)}"


def _fmt_upoly(coeffs, name) -> str:
    parts = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if not c:
            continue
        mono = "" if i == 0 else (name if i == 1 else f"{name}^{i}")
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts) if parts else "0"


@dataclass(frozen=True)
class FunctionField(FieldSpec):
    """F_p(t_1, ..., t_s); values are reduced fractions ``(num, den)``."""

    p: int
    names: tuple
    kind: str = field(default="function", init=False)

    def __post_init__(self):
        _check_characteristic(self.p)
        object.__setattr__(self, "names", tuple(self.names))
        if not self.names:
            raise InvalidFieldSpec("a function field needs at least one transcendental")
        if len(set(self.names)) != len(self.names):
            raise InvalidFieldSpec("transcendental names must be distinct")

    order = None

    @property
    def nvars(self) -> int:
        return len(self.names)

    @property
    def zero(self):
        return ((), ((((0,) * self.nvars), 1),))

    @property
    def one(self):
        u = ((((0,) * self.nvars), 1),)
        return (u, u)

    def _make(self, num: dict, den: dict):
        p, s = self.p, self.nvars
        if not den:
            raise DivisionByZero("zero denominator")
        if not num:
            return self.zero
        g = _fpoly.gcd(num, den, p, s)
        if g != {(0,) * s: 1}:
            num = _fpoly.divexact(num, g, p)
            den = _fpoly.divexact(den, g, p)
        lc = den[_fpoly.lead(den)]
        if lc != 1:
            inv = pow(lc, -1, p)
            num = _fpoly.scale(num, inv, p)
            den = _fpoly.scale(den, inv, p)
        return (_fpoly.canonical(num), _fpoly.canonical(den))

    def fraction(self, num: dict, den: dict | None = None):
        if den is None:
            den = _fpoly.const(1, self.nvars, self.p)
        return self._make(num, den)

    def coerce(self, value):
        if isinstance(value, FieldElement):
            if value.spec == self:
                return value.value
            value = value.value
        if isinstance(value, int):
            return self.from_int(value)
        num, den = value
        return self._make(dict(num), dict(den))

    def from_int(self, n: int):
        c = _fpoly.const(n, self.nvars, self.p)
        return self._make(c, _fpoly.const(1, self.nvars, self.p))

    def gen(self, i: int = 0):
        m = tuple(1 if j == i else 0 for j in range(self.nvars))
        return self._make({m: 1}, _fpoly.const(1, self.nvars, self.p))

    def generators(self) -> dict:
        return {name: self.gen(i) for i, name in enumerate(self.names)}

    def is_zero(self, a) -> bool:
        return not a[0]

    def add(self, a, b):
        p = self.p
        an, ad, bn, bd = dict(a[0]), dict(a[1]), dict(b[0]), dict(b[1])
        if ad == bd:
            return self._make(_fpoly.add(an, bn, p), ad)
        num = _fpoly.add(_fpoly.mul(an, bd, p), _fpoly.mul(bn, ad, p), p)
        return self._make(num, _fpoly.mul(ad, bd, p))

    def neg(self, a):
        return (_fpoly.canonical(_fpoly.neg(dict(a[0]), self.p)), a[1])

    def mul(self, a, b):
        if not a[0] or not b[0]:
            return self.zero
        p = self.p
        num = _fpoly.mul(dict(a[0]), dict(b[0]), p)
        den = _fpoly.mul(dict(a[1]), dict(b[1]), p)
        return self._make(num, den)

    def inv(self, a):
        if not a[0]:
            raise DivisionByZero("inverse of zero")
        return self._make(dict(a[1]), dict(a[0]))

    def frobenius(self, a, e: int = 1):
        q = self.p**e

        def scaled(poly):
            return tuple((tuple(x * q for x in m), c) for m, c in poly)

        return (scaled(a[0]), scaled(a[1]))

    def pth_root(self, a):
        p = self.p
        for part in a:
            for m, _ in part:
                if any(x % p for x in m):
                    raise NotAPthPower(f"{self.fmt(a)} has no p-th root in {self}")
        return tuple(
            tuple((tuple(x // p for x in m), c) for m, c in part) for part in a
        )

    def substitute_powers(self, a, powers: dict[int, int]):
        """Image of ``a`` under t_i -> t_i^k for ``{i: k}`` (a field embedding)."""

        def scaled(poly):
            return {
                tuple(x * powers.get(i, 1) for i, x in enumerate(m)): c
                for m, c in poly
            }

        return self._make(scaled(a[0]), scaled(a[1]))

    def fmt(self, a) -> str:
        num = _fpoly.fmt(dict(a[0]), self.names)
        den = dict(a[1])
        if den == _fpoly.const(1, self.nvars, self.p):
            return num
        if len(a[0]) > 1:
            num = f"({num})"
        return f"{num}/({_fpoly.fmt(den, self.names)})"

    def to_json(self, a):
        return self.fmt(a)

    def __str__(self):
        return f"GF({self.p})({','.join(self.names)})"


# -- elements ------------------------------------------------------------------


@dataclass(frozen=True)
class FieldElement:
    spec: FieldSpec
    value: object

    def _other(self, other):
        if isinstance(other, FieldElement):
            if other.spec != self.spec:
                raise InvalidFieldSpec("elements of different fields")
            return other.value
        return self.spec.coerce(other)

    def __add__(self, other):
        return FieldElement(self.spec, self.spec.add(self.value, self._other(other)))

    __radd__ = __add__

    def __sub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self.value, self._other(other)))

    def __rsub__(self, other):
        return FieldElement(self.spec, self.spec.sub(self._other(other), self.value))

    def __mul__(self, other):
        return FieldElement(self.spec, self.spec.mul(self.value, self._other(other)))

    __rmul__ = __mul__

    def __truediv__(self, other):
        return FieldElement(self.spec, self.spec.div(self.value, self._other(other)))

    def __neg__(self):
        return FieldElement(self.spec, self.spec.neg(self.value))

    def __pow__(self, n: int):
        return FieldElement(self.spec, self.spec.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, FieldElement):
            return self.spec == other.spec and self.value == other.value
        if isinstance(other, int):
            return self.value == self.spec.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.spec, self.value))

    def __bool__(self):
        return not self.spec.is_zero(self.value)

    def __str__(self):
        return self.spec.fmt(self.value)

    def __repr__(self):
        return f"FieldElement({self.spec}, {self.spec.fmt(self.value)})"

    def inv(self) -> "FieldElement":
        return inv(self)

    def frobenius(self, e: int = 1) -> "FieldElement":
        return frobenius(self, e)

    def pth_root(self) -> "FieldElement":
        return pth_root(self)


def inv(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.inv(a.value))


def frobenius(a: FieldElement, e: int = 1) -> FieldElement:
    """a^(p^e)."""
    if e < 0:
        raise ValueError("Frobenius level must be non-negative")
    return FieldElement(a.spec, a.spec.frobenius(a.value, e))


def pth_root(a: FieldElement) -> FieldElement:
    return FieldElement(a.spec, a.spec.pth_root(a.value))


# -- parsing -------------------------------------------------------------------

_GF_RE = re.compile(
    r"^\s*GF\(\s*(\d+)\s*\)\s*(?:\(\s*([A-Za-z_][\w\s,]*)\)\s*)?(?:mod\s+(.+?))?\s*$"
)


def _prime_power(q: int) -> tuple[int, int]:
    if q >= 2:
        p = next(d for d in range(2, q + 1) if q % d == 0)
        r, m = q, 0
        while r % p == 0:
            r //= p
            m += 1
        if r == 1:
            return p, m
    raise InvalidFieldSpec(f"{q} is not a prime power")


def _parse_upoly(text: str, p: int) -> tuple[tuple[int, ...], str]:
    """Parse a univariate polynomial like ``w^2+w+1``; return (coeffs, name)."""
    text = text.replace(" ", "")
    if not text:
        raise InvalidFieldSpec("empty modulus")
    names = set(re.findall(r"[A-Za-z_]\w*", text))
    if len(names) != 1:
        raise InvalidFieldSpec(f"modulus must use exactly one generator name: {text!r}")
    name = names.pop()
    coeffs: dict[int, int] = {}
    for sign, term in re.findall(r"([+-]?)([^+-]+)", text):
        m = re.fullmatch(rf"(?:(\d+)\*?)?(?:({re.escape(name)})(?:\^(\d+))?)?", term)
        if not m or term == "":
            raise InvalidFieldSpec(f"cannot parse modulus term {term!r}")
        c = int(m.group(1)) if m.group(1) else 1
        if not m.group(2):
            deg = 0
            if not m.group(1):
                raise InvalidFieldSpec(f"cannot parse modulus term {term!r}")
        else:
            deg = int(m.group(3)) if m.group(3) else 1
        if sign == "-":
            c = -c
        coeffs[deg] = (coeffs.get(deg, 0) + c) % p
    top = max(d for d, c in coeffs.items() if c)
    return tuple(coeffs.get(i, 0) for i in range(top + 1)), name


def parse_field(text: str) -> FieldSpec:
    """Parse ``GF(2)``, ``GF(4) mod w^2+w+1``, ``GF(9)`` or ``GF(2)(t,s)``."""
    m = _GF_RE.match(text)
    if not m:
        raise InvalidFieldSpec(f"cannot parse field spec {text!r}")
    q = int(m.group(1))
    p, deg = _prime_power(q)
    if m.group(2):
        if deg != 1:
            raise InvalidFieldSpec("function fields are built over prime fields only")
        if m.group(3):
            raise InvalidFieldSpec("a function field takes no modulus")
        names = tuple(n.strip() for n in m.group(2).split(","))
        if not all(re.fullmatch(r"[A-Za-z_]\w*", n) for n in names):
            raise InvalidFieldSpec(f"bad transcendental names in {text!r}")
        return FunctionField(p, names)
    if m.group(3):
        modulus, name = _parse_upoly(m.group(3), p)
        if len(modulus) - 1 != deg:
            raise InvalidFieldSpec(
                f"modulus degree {len(modulus) - 1} does not match GF({q})"
            )
        if modulus[-1] != 1:
            raise InvalidFieldSpec("modulus must be monic")
        return ExtensionField(p, modulus, name)
    if deg == 1:
        return PrimeField(p)
    if deg > MAX_EXTENSION_DEGREE:
        raise InvalidFieldSpec(f"extension degree {deg} exceeds the guard")
    return ExtensionField(p, first_irreducible(p, deg))
