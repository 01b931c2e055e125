"""Sparse polynomials over F_p in a fixed number of variables.

Only what the rational function field needs: ring arithmetic, exact
division and a recursive (content / primitive-part) gcd.  Polynomials are
plain dicts ``{exponent tuple: int}`` with no zero coefficients.  Orders are
lexicographic on the exponent tuple, the first variable being the largest.
"""

from __future__ import annotations

Poly = dict  # {tuple[int, ...]: int}


def const(c: int, nvars: int, p: int) -> Poly:
    c %= p
    return {(0,) * nvars: c} if c else {}


def add(a: Poly, b: Poly, p: int) -> Poly:
    r = dict(a)
    for m, c in b.items():
        v = (r.get(m, 0) + c) % p
        if v:
            r[m] = v
        else:
            r.pop(m, None)
    return r


def neg(a: Poly, p: int) -> Poly:
    return {m: (-c) % p for m, c in a.items()}


def sub(a: Poly, b: Poly, p: int) -> Poly:
    return add(a, neg(b, p), p)


def scale(a: Poly, c: int, p: int) -> Poly:
    c %= p
    if not c:
        return {}
    return {m: (v * c) % p for m, v in a.items()}


def mul(a: Poly, b: Poly, p: int) -> Poly:
    r: Poly = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = tuple(x + y for x, y in zip(ma, mb))
            v = (r.get(m, 0) + ca * cb) % p
            if v:
                r[m] = v
            else:
                r.pop(m, None)
    return r


def lead(a: Poly) -> tuple:
    return max(a)


def monic(a: Poly, p: int) -> Poly:
    if not a:
        return a
    return scale(a, pow(a[lead(a)], -1, p), p)


def divexact(a: Poly, b: Poly, p: int) -> Poly:
    """Return ``a / b``; raise ``ValueError`` if ``b`` does not divide ``a``."""
    if not b:
        raise ZeroDivisionError("division by the zero polynomial")
    lb = lead(b)
    inv_lc = pow(b[lb], -1, p)
    q: Poly = {}
    r = dict(a)
    while r:
        lr = lead(r)
        shift = tuple(x - y for x, y in zip(lr, lb))
        if min(shift) < 0:
            raise ValueError("inexact polynomial division")
        c = (r[lr] * inv_lc) % p
        q[shift] = c
        r = sub(r, mul({shift: c}, b, p), p)
    return q


# -- gcd ---------------------------------------------------------------------


def _univariate_gcd(a: Poly, b: Poly, p: int) -> Poly:
    def dense(f):
        n = max(m[0] for m in f)
        out = [0] * (n + 1)
        for m, c in f.items():
            out[m[0]] = c
        return out

    def trim(f):
        while f and f[-1] == 0:
            f.pop()
        return f

    u, v = dense(a), dense(b)
    while v:
        inv = pow(v[-1], -1, p)
        while len(u) >= len(v):
            c = (u[-1] * inv) % p
            off = len(u) - len(v)
            for i, vi in enumerate(v):
                u[off + i] = (u[off + i] - c * vi) % p
            trim(u)
            if not u:
                break
        u, v = v, u
    inv = pow(u[-1], -1, p)
    return {(i,): (c * inv) % p for i, c in enumerate(u) if c}


def _to_univ(a: Poly) -> dict:
    out: dict = {}
    for m, c in a.items():
        out.setdefault(m[0], {})[m[1:]] = c
    return out


def _from_univ(u: dict) -> Poly:
    return {(d,) + m: c for d, coef in u.items() for m, c in coef.items()}


def _content(u: dict, p: int, nvars: int) -> Poly:
    g: Poly = {}
    for coef in u.values():
        g = gcd(g, coef, p, nvars)
        if len(g) == 1 and not any(next(iter(g))):
            break
    return g


def _primitive(u: dict, p: int, nvars: int) -> dict:
    c = _content(u, p, nvars)
    return {d: divexact(coef, c, p) for d, coef in u.items()}


def _prem(a: dict, b: dict, p: int) -> dict:
    db = max(b)
    lcb = b[db]
    r = dict(a)
    while r and max(r) >= db:
        dr = max(r)
        lr = r[dr]
        new: dict = {}
        for d, coef in r.items():
            new[d] = mul(coef, lcb, p)
        for d, coef in b.items():
            k = d + dr - db
            new[k] = sub(new.get(k, {}), mul(coef, lr, p), p)
        r = {d: c for d, c in new.items() if c}
    return r


def gcd(a: Poly, b: Poly, p: int, nvars: int) -> Poly:
    """Monic gcd (lex leading coefficient 1) of two polynomials over F_p."""
    if not a:
        return monic(b, p)
    if not b:
        return monic(a, p)
    if nvars == 0:
        return {(): 1}
    if nvars == 1:
        return _univariate_gcd(a, b, p)
    ua, ub = _to_univ(a), _to_univ(b)
    ca, cb = _content(ua, p, nvars - 1), _content(ub, p, nvars - 1)
    cont = gcd(ca, cb, p, nvars - 1)
    pa = {d: divexact(c, ca, p) for d, c in ua.items()}
    pb = {d: divexact(c, cb, p) for d, c in ub.items()}
    if max(pa) < max(pb):
        pa, pb = pb, pa
    while pb:
        r = _prem(pa, pb, p)
        pa, pb = pb, (_primitive(r, p, nvars - 1) if r else {})
    g = _from_univ(_primitive(pa, p, nvars - 1))
    g = mul(g, {(0,) + m: c for m, c in cont.items()}, p)
    return monic(g, p)


def canonical(a: Poly) -> tuple:
    return tuple(sorted(a.items()))


def fmt(a: Poly, names: tuple[str, ...]) -> str:
    if not a:
        return "0"
    parts = []
    for m in sorted(a, reverse=True):
        c = a[m]
        mono = "*".join(
            n if e == 1 else f"{n}^{e}" for n, e in zip(names, m) if e
        )
        if not mono:
            parts.append(str(c))
        elif c == 1:
            parts.append(mono)
        else:
            parts.append(f"{c}*{mono}")
    return "+".join(parts)
