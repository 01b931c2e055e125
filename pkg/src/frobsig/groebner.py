"""Buchberger's algorithm and the zero-dimensional toolkit built on it.

Everything here works on the raw ``{monomial: coefficient}`` dicts of
:class:`~frobsig.poly.Polynomial` for speed.  Only global (well-)orders are
used; local questions are answered by checking that an ideal is primary to
the origin, in which case the global colength is the local length there.
"""

from __future__ import annotations

import heapq
import itertools
from dataclasses import dataclass, field

from .errors import AmbientMismatch, NotZeroDimensional
from .poly import MonomialOrder, PolyRing, Polynomial, divides, mono_lcm


def _monic_terms(terms: dict, K, lm) -> dict:
    c = terms[lm]
    if K.is_one(c):
        return terms
    inv = K.inv(c)
    return {m: K.mul(v, inv) for m, v in terms.items()}


def _reduce(terms: dict, basis: list, K, key, full: bool = True) -> dict:
    """Normal form of ``terms`` by ``basis`` = [(lm, monic terms), ...].

    With ``full=False`` only the leading term is reduced (top reduction).
    """
    p = dict(terms)
    if not p or not basis:
        return p
    heap = []
    kmap = {}
    for m in p:
        k = key(m)
        kmap[k] = m
        heap.append(-k)
    heapq.heapify(heap)
    out: dict = {}
    zero = K.zero
    while heap:
        k = -heapq.heappop(heap)
        m = kmap[k]
        c = p.pop(m, None)
        if c is None:
            continue
        for lm, g in basis:
            if all(a <= b for a, b in zip(lm, m)):
                break
        else:
            out[m] = c
            if not full:
                out.update(p)
                return out
            continue
        shift = tuple(a - b for a, b in zip(m, lm))
        for mg, cg in g.items():
            if mg == lm:
                continue
            mm = tuple(a + b for a, b in zip(mg, shift))
            old = p.get(mm)
            if old is None:
                p[mm] = K.neg(K.mul(c, cg))
                kk = key(mm)
                if kk not in kmap:
                    kmap[kk] = mm
                heapq.heappush(heap, -kk)
            else:
                nv = K.sub(old, K.mul(c, cg))
                if nv == zero or K.is_zero(nv):
                    del p[mm]
                else:
                    p[mm] = nv
    return out


@dataclass
class GroebnerBasis:
    """Reduced Gröbner basis; generators are monic, sorted by leading monomial."""

    generators: list
    ring: PolyRing
    _entries: list = field(default_factory=list, repr=False)
    _nf_cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        key = self.ring.key
        if not self._entries:
            self._entries = [
                (max(g.terms, key=key), g.terms) for g in self.generators
            ]

    # pickling drops caches
    def __getstate__(self):
        state = dict(self.__dict__)
        state["_nf_cache"] = {}
        return state

    @property
    def order(self) -> MonomialOrder:
        return self.ring.order

    @property
    def spec(self):
        return self.ring.spec

    @property
    def leading_monomials(self) -> list:
        return [lm for lm, _ in self._entries]

    def is_unit_ideal(self) -> bool:
        return any(not any(lm) for lm, _ in self._entries)

    def _check(self, f: Polynomial) -> None:
        if not f.ring.same_ambient(self.ring):
            raise AmbientMismatch("polynomial and basis live in different rings")

    def reduce_terms(self, terms: dict) -> dict:
        return _reduce(terms, self._entries, self.ring.spec, self.ring.key)

    def normal_form(self, f: Polynomial) -> Polynomial:
        self._check(f)
        return Polynomial(self.ring, self.reduce_terms(f.terms))

    def contains(self, f: Polynomial) -> bool:
        return not self.normal_form(f).terms

    def nf_monomial(self, m) -> dict:
        """Cached normal form of a single monomial (coefficient 1)."""
        out = self._nf_cache.get(m)
        if out is None:
            out = self.reduce_terms({m: self.ring.spec.one})
            self._nf_cache[m] = out
        return out

    def __eq__(self, other):
        if not isinstance(other, GroebnerBasis):
            return NotImplemented
        return self.ring == other.ring and [g.terms for g in self.generators] == [
            g.terms for g in other.generators
        ]

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __str__(self):
        return "{" + ", ".join(str(g) for g in self.generators) + "}"

    # -- zero-dimensional toolkit --------------------------------------------

    def pure_power_bounds(self) -> list[int] | None:
        """Smallest pure power exponent per variable, or None if one is missing."""
        n = self.ring.nvars
        bounds: list = [None] * n
        for lm in self.leading_monomials:
            support = [i for i, e in enumerate(lm) if e]
            if len(support) == 1:
                i = support[0]
                if bounds[i] is None or lm[i] < bounds[i]:
                    bounds[i] = lm[i]
            elif not support:
                return [0] * n
        if any(b is None for b in bounds):
            return None
        return bounds

    def _standard_monomials(self):
        bounds = self.pure_power_bounds()
        if bounds is None:
            raise NotZeroDimensional(
                "some variable has no pure power among the leading monomials"
            )
        n = self.ring.nvars
        lms = self.leading_monomials
        if any(b == 0 for b in bounds):
            return []
        out = []
        mono = [0] * n

        def rec(i):
            if i == n:
                out.append(tuple(mono))
                return
            for e in range(bounds[i]):
                mono[i] = e
                t = mono[: i + 1] + [0] * (n - i - 1)
                if any(all(a <= b for a, b in zip(lm, t)) for lm in lms):
                    break
                rec(i + 1)
            mono[i] = 0

        rec(0)
        return out

    def quotient_basis(self) -> "QuotientBasis":
        key = self.ring.key
        mons = sorted(self._standard_monomials(), key=key)
        return QuotientBasis(tuple(mons))

    def colength(self) -> int:
        return len(self._standard_monomials())

    def multiplication_matrix(self, qb: "QuotientBasis", v) -> list[list]:
        """Dense matrix of multiplication by variable ``v`` (name or index)."""
        i = self.ring.variables.index(v) if isinstance(v, str) else v
        K = self.ring.spec
        m = len(qb)
        M = [[K.zero] * m for _ in range(m)]
        index = qb.index
        for j, b in enumerate(qb.monomials):
            prod = tuple(e + (1 if k == i else 0) for k, e in enumerate(b))
            for mono, c in self.nf_monomial(prod).items():
                M[index[mono]][j] = c
        return M

    def is_primary_to_origin(self) -> bool:
        """True iff every variable acts nilpotently on the quotient.

        In a commutative quotient, multiplication by x is nilpotent iff
        x^N lies in the ideal for N = dim; we follow x^k * 1 through normal
        forms until it vanishes or N steps pass.
        """
        if self.is_unit_ideal():
            return False
        dim = self.colength()
        K = self.ring.spec
        n = self.ring.nvars
        for i in range(n):
            unit = tuple(1 if k == i else 0 for k in range(n))
            f = {(0,) * n: K.one}
            for _ in range(dim):
                f = self.reduce_terms(
                    {tuple(a + b for a, b in zip(m, unit)): c for m, c in f.items()}
                )
                if not f:
                    break
            else:
                return False
        return True

    def krull_dimension(self) -> int:
        """Largest set of variables independent modulo the leading-term ideal.

        Returns -1 for the unit ideal.
        """
        if self.is_unit_ideal():
            return -1
        n = self.ring.nvars
        supports = [frozenset(i for i, e in enumerate(lm) if e) for lm in self.leading_monomials]
        for size in range(n, -1, -1):
            for U in itertools.combinations(range(n), size):
                U = frozenset(U)
                if not any(s <= U for s in supports):
                    return size
        return 0


@dataclass(frozen=True)
class QuotientBasis:
    """Standard monomials in increasing monomial order (so 1 comes first)."""

    standard_monomials: tuple

    @property
    def monomials(self) -> tuple:
        return self.standard_monomials

    @property
    def dimension_as_vector_space(self) -> int:
        return len(self.standard_monomials)

    def __len__(self):
        return len(self.standard_monomials)

    @property
    def index(self) -> dict:
        idx = self.__dict__.get("_index")
        if idx is None:
            idx = {m: i for i, m in enumerate(self.standard_monomials)}
            object.__setattr__(self, "_index", idx)
        return idx

    def coordinates(self, terms: dict, K) -> list:
        """Dense coordinate vector of a normal form."""
        v = [K.zero] * len(self)
        idx = self.index
        for m, c in terms.items():
            v[idx[m]] = c
        return v


# -- Buchberger ----------------------------------------------------------------


def _ring_of(gens, order) -> PolyRing:
    ring = gens[0].ring
    for g in gens[1:]:
        if not g.ring.same_ambient(ring):
            raise AmbientMismatch("generators live in different rings")
    if order is not None:
        ring = ring.with_order(order)
    return ring


def buchberger(
    gens: list,
    order: MonomialOrder | None = None,
    *,
    ring: PolyRing | None = None,
    seed: GroebnerBasis | None = None,
) -> GroebnerBasis:
    """Reduced Gröbner basis of the ideal generated by ``gens`` (plus ``seed``).

    Pairs are taken by the normal strategy (smallest lcm first, ties by
    index) and pruned with Buchberger's coprime and chain criteria.  A
    ``seed`` basis is treated as already closed under S-pairs.
    """
    gens = [g for g in gens if g.terms]
    if seed is not None:
        base_ring = seed.ring if order is None else seed.ring.with_order(order)
        if order is None:
            order = seed.order
    elif gens:
        base_ring = _ring_of(gens, order)
    elif ring is not None:
        base_ring = ring if order is None else ring.with_order(order)
    else:
        raise ValueError("cannot infer the ring of an empty generator list")
    for g in gens:
        if not g.ring.same_ambient(base_ring):
            raise AmbientMismatch("generators live in different rings")
    K = base_ring.spec
    key = base_ring.key

    G: list = []  # (lm, terms)
    pending: set = set()
    heap: list = []

    def add(terms):
        lm = max(terms, key=key)
        terms = _monic_terms(terms, K, lm)
        j = len(G)
        G.append((lm, terms))
        for i in range(j):
            lcm = mono_lcm(G[i][0], lm)
            pending.add((i, j))
            heapq.heappush(heap, (key(lcm), i, j))

    if seed is not None and (order is None or order == seed.order):
        G.extend(seed._entries)
    elif seed is not None:
        gens = list(seed.generators) + gens

    for g in gens:
        h = _reduce(g.terms, G, K, key)
        if h:
            add(h)

    while heap:
        _, i, j = heapq.heappop(heap)
        pending.discard((i, j))
        lmi, gi = G[i]
        lmj, gj = G[j]
        if all(a == 0 or b == 0 for a, b in zip(lmi, lmj)):
            continue
        lcm = mono_lcm(lmi, lmj)
        chain = False
        for k, (lmk, _) in enumerate(G):
            if k in (i, j) or not divides(lmk, lcm):
                continue
            if (min(i, k), max(i, k)) not in pending and (min(j, k), max(j, k)) not in pending:
                chain = True
                break
        if chain:
            continue
        s: dict = {}
        si = tuple(a - b for a, b in zip(lcm, lmi))
        sj = tuple(a - b for a, b in zip(lcm, lmj))
        for m, c in gi.items():
            if m != lmi:
                s[tuple(a + b for a, b in zip(m, si))] = c
        for m, c in gj.items():
            if m == lmj:
                continue
            mm = tuple(a + b for a, b in zip(m, sj))
            v = K.sub(s.get(mm, K.zero), c)
            if K.is_zero(v):
                s.pop(mm, None)
            else:
                s[mm] = v
        h = _reduce(s, G, K, key)
        if h:
            add(h)

    return _interreduce(G, base_ring)


def _interreduce(G: list, ring: PolyRing) -> GroebnerBasis:
    K = ring.spec
    key = ring.key
    # minimal basis: drop elements whose leading monomial is divisible by another's
    keep = []
    for idx, (lm, g) in enumerate(G):
        redundant = False
        for jdx, (lm2, _) in enumerate(G):
            if jdx == idx or not divides(lm2, lm):
                continue
            if lm2 != lm or jdx < idx:
                redundant = True
                break
        if not redundant:
            keep.append((lm, g))
    keep.sort(key=lambda e: key(e[0]))
    out = []
    for idx, (lm, g) in enumerate(keep):
        others = keep[:idx] + keep[idx + 1 :]
        tail = {m: c for m, c in g.items() if m != lm}
        red = _reduce(tail, others, K, key)
        red[lm] = K.one
        out.append((lm, red))
    gens = [Polynomial(ring, terms) for _, terms in out]
    return GroebnerBasis(gens, ring, _entries=out)


def normal_form(f: Polynomial, gb: GroebnerBasis) -> Polynomial:
    return gb.normal_form(f)


def quotient_basis(gb: GroebnerBasis) -> QuotientBasis:
    return gb.quotient_basis()


def multiplication_matrix(gb: GroebnerBasis, qb: QuotientBasis, v) -> list[list]:
    return gb.multiplication_matrix(qb, v)


def is_primary_to_origin(gb: GroebnerBasis) -> bool:
    return gb.is_primary_to_origin()


def krull_dimension(gb: GroebnerBasis) -> int:
    return gb.krull_dimension()


def colength(gens: list, order: MonomialOrder | None = None, ring: PolyRing | None = None) -> int:
    return buchberger(gens, order, ring=ring).colength()
