"""Finite-dimensional quotient algebras and the Gröbner-free rank path.

An :class:`ArtinAlgebra` is ``k[x]/I`` for a zero-dimensional ideal primary to
the origin, with the standard monomials of a Gröbner basis as its basis.
Structure constants ``d[k][l]`` (the product of basis elements k and l written
in the basis) are produced on demand and cached, since the big algebras of
Frobenius powers have tens of thousands of basis elements.

The socle of ``R/I_0`` is parametrized by matrices over the residue field;
:func:`s_via_rank` evaluates the normalized Frobenius colength drop of the
matching socle ideal as ``rank M' / (p^(e d) rank M)``.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator

from .errors import (
    InfiniteResidueField,
    NotPrimaryToOrigin,
    ShapeMismatch,
    TooManySubspaces,
    ZeroMatrix,
)
from .field import FieldSpec
from .groebner import GroebnerBasis, QuotientBasis, buchberger
from .linalg import SparseEchelon, nullspace, rank, rref
from .poly import MonomialOrder, Polynomial
from .presentation import LocalRingPresentation

DEFAULT_BUDGET = 10**6


@dataclass
class ArtinAlgebra:
    gb: GroebnerBasis
    basis: QuotientBasis
    _products: dict = field(default_factory=dict, repr=False)
    _actions: dict = field(default_factory=dict, repr=False)

    def __getstate__(self):
        state = dict(self.__dict__)
        state["_products"] = {}
        state["_actions"] = {}
        return state

    @classmethod
    def from_groebner(cls, gb: GroebnerBasis, check_primary: bool = True) -> "ArtinAlgebra":
        qb = gb.quotient_basis()
        if check_primary and not gb.is_primary_to_origin():
            raise NotPrimaryToOrigin("quotient is not local at the origin")
        return cls(gb, qb)

    @property
    def spec(self) -> FieldSpec:
        return self.gb.ring.spec

    @property
    def ring(self):
        return self.gb.ring

    @property
    def dimension(self) -> int:
        return len(self.basis)

    def __len__(self):
        return len(self.basis)

    def coordinates(self, f: Polynomial) -> dict:
        """Sparse coordinates {basis index: coefficient} of the residue of f."""
        idx = self.basis.index
        return {idx[m]: c for m, c in self.gb.reduce_terms(f.terms).items()}

    def element(self, coords: dict) -> Polynomial:
        mons = self.basis.monomials
        return Polynomial(self.ring, {mons[i]: c for i, c in coords.items()})

    def product(self, k: int, l: int) -> dict:
        """Structure constants d[k][l][.] as a sparse vector."""
        if k > l:
            k, l = l, k
        out = self._products.get((k, l))
        if out is None:
            a, b = self.basis.monomials[k], self.basis.monomials[l]
            m = tuple(x + y for x, y in zip(a, b))
            idx = self.basis.index
            if m in idx:
                out = {idx[m]: self.spec.one}
            else:
                out = {idx[mm]: c for mm, c in self.gb.nf_monomial(m).items()}
            self._products[(k, l)] = out
        return out

    def structure_constants(self) -> list:
        """Dense tensor d[k][l][h]; only sensible for small algebras."""
        K, m = self.spec, len(self)
        d = []
        for k in range(m):
            row = []
            for l in range(m):
                v = [K.zero] * m
                for h, c in self.product(k, l).items():
                    v[h] = c
                row.append(v)
            d.append(row)
        return d

    def times_basis(self, vec: dict, l: int) -> dict:
        """vec * basis[l] = sum_k vec[k] d[k][l][.]."""
        K = self.spec
        out: dict = {}
        for k, a in vec.items():
            for h, c in self.product(k, l).items():
                v = K.add(out.get(h, K.zero), K.mul(a, c))
                if K.is_zero(v):
                    out.pop(h, None)
                else:
                    out[h] = v
        return out

    def multiply(self, u: dict, v: dict) -> dict:
        K = self.spec
        out: dict = {}
        for l, b in v.items():
            for h, c in self.times_basis(u, l).items():
                w = K.add(out.get(h, K.zero), K.mul(b, c))
                if K.is_zero(w):
                    out.pop(h, None)
                else:
                    out[h] = w
        return out

    def variable_action(self, var: int) -> list:
        """Sparse columns of multiplication by a variable."""
        cols = self._actions.get(var)
        if cols is None:
            n = self.ring.nvars
            idx = self.basis.index
            unit = tuple(1 if i == var else 0 for i in range(n))
            cols = []
            for b in self.basis.monomials:
                m = tuple(x + y for x, y in zip(b, unit))
                cols.append({idx[mm]: c for mm, c in self.gb.nf_monomial(m).items()})
            self._actions[var] = cols
        return cols

    def variable_action_matrix(self, var: int) -> list[list]:
        K, m = self.spec, len(self)
        M = [[K.zero] * m for _ in range(m)]
        for j, col in enumerate(self.variable_action(var)):
            for i, c in col.items():
                M[i][j] = c
        return M

    # -- structural checks ---------------------------------------------------

    def check_commutative(self) -> bool:
        m = len(self)
        return all(self.product(k, l) == self.product(l, k) for k in range(m) for l in range(m))

    def check_unit(self) -> bool:
        K = self.spec
        return all(self.product(0, l) == {l: K.one} for l in range(len(self)))

    def check_associative(self, triples=None) -> bool:
        m = len(self)
        K = self.spec
        if triples is None:
            triples = itertools.product(range(m), repeat=3)
        for a, b, c in triples:
            left = self.times_basis(self.product(a, b), c)
            right = self.times_basis(self.product(b, c), a)
            if left != right:
                return False
        return True


def from_quotient(defining: list, order: MonomialOrder | None = None) -> ArtinAlgebra:
    return ArtinAlgebra.from_groebner(buchberger(defining, order))


# -- socle ---------------------------------------------------------------------


@dataclass
class SocleData:
    lifts: list  # Polynomials in normal form
    vectors: list  # dense coordinate vectors in the algebra's basis
    algebra: ArtinAlgebra

    @property
    def n(self) -> int:
        return len(self.lifts)

    @property
    def spec(self) -> FieldSpec:
        return self.algebra.spec


def socle(A: ArtinAlgebra) -> SocleData:
    """Basis of the common kernel of all variable actions.

    Columns are ordered by decreasing monomial, so after row reduction each
    lift has a distinct leading monomial and coefficient 1 there.
    """
    K = A.spec
    m = len(A)
    perm = list(range(m - 1, -1, -1))  # column j <-> basis index perm[j]
    rows = []
    for v in range(A.ring.nvars):
        cols = A.variable_action(v)
        for i in range(m):
            row = [cols[perm[j]].get(i, K.zero) for j in range(m)]
            if any(not K.is_zero(x) for x in row):
                rows.append(row)
    kernel = nullspace(rows, K, m)
    vectors = []
    lifts = []
    for kv in kernel:
        vec = [K.zero] * m
        for j, c in enumerate(kv):
            vec[perm[j]] = c
        vectors.append(vec)
        lifts.append(A.element({i: c for i, c in enumerate(vec) if not K.is_zero(c)}))
    return SocleData(lifts, vectors, A)


# -- socle ideals from matrices ------------------------------------------------


def _check_matrix(M, n: int, K: FieldSpec) -> list[list]:
    M = [list(r) for r in M]
    if any(len(r) != n for r in M):
        raise ShapeMismatch(f"matrix rows must have length {n}")
    if all(K.is_zero(x) for r in M for x in r):
        raise ZeroMatrix("the zero matrix does not define a socle ideal")
    return M


def ideal_from_matrix(soc: SocleData, M) -> list:
    """Generators sum_j M[i][j] eps_j to adjoin to I_0 (zero rows dropped)."""
    K = soc.spec
    M = _check_matrix(M, soc.n, K)
    ring = soc.algebra.ring
    out = []
    for row in M:
        g = ring.zero()
        for a, eps in zip(row, soc.lifts):
            if not K.is_zero(a):
                g = g + eps.scale(a)
        if g.terms:
            out.append(g)
    return out


@dataclass
class FrobeniusCoordinates:
    c: list  # sparse rows {basis index of A_big: coefficient}
    e: int
    d: int
    algebra: ArtinAlgebra  # R / (J_amb + I_0^[q])

    def dense(self) -> list[list]:
        K = self.algebra.spec
        m = len(self.algebra)
        out = []
        for row in self.c:
            v = [K.zero] * m
            for i, x in row.items():
                v[i] = x
            out.append(v)
        return out


def big_algebra(R: LocalRingPresentation, I0, e: int) -> ArtinAlgebra:
    """R / (J_amb + I_0^[p^e]).

    The primary check is done on J_amb + I_0, which has the same radical.
    """
    R.primary_basis(I0)
    gbq = R.groebner(R.bracket_power(I0, e))
    return ArtinAlgebra.from_groebner(gbq, check_primary=False)


def frobenius_coordinates(
    R: LocalRingPresentation,
    I0,
    soc: SocleData,
    e: int,
    A_big: ArtinAlgebra | None = None,
) -> FrobeniusCoordinates:
    if A_big is None:
        A_big = big_algebra(R, I0, e)
    rows = [A_big.coordinates(eps.frobenius_power(e)) for eps in soc.lifts]
    return FrobeniusCoordinates(rows, e, R.dimension, A_big)


def s_via_rank(
    coords: FrobeniusCoordinates,
    A_big: ArtinAlgebra | None,
    M,
    l_I0: int | None = None,
) -> Fraction:
    """rank(M') / (p^(e d) rank(M)) for the socle ideal defined by M."""
    if A_big is None:
        A_big = coords.algebra
    K = A_big.spec
    n = len(coords.c)
    M = _check_matrix(M, n, K)
    e, d, p = coords.e, coords.d, K.p
    rank_m = rank(M, K)
    ech = SparseEchelon(K)
    m = len(A_big)
    for row in M:
        w: dict = {}
        for a, c_row in zip(row, coords.c):
            if K.is_zero(a):
                continue
            aq = K.frobenius(a, e)
            for k, c in c_row.items():
                v = K.add(w.get(k, K.zero), K.mul(aq, c))
                if K.is_zero(v):
                    w.pop(k, None)
                else:
                    w[k] = v
        if not w:
            continue
        for l in range(m):
            ech.add(A_big.times_basis(w, l))
            if ech.rank == m:
                break
    value = Fraction(ech.rank, p ** (e * d) * rank_m)
    if l_I0 is not None and value > Fraction(m):
        raise AssertionError("rank path value exceeds the colength bound")
    return value


# -- subspace enumeration ------------------------------------------------------


def gaussian_binomial(n: int, k: int, q: int) -> int:
    if k < 0 or k > n:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (n - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def count_subspaces(n: int, q: int) -> int:
    """Number of nonzero subspaces of F_q^n."""
    return sum(gaussian_binomial(n, k, q) for k in range(1, n + 1))


def _rref_matrices(n: int, r: int, K: FieldSpec) -> list:
    elems = list(K.elements())
    rank_of = {x: i for i, x in enumerate(elems)}
    out = []
    for pivots in itertools.combinations(range(n), r):
        free = [
            (i, j)
            for i, pc in enumerate(pivots)
            for j in range(pc + 1, n)
            if j not in pivots
        ]
        for values in itertools.product(elems, repeat=len(free)):
            M = [[K.zero] * n for _ in range(r)]
            for i, pc in enumerate(pivots):
                M[i][pc] = K.one
            for (i, j), v in zip(free, values):
                M[i][j] = v
            out.append(tuple(tuple(row) for row in M))
    out.sort(key=lambda M: [rank_of[x] for row in M for x in row])
    return out


def enumerate_socle_subspaces(
    n: int,
    K: FieldSpec | int,
    budget: int = DEFAULT_BUDGET,
    ranks=None,
) -> Iterator[tuple]:
    """One reduced row-echelon matrix per nonzero subspace of K^n.

    Ordered by dimension, then lexicographically on the entries (field
    elements compared by their enumeration index).  ``K`` may be a prime
    given as an int.  ``ranks`` restricts the dimensions enumerated.
    """
    if isinstance(K, int):
        from .field import PrimeField

        K = PrimeField(K)
    if not K.is_finite:
        raise InfiniteResidueField(f"cannot enumerate subspaces over {K}")
    ranks = range(1, n + 1) if ranks is None else [r for r in ranks if 1 <= r <= n]
    total = sum(gaussian_binomial(n, r, K.order) for r in ranks)
    if total > budget:
        raise TooManySubspaces(total, budget, "try --rank1-only or a sampled run")

    def gen():
        for r in ranks:
            yield from _rref_matrices(n, r, K)

    return gen()


def default_samples(K: FieldSpec) -> list:
    """Coefficient samples {0, 1, t_i, t_i + 1} for a function field."""
    out = [K.zero, K.one]
    for g in K.generators().values():
        for v in (g, K.add(g, K.one)):
            if v not in out:
                out.append(v)
    return out


def normalize_vector(vec, K: FieldSpec) -> tuple:
    lead = next(x for x in vec if not K.is_zero(x))
    inv = K.inv(lead)
    return tuple(K.mul(x, inv) for x in vec)


def sample_socle_vectors(n: int, K: FieldSpec, samples=None) -> list:
    """Projectively distinct nonzero rank-one matrices with sampled entries."""
    if samples is None:
        samples = default_samples(K)
    seen = set()
    out = []
    for vec in itertools.product(samples, repeat=n):
        if all(K.is_zero(x) for x in vec):
            continue
        v = normalize_vector(vec, K)
        if v not in seen:
            seen.add(v)
            out.append((v,))
    return out


def row_space(M, K: FieldSpec, n: int) -> tuple:
    """Canonical reduced row-echelon representative of the row space."""
    red, _ = rref([list(r) for r in M], K, n)
    return tuple(tuple(r) for r in red)
