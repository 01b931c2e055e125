"""Exact linear algebra over a :class:`~frobsig.field.FieldSpec`.

Dense helpers work on lists of rows of raw field values; :class:`SparseEchelon`
maintains an incrementally reduced set of sparse vectors ``{index: value}``.
"""

from __future__ import annotations

from .field import FieldSpec


def rref(rows: list[list], K: FieldSpec, ncols: int | None = None) -> tuple[list[list], list[int]]:
    """Reduced row-echelon form; returns (nonzero rows, pivot columns)."""
    rows = [list(r) for r in rows]
    if ncols is None:
        ncols = len(rows[0]) if rows else 0
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(rows)) if not K.is_zero(rows[i][c])), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = K.inv(rows[r][c])
        rows[r] = [K.mul(x, inv) for x in rows[r]]
        for i in range(len(rows)):
            if i != r and not K.is_zero(rows[i][c]):
                f = rows[i][c]
                rows[i] = [K.sub(a, K.mul(f, b)) for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rank(rows: list[list], K: FieldSpec) -> int:
    if not rows:
        return 0
    return len(rref(rows, K)[1])


def nullspace(rows: list[list], K: FieldSpec, ncols: int) -> list[list]:
    """Basis of {v : A v = 0}, itself returned in reduced row-echelon form."""
    red, pivots = rref(rows, K, ncols) if rows else ([], [])
    free = [c for c in range(ncols) if c not in pivots]
    basis = []
    for f in free:
        v = [K.zero] * ncols
        v[f] = K.one
        for row, pc in zip(red, pivots):
            v[pc] = K.neg(row[f])
        basis.append(v)
    if not basis:
        return []
    return rref(basis, K, ncols)[0]


def is_zero_matrix(rows: list[list], K: FieldSpec) -> bool:
    return all(K.is_zero(x) for r in rows for x in r)


class SparseEchelon:
    """Incremental echelon basis of sparse vectors; pivot = largest index."""

    def __init__(self, K: FieldSpec):
        self.K = K
        self.rows: dict[int, dict] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: dict) -> dict:
        K = self.K
        vec = dict(vec)
        out = {}
        while vec:
            piv = max(vec)
            c = vec.pop(piv)
            row = self.rows.get(piv)
            if row is None:
                out[piv] = c
                # remaining entries are below piv; keep reducing them
                continue
            for j, v in row.items():
                if j == piv:
                    continue
                nv = K.sub(vec.get(j, K.zero), K.mul(c, v))
                if K.is_zero(nv):
                    vec.pop(j, None)
                else:
                    vec[j] = nv
        return out

    def add(self, vec: dict) -> bool:
        """Insert ``vec``; return True when it enlarged the span."""
        K = self.K
        vec = {j: v for j, v in vec.items() if not K.is_zero(v)}
        rows = self.rows
        while vec:
            piv = max(vec)
            row = rows.get(piv)
            c = vec[piv]
            if row is None:
                inv = K.inv(c)
                rows[piv] = {j: K.mul(v, inv) for j, v in vec.items()}
                return True
            for j, v in row.items():
                nv = K.sub(vec.get(j, K.zero), K.mul(c, v))
                if K.is_zero(nv):
                    vec.pop(j, None)
                else:
                    vec[j] = nv
        return False


def sparse_rank(columns, K: FieldSpec) -> int:
    ech = SparseEchelon(K)
    for col in columns:
        ech.add(col)
    return ech.rank
