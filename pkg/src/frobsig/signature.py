"""Truncated relative / rational F-signatures and Hilbert-Kunz data.

For an m-primary ``I_0`` and a socle ideal ``I`` (``m I`` inside ``I_0``,
``I_0`` strictly inside ``I``) the normalized Frobenius colength drop is

    s^e(I) = (l(R/I_0^[q]) - l(R/I^[q])) / (q^d (l(R/I_0) - l(R/I))),  q = p^e.

Minima over all socle ideals (or over principal extensions ``I_0 + (u)``)
are computed twice: by Gröbner colengths, and by the rank of the matrix M'
built from Frobenius coordinates and structure constants.  The two routes
share nothing beyond the Gröbner basis of ``J_amb + I_0^[q]``.
"""

from __future__ import annotations

import logging
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

from .artin import (
    DEFAULT_BUDGET,
    ArtinAlgebra,
    FrobeniusCoordinates,
    SocleData,
    enumerate_socle_subspaces,
    frobenius_coordinates,
    ideal_from_matrix,
    row_space,
    s_via_rank,
    sample_socle_vectors,
    socle,
)
from .errors import NotProperContainment, TooManySubspaces
from .groebner import GroebnerBasis, buchberger
from .presentation import LocalRingPresentation

log = logging.getLogger(__name__)

EQUIDIMENSIONAL_DISCLAIMER = (
    "formal equidimensionality of R is assumed, not checked"
)
HEURISTIC_INTERVAL = (
    "C_emp is an empirical estimate; the limit interval is a heuristic bracket"
)


@dataclass(frozen=True)
class SignatureValue:
    value: Fraction
    numerator_length: int
    denominator_length: int
    e: int
    p: int
    d: int

    def __post_init__(self):
        expected = Fraction(
            self.numerator_length, self.p ** (self.e * self.d) * self.denominator_length
        )
        assert self.value == expected


def s_trunc(R: LocalRingPresentation, I0, I, e: int) -> SignatureValue:
    I0, I = R.polys(I0), R.polys(I)
    gb0 = R.primary_basis(I0)
    gbI = R.groebner(I)
    if not all(gbI.contains(g) for g in I0):
        raise NotProperContainment("I does not contain I_0")
    if all(gb0.contains(g) for g in I):
        raise NotProperContainment("I equals I_0")
    q_gens0 = R.bracket_power(I0, e)
    gb0q = R.groebner(q_gens0)
    gbIq = R.groebner(R.bracket_power(I, e))
    if not all(gbIq.contains(g) for g in q_gens0):
        raise NotProperContainment("I^[q] does not contain I_0^[q]")
    l0, lI = gb0.colength(), gbI.colength()
    l0q, lIq = gb0q.colength(), gbIq.colength()
    p, d = R.p, R.dimension
    return SignatureValue(
        Fraction(l0q - lIq, p ** (e * d) * (l0 - lI)), l0q - lIq, l0 - lI, e, p, d
    )


# -- candidate evaluation ------------------------------------------------------


@dataclass
class Setup:
    """Everything shared by the candidates of one (R, I_0, e)."""

    R: LocalRingPresentation
    I0: list
    e: int
    gb0: GroebnerBasis
    gb0q: GroebnerBasis
    l0: int
    l0q: int
    soc: SocleData
    A_big: ArtinAlgebra
    coords: FrobeniusCoordinates

    @property
    def spec(self):
        return self.R.spec


def prepare(R: LocalRingPresentation, I0, e: int) -> Setup:
    I0 = R.polys(I0)
    gb0 = R.primary_basis(I0)
    A_small = ArtinAlgebra.from_groebner(gb0, check_primary=False)
    soc = socle(A_small)
    gb0q = R.groebner(R.bracket_power(I0, e))
    # J_amb + I_0^[q] has the radical of J_amb + I_0
    A_big = ArtinAlgebra.from_groebner(gb0q, check_primary=False)
    coords = frobenius_coordinates(R, I0, soc, e, A_big)
    return Setup(R, I0, e, gb0, gb0q, gb0.colength(), len(A_big), soc, A_big, coords)


@dataclass(frozen=True)
class CandidateResult:
    matrix: tuple
    groebner: SignatureValue
    rank_value: Fraction

    @property
    def value(self) -> Fraction:
        return self.groebner.value

    @property
    def agree(self) -> bool:
        return self.groebner.value == self.rank_value


def groebner_value(setup: Setup, M) -> SignatureValue:
    gens = ideal_from_matrix(setup.soc, M)
    gbJ = buchberger(gens, seed=setup.gb0)
    gbJq = buchberger([g.frobenius_power(setup.e) for g in gens], seed=setup.gb0q)
    num = setup.l0q - gbJq.colength()
    den = setup.l0 - gbJ.colength()
    p, d, e = setup.R.p, setup.R.dimension, setup.e
    return SignatureValue(Fraction(num, p ** (e * d) * den), num, den, e, p, d)


def evaluate(setup: Setup, M) -> CandidateResult:
    M = tuple(tuple(r) for r in M)
    return CandidateResult(M, groebner_value(setup, M), s_via_rank(setup.coords, setup.A_big, M))


_WORKER_SETUP: Setup | None = None


def _init_worker(setup: Setup) -> None:
    global _WORKER_SETUP
    _WORKER_SETUP = setup


def _worker(M) -> CandidateResult:
    return evaluate(_WORKER_SETUP, M)


def evaluate_all(setup: Setup, matrices: list, parallel: int = 1) -> list[CandidateResult]:
    """Evaluate candidates in order; output is independent of ``parallel``."""
    if parallel <= 1 or len(matrices) < 2:
        return [evaluate(setup, M) for M in matrices]
    chunk = max(1, len(matrices) // (4 * parallel))
    with ProcessPoolExecutor(
        max_workers=parallel, initializer=_init_worker, initargs=(setup,)
    ) as ex:
        return list(ex.map(_worker, matrices, chunksize=chunk))


# -- minima --------------------------------------------------------------------


@dataclass
class SignatureMinimum:
    e: int
    minimum: Fraction
    argmin: tuple
    minimizers: list
    candidates: list  # CandidateResult, in enumeration order
    mode: str  # "exhaustive" | "rank1" | "sampled"
    exhaustive: bool
    socle_dimension: int
    warnings: list = field(default_factory=list)

    @property
    def candidate_count(self) -> int:
        return len(self.candidates)

    @property
    def paths_agree(self) -> bool:
        return all(c.agree for c in self.candidates)

    @property
    def value_set(self) -> list:
        return sorted({c.value for c in self.candidates})

    @property
    def is_upper_bound(self) -> bool:
        return self.mode == "sampled"


def _candidates(soc: SocleData, budget: int, rank1: bool, samples=None):
    K, n = soc.spec, soc.n
    if K.is_finite:
        ranks = [1] if rank1 else None
        return list(enumerate_socle_subspaces(n, K, budget, ranks)), "exhaustive"
    if n == 1:
        # a single nonzero subspace whatever the field
        return [((K.one,),)], "exhaustive"
    mats = sample_socle_vectors(n, K, samples)
    if len(mats) > budget:
        raise TooManySubspaces(len(mats), budget, "shrink the sample set")
    return mats, "sampled"


def _minimum(setup: Setup, mats, mode, rank1_only, parallel) -> SignatureMinimum:
    results = evaluate_all(setup, mats, parallel)
    for r in results:
        if not r.agree:
            log.error(
                "paths disagree on %s: groebner %s, rank %s", r.matrix, r.value, r.rank_value
            )
    values = [r.value for r in results]
    lo = min(values)
    minimizers = [r.matrix for r in results if r.value == lo]
    warnings = []
    if mode == "sampled":
        warnings.append("sampled candidates over an infinite residue field: values are upper bounds")
    if rank1_only and setup.soc.n > 1 and mode != "sampled":
        mode = "rank1"
    return SignatureMinimum(
        setup.e,
        lo,
        minimizers[0],
        minimizers,
        results,
        mode,
        mode == "exhaustive",
        setup.soc.n,
        warnings,
    )


def s_trunc_min(
    R: LocalRingPresentation,
    I0,
    e: int,
    budget: int = DEFAULT_BUDGET,
    *,
    rank1_only: bool = False,
    parallel: int = 1,
    samples=None,
    setup: Setup | None = None,
) -> SignatureMinimum:
    """Minimum of s^e over all socle ideals of I_0 (both paths evaluated)."""
    setup = setup or prepare(R, I0, e)
    mats, mode = _candidates(setup.soc, budget, rank1_only, samples)
    out = _minimum(setup, mats, mode, rank1_only, parallel)
    if out.mode == "rank1":
        out.warnings.append("rank-one candidates only: the minimum is an upper bound for s^e")
    return out


def s_rat_trunc(
    R: LocalRingPresentation,
    I0,
    e: int,
    budget: int = DEFAULT_BUDGET,
    *,
    parallel: int = 1,
    samples=None,
    setup: Setup | None = None,
) -> SignatureMinimum:
    """Minimum of s^e(I_0 + uR) over nonzero socle elements u."""
    setup = setup or prepare(R, I0, e)
    mats, mode = _candidates(setup.soc, budget, True, samples)
    out = _minimum(setup, mats, mode, False, parallel)
    return out


# -- Hilbert-Kunz --------------------------------------------------------------


@dataclass(frozen=True)
class HKValue:
    e: int
    length: int
    normalized: Fraction


def hk_function(R: LocalRingPresentation, I, e_max: int) -> list[HKValue]:
    I = R.polys(I)
    R.primary_basis(I)
    out = []
    for e in range(e_max + 1):
        length = R.groebner(R.bracket_power(I, e)).colength()
        out.append(HKValue(e, length, Fraction(length, R.p ** (e * R.dimension))))
    return out


# -- convergence ---------------------------------------------------------------


@dataclass
class ConvergenceReport:
    p: int
    values: dict  # e -> Fraction
    scaled_differences: list  # (e, e', p^e |s^e - s^e'|)
    C_emp: Fraction
    limit_interval: tuple
    e_max: int
    # e_max' -> (C_emp, (lo, hi)) using only the values at e <= e_max'
    prefix_intervals: dict = field(default_factory=dict)

    @property
    def nested(self) -> bool:
        """Limit intervals shrink into each other as e_max grows."""
        es = sorted(self.prefix_intervals)
        iv = {e: self.prefix_intervals[e][1] for e in es}
        return all(iv[a][0] <= iv[b][0] and iv[b][1] <= iv[a][1] for a, b in zip(es, es[1:]))

    @property
    def bounded(self) -> bool:
        return all(s <= self.C_emp for *_, s in self.scaled_differences)

    @property
    def constant(self) -> bool:
        return len(set(self.values.values())) == 1


def _control(values: dict, p: int):
    es = sorted(values)
    diffs = [(a, b, Fraction(p**a) * abs(values[a] - values[b])) for a, b in combinations(es, 2)]
    C = max(s for *_, s in diffs)
    top = values[es[-1]]
    r = C / Fraction(p) ** es[-1]
    return diffs, C, (top - r, top + r)


def convergence_report(values, p: int) -> ConvergenceReport:
    """Empirical control constant and extrapolation interval for s^e values.

    ``values`` maps e to an exact value (a dict or (e, value) pairs).  The
    interval is [s^emax - C p^-emax, s^emax + C p^-emax]; it is recomputed
    for every prefix of the levels so its shrinking can be inspected.
    """
    values = {e: Fraction(v) for e, v in dict(values).items()}
    if len(values) < 2:
        raise ValueError("need values at two or more levels")
    es = sorted(values)
    prefix = {}
    for k in range(2, len(es) + 1):
        sub = {e: values[e] for e in es[:k]}
        _, C, iv = _control(sub, p)
        prefix[es[k - 1]] = (C, iv)
    diffs, C, iv = _control(values, p)
    return ConvergenceReport(p, values, diffs, C, iv, es[-1], prefix)


# -- minimizer closure ---------------------------------------------------------


@dataclass
class ClosureCertificate:
    minimum: Fraction
    minimizers: list
    pairs_checked: int
    failures: list
    maximal_minimizer: tuple
    maximal_value: Fraction

    @property
    def closed(self) -> bool:
        return not self.failures

    @property
    def passed(self) -> bool:
        return self.closed and self.maximal_value == self.minimum


def minimizer_closure_check(
    R: LocalRingPresentation,
    I0,
    e: int,
    budget: int = DEFAULT_BUDGET,
    *,
    parallel: int = 1,
    result: SignatureMinimum | None = None,
) -> ClosureCertificate:
    """Check that sums of minimizing socle ideals are minimizing."""
    if result is None:
        result = s_trunc_min(R, I0, e, budget, parallel=parallel)
    if not result.exhaustive:
        raise ValueError("closure check needs an exhaustive enumeration")
    K, n = R.spec, result.socle_dimension
    table = {row_space(c.matrix, K, n): c.value for c in result.candidates}
    mins = [row_space(M, K, n) for M in result.minimizers]
    failures = []
    pairs = 0
    for a, b in combinations(mins, 2):
        pairs += 1
        s = row_space(a + b, K, n)
        if table[s] != result.minimum:
            failures.append((a, b, s, table[s]))
    maximal = row_space([r for M in mins for r in M], K, n)
    return ClosureCertificate(result.minimum, mins, pairs, failures, maximal, table[maximal])


def minimal_generator_count(R: LocalRingPresentation, I0) -> int:
    """Number of minimal generators of I_0 in the local ring: l(R/m I_0) - l(R/I_0)."""
    I0 = R.polys(I0)
    mI0 = [x * g for x in R.ring.gens() for g in I0]
    return R.groebner(mI0).colength() - R.groebner(I0).colength()


def parameter_warnings(R: LocalRingPresentation, I0) -> list[str]:
    out = []
    mu = minimal_generator_count(R, I0)
    if mu != R.dimension:
        out.append(
            f"I_0 needs {mu} generators but dim R = {R.dimension}: not a parameter "
            "ideal, so the limit interval is not a bracket for s_rel"
        )
    if R.dimension_source == "user":
        out.append(f"dimension {R.dimension} supplied by the user")
    return out
