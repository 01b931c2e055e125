"""Base change of presentations along coefficient-field extensions.

Two kinds are supported: F_p -> F_{p^m} (a finite separable extension), and
the level-L Gamma-construction over F_p(t_1, ..., t_s), which adjoins
p^L-th roots of the transcendentals in Gamma.  The latter is modelled by a
fresh rational function field: the root of t is a new transcendental u and
t is identified with u^(p^L).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction

from .artin import DEFAULT_BUDGET, default_samples, row_space
from .errors import IncompatibleSpec
from .field import ExtensionField, FieldSpec, FunctionField, PrimeField, first_irreducible
from .poly import PolyRing
from .presentation import LocalRingPresentation
from .signature import SignatureMinimum, evaluate_all, prepare, s_trunc_min


@dataclass(frozen=True)
class BaseChangeSpec:
    kind: str  # "extend_prime_field" | "gamma"
    degree: int = 1
    gamma: tuple = ()
    level: int = 1

    def __post_init__(self):
        object.__setattr__(self, "gamma", tuple(self.gamma))
        if self.kind not in ("extend_prime_field", "gamma"):
            raise IncompatibleSpec(f"unknown base change kind {self.kind!r}")
        if self.kind == "extend_prime_field" and self.degree < 1:
            raise IncompatibleSpec("extension degree must be positive")
        if self.kind == "gamma" and self.level < 0:
            raise IncompatibleSpec("gamma level must be non-negative")

    @classmethod
    def extend(cls, degree: int) -> "BaseChangeSpec":
        return cls("extend_prime_field", degree=degree)

    @classmethod
    def gamma_level(cls, gamma, level: int) -> "BaseChangeSpec":
        return cls("gamma", gamma=tuple(gamma), level=level)


@dataclass(frozen=True)
class FieldMap:
    """An embedding of coefficient fields acting on raw values."""

    source: FieldSpec
    target: FieldSpec
    powers: tuple = ()  # for function fields: exponent multiplier per transcendental

    def __call__(self, a):
        if isinstance(self.source, PrimeField):
            return self.target.from_int(a)
        if isinstance(self.source, FunctionField):
            v = self.source.substitute_powers(a, dict(enumerate(self.powers)))
            return self.target.coerce(v)
        if self.source == self.target:
            return a
        raise IncompatibleSpec(f"no embedding {self.source} -> {self.target}")

    @property
    def is_identity(self) -> bool:
        return self.source == self.target and all(k == 1 for k in self.powers)

    def matrix(self, M) -> tuple:
        return tuple(tuple(self(x) for x in row) for row in M)


def _root_names(K: FunctionField, gamma: tuple, avoid: set) -> tuple:
    names = list(K.names)
    taken = set(avoid) | {n for n in names if n not in gamma}
    for i, t in enumerate(names):
        if t not in gamma:
            continue
        cand = "u" if len(gamma) == 1 else f"u_{t}"
        while cand in taken:
            cand += "_"
        taken.add(cand)
        names[i] = cand
    return tuple(names)


def field_map(R: LocalRingPresentation, spec: BaseChangeSpec) -> FieldMap:
    K = R.spec
    if spec.kind == "extend_prime_field":
        if not isinstance(K, PrimeField):
            raise IncompatibleSpec("prime-field extension needs a prime coefficient field")
        if spec.degree == 1:
            return FieldMap(K, K)
        return FieldMap(K, ExtensionField(K.p, first_irreducible(K.p, spec.degree)))
    if not isinstance(K, FunctionField):
        raise IncompatibleSpec("the gamma construction needs a rational function field")
    unknown = set(spec.gamma) - set(K.names)
    if unknown:
        raise IncompatibleSpec(f"{sorted(unknown)} are not transcendentals of {K}")
    if not spec.gamma or spec.level == 0:
        return FieldMap(K, K, (1,) * K.nvars)
    names = _root_names(K, spec.gamma, set(R.variables))
    target = FunctionField(K.p, names)
    q = K.p**spec.level
    powers = tuple(q if t in spec.gamma else 1 for t in K.names)
    return FieldMap(K, target, powers)


def base_change(R: LocalRingPresentation, spec: BaseChangeSpec) -> LocalRingPresentation:
    phi = field_map(R, spec)
    if phi.is_identity:
        return R
    ring = PolyRing(phi.target, R.variables, R.ring.order)
    defining = tuple(f.map_coefficients(ring, phi) for f in R.defining)
    return LocalRingPresentation(ring, defining, R.dimension, R.dimension_source)


def push_polys(R: LocalRingPresentation, S: LocalRingPresentation, phi: FieldMap, gens) -> list:
    return [g.map_coefficients(S.ring, phi) for g in R.polys(gens)]


# -- flat invariance -----------------------------------------------------------


@dataclass
class FlatCertificate:
    source: SignatureMinimum
    target: SignatureMinimum
    mismatches: list  # (matrix, value over R, value over S)
    socle_compatible: bool
    separable: bool

    @property
    def values_preserved(self) -> bool:
        return not self.mismatches

    @property
    def set_contained(self) -> bool:
        return set(self.source.value_set) <= set(self.target.value_set)

    @property
    def min_inequality(self) -> bool:
        return self.source.minimum >= self.target.minimum

    @property
    def min_equal(self) -> bool:
        return self.source.minimum == self.target.minimum

    @property
    def passed(self) -> bool:
        ok = (
            self.socle_compatible
            and self.values_preserved
            and self.set_contained
            and self.min_inequality
            and self.source.paths_agree
            and self.target.paths_agree
        )
        return ok and (self.min_equal or not self.separable)


def flat_invariance_check(
    R: LocalRingPresentation,
    I0,
    e: int,
    spec: BaseChangeSpec,
    budget: int = DEFAULT_BUDGET,
    *,
    parallel: int = 1,
) -> FlatCertificate:
    if spec.kind != "extend_prime_field":
        raise IncompatibleSpec("exhaustive flat checks need finite residue fields on both sides")
    phi = field_map(R, spec)
    S = base_change(R, spec)
    I0S = push_polys(R, S, phi, I0)
    setup_R = prepare(R, I0, e)
    setup_S = prepare(S, I0S, e)
    pushed_lifts = [g.map_coefficients(S.ring, phi) for g in setup_R.soc.lifts]
    socle_ok = pushed_lifts == setup_S.soc.lifts
    res_R = s_trunc_min(R, I0, e, budget, parallel=parallel, setup=setup_R)
    res_S = s_trunc_min(S, I0S, e, budget, parallel=parallel, setup=setup_S)
    n = setup_S.soc.n
    table = {row_space(c.matrix, S.spec, n): c.value for c in res_S.candidates}
    mismatches = []
    for c in res_R.candidates:
        key = row_space(phi.matrix(c.matrix), S.spec, n)
        v = table.get(key)
        if v != c.value:
            mismatches.append((c.matrix, c.value, v))
    # finite fields are perfect, so every finite extension is separable
    return FlatCertificate(res_R, res_S, mismatches, socle_ok, separable=True)


# -- gamma construction --------------------------------------------------------


@dataclass
class GammaLevel:
    level: int
    spec: FieldSpec
    bound: Fraction
    candidate_count: int
    exhaustive: bool
    preserved: bool  # every pushed-forward candidate kept its value
    paths_agree: bool
    argmin: tuple
    values: list  # (matrix, value) in sample order

    @property
    def field(self) -> str:
        return str(self.spec)


@dataclass
class GammaReport:
    gamma: tuple
    e: int
    levels: list = field(default_factory=list)
    samples: list = field(default_factory=list)
    notes: list = field(default_factory=list)

    @property
    def monotone(self) -> bool:
        bounds = [lv.bound for lv in self.levels]
        return all(b <= a for a, b in zip(bounds, bounds[1:]))

    @property
    def preserved(self) -> bool:
        return all(lv.preserved for lv in self.levels)

    @property
    def stabilized(self) -> bool:
        return len({lv.bound for lv in self.levels[-2:]}) == 1


def _rank_one_candidates(n, K, samples):
    from .artin import sample_socle_vectors

    if n == 1:
        return [((K.one,),)]
    return sample_socle_vectors(n, K, samples)


def gamma_report(
    R: LocalRingPresentation,
    I0,
    e: int,
    gamma,
    levels,
    *,
    samples=None,
    parallel: int = 1,
) -> GammaReport:
    """Sampled s^e bounds for R^(Gamma, L) at each requested level L.

    The candidate set at each level is the push-forward of the previous
    level's candidates plus the level's own default samples, so a bound can
    only drop if pushed-forward candidates keep their values.
    """
    gamma = tuple(gamma)
    levels = sorted(set(levels))
    report = GammaReport(gamma, e)
    report.notes.append(
        "level-L Gamma construction over a finite p-basis; the smallest cofinite "
        "Gamma is empty, so only monotonicity and stabilization are exhibited"
    )
    prev = None  # (level, presentation, candidate matrices, values)
    for level in levels:
        spec = BaseChangeSpec.gamma_level(gamma, level)
        S = base_change(R, spec)
        phi0 = field_map(R, spec)
        I0S = push_polys(R, S, phi0, I0)
        setup = prepare(S, I0S, e)
        K, n = S.spec, setup.soc.n
        pushed, pushed_values = [], []
        if prev is not None:
            plevel, PR, pmats, pvals = prev
            step = FieldMap(
                PR.spec,
                K,
                tuple(K.p ** (level - plevel) if t in gamma else 1 for t in R.spec.names)
                if gamma and plevel > 0
                else phi0.powers,
            )
            pushed = [step.matrix(M) for M in pmats]
            pushed_values = pvals
        native = _rank_one_candidates(n, K, samples)
        mats, seen = [], set()
        for M in pushed + native:
            key = row_space(M, K, n)
            if key not in seen:
                seen.add(key)
                mats.append(key)
        results = evaluate_all(setup, mats, parallel)
        by_key = {r.matrix: r for r in results}
        preserved = all(
            by_key[row_space(M, K, n)].value == v for M, v in zip(pushed, pushed_values)
        )
        bound = min(r.value for r in results)
        argmin = next(r.matrix for r in results if r.value == bound)
        report.levels.append(
            GammaLevel(
                level,
                K,
                bound,
                len(results),
                n == 1,
                preserved,
                all(r.agree for r in results),
                argmin,
                [(r.matrix, r.value) for r in results],
            )
        )
        prev = (level, S, [r.matrix for r in results], [r.value for r in results])
    base_samples = samples if samples is not None else default_samples(R.spec)
    report.samples = [R.spec.fmt(s) for s in base_samples]
    return report
