"""Invariant suites run by ``frobsig verify`` over instance files."""

from __future__ import annotations

import math
from importlib import resources
from pathlib import Path

from .artin import DEFAULT_BUDGET, count_subspaces
from .errors import FrobsigError
from .extension import BaseChangeSpec, base_change, field_map, flat_invariance_check, gamma_report
from .field import FunctionField, PrimeField
from .instance import InstanceFile, Task, load_instance

FLAT_SUBSPACE_LIMIT = 600


def corpus_paths() -> list[Path]:
    root = resources.files("frobsig") / "corpus"
    return sorted(Path(str(p)) for p in root.iterdir() if p.name.endswith(".inst"))


def _check(inst, ideal, name, passed, detail=""):
    return {
        "instance": inst.name or "instance",
        "task": "verify",
        "ideal": ideal,
        "check": name,
        "passed": bool(passed),
        "detail": detail,
    }


def verify_ideal(R, inst: InstanceFile, ideal: str, e_max: int, budget: int, parallel: int):
    """Run every applicable invariant on (R, I_0) for e = 1..e_max."""
    from .signature import (
        hk_function,
        minimizer_closure_check,
        prepare,
        s_rat_trunc,
        s_trunc_min,
    )

    I0 = [g.with_ring(R.ring) for g in inst.ideal(ideal)]
    out = []
    K = R.spec
    p, d = R.p, R.dimension

    hk = hk_function(R, I0, e_max)
    lengths = [h.length for h in hk]
    out.append(
        _check(
            inst, ideal, "hk_monotone",
            all(a <= b for a, b in zip(lengths, lengths[1:])),
            f"lengths {lengths}",
        )
    )
    # a redundant generator must not change any bracket-power colength
    extra = I0 + [I0[0] * R.ring.var(R.variables[0]) + I0[-1]]
    hk2 = [h.length for h in hk_function(R, extra, e_max)]
    out.append(_check(inst, ideal, "generator_independence", hk2 == lengths, f"{hk2}"))

    l0 = lengths[0]
    for e in range(1, e_max + 1):
        setup = prepare(R, I0, e)
        res = s_trunc_min(R, I0, e, budget, parallel=parallel, setup=setup)
        tag = f"e={e}"
        out.append(
            _check(
                inst, ideal, f"dual_path[{tag}]", res.paths_agree,
                f"{res.candidate_count} candidates",
            )
        )
        bound = math.factorial(l0) * p ** (e * d)
        grid = all(
            0 <= c.value <= setup.l0q and bound % c.value.denominator == 0
            for c in res.candidates
        )
        out.append(_check(inst, ideal, f"grid_membership[{tag}]", grid))
        if not R.defining:
            ok = all(c.value == 1 for c in res.candidates)
            out.append(_check(inst, ideal, f"regular_unit[{tag}]", ok, f"min {res.minimum}"))
        rat = s_rat_trunc(R, I0, e, budget, parallel=parallel, setup=setup)
        out.append(
            _check(
                inst, ideal, f"subset_bound[{tag}]", rat.minimum >= res.minimum,
                f"s_rat {rat.minimum} >= s {res.minimum}",
            )
        )
        if res.exhaustive:
            cert = minimizer_closure_check(R, I0, e, budget, result=res)
            out.append(
                _check(
                    inst, ideal, f"minimizer_closure[{tag}]", cert.passed,
                    f"{len(cert.minimizers)} minimizers, {cert.pairs_checked} pairs",
                )
            )
        if isinstance(K, PrimeField) and e == 1:
            spec = BaseChangeSpec.extend(2)
            n = res.socle_dimension
            if count_subspaces(n, p * p) <= FLAT_SUBSPACE_LIMIT:
                cert = flat_invariance_check(R, I0, e, spec, budget, parallel=parallel)
                out.append(
                    _check(
                        inst, ideal, f"flat_invariance[{tag}]", cert.passed,
                        f"min {cert.source.minimum} vs {cert.target.minimum}",
                    )
                )
            S = base_change(R, spec)
            phi = field_map(R, spec)
            I0S = [g.map_coefficients(S.ring, phi) for g in I0]
            same = [h.length for h in hk_function(S, I0S, e_max)] == lengths
            out.append(_check(inst, ideal, "base_change_colengths", same))
        if isinstance(K, FunctionField) and e == 1:
            gamma = K.names
            rep = gamma_report(R, I0, e, gamma, [0, 1], parallel=parallel)
            ok = rep.preserved and rep.monotone
            trail = " -> ".join(str(lv.bound) for lv in rep.levels)
            out.append(_check(inst, ideal, "gamma_monotone", ok, trail))
            triv = gamma_report(R, I0, e, (), [0, 1, 2], parallel=parallel)
            vals = [[v for _, v in lv.values] for lv in triv.levels]
            out.append(
                _check(inst, ideal, "gamma_empty_identity", all(v == vals[0] for v in vals))
            )
    return out


def verify_instance(inst: InstanceFile, task: Task | None = None, opts=None) -> list[dict]:
    from .runner import RunOptions

    opts = opts or RunOptions()
    task = task or Task("verify")
    e_max = int(opts.resolve(task, "e_max", 1))
    budget = int(opts.resolve(task, "budget", DEFAULT_BUDGET))
    parallel = int(opts.resolve(task, "parallel", 1))
    order = opts.resolve(task, "order", "grevlex")
    dim = opts.resolve(task, "dim", None)
    R = inst.presentation(order, None if dim is None else int(dim))
    names = task.ideals or tuple(n for n, _ in inst.ideals)
    out = []
    for name in names:
        try:
            out.extend(verify_ideal(R, inst, name, e_max, budget, parallel))
        except FrobsigError as exc:
            out.append(_check(inst, name, "error", False, f"{type(exc).__name__}: {exc}"))
    return out


def verify_corpus(paths=None, opts=None) -> list[dict]:
    out = []
    for path in paths or corpus_paths():
        inst = load_instance(path)
        out.extend(verify_instance(inst, None, opts))
    return out


def all_passed(records) -> bool:
    return all(r["passed"] for r in records)

