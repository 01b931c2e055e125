"""Execute instance-file tasks and produce report records."""

from __future__ import annotations

from dataclasses import dataclass, replace
from fractions import Fraction

from .artin import DEFAULT_BUDGET
from .errors import ParseError
from .extension import gamma_report
from .instance import InstanceFile, Task
from .report import matrix_json, rational
from .signature import (
    EQUIDIMENSIONAL_DISCLAIMER,
    HEURISTIC_INTERVAL,
    convergence_report,
    hk_function,
    parameter_warnings,
    prepare,
    s_rat_trunc,
    s_trunc_min,
)


@dataclass(frozen=True)
class RunOptions:
    """Command-line overrides; ``None`` falls back to the task line, then defaults."""

    e_max: int | None = None
    e: int | None = None
    order: str | None = None
    dim: int | None = None
    budget: int | None = None
    rank1_only: bool | None = None
    parallel: int | None = None
    samples: str | None = None
    gamma: str | None = None
    levels: str | None = None
    ideal: str | None = None
    emit_gb: object = None  # writable stream for --emit-gb

    def resolve(self, task: Task, key: str, default):
        attr = {"Gamma": "gamma"}.get(key, key)
        v = getattr(self, attr)
        if v is not None:
            return v
        return task.get(key, default)


def _flag(v) -> bool:
    if isinstance(v, bool):
        return v
    return str(v).lower() in ("1", "true", "yes", "on")


def _levels_of(task: Task, opts: RunOptions, e_default=2) -> list[int]:
    e = opts.resolve(task, "e", None)
    if e is not None:
        return [int(e)]
    e_max = int(opts.resolve(task, "e_max", e_default))
    if e_max < 1:
        raise ParseError("e_max must be at least 1")
    return list(range(1, e_max + 1))


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise ParseError(f"bad level list {text!r}") from None


def parse_samples(text: str | None, inst: InstanceFile):
    if text is None:
        return None
    ring = inst.ring
    out = []
    for piece in text.split(","):
        f = ring(piece.strip())
        if not f.is_constant():
            raise ParseError(f"sample {piece.strip()!r} is not a constant")
        out.append(f.constant_term())
    return out


def _emit_gb(opts, setup):
    if opts.emit_gb is None:
        return
    out = opts.emit_gb
    print(f"# e={setup.e} basis of J + I0", file=out)
    for g in setup.gb0:
        print(f"  {g}", file=out)
    print(f"# e={setup.e} basis of J + I0^[q]", file=out)
    for g in setup.gb0q:
        print(f"  {g}", file=out)


def _base_record(inst, task, e):
    return {
        "instance": inst.name or "instance",
        "task": task.kind,
        "ideal": task.ideals[0] if task.ideals else None,
        "e": e,
    }


def _dimension(R) -> dict:
    return {"value": R.dimension, "source": R.dimension_source}


def run_task(inst: InstanceFile, task: Task, opts: RunOptions = RunOptions()) -> list[dict]:
    if opts.ideal is not None:
        task = replace(task, ideals=(opts.ideal,))
    order = opts.resolve(task, "order", "grevlex")
    dim = opts.resolve(task, "dim", None)
    R = inst.presentation(order, None if dim is None else int(dim))
    if task.kind == "verify":
        from .verify import verify_instance

        return verify_instance(inst, task, opts)
    I0 = [g.with_ring(R.ring) for g in inst.ideal(task.ideals[0])]
    if task.kind == "hk":
        return _run_hk(inst, task, opts, R, I0)
    if task.kind == "gamma":
        return _run_gamma(inst, task, opts, R, I0)
    return _run_signature(inst, task, opts, R, I0)


def _run_hk(inst, task, opts, R, I):
    es = _levels_of(task, opts)
    hk = {h.e: h for h in hk_function(R, I, max(es))}
    warnings = [EQUIDIMENSIONAL_DISCLAIMER]
    if R.dimension_source == "user":
        warnings.append(f"dimension {R.dimension} supplied by the user")
    conv = convergence_report({e: hk[e].normalized for e in es}, R.p) if len(es) > 1 else None
    if conv is not None:
        warnings.append(HEURISTIC_INTERVAL)
    records = []
    for e in es:
        rec = _base_record(inst, task, e)
        rec.update(
            {
                "value": rational(hk[e].normalized),
                "length": hk[e].length,
                "argmin": [],
                "candidate_count": None,
                "paths_agree": None,
                "C_emp": rational(conv.C_emp) if conv else None,
                "limit_interval": [rational(x) for x in conv.limit_interval] if conv else None,
                "dimension": _dimension(R),
                "warnings": list(warnings),
            }
        )
        records.append(rec)
    return records


def _run_signature(inst, task, opts, R, I0):
    es = _levels_of(task, opts)
    budget = int(opts.resolve(task, "budget", DEFAULT_BUDGET))
    parallel = int(opts.resolve(task, "parallel", 1))
    rank1 = _flag(opts.resolve(task, "rank1_only", False))
    samples = parse_samples(opts.resolve(task, "samples", None), inst)
    base_warnings = parameter_warnings(R, I0) + [EQUIDIMENSIONAL_DISCLAIMER]
    results = {}
    for e in es:
        setup = prepare(R, I0, e)
        _emit_gb(opts, setup)
        if task.kind == "srat":
            res = s_rat_trunc(R, I0, e, budget, parallel=parallel, samples=samples, setup=setup)
        else:
            res = s_trunc_min(
                R, I0, e, budget, rank1_only=rank1, parallel=parallel, samples=samples, setup=setup
            )
        results[e] = res
    conv = None
    if len(es) > 1:
        conv = convergence_report({e: results[e].minimum for e in es}, R.p)
    records = []
    K = R.spec
    for e in es:
        res = results[e]
        rec = _base_record(inst, task, e)
        warnings = base_warnings + res.warnings
        if conv is not None:
            warnings = warnings + [HEURISTIC_INTERVAL]
        rec.update(
            {
                "value": rational(res.minimum),
                "argmin": matrix_json(res.argmin, K),
                "candidate_count": res.candidate_count,
                "paths_agree": res.paths_agree,
                "mode": res.mode,
                "socle_dimension": res.socle_dimension,
                "C_emp": rational(conv.C_emp) if conv else None,
                "limit_interval": [rational(x) for x in conv.limit_interval] if conv else None,
                "dimension": _dimension(R),
                "warnings": warnings,
            }
        )
        if task.kind == "srel" and res.exhaustive:
            rec["value_set"] = [rational(v) for v in res.value_set]
        if task.kind == "oracle-diff":
            rec["candidates"] = [
                {
                    "matrix": matrix_json(c.matrix, K),
                    "groebner": rational(c.value),
                    "rank": rational(c.rank_value),
                    "agree": c.agree,
                }
                for c in res.candidates
            ]
        records.append(rec)
    return records


def _run_gamma(inst, task, opts, R, I0):
    e = int(opts.resolve(task, "e", 1))
    gamma_text = opts.resolve(task, "Gamma", "")
    gamma = tuple(g.strip() for g in gamma_text.split(",") if g.strip())
    levels = _int_list(opts.resolve(task, "levels", "0,1"))
    samples = parse_samples(opts.resolve(task, "samples", None), inst)
    parallel = int(opts.resolve(task, "parallel", 1))
    rep = gamma_report(R, I0, e, gamma, levels, samples=samples, parallel=parallel)
    base_warnings = parameter_warnings(R, I0) + [EQUIDIMENSIONAL_DISCLAIMER] + rep.notes
    records = []
    for lv in rep.levels:
        rec = _base_record(inst, task, e)
        warnings = list(base_warnings)
        if not lv.exhaustive:
            warnings.append("sampled candidates: the value is an upper bound for s^e")
        rec.update(
            {
                "value": rational(lv.bound),
                "argmin": matrix_json(lv.argmin, lv.spec),
                "candidate_count": lv.candidate_count,
                "paths_agree": lv.paths_agree,
                "Gamma": list(gamma),
                "level": lv.level,
                "field": lv.field,
                "samples": rep.samples,
                "preserved": lv.preserved,
                "monotone": rep.monotone,
                "stabilized": rep.stabilized,
                "C_emp": None,
                "limit_interval": None,
                "dimension": _dimension(R),
                "warnings": warnings,
            }
        )
        records.append(rec)
    return records


def run_instance(inst: InstanceFile, opts: RunOptions = RunOptions()) -> list[dict]:
    if not inst.tasks:
        raise ParseError("instance has no task line")
    records = []
    for task in inst.tasks:
        records.extend(run_task(inst, task, opts))
    return records


def exact(d) -> Fraction:
    return Fraction(d["num"], d["den"])
