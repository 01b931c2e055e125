"""Line-oriented instance files.

    # comment
    name   cusp
    field  GF(2)
    ring   x y
    mod    y^2 + x^3
    ideal  I0 = x
    task   srel I0 e_max=2

``mod`` lines may repeat; generators on one line are comma separated.
"""

from __future__ import annotations

import re
from dataclasses import dataclass

from .errors import FrobsigError, InvalidFieldSpec, ParseError, UnknownIdeal
from .field import FieldSpec, parse_field
from .poly import GREVLEX, LEX, PolyRing, parse_polynomial

TASKS = ("hk", "srel", "srat", "gamma", "verify", "oracle-diff")

# number of ideal names each task takes (None: any)
TASK_ARITY = {"hk": 1, "srel": 1, "srat": 1, "gamma": 1, "verify": None, "oracle-diff": 1}

PARAMS = {
    "e_max": int,
    "e": int,
    "order": str,
    "dim": int,
    "budget": int,
    "samples": str,
    "Gamma": str,
    "levels": str,
    "rank1_only": str,
    "parallel": int,
}

_NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_]*$")


@dataclass(frozen=True)
class Task:
    kind: str
    ideals: tuple = ()
    params: tuple = ()  # sorted (key, raw string) pairs

    def get(self, key, default=None):
        for k, v in self.params:
            if k == key:
                return PARAMS[k](v)
        return default

    def __str__(self):
        parts = [self.kind, *self.ideals]
        parts += [f"{k}={v}" for k, v in self.params]
        return " ".join(parts)


@dataclass(frozen=True)
class InstanceFile:
    field: FieldSpec
    variables: tuple
    defining: tuple = ()
    ideals: tuple = ()  # (name, generators) pairs in declaration order
    tasks: tuple = ()
    name: str | None = None

    @property
    def ring(self) -> PolyRing:
        return PolyRing(self.field, self.variables)

    def ideal(self, name: str) -> tuple:
        for n, gens in self.ideals:
            if n == name:
                return gens
        raise UnknownIdeal(f"ideal {name!r} is not declared")

    def presentation(self, order="grevlex", dim=None):
        from .presentation import LocalRingPresentation

        ring = PolyRing(self.field, self.variables, order_from_name(order))
        defining = [f.with_ring(ring) for f in self.defining]
        return LocalRingPresentation.create(ring, defining, dim)


def order_from_name(name):
    if not isinstance(name, str):
        return name
    if name == "grevlex":
        return GREVLEX
    if name == "lex":
        return LEX
    raise ParseError(f"unknown monomial order {name!r}")


def _split_gens(text: str, start: int):
    """Yield (generator text, column offset) for a comma-separated list."""
    pos = 0
    for piece in text.split(","):
        lead = len(piece) - len(piece.lstrip())
        if piece.strip():
            yield piece.strip(), start + pos + lead
        pos += len(piece) + 1


def _parse_gens(text, start, ring, lineno):
    out = []
    for g, off in _split_gens(text, start):
        try:
            out.append(parse_polynomial(g, ring, lineno))
        except ParseError as exc:
            col = None if exc.column is None else exc.column + off
            msg = str(exc).split(": ", 1)[-1]
            raise type(exc)(msg, lineno, col) from None
    return tuple(out)


def parse_instance(text: str) -> InstanceFile:
    K = None
    variables = None
    defining: list = []
    ideals: list = []
    tasks: list = []
    name = None
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].rstrip()
        if not line.strip():
            continue
        indent = len(line) - len(line.lstrip())
        word, _, rest = line.strip().partition(" ")
        rest_start = indent + len(word) + 1 + (len(rest) - len(rest.lstrip()))
        rest = rest.strip()
        col = rest_start + 1

        if word == "field":
            if K is not None:
                raise ParseError("duplicate field line", lineno, indent + 1)
            try:
                K = parse_field(rest)
            except InvalidFieldSpec as exc:
                raise ParseError(str(exc), lineno, col) from None
        elif word == "ring":
            if variables is not None:
                raise ParseError("duplicate ring line", lineno, indent + 1)
            names = tuple(v for v in re.split(r"[\s,]+", rest) if v)
            for v in names:
                if not _NAME_RE.match(v):
                    raise ParseError(f"bad variable name {v!r}", lineno, col)
            if not names or len(set(names)) != len(names):
                raise ParseError("ring needs distinct variable names", lineno, col)
            variables = names
        elif word == "name":
            name = rest
        elif word in ("mod", "ideal"):
            if K is None or variables is None:
                raise ParseError(f"'{word}' before field and ring", lineno, indent + 1)
            try:
                ring = PolyRing(K, variables)
            except (ValueError, FrobsigError) as exc:
                raise ParseError(str(exc), lineno, indent + 1) from None
            if word == "mod":
                defining.extend(_parse_gens(rest, rest_start, ring, lineno))
            else:
                lhs, eq, rhs = rest.partition("=")
                iname = lhs.strip()
                if not eq or not _NAME_RE.match(iname):
                    raise ParseError("expected 'ideal NAME = generators'", lineno, col)
                if any(n == iname for n, _ in ideals):
                    raise ParseError(f"ideal {iname!r} declared twice", lineno, col)
                off = rest_start + len(lhs) + 1
                gens = _parse_gens(rhs, off, ring, lineno)
                if not gens:
                    raise ParseError(f"ideal {iname!r} has no generators", lineno, col)
                ideals.append((iname, gens))
        elif word == "task":
            tasks.append((_parse_task(rest, lineno, col), lineno, col))
        else:
            raise ParseError(f"unknown keyword {word!r}", lineno, indent + 1)

    if K is None:
        raise ParseError("missing field line")
    if variables is None:
        raise ParseError("missing ring line")
    declared = {n for n, _ in ideals}
    for task, lineno, col in tasks:
        for ref in task.ideals:
            if ref not in declared:
                raise UnknownIdeal(f"task refers to undeclared ideal {ref!r}", lineno, col)
    return InstanceFile(
        K, variables, tuple(defining), tuple(ideals), tuple(t for t, *_ in tasks), name
    )


def _parse_task(text: str, lineno: int, col: int) -> Task:
    words = text.split()
    if not words:
        raise ParseError("empty task", lineno, col)
    kind = words[0]
    if kind not in TASKS:
        raise ParseError(f"unknown task {kind!r}", lineno, col)
    refs, params = [], {}
    for w in words[1:]:
        if "=" in w:
            k, v = w.split("=", 1)
            if k not in PARAMS:
                raise ParseError(f"unknown task parameter {k!r}", lineno, col)
            try:
                PARAMS[k](v)
            except ValueError:
                raise ParseError(f"bad value for {k}: {v!r}", lineno, col) from None
            params[k] = v
        else:
            refs.append(w)
    arity = TASK_ARITY[kind]
    if arity is not None and len(refs) != arity:
        raise ParseError(f"task {kind} takes {arity} ideal name(s)", lineno, col)
    return Task(kind, tuple(refs), tuple(sorted(params.items())))


def format_instance(inst: InstanceFile) -> str:
    lines = []
    if inst.name:
        lines.append(f"name {inst.name}")
    lines.append(f"field {inst.field}")
    lines.append("ring " + " ".join(inst.variables))
    if inst.defining:
        lines.append("mod " + ", ".join(str(f) for f in inst.defining))
    for n, gens in inst.ideals:
        lines.append(f"ideal {n} = " + ", ".join(str(g) for g in gens))
    for t in inst.tasks:
        lines.append(f"task {t}")
    return "\n".join(lines) + "\n"


def load_instance(path) -> InstanceFile:
    with open(path, encoding="utf-8") as fh:
        return parse_instance(fh.read())
