"""Rewrite-rule schemas as data.

The seven redundancy-removal rules over rho/sigma/tau, pattern matching
against subterms, instantiation of the same schemas at every tower level,
and a printable natural-deduction derivation for each rule.

The optional "groupoid-complete" set adds three derivable rules (each is
equationally reachable from the seven, witnessed in the test suite) so that
normal forms become canonical; the seven alone are not confluent.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, replace
from typing import TypeAlias, Union

from .errors import UnknownRule
from .terms import (
    Context,
    PathTerm,
    Position,
    Refl,
    Sym,
    Trans,
    endpoints,
    level,
    path_children,
)


@dataclass(frozen=True, slots=True)
class PVar:
    """Pattern metavariable; matches any subterm, nonlinearly."""

    name: str


@dataclass(frozen=True, slots=True)
class PRefl:
    """Matches a reflexivity node, binding its object."""

    obj_var: str


@dataclass(frozen=True, slots=True)
class PSym:
    body: Pattern


@dataclass(frozen=True, slots=True)
class PTrans:
    left: Pattern
    right: Pattern


@dataclass(frozen=True, slots=True)
class RReflAtSource:
    """Template: reflexivity at the source of the term bound to ``var``."""

    var: str


@dataclass(frozen=True, slots=True)
class RReflAtTarget:
    """Template: reflexivity at the target of the term bound to ``var``."""

    var: str


Pattern: TypeAlias = Union[PVar, PRefl, PSym, PTrans]
Template: TypeAlias = Union[PVar, PRefl, PSym, PTrans, RReflAtSource, RReflAtTarget]

Binding: TypeAlias = "dict[str, object]"


def match_pattern(pattern: Pattern, t: PathTerm, binding: Binding | None = None) -> Binding | None:
    """Match ``pattern`` against ``t``; returns the binding or None."""
    if binding is None:
        binding = {}
    match pattern:
        case PVar(name):
            seen = binding.get(name)
            if seen is None:
                binding[name] = t
                return binding
            return binding if seen == t else None
        case PRefl(obj_var):
            if not isinstance(t, Refl):
                return None
            seen = binding.get(obj_var)
            if seen is None:
                binding[obj_var] = t.obj
                return binding
            return binding if seen == t.obj else None
        case PSym(body):
            if not isinstance(t, Sym):
                return None
            return match_pattern(body, t.body, binding)
        case PTrans(left, right):
            if not isinstance(t, Trans):
                return None
            inner = match_pattern(left, t.left, binding)
            if inner is None:
                return None
            return match_pattern(right, t.right, inner)
    raise TypeError(f"not a pattern: {pattern!r}")


def build_template(template: Template, binding: Binding, ctx: Context) -> PathTerm:
    """Instantiate a right-hand-side template under a binding."""
    match template:
        case PVar(name):
            return binding[name]
        case PRefl(obj_var):
            return Refl(binding[obj_var])
        case PSym(body):
            return Sym(build_template(body, binding, ctx))
        case PTrans(left, right):
            return Trans(build_template(left, binding, ctx), build_template(right, binding, ctx))
        case RReflAtSource(var):
            src, _ = endpoints(binding[var], ctx)
            return Refl(src)
        case RReflAtTarget(var):
            _, tgt = endpoints(binding[var], ctx)
            return Refl(tgt)
    raise TypeError(f"not a template: {template!r}")


@dataclass(frozen=True, slots=True)
class RuleSchema:
    """One rewrite rule: a left pattern, a right template, and a level tag.

    The pattern is level-uniform; the level tag names the instantiation and
    suffixes the rule name from level 2 up.
    """

    name: str
    lhs: Pattern
    rhs: Template
    level: int = 1
    extension: bool = False

    @property
    def display_name(self) -> str:
        return self.name if self.level == 1 else f"{self.name}{self.level}"


def instantiate_at_level(schema: RuleSchema, n: int) -> RuleSchema:
    """The same schema acting on level-n terms; identity at level 1."""
    if n < 1:
        raise ValueError("levels start at 1")
    if n == schema.level:
        return schema
    return replace(schema, level=n)


def _pattern_head(pattern: Pattern) -> type | None:
    """Term class a pattern can match at its root, or None for metavariables."""
    match pattern:
        case PSym():
            return Sym
        case PTrans():
            return Trans
        case PRefl():
            return Refl
        case _:
            return None


_R, _S, _T = PVar("r"), PVar("s"), PVar("t")
_X = PRefl("x")

SR = RuleSchema("sr", PSym(_X), _X)
SS = RuleSchema("ss", PSym(PSym(_R)), _R)
TR = RuleSchema("tr", PTrans(_R, PSym(_R)), RReflAtSource("r"))
TSR = RuleSchema("tsr", PTrans(PSym(_R), _R), RReflAtTarget("r"))
TRR = RuleSchema("trr", PTrans(_R, _X), _R)
TLR = RuleSchema("tlr", PTrans(_X, _R), _R)
TT = RuleSchema("tt", PTrans(PTrans(_T, _R), _S), PTrans(_T, PTrans(_R, _S)))

# Derivable extensions: inverse distribution over composition and the two
# chain cancellations. Not independent rules; each has a seven-rule witness.
ST = RuleSchema("st", PSym(PTrans(_R, _S)), PTrans(PSym(_S), PSym(_R)), extension=True)
TRC = RuleSchema("trc", PTrans(_R, PTrans(PSym(_R), _T)), _T, extension=True)
TSRC = RuleSchema("tsrc", PTrans(PSym(_R), PTrans(_R, _T)), _T, extension=True)


@dataclass(frozen=True, slots=True)
class RuleSet:
    """An ordered collection of rule schemas."""

    name: str
    schemas: tuple[RuleSchema, ...]

    def find(self, rule_name: str, at_level: int) -> RuleSchema:
        """Resolve a rule name, bare or level-suffixed, at the given level."""
        base, suffix = _split_rule_name(rule_name)
        if suffix is not None and suffix != at_level:
            raise UnknownRule(f"rule '{rule_name}' is pinned to level {suffix}, not {at_level}")
        for schema in self.schemas:
            if schema.name == base:
                return instantiate_at_level(schema, at_level)
        raise UnknownRule(f"no rule named '{rule_name}' in rule set '{self.name}'")



def _split_rule_name(rule_name: str) -> tuple[str, int | None]:
    m = re.fullmatch(r"([a-z]+)(\d+)?", rule_name)
    if m is None:
        raise UnknownRule(f"malformed rule name '{rule_name}'")
    return m.group(1), int(m.group(2)) if m.group(2) else None


PAPER7 = RuleSet("paper7", (SR, SS, TR, TSR, TLR, TRR, TT))
GROUPOID_COMPLETE = RuleSet("groupoid-complete", PAPER7.schemas + (ST, TRC, TSRC))

RULE_SETS = {rs.name: rs for rs in (PAPER7, GROUPOID_COMPLETE)}


def rule_set(name: str) -> RuleSet:
    try:
        return RULE_SETS[name]
    except KeyError:
        raise UnknownRule(f"no rule set named '{name}'") from None


# Grouping cache keyed by rule-set identity; holding the rule set itself
# keeps ids stable. Deep-hashing the rule set per lookup would dominate
# normalization time.
_HEAD_CACHE: dict[int, tuple[RuleSet, dict]] = {}


def _schemas_by_head(rs: RuleSet) -> dict:
    """Rule-set schemas keyed by root term class, rule-set order preserved."""
    entry = _HEAD_CACHE.get(id(rs))
    if entry is not None and entry[0] is rs:
        return entry[1]
    grouped: dict = {}
    for head in (Sym, Trans, Refl, None):
        grouped[head] = tuple(
            schema for schema in rs.schemas if _pattern_head(schema.lhs) in (head, None)
        )
    _HEAD_CACHE[id(rs)] = (rs, grouped)
    return grouped


def _candidates(rs: RuleSet, node: PathTerm) -> tuple[RuleSchema, ...]:
    grouped = _schemas_by_head(rs)
    candidates = grouped.get(type(node))
    return candidates if candidates is not None else grouped[None]


def match_redexes(rs: RuleSet, t: PathTerm) -> list[tuple[str, Position]]:
    """All (rule name, position) pairs where a schema matches, innermost first.

    Positions are enumerated leftmost-innermost; at one position the rules
    keep the rule set's order. An empty list means ``t`` is a normal form.
    Schemas apply at the term's own level; names carry the level suffix.
    """
    lv = level(t)
    found: list[tuple[str, Position]] = []

    def go(node: PathTerm, pos: Position) -> None:
        for i, child in enumerate(path_children(node)):
            go(child, pos + (i,))
        for schema in _candidates(rs, node):
            if match_pattern(schema.lhs, node) is not None:
                found.append((instantiate_at_level(schema, lv).display_name, pos))

    go(t, ())
    return found


def first_redex(
    t: PathTerm, rs: RuleSet, strategy: str = "leftmost-innermost"
) -> tuple[RuleSchema, Position, Binding] | None:
    """First matching (schema, position, binding) under the strategy, or None.

    The schema comes back instantiated at the term's level.
    """
    innermost = strategy == "leftmost-innermost"
    if not innermost and strategy != "leftmost-outermost":
        raise ValueError(f"unknown strategy '{strategy}'")

    def here(node: PathTerm) -> tuple[RuleSchema, Position, Binding] | None:
        for schema in _candidates(rs, node):
            binding = match_pattern(schema.lhs, node)
            if binding is not None:
                return schema, (), binding
        return None

    def go(node: PathTerm) -> tuple[RuleSchema, Position, Binding] | None:
        if not innermost:
            found = here(node)
            if found is not None:
                return found
        for i, child in enumerate(path_children(node)):
            found = go(child)
            if found is not None:
                schema, pos, binding = found
                return schema, (i,) + pos, binding
        return here(node) if innermost else None

    found = go(t)
    if found is None:
        return None
    schema, pos, binding = found
    return instantiate_at_level(schema, level(t)), pos, binding


_EXPLANATIONS = {
    "sr": """\
sr: sigma(rho) |> rho

    x ={rho} x : A
    --------------------- (sigma)
    x ={sigma(rho)} x : A

  |>sr   x ={rho} x : A
""",
    "ss": """\
ss: sigma(sigma(r)) |> r

    x ={r} y : A
    --------------------- (sigma)
    y ={sigma(r)} x : A
    ---------------------------- (sigma)
    x ={sigma(sigma(r))} y : A

  |>ss   x ={r} y : A
""",
    "tr": """\
tr: tau(r, sigma(r)) |> rho

    x ={r} y : A        y ={sigma(r)} x : A
    ----------------------------------------- (tau)
    x ={tau(r, sigma(r))} x : A

  |>tr   x ={rho} x : A
""",
    "tsr": """\
tsr: tau(sigma(r), r) |> rho

    y ={sigma(r)} x : A        x ={r} y : A
    ----------------------------------------- (tau)
    y ={tau(sigma(r), r)} y : A

  |>tsr   y ={rho} y : A
""",
    "trr": """\
trr: tau(r, rho) |> r

    x ={r} y : A        y ={rho} y : A
    ------------------------------------ (tau)
    x ={tau(r, rho)} y : A

  |>trr   x ={r} y : A
""",
    "tlr": """\
tlr: tau(rho, r) |> r

    x ={rho} x : A        x ={r} y : A
    ------------------------------------ (tau)
    x ={tau(rho, r)} y : A

  |>tlr   x ={r} y : A
""",
    "tt": """\
tt: tau(tau(t, r), s) |> tau(t, tau(r, s))

    x ={t} y : A        y ={r} w : A
    ---------------------------------- (tau)
    x ={tau(t, r)} w : A                        w ={s} z : A
    --------------------------------------------------------- (tau)
    x ={tau(tau(t, r), s)} z : A

  |>tt

                        y ={r} w : A        w ={s} z : A
                        ---------------------------------- (tau)
    x ={t} y : A        y ={tau(r, s)} z : A
    ------------------------------------------------- (tau)
    x ={tau(t, tau(r, s))} z : A
""",
}


def explain_rule(name: str) -> str:
    """The natural-deduction derivation behind one of the seven rules."""
    try:
        return _EXPLANATIONS[name]
    except KeyError:
        raise UnknownRule(f"no derivation recorded for rule '{name}'") from None
