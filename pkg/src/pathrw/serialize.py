"""Self-contained JSON documents for derivations.

A document embeds the context declarations it needs, so it replays without
the original script. Terms are serialized in the script expression syntax;
recorded-step atoms have no script syntax, so documents cover terms built
from declarations (any term the front-end can produce).
"""

from __future__ import annotations

import json
from typing import Any

from .engine import Derivation, RewriteStep, replay_derivation
from .errors import PathRwError
from .lam import format_lambda
from .rules import rule_set
from .script import parse_lambda_expr, parse_path_expr
from .terms import Context, PathTerm, StepAtom, format_term, path_children

FORMAT_NAME = "pathrw-derivation"
FORMAT_VERSION = 1


def _reject_step_atoms(t: PathTerm) -> None:
    stack = [t]
    while stack:
        node = stack.pop()
        if isinstance(node, StepAtom):
            raise PathRwError("recorded-step atoms have no script syntax; cannot serialize")
        stack.extend(path_children(node))


def context_to_doc(ctx: Context) -> dict[str, Any]:
    return {
        "types": list(ctx.base_types),
        "elements": dict(ctx.elements),
        "lambdas": {name: format_lambda(value) for name, value in ctx.lambda_elements.items()},
        "atoms": {
            name: {
                "source": decl.source,
                "target": decl.target,
                "type": decl.type_name,
                "tag": decl.tag,
            }
            for name, decl in ctx.atoms.items()
        },
    }


def context_from_doc(doc: dict[str, Any]) -> Context:
    from .terms import AtomDecl

    ctx = Context(
        base_types=tuple(doc["types"]),
        elements=dict(doc["elements"]),
        lambda_elements={name: parse_lambda_expr(text) for name, text in doc.get("lambdas", {}).items()},
        atoms={
            name: AtomDecl(entry["source"], entry["target"], entry["type"], entry.get("tag", "declared"))
            for name, entry in doc["atoms"].items()
        },
    )
    ctx.check()
    return ctx


def derivation_to_doc(d: Derivation, ctx: Context, rules_name: str) -> dict[str, Any]:
    """Serialize a derivation with everything needed to replay it standalone."""
    _reject_step_atoms(d.start)
    for step in d.steps:
        _reject_step_atoms(step.before)
        _reject_step_atoms(step.after)
    return {
        "format": FORMAT_NAME,
        "version": FORMAT_VERSION,
        "rules": rules_name,
        "level": d.level,
        "context": context_to_doc(ctx),
        "start": format_term(d.start),
        "end": format_term(d.end),
        "steps": [
            {
                "rule": step.rule,
                "position": list(step.position),
                "direction": step.direction,
                "before": format_term(step.before),
                "after": format_term(step.after),
            }
            for step in d.steps
        ],
    }


def derivation_from_doc(doc: dict[str, Any]) -> tuple[Derivation, Context, str]:
    if doc.get("format") != FORMAT_NAME:
        raise PathRwError(f"not a {FORMAT_NAME} document")
    ctx = context_from_doc(doc["context"])
    lv = doc["level"]
    start = parse_path_expr(doc["start"], ctx)
    steps = tuple(
        RewriteStep(
            rule=entry["rule"],
            position=tuple(entry["position"]),
            direction=entry["direction"],
            before=parse_path_expr(entry["before"], ctx),
            after=parse_path_expr(entry["after"], ctx),
            level=lv,
        )
        for entry in doc["steps"]
    )
    return Derivation(start, steps, lv), ctx, doc["rules"]


def replay_document(doc: dict[str, Any]) -> bool:
    """Rebuild everything from the document alone and replay the derivation."""
    derivation, ctx, rules_name = derivation_from_doc(doc)
    end = parse_path_expr(doc["end"], ctx)
    if derivation.end != end:
        return False
    return replay_derivation(derivation, rule_set(rules_name), ctx)


def doc_to_json(doc: dict[str, Any]) -> str:
    return json.dumps(doc, indent=2)


def doc_from_json(text: str) -> dict[str, Any]:
    return json.loads(text)
