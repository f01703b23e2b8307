"""Shared fixtures: contexts, term enumerators, hypothesis strategies."""

from __future__ import annotations

import itertools

import pytest
from hypothesis import settings, strategies as st

from pathrw.lam import Abs, App, Var
from pathrw.terms import Atom, AtomDecl, Context, Object, Refl, Sym, Trans, endpoints

settings.register_profile("suite", deadline=None, max_examples=60)
settings.load_profile("suite")


@pytest.fixture
def ctx_r() -> Context:
    """One atom r: a = b."""
    return Context(("A",), {"a": "A", "b": "A"}, {}, {"r": AtomDecl("a", "b", "A")})


@pytest.fixture
def ctx_rs() -> Context:
    """Two chained atoms r: a = b, s: b = c."""
    return Context(
        ("A",),
        {"a": "A", "b": "A", "c": "A"},
        {},
        {"r": AtomDecl("a", "b", "A"), "s": AtomDecl("b", "c", "A")},
    )


@pytest.fixture
def ctx_fan() -> Context:
    """Two atoms out of a: r: a = b, s: a = c (types the inverse-pair peak)."""
    return Context(
        ("A",),
        {"a": "A", "b": "A", "c": "A"},
        {},
        {"r": AtomDecl("a", "b", "A"), "s": AtomDecl("a", "c", "A")},
    )


@pytest.fixture
def ctx_chain4() -> Context:
    """Three chained atoms for three-factor compositions."""
    return Context(
        ("A",),
        {"a": "A", "b": "A", "c": "A", "d": "A"},
        {},
        {
            "t0": AtomDecl("a", "b", "A"),
            "r0": AtomDecl("b", "c", "A"),
            "s0": AtomDecl("c", "d", "A"),
        },
    )


@pytest.fixture
def ctx_lam() -> Context:
    """Lambda-valued elements for congruence formers and tagged atoms."""
    return Context(
        ("F",),
        {"m": "F", "n": "F"},
        {"m": Abs("x", Var("x")), "n": Abs("y", Var("y"))},
        {"al": AtomDecl("m", "n", "F", "alpha")},
    )


def raw_trees(leaves, max_size):
    """Every tree over Sym/Trans and the given leaves, well-formed or not."""
    by_size = [[] for _ in range(max_size + 1)]
    if max_size >= 1:
        by_size[1] = list(leaves)
    for k in range(2, max_size + 1):
        by_size[k].extend(Sym(t) for t in by_size[k - 1])
        for i in range(1, k - 1):
            for left in by_size[i]:
                for right in by_size[k - 1 - i]:
                    by_size[k].append(Trans(left, right))
    return itertools.chain.from_iterable(by_size[1:])


def term_strategy(ctx: Context, max_depth: int = 4):
    """Hypothesis strategy for well-formed level-1 terms over ``ctx``."""
    leaves = [Atom(name) for name in ctx.atoms]
    leaves += [Refl(Object(0, name)) for name in ctx.elements]

    def extend(children):
        sym = children.map(Sym)
        paired = st.tuples(children, children).filter(
            lambda pair: endpoints(pair[0], ctx)[1] == endpoints(pair[1], ctx)[0]
        )
        return st.one_of(sym, paired.map(lambda pair: Trans(*pair)))

    return st.recursive(st.sampled_from(leaves), extend, max_leaves=max_depth * 2)


def lambda_terms_up_to(depth: int, names=("x", "y")):
    """All lambda terms of nesting depth <= depth over the given names."""
    levels = [[], [Var(name) for name in names]]
    for d in range(2, depth + 1):
        prev = [t for lvl in levels[1:d] for t in lvl]
        prev_exact = levels[d - 1]
        new = []
        for t in prev_exact:
            new.extend(Abs(name, t) for name in names)
        for left, right in itertools.product(prev, prev):
            if max(_lam_depth(left), _lam_depth(right)) == d - 1:
                new.append(App(left, right))
        levels.append(new)
    return [t for lvl in levels[1:] for t in lvl]


def _lam_depth(t) -> int:
    match t:
        case Var(_):
            return 1
        case Abs(_, body):
            return 1 + _lam_depth(body)
        case App(func, arg):
            return 1 + max(_lam_depth(func), _lam_depth(arg))
    raise TypeError
