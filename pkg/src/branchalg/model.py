"""Uniform term evaluation and law checking over any model.

A ModelHandle packages the operations of a concrete algebra (the tree-relation
model or a finite algebra given by atom tables).  Laws are universally
quantified implications between term equations; they are checked semantically,
either over every assignment (finite models) or over seeded samples.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass
from typing import Any, Callable

from . import terms
from .terms import Term

EXHAUSTIVE_CAP = 1 << 20


class ModelError(Exception):
    pass


class UnboundVariableError(ModelError):
    pass


class UnsupportedOperatorError(ModelError):
    pass


class StrategyUnavailableError(ModelError):
    pass


@dataclass
class ModelHandle:
    name: str
    meet: Callable[[Any, Any], Any]
    comp: Callable[[Any, Any], Any]
    conv: Callable[[Any], Any]
    zero: Any
    top: Any
    ident: Any
    equal: Callable[[Any, Any], bool]
    leq: Callable[[Any, Any], bool]
    join: Callable[[Any, Any], Any] | None = None
    compl: Callable[[Any], Any] | None = None
    gen_a: Any = None
    gen_b: Any = None
    elements: Callable[[], list] | None = None
    sample_pool: Callable[[], list] | None = None
    format_element: Callable[[Any], str] = repr


def eval_term(m: ModelHandle, t: Term, env: dict[str, Any]) -> Any:
    """Homomorphic evaluation of a term under a variable assignment.

    The generator symbols resolve through the environment first ("a"/"b"
    entries), falling back to the model's distinguished generators.
    """
    return _compile(t, m)(env)


def _compile(t: Term, m: ModelHandle):
    """Build a closure evaluating t; avoids re-dispatching on node types in
    inner assignment loops."""
    if isinstance(t, terms.Zero):
        z = m.zero
        return lambda env: z
    if isinstance(t, terms.Top):
        top = m.top
        return lambda env: top
    if isinstance(t, terms.Id):
        e = m.ident
        return lambda env: e
    if isinstance(t, terms.GenA):
        ga = m.gen_a
        if ga is None:
            return lambda env: _lookup(env, "a")
        return lambda env: env["a"] if "a" in env else ga
    if isinstance(t, terms.GenB):
        gb = m.gen_b
        if gb is None:
            return lambda env: _lookup(env, "b")
        return lambda env: env["b"] if "b" in env else gb
    if isinstance(t, terms.Var):
        name = t.name
        return lambda env: _lookup(env, name)
    if isinstance(t, terms.Conv):
        f = _compile(t.child, m)
        cv = m.conv
        return lambda env: cv(f(env))
    if isinstance(t, terms.Comp):
        fl, fr = _compile(t.left, m), _compile(t.right, m)
        op = m.comp
        return lambda env: op(fl(env), fr(env))
    if isinstance(t, terms.Meet):
        fl, fr = _compile(t.left, m), _compile(t.right, m)
        op = m.meet
        return lambda env: op(fl(env), fr(env))
    if isinstance(t, terms.Join):
        if m.join is None:
            raise UnsupportedOperatorError(f"model {m.name} has no join")
        fl, fr = _compile(t.left, m), _compile(t.right, m)
        op = m.join
        return lambda env: op(fl(env), fr(env))
    if isinstance(t, terms.Compl):
        if m.compl is None:
            raise UnsupportedOperatorError(f"model {m.name} has no complement")
        f = _compile(t.child, m)
        op = m.compl
        return lambda env: op(f(env))
    raise TypeError(f"not a term: {t!r}")


def _lookup(env: dict[str, Any], name: str):
    try:
        return env[name]
    except KeyError:
        raise UnboundVariableError(f"unbound variable {name!r}") from None


Relation = tuple[Term, str, Term]  # middle component "=" or "<="


@dataclass(frozen=True)
class Law:
    """A named universally quantified hypotheses => conclusions schema."""

    id: str
    variables: tuple[str, ...]
    hypotheses: tuple[Relation, ...]
    conclusions: tuple[Relation, ...]
    signature: str = "J"  # "J" or "RA"
    theorem: bool = True  # False for formulas that are known to fail somewhere
    part: str = "II"
    note: str = ""

    def __post_init__(self):
        declared = set(self.variables)
        for lhs, op, rhs in self.hypotheses + self.conclusions:
            if op not in ("=", "<="):
                raise ValueError(f"law {self.id}: bad relation {op!r}")
            undeclared = (terms.free_vars(lhs) | terms.free_vars(rhs)) - declared
            if undeclared:
                raise ValueError(f"law {self.id}: undeclared variables {undeclared}")
            if self.signature == "J" and not (
                terms.is_j_term(lhs) and terms.is_j_term(rhs)
            ):
                raise ValueError(f"law {self.id}: union/complement in a J law")

    def quantified_variables(self, m: ModelHandle) -> tuple[str, ...]:
        """Variables to range over in the given model: the declared ones plus
        the generator symbols when the model does not fix them."""
        out = list(self.variables)
        if m.gen_a is None and self._mentions_generators():
            out += ["a", "b"]
        return tuple(out)

    def _mentions_generators(self) -> bool:
        return any(
            terms.mentions_generators(lhs) or terms.mentions_generators(rhs)
            for lhs, _, rhs in self.hypotheses + self.conclusions
        )


@dataclass
class LawReport:
    law_id: str
    strategy: str
    tested: int
    passed: bool
    counterexample: dict[str, str] | None = None
    note: str = ""

    def line(self) -> str:
        out = f"LAW {self.law_id} {'pass' if self.passed else 'fail'} tested={self.tested}"
        if self.counterexample:
            assign = ";".join(f"{k}={v}" for k, v in sorted(self.counterexample.items()))
            out += f" [counterexample: {assign}]"
        return out


@dataclass(frozen=True)
class Exhaustive:
    cap: int = EXHAUSTIVE_CAP


@dataclass(frozen=True)
class Sample:
    n: int = 200
    seed: int = 0


def check_law(m: ModelHandle, law: Law, strategy) -> LawReport:
    """Test a law over assignments; pass means no tested assignment satisfies
    every hypothesis while violating a conclusion."""
    names = law.quantified_variables(m)
    if not names:
        strategy = Exhaustive()
    if isinstance(strategy, Exhaustive):
        if not names:
            assignments = [()]
            label = "exhaustive"
            return _run_assignments(m, law, names, assignments, label)
        if m.elements is None:
            raise StrategyUnavailableError(
                f"model {m.name} has no element iterator for exhaustive checking"
            )
        elems = list(m.elements())
        total = len(elems) ** len(names) if names else 1
        if total > strategy.cap:
            raise StrategyUnavailableError(
                f"law {law.id}: {total} assignments exceed the exhaustive cap"
            )
        assignments = itertools.product(elems, repeat=len(names))
        label = "exhaustive"
    elif isinstance(strategy, Sample):
        if m.sample_pool is None:
            raise StrategyUnavailableError(f"model {m.name} has no sample pool")
        pool = list(m.sample_pool())
        rng = random.Random(strategy.seed)
        assignments = (
            tuple(rng.choice(pool) for _ in names) for _ in range(strategy.n)
        )
        label = f"sample(n={strategy.n},seed={strategy.seed})"
    else:
        raise ValueError(f"unknown strategy {strategy!r}")
    return _run_assignments(m, law, names, assignments, label)


def _run_assignments(m, law, names, assignments, label) -> LawReport:
    hyps = [(_compile(l, m), op, _compile(r, m)) for l, op, r in law.hypotheses]
    concls = [(_compile(l, m), op, _compile(r, m)) for l, op, r in law.conclusions]
    rel = {"=": m.equal, "<=": m.leq}

    tested = 0
    for values in assignments:
        tested += 1
        env = dict(zip(names, values))
        if all(rel[op](fl(env), fr(env)) for fl, op, fr in hyps):
            for fl, op, fr in concls:
                if not rel[op](fl(env), fr(env)):
                    ce = {k: m.format_element(v) for k, v in env.items()}
                    return LawReport(law.id, label, tested, False, ce)
    return LawReport(law.id, label, tested, True)


def is_functional(m: ModelHandle, e) -> bool:
    """conv(e);e stays below the identity."""
    return m.leq(m.comp(m.conv(e), e), m.ident)


def is_permutational(m: ModelHandle, e) -> bool:
    """conv(e);e and e;conv(e) both equal the identity."""
    return m.equal(m.comp(m.conv(e), e), m.ident) and m.equal(
        m.comp(e, m.conv(e)), m.ident
    )


def rerun_counterexample(m: ModelHandle, law: Law, env: dict[str, Any]) -> bool:
    """True when the assignment still refutes the law (reports must re-fail)."""
    rel = {"=": m.equal, "<=": m.leq}
    for lhs, op, rhs in law.hypotheses:
        if not rel[op](eval_term(m, lhs, env), eval_term(m, rhs, env)):
            return False
    return any(
        not rel[op](eval_term(m, lhs, env), eval_term(m, rhs, env))
        for lhs, op, rhs in law.conclusions
    )
