"""Nullnorms built from a t-conorm below ``a`` and a t-norm above it.

Two variants differ only in where the non-dashed incomparables I_a^3 go:
``thm31`` sends them to the t-norm side, ``thm32`` to the t-conorm side.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import product
from typing import Iterator

from .core import (
    BoundedTrellis,
    ClassificationError,
    Element,
    PsosetError,
    classify_around,
    transitivity_report,
)
from .optable import CheckReport, OpTable, is_nullnorm, is_tconorm, is_tnorm

VARIANTS = ("thm31", "thm32")


class ConstructionError(PsosetError):
    """A checked construction was refused; ``report`` says why."""

    def __init__(self, message: str, report: CheckReport):
        self.report = report
        super().__init__(message)


def drastic_tconorm(P: BoundedTrellis, a: Element) -> OpTable:
    """S(x,y) = x ∨ y if 0 ∈ {x,y}, else a; on [0,a]."""
    a = P.index(a)
    bot = P.bottom
    return OpTable.from_function(
        P,
        lambda x, y: P.join_table[x][y] if bot in (x, y) else a,
        P.interval(bot, a),
    )


def drastic_tnorm(P: BoundedTrellis, a: Element) -> OpTable:
    """T(x,y) = x ∧ y if 1 ∈ {x,y}, else a; on [a,1]."""
    a = P.index(a)
    top = P.top
    return OpTable.from_function(
        P,
        lambda x, y: P.meet_table[x][y] if top in (x, y) else a,
        P.interval(a, top),
    )


def _interval_norms(P: BoundedTrellis, elements, neutral: int, absorbing: int) -> Iterator[OpTable]:
    # only cells away from the neutral and absorbing endpoints are free
    elements = tuple(elements)
    inner = [x for x in elements if x not in (neutral, absorbing)]
    free = [(x, y) for i, x in enumerate(inner) for y in inner[i:]]
    for values in product(elements, repeat=len(free)):
        grid = {}
        for (x, y), v in zip(free, values):
            grid[x, y] = grid[y, x] = v

        def f(x, y):
            if x == neutral:
                return y
            if y == neutral:
                return x
            if absorbing in (x, y):
                return absorbing
            return grid[x, y]

        V = OpTable.from_function(P, f, elements)
        yield V


def enumerate_tnorms(P: BoundedTrellis, a: Element) -> list[OpTable]:
    """Every t-norm on [a,1], by exhaustive search over the free cells."""
    a = P.index(a)
    cands = _interval_norms(P, P.interval(a, P.top), P.top, a)
    return [T for T in cands if is_tnorm(T).ok]


def enumerate_tconorms(P: BoundedTrellis, a: Element) -> list[OpTable]:
    """Every t-conorm on [0,a]."""
    a = P.index(a)
    cands = _interval_norms(P, P.interval(P.bottom, a), P.bottom, a)
    return [S for S in cands if is_tconorm(S).ok]


@dataclass(frozen=True)
class ConstructionSpec:
    variant: str
    a: int
    s_table: OpTable
    t_table: OpTable
    rule: str = "step"

    def __post_init__(self):
        if self.variant not in VARIANTS:
            raise PsosetError(f"unknown variant {self.variant!r}; expected one of {VARIANTS}")
        P = self.s_table.universe
        if self.t_table.universe != P:
            raise PsosetError("S and T must live on the same trellis")
        if set(self.s_table.elements) != set(P.interval(P.bottom, self.a)):
            raise PsosetError("S must be defined on [0,a]")
        if set(self.t_table.elements) != set(P.interval(self.a, P.top)):
            raise PsosetError("T must be defined on [a,1]")
        for name, rep in (("S", is_tconorm(self.s_table)), ("T", is_tnorm(self.t_table))):
            if not rep.ok:
                kind = "t-conorm" if name == "S" else "t-norm"
                raise PsosetError(f"{name} is not a {kind}: fails {rep.failed()}")

    @property
    def trellis(self) -> BoundedTrellis:
        return self.s_table.universe

    @classmethod
    def drastic(cls, P: BoundedTrellis, a: Element, variant: str = "thm31", rule: str = "step"):
        a = P.index(a)
        return cls(variant, a, drastic_tconorm(P, a), drastic_tnorm(P, a), rule)


def _sides(P: BoundedTrellis, spec: ConstructionSpec):
    cls = classify_around(P, spec.a, spec.rule)
    if spec.variant == "thm31":
        s_side = set(cls.below) | set(cls.ia1)
        t_side = set(cls.above) | set(cls.ia2) | set(cls.ia3)
    else:
        s_side = set(cls.below) | set(cls.ia1) | set(cls.ia3)
        t_side = set(cls.above) | set(cls.ia2)
    return cls, s_side, t_side


def validate_preconditions(P: BoundedTrellis, spec: ConstructionSpec) -> CheckReport:
    a = spec.a
    r = CheckReport()
    try:
        cls = classify_around(P, a, spec.rule)
    except ClassificationError as exc:
        # a sits on a cycle, so a is outside K and no side is well defined
        r.record("zero_in_k_proper", (a,))
        r.record("left_side_left_transitive", exc.overlap)
        r.record("right_side_right_transitive", exc.overlap)
        r.record("n_of_a_empty" if spec.variant == "thm31" else "m_of_a_empty", exc.overlap)
        return r
    tr = transitivity_report(P)
    bounds = {P.bottom, P.top}
    ltr, rtr = set(tr.left) - bounds, set(tr.right) - bounds

    if spec.variant == "thm31":
        left_needed = cls.n_i + cls.ia1
        right_needed = cls.m_i + cls.ia2 + cls.ia3
    else:
        left_needed = cls.n_i + cls.ia1 + cls.ia3
        right_needed = cls.m_i + cls.ia2

    r.record("zero_in_k_proper", None if cls.a_in_k and a not in bounds else (a,))
    bad = tuple(sorted(x for x in set(left_needed) if x not in ltr))
    r.record("left_side_left_transitive", bad or None)
    bad = tuple(sorted(x for x in set(right_needed) if x not in rtr))
    r.record("right_side_right_transitive", bad or None)
    if spec.variant == "thm31":
        r.record("n_of_a_empty", cls.n_witnesses[0] if cls.n_witnesses else None)
    else:
        r.record("m_of_a_empty", cls.m_witnesses[0] if cls.m_witnesses else None)
    return r


def construct(P: BoundedTrellis, spec: ConstructionSpec) -> OpTable:
    """The raw piecewise formula; total even when preconditions fail."""
    if P.n < 3:
        raise PsosetError("constructions need a bounded trellis with at least three elements")
    if spec.trellis != P:
        raise PsosetError("construction spec belongs to a different trellis")
    a = spec.a
    if a in (P.bottom, P.top):
        raise PsosetError("the zero element must differ from 0 and 1")
    _, s_side, t_side = _sides(P, spec)
    meet, join = P.meet_table, P.join_table
    S, T = spec.s_table, spec.t_table

    def f(x, y):
        if x in s_side and y in s_side:
            return S(meet[x][a], meet[y][a])
        if x in t_side and y in t_side:
            return T(join[x][a], join[y][a])
        return a

    return OpTable.from_function(P, f)


def construct_checked(P: BoundedTrellis, spec: ConstructionSpec) -> OpTable:
    report = validate_preconditions(P, spec)
    if not report.ok:
        raise ConstructionError(f"preconditions fail: {report.failed()}", report)
    V = construct(P, spec)
    verdict = is_nullnorm(V)
    report.record("result_is_nullnorm", None if verdict.ok and spec.a in verdict.zeros else (spec.a,))
    if not report.ok:
        raise ConstructionError("construction did not yield a nullnorm with the requested zero", report)
    return V


# -- bounded lattices -------------------------------------------------------------------


def _require_lattice(P: BoundedTrellis, a: int):
    if not P.is_transitive():
        raise PsosetError("lattice formulas need a transitive relation")
    if a in (P.bottom, P.top):
        raise PsosetError("the zero element must differ from 0 and 1")


def lattice_nullnorm_tnorm_side(P: BoundedTrellis, a: Element, S: OpTable, T: OpTable) -> OpTable:
    """V_S^T: S on [0,a[², T(x∨a, y∨a) on (]a,1] ∪ I_a)², a elsewhere."""
    a = P.index(a)
    _require_lattice(P, a)
    below = set(P.interval(P.bottom, a, open_hi=True))
    t_side = set(P.interval(a, P.top, open_lo=True)) | {x for x in range(P.n) if P.incomparable(x, a)}
    join = P.join_table

    def f(x, y):
        if x in below and y in below:
            return S(x, y)
        if x in t_side and y in t_side:
            return T(join[x][a], join[y][a])
        return a

    return OpTable.from_function(P, f)


def lattice_nullnorm_tconorm_side(P: BoundedTrellis, a: Element, S: OpTable, T: OpTable) -> OpTable:
    """V_T^S: S(x∧a, y∧a) on ([0,a[ ∪ I_a)², T on ]a,1]², a elsewhere."""
    a = P.index(a)
    _require_lattice(P, a)
    above = set(P.interval(a, P.top, open_lo=True))
    s_side = set(P.interval(P.bottom, a, open_hi=True)) | {
        x for x in range(P.n) if P.incomparable(x, a)
    }
    meet = P.meet_table

    def f(x, y):
        if x in s_side and y in s_side:
            return S(meet[x][a], meet[y][a])
        if x in above and y in above:
            return T(x, y)
        return a

    return OpTable.from_function(P, f)
