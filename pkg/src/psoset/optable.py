"""Binary operations as finite tables, and executable checks of their laws.

Every checker is the naive exhaustive loop; the first failure in row-major
scan order is kept as the witness.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import cached_property
from typing import Callable, Iterable, Optional, Sequence

from .core import BoundedTrellis, Element, PsosetError, classify_around


@dataclass(frozen=True)
class OpTable:
    """An operation on ``elements`` (a sub-universe of ``universe``).

    ``cells[p][q]`` is the value at (elements[p], elements[q]); all entries
    are parent indices.
    """

    universe: BoundedTrellis
    elements: tuple[int, ...]
    cells: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        m = len(self.elements)
        n = self.universe.n
        if len(set(self.elements)) != m or any(not 0 <= e < n for e in self.elements):
            raise PsosetError("sub-universe must list distinct elements of the universe")
        if len(self.cells) != m or any(len(row) != m for row in self.cells):
            raise PsosetError(f"table must be {m}x{m}")
        for row in self.cells:
            for v in row:
                if not 0 <= v < n:
                    raise PsosetError(f"table entry {v!r} is not an element of the universe")

    @classmethod
    def from_function(
        cls, P: BoundedTrellis, f: Callable[[int, int], int], elements: Optional[Iterable[int]] = None
    ) -> "OpTable":
        elems = tuple(range(P.n)) if elements is None else tuple(elements)
        return cls(P, elems, tuple(tuple(f(x, y) for y in elems) for x in elems))

    @classmethod
    def from_labels(cls, P: BoundedTrellis, rows: Sequence[Sequence[str]], elements=None) -> "OpTable":
        elems = tuple(range(P.n)) if elements is None else P.indices(elements)
        return cls(P, elems, tuple(P.indices(row) for row in rows))

    @cached_property
    def _pos(self) -> dict[int, int]:
        return {e: p for p, e in enumerate(self.elements)}

    @property
    def is_full(self) -> bool:
        return len(self.elements) == self.universe.n

    def __call__(self, x: Element, y: Element) -> int:
        P = self.universe
        return self.cells[self._pos[P.index(x)]][self._pos[P.index(y)]]

    def dense(self) -> list[list[Optional[int]]]:
        """n x n parent-indexed grid, None outside the sub-universe."""
        n = self.universe.n
        grid: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
        for p, x in enumerate(self.elements):
            for q, y in enumerate(self.elements):
                grid[x][y] = self.cells[p][q]
        return grid

    def restrict(self, elements: Iterable[int]) -> "OpTable":
        elems = tuple(elements)
        return OpTable(self.universe, elems, tuple(tuple(self(x, y) for y in elems) for x in elems))

    def with_cell(self, x: Element, y: Element, value: Element) -> "OpTable":
        P = self.universe
        p, q, v = self._pos[P.index(x)], self._pos[P.index(y)], P.index(value)
        rows = [list(r) for r in self.cells]
        rows[p][q] = v
        return OpTable(P, self.elements, tuple(map(tuple, rows)))

    def label_rows(self) -> list[list[str]]:
        labels = self.universe.labels
        return [[labels[v] for v in row] for row in self.cells]


@dataclass
class CheckReport:
    """Named verdicts; a failed verdict keeps its first witness tuple."""

    verdicts: dict[str, bool] = field(default_factory=dict)
    witnesses: dict[str, tuple] = field(default_factory=dict)
    counts: dict[str, int] = field(default_factory=dict)

    def record(self, name: str, witness: Optional[tuple]) -> bool:
        ok = witness is None
        self.verdicts[name] = ok
        if not ok:
            self.witnesses[name] = witness
        return ok

    @property
    def ok(self) -> bool:
        return all(self.verdicts.values())

    def __bool__(self):
        return self.ok

    def failed(self) -> list[str]:
        return [k for k, v in self.verdicts.items() if not v]

    def lines(self, labels: Optional[Sequence[str]] = None) -> list[str]:
        def show(w):
            if labels is not None and isinstance(w, int) and not isinstance(w, bool):
                return labels[w]
            if isinstance(w, tuple):
                return "(" + ", ".join(show(v) for v in w) + ")"
            return str(w)

        out = []
        for name, ok in self.verdicts.items():
            line = f"{name}: {'PASS' if ok else 'FAIL'}"
            if not ok:
                line += f" witness={show(self.witnesses[name])}"
            out.append(line)
        out += [f"{k} = {v}" for k, v in self.counts.items()]
        return out


# -- axioms ---------------------------------------------------------------------


def closure_witness(V: OpTable) -> Optional[tuple]:
    inside = set(V.elements)
    for p, x in enumerate(V.elements):
        for q, y in enumerate(V.elements):
            if V.cells[p][q] not in inside:
                return (x, y)
    return None


def commutativity_witness(V: OpTable) -> Optional[tuple]:
    c, el = V.cells, V.elements
    m = len(el)
    for p in range(m):
        for q in range(m):
            if c[p][q] != c[q][p]:
                return (el[p], el[q])
    return None


def associativity_witness(V: OpTable) -> Optional[tuple]:
    """First (x, y, z) with V(V(x,y),z) != V(x,V(y,z)).

    Triples whose inner value leaves the sub-universe are skipped; closure is
    a separate verdict.
    """
    c, el, pos = V.cells, V.elements, V._pos
    m = len(el)
    for p in range(m):
        for q in range(m):
            xy = pos.get(c[p][q])
            for r in range(m):
                yz = pos.get(c[q][r])
                if xy is None or yz is None:
                    continue
                if c[xy][r] != c[p][yz]:
                    return (el[p], el[q], el[r])
    return None


def increasing_witness(V: OpTable) -> Optional[tuple]:
    """First (x, y, z, t) with x ⊴ y, z ⊴ t and V(x,z) ⋬ V(y,t)."""
    rel = V.universe.relation
    c, el = V.cells, V.elements
    m = len(el)
    ups = [[q for q in range(m) if rel[el[p]][el[q]]] for p in range(m)]
    for p in range(m):
        for q in ups[p]:
            for r in range(m):
                for s in ups[r]:
                    if not rel[c[p][r]][c[q][s]]:
                        return (el[p], el[q], el[r], el[s])
    return None


def check_axioms(V: OpTable) -> CheckReport:
    report = CheckReport()
    report.record("closed", closure_witness(V))
    report.record("commutative", commutativity_witness(V))
    report.record("associative", associativity_witness(V))
    report.record("increasing", increasing_witness(V))
    return report


def zero_elements(V: OpTable) -> tuple[int, ...]:
    """Every a with V(x,0)=x for x ⊴ a and V(x,1)=x for a ⊴ x."""
    P = V.universe
    if not V.is_full:
        raise PsosetError("zero elements are defined for operations on the whole trellis")
    rel, c = P.relation, V.cells
    bot, top = P.bottom, P.top
    fixes_bottom = [c[x][bot] == x for x in range(P.n)]
    fixes_top = [c[x][top] == x for x in range(P.n)]
    return tuple(
        a
        for a in range(P.n)
        if all(fixes_bottom[x] for x in range(P.n) if rel[x][a])
        and all(fixes_top[x] for x in range(P.n) if rel[a][x])
    )


@dataclass(frozen=True)
class NullnormVerdict:
    ok: bool
    zeros: tuple[int, ...]
    proper: bool
    report: CheckReport

    def __bool__(self):
        return self.ok


def is_nullnorm(V: OpTable) -> NullnormVerdict:
    P = V.universe
    zeros = zero_elements(V)
    report = check_axioms(V)
    report.record("has_zero", None if zeros else ())
    ok = report.ok
    proper = ok and any(a not in (P.bottom, P.top) for a in zeros)
    return NullnormVerdict(ok, zeros, proper, report)


# -- t-norms and t-conorms on intervals ---------------------------------------------


def _interval_bound(V: OpTable, upper: bool) -> int:
    """The endpoint a such that V's sub-universe is [a,1] (or [0,a] if upper)."""
    P = V.universe
    rel = P.relation
    els = V.elements
    if upper:
        cands = [a for a in els if all(rel[x][a] for x in els)]
        if cands and set(P.interval(P.bottom, cands[0])) == set(els):
            return cands[0]
    else:
        cands = [a for a in els if all(rel[a][x] for x in els)]
        if cands and set(P.interval(cands[0], P.top)) == set(els):
            return cands[0]
    shape = "[0,a]" if upper else "[a,1]"
    raise PsosetError(f"sub-universe {list(P.names(els))} is not an interval {shape}")


def _norm_report(V: OpTable, neutral: int) -> CheckReport:
    report = check_axioms(V)
    bad = next((x for x in V.elements if V(x, neutral) != x or V(neutral, x) != x), None)
    report.record("neutral", None if bad is None else (bad, neutral))
    return report


def is_tnorm(T: OpTable) -> CheckReport:
    """Check T as a t-norm on its interval [a,1] (neutral element 1)."""
    _interval_bound(T, upper=False)
    return _norm_report(T, T.universe.top)


def is_tconorm(S: OpTable) -> CheckReport:
    """Check S as a t-conorm on its interval [0,a] (neutral element 0)."""
    _interval_bound(S, upper=True)
    return _norm_report(S, S.universe.bottom)


# -- block structure of a nullnorm ----------------------------------------------------

BLOCK_CHECKS = (
    "absorbs_below_zero",
    "absorbs_above_zero",
    "absorbs_left_dashed",
    "absorbs_right_dashed",
    "lower_block_is_tconorm",
    "upper_block_is_tnorm",
    "mixed_blocks_are_zero",
    "zero_below_upper_region",
    "zero_above_lower_region",
    "bounded_by_upper_right_arg",
    "bounded_by_upper_left_arg",
    "dominates_lower_left_arg",
    "dominates_lower_right_arg",
    "dominates_join_on_lower_block",
    "bounded_by_meet_on_upper_block",
    "dominates_clipped_join",
    "bounded_by_clipped_meet",
)


def _first(pairs, bad) -> Optional[tuple]:
    for x, y in pairs:
        if bad(x, y):
            return (x, y)
    return None


def _sub_norm_witness(report: CheckReport) -> Optional[tuple]:
    if report.ok:
        return None
    name = report.failed()[0]
    return (name,) + tuple(report.witnesses[name])


def check_block_structure(V: OpTable, a: Element, rule: str = "step") -> CheckReport:
    """Verify every structural consequence of V being a nullnorm with zero ``a``.

    Raises PsosetError unless V is a nullnorm having ``a`` among its zeros.
    """
    P = V.universe
    a = P.index(a)
    verdict = is_nullnorm(V)
    if not verdict.ok or a not in verdict.zeros:
        raise PsosetError(f"not a nullnorm with zero element {P.labels[a]!r}")
    cls = classify_around(P, a, rule)
    rel, meet, join = P.relation, P.meet_table, P.join_table
    n = P.n
    X = range(n)
    lower = set(P.interval(P.bottom, a))
    upper = set(P.interval(a, P.top))
    inc = set(cls.incomparable)
    ia1, ia2 = set(cls.ia1), set(cls.ia2)
    grid = V.cells
    allpairs = [(x, y) for x in X for y in X]

    def pairs(pred):
        return [(x, y) for x, y in allpairs if pred(x, y)]

    r = CheckReport()
    r.record("absorbs_below_zero", _first(pairs(lambda x, y: x in lower and y in upper),
                                         lambda x, y: grid[x][y] != a))
    r.record("absorbs_above_zero", _first(pairs(lambda x, y: x in upper and y in lower),
                                         lambda x, y: grid[x][y] != a))
    r.record("absorbs_left_dashed", _first(pairs(lambda x, y: x in ia1 and y in upper),
                                          lambda x, y: grid[x][y] != a))
    r.record("absorbs_right_dashed", _first(pairs(lambda x, y: x in ia2 and y in lower),
                                           lambda x, y: grid[x][y] != a))
    r.record("lower_block_is_tconorm",
             _sub_norm_witness(is_tconorm(V.restrict(sorted(lower)))))
    r.record("upper_block_is_tnorm",
             _sub_norm_witness(is_tnorm(V.restrict(sorted(upper)))))
    r.record("mixed_blocks_are_zero", _first(
        pairs(lambda x, y: (x in lower and y in upper) or (x in upper and y in lower)),
        lambda x, y: grid[x][y] != a))
    r.record("zero_below_upper_region", _first(
        pairs(lambda x, y: (x in upper and (y in upper or y in inc)) or (x in inc and y in upper)),
        lambda x, y: not rel[a][grid[x][y]]))
    r.record("zero_above_lower_region", _first(
        pairs(lambda x, y: (x in lower and (y in lower or y in inc)) or (x in inc and y in lower)),
        lambda x, y: not rel[grid[x][y]][a]))
    r.record("bounded_by_upper_right_arg", _first(pairs(lambda x, y: y in upper),
                                                 lambda x, y: not rel[grid[x][y]][y]))
    r.record("bounded_by_upper_left_arg", _first(pairs(lambda x, y: x in upper),
                                                lambda x, y: not rel[grid[x][y]][x]))
    r.record("dominates_lower_left_arg", _first(pairs(lambda x, y: x in lower),
                                               lambda x, y: not rel[x][grid[x][y]]))
    r.record("dominates_lower_right_arg", _first(pairs(lambda x, y: y in lower),
                                                lambda x, y: not rel[y][grid[x][y]]))
    r.record("dominates_join_on_lower_block", _first(
        pairs(lambda x, y: x in lower and y in lower),
        lambda x, y: not rel[join[x][y]][grid[x][y]]))
    r.record("bounded_by_meet_on_upper_block", _first(
        pairs(lambda x, y: x in upper and y in upper),
        lambda x, y: not rel[grid[x][y]][meet[x][y]]))
    r.record("dominates_clipped_join", _first(
        pairs(lambda x, y: (x in lower and y in inc) or (x in inc and (y in lower or y in inc))),
        lambda x, y: not rel[join[meet[x][a]][meet[y][a]]][grid[x][y]]))
    r.record("bounded_by_clipped_meet", _first(
        pairs(lambda x, y: (x in upper and y in inc) or (x in inc and (y in upper or y in inc))),
        lambda x, y: not rel[grid[x][y]][meet[join[x][a]][join[y][a]]]))
    return r
