"""Finite pseudo-ordered sets, bounded trellises and zero-element classification.

Elements are addressed by index (position in ``labels``) or by label; every
query returns indices, in label order.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property
from typing import Iterable, Optional, Sequence, Union

Element = Union[int, str]

#: How a dashed edge between incomparable elements is recognised.
#: ``"step"``: the pair is bridged by one intermediate element (x ⊴ c ⊴ y).
#: ``"reach"``: the pair is bridged by a chain of any length (x ≲ y).
DASHED_RULES = ("step", "reach")


class PsosetError(ValueError):
    """Invalid psoset data or an ill-posed query."""


class NotATrellisError(PsosetError):
    """Raised by :func:`as_bounded_trellis`; carries the failure witness."""

    def __init__(self, reason: str, witness: tuple = (), message: str = ""):
        self.reason = reason
        self.witness = witness
        super().__init__(message or reason)


class ClassificationError(PsosetError):
    """The dashed-edge partition of I_a is ill-defined (a on a cycle)."""

    def __init__(self, message: str, overlap: tuple[int, ...]):
        self.overlap = overlap
        super().__init__(message)


@dataclass(frozen=True)
class Psoset:
    """A finite set with a reflexive, antisymmetric relation ⊴.

    ``relation[i][j]`` is true iff element ``i`` ⊴ element ``j``.
    Transitivity is not required.
    """

    labels: tuple[str, ...]
    relation: tuple[tuple[bool, ...], ...]

    def __post_init__(self):
        n = len(self.labels)
        seen = set()
        for lab in self.labels:
            if lab in seen:
                raise PsosetError(f"duplicate label {lab!r}")
            seen.add(lab)
        if len(self.relation) != n or any(len(row) != n for row in self.relation):
            raise PsosetError(f"relation must be a {n}x{n} table")
        rel = self.relation
        for i in range(n):
            if not rel[i][i]:
                raise PsosetError(f"relation is not reflexive at {self.labels[i]!r}")
            for j in range(i + 1, n):
                if rel[i][j] and rel[j][i]:
                    raise PsosetError(
                        f"antisymmetry violated: {self.labels[i]!r} and {self.labels[j]!r} "
                        "are related both ways"
                    )

    @property
    def n(self) -> int:
        return len(self.labels)

    def __len__(self):
        return len(self.labels)

    @cached_property
    def _positions(self) -> dict[str, int]:
        return {lab: i for i, lab in enumerate(self.labels)}

    def index(self, e: Element) -> int:
        if isinstance(e, str):
            try:
                return self._positions[e]
            except KeyError:
                raise PsosetError(f"unknown element {e!r}") from None
        if isinstance(e, int) and 0 <= e < self.n:
            return e
        raise PsosetError(f"unknown element {e!r}")

    def indices(self, elements: Iterable[Element]) -> tuple[int, ...]:
        return tuple(self.index(e) for e in elements)

    def names(self, elements: Iterable[int]) -> tuple[str, ...]:
        return tuple(self.labels[i] for i in elements)

    # -- relation -----------------------------------------------------------

    def leq(self, x: Element, y: Element) -> bool:
        return self.relation[self.index(x)][self.index(y)]

    def lt(self, x: Element, y: Element) -> bool:
        i, j = self.index(x), self.index(y)
        return i != j and self.relation[i][j]

    def incomparable(self, x: Element, y: Element) -> bool:
        i, j = self.index(x), self.index(y)
        return not self.relation[i][j] and not self.relation[j][i]

    def strict_pairs(self) -> list[tuple[int, int]]:
        """All pairs (i, j) with i ◁ j, row-major."""
        rel = self.relation
        return [(i, j) for i in range(self.n) for j in range(self.n) if i != j and rel[i][j]]

    def is_transitive(self) -> bool:
        rel = self.relation
        r = range(self.n)
        return all(rel[x][z] for y in r for x in r if rel[x][y] for z in r if rel[y][z])

    # -- reachability and cycles --------------------------------------------

    @cached_property
    def closure(self) -> tuple[tuple[bool, ...], ...]:
        """Reflexive-transitive closure of ⊴ (the ≲ relation)."""
        n = self.n
        reach = [list(row) for row in self.relation]
        for k in range(n):
            rk = reach[k]
            for i in range(n):
                if reach[i][k]:
                    ri = reach[i]
                    for j in range(n):
                        if rk[j]:
                            ri[j] = True
        return tuple(tuple(row) for row in reach)

    def reachable(self, x: Element, y: Element) -> bool:
        """True iff x ⊴ c1 ⊴ ... ⊴ ck ⊴ y for some k >= 0."""
        return self.closure[self.index(x)][self.index(y)]

    @cached_property
    def components(self) -> tuple[tuple[int, ...], ...]:
        """Strongly connected components of the strict-relation digraph (Tarjan)."""
        n = self.n
        succ = [[j for j in range(n) if j != i and self.relation[i][j]] for i in range(n)]
        index = [None] * n
        low = [0] * n
        on_stack = [False] * n
        stack: list[int] = []
        comps: list[tuple[int, ...]] = []
        counter = 0
        for root in range(n):
            if index[root] is not None:
                continue
            work = [(root, 0)]
            index[root] = low[root] = counter
            counter += 1
            stack.append(root)
            on_stack[root] = True
            while work:
                v, pos = work[-1]
                if pos < len(succ[v]):
                    work[-1] = (v, pos + 1)
                    w = succ[v][pos]
                    if index[w] is None:
                        index[w] = low[w] = counter
                        counter += 1
                        stack.append(w)
                        on_stack[w] = True
                        work.append((w, 0))
                    elif on_stack[w]:
                        low[v] = min(low[v], index[w])
                    continue
                work.pop()
                if work:
                    parent = work[-1][0]
                    low[parent] = min(low[parent], low[v])
                if low[v] == index[v]:
                    comp = []
                    while True:
                        w = stack.pop()
                        on_stack[w] = False
                        comp.append(w)
                        if w == v:
                            break
                    comps.append(tuple(sorted(comp)))
        return tuple(sorted(comps))

    def cycle_members(self) -> tuple[int, ...]:
        """Elements lying on at least one cycle."""
        return tuple(sorted(i for comp in self.components if len(comp) >= 2 for i in comp))

    # -- bounds ---------------------------------------------------------------

    def lower_bounds(self, x: Element, y: Element) -> tuple[int, ...]:
        i, j = self.index(x), self.index(y)
        rel = self.relation
        return tuple(z for z in range(self.n) if rel[z][i] and rel[z][j])

    def upper_bounds(self, x: Element, y: Element) -> tuple[int, ...]:
        i, j = self.index(x), self.index(y)
        rel = self.relation
        return tuple(z for z in range(self.n) if rel[i][z] and rel[j][z])

    def meet(self, x: Element, y: Element) -> Optional[int]:
        """Greatest common lower bound under ⊴, or None."""
        rel = self.relation
        lows = self.lower_bounds(x, y)
        for w in lows:
            if all(rel[z][w] for z in lows):
                return w
        return None

    def join(self, x: Element, y: Element) -> Optional[int]:
        """Least common upper bound under ⊴, or None."""
        rel = self.relation
        ups = self.upper_bounds(x, y)
        for w in ups:
            if all(rel[w][z] for z in ups):
                return w
        return None

    def interval(
        self, lo: Element, hi: Element, *, open_lo: bool = False, open_hi: bool = False
    ) -> tuple[int, ...]:
        """[lo, hi] and its half-open / open variants; requires lo ⊴ hi."""
        i, j = self.index(lo), self.index(hi)
        rel = self.relation
        if not rel[i][j]:
            raise PsosetError(f"{self.labels[i]!r} ⋬ {self.labels[j]!r}: not an interval")
        out = []
        for x in range(self.n):
            if not (rel[i][x] and rel[x][j]):
                continue
            if (open_lo and x == i) or (open_hi and x == j):
                continue
            out.append(x)
        return tuple(out)

    def dashed(self, x: Element, y: Element, rule: str = "step") -> bool:
        """Whether incomparable x and y are joined by a dashed edge."""
        i, j = self.index(x), self.index(y)
        if not self.incomparable(i, j):
            return False
        if rule == "reach":
            return self.closure[i][j] or self.closure[j][i]
        if rule == "step":
            rel = self.relation
            return any(
                (rel[i][c] and rel[c][j]) or (rel[j][c] and rel[c][i]) for c in range(self.n)
            )
        raise PsosetError(f"unknown dashed-edge rule {rule!r}; expected one of {DASHED_RULES}")

    def dashed_pairs(self, rule: str = "step") -> list[tuple[int, int]]:
        return [
            (i, j)
            for i in range(self.n)
            for j in range(i + 1, self.n)
            if self.dashed(i, j, rule)
        ]


@dataclass(frozen=True)
class BoundedTrellis(Psoset):
    """A psoset with 0, 1 and all binary meets and joins, tables cached."""

    bottom: int
    top: int
    meet_table: tuple[tuple[int, ...], ...]
    join_table: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        super().__post_init__()
        rel = self.relation
        for x in range(self.n):
            if not rel[self.bottom][x] or not rel[x][self.top]:
                raise PsosetError("bottom/top are not directly related to every element")

    @property
    def base(self) -> Psoset:
        return Psoset(self.labels, self.relation)

    def meet(self, x: Element, y: Element) -> int:
        return self.meet_table[self.index(x)][self.index(y)]

    def join(self, x: Element, y: Element) -> int:
        return self.join_table[self.index(x)][self.index(y)]


def build_psoset(labels: Sequence[str], strict_pairs: Iterable[tuple[str, str]]) -> Psoset:
    """Psoset whose relation is the reflexive closure of ``strict_pairs``."""
    labels = tuple(labels)
    pos: dict[str, int] = {}
    for i, lab in enumerate(labels):
        if lab in pos:
            raise PsosetError(f"duplicate label {lab!r}")
        pos[lab] = i
    n = len(labels)
    rel = [[i == j for j in range(n)] for i in range(n)]
    for x, y in strict_pairs:
        for name in (x, y):
            if name not in pos:
                raise PsosetError(f"unknown element {name!r}")
        if x == y:
            raise PsosetError(f"{x!r} < {y!r} is not a strict pair")
        i, j = pos[x], pos[y]
        if rel[j][i]:
            raise PsosetError(f"antisymmetry violated: both {x!r} < {y!r} and {y!r} < {x!r}")
        rel[i][j] = True
    return Psoset(labels, tuple(tuple(row) for row in rel))


def as_bounded_trellis(P: Psoset) -> BoundedTrellis:
    """Upgrade ``P`` to a :class:`BoundedTrellis` or raise :class:`NotATrellisError`."""
    if isinstance(P, BoundedTrellis):
        return P
    n = P.n
    rel = P.relation
    bottom = next((b for b in range(n) if all(rel[b][x] for x in range(n))), None)
    if bottom is None:
        raise NotATrellisError("no bottom", (), "no element is below every element")
    top = next((t for t in range(n) if all(rel[x][t] for x in range(n))), None)
    if top is None:
        raise NotATrellisError("no top", (), "no element is above every element")
    meets = [[0] * n for _ in range(n)]
    joins = [[0] * n for _ in range(n)]
    for i in range(n):
        for j in range(i, n):
            m = P.meet(i, j)
            if m is None:
                raise NotATrellisError(
                    "no meet", (i, j), f"{P.labels[i]!r} and {P.labels[j]!r} have no meet"
                )
            jn = P.join(i, j)
            if jn is None:
                raise NotATrellisError(
                    "no join", (i, j), f"{P.labels[i]!r} and {P.labels[j]!r} have no join"
                )
            meets[i][j] = meets[j][i] = m
            joins[i][j] = joins[j][i] = jn
    return BoundedTrellis(
        P.labels,
        P.relation,
        bottom,
        top,
        tuple(map(tuple, meets)),
        tuple(map(tuple, joins)),
    )


@dataclass(frozen=True)
class TransitivityReport:
    left: tuple[int, ...]
    right: tuple[int, ...]
    middle: tuple[int, ...]

    @property
    def full(self) -> tuple[int, ...]:
        middle, right = set(self.middle), set(self.right)
        return tuple(x for x in self.left if x in middle and x in right)


def transitivity_report(P: Psoset) -> TransitivityReport:
    rel = P.relation
    r = range(P.n)
    left, right, middle = [], [], []
    for a in r:
        # x ⊴ y ⊴ a  =>  x ⊴ a
        if all(rel[x][a] for y in r if rel[y][a] for x in r if rel[x][y]):
            left.append(a)
        # a ⊴ x ⊴ y  =>  a ⊴ y
        if all(rel[a][y] for x in r if rel[a][x] for y in r if rel[x][y]):
            right.append(a)
        # x ⊴ a ⊴ y  =>  x ⊴ y
        if all(rel[x][y] for x in r if rel[x][a] for y in r if rel[a][y]):
            middle.append(a)
    return TransitivityReport(tuple(left), tuple(right), tuple(middle))


@dataclass(frozen=True)
class ZeroClassification:
    """Every set the constructions need around a candidate zero ``a``.

    ``n_witnesses`` / ``m_witnesses`` hold the (x, y) pairs that put x into
    N(a) (x ⊴ y) and M(a) (y ⊴ x).
    """

    a: int
    rule: str
    below: tuple[int, ...]  # [0, a[
    above: tuple[int, ...]  # ]a, 1]
    incomparable: tuple[int, ...]  # I_a
    ia1: tuple[int, ...]
    ia2: tuple[int, ...]
    ia3: tuple[int, ...]
    n_of_a: tuple[int, ...]
    m_of_a: tuple[int, ...]
    n_i: tuple[int, ...]
    m_i: tuple[int, ...]
    a_in_k: bool
    n_witnesses: tuple[tuple[int, int], ...] = ()
    m_witnesses: tuple[tuple[int, int], ...] = ()


def classify_around(P: BoundedTrellis, a: Element, rule: str = "step") -> ZeroClassification:
    if rule not in DASHED_RULES:
        raise PsosetError(f"unknown dashed-edge rule {rule!r}; expected one of {DASHED_RULES}")
    a = P.index(a)
    n = P.n
    rel, reach = P.relation, P.closure
    bot, top = P.bottom, P.top
    below = P.interval(bot, a, open_hi=True)
    above = P.interval(a, top, open_lo=True)
    inc = tuple(x for x in range(n) if not rel[x][a] and not rel[a][x])
    dashed = {x for x in inc if P.dashed(x, a, rule)}
    ia1 = tuple(x for x in inc if x in dashed and reach[x][a])
    ia2 = tuple(x for x in inc if x in dashed and reach[a][x])
    overlap = tuple(sorted(set(ia1) & set(ia2)))
    if overlap:
        raise ClassificationError(
            f"{P.labels[a]!r} lies on a cycle through {list(P.names(overlap))}; "
            "the dashed-edge partition is ill-defined",
            overlap,
        )
    ia3 = tuple(x for x in inc if x not in dashed)

    n_side = below + ia1
    m_side = above + ia2
    n_wit = tuple((x, y) for x in ia3 for y in sorted(n_side) if rel[x][y])
    m_wit = tuple((x, y) for x in ia3 for y in sorted(m_side) if rel[y][x])
    n_of_a = tuple(sorted({x for x, _ in n_wit}))
    m_of_a = tuple(sorted({x for x, _ in m_wit}))

    inner_below = tuple(x for x in below if x != bot)  # ]0, a[
    inner_above = tuple(x for x in above if x != top)  # ]a, 1[
    n_i = tuple(x for x in inner_below if any(y != x and rel[y][x] for y in ia1))
    m_i = tuple(x for x in inner_above if any(y != x and rel[x][y] for y in ia2))

    a_in_k = a in transitivity_report(P).middle and a not in P.cycle_members()
    return ZeroClassification(
        a=a,
        rule=rule,
        below=below,
        above=above,
        incomparable=inc,
        ia1=ia1,
        ia2=ia2,
        ia3=ia3,
        n_of_a=n_of_a,
        m_of_a=m_of_a,
        n_i=n_i,
        m_i=m_i,
        a_in_k=a_in_k,
        n_witnesses=n_wit,
        m_witnesses=m_wit,
    )
