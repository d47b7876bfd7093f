"""Exhaustive search: nullnorms on a trellis, small trellises, and a harness
that checks the structural claims about nullnorms on everything it finds."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import permutations, product
from typing import Iterator, Optional, Union

from .constructions import (
    VARIANTS,
    ConstructionSpec,
    construct,
    drastic_tconorm,
    drastic_tnorm,
    enumerate_tconorms,
    enumerate_tnorms,
    validate_preconditions,
)
from .core import (
    BoundedTrellis,
    NotATrellisError,
    Psoset,
    PsosetError,
    as_bounded_trellis,
    transitivity_report,
)
from .optable import BLOCK_CHECKS, CheckReport, OpTable, check_block_structure, is_nullnorm


@dataclass(frozen=True)
class SearchConfig:
    max_elements: int = 4
    fixed_zero: Optional[Union[int, str]] = None
    table_limit: Optional[int] = None
    dedup_canonical: bool = False

    def __post_init__(self):
        if self.max_elements < 1:
            raise ValueError("max_elements must be at least 1")


# -- nullnorms on one trellis -------------------------------------------------------


def _tables_with_zero(P: BoundedTrellis, a: int) -> Iterator[tuple[tuple[int, ...], ...]]:
    n = P.n
    rel = P.relation
    bot, top = P.bottom, P.top
    ups = [[y for y in range(n) if rel[x][y]] for x in range(n)]
    downs = [[y for y in range(n) if rel[y][x]] for x in range(n)]
    up_mask = [sum(1 << d for d in ups[v]) for v in range(n)]
    down_mask = [sum(1 << d for d in downs[v]) for v in range(n)]

    # cells and candidate-value bitmasks, both kept symmetric
    cells: list[list[Optional[int]]] = [[None] * n for _ in range(n)]
    dom = [[(1 << n) - 1] * n for _ in range(n)]
    trail: list[tuple] = []

    def restrict(x, y, mask):
        old = dom[x][y]
        new = old & mask
        if new != old:
            if not new:
                return False
            trail.append((x, y, old))
            dom[x][y] = dom[y][x] = new
        return True

    def triple(p, q, r):
        # V(V(p,q),r) and V(p,V(q,r)) must end up equal
        pq, qr = cells[p][q], cells[q][r]
        if pq is None or qr is None:
            return True
        both = dom[pq][r] & dom[p][qr]
        return restrict(pq, r, both) and restrict(p, qr, both)

    def assign(x, y, v):
        if cells[x][y] is not None:
            return cells[x][y] == v
        if not restrict(x, y, 1 << v):
            return False
        trail.append((x, y))
        cells[x][y] = cells[y][x] = v
        for u in ups[x]:
            for w in ups[y]:
                if not restrict(u, w, up_mask[v]):
                    return False
        for u in downs[x]:
            for w in downs[y]:
                if not restrict(u, w, down_mask[v]):
                    return False
        for s, t in ((x, y), (y, x)):
            for r in range(n):
                if not (triple(s, t, r) and triple(r, s, t)):
                    return False
            for p in range(n):
                for q in range(n):
                    if cells[p][q] == s and not triple(p, q, t):
                        return False
                    if cells[q][p] == t and not triple(s, q, p):
                        return False
        return True

    def undo(mark):
        while len(trail) > mark:
            entry = trail.pop()
            if len(entry) == 2:
                x, y = entry
                cells[x][y] = cells[y][x] = None
            else:
                x, y, old = entry
                dom[x][y] = dom[y][x] = old

    # boundary conditions of the zero, then the mixed blocks [0,a] x [a,1]
    lower = downs[a]
    upper = ups[a]
    forced = [(x, bot, x) for x in lower] + [(x, top, x) for x in upper]
    forced += [(x, y, a) for x in lower for y in upper]
    if not all(assign(x, y, v) for x, y, v in forced):
        return

    keys = [(x, y) for x in range(n) for y in range(x, n)]

    def extend():
        best, size = None, n + 1
        for x, y in keys:
            if cells[x][y] is None:
                k = bin(dom[x][y]).count("1")
                if k < size:
                    best, size = (x, y), k
        if best is None:
            yield tuple(tuple(row) for row in cells)
            return
        x, y = best
        mask = dom[x][y]
        for v in range(n):
            if mask >> v & 1:
                mark = len(trail)
                if assign(x, y, v):
                    yield from extend()
                undo(mark)

    yield from extend()


def enumerate_nullnorms(P: BoundedTrellis, cfg: Optional[SearchConfig] = None) -> list[OpTable]:
    """All nullnorms on P, zero by zero, each re-checked with :func:`is_nullnorm`.

    The forced cells (boundary rows of the zero and the constant mixed
    blocks) are fixed first.  Each further assignment narrows the candidate
    values of dependent cells by monotonicity and associativity, and a branch
    is dropped once some cell has no candidate left.
    """
    cfg = cfg or SearchConfig()
    zeros = range(P.n) if cfg.fixed_zero is None else [P.index(cfg.fixed_zero)]
    seen = set()
    out = []
    for a in zeros:
        for cells in _tables_with_zero(P, a):
            if cells in seen:
                continue
            V = OpTable(P, tuple(range(P.n)), cells)
            verdict = is_nullnorm(V)
            if not verdict.ok or a not in verdict.zeros:
                continue
            seen.add(cells)
            out.append(V)
            if cfg.table_limit is not None and len(out) >= cfg.table_limit:
                return out
    return out


def brute_force_nullnorms(P: BoundedTrellis, fixed_zero=None, max_tables: int = 10**6) -> list[OpTable]:
    """Scan all n^(n*n) tables; the reference the backtracking search must match."""
    n = P.n
    if n ** (n * n) > max_tables:
        raise PsosetError(f"{n}^{n * n} tables exceed the brute-force budget")
    a = None if fixed_zero is None else P.index(fixed_zero)
    elems = tuple(range(n))
    out = []
    for flat in product(elems, repeat=n * n):
        V = OpTable(P, elems, tuple(flat[i * n : (i + 1) * n] for i in range(n)))
        verdict = is_nullnorm(V)
        if verdict.ok and (a is None or a in verdict.zeros):
            out.append(V)
    return out


# -- small trellises ----------------------------------------------------------------------


def canonical_form(P: Psoset) -> tuple[bool, ...]:
    """Lexicographically least flattened relation over all relabelings."""
    n = P.n
    rel = P.relation
    best = None
    for perm in permutations(range(n)):
        flat = tuple(rel[perm[i]][perm[j]] for i in range(n) for j in range(n))
        if best is None or flat < best:
            best = flat
    return best


def _relations_with_bounds(k: int) -> Iterator[tuple[tuple[bool, ...], ...]]:
    inner = [(i, j) for i in range(1, k - 1) for j in range(i + 1, k - 1)]
    for choice in product((0, 1, 2), repeat=len(inner)):
        rel = [[i == j or i == 0 or j == k - 1 for j in range(k)] for i in range(k)]
        for (i, j), c in zip(inner, choice):
            if c == 1:
                rel[i][j] = True
            elif c == 2:
                rel[j][i] = True
        yield tuple(map(tuple, rel))


def enumerate_bounded_trellises(cfg: Optional[SearchConfig] = None) -> Iterator[BoundedTrellis]:
    """Labeled bounded trellises on e0..e(k-1), k <= max_elements, e0 = 0, e(k-1) = 1."""
    cfg = cfg or SearchConfig()
    seen = set()
    for k in range(1, cfg.max_elements + 1):
        labels = tuple(f"e{i}" for i in range(k))
        for rel in _relations_with_bounds(k):
            try:
                B = as_bounded_trellis(Psoset(labels, rel))
            except NotATrellisError:
                continue
            if cfg.dedup_canonical:
                key = canonical_form(B)
                if key in seen:
                    continue
                seen.add(key)
            yield B


# -- conjecture harness ---------------------------------------------------------------------

SUITE_CHECKS = BLOCK_CHECKS + ("zero_is_middle_transitive", "thm31_iff", "thm32_iff")


def _norm_pairs(P: BoundedTrellis, a: int, st_pairs: str):
    if st_pairs == "drastic":
        return [(drastic_tconorm(P, a), drastic_tnorm(P, a))]
    if st_pairs == "all":
        return [(S, T) for S in enumerate_tconorms(P, a) for T in enumerate_tnorms(P, a)]
    raise ValueError(f"st_pairs must be 'drastic' or 'all', not {st_pairs!r}")


def _describe(P: BoundedTrellis) -> str:
    pairs = ", ".join(f"{P.labels[i]}<{P.labels[j]}" for i, j in P.strict_pairs())
    return f"{{{' '.join(P.labels)} | {pairs}}}"


def run_conjecture_suite(
    cfg: Optional[SearchConfig] = None,
    *,
    rules: tuple[str, ...] = ("step",),
    st_pairs: str = "drastic",
    nullnorms: bool = True,
    min_elements: int = 1,
) -> CheckReport:
    """Check every structural claim on every small trellis.

    For each nullnorm: every :data:`BLOCK_CHECKS` item and middle
    transitivity of its zero.  For each proper ``a`` meeting a construction's
    transitivity hypotheses: the construction is a nullnorm with zero ``a``
    exactly when N(a) (resp. M(a)) is empty.  Only the first counterexample
    per claim is kept.
    """
    cfg = cfg or SearchConfig()
    report = CheckReport()
    first: dict[str, tuple] = {}
    counts = dict.fromkeys(
        ["structures", "nullnorms", "proper_nullnorms", "thm31_instances", "thm31_nullnorms",
         "thm32_instances", "thm32_nullnorms"],
        0,
    )

    def fail(name, witness):
        first.setdefault(name, witness)

    for P in enumerate_bounded_trellises(cfg):
        if P.n < min_elements:
            continue
        counts["structures"] += 1
        desc = _describe(P)
        if nullnorms:
            middle = set(transitivity_report(P).middle)
            for V in enumerate_nullnorms(P, SearchConfig(cfg.max_elements)):
                verdict = is_nullnorm(V)
                counts["nullnorms"] += 1
                counts["proper_nullnorms"] += verdict.proper
                for a in verdict.zeros:
                    if a not in middle:
                        fail("zero_is_middle_transitive", (desc, P.labels[a], V.label_rows()))
                    try:
                        blocks = [check_block_structure(V, a, rule) for rule in rules]
                    except PsosetError as exc:
                        # a zero on a cycle through incomparables: the partition
                        # itself is a counterexample to the classification claims
                        fail("absorbs_left_dashed", (desc, P.labels[a], str(exc)))
                        continue
                    for block in blocks:
                        for name in block.failed():
                            fail(name, (desc, P.labels[a], V.label_rows(), block.witnesses[name]))
        if P.n < 3:
            continue
        for a in range(P.n):
            if a in (P.bottom, P.top):
                continue
            norm_pairs = _norm_pairs(P, a, st_pairs)
            for rule in rules:
                for S, T in norm_pairs:
                    for variant in VARIANTS:
                        spec = ConstructionSpec(variant, a, S, T, rule)
                        pre = validate_preconditions(P, spec)
                        hypotheses = [k for k in pre.verdicts if not k.endswith("_empty")]
                        if not all(pre.verdicts[k] for k in hypotheses):
                            continue
                        counts[f"{variant}_instances"] += 1
                        iff_key = "n_of_a_empty" if variant == "thm31" else "m_of_a_empty"
                        V = construct(P, spec)
                        verdict = is_nullnorm(V)
                        built = verdict.ok and a in verdict.zeros
                        counts[f"{variant}_nullnorms"] += built
                        if built != pre.verdicts[iff_key]:
                            fail(f"{variant}_iff", (desc, P.labels[a], rule, built, pre.verdicts[iff_key]))

    for name in SUITE_CHECKS:
        report.record(name, first.get(name))
    report.counts.update(counts)
    return report
