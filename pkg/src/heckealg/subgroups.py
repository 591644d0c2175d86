"""Subgroup enumeration in truncated lattices (Z/p^r)^n.

Each subgroup of (Z/p^r)^n has exactly one basis in Howell canonical
form, so subgroups are enumerated by generating canonical bases directly:
choose pivot columns and pivot valuations, fill the remaining entries in
their reduced ranges, and keep a filling only when every row satisfies
the Howell closure condition against the rows below it.  No generate-and-
deduplicate pass ever happens, and each subgroup appears exactly once, in
a deterministic order.

Budgets are enforced up front: the number of candidate fillings is a pure
function of the ambient and the filters, computed before any work starts,
and a BudgetExceededError names the bound when it would be exceeded.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import lru_cache
from typing import Callable, Iterator, Sequence

from .errors import BudgetExceededError
from .modmat import (
    ModMatrix,
    _howell_rows,
    _leading,
    _span_contains_rows,
    _val_table,
    howell_form,
    span_contains,
)
from .partitions import (
    Partition,
    order_exponent,
    p_rank,
    type_from_torsion_profile,
    validate_partition,
)

__all__ = [
    "DEFAULT_BUDGET",
    "Ambient",
    "SubgroupRep",
    "subgroup_from_rows",
    "enumerate_subgroups",
    "type_of",
    "intersect",
    "quotient_type",
    "count_of_type_in_group",
    "m_count",
    "standard_split",
]

DEFAULT_BUDGET = 10**6

_SMALL_PRIMES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37)


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    for q in _SMALL_PRIMES:
        if p == q:
            return True
        if p % q == 0:
            return False
    d = 41
    while d * d <= p:
        if p % d == 0:
            return False
        d += 2
    return True


@dataclass(frozen=True)
class Ambient:
    """The truncated lattice (Z/p^r)^n."""

    p: int
    n: int
    r: int

    def __post_init__(self) -> None:
        if not is_prime(self.p):
            raise ValueError(f"p must be prime, got {self.p}")
        if self.n < 1:
            raise ValueError(f"ambient rank must be at least 1, got {self.n}")
        if self.r < 1:
            raise ValueError(f"truncation exponent must be at least 1, got {self.r}")


@dataclass(frozen=True)
class SubgroupRep:
    """A subgroup of an ambient, held as its canonical Howell basis.

    Equal subgroups compare equal structurally because the basis is
    canonical; never construct one from a non-canonical matrix directly,
    use :func:`subgroup_from_rows`.
    """

    ambient: Ambient
    basis: ModMatrix

    @property
    def order_exp(self) -> int:
        """d with |subgroup| = p^d."""
        return _span_order_exp(self.basis.rows, self.ambient.p, self.ambient.r)

    def contains(self, other: "SubgroupRep") -> bool:
        _require_same_ambient(self, other)
        return all(span_contains(self.basis, row) for row in other.basis.rows)


def subgroup_from_rows(
    ambient: Ambient, rows: Sequence[Sequence[int]]
) -> SubgroupRep:
    """Subgroup spanned by arbitrary generating rows."""
    mat = ModMatrix.from_rows(ambient.p, ambient.r, ambient.n, rows)
    return SubgroupRep(ambient, howell_form(mat))


def _require_same_ambient(a: SubgroupRep, b: SubgroupRep) -> None:
    if a.ambient != b.ambient:
        raise ValueError(f"ambient mismatch: {a.ambient} vs {b.ambient}")


def _span_order_exp(hrows: Sequence[tuple[int, ...]], p: int, r: int) -> int:
    val = _val_table(p, r)
    return sum(r - val[row[_leading(row)]] for row in hrows)


# --- enumeration -----------------------------------------------------------


def _pivot_structures(
    n: int, r: int, floors: tuple[int, ...], order_exp: int | None
) -> Iterator[tuple[tuple[int, ...], tuple[int, ...]]]:
    """All (pivot columns, pivot valuations) pairs, in a fixed order."""
    for k in range(n + 1):
        for cols in itertools.combinations(range(n), k):
            ranges = [range(floors[j], r) for j in cols]
            for es in itertools.product(*ranges):
                if order_exp is not None and sum(r - e for e in es) != order_exp:
                    continue
                yield cols, es


def _row_value_lists(
    n: int,
    r: int,
    p: int,
    floors: tuple[int, ...],
    cols: tuple[int, ...],
    es: tuple[int, ...],
    i: int,
) -> list[tuple[int, list[int]]]:
    """(column, allowed values) pairs for the open entries of row i."""
    lower_pivots = {cols[i2]: es[i2] for i2 in range(i + 1, len(cols))}
    out = []
    for j in range(cols[i] + 1, n):
        step = p ** floors[j]
        if j in lower_pivots:
            top = p ** lower_pivots[j]  # entries above a pivot p^e reduced mod p^e
        else:
            top = p**r
        out.append((j, list(range(0, top, step)) if top > step else [0]))
    return out


def _structure_candidate_count(
    n: int,
    r: int,
    p: int,
    floors: tuple[int, ...],
    cols: tuple[int, ...],
    es: tuple[int, ...],
) -> int:
    total = 1
    for i in range(len(cols)):
        for _, values in _row_value_lists(n, r, p, floors, cols, es, i):
            total *= len(values)
    return total


def enumerate_subgroups(
    ambient: Ambient,
    *,
    order_exp: int | None = None,
    col_val_min: Sequence[int] | None = None,
    row_filter: Callable[[tuple[int, ...]], bool] | None = None,
    budget: int | None = None,
) -> Iterator[SubgroupRep]:
    """Yield every subgroup of the ambient exactly once.

    Args:
        ambient: the lattice (Z/p^r)^n.
        order_exp: if given, only subgroups of order p^order_exp.
        col_val_min: per-column minimum p-valuations; restricts the sweep
            to subgroups of the diagonal subgroup with entries at column j
            divisible by p^col_val_min[j].
        row_filter: membership predicate applied to every basis row; use
            only predicates of the form "row lies in a fixed subgroup",
            so that keeping a subgroup iff all rows pass is sound.
        budget: candidate-filling cap (default DEFAULT_BUDGET).  The cost
            is computed up front; exceeding it raises BudgetExceededError
            before any subgroup is yielded.

    Yields:
        SubgroupRep values whose bases are already canonical.
    """
    p, n, r = ambient.p, ambient.n, ambient.r
    pr = p**r
    if budget is None:
        budget = DEFAULT_BUDGET
    floors = tuple(col_val_min) if col_val_min is not None else (0,) * n
    if len(floors) != n:
        raise ValueError(f"col_val_min needs {n} entries, got {len(floors)}")
    if any(f < 0 or f > r for f in floors):
        raise ValueError(f"column valuation floors must lie in [0, {r}]")

    structures = list(_pivot_structures(n, r, floors, order_exp))
    needed = sum(
        _structure_candidate_count(n, r, p, floors, cols, es)
        for cols, es in structures
    )
    if needed > budget:
        raise BudgetExceededError(needed, budget)

    for cols, es in structures:
        k = len(cols)
        if k == 0:
            yield SubgroupRep(ambient, ModMatrix(p, r, n, ()))
            continue
        value_lists = [
            _row_value_lists(n, r, p, floors, cols, es, i) for i in range(k)
        ]

        def fill(i: int, below: tuple[tuple[int, ...], ...]) -> Iterator[
            tuple[tuple[int, ...], ...]
        ]:
            # rows are generated bottom-up so each closure check only
            # needs the (already canonical) rows below
            pe = p ** es[i]
            base = [0] * n
            base[cols[i]] = pe
            open_cols = value_lists[i]
            for combo in itertools.product(*(vals for _, vals in open_cols)):
                row = list(base)
                for (j, _), v in zip(open_cols, combo):
                    row[j] = v
                trow = tuple(row)
                if row_filter is not None and not row_filter(trow):
                    continue
                if es[i]:
                    shadow = tuple(p ** (r - es[i]) * x % pr for x in trow)
                    if any(shadow) and not _span_contains_rows(below, shadow, p, r):
                        continue
                stacked = (trow,) + below
                if i == 0:
                    yield stacked
                else:
                    yield from fill(i - 1, stacked)

        for rows in fill(k - 1, ()):
            yield SubgroupRep(ambient, ModMatrix(p, r, n, rows))


# --- isomorphism types -----------------------------------------------------


@lru_cache(maxsize=1 << 18)
def _type_of_rows(
    hrows: tuple[tuple[int, ...], ...], p: int, r: int, n: int
) -> Partition:
    """Type from a canonical basis via d_k = oe(S) - oe(p^k S)."""
    pr = p**r
    exps = []
    cur = hrows
    while True:
        oe = _span_order_exp(cur, p, r)
        exps.append(oe)
        if oe == 0:
            break
        cur = _howell_rows(
            [tuple(x * p % pr for x in row) for row in cur], p, r, n
        )
    profile = [exps[0] - e for e in exps]
    return type_from_torsion_profile(profile)


def type_of(s: SubgroupRep) -> Partition:
    """Isomorphism type of the subgroup, as a partition."""
    return _type_of_rows(s.basis.rows, s.ambient.p, s.ambient.r, s.ambient.n)


def intersect(a: SubgroupRep, b: SubgroupRep) -> SubgroupRep:
    """Intersection, computed through the kernel of the stacked basis.

    A vector in both spans is x*A = y*B; the pairs (x, y) form the kernel
    of the stacked matrix [A; -B], which the Howell form of an augmented
    matrix exposes as the rows whose leading n columns vanish.
    """
    _require_same_ambient(a, b)
    amb = a.ambient
    p, r, n = amb.p, amb.r, amb.n
    pr = p**r
    arows = a.basis.rows
    brows = b.basis.rows
    if not arows or not brows:
        return SubgroupRep(amb, ModMatrix(p, r, n, ()))
    na, nb = len(arows), len(brows)
    width = n + na + nb
    aug = []
    for i, row in enumerate(arows):
        tail = [0] * (na + nb)
        tail[i] = 1
        aug.append(row + tuple(tail))
    for i, row in enumerate(brows):
        tail = [0] * (na + nb)
        tail[na + i] = 1
        aug.append(tuple((-x) % pr for x in row) + tuple(tail))
    hrows = _howell_rows(aug, p, r, width)
    gens = []
    for row in hrows:
        if any(row[:n]):
            continue
        x = row[n : n + na]
        w = [0] * n
        for coef, arow in zip(x, arows):
            if coef:
                for j in range(n):
                    w[j] = (w[j] + coef * arow[j]) % pr
        if any(w):
            gens.append(tuple(w))
    return SubgroupRep(amb, ModMatrix(p, r, n, _howell_rows(gens, p, r, n)))


def quotient_type(l: SubgroupRep, m: SubgroupRep) -> Partition:
    """Type of L/M for M a subgroup of L.

    Uses |(L/M)[p^k]| = |L| / |p^k L + M|: the profile needs one Howell
    form of the joined span per k, nothing else.
    """
    _require_same_ambient(l, m)
    if not l.contains(m):
        raise ValueError("quotient undefined: second argument is not a subgroup of the first")
    amb = l.ambient
    p, r, n = amb.p, amb.r, amb.n
    pr = p**r
    oe_l = l.order_exp
    oe_m = m.order_exp
    profile = []
    cur = l.basis.rows
    while True:
        join = _howell_rows(cur + m.basis.rows, p, r, n)
        oe_join = _span_order_exp(join, p, r)
        profile.append(oe_l - oe_join)
        if oe_join == oe_m:
            break
        cur = _howell_rows(
            [tuple(x * p % pr for x in row) for row in cur], p, r, n
        )
    return type_from_torsion_profile(profile)


# --- counting --------------------------------------------------------------


def count_of_type_in_group(
    lam: Sequence[int], mu: Sequence[int], p: int, *, budget: int | None = None
) -> int:
    """Number of subgroups isomorphic to ``mu`` in a fixed group of type ``lam``.

    Pure brute force by design: this is the oracle other components are
    validated against, so it must stay free of embedding shortcuts.
    """
    lam = validate_partition(lam)
    mu = validate_partition(mu)
    if order_exponent(mu) > order_exponent(lam):
        return 0
    if not lam:
        return 1 if not mu else 0
    r = lam[0]
    ambient = Ambient(p, len(lam), r)
    floors = tuple(r - a for a in lam)
    count = 0
    for s in enumerate_subgroups(
        ambient,
        order_exp=order_exponent(mu),
        col_val_min=floors,
        budget=budget,
    ):
        if type_of(s) == mu:
            count += 1
    return count


def m_count(m: Sequence[int], n: int, p: int, *, budget: int | None = None) -> int:
    """Number of subgroups of (Q_p/Z_p)^n isomorphic to the type ``m``.

    Every copy lies inside the p^(m_1)-torsion, so the count happens in
    the finite group of type (m_1, ..., m_1) with n parts.  Zero when the
    p-rank exceeds n.
    """
    m = validate_partition(m)
    if not m:
        return 1
    if p_rank(m) > n:
        return 0
    return count_of_type_in_group((m[0],) * n, m, p, budget=budget)


def standard_split(ambient: Ambient, split: str = "first") -> SubgroupRep:
    """The coordinate kernel of the standard split surjection.

    For an ambient of rank n+1 this is the copy of (Z/p^r)^n spanned by
    the first n coordinate vectors ("first") or the last n ("last"); the
    surjection itself is projection onto the remaining coordinate.
    """
    if ambient.n < 2:
        raise ValueError("standard_split needs ambient rank at least 2")
    if split not in ("first", "last"):
        raise ValueError(f"split must be 'first' or 'last', got {split!r}")
    idx = range(ambient.n - 1) if split == "first" else range(1, ambient.n)
    rows = []
    for i in idx:
        row = [0] * ambient.n
        row[i] = 1
        rows.append(tuple(row))
    return SubgroupRep(ambient, ModMatrix(ambient.p, ambient.r, ambient.n, tuple(rows)))
