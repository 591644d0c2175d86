"""The rank-lowering transfer between algebras of adjacent ranks.

Fix a split exact sequence

    0 -> V -> Lambda -> Q_p/Z_p -> 0

with Lambda the rank-(n+1) colimit lattice and V a rank-n coordinate
kernel.  Sending a class M of the rank-(n+1) algebra to

    omega(M) = sum over N of a(M, N) N,

where a(M, N) counts subgroups isomorphic to M whose intersection with V
is a fixed copy of N (normalized by the number of copies of N), defines
a surjective ring homomorphism down to the rank-n algebra.

Two independent routes compute a(M, N):

* the default fixes one standard copy N' of N inside V and counts coset
  representatives v + N' in V[p^r]/N' with p^t v in N' whose augmented
  span <N', (v, p^(r-t))> has type M, where t is the order gap; the
  assignment M' -> coset is a bijection, so the count needs no division;
* the verification route enumerates all subgroups of type M, keeps the
  ones whose intersection with V has type N, and divides by the number
  of copies of N inside V, checking exact divisibility.

The transfer is triangular with respect to containment of classes, with
a(M, M) = 1, so it admits an upper-triangular integer inverse b on each
graded piece; omega composed with the resulting section is the identity.

The truncation exponent defaults to the exponent of the class at hand
and can only be raised; computed values must not depend on the choice,
nor on which coordinate the split surjection projects onto.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .errors import BudgetExceededError, VerificationError
from .hecke import HeckeContext, HeckeElement, basis_element, multiply, t_aggregate
from .modmat import _howell_rows
from .partitions import (
    Partition,
    embeds,
    format_partition,
    order_exponent,
    p_rank,
    partitions_up_to,
    validate_partition,
)
from .subgroups import (
    DEFAULT_BUDGET,
    Ambient,
    SubgroupRep,
    _type_of_rows,
    enumerate_subgroups,
    intersect,
    m_count,
    standard_split,
    type_of,
)

__all__ = [
    "OmegaContext",
    "a_coeff",
    "i_count",
    "b_coeff",
    "omega",
    "lift_section",
    "j_count",
    "HomReport",
    "TpReport",
    "verify_omega_hom",
    "verify_tp_formula",
]


@dataclass
class OmegaContext:
    """State for the transfer from rank n+1 down to rank n.

    split selects which coordinate the surjection projects onto
    ("first" keeps the leading n coordinates as V, "last" the trailing
    ones).  trunc_override raises the truncation exponent used for the
    ambient; it never lowers it below the exponent of the class at hand.
    """

    p: int
    n: int
    split: str = "first"
    trunc_override: int | None = None
    budget: int = DEFAULT_BUDGET
    memo: dict[str, int] = field(default_factory=dict, repr=False)
    _bins: dict[tuple[Partition, int, int], dict[Partition, int]] = field(
        default_factory=dict, repr=False
    )
    _images: dict[Partition, dict[Partition, int]] = field(
        default_factory=dict, repr=False
    )
    source: HeckeContext = field(init=False, repr=False)
    target: HeckeContext = field(init=False, repr=False)

    def __post_init__(self) -> None:
        if self.split not in ("first", "last"):
            raise ValueError(f"split must be 'first' or 'last', got {self.split!r}")
        if self.trunc_override is not None and self.trunc_override < 1:
            raise ValueError("truncation override must be at least 1")
        if self.n < 1:
            raise ValueError(f"target rank must be at least 1, got {self.n}")
        # shares the scalar memo so cached values flow to both ranks
        self.source = HeckeContext(self.p, self.n + 1, self.budget, self.memo)
        self.target = HeckeContext(self.p, self.n, self.budget, self.memo)

    def _trunc(self, lam: Partition) -> int:
        base = lam[0] if lam else 1
        if self.trunc_override is not None:
            return max(base, self.trunc_override)
        return base


def _mu_position(ctx: OmegaContext) -> int:
    return ctx.n if ctx.split == "first" else 0


def _v_positions(ctx: OmegaContext) -> list[int]:
    return list(range(ctx.n)) if ctx.split == "first" else list(range(1, ctx.n + 1))


def _transversal_bins(
    ctx: OmegaContext, n_: Partition, t: int, r: int
) -> dict[Partition, int]:
    """Types of <N', (v, p^(r-t))> binned over the coset transversal.

    N' is the diagonal standard copy of n_ inside V[p^r]; v runs over
    representatives of the cosets of N' that p^t maps into N'.  The
    result maps each arising type M to its number of cosets, which is
    exactly a(M, n_) for every M of truncation exponent r.
    """
    key = (n_, t, r)
    hit = ctx._bins.get(key)
    if hit is not None:
        return hit
    p, n = ctx.p, ctx.n
    if t == 0:
        bins = {n_: 1}
    elif t > r:
        # a cyclic quotient of a group of exponent p^r has order <= p^r
        bins = {}
    elif not n_:
        # trivial intersection forces a cyclic type; every coset counts
        bins = {(t,): p ** (t * n)}
    else:
        nu = tuple(n_) + (0,) * (n - len(n_))
        counts = [p ** min(t, r - nu[i]) for i in range(n)]
        total = 1
        for c in counts:
            total *= c
        if total > ctx.budget:
            raise BudgetExceededError(total, ctx.budget, what="coset representatives")
        width = n + 1
        mu_pos = _mu_position(ctx)
        v_pos = _v_positions(ctx)
        base_rows = []
        for i in range(len(n_)):
            row = [0] * width
            row[v_pos[i]] = p ** (r - nu[i])
            base_rows.append(tuple(row))
        value_ranges = [
            range(0, p ** (r - nu[i]), p ** max(r - nu[i] - t, 0)) for i in range(n)
        ]
        bins = {}
        c0 = p ** (r - t)
        for vs in product(*value_ranges):
            row = [0] * width
            for i in range(n):
                row[v_pos[i]] = vs[i]
            row[mu_pos] = c0
            raw = tuple(base_rows) + (tuple(row),)
            m = _type_of_rows(_howell_rows(raw, p, r, width), p, r, width)
            bins[m] = bins.get(m, 0) + 1
    ctx._bins[key] = bins
    return bins


def _a_key(p: int, n: int, m: Partition, n_: Partition) -> str:
    return f"a:p={p}:n={n}:M={format_partition(m)}:N={format_partition(n_)}"


def a_coeff(
    m: Sequence[int],
    n_: Sequence[int],
    ctx: OmegaContext,
    *,
    method: str = "transversal",
) -> int:
    """Transfer coefficient a(M, N) of omega at (p, n).

    M lives in the rank-(n+1) algebra, N in the rank-n one.  Zero when
    the ranks do not fit, when N does not embed in M, or when the order
    gap exceeds the exponent of M.  method="enumeration" recomputes the
    value by the independent normalized count and must agree.
    """
    m = validate_partition(m)
    n_ = validate_partition(n_)
    if p_rank(m) > ctx.n + 1 or p_rank(n_) > ctx.n:
        return 0
    t = order_exponent(m) - order_exponent(n_)
    if t < 0:
        return 0
    if method == "enumeration":
        return _a_by_enumeration(m, n_, ctx)
    if method != "transversal":
        raise ValueError(f"unknown method {method!r}")
    if not embeds(n_, m):
        return 0
    if t == 0:
        # same order and contained, so equal
        return 1
    if m and t > m[0]:
        return 0
    use_memo = ctx.trunc_override is None
    key = _a_key(ctx.p, ctx.n, m, n_)
    if use_memo:
        hit = ctx.memo.get(key)
        if hit is not None:
            return hit
    r = ctx._trunc(m)
    value = _transversal_bins(ctx, n_, t, r).get(m, 0)
    if use_memo:
        ctx.memo[key] = value
    return value


def i_count(m: Sequence[int], n_: Sequence[int], ctx: OmegaContext) -> int:
    """Unnormalized count behind a(M, N): subgroups of type M in the
    truncated ambient whose intersection with V has type N.

    Direct sweep over all subgroups; deliberately independent of the
    coset transversal used by the default a_coeff path.
    """
    m = validate_partition(m)
    n_ = validate_partition(n_)
    if p_rank(m) > ctx.n + 1 or p_rank(n_) > ctx.n:
        return 0
    amb = Ambient(ctx.p, ctx.n + 1, ctx._trunc(m))
    v = standard_split(amb, ctx.split)
    count = 0
    for s in enumerate_subgroups(amb, order_exp=order_exponent(m), budget=ctx.budget):
        if type_of(s) != m:
            continue
        if type_of(intersect(s, v)) == n_:
            count += 1
    return count


def _a_by_enumeration(m: Partition, n_: Partition, ctx: OmegaContext) -> int:
    raw = i_count(m, n_, ctx)
    if raw == 0:
        return 0
    copies = m_count(n_, ctx.n, ctx.p, budget=ctx.budget)
    if copies == 0:
        raise VerificationError(
            f"counted {raw} groups meeting V in {format_partition(n_)}, "
            f"but V holds no copy of it"
        )
    quotient, remainder = divmod(raw, copies)
    if remainder:
        raise VerificationError(
            f"I-count {raw} for ({format_partition(m)}, {format_partition(n_)}) "
            f"not divisible by {copies} copies"
        )
    return quotient


# --- the transfer and its section -------------------------------------------


def _omega_image(m: Partition, ctx: OmegaContext) -> dict[Partition, int]:
    hit = ctx._images.get(m)
    if hit is not None:
        return hit
    image: dict[Partition, int] = {}
    for n_ in partitions_up_to(order_exponent(m), ctx.n):
        if not embeds(n_, m):
            continue
        value = a_coeff(m, n_, ctx)
        if value:
            image[n_] = value
    ctx._images[m] = image
    return image


def omega(x: HeckeElement, ctx: OmegaContext) -> HeckeElement:
    """Apply the transfer to an element of the rank-(n+1) algebra."""
    if x.p != ctx.p or x.n != ctx.n + 1:
        raise ValueError(
            f"omega at (p={ctx.p}, n={ctx.n}) expects elements of the rank-"
            f"{ctx.n + 1} algebra, got (p={x.p}, n={x.n})"
        )
    out: dict[Partition, int] = {}
    for m, c in x.terms.items():
        for n_, a in _omega_image(m, ctx).items():
            out[n_] = out.get(n_, 0) + c * a
    return HeckeElement(ctx.p, ctx.n, out)


def _b_key(p: int, n: int, b: Partition, a: Partition) -> str:
    return f"b:p={p}:n={n}:B={format_partition(b)}:A={format_partition(a)}"


def b_coeff(b: Sequence[int], a: Sequence[int], ctx: OmegaContext) -> int:
    """Entry of the inverse of the triangular matrix (a(B, A)).

    Defined by b(A, A) = 1 and, for A strictly contained in B,

        b(B, A) = - sum over A <= C < B of a(B, C) b(C, A).

    Both compositions with a are the Kronecker delta.
    """
    b = validate_partition(b)
    a = validate_partition(a)
    if p_rank(b) > ctx.n or p_rank(a) > ctx.n:
        raise ValueError("b is defined on classes of the rank-n algebra")
    if b == a:
        return 1
    if not embeds(a, b):
        return 0
    use_memo = ctx.trunc_override is None
    key = _b_key(ctx.p, ctx.n, b, a)
    if use_memo:
        hit = ctx.memo.get(key)
        if hit is not None:
            return hit
    total = 0
    for c in partitions_up_to(order_exponent(b), ctx.n):
        if c == b or not embeds(a, c) or not embeds(c, b):
            continue
        ab = a_coeff(b, c, ctx)
        if ab:
            bc = b_coeff(c, a, ctx)
            if bc:
                total += ab * bc
    value = -total
    if use_memo:
        ctx.memo[key] = value
    return value


def lift_section(n_: Sequence[int], ctx: OmegaContext) -> HeckeElement:
    """The element of the rank-(n+1) algebra that omega sends to n_.

    lift(N) = sum over A <= N of b(N, A) A; omega(lift(N)) = N because b
    inverts the triangular coefficient matrix.
    """
    n_ = validate_partition(n_)
    if p_rank(n_) > ctx.n:
        raise ValueError(f"{format_partition(n_)} has rank over {ctx.n}")
    terms: dict[Partition, int] = {}
    for a in partitions_up_to(order_exponent(n_), ctx.n):
        if not embeds(a, n_):
            continue
        c = b_coeff(n_, a, ctx)
        if c:
            terms[a] = c
    return HeckeElement(ctx.p, ctx.n + 1, terms)


# --- subgroup-fiber count ----------------------------------------------------


def j_count(r: int, nrep: SubgroupRep, ctx: OmegaContext) -> int:
    """Number of order-p^r subgroups meeting V in the given subgroup.

    The fiber size is p^((r - s) n) with p^s the order of the given
    subgroup; the direct count is compared against that closed form and
    a mismatch is a fatal verification failure.
    """
    if r < 0:
        raise ValueError("order exponent must be nonnegative")
    amb = Ambient(ctx.p, ctx.n + 1, max(r, 1))
    if nrep.ambient != amb:
        raise ValueError(
            f"subgroup lives in {nrep.ambient}, fiber count needs {amb}"
        )
    v = standard_split(amb, ctx.split)
    if not v.contains(nrep):
        raise ValueError("the given subgroup does not lie inside V")
    s = nrep.order_exp
    if s > r:
        raise ValueError(f"subgroup order exponent {s} exceeds r = {r}")
    count = 0
    for sub in enumerate_subgroups(amb, order_exp=r, budget=ctx.budget):
        if intersect(sub, v) == nrep:
            count += 1
    expected = ctx.p ** ((r - s) * ctx.n)
    if count != expected:
        raise VerificationError(
            f"fiber over an order-p^{s} subgroup has {count} members, "
            f"expected p^({r}-{s})*{ctx.n} = {expected}"
        )
    return count


# --- verification reports -----------------------------------------------------


@dataclass(frozen=True)
class HomReport:
    """Outcome of one multiplicativity check of omega."""

    m1: Partition
    m2: Partition
    lhs: HeckeElement
    rhs: HeckeElement

    @property
    def passed(self) -> bool:
        return self.lhs == self.rhs

    def describe(self) -> str:
        tag = "ok" if self.passed else "MISMATCH"
        return (
            f"hom M1={format_partition(self.m1)} M2={format_partition(self.m2)}: "
            f"{tag}; omega(M1*M2) = {self.lhs.to_text()}; "
            f"omega(M1)*omega(M2) = {self.rhs.to_text()}"
        )


@dataclass(frozen=True)
class TpReport:
    """Outcome of one aggregate-pushforward check.

    lhs is omega applied to the order-p^r aggregate of the source
    algebra, rhs the predicted weighted sum of lower aggregates; for
    r > 0 the recursion form is checked as well.
    """

    r: int
    lhs: HeckeElement
    rhs: HeckeElement
    recursion_lhs: HeckeElement | None
    recursion_rhs: HeckeElement | None

    @property
    def passed(self) -> bool:
        if self.lhs != self.rhs:
            return False
        if self.recursion_lhs is None:
            return True
        return self.recursion_lhs == self.recursion_rhs

    def describe(self) -> str:
        tag = "ok" if self.passed else "MISMATCH"
        out = (
            f"aggregate r={self.r}: {tag}; omega(T~(p^{self.r})) = "
            f"{self.lhs.to_text()}; weighted sum = {self.rhs.to_text()}"
        )
        if self.recursion_lhs is not None:
            out += (
                f"; recursion lhs = {self.recursion_lhs.to_text()}, "
                f"rhs = {self.recursion_rhs.to_text()}"
            )
        return out


def verify_omega_hom(
    m1: Sequence[int], m2: Sequence[int], ctx: OmegaContext
) -> HomReport:
    """Compare omega(M1 M2) with omega(M1) omega(M2)."""
    m1 = validate_partition(m1)
    m2 = validate_partition(m2)
    e1 = basis_element(m1, ctx.source)
    e2 = basis_element(m2, ctx.source)
    lhs = omega(multiply(e1, e2, ctx.source), ctx)
    rhs = multiply(omega(e1, ctx), omega(e2, ctx), ctx.target)
    return HomReport(m1, m2, lhs, rhs)


def verify_tp_formula(r: int, ctx: OmegaContext) -> TpReport:
    """Check omega on the order-p^r aggregate against its closed form.

    omega(T~(p^r)) = sum over s <= r of p^((r-s) n) T~(p^s), and for
    r > 0 equivalently T~(p^r) = omega(T~(p^r)) - p^n omega(T~(p^(r-1)))
    downstairs.
    """
    if r < 0:
        raise ValueError("order exponent must be nonnegative")
    lhs = omega(t_aggregate(r, ctx.source), ctx)
    rhs = HeckeElement(ctx.p, ctx.n, {})
    for s in range(r + 1):
        rhs = rhs + t_aggregate(s, ctx.target).scaled(ctx.p ** ((r - s) * ctx.n))
    rec_lhs = rec_rhs = None
    if r > 0:
        rec_lhs = t_aggregate(r, ctx.target)
        rec_rhs = lhs - omega(t_aggregate(r - 1, ctx.source), ctx).scaled(
            ctx.p**ctx.n
        )
    return TpReport(r, lhs, rhs, rec_lhs, rec_rhs)
