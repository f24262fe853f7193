"""Fundamental relations and equivalence-relation machinery.

beta relates elements lying in a common product of elements; its
transitive closure is the smallest strongly regular relation and its
quotient is the fundamental group.  gamma additionally relates products
taken in a permuted order; it factors through beta as the pullback of
the mod-commutator congruence of the fundamental group, which is how
gamma() computes it.  gamma_oracle() is the independent brute-force
route over permuted tuples, kept for cross-checking.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Iterable

from hyperkernel import errors, kernels
from hyperkernel.core import (
    ElementSet,
    HyperTable,
    Partition,
    UnionFind,
    bits,
    is_hypergroup,
    is_subhypergroup,
)
from hyperkernel.groups import GroupTable, commutator_subgroup, cosets, validate_group

DEFAULT_CENSUS_CAP = 100_000
DEFAULT_ORACLE_BUDGET = 10_000_000
DEFAULT_SR_BUDGET = 30_000


@dataclass(frozen=True)
class ProductCensus:
    """All product sets of two or more elements, as masks over the carrier.

    Closed under right multiplication by every generator; first-discovery
    order with generators taken in index order.  `complete` records that
    the closure finished under the cap (a truncated census is never
    returned by product_census, the flag exists for defensive checks).
    """

    n: int
    masks: tuple[int, ...]
    generation_cap: int
    complete: bool = True

    def sets(self) -> tuple[ElementSet, ...]:
        return tuple(ElementSet(self.n, m) for m in self.masks)


def product_census(H: HyperTable, cap: int = DEFAULT_CENSUS_CAP) -> ProductCensus:
    """Breadth-first closure of singletons under right multiplication.

    Associativity makes every product of length >= 2 a left-nested one,
    so the closure reaches exactly the product sets.
    """
    masks = kernels.census(H.rows, H.n, cap)
    if masks is None:
        raise errors.CapExceeded(f"product census exceeds {cap} sets")
    return ProductCensus(H.n, tuple(masks), cap)


def beta(H: HyperTable, cap: int = DEFAULT_CENSUS_CAP) -> Partition:
    """Smallest strongly regular relation: common-product pairs, closed.

    Elements sharing a product set are merged; union-find supplies the
    transitive closure needed on bare semihypergroups.
    """
    uf = UnionFind(H.n)
    for mask in product_census(H, cap).masks:
        first = -1
        for e in bits(mask):
            if first < 0:
                first = e
            else:
                uf.union(first, e)
    return uf.partition()


def gamma(H: HyperTable, cap: int = DEFAULT_CENSUS_CAP) -> Partition:
    """Smallest strongly regular relation with a commutative quotient.

    Computed through the fundamental group: the class of x is the union
    of beta classes lying in the coset of x modulo the commutator
    subgroup of the beta quotient.
    """
    if not is_hypergroup(H):
        raise errors.NotAHypergroup("gamma requires a hypergroup")
    b = beta(H, cap)
    q = quotient_by(H, b)
    if not q.is_group:
        raise errors.NotStronglyRegular("beta quotient failed to be a group")
    sigma = cosets(q.group, commutator_subgroup(q.group))
    return pullback(sigma, b)


def gamma_oracle(
    H: HyperTable,
    nmax: int = 4,
    budget: int = DEFAULT_ORACLE_BUDGET,
) -> Partition:
    """Brute-force gamma: permuted-product overlaps up to length nmax.

    Every element of a product of (x1..xk) is related to every element
    of the product of any reordering; the result is transitively closed.
    Independent of gamma()'s census/quotient route by construction.
    """
    if nmax < 1:
        raise errors.BudgetExceeded("nmax must be at least 1")
    total = sum(H.n**k for k in range(1, nmax + 1))
    if total > budget:
        raise errors.BudgetExceeded(
            f"{total} tuples of length <= {nmax} exceed budget {budget}"
        )
    parents = kernels.oracle_merge(H.rows, H.n, nmax)
    return Partition(H.n, parents)


def _met_sets(H: HyperTable, R: Partition) -> list[list[int]]:
    """met[a][x] = bitmask of class ids met by the cell a*x."""
    cls_mask = [1 << c for c in R.class_of]
    cache: dict[int, int] = {}

    def met(mask: int) -> int:
        v = cache.get(mask)
        if v is None:
            v = 0
            for e in bits(mask):
                v |= cls_mask[e]
            cache[mask] = v
        return v

    return [[met(H.rows[a][x]) for x in range(H.n)] for a in range(H.n)]


def _related_pairs(R: Partition) -> Iterable[tuple[int, int]]:
    for block in R.classes:
        members = block.indices()
        for i in range(len(members)):
            for j in range(i + 1, len(members)):
                yield members[i], members[j]


def is_regular(H: HyperTable, R: Partition) -> bool:
    """Related elements meet the same classes on both sides, cell by cell."""
    if R.n != H.n:
        raise errors.ShapeMismatch("partition carrier differs from table")
    met = _met_sets(H, R)
    for a, b in _related_pairs(R):
        for x in range(H.n):
            if met[a][x] != met[b][x] or met[x][a] != met[x][b]:
                return False
    return True


def is_strongly_regular(H: HyperTable, R: Partition) -> bool:
    """Regular with whole cells landing inside single classes."""
    if R.n != H.n:
        raise errors.ShapeMismatch("partition carrier differs from table")
    return kernels.sr_check(H.rows, H.n, list(R.class_of))


@dataclass(frozen=True)
class QuotientStructure:
    """Class-level table of a regular relation, with group detection.

    Group-ness is established a posteriori: the table must be single
    valued and pass group validation, never assumed from the relation.
    """

    parent: HyperTable
    relation: Partition
    table: HyperTable
    is_group: bool
    group: GroupTable | None


def quotient_by(H: HyperTable, R: Partition) -> QuotientStructure:
    """Quotient hyperoperation on classes, verified representative-free."""
    if R.n != H.n:
        raise errors.ShapeMismatch("partition carrier differs from table")
    met = _met_sets(H, R)
    k = len(R.classes)
    reps = [c.indices()[0] for c in R.classes]
    cells = [[met[reps[i]][reps[j]] for j in range(k)] for i in range(k)]
    for i, ci in enumerate(R.classes):
        for j, cj in enumerate(R.classes):
            want = cells[i][j]
            for x in ci:
                for y in cj:
                    if met[x][y] != want:
                        raise errors.NotRegular(
                            f"cell ({i},{j}) depends on representatives: "
                            f"({H.names[reps[i]]},{H.names[reps[j]]}) vs "
                            f"({H.names[x]},{H.names[y]})"
                        )
    names = [H.names[r] for r in reps]
    table = HyperTable(names, cells, name=None)
    group = None
    if all(cell & (cell - 1) == 0 for row in cells for cell in row):
        try:
            group = validate_group(
                [[cell.bit_length() - 1 for cell in row] for row in cells], names
            )
        except errors.InvalidGroupTable:
            group = None
    return QuotientStructure(H, R, table, group is not None, group)


def kernel_S(H: HyperTable, R: Partition) -> ElementSet:
    """The class acting as the identity of the quotient group."""
    if not is_strongly_regular(H, R):
        raise errors.NotStronglyRegular("kernel needs a strongly regular relation")
    q = quotient_by(H, R)
    if not q.is_group:
        raise errors.NotStronglyRegular("quotient is not a group")
    return R.classes[q.group.identity]


def congruence_mod(H: HyperTable, K: ElementSet) -> Partition:
    """x related to y iff x*K and y*K coincide as sets."""
    if not is_subhypergroup(H, K):
        raise errors.NotASubhypergroup("congruence needs a subhypergroup")
    km = K.mask
    coset_of: dict[int, int] = {}
    class_of = []
    for x in range(H.n):
        cm = H.mul_mask(1 << x, km)
        class_of.append(coset_of.setdefault(cm, len(coset_of)))
    return Partition(H.n, class_of)


def pullback(sigma: Partition, rho: Partition) -> Partition:
    """Lift a partition of rho's classes back to the carrier."""
    if sigma.n != len(rho.classes):
        raise errors.ShapeMismatch(
            f"sigma partitions {sigma.n} points but rho has {len(rho.classes)} classes"
        )
    return Partition(rho.n, [sigma.class_of[c] for c in rho.class_of])


def join(R1: Partition, R2: Partition) -> Partition:
    """Smallest equivalence containing both."""
    if R1.n != R2.n:
        raise errors.ShapeMismatch("partitions over different carriers")
    uf = UnionFind(R1.n)
    for part in (R1, R2):
        for block in part.classes:
            members = block.indices()
            for m in members[1:]:
                uf.union(members[0], m)
    return uf.partition()


def _bell(n: int) -> int:
    row = [1]
    for _ in range(n):
        nxt = [row[-1]]
        for v in row:
            nxt.append(nxt[-1] + v)
        row = nxt
    return row[0]


def _all_class_assignments(n: int):
    """Restricted growth strings in lexicographic order."""
    a = [0] * n

    def rec(i: int, mx: int):
        if i == n:
            yield tuple(a)
            return
        for v in range(mx + 2):
            a[i] = v
            yield from rec(i + 1, max(mx, v))

    yield from rec(1, 0) if n > 1 else iter([tuple(a)])


def enumerate_strongly_regular(
    H: HyperTable, budget: int = DEFAULT_SR_BUDGET
) -> list[Partition]:
    """Every strongly regular partition of the carrier, canonically ordered."""
    count = _bell(H.n)
    if count > budget:
        raise errors.BudgetExceeded(
            f"Bell({H.n}) = {count} partitions exceed budget {budget}"
        )
    rows = H.rows
    found = []
    for class_of in _all_class_assignments(H.n):
        if kernels.sr_check(rows, H.n, list(class_of)):
            found.append(Partition(H.n, class_of))
    found.sort(key=Partition.sort_key)
    return found
